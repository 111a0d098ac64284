#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "stsflow/crc.hpp"
#include "stsflow/flows.hpp"
#include "stsflow/johnson.hpp"
#include "stsflow/jsonio.hpp"
#include "stsflow/kernels.hpp"
#include "stsflow/sts.hpp"

using namespace stsflow;

namespace {

struct Options {
    uint64_t seed = 0;
    int workers = 0;
    bool quiet = false;
    std::string out_path;
};

int emit(const Options& opt, const std::string& status, const json& payload,
         std::chrono::steady_clock::time_point started) {
    json envelope{{"status", status}, {"payload", payload}};
    std::string text = envelope.dump(2);
    if (!opt.out_path.empty()) {
        std::ofstream out(opt.out_path);
        out << text << "\n";
    }
    std::cout << text << "\n";
    if (!opt.quiet) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - started)
                      .count();
        std::cerr << "[stsflow] status=" << status << " elapsed_ms=" << ms << "\n";
    }
    if (status == "ok") return 0;
    if (status == "infeasible") return 2;
    return 1;
}

TauAssignment parse_tau(const SteinerTripleSystem& sts, const std::string& spec, uint64_t global_seed) {
    if (spec == "zero") return tau_constant(sts, 0);
    if (spec == "one") return tau_constant(sts, 1);
    if (spec == "seed") return tau_seeded(sts, global_seed);
    if (spec.rfind("seed:", 0) == 0) return tau_seeded(sts, std::stoull(spec.substr(5)));
    throw std::invalid_argument("tau must be zero, one, seed or seed:N");
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

json sts_summary(const SteinerTripleSystem& sts, const std::string& path) {
    return json{{"n", sts.n},
                {"b", sts.block_count()},
                {"binary_rank", binary_rank(sts)},
                {"path", path}};
}

}  // namespace

int main(int argc, char** argv) {
    auto started = std::chrono::steady_clock::now();
    CLI::App app{"Steiner triple systems, integer eigenvectors of their block graphs, and flows"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow a subcommand
    Options opt;
    app.add_option("--seed", opt.seed, "seed for seeded randomness");
    app.add_option("--workers", opt.workers, "worker threads for verification sweeps (0 = all)");
    app.add_flag("--quiet", opt.quiet, "suppress the stderr summary line");
    bool json_flag = true;
    app.add_flag("--json", json_flag, "emit JSON (the default; accepted for scripting symmetry)");
    app.add_option("-o,--out", opt.out_path, "also write the JSON payload to a file");

    // ---- gen ----------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "construct systems and write the text format");
    gen->require_subcommand(1);
    int bose_m = 0, hamming_r = 0;
    std::string gen_out, am_base, am_tau = "zero", read_in;

    auto* gen_bose = gen->add_subcommand("bose", "order 3m from the cyclic latin square");
    gen_bose->add_option("--m", bose_m, "odd m >= 3")->required();
    gen_bose->add_option("-o,--out", gen_out, "output file")->required();

    auto* gen_hamming = gen->add_subcommand("hamming", "order 2^r-1 from weight-3 codeword supports");
    gen_hamming->add_option("--r", hamming_r, "r >= 3")->required();
    gen_hamming->add_option("-o,--out", gen_out, "output file")->required();

    auto* gen_am = gen->add_subcommand("am", "doubled system of order 2n+1");
    gen_am->add_option("--base", am_base, "base system file")->required();
    gen_am->add_option("--tau", am_tau, "zero | one | seed:N");
    gen_am->add_option("-o,--out", gen_out, "output file")->required();

    auto* gen_read = gen->add_subcommand("read", "validate a file and rewrite it canonically");
    gen_read->add_option("--in", read_in, "input file")->required();
    gen_read->add_option("-o,--out", gen_out, "output file")->required();

    // ---- johnson ------------------------------------------------------
    auto* johnson = app.add_subcommand("johnson", "norm minimization for J(n,k) eigenvectors");
    johnson->require_subcommand(1);
    long long jn = 0, jk = 3, jcap = 0;

    auto* j_bounds = johnson->add_subcommand("bounds", "upper/lower bound report");
    j_bounds->add_option("--n", jn)->required();
    j_bounds->add_option("--k", jk)->required();

    auto* j_min = johnson->add_subcommand("min", "bounded exhaustive minimum");
    j_min->add_option("--n", jn)->required();
    j_min->add_option("--k", jk)->required();
    j_min->add_option("--cap", jcap, "entry cap (default: best upper norm)");

    auto* j_witness = johnson->add_subcommand("witness", "closed-form witness for k = 3, n > 63");
    j_witness->add_option("--n", jn)->required();

    // ---- flow ---------------------------------------------------------
    auto* flow = app.add_subcommand("flow", "flows of Steiner triple systems");
    flow->require_subcommand(1);
    std::string flow_sts, flow_base, flow_tau = "zero", verify_path;
    long long max_value = 5;

    auto* f_am = flow->add_subcommand("am", "value <= 5 flow on the doubled system");
    f_am->add_option("--base", flow_base)->required();
    f_am->add_option("--tau", flow_tau, "zero | one | seed:N");

    auto* f_res = flow->add_subcommand("resolvable", "flow from a resolution");
    f_res->add_option("--sts", flow_sts)->required();

    auto* f_search = flow->add_subcommand("search", "complete bounded search for a minimum flow");
    f_search->add_option("--sts", flow_sts)->required();
    f_search->add_option("--max-value", max_value);

    auto* f_first = flow->add_subcommand("firsteig", "NZI eigenvector at the first eigenvalue");
    f_first->add_option("--sts", flow_sts)->required();

    auto* f_verify = flow->add_subcommand("verify", "re-verify an emitted certificate");
    f_verify->add_option("cert", verify_path, "certificate JSON file")->required();

    // ---- crc ----------------------------------------------------------
    auto* crc = app.add_subcommand("crc", "completely regular codes in block graphs");
    crc->require_subcommand(1);
    std::string crc_sts, crc_eigenvalue = "first", crc_code, crc_blocks;
    double crc_budget = 0.0;
    int crc_kind = 1, crc_point = 1, crc_order = 0, crc_index = 0;

    auto* c_enum = crc->add_subcommand("enumerate", "all 2-cell equitable partitions at an eigenvalue");
    c_enum->add_option("--sts", crc_sts)->required();
    c_enum->add_option("--eigenvalue", crc_eigenvalue, "first | second");
    c_enum->add_option("--budget", crc_budget, "time budget in seconds (0 = none)");

    auto* c_check = crc->add_subcommand("check", "distance partition and layer profile of a code");
    c_check->add_option("--sts", crc_sts)->required();
    c_check->add_option("--code", crc_code, "comma-separated block indices")->required();

    auto* c_construct = crc->add_subcommand("construct", "one of the five code families");
    c_construct->add_option("--kind", crc_kind, "1..5")->required();
    c_construct->add_option("--sts", crc_sts)->required();
    c_construct->add_option("--point", crc_point, "pencil point (kinds 1, 3)");
    c_construct->add_option("--order", crc_order, "subsystem order (kinds 2, 3, 5)");
    c_construct->add_option("--index", crc_index, "subsystem index (kinds 2, 3, 5)");
    c_construct->add_option("--blocks", crc_blocks, "block indices (kind 4)");

    CLI11_PARSE(app, argc, argv);
    kernels::set_worker_count(opt.workers);

    try {
        // gen
        if (gen_bose->parsed() || gen_hamming->parsed() || gen_am->parsed() || gen_read->parsed()) {
            SteinerTripleSystem sts;
            if (gen_bose->parsed()) sts = bose(bose_m);
            if (gen_hamming->parsed()) sts = hamming_sts(hamming_r);
            if (gen_am->parsed()) {
                SteinerTripleSystem base = read_sts(am_base);
                sts = assmuss_mattson(base, parse_tau(base, am_tau, opt.seed));
            }
            if (gen_read->parsed()) sts = read_sts(read_in);
            write_sts(sts, gen_out);
            return emit(opt, "ok", sts_summary(sts, gen_out), started);
        }

        // johnson
        if (j_bounds->parsed()) return emit(opt, "ok", bound_report_json(jn, jk), started);
        if (j_witness->parsed()) {
            UpperConstruction w = jn3_witness(jn);
            json payload{{"n", jn},
                         {"k", 3},
                         {"m1", m1_jn3(jn)},
                         {"norm", w.norm},
                         {"tag", w.tag},
                         {"witness_u", rat_vec_to_json(w.u)}};
            return emit(opt, "ok", payload, started);
        }
        if (j_min->parsed()) {
            if (jcap == 0) {
                UpperConstruction best = upper_vector(jn, jk);
                if (jk == 3 && jn > 63) {
                    UpperConstruction closed = jn3_witness(jn);
                    if (closed.norm < best.norm) best = std::move(closed);
                }
                jcap = best.norm;
            }
            auto result = brute_min(static_cast<int>(jn), static_cast<int>(jk), jcap);
            if (!result)
                return emit(opt, "infeasible",
                            json{{"n", jn}, {"k", jk}, {"cap", jcap}, {"note", "no NZI vector within cap"}},
                            started);
            json payload{{"n", jn},
                         {"k", jk},
                         {"cap", result->cap},
                         {"min", result->value},
                         {"exact_within_cap", true},
                         {"witness_u", rat_vec_to_json(result->witness)}};
            return emit(opt, "ok", payload, started);
        }

        // flow
        if (f_am->parsed()) {
            SteinerTripleSystem base = read_sts(flow_base);
            FlowCertificate cert = am_five_flow(base, parse_tau(base, flow_tau, opt.seed));
            return emit(opt, "ok", certificate_to_json(cert), started);
        }
        if (f_res->parsed()) {
            SteinerTripleSystem sts = read_sts(flow_sts);
            auto res = find_resolution(sts);
            if (!res)
                return emit(opt, "infeasible", json{{"note", "system has no resolution"}}, started);
            return emit(opt, "ok", certificate_to_json(resolvable_flow(sts, *res)), started);
        }
        if (f_search->parsed()) {
            SteinerTripleSystem sts = read_sts(flow_sts);
            auto cert = min_flow_search(sts, max_value);
            if (!cert)
                return emit(opt, "infeasible",
                            json{{"note", "no flow of value <= " + std::to_string(max_value)}}, started);
            return emit(opt, "ok", certificate_to_json(*cert), started);
        }
        if (f_first->parsed()) {
            SteinerTripleSystem sts = read_sts(flow_sts);
            FirstEigVector fe = first_eig_nzi(sts);
            FlowCertificate cert;
            cert.order = sts.n;
            cert.blocks = sts.blocks;
            cert.v = fe.v;
            cert.value = fe.norm + 1;
            cert.kind = "firsteig";
            return emit(opt, "ok", certificate_to_json(cert), started);
        }
        if (f_verify->parsed()) {
            std::ifstream in(verify_path);
            if (!in) throw std::runtime_error("cannot open " + verify_path);
            json doc = json::parse(in);
            if (doc.contains("payload")) doc = doc["payload"];
            FlowCertificate cert = certificate_from_json(doc);
            SteinerTripleSystem sts = make_sts(cert.order, cert.blocks);
            if (cert.kind == "firsteig") {
                long long norm = 0;
                for (long long x : cert.v) {
                    if (x == 0) throw std::runtime_error("certificate vector has a zero entry");
                    norm = std::max(norm, x < 0 ? -x : x);
                }
                if (norm + 1 != cert.value) throw std::runtime_error("certificate value mismatch");
                BitGraph g = block_graph(sts);
                if (!is_eigenvector(g, cert.v, block_graph_eigenvalues(sts.n).theta1))
                    throw std::runtime_error("certificate is not a first-eigenvalue eigenvector");
            } else {
                FlowCheck check = is_flow(sts, cert.v, cert.kind);
                if (!check.ok) throw std::runtime_error("certificate is not a flow: " + check.error);
                if (check.cert.value != cert.value) throw std::runtime_error("certificate value mismatch");
            }
            return emit(opt, "ok", certificate_to_json(cert), started);
        }

        // crc
        if (c_enum->parsed()) {
            SteinerTripleSystem sts = read_sts(crc_sts);
            BlockGraphSpectrum spec = block_graph_eigenvalues(sts.n);
            if (spec.degenerate)
                throw std::invalid_argument("order 7 block graph is complete; eigenvalue-indexed queries are refused");
            long long theta = crc_eigenvalue == "second" ? spec.theta2 : spec.theta1;
            BitGraph g = block_graph(sts);
            EnumerateResult result = enumerate_equitable_bipartitions(g, theta, crc_budget);
            int rank = binary_rank(sts);
            json codes = json::array();
            long long construction_sides = 0;
            for (const Code& code : result.codes) {
                CrcCheck check = check_crc(g, code);
                Code complement;
                for (int v = 0; v < g.n; ++v)
                    if (!std::binary_search(code.begin(), code.end(), v)) complement.push_back(v);
                std::string tag = construction_tag(sts, code);
                std::string co_tag = construction_tag(sts, complement);
                if (tag != "other") ++construction_sides;
                if (co_tag != "other") ++construction_sides;
                codes.push_back(json{{"side", code},
                                     {"tag", tag},
                                     {"complement_tag", co_tag},
                                     {"report", check.ok ? crc_report_to_json(check.report) : json(nullptr)}});
            }
            json payload{{"n", sts.n},
                         {"eigenvalue", theta},
                         {"partitions", result.codes.size()},
                         {"construction_sides", construction_sides},
                         {"expected_count", expected_count(sts.n, rank)},
                         {"binary_rank", rank},
                         {"complete", result.complete},
                         {"codes", codes}};
            return emit(opt, result.complete ? "ok" : "infeasible", payload, started);
        }
        if (c_check->parsed()) {
            SteinerTripleSystem sts = read_sts(crc_sts);
            BitGraph g = block_graph(sts);
            Code code = parse_int_list(crc_code);
            std::sort(code.begin(), code.end());
            CrcCheck check = check_crc(g, code);
            if (!check.ok) return emit(opt, "infeasible", json{{"error", check.error}}, started);
            return emit(opt, "ok", crc_report_to_json(check.report), started);
        }
        if (c_construct->parsed()) {
            SteinerTripleSystem sts = read_sts(crc_sts);
            Code code;
            if (crc_kind == 1) {
                code = construction_pencil(sts, crc_point);
            } else if (crc_kind == 2 || crc_kind == 3 || crc_kind == 5) {
                int order = crc_order > 0 ? crc_order : (sts.n - 1) / 2;
                auto subs = find_subsystems(sts, order);
                if (crc_index < 0 || crc_index >= static_cast<int>(subs.size()))
                    throw std::invalid_argument("no subsystem with that index (found " +
                                                std::to_string(subs.size()) + ")");
                if (crc_kind == 2)
                    code = construction_subsystem(sts, subs[crc_index]);
                else if (crc_kind == 3)
                    code = construction_pencil_plus_subsystem(sts, crc_point, subs[crc_index]);
                else
                    code = construction_small_subsystem(sts, subs[crc_index]);
            } else if (crc_kind == 4) {
                code = construction_subdesign(sts, parse_int_list(crc_blocks));
            } else {
                throw std::invalid_argument("kind must be 1..5");
            }
            BitGraph g = block_graph(sts);
            CrcCheck check = check_crc(g, code);
            json payload{{"kind", crc_kind}, {"code", code}, {"report", crc_report_to_json(check.report)}};
            return emit(opt, "ok", payload, started);
        }
        throw std::runtime_error("no subcommand dispatched");
    } catch (const std::exception& e) {
        return emit(opt, "error", json{{"error", e.what()}}, started);
    }
}
