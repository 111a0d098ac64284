#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "stsflow/sts.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
    json payload;
    std::string status;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(STSFLOW_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult r;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WEXITSTATUS(status);
    if (!r.out.empty()) {
        json doc = json::parse(r.out);
        r.status = doc.at("status").get<std::string>();
        r.payload = doc.at("payload");
    }
    return r;
}

std::string data_path(const std::string& name) {
    return std::string(STSFLOW_DATA_DIR) + "/" + name;
}

fs::path tmp_file(const std::string& name) { return fs::temp_directory_path() / name; }

}  // namespace

TEST_CASE("gen subcommands emit valid systems") {
    auto s51 = tmp_file("cli_s51.txt");
    CliResult r = run_cli("gen bose --m 17 -o " + s51.string());
    CHECK(r.exit_code == 0);
    CHECK(r.payload.at("n") == 51);
    CHECK(r.payload.at("b") == 425);
    CHECK(stsflow::read_sts(s51.string()).n == 51);

    CliResult h = run_cli("gen hamming --r 6 -o " + tmp_file("cli_s63.txt").string());
    CHECK(h.exit_code == 0);
    CHECK(h.payload.at("n") == 63);
    CHECK(h.payload.at("b") == 651);

    CliResult am = run_cli("gen am --base " + s51.string() + " --tau seed:7 -o " +
                           tmp_file("cli_s103.txt").string());
    CHECK(am.exit_code == 0);
    CHECK(am.payload.at("n") == 103);
    CHECK(am.payload.at("b") == 1751);

    CliResult bad = run_cli("gen bose --m 4 -o " + tmp_file("cli_bad.txt").string());
    CHECK(bad.exit_code == 1);
    CHECK(bad.status == "error");

    // read validates and rewrites canonically
    CliResult reread = run_cli("gen read --in " + data_path("sts13a.txt") + " -o " +
                               tmp_file("cli_reread.txt").string());
    CHECK(reread.exit_code == 0);
    CHECK(reread.payload.at("n") == 13);
    CHECK(reread.payload.at("binary_rank") == 13);
}

TEST_CASE("johnson bounds") {
    CliResult r64 = run_cli("johnson bounds --n 64 --k 3");
    CHECK(r64.exit_code == 0);
    CHECK(r64.payload.at("upper") == 4);
    CHECK(r64.payload.at("lower") == 4);
    CHECK(r64.payload.at("exact") == 4);
    CHECK(r64.payload.at("closed_form") == 4);
    CHECK(r64.payload.at("T_k") == "63");

    CliResult r65 = run_cli("johnson bounds --n 65 --k 3");
    CHECK(r65.payload.at("upper") == 7);
    CHECK(r65.payload.at("lower") == 4);  // bound not tight at 65
    CHECK_FALSE(r65.payload.contains("exact"));

    CliResult r60 = run_cli("johnson bounds --n 60 --k 3");
    CHECK(r60.payload.at("lower").is_null());  // below the threshold
}

TEST_CASE("johnson min and witness") {
    CliResult rmin = run_cli("johnson min --n 10 --k 3 --cap 6");
    CHECK(rmin.exit_code == 0);
    CHECK(rmin.payload.at("min") == 4);
    CHECK(rmin.payload.at("exact_within_cap") == true);

    CliResult rdefault = run_cli("johnson min --n 10 --k 3");  // cap defaults to the upper norm
    CHECK(rdefault.exit_code == 0);
    CHECK(rdefault.payload.at("min") == 4);
    CHECK(rdefault.payload.at("cap") == 3);

    CliResult rwit = run_cli("johnson witness --n 72");
    CHECK(rwit.exit_code == 0);
    CHECK(rwit.payload.at("m1") == 4);
    CHECK(rwit.payload.at("norm") == 3);
}

TEST_CASE("flow subcommands and certificate round trip") {
    CliResult none = run_cli("flow search --sts " + data_path("fano.txt") + " --max-value 5");
    CHECK(none.exit_code == 2);
    CHECK(none.status == "infeasible");

    auto cert_path = tmp_file("cli_cert.json");
    CliResult search = run_cli("flow search --sts " + data_path("sts15_am.txt") +
                               " --max-value 3 -o " + cert_path.string());
    CHECK(search.exit_code == 0);
    CHECK(search.payload.at("value") == 3);

    CliResult verify = run_cli("flow verify " + cert_path.string());
    CHECK(verify.exit_code == 0);
    // re-verification emits the same certificate bit-identically
    CHECK(verify.payload == search.payload);

    CliResult res = run_cli("flow resolvable --sts " + data_path("sts9.txt"));
    CHECK(res.exit_code == 0);
    CHECK(res.payload.at("value") == 2);
    CHECK(res.payload.at("kind") == "resolvable");

    CliResult first = run_cli("flow firsteig --sts " + data_path("sts15_pg.txt"));
    CHECK(first.exit_code == 0);
    CHECK(first.payload.at("value") == 5);  // norm 4 vector
    auto fe_path = tmp_file("cli_firsteig.json");
    std::ofstream(fe_path) << first.payload.dump();
    CliResult feverify = run_cli("flow verify " + fe_path.string());
    CHECK(feverify.exit_code == 0);
}

TEST_CASE("flow am on a generated base") {
    auto s51 = tmp_file("cli_s51b.txt");
    REQUIRE(run_cli("gen bose --m 17 -o " + s51.string()).exit_code == 0);
    CliResult am = run_cli("flow am --base " + s51.string() + " --tau zero");
    CHECK(am.exit_code == 0);
    CHECK(am.payload.at("order") == 103);
    CHECK(am.payload.at("value").get<long long>() <= 5);
    CHECK(am.payload.at("kind") == "am5");

    // determinism: identical inputs and seeds give byte-identical output
    CliResult again = run_cli("flow am --base " + s51.string() + " --tau zero");
    CHECK(again.out == am.out);
    CliResult seeded1 = run_cli("flow am --base " + s51.string() + " --tau seed:9");
    CliResult seeded2 = run_cli("flow am --base " + s51.string() + " --tau seed:9");
    CHECK(seeded1.out == seeded2.out);
    CliResult other_seed = run_cli("flow am --base " + s51.string() + " --tau seed:10");
    CHECK(other_seed.out != seeded1.out);
}

TEST_CASE("crc subcommands") {
    // a parallel class by block indices, via the library for the fixture
    stsflow::SteinerTripleSystem s9 = stsflow::read_sts(data_path("sts9.txt"));
    auto res = stsflow::find_resolution(s9);
    REQUIRE(res.has_value());
    std::string indices;
    for (int b : res->classes[0]) indices += (indices.empty() ? "" : ",") + std::to_string(b);
    CliResult check = run_cli("crc check --sts " + data_path("sts9.txt") + " --code " + indices);
    CHECK(check.exit_code == 0);
    CHECK(check.payload.at("rho") == 1);
    long long a0 = check.payload.at("alphas")[0].get<long long>();
    long long g1 = check.payload.at("gammas")[0].get<long long>();
    CHECK(a0 - g1 == -3);  // theta2

    CliResult enumerate = run_cli("crc enumerate --sts " + data_path("sts13a.txt") +
                                  " --eigenvalue first");
    CHECK(enumerate.exit_code == 0);
    CHECK(enumerate.payload.at("partitions") == 13);
    CHECK(enumerate.payload.at("expected_count") == 13);
    for (const auto& entry : enumerate.payload.at("codes")) {
        bool pencil_side = entry.at("tag") == "pencil" || entry.at("complement_tag") == "pencil";
        CHECK(pencil_side);
    }

    stsflow::SteinerTripleSystem h15 = stsflow::read_sts(data_path("sts15_pg.txt"));
    auto subs = stsflow::find_subsystems(h15, 7);
    REQUIRE(!subs.empty());
    int outside = 1;
    while (std::find(subs[0].begin(), subs[0].end(), outside) != subs[0].end()) ++outside;
    CliResult construct = run_cli("crc construct --kind 3 --sts " + data_path("sts15_pg.txt") +
                                  " --point " + std::to_string(outside) + " --index 0");
    CHECK(construct.exit_code == 0);
    CHECK(construct.payload.at("report").at("rho") == 1);
    CHECK(construct.payload.at("code").size() == 14);

    CliResult notcrc = run_cli("crc check --sts " + data_path("sts13a.txt") + " --code 0,1,2,3,4");
    CHECK(notcrc.exit_code == 2);

    CliResult second = run_cli("crc enumerate --sts " + data_path("sts9.txt") +
                               " --eigenvalue second");
    CHECK(second.exit_code == 0);
    CHECK(second.payload.at("eigenvalue") == -3);
    CHECK(second.payload.at("partitions") == 7);

    // kind 4: a 1-subdesign given by explicit block indices
    CliResult subdesign = run_cli("crc construct --kind 4 --sts " + data_path("sts9.txt") +
                                  " --blocks " + indices);
    CHECK(subdesign.exit_code == 0);
    CHECK(subdesign.payload.at("report").at("rho") == 1);

    // kind 5: a small subsystem (a single block) has covering radius 2
    CliResult small = run_cli("crc construct --kind 5 --sts " + data_path("sts15_pg.txt") +
                              " --order 3 --index 0");
    CHECK(small.exit_code == 0);
    CHECK(small.payload.at("report").at("rho") == 2);

    // an expired budget reports an incomplete enumeration as infeasible
    CliResult cut = run_cli("crc enumerate --sts " + data_path("sts15_pg.txt") +
                            " --eigenvalue first --budget 0.000001");
    CHECK(cut.exit_code == 2);
    CHECK(cut.payload.at("complete") == false);
}

TEST_CASE("degenerate order 7 is refused for eigenvalue queries") {
    CliResult r = run_cli("crc enumerate --sts " + data_path("fano.txt") + " --eigenvalue first");
    CHECK(r.exit_code == 1);
    CHECK(r.status == "error");
}
