#include "stsflow/jsonio.hpp"

#include <stdexcept>

namespace stsflow {

json rat_vec_to_json(const RatVec& v) {
    json arr = json::array();
    for (const Rat& x : v) arr.push_back(rat_to_string(x));
    return arr;
}

RatVec rat_vec_from_json(const json& j) {
    RatVec v;
    for (const auto& x : j) v.push_back(rat_from_string(x.get<std::string>()));
    return v;
}

json int_vec_to_json(const IntVec& v) {
    json arr = json::array();
    for (long long x : v) arr.push_back(std::to_string(x));
    return arr;
}

IntVec int_vec_from_json(const json& j) {
    IntVec v;
    for (const auto& x : j) v.push_back(std::stoll(x.get<std::string>()));
    return v;
}

json certificate_to_json(const FlowCertificate& cert) {
    json blocks = json::array();
    for (const Triple& t : cert.blocks) blocks.push_back({t[0], t[1], t[2]});
    return json{{"order", cert.order},
                {"blocks", blocks},
                {"v", int_vec_to_json(cert.v)},
                {"value", cert.value},
                {"kind", cert.kind}};
}

FlowCertificate certificate_from_json(const json& j) {
    FlowCertificate cert;
    cert.order = j.at("order").get<int>();
    for (const auto& b : j.at("blocks")) {
        if (b.size() != 3) throw std::runtime_error("certificate block is not a triple");
        cert.blocks.push_back(Triple{b[0].get<int>(), b[1].get<int>(), b[2].get<int>()});
    }
    cert.v = int_vec_from_json(j.at("v"));
    cert.value = j.at("value").get<long long>();
    cert.kind = j.at("kind").get<std::string>();
    return cert;
}

json crc_report_to_json(const CrcReport& report) {
    json cells = json::array();
    for (const auto& cell : report.cells) cells.push_back(cell);
    return json{{"rho", report.rho},
                {"alphas", report.alphas},
                {"betas", report.betas},
                {"gammas", report.gammas},
                {"eigenvalues", report.eigenvalues},
                {"cells", cells}};
}

json param_tuple_to_json(const ParamTuple& t) {
    return json{{"a", t.a}, {"b", t.b}, {"r", t.r}, {"s", t.s}};
}

json bound_report_json(long long n, long long k) {
    json report;
    report["n"] = n;
    report["k"] = k;
    report["gamma"] = gamma_of(k);
    Rat t = t_of(k);
    report["T_k"] = rat_to_string(t);

    UpperConstruction best = upper_vector(n, k);
    if (k == 3 && n > 63) {
        UpperConstruction closed = jn3_witness(n);
        if (closed.norm < best.norm) best = std::move(closed);
    }
    report["upper"] = best.norm + 1;
    report["upper_tag"] = best.tag;
    report["witness_u"] = rat_vec_to_json(best.u);

    auto [N, tuples] = n_of(n, k);
    report["N"] = N;
    json witnesses = json::array();
    for (const ParamTuple& w : tuples) witnesses.push_back(param_tuple_to_json(w));
    report["tuples"] = witnesses;

    auto lower = lower_bound(n, k);
    if (lower) {
        if (lower->lower > best.norm + 1 || (lower->exact && *lower->exact > best.norm + 1))
            throw std::logic_error("lower bound exceeds the verified upper bound");
        report["lower"] = lower->lower;
        if (lower->exact) {
            report["exact"] = *lower->exact;
            report["exact_via"] = lower->exact_via;
        }
    } else {
        report["lower"] = nullptr;
        report["note"] = "below threshold: lower bound not applicable";
    }
    if (k == 3 && n > 63) {
        int m1 = m1_jn3(n);
        report["closed_form"] = m1;
        if (lower && !lower->exact && lower->lower < m1)
            report["note"] = "tuple lower bound is not tight here; the closed form pins the minimum";
    }
    return report;
}

}  // namespace stsflow
