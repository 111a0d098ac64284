#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stsflow/graphs.hpp"
#include "stsflow/sts.hpp"

namespace stsflow {

using Code = std::vector<int>;  // block-graph vertex (= block index) set, sorted

// Layer profile of a completely regular code. alphas[i], betas[i], gammas[i]
// are the within/forward/backward degrees of layer i (gammas[0] = 0 and the
// last beta is absent, matching the usual convention).
struct CrcReport {
    int rho = 0;
    std::vector<long long> alphas;       // size rho+1
    std::vector<long long> betas;        // size rho
    std::vector<long long> gammas;       // size rho (gamma_1..gamma_rho)
    std::vector<long long> eigenvalues;  // of the tridiagonal intersection matrix, descending
    std::vector<std::vector<int>> cells;
};

struct CrcCheck {
    bool ok = false;
    CrcReport report;
    int bad_vertex = -1;
    int bad_layer = -1;
    std::string error;
};

// Distance-partitions from the code and verifies constant layer degrees.
CrcCheck check_crc(const BitGraph& g, const Code& code);

// lambda if every point lies in exactly lambda blocks of the code.
std::optional<long long> is_one_design(const SteinerTripleSystem& sts, const Code& code);

// beta0 on the code, -gamma1 outside; an eigenvector at alpha0 - gamma1.
IntVec two_valued_vector(const BitGraph& g, const Code& code, const CrcReport& report);

// The five code families. Each verifies its covering radius and eigenvalue
// via check_crc and throws if the expected profile does not hold.
Code construction_pencil(const SteinerTripleSystem& sts, int point);                       // rho=1, theta1
Code construction_subsystem(const SteinerTripleSystem& sts, const std::vector<int>& pts);  // rho=1, theta1
Code construction_pencil_plus_subsystem(const SteinerTripleSystem& sts, int point,
                                        const std::vector<int>& pts);                      // rho=1, theta1
Code construction_subdesign(const SteinerTripleSystem& sts, const Code& blocks);           // rho=1, theta2
Code construction_small_subsystem(const SteinerTripleSystem& sts, const std::vector<int>& pts);  // rho=2

// Complete backtracking enumeration of 2-cell equitable partitions whose
// quotient has non-principal eigenvalue theta. Emits the side containing
// vertex 0 of each partition, sorted. A nonpositive budget means no limit;
// complete=false signals the budget cut the search short.
struct EnumerateResult {
    std::vector<Code> codes;
    bool complete = true;
};
EnumerateResult enumerate_equitable_bipartitions(const BitGraph& g, long long theta,
                                                 double budget_seconds = 0.0);

// n + (2^(n-r) - 1)(n+3)/2: the tally of pencil, half-order-subsystem and
// combined codes for a system of order n and binary rank r.
long long expected_count(int n, int r);

// Family tag of a code side against a given system: "pencil",
// "half-subsystem", "pencil-plus-subsystem" or "other".
std::string construction_tag(const SteinerTripleSystem& sts, const Code& code);

}  // namespace stsflow
