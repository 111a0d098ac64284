#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stsflow/graphs.hpp"
#include "stsflow/sts.hpp"

namespace stsflow {

// A verified nowhere-zero integer vector v with W_S v = 0; its flow value is
// ||v||_inf + 1. Equivalently an NZI eigenvector of the block graph at -3.
struct FlowCertificate {
    int order = 0;
    std::vector<Triple> blocks;
    IntVec v;
    long long value = 0;
    std::string kind;  // resolvable | am5 | search | firsteig
};

struct FlowCheck {
    bool ok = false;
    std::string error;
    int zero_block = -1;      // index of a zero entry, if any
    int bad_point = -1;       // point with a nonzero sum, if any
    long long bad_sum = 0;
    FlowCertificate cert;
};

// Exact check: every entry nonzero and every point sum zero. On success the
// certificate is filled in and the block-graph identity A v = -3 v is also
// verified (a failure there is a logic error, not an input error).
FlowCheck is_flow(const SteinerTripleSystem& sts, const IntVec& v, const std::string& kind = "search");

// Flow from a resolution: for n = 1 mod 4 the classes split half/half into
// +1/-1 (value 2); for n = 3 mod 4 the class groups of sizes (n-7)/4,
// (n-3)/4, 2 carry 2, -2, 1 (value 3).
FlowCertificate resolvable_flow(const SteinerTripleSystem& sts, const Resolution& res);

// NZI eigenvector of the block graph at the first eigenvalue (n-9)/2.
// Not a flow; certifies m(1, block graph) <= norm + 1.
struct FirstEigVector {
    IntVec v;
    long long norm = 0;
};
FirstEigVector first_eig_nzi(const SteinerTripleSystem& sts);

// Covering function h: every block is routed to one of its points and every
// point receives at least 4 blocks. Solved exactly as a max-flow; nullopt is
// a proof of infeasibility.
std::optional<std::vector<int>> find_h(const SteinerTripleSystem& sts);

// The four signed values on the doubled quadruple of a base block, anchored
// at one of its points. Signed sums: +2*scale at the anchor, -2*scale at its
// bar, 0 at the other four points.
std::map<Triple, long long> g_values(const Triple& base, int tau_bit, int anchor, long long scale, int n);

// The auxiliary two-valued weights on the point-1 pencil plus the block
// {2,4,6}, by the parity of (n-1)/2. Sums to zero.
struct AmWeights {
    long long t0 = -2;            // weight of the {2,4,6} block
    std::vector<long long> pencil;  // pencil[i-1] = weight of {1, 2i, 2i+1}
};
AmWeights am_w_values(int n);

// Zero-sum 5-flow on assmuss_mattson(base, tau), built from the pencil
// weights, the anchored quadruple values driven by a covering function, and
// spoke corrections. Throws if no covering function exists.
FlowCertificate am_five_flow(const SteinerTripleSystem& base, const TauAssignment& tau);

// Complete backtracking search for a flow of value <= max_value. Returns the
// minimum-value certificate (first entry normalized positive) or nullopt if
// none exists, which the exhaustive search proves.
std::optional<FlowCertificate> min_flow_search(const SteinerTripleSystem& sts, long long max_value);

}  // namespace stsflow
