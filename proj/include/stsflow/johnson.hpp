#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stsflow/rational.hpp"

namespace stsflow {

// Parameter tuple (a, b, r, s) describing a pair of point values a + r/s and
// -b + r/s sharing the fractional part r/s.
struct ParamTuple {
    long long a = 0, b = 1, r = 0, s = 1;
    auto operator<=>(const ParamTuple&) const = default;
};

// Smallest integer >= 2 that does not divide k.
long long gamma_of(long long k);

// Threshold T(k) = j^2 + 2kj + 3k - j - j^2/k with j = 2k for odd k and
// j = (floor(gamma/2)+1)(2k+gamma) for even k. Kept exact: j^2/k need not be
// integral.
Rat t_of(long long k);

// Tuple feasibility: k(bs-r)/(s(a+b)) is not an integer. Throws if the tuple
// violates its invariants against (n, k) (0 <= r < s, gcd(r,s)=1,
// s | gcd(n,k), b >= 1).
bool in_B(long long n, long long k, const ParamTuple& t);

// Exact minimum of max{k(a+r/s), k(b-r/s)} over the feasible tuples, with
// every attaining tuple (sorted). The enumeration is complete: the objective
// grows with a and b, so a <= N/k and b <= N/k + 1 bound it.
// For odd n with gcd(n,k) > 1 the integral fractional part s=1 is excluded
// from the enumeration; see the package docs for the value-pair convention.
std::pair<long long, std::vector<ParamTuple>> n_of(long long n, long long k);

// Scan of all k-element value combinations of a multiset (sums depend only
// on which values are picked, never on subset identity).
struct KSumScan {
    Rat norm = 0;      // max |sum| over k-combinations
    bool nzi = true;   // no combination sums to zero
};
KSumScan scan_k_sums(const std::vector<std::pair<Rat, long long>>& multiset, int k);
KSumScan scan_k_sums(const RatVec& u, int k);

struct UpperConstruction {
    RatVec u;           // zero-sum point vector, values descending
    long long norm = 0; // verified infinity norm of the lift
    std::string tag;
};

// Best verified upper construction for m(1, J(n,k)) among:
//   all-but-one-equal   u = (1/g, ..., 1/g, -(n-1)/g), g = gcd(n,k)
//   balanced-signs      +-1 halves (k odd, n even)
//   peak-balanced       (k+1, -1 x (n+k)/2, 1 x (n-k-2)/2) (k odd, n odd)
//   gamma-blocks[...]   the block pattern driven by gamma (k even)
UpperConstruction upper_vector(long long n, long long k);

// Each individual construction, for targeted tests. Returns nullopt when the
// construction does not apply to (n, k).
std::optional<UpperConstruction> construct_all_but_one_equal(long long n, long long k);
std::optional<UpperConstruction> construct_balanced_signs(long long n, long long k);
std::optional<UpperConstruction> construct_peak_balanced(long long n, long long k);
std::optional<UpperConstruction> construct_gamma_blocks(long long n, long long k);

// Closed form for m(1, J(n,3)), n > 63: 4 when n is even, 6 when n is odd
// with n mod 9 in {0, 6}, 7 otherwise.
int m1_jn3(long long n);

// A zero-sum u whose lift is NZI with norm exactly m1_jn3(n) - 1 (verified).
UpperConstruction jn3_witness(long long n);

struct BruteResult {
    long long value = 0;  // norm + 1, exact within the entry cap
    RatVec witness;       // values descending
    long long cap = 0;
};

// Complete search over value multisets with |entries| <= cap and every
// admissible shared fractional part. Returns the minimum of norm+1 among
// zero-sum multisets whose k-sums are all nonzero, or nullopt if none exists
// within the cap.
std::optional<BruteResult> brute_min(int n, int k, long long cap);

struct LowerInfo {
    long long lower = 0;                 // N(n,k) + 1
    std::vector<ParamTuple> witnesses;   // the attaining tuples
    std::optional<long long> exact;      // when a sharpness case applies
    std::string exact_via;               // "witness-divisibility" | "coprime-gamma" | "even-n-odd-k"
};

// Lower bound N(n,k)+1, applicable only when n > T(k); nullopt otherwise.
std::optional<LowerInfo> lower_bound(long long n, long long k);

// Multiset view of a vector: distinct values with counts, descending.
std::vector<std::pair<Rat, long long>> value_multiset(const RatVec& u);

}  // namespace stsflow
