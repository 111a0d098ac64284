#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stsflow {

using Triple = std::array<int, 3>;  // point labels, ascending

// A Steiner triple system on points 1..n: every 2-subset of the point set is
// contained in exactly one block. Immutable after construction; blocks are
// kept sorted ascending (within a triple and lexicographically between
// triples) so equal systems compare equal.
struct SteinerTripleSystem {
    int n = 0;
    std::vector<Triple> blocks;

    int block_count() const { return static_cast<int>(blocks.size()); }
    int replication() const { return (n - 1) / 2; }
};

struct PairCoverageDefect {
    int p = 0, q = 0;   // the pair
    int times = 0;      // how often it is covered (!= 1)
};

// Outcome of validate_sts. On failure lists every defective pair plus any
// duplicate triples and the block-count mismatch.
struct ValidationReport {
    bool ok = false;
    std::string message;
    std::vector<PairCoverageDefect> bad_pairs;
    std::vector<Triple> duplicate_triples;
    int expected_blocks = 0;
    int actual_blocks = 0;
};

struct Resolution {
    // classes[c] = block indices forming one parallel class (each class
    // partitions the point set; the classes partition the block list).
    std::vector<std::vector<int>> classes;
};

// tau: block index -> {0,1}, indexed against a specific system's block list.
struct TauAssignment {
    std::vector<uint8_t> tau;
};

// Admissibility: n = 1 or 3 (mod 6).
bool admissible_order(int n);

// Checks all STS invariants. Returns the (sorted, canonical) system on
// success; the report explains every violation otherwise.
ValidationReport validate_sts(int n, const std::vector<Triple>& triples,
                              SteinerTripleSystem* out = nullptr);

// Same, but throws std::invalid_argument with the report message on failure.
SteinerTripleSystem make_sts(int n, std::vector<Triple> triples);

// Bose construction on Z_m x {0,1,2} for odd m >= 3, relabeled to 1..3m and
// lexicographically sorted. Result is an STS(3m).
SteinerTripleSystem bose(int m);

// Projective system of order 2^r-1: triples {a, b, a XOR b} over the nonzero
// r-bit labels (supports of the weight-3 codewords of the Hamming code).
SteinerTripleSystem hamming_sts(int r);

// Doubling construction: order 2n+1 on {1..n, 1bar..nbar, 2n+1} with
// ibar = i+n. Each base block {i,j,k} yields the four triples carrying an
// even number of bars when tau=0 and an odd number when tau=1; the n spokes
// {i, ibar, 2n+1} complete the system.
SteinerTripleSystem assmuss_mattson(const SteinerTripleSystem& base, const TauAssignment& tau);

// The four derived triples of a base block under the doubling map, ordered
// canonically (sorted). tau_bit selects the even/odd-bar family.
std::array<Triple, 4> doubled_quadruple(const Triple& t, int tau_bit, int n);

// Complete exact-cover backtracking over parallel classes. Returns the first
// resolution in canonical search order, or nullopt if none exists (the
// search is exhaustive, so nullopt is a proof of non-resolvability).
std::optional<Resolution> find_resolution(const SteinerTripleSystem& sts);

// Rank over GF(2) of the block-by-point characteristic matrix.
int binary_rank(const SteinerTripleSystem& sts);

// All point subsets P of size m whose internal blocks form an STS(m) on P,
// i.e. all closed sets of size m under the third-point map. Sorted.
std::vector<std::vector<int>> find_subsystems(const SteinerTripleSystem& sts, int m);

// Point pencil: indices of the blocks through point p.
std::vector<int> point_pencil(const SteinerTripleSystem& sts, int p);

// Text format: line "n b", then b lines of three ascending labels, blocks in
// lexicographic order. '#' comments and blank lines are ignored on input.
SteinerTripleSystem read_sts(const std::string& path);
void write_sts(const SteinerTripleSystem& sts, const std::string& path);
SteinerTripleSystem read_sts_stream(std::istream& in, const std::string& name);
void write_sts_stream(const SteinerTripleSystem& sts, std::ostream& out);

// Quadrilateral (Pasch) configurations: 4 blocks on 6 points, every point in
// exactly two of them. The count is an isomorphism invariant; switching one
// configuration exchanges it for its opposite and yields another STS.
long long count_quadrilaterals(const SteinerTripleSystem& sts);
std::optional<SteinerTripleSystem> switch_first_quadrilateral(const SteinerTripleSystem& sts);

// Deterministic tau assignments for a system's canonical block order.
TauAssignment tau_constant(const SteinerTripleSystem& sts, int bit);
TauAssignment tau_seeded(const SteinerTripleSystem& sts, uint64_t seed);

}  // namespace stsflow
