#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stsflow/rational.hpp"
#include "stsflow/sts.hpp"

namespace stsflow {

// Undirected graph with adjacency stored as packed bit rows.
struct BitGraph {
    int n = 0;
    int words = 0;
    std::vector<uint64_t> bits;  // row-major, n * words

    explicit BitGraph(int vertices = 0)
        : n(vertices), words((vertices + 63) / 64), bits(static_cast<size_t>(vertices) * words, 0) {}

    const uint64_t* row(int v) const { return bits.data() + static_cast<size_t>(v) * words; }
    uint64_t* row(int v) { return bits.data() + static_cast<size_t>(v) * words; }

    void add_edge(int u, int v) {
        row(u)[v / 64] |= uint64_t(1) << (v % 64);
        row(v)[u / 64] |= uint64_t(1) << (u % 64);
    }
    bool adjacent(int u, int v) const { return (row(u)[v / 64] >> (v % 64)) & 1; }
    int degree(int v) const;
    std::vector<int> neighbors(int v) const;
};

// Exact 0/1 point-by-block incidence matrix of a system, rows = points.
struct IncidenceMatrix {
    int rows = 0;  // points
    int cols = 0;  // blocks
    std::vector<Triple> blocks;

    bool entry(int point, int block) const {
        const Triple& t = blocks[block];
        return t[0] == point || t[1] == point || t[2] == point;
    }
};

IncidenceMatrix incidence_matrix(const SteinerTripleSystem& sts);

// Block graph: vertices are blocks, edges join blocks sharing a point.
BitGraph block_graph(const SteinerTripleSystem& sts);

struct BlockGraphSpectrum {
    long long theta0 = 0;  // valency 3(n-3)/2
    long long theta1 = 0;  // (n-9)/2
    long long theta2 = -3;
    bool degenerate = false;  // n = 7: the graph is K7 and theta1 = -1 swallows the spectrum
};

BlockGraphSpectrum block_graph_eigenvalues(int n);

// theta_i(J(n,k)) = (k-i)(n-k-i) - i.
long long johnson_eigenvalue(int n, int k, int i);

// Exact check A*v = theta*v.
bool is_eigenvector(const BitGraph& g, const RatVec& v, const Rat& theta);
bool is_eigenvector(const BitGraph& g, const IntVec& v, long long theta);

// Lift of a zero-sum point vector: entry at block T is the sum of u over T.
// Throws if u does not sum to zero.
RatVec lift(const RatVec& u, const SteinerTripleSystem& sts);

// Lift onto all k-subsets of {1..n} in lexicographic order.
RatVec lift_johnson(const RatVec& u, int k);

// Rank of a k-subset in the lexicographic order of all k-subsets of {1..n}.
long long subset_rank(int n, const std::vector<int>& subset);

// Restriction of a vector indexed by all 3-subsets of {1..n} to the blocks.
RatVec restrict_to_blocks(const RatVec& v, const SteinerTripleSystem& sts);

// Exact neighbor sum of vertex `subset` in J(n,k): the sum of v over all
// k-subsets meeting it in k-1 points. Used to verify eigenvectors of Johnson
// graphs without materializing their adjacency.
Rat johnson_neighbor_sum(const RatVec& v, int n, int k, const std::vector<int>& subset);

// Exact rational kernel basis of the point-block incidence matrix, in
// reduced echelon form with one basis vector per free column.
std::vector<RatVec> null_space_basis(const IncidenceMatrix& w);

long long rational_rank(const IncidenceMatrix& w);

struct DistancePartition {
    std::vector<std::vector<int>> cells;  // cells[i] = vertices at distance i from C
    int rho = 0;
};

// BFS layers from a nonempty proper vertex subset.
DistancePartition distance_partition(const BitGraph& g, const std::vector<int>& code);

struct StrongRegularity {
    bool ok = false;
    long long valency = -1;
    long long lambda = -1;  // common neighbors over edges
    long long mu = -1;      // common neighbors over non-edges
};

StrongRegularity check_strongly_regular(const BitGraph& g);

}  // namespace stsflow
