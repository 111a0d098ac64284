#include "stsflow/graphs.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "stsflow/kernels.hpp"

namespace stsflow {

int BitGraph::degree(int v) const {
    int d = 0;
    const uint64_t* r = row(v);
    for (int w = 0; w < words; ++w) d += __builtin_popcountll(r[w]);
    return d;
}

std::vector<int> BitGraph::neighbors(int v) const {
    std::vector<int> out;
    const uint64_t* r = row(v);
    for (int w = 0; w < words; ++w) {
        uint64_t bits = r[w];
        while (bits) {
            int bit = __builtin_ctzll(bits);
            out.push_back(w * 64 + bit);
            bits &= bits - 1;
        }
    }
    return out;
}

IncidenceMatrix incidence_matrix(const SteinerTripleSystem& sts) {
    IncidenceMatrix w;
    w.rows = sts.n;
    w.cols = sts.block_count();
    w.blocks = sts.blocks;
    return w;
}

BitGraph block_graph(const SteinerTripleSystem& sts) { return kernels::build_block_adjacency(sts); }

BlockGraphSpectrum block_graph_eigenvalues(int n) {
    if (n < 7 || !admissible_order(n)) throw std::invalid_argument("block graph spectrum needs a valid order >= 7");
    BlockGraphSpectrum s;
    s.theta0 = 3LL * (n - 3) / 2;
    s.theta1 = (n - 9) / 2;
    s.theta2 = -3;
    s.degenerate = (n == 7);  // K7 has spectrum {6, -1}; -3 is not an eigenvalue
    return s;
}

long long johnson_eigenvalue(int n, int k, int i) {
    if (i < 0 || i > k || k > n) throw std::invalid_argument("johnson_eigenvalue needs 0 <= i <= k <= n");
    return static_cast<long long>(k - i) * (n - k - i) - i;
}

bool is_eigenvector(const BitGraph& g, const RatVec& v, const Rat& theta) {
    if (static_cast<int>(v.size()) != g.n) throw std::invalid_argument("vector length != vertex count");
    for (int x = 0; x < g.n; ++x) {
        Rat sum = 0;
        const uint64_t* row = g.row(x);
        for (int w = 0; w < g.words; ++w) {
            uint64_t bits = row[w];
            while (bits) {
                int bit = __builtin_ctzll(bits);
                sum += v[static_cast<size_t>(w) * 64 + bit];
                bits &= bits - 1;
            }
        }
        if (sum != theta * v[x]) return false;
    }
    return true;
}

bool is_eigenvector(const BitGraph& g, const IntVec& v, long long theta) {
    if (static_cast<int>(v.size()) != g.n) throw std::invalid_argument("vector length != vertex count");
    std::vector<long long> sums = kernels::neighbor_sums(g, v);
    for (int x = 0; x < g.n; ++x)
        if (sums[x] != theta * v[x]) return false;
    return true;
}

RatVec lift(const RatVec& u, const SteinerTripleSystem& sts) {
    if (static_cast<int>(u.size()) != sts.n) throw std::invalid_argument("point vector length != n");
    Rat total = std::accumulate(u.begin(), u.end(), Rat(0));
    if (total != 0) throw std::invalid_argument("lift requires a zero-sum point vector");
    RatVec v;
    v.reserve(sts.blocks.size());
    for (const Triple& t : sts.blocks) v.push_back(u[t[0] - 1] + u[t[1] - 1] + u[t[2] - 1]);
    return v;
}

RatVec lift_johnson(const RatVec& u, int k) {
    int n = static_cast<int>(u.size());
    if (k < 1 || k > n) throw std::invalid_argument("lift_johnson needs 1 <= k <= n");
    Rat total = std::accumulate(u.begin(), u.end(), Rat(0));
    if (total != 0) throw std::invalid_argument("lift requires a zero-sum point vector");
    RatVec v;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 1);
    Rat sum = 0;
    for (int i : idx) sum += u[i - 1];
    while (true) {
        v.push_back(sum);
        // next k-subset in lexicographic order
        int i = k - 1;
        while (i >= 0 && idx[i] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        sum -= u[idx[i] - 1];
        ++idx[i];
        sum += u[idx[i] - 1];
        for (int j = i + 1; j < k; ++j) {
            sum -= u[idx[j] - 1];
            idx[j] = idx[j - 1] + 1;
            sum += u[idx[j] - 1];
        }
    }
    return v;
}

namespace {
long long binom(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}
}  // namespace

long long subset_rank(int n, const std::vector<int>& subset) {
    int k = static_cast<int>(subset.size());
    long long rank = 0;
    int prev = 0;
    for (int i = 0; i < k; ++i) {
        for (int v = prev + 1; v < subset[i]; ++v) rank += binom(n - v, k - 1 - i);
        prev = subset[i];
    }
    return rank;
}

RatVec restrict_to_blocks(const RatVec& v, const SteinerTripleSystem& sts) {
    long long expected = binom(sts.n, 3);
    if (static_cast<long long>(v.size()) != expected)
        throw std::invalid_argument("vector is not indexed by all 3-subsets of the point set");
    RatVec out;
    out.reserve(sts.blocks.size());
    for (const Triple& t : sts.blocks) out.push_back(v[subset_rank(sts.n, {t[0], t[1], t[2]})]);
    return out;
}

Rat johnson_neighbor_sum(const RatVec& v, int n, int k, const std::vector<int>& subset) {
    std::vector<char> in(n + 1, 0);
    for (int p : subset) in[p] = 1;
    Rat sum = 0;
    std::vector<int> nb(subset);
    for (int i = 0; i < k; ++i) {
        for (int y = 1; y <= n; ++y) {
            if (in[y]) continue;
            nb = subset;
            nb[i] = y;
            std::sort(nb.begin(), nb.end());
            sum += v[subset_rank(n, nb)];
        }
    }
    return sum;
}

namespace {
// Reduced row echelon form over the rationals; returns pivot columns.
std::vector<int> rref(std::vector<RatVec>& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        Rat inv = m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}
}  // namespace

std::vector<RatVec> null_space_basis(const IncidenceMatrix& w) {
    std::vector<RatVec> m(w.rows, RatVec(w.cols, Rat(0)));
    for (int c = 0; c < w.cols; ++c)
        for (int p : w.blocks[c]) m[p - 1][c] = 1;
    std::vector<int> pivots = rref(m);
    std::vector<char> is_pivot(w.cols, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<RatVec> basis;
    for (int c = 0; c < w.cols; ++c) {
        if (is_pivot[c]) continue;
        RatVec v(w.cols, Rat(0));
        v[c] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

long long rational_rank(const IncidenceMatrix& w) {
    std::vector<RatVec> m(w.rows, RatVec(w.cols, Rat(0)));
    for (int c = 0; c < w.cols; ++c)
        for (int p : w.blocks[c]) m[p - 1][c] = 1;
    return static_cast<long long>(rref(m).size());
}

DistancePartition distance_partition(const BitGraph& g, const std::vector<int>& code) {
    if (code.empty()) throw std::invalid_argument("distance partition of an empty set");
    if (static_cast<int>(code.size()) >= g.n)
        throw std::invalid_argument("distance partition of the full vertex set");
    std::vector<int> dist(g.n, -1);
    std::vector<int> frontier;
    for (int v : code) {
        if (v < 0 || v >= g.n) throw std::invalid_argument("code vertex out of range");
        if (dist[v] == 0) throw std::invalid_argument("repeated code vertex");
        dist[v] = 0;
        frontier.push_back(v);
    }
    std::sort(frontier.begin(), frontier.end());
    DistancePartition dp;
    dp.cells.push_back(frontier);
    int d = 0;
    while (true) {
        std::vector<int> next;
        for (int v : frontier)
            for (int u : g.neighbors(v))
                if (dist[u] < 0) {
                    dist[u] = d + 1;
                    next.push_back(u);
                }
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        dp.cells.push_back(next);
        frontier = std::move(next);
        ++d;
    }
    for (int v = 0; v < g.n; ++v)
        if (dist[v] < 0) throw std::invalid_argument("graph is disconnected from the code");
    dp.rho = d;
    return dp;
}

StrongRegularity check_strongly_regular(const BitGraph& g) { return kernels::srg_profile(g); }

}  // namespace stsflow
