#include "stsflow/kernels.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stsflow::kernels {

namespace {
int g_workers = 0;

bool blocks_meet(const Triple& a, const Triple& b) {
    for (int p : a)
        for (int q : b)
            if (p == q) return true;
    return false;
}

int effective_workers() {
#ifdef _OPENMP
    return g_workers > 0 ? g_workers : omp_get_max_threads();
#else
    return 1;
#endif
}
}  // namespace

void set_worker_count(int workers) { g_workers = workers < 0 ? 0 : workers; }
int worker_count() { return effective_workers(); }

BitGraph build_block_adjacency_serial(const SteinerTripleSystem& sts) {
    int b = sts.block_count();
    BitGraph g(b);
    for (int i = 0; i < b; ++i)
        for (int j = i + 1; j < b; ++j)
            if (blocks_meet(sts.blocks[i], sts.blocks[j])) g.add_edge(i, j);
    return g;
}

BitGraph build_block_adjacency_parallel(const SteinerTripleSystem& sts) {
    int b = sts.block_count();
    BitGraph g(b);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(effective_workers())
#endif
    for (int i = 0; i < b; ++i) {
        uint64_t* row = g.row(i);
        for (int j = 0; j < b; ++j) {
            if (j == i) continue;
            if (blocks_meet(sts.blocks[i], sts.blocks[j])) row[j / 64] |= uint64_t(1) << (j % 64);
        }
    }
    return g;
}

BitGraph build_block_adjacency(const SteinerTripleSystem& sts) {
    if (effective_workers() > 1 && sts.block_count() >= 256) return build_block_adjacency_parallel(sts);
    return build_block_adjacency_serial(sts);
}

namespace {
long long row_dot(const BitGraph& g, int v, const std::vector<long long>& x) {
    long long sum = 0;
    const uint64_t* row = g.row(v);
    for (int w = 0; w < g.words; ++w) {
        uint64_t bits = row[w];
        while (bits) {
            int bit = __builtin_ctzll(bits);
            sum += x[static_cast<size_t>(w) * 64 + bit];
            bits &= bits - 1;
        }
    }
    return sum;
}
}  // namespace

std::vector<long long> neighbor_sums_serial(const BitGraph& g, const std::vector<long long>& x) {
    std::vector<long long> out(g.n);
    for (int v = 0; v < g.n; ++v) out[v] = row_dot(g, v, x);
    return out;
}

std::vector<long long> neighbor_sums_parallel(const BitGraph& g, const std::vector<long long>& x) {
    std::vector<long long> out(g.n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_workers())
#endif
    for (int v = 0; v < g.n; ++v) out[v] = row_dot(g, v, x);
    return out;
}

std::vector<long long> neighbor_sums(const BitGraph& g, const std::vector<long long>& x) {
    if (effective_workers() > 1 && g.n >= 512) return neighbor_sums_parallel(g, x);
    return neighbor_sums_serial(g, x);
}

namespace {
int popcount_and(const uint64_t* a, const uint64_t* b, int words) {
    int c = 0;
    for (int w = 0; w < words; ++w) c += __builtin_popcountll(a[w] & b[w]);
    return c;
}

StrongRegularity srg_from_bounds(const BitGraph& g, long long lam_min, long long lam_max,
                                 long long mu_min, long long mu_max, long long valency, bool regular) {
    StrongRegularity r;
    if (!regular) return r;
    r.valency = valency;
    if (g.n >= 2 && lam_min <= lam_max) {
        if (lam_min != lam_max) return r;
        r.lambda = lam_min;
    }
    if (mu_min <= mu_max) {
        if (mu_min != mu_max) return r;
        r.mu = mu_min;
    }
    r.ok = true;
    return r;
}
}  // namespace

StrongRegularity srg_profile_serial(const BitGraph& g) {
    long long valency = g.n > 0 ? g.degree(0) : 0;
    bool regular = true;
    long long lam_min = 1LL << 62, lam_max = -1, mu_min = 1LL << 62, mu_max = -1;
    for (int v = 0; v < g.n && regular; ++v)
        if (g.degree(v) != valency) regular = false;
    if (!regular) return {};
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) {
            long long c = popcount_and(g.row(u), g.row(v), g.words);
            if (g.adjacent(u, v)) {
                lam_min = std::min(lam_min, c);
                lam_max = std::max(lam_max, c);
            } else {
                mu_min = std::min(mu_min, c);
                mu_max = std::max(mu_max, c);
            }
        }
    return srg_from_bounds(g, lam_min, lam_max, mu_min, mu_max, valency, regular);
}

StrongRegularity srg_profile_parallel(const BitGraph& g) {
    long long valency = g.n > 0 ? g.degree(0) : 0;
    std::atomic<bool> regular{true};
    long long lam_min = 1LL << 62, lam_max = -1, mu_min = 1LL << 62, mu_max = -1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(effective_workers())
#endif
    for (int v = 0; v < g.n; ++v)
        if (g.degree(v) != valency) regular.store(false);
    if (!regular.load()) return {};
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) num_threads(effective_workers()) \
    reduction(min : lam_min, mu_min) reduction(max : lam_max, mu_max)
#endif
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) {
            long long c = popcount_and(g.row(u), g.row(v), g.words);
            if (g.adjacent(u, v)) {
                lam_min = std::min(lam_min, c);
                lam_max = std::max(lam_max, c);
            } else {
                mu_min = std::min(mu_min, c);
                mu_max = std::max(mu_max, c);
            }
        }
    return srg_from_bounds(g, lam_min, lam_max, mu_min, mu_max, valency, true);
}

StrongRegularity srg_profile(const BitGraph& g) {
    if (effective_workers() > 1 && g.n >= 256) return srg_profile_parallel(g);
    return srg_profile_serial(g);
}

}  // namespace stsflow::kernels
