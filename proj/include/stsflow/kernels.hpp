#pragma once

#include <cstdint>
#include <vector>

#include "stsflow/graphs.hpp"
#include "stsflow/sts.hpp"

// Data-parallel inner loops, each in a serial reference version and an
// OpenMP version. Results are exact integers, so the two variants agree
// bit-for-bit; tests compare them and the benchmark tool times them.
namespace stsflow::kernels {

// 0 = use every available hardware thread.
void set_worker_count(int workers);
int worker_count();

// Pairwise block-intersection adjacency.
BitGraph build_block_adjacency_serial(const SteinerTripleSystem& sts);
BitGraph build_block_adjacency_parallel(const SteinerTripleSystem& sts);
BitGraph build_block_adjacency(const SteinerTripleSystem& sts);

// out[v] = sum of x over the neighbors of v.
std::vector<long long> neighbor_sums_serial(const BitGraph& g, const std::vector<long long>& x);
std::vector<long long> neighbor_sums_parallel(const BitGraph& g, const std::vector<long long>& x);
std::vector<long long> neighbor_sums(const BitGraph& g, const std::vector<long long>& x);

// Common-neighbor profile over all vertex pairs: returns {lambda, mu} if the
// counts are constant over edges and non-edges, else ok=false.
StrongRegularity srg_profile_serial(const BitGraph& g);
StrongRegularity srg_profile_parallel(const BitGraph& g);
StrongRegularity srg_profile(const BitGraph& g);

}  // namespace stsflow::kernels
