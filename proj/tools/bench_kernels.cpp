// Times the serial reference kernels against their OpenMP counterparts on a
// doubled Bose system of order 103 (1751 blocks) and checks they agree.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "stsflow/flows.hpp"
#include "stsflow/kernels.hpp"
#include "stsflow/sts.hpp"

using namespace stsflow;
using Clock = std::chrono::steady_clock;

namespace {

template <typename F>
double time_ms(F&& f, int reps) {
    auto t0 = Clock::now();
    for (int i = 0; i < reps; ++i) f();
    auto t1 = Clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    int reps = argc > 1 ? std::atoi(argv[1]) : 5;
    SteinerTripleSystem base = bose(17);
    SteinerTripleSystem big = assmuss_mattson(base, tau_constant(base, 0));
    std::printf("system: order %d, %d blocks, %d workers\n", big.n, big.block_count(),
                kernels::worker_count());

    BitGraph serial_graph = kernels::build_block_adjacency_serial(big);
    BitGraph parallel_graph = kernels::build_block_adjacency_parallel(big);
    if (serial_graph.bits != parallel_graph.bits) {
        std::printf("FAIL: adjacency kernels disagree\n");
        return 1;
    }
    double adj_s = time_ms([&] { kernels::build_block_adjacency_serial(big); }, reps);
    double adj_p = time_ms([&] { kernels::build_block_adjacency_parallel(big); }, reps);
    std::printf("%-24s %10.2f ms %10.2f ms  x%.2f\n", "block adjacency", adj_s, adj_p, adj_s / adj_p);

    std::vector<long long> x(big.block_count());
    for (size_t i = 0; i < x.size(); ++i) x[i] = static_cast<long long>(i % 7) - 3;
    auto sums_s = kernels::neighbor_sums_serial(serial_graph, x);
    auto sums_p = kernels::neighbor_sums_parallel(serial_graph, x);
    if (sums_s != sums_p) {
        std::printf("FAIL: neighbor-sum kernels disagree\n");
        return 1;
    }
    double ns_s = time_ms([&] { kernels::neighbor_sums_serial(serial_graph, x); }, reps * 10);
    double ns_p = time_ms([&] { kernels::neighbor_sums_parallel(serial_graph, x); }, reps * 10);
    std::printf("%-24s %10.2f ms %10.2f ms  x%.2f\n", "neighbor sums", ns_s, ns_p, ns_s / ns_p);

    auto srg_s = kernels::srg_profile_serial(serial_graph);
    auto srg_p = kernels::srg_profile_parallel(serial_graph);
    if (srg_s.ok != srg_p.ok || srg_s.lambda != srg_p.lambda || srg_s.mu != srg_p.mu) {
        std::printf("FAIL: strong-regularity kernels disagree\n");
        return 1;
    }
    double srg_ts = time_ms([&] { kernels::srg_profile_serial(serial_graph); }, reps);
    double srg_tp = time_ms([&] { kernels::srg_profile_parallel(serial_graph); }, reps);
    std::printf("%-24s %10.2f ms %10.2f ms  x%.2f\n", "strong regularity", srg_ts, srg_tp,
                srg_ts / srg_tp);
    std::printf("srg: valency=%lld lambda=%lld mu=%lld\n", srg_s.valency, srg_s.lambda, srg_s.mu);
    return 0;
}
