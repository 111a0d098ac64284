#include "stsflow/crc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <stdexcept>

namespace stsflow {

namespace {

// Integer roots of the characteristic polynomial of the (rho+1)x(rho+1)
// tridiagonal intersection matrix, rho <= 2 (block graphs have diameter 2).
std::vector<long long> intersection_eigenvalues(const CrcReport& r) {
    if (r.rho == 1) {
        long long theta0 = r.alphas[0] + r.betas[0];
        long long other = r.alphas[0] - r.gammas[0];
        return {theta0, other};
    }
    // rho = 2: the three roots of det(M - x I) are distinct (positive off-
    // diagonals) and bounded by the valency, so an exact scan finds them.
    long long a0 = r.alphas[0], a1 = r.alphas[1], a2 = r.alphas[2];
    long long b0 = r.betas[0], b1 = r.betas[1];
    long long g1 = r.gammas[0], g2 = r.gammas[1];
    auto p = [&](long long x) {
        return (a0 - x) * ((a1 - x) * (a2 - x) - b1 * g2) - b0 * g1 * (a2 - x);
    };
    long long valency = r.alphas[0] + r.betas[0];
    std::vector<long long> roots;
    for (long long x = valency; x >= -valency; --x)
        if (p(x) == 0) roots.push_back(x);
    if (roots.size() != 3) throw std::logic_error("intersection matrix has non-integer eigenvalues");
    return roots;
}

}  // namespace

CrcCheck check_crc(const BitGraph& g, const Code& code) {
    CrcCheck out;
    if (code.empty() || static_cast<int>(code.size()) >= g.n) {
        out.error = "code must be a nonempty proper subset";
        return out;
    }
    DistancePartition dp = distance_partition(g, code);
    int rho = dp.rho;
    std::vector<int> layer(g.n, -1);
    for (int i = 0; i <= rho; ++i)
        for (int v : dp.cells[i]) layer[v] = i;
    std::vector<long long> alphas(rho + 1, -1), betas(rho + 1, -1), gammas(rho + 1, -1);
    for (int i = 0; i <= rho; ++i) {
        for (int v : dp.cells[i]) {
            long long a = 0, b = 0, c = 0;
            for (int w : g.neighbors(v)) {
                if (layer[w] == i)
                    ++a;
                else if (layer[w] == i + 1)
                    ++b;
                else if (layer[w] == i - 1)
                    ++c;
            }
            if (alphas[i] < 0) {
                alphas[i] = a;
                betas[i] = b;
                gammas[i] = c;
            } else if (alphas[i] != a || betas[i] != b || gammas[i] != c) {
                out.bad_vertex = v;
                out.bad_layer = i;
                out.error = "not completely regular at vertex " + std::to_string(v) + ", layer " +
                            std::to_string(i);
                return out;
            }
        }
    }
    out.ok = true;
    out.report.rho = rho;
    out.report.alphas = {alphas.begin(), alphas.end()};
    out.report.betas.assign(betas.begin(), betas.end() - 1);          // beta_rho is 0 by convention
    out.report.gammas.assign(gammas.begin() + 1, gammas.end());       // gamma_0 is 0
    out.report.cells = dp.cells;
    out.report.eigenvalues = intersection_eigenvalues(out.report);
    return out;
}

std::optional<long long> is_one_design(const SteinerTripleSystem& sts, const Code& code) {
    std::vector<long long> count(sts.n + 1, 0);
    for (int b : code)
        for (int p : sts.blocks[b]) ++count[p];
    for (int p = 2; p <= sts.n; ++p)
        if (count[p] != count[1]) return std::nullopt;
    return count[1];
}

IntVec two_valued_vector(const BitGraph& g, const Code& code, const CrcReport& report) {
    if (report.rho != 1) throw std::invalid_argument("two-valued vector needs covering radius 1");
    std::vector<char> in(g.n, 0);
    for (int v : code) in[v] = 1;
    IntVec vec(g.n, -report.gammas[0]);
    for (int v : code) vec[v] = report.betas[0];
    long long theta = report.alphas[0] - report.gammas[0];
    if (!is_eigenvector(g, vec, theta))
        throw std::logic_error("two-valued vector is not an eigenvector at alpha0 - gamma1");
    return vec;
}

namespace {

Code blocks_inside(const SteinerTripleSystem& sts, const std::vector<int>& pts) {
    std::vector<char> in(sts.n + 1, 0);
    for (int p : pts) in[p] = 1;
    Code code;
    for (int b = 0; b < sts.block_count(); ++b) {
        const Triple& t = sts.blocks[b];
        if (in[t[0]] && in[t[1]] && in[t[2]]) code.push_back(b);
    }
    return code;
}

void require_subsystem(const SteinerTripleSystem& sts, const std::vector<int>& pts) {
    int m = static_cast<int>(pts.size());
    Code inside = blocks_inside(sts, pts);
    if (static_cast<long long>(inside.size()) != static_cast<long long>(m) * (m - 1) / 6)
        throw std::invalid_argument("point set does not induce a subsystem");
}

CrcCheck expect_crc(const BitGraph& g, const Code& code, int rho, std::optional<long long> theta) {
    CrcCheck check = check_crc(g, code);
    if (!check.ok) throw std::invalid_argument("code is not completely regular: " + check.error);
    if (check.report.rho != rho)
        throw std::invalid_argument("covering radius " + std::to_string(check.report.rho) +
                                    " != expected " + std::to_string(rho));
    if (theta) {
        long long got = check.report.alphas[0] - check.report.gammas[0];
        if (got != *theta)
            throw std::invalid_argument("code eigenvalue " + std::to_string(got) + " != expected " +
                                        std::to_string(*theta));
    }
    return check;
}

}  // namespace

Code construction_pencil(const SteinerTripleSystem& sts, int point) {
    Code code = point_pencil(sts, point);
    BitGraph g = block_graph(sts);
    expect_crc(g, code, 1, block_graph_eigenvalues(sts.n).theta1);
    return code;
}

Code construction_subsystem(const SteinerTripleSystem& sts, const std::vector<int>& pts) {
    if (static_cast<int>(pts.size()) != (sts.n - 1) / 2)
        throw std::invalid_argument("subsystem must have order (n-1)/2");
    require_subsystem(sts, pts);
    Code code = blocks_inside(sts, pts);
    BitGraph g = block_graph(sts);
    expect_crc(g, code, 1, block_graph_eigenvalues(sts.n).theta1);
    return code;
}

Code construction_pencil_plus_subsystem(const SteinerTripleSystem& sts, int point,
                                        const std::vector<int>& pts) {
    if (std::find(pts.begin(), pts.end(), point) != pts.end())
        throw std::invalid_argument("the pencil point must lie outside the subsystem");
    if (static_cast<int>(pts.size()) != (sts.n - 1) / 2)
        throw std::invalid_argument("subsystem must have order (n-1)/2");
    require_subsystem(sts, pts);
    Code code = point_pencil(sts, point);
    Code inside = blocks_inside(sts, pts);
    code.insert(code.end(), inside.begin(), inside.end());
    std::sort(code.begin(), code.end());
    BitGraph g = block_graph(sts);
    expect_crc(g, code, 1, block_graph_eigenvalues(sts.n).theta1);
    return code;
}

Code construction_subdesign(const SteinerTripleSystem& sts, const Code& blocks) {
    if (!is_one_design(sts, blocks)) throw std::invalid_argument("block set is not a 1-design");
    Code code = blocks;
    std::sort(code.begin(), code.end());
    BitGraph g = block_graph(sts);
    expect_crc(g, code, 1, block_graph_eigenvalues(sts.n).theta2);
    return code;
}

Code construction_small_subsystem(const SteinerTripleSystem& sts, const std::vector<int>& pts) {
    if (static_cast<int>(pts.size()) >= (sts.n - 1) / 2)
        throw std::invalid_argument("subsystem order must be below (n-1)/2");
    require_subsystem(sts, pts);
    Code code = blocks_inside(sts, pts);
    BitGraph g = block_graph(sts);
    expect_crc(g, code, 2, std::nullopt);
    return code;
}

namespace {

struct BipartitionSearch {
    const BitGraph& g;
    long long alpha0, beta0, gamma1;
    std::vector<int> color;  // -1 undecided, 1 in, 0 out
    std::vector<int> c_in;   // decided-in neighbors
    std::vector<int> und;    // undecided neighbors
    std::vector<Code>& out;
    std::chrono::steady_clock::time_point deadline;
    bool use_deadline;
    bool complete = true;

    bool vertex_ok(int v) const {
        long long target;
        if (color[v] == 1)
            target = alpha0;
        else if (color[v] == 0)
            target = gamma1;
        else {
            // still assignable one way or the other
            return (c_in[v] <= alpha0 && alpha0 <= c_in[v] + und[v]) ||
                   (c_in[v] <= gamma1 && gamma1 <= c_in[v] + und[v]);
        }
        return c_in[v] <= target && target <= c_in[v] + und[v];
    }

    bool assign(int v, int c) {
        color[v] = c;
        for (int w : g.neighbors(v)) {
            --und[w];
            if (c == 1) ++c_in[w];
        }
        if (!vertex_ok(v)) return false;
        for (int w : g.neighbors(v))
            if (!vertex_ok(w)) return false;
        return true;
    }

    void unassign(int v, int c) {
        for (int w : g.neighbors(v)) {
            ++und[w];
            if (c == 1) --c_in[w];
        }
        color[v] = -1;
    }

    void dfs(int v) {
        if (!complete) return;
        if (use_deadline && std::chrono::steady_clock::now() > deadline) {
            complete = false;
            return;
        }
        if (v == g.n) {
            Code in_side;
            for (int x = 0; x < g.n; ++x)
                if (color[x] == 1) in_side.push_back(x);
            if (static_cast<int>(in_side.size()) < g.n) out.push_back(std::move(in_side));
            return;
        }
        for (int c : {1, 0}) {
            if (v == 0 && c == 0) continue;  // canonical side: vertex 0 is in
            if (assign(v, c)) dfs(v + 1);
            unassign(v, c);
        }
    }
};

}  // namespace

EnumerateResult enumerate_equitable_bipartitions(const BitGraph& g, long long theta, double budget_seconds) {
    EnumerateResult result;
    if (g.n < 2) return result;
    long long theta0 = g.degree(0);
    long long crossing = theta0 - theta;  // beta0 + gamma1
    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::milliseconds(static_cast<long long>(budget_seconds * 1000));
    for (long long beta0 = 1; beta0 < crossing; ++beta0) {
        long long gamma1 = crossing - beta0;
        BipartitionSearch search{g,
                                 theta0 - beta0,
                                 beta0,
                                 gamma1,
                                 std::vector<int>(g.n, -1),
                                 std::vector<int>(g.n, 0),
                                 std::vector<int>(g.n, 0),
                                 result.codes,
                                 deadline,
                                 budget_seconds > 0};
        for (int v = 0; v < g.n; ++v) search.und[v] = g.degree(v);
        search.dfs(0);
        if (!search.complete) {
            result.complete = false;
            break;
        }
    }
    std::sort(result.codes.begin(), result.codes.end());
    result.codes.erase(std::unique(result.codes.begin(), result.codes.end()), result.codes.end());
    return result;
}

long long expected_count(int n, int r) {
    if (!admissible_order(n)) throw std::invalid_argument("expected_count needs a valid order");
    long long sub = (1LL << (n - r)) - 1;
    return n + sub * ((n + 3) / 2);
}

std::string construction_tag(const SteinerTripleSystem& sts, const Code& code) {
    std::set<int> pts;
    for (int b : code)
        for (int p : sts.blocks[b]) pts.insert(p);
    // pencil: all blocks through one point
    for (int p = 1; p <= sts.n; ++p) {
        std::vector<int> pen = point_pencil(sts, p);
        if (pen == code) return "pencil";
    }
    int half = (sts.n - 1) / 2;
    if (admissible_order(half)) {
        for (const auto& sub : find_subsystems(sts, half)) {
            Code inside = blocks_inside(sts, sub);
            if (inside == code) return "half-subsystem";
            std::vector<char> in_sub(sts.n + 1, 0);
            for (int p : sub) in_sub[p] = 1;
            for (int p = 1; p <= sts.n; ++p) {
                if (in_sub[p]) continue;
                Code combo = point_pencil(sts, p);
                combo.insert(combo.end(), inside.begin(), inside.end());
                std::sort(combo.begin(), combo.end());
                if (combo == code) return "pencil-plus-subsystem";
            }
        }
    }
    return "other";
}

}  // namespace stsflow
