#include "stsflow/flows.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

#include "stsflow/kernels.hpp"

namespace stsflow {

FlowCheck is_flow(const SteinerTripleSystem& sts, const IntVec& v, const std::string& kind) {
    FlowCheck check;
    if (static_cast<int>(v.size()) != sts.block_count()) {
        check.error = "vector length != block count";
        return check;
    }
    for (int j = 0; j < sts.block_count(); ++j)
        if (v[j] == 0) {
            check.zero_block = j;
            check.error = "zero entry at block " + std::to_string(j);
            return check;
        }
    std::vector<long long> point_sum(sts.n + 1, 0);
    for (int j = 0; j < sts.block_count(); ++j)
        for (int p : sts.blocks[j]) point_sum[p] += v[j];
    for (int p = 1; p <= sts.n; ++p)
        if (point_sum[p] != 0) {
            check.bad_point = p;
            check.bad_sum = point_sum[p];
            check.error = "point " + std::to_string(p) + " sums to " + std::to_string(point_sum[p]);
            return check;
        }
    // flow <=> eigenvector at -3 on the block graph
    BitGraph g = block_graph(sts);
    if (!is_eigenvector(g, v, -3))
        throw std::logic_error("flow verified by point sums but A v != -3 v");
    check.ok = true;
    check.cert.order = sts.n;
    check.cert.blocks = sts.blocks;
    check.cert.v = v;
    long long norm = 0;
    for (long long x : v) norm = std::max(norm, x < 0 ? -x : x);
    check.cert.value = norm + 1;
    check.cert.kind = kind;
    return check;
}

FlowCertificate resolvable_flow(const SteinerTripleSystem& sts, const Resolution& res) {
    int classes = static_cast<int>(res.classes.size());
    if (classes != sts.replication())
        throw std::invalid_argument("resolution must have (n-1)/2 classes");
    IntVec v(sts.block_count(), 0);
    auto paint = [&](int from, int count, long long value) {
        for (int c = from; c < from + count; ++c)
            for (int b : res.classes[c]) v[b] = value;
    };
    if (sts.n % 4 == 1) {
        paint(0, classes / 2, 1);
        paint(classes / 2, classes - classes / 2, -1);
    } else {
        int twos = (sts.n - 7) / 4, minus = (sts.n - 3) / 4;
        paint(0, twos, 2);
        paint(twos, minus, -2);
        paint(twos + minus, 2, 1);
    }
    FlowCheck check = is_flow(sts, v, "resolvable");
    if (!check.ok) throw std::logic_error("resolvable flow failed verification: " + check.error);
    return check.cert;
}

namespace {

// Relabeling that sends a chosen point to 1 and its pencil pairs to
// (2,3), (4,5), ..., (n-1, n). When a distinguished block avoiding the point
// is given, its three points take the even slots 2, 4, 6.
std::vector<int> pencil_relabeling(const SteinerTripleSystem& sts, int point,
                                   const Triple* distinguished) {
    std::vector<std::array<int, 2>> pairs;
    for (int b : point_pencil(sts, point)) {
        std::array<int, 2> pr{};
        int k = 0;
        for (int p : sts.blocks[b])
            if (p != point) pr[k++] = p;
        pairs.push_back(pr);
    }
    std::vector<std::array<int, 2>> ordered;
    std::vector<char> used(pairs.size(), 0);
    if (distinguished) {
        for (int p : *distinguished) {
            for (size_t i = 0; i < pairs.size(); ++i) {
                if (used[i]) continue;
                if (pairs[i][0] == p || pairs[i][1] == p) {
                    ordered.push_back(pairs[i][0] == p ? pairs[i] : std::array<int, 2>{pairs[i][1], pairs[i][0]});
                    used[i] = 1;
                    break;
                }
            }
        }
        if (ordered.size() != 3) throw std::logic_error("distinguished block must avoid the pencil point");
    }
    for (size_t i = 0; i < pairs.size(); ++i)
        if (!used[i]) ordered.push_back(pairs[i]);
    std::vector<int> perm(sts.n + 1, 0);
    perm[point] = 1;
    for (size_t i = 0; i < ordered.size(); ++i) {
        perm[ordered[i][0]] = 2 + 2 * static_cast<int>(i);
        perm[ordered[i][1]] = 3 + 2 * static_cast<int>(i);
    }
    return perm;
}

IntVec lift_int(const SteinerTripleSystem& sts, const std::vector<long long>& upoint) {
    IntVec v;
    v.reserve(sts.blocks.size());
    for (const Triple& t : sts.blocks) v.push_back(upoint[t[0]] + upoint[t[1]] + upoint[t[2]]);
    return v;
}

}  // namespace

FirstEigVector first_eig_nzi(const SteinerTripleSystem& sts) {
    int n = sts.n;
    if (n <= 7) throw std::invalid_argument("first_eig_nzi requires order > 7");
    std::vector<long long> u(n + 1, 0);  // indexed by relabeled points

    if (n % 4 == 1) {
        std::vector<int> perm = pencil_relabeling(sts, 1, nullptr);
        std::vector<long long> upoint(n + 1, 0);
        for (int lbl = 2; lbl <= (n + 1) / 2; ++lbl) u[lbl] = 1;
        for (int lbl = (n + 3) / 2; lbl <= n; ++lbl) u[lbl] = -1;
        for (int p = 1; p <= n; ++p) upoint[p] = u[perm[p]];
        IntVec v = lift_int(sts, upoint);
        long long norm = 0;
        for (long long x : v) {
            if (x == 0) throw std::logic_error("first-eigenvalue vector has a zero entry");
            norm = std::max(norm, x < 0 ? -x : x);
        }
        BitGraph g = block_graph(sts);
        if (!is_eigenvector(g, v, block_graph_eigenvalues(n).theta1))
            throw std::logic_error("first-eigenvalue vector failed the exact eigenvector check");
        return {std::move(v), norm};
    }

    // n = 3 mod 4: anchor block relabeled to {1,2,3}, u = (-1, 2, -3) there,
    // +-1 on the rest, arranged along the auxiliary cycles through 2 and 3.
    Triple anchor = sts.blocks.front();  // lex-least block
    std::vector<int> perm(n + 1, 0);
    perm[anchor[0]] = 1;
    perm[anchor[1]] = 2;
    perm[anchor[2]] = 3;
    int next = 4;
    for (int p = 1; p <= n; ++p)
        if (perm[p] == 0) perm[p] = next++;

    // adj2[p] = q iff {2,p,q} is a (relabeled) block, likewise adj3.
    std::vector<int> adj2(n + 1, 0), adj3(n + 1, 0);
    for (const Triple& t : sts.blocks) {
        int a = perm[t[0]], b = perm[t[1]], c = perm[t[2]];
        int x[3] = {a, b, c};
        std::sort(x, x + 3);
        if (x[0] == 1 && x[1] == 2 && x[2] == 3) continue;
        if (x[0] == 2) {
            adj2[x[1]] = x[2];
            adj2[x[2]] = x[1];
        } else if (x[0] == 3) {
            adj3[x[1]] = x[2];
            adj3[x[2]] = x[1];
        }
    }
    for (int p = 4; p <= n; ++p)
        if (adj2[p] == 0 || adj3[p] == 0) throw std::logic_error("auxiliary graph is not 2-regular");

    u[1] = -1;
    u[2] = 2;
    u[3] = -3;
    std::vector<char> visited(n + 1, 0);
    bool first_cycle = true;
    for (int start = 4; start <= n; ++start) {
        if (visited[start]) continue;
        // walk the cycle alternating labels, starting along the label-2 edge
        std::vector<int> cycle;
        int cur = start;
        bool via2 = true;
        do {
            cycle.push_back(cur);
            visited[cur] = 1;
            cur = via2 ? adj2[cur] : adj3[cur];
            via2 = !via2;
        } while (cur != start);
        if (cycle.size() % 2 != 0) throw std::logic_error("auxiliary cycle of odd length");
        if (first_cycle) {
            // three consecutive +1, then alternate ending at -1
            u[cycle[0]] = u[cycle[1]] = u[cycle[2]] = 1;
            for (size_t i = 3; i < cycle.size(); ++i) u[cycle[i]] = (i % 2 == 1) ? -1 : 1;
            first_cycle = false;
        } else {
            for (size_t i = 0; i < cycle.size(); ++i) u[cycle[i]] = (i % 2 == 0) ? 1 : -1;
        }
    }
    long long total = std::accumulate(u.begin() + 1, u.end(), 0LL);
    if (total != 0) throw std::logic_error("first-eigenvalue point vector does not sum to zero");

    std::vector<long long> upoint(n + 1, 0);
    for (int p = 1; p <= n; ++p) upoint[p] = u[perm[p]];
    IntVec v = lift_int(sts, upoint);
    long long norm = 0;
    for (long long x : v) {
        if (x == 0) throw std::logic_error("first-eigenvalue vector has a zero entry");
        norm = std::max(norm, x < 0 ? -x : x);
    }
    if (norm > 4) throw std::logic_error("first-eigenvalue vector norm exceeds 4");
    BitGraph g = block_graph(sts);
    if (!is_eigenvector(g, v, block_graph_eigenvalues(n).theta1))
        throw std::logic_error("first-eigenvalue vector failed the exact eigenvector check");
    return {std::move(v), norm};
}

namespace {

// Plain BFS max-flow on the block -> point routing network.
struct RoutingNetwork {
    int nodes;
    std::vector<std::vector<int>> adj;
    std::vector<int> head, to, cap, nxt;

    explicit RoutingNetwork(int n) : nodes(n), head(n, -1) {}

    void add_edge(int u, int v, int c) {
        to.push_back(v);
        cap.push_back(c);
        nxt.push_back(head[u]);
        head[u] = static_cast<int>(to.size()) - 1;
        to.push_back(u);
        cap.push_back(0);
        nxt.push_back(head[v]);
        head[v] = static_cast<int>(to.size()) - 1;
    }

    int max_flow(int s, int t) {
        int flow = 0;
        while (true) {
            std::vector<int> pred_edge(nodes, -1);
            std::deque<int> q{s};
            pred_edge[s] = -2;
            while (!q.empty() && pred_edge[t] == -1) {
                int u = q.front();
                q.pop_front();
                for (int e = head[u]; e != -1; e = nxt[e])
                    if (cap[e] > 0 && pred_edge[to[e]] == -1) {
                        pred_edge[to[e]] = e;
                        q.push_back(to[e]);
                    }
            }
            if (pred_edge[t] == -1) return flow;
            for (int v = t; v != s;) {
                int e = pred_edge[v];
                --cap[e];
                ++cap[e ^ 1];
                v = to[e ^ 1];
            }
            ++flow;
        }
    }
};

}  // namespace

std::optional<std::vector<int>> find_h(const SteinerTripleSystem& sts) {
    int b = sts.block_count(), n = sts.n;
    if (b < 4 * n) return std::nullopt;
    // source 0, blocks 1..b, points b+1..b+n, sink b+n+1
    RoutingNetwork net(b + n + 2);
    int sink = b + n + 1;
    for (int j = 0; j < b; ++j) {
        net.add_edge(0, 1 + j, 1);
        for (int p : sts.blocks[j]) net.add_edge(1 + j, b + p, 1);
    }
    for (int p = 1; p <= n; ++p) net.add_edge(b + p, sink, 4);
    if (net.max_flow(0, sink) != 4 * n) return std::nullopt;
    std::vector<int> h(b, 0);
    for (int j = 0; j < b; ++j) {
        for (int e = net.head[1 + j]; e != -1; e = net.nxt[e]) {
            int v = net.to[e];
            if (v > b && v <= b + n && net.cap[e] == 0) {  // saturated block->point edge
                h[j] = v - b;
                break;
            }
        }
        if (h[j] == 0) h[j] = sts.blocks[j][0];  // unrouted blocks go to their least point
    }
    return h;
}

std::map<Triple, long long> g_values(const Triple& base, int tau_bit, int anchor, long long scale, int n) {
    if (base[0] == base[1] || base[1] == base[2]) throw std::invalid_argument("repeated points in block");
    if (anchor != base[0] && anchor != base[1] && anchor != base[2])
        throw std::invalid_argument("anchor must be a point of the block");
    int a1 = anchor;
    std::array<int, 2> rest{};
    int k = 0;
    for (int p : base)
        if (p != anchor) rest[k++] = p;
    int a2 = rest[0], a3 = rest[1];
    auto bar = [n](int p) { return p + n; };
    auto key = [](int x, int y, int z) {
        Triple t{x, y, z};
        std::sort(t.begin(), t.end());
        return t;
    };
    std::map<Triple, long long> g;
    if (tau_bit == 0) {
        g[key(a1, a2, a3)] = scale;
        g[key(a1, bar(a2), bar(a3))] = scale;
        g[key(bar(a1), bar(a2), a3)] = -scale;
        g[key(bar(a1), a2, bar(a3))] = -scale;
    } else {
        g[key(bar(a1), a2, a3)] = -scale;
        g[key(bar(a1), bar(a2), bar(a3))] = -scale;
        g[key(a1, a2, bar(a3))] = scale;
        g[key(a1, bar(a2), a3)] = scale;
    }
    return g;
}

AmWeights am_w_values(int n) {
    if (n < 9 || !admissible_order(n)) throw std::invalid_argument("pencil weights need a valid order >= 9");
    int half = (n - 1) / 2;
    AmWeights w;
    w.pencil.assign(half, 0);
    if (half % 2 == 0) {
        int ones = (n - 1) / 4 + 1;
        for (int i = 1; i <= half; ++i) w.pencil[i - 1] = (i <= ones) ? 1 : -1;
    } else {
        for (int i = 1; i <= (n - 3) / 4; ++i) w.pencil[i - 1] = 1;
        for (int i = (n + 1) / 4; i <= (n - 3) / 2; ++i) w.pencil[i - 1] = -1;
        w.pencil[half - 1] = 2;
    }
    long long total = w.t0;
    for (long long x : w.pencil) total += x;
    if (total != 0) throw std::logic_error("pencil weights do not sum to zero");
    return w;
}

FlowCertificate am_five_flow(const SteinerTripleSystem& base, const TauAssignment& tau) {
    if (tau.tau.size() != base.blocks.size())
        throw std::invalid_argument("tau domain does not match the base block set");
    int n = base.n;

    // Relabel so the pencil of one point is {1,2,3},{1,4,5},... and a block
    // avoiding it sits on the even slots {2,4,6}.
    std::vector<int> pencil1 = point_pencil(base, 1);
    Triple t0_orig{};
    bool found = false;
    for (const Triple& t : base.blocks) {
        if (t[0] != 1 && t[1] != 1 && t[2] != 1) {
            t0_orig = t;
            found = true;
            break;
        }
    }
    if (!found) throw std::invalid_argument("no block avoids point 1");
    std::vector<int> perm = pencil_relabeling(base, 1, &t0_orig);

    std::vector<Triple> relabeled_blocks;
    relabeled_blocks.reserve(base.blocks.size());
    std::map<Triple, int> orig_index;
    for (size_t j = 0; j < base.blocks.size(); ++j) {
        const Triple& t = base.blocks[j];
        Triple r{perm[t[0]], perm[t[1]], perm[t[2]]};
        std::sort(r.begin(), r.end());
        relabeled_blocks.push_back(r);
        orig_index[r] = static_cast<int>(j);
    }
    SteinerTripleSystem rel = make_sts(n, relabeled_blocks);
    TauAssignment tau_rel;
    tau_rel.tau.resize(rel.blocks.size());
    for (size_t j = 0; j < rel.blocks.size(); ++j) tau_rel.tau[j] = tau.tau[orig_index.at(rel.blocks[j])];

    auto h_opt = find_h(rel);
    if (!h_opt) throw std::invalid_argument("no covering function: some point cannot receive 4 blocks");
    const std::vector<int>& h = *h_opt;

    // Weighted quadruples over the pencil and the distinguished block.
    AmWeights w = am_w_values(n);
    std::map<Triple, long long> value;  // relabeled doubled triple -> entry
    std::vector<char> in_pencil_or_t0(rel.block_count(), 0);
    Triple t0{2, 4, 6};
    for (int j = 0; j < rel.block_count(); ++j) {
        const Triple& t = rel.blocks[j];
        long long wt = 0;
        if (t == t0) {
            wt = w.t0;
        } else if (t[0] == 1) {
            wt = w.pencil[(t[1] - 2) / 2];
            if (t[1] != 2 * ((t[1]) / 2) || t[2] != t[1] + 1)
                throw std::logic_error("pencil block is not in (2i, 2i+1) form");
        } else {
            continue;
        }
        in_pencil_or_t0[j] = 1;
        for (const Triple& d : doubled_quadruple(t, tau_rel.tau[j] ? 1 : 0, n)) value[d] = wt;
    }

    // Point sums so far live in {+-2, +-4} and match on barred points.
    std::vector<long long> alpha(2 * n + 1, 0);
    for (const auto& [t, x] : value)
        for (int p : t)
            if (p <= 2 * n) alpha[p] += x;
    long long alpha_total = 0;
    for (int i = 1; i <= n; ++i) {
        long long a = alpha[i];
        if (a != alpha[i + n]) throw std::logic_error("pencil sums differ between a point and its bar");
        if (a != 2 && a != -2 && a != 4 && a != -4)
            throw std::logic_error("pencil sum out of {+-2,+-4} at point " + std::to_string(i));
        alpha_total += a;
    }
    if (alpha_total != 0) throw std::logic_error("pencil sums do not cancel");

    // Anchored quadruple values over the rest, driven by the covering
    // function: per anchor the +g / -g (/ -2g) split cancels every point.
    std::vector<std::vector<int>> m_sets(n + 1);
    for (int j = 0; j < rel.block_count(); ++j)
        if (!in_pencil_or_t0[j]) m_sets[h[j]].push_back(j);
    if (!m_sets[1].empty()) throw std::logic_error("a block outside the pencil is routed to point 1");
    for (int j = 2; j <= n; ++j) {
        const auto& m = m_sets[j];
        if (m.size() < 2)
            throw std::invalid_argument("covering class at point " + std::to_string(j) + " has fewer than 2 blocks");
        size_t plus = m.size() % 2 == 0 ? m.size() / 2 : (m.size() + 1) / 2;
        for (size_t idx = 0; idx < m.size(); ++idx) {
            long long scale;
            if (idx < plus)
                scale = 1;
            else if (m.size() % 2 == 1 && idx == m.size() - 1)
                scale = -2;
            else
                scale = -1;
            const Triple& t = rel.blocks[m[idx]];
            for (const auto& [d, x] : g_values(t, tau_rel.tau[m[idx]] ? 1 : 0, j, scale, n)) value[d] = x;
        }
    }

    // Spokes absorb the residues.
    std::vector<long long> sum(2 * n + 1, 0);
    for (const auto& [t, x] : value)
        for (int p : t)
            if (p <= 2 * n) sum[p] += x;
    for (int i = 1; i <= n; ++i)
        if (sum[i] != alpha[i] || sum[i + n] != alpha[i])
            throw std::logic_error("anchored quadruples disturbed a point sum");

    SteinerTripleSystem am_rel = assmuss_mattson(rel, tau_rel);
    IntVec v_rel(am_rel.block_count(), 0);
    std::map<Triple, int> am_rel_index;
    for (int j = 0; j < am_rel.block_count(); ++j) am_rel_index[am_rel.blocks[j]] = j;
    for (const auto& [t, x] : value) v_rel[am_rel_index.at(t)] = x;
    for (int i = 1; i <= n; ++i) {
        Triple spoke{i, i + n, 2 * n + 1};
        v_rel[am_rel_index.at(spoke)] = -alpha[i];
    }

    // Pull back to the doubled system of the original labeling.
    SteinerTripleSystem am = assmuss_mattson(base, tau);
    std::vector<int> inv(n + 1, 0);
    for (int p = 1; p <= n; ++p) inv[perm[p]] = p;
    auto pull = [&](int p) {
        if (p == 2 * n + 1) return p;
        return p <= n ? inv[p] : inv[p - n] + n;
    };
    IntVec v(am.block_count(), 0);
    std::map<Triple, int> am_index;
    for (int j = 0; j < am.block_count(); ++j) am_index[am.blocks[j]] = j;
    for (int j = 0; j < am_rel.block_count(); ++j) {
        const Triple& t = am_rel.blocks[j];
        Triple o{pull(t[0]), pull(t[1]), pull(t[2])};
        std::sort(o.begin(), o.end());
        v[am_index.at(o)] = v_rel[j];
    }

    FlowCheck check = is_flow(am, v, "am5");
    if (!check.ok) throw std::logic_error("doubled-system flow failed verification: " + check.error);
    if (check.cert.value > 5) throw std::logic_error("doubled-system flow exceeds value 5");
    return check.cert;
}

namespace {

struct FlowSearch {
    const SteinerTripleSystem& sts;
    long long bound;  // entries in {+-1..+-bound}
    std::vector<std::vector<int>> blocks_through;
    IntVec v;
    std::vector<char> assigned;
    std::vector<int> rem;
    std::vector<long long> sum;
    bool found = false;

    FlowSearch(const SteinerTripleSystem& s, long long b) : sts(s), bound(b) {
        blocks_through.assign(s.n + 1, {});
        for (int j = 0; j < s.block_count(); ++j)
            for (int p : s.blocks[j]) blocks_through[p].push_back(j);
        v.assign(s.block_count(), 0);
        assigned.assign(s.block_count(), 0);
        rem.assign(s.n + 1, 0);
        sum.assign(s.n + 1, 0);
        for (int p = 1; p <= s.n; ++p) rem[p] = static_cast<int>(blocks_through[p].size());
    }

    bool point_ok(int p) const {
        if (rem[p] == 0) return sum[p] == 0;
        long long s = sum[p] < 0 ? -sum[p] : sum[p];
        if (s > bound * rem[p]) return false;
        if (bound == 1 && (sum[p] + rem[p]) % 2 != 0) return false;
        return true;
    }

    bool assign(int j, long long val, std::vector<int>& trail) {
        v[j] = val;
        assigned[j] = 1;
        trail.push_back(j);
        for (int p : sts.blocks[j]) {
            --rem[p];
            sum[p] += val;
        }
        for (int p : sts.blocks[j])
            if (!point_ok(p)) return false;
        return true;
    }

    void undo(std::vector<int>& trail, size_t mark) {
        while (trail.size() > mark) {
            int j = trail.back();
            trail.pop_back();
            for (int p : sts.blocks[j]) {
                ++rem[p];
                sum[p] -= v[j];
            }
            v[j] = 0;
            assigned[j] = 0;
        }
    }

    // Assign every block forced by a point with one undecided block left.
    bool propagate(std::vector<int>& trail) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (int p = 1; p <= sts.n; ++p) {
                if (rem[p] != 1) continue;
                int forced = -1;
                for (int j : blocks_through[p])
                    if (!assigned[j]) {
                        forced = j;
                        break;
                    }
                long long val = -sum[p];
                if (val == 0 || val > bound || val < -bound) return false;
                if (!assign(forced, val, trail)) return false;
                progress = true;
            }
        }
        return true;
    }

    int pick_block() const {
        int best_point = 0, best_rem = 1 << 30;
        for (int p = 1; p <= sts.n; ++p)
            if (rem[p] > 0 && rem[p] < best_rem) {
                best_rem = rem[p];
                best_point = p;
            }
        if (best_point == 0) return -1;
        for (int j : blocks_through[best_point])
            if (!assigned[j]) return j;
        return -1;
    }

    bool dfs(bool root) {
        std::vector<int> trail;
        if (!propagate(trail)) {
            undo(trail, 0);
            return false;
        }
        int j = pick_block();
        if (j < 0) {  // everything assigned and all point sums closed
            found = true;
            return true;
        }
        for (long long mag = 1; mag <= bound; ++mag)
            for (int sign = 0; sign < (root ? 1 : 2); ++sign) {
                long long val = sign == 0 ? mag : -mag;
                size_t mark = trail.size();
                if (assign(j, val, trail)) {
                    if (dfs(false)) return true;
                }
                undo(trail, mark);
            }
        undo(trail, 0);
        return false;
    }
};

}  // namespace

std::optional<FlowCertificate> min_flow_search(const SteinerTripleSystem& sts, long long max_value) {
    if (max_value < 2) return std::nullopt;
    for (long long bound = 1; bound + 1 <= max_value; ++bound) {
        FlowSearch search(sts, bound);
        // Negating a flow is a flow; the first branched entry is pinned
        // positive and certificates are normalized that way.
        if (search.dfs(true)) {
            FlowCheck check = is_flow(sts, search.v, "search");
            if (!check.ok) throw std::logic_error("search produced a non-flow: " + check.error);
            return check.cert;
        }
    }
    return std::nullopt;
}

}  // namespace stsflow
