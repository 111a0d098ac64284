#include "stsflow/sts.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace stsflow {

bool admissible_order(int n) {
    int r = n % 6;
    return n > 0 && (r == 1 || r == 3);
}

namespace {

Triple sorted_triple(int a, int b, int c) {
    Triple t{a, b, c};
    std::sort(t.begin(), t.end());
    return t;
}

int pair_index(int n, int p, int q) {
    // p < q, both 1-based
    return (p - 1) * n - (p * (p + 1)) / 2 + (q - 1);
}

}  // namespace

ValidationReport validate_sts(int n, const std::vector<Triple>& triples, SteinerTripleSystem* out) {
    ValidationReport rep;
    rep.expected_blocks = admissible_order(n) ? n * (n - 1) / 6 : -1;
    rep.actual_blocks = static_cast<int>(triples.size());

    if (!admissible_order(n)) {
        rep.message = "order " + std::to_string(n) + " is not 1 or 3 mod 6";
        return rep;
    }

    std::vector<Triple> sorted;
    sorted.reserve(triples.size());
    for (const Triple& t : triples) {
        Triple s = sorted_triple(t[0], t[1], t[2]);
        if (s[0] < 1 || s[2] > n) {
            rep.message = "point label out of range 1.." + std::to_string(n);
            return rep;
        }
        if (s[0] == s[1] || s[1] == s[2]) {
            rep.message = "degenerate triple with a repeated point";
            return rep;
        }
        sorted.push_back(s);
    }
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1] &&
            (rep.duplicate_triples.empty() || rep.duplicate_triples.back() != sorted[i]))
            rep.duplicate_triples.push_back(sorted[i]);

    std::vector<int> cover(static_cast<size_t>(n) * (n - 1) / 2, 0);
    for (const Triple& t : sorted) {
        ++cover[pair_index(n, t[0], t[1])];
        ++cover[pair_index(n, t[0], t[2])];
        ++cover[pair_index(n, t[1], t[2])];
    }
    for (int p = 1; p <= n; ++p)
        for (int q = p + 1; q <= n; ++q) {
            int c = cover[pair_index(n, p, q)];
            if (c != 1) rep.bad_pairs.push_back({p, q, c});
        }

    if (!rep.bad_pairs.empty()) {
        const auto& d = rep.bad_pairs.front();
        rep.message = "pair {" + std::to_string(d.p) + "," + std::to_string(d.q) + "} covered " +
                      std::to_string(d.times) + " times";
        return rep;
    }
    if (!rep.duplicate_triples.empty()) {
        rep.message = "duplicate triple present";
        return rep;
    }
    if (rep.actual_blocks != rep.expected_blocks) {
        rep.message = "block count " + std::to_string(rep.actual_blocks) + " != " +
                      std::to_string(rep.expected_blocks);
        return rep;
    }

    rep.ok = true;
    if (out) {
        out->n = n;
        out->blocks = std::move(sorted);
    }
    return rep;
}

SteinerTripleSystem make_sts(int n, std::vector<Triple> triples) {
    SteinerTripleSystem sts;
    ValidationReport rep = validate_sts(n, triples, &sts);
    if (!rep.ok) throw std::invalid_argument("invalid Steiner triple system: " + rep.message);
    return sts;
}

SteinerTripleSystem bose(int m) {
    if (m < 3 || m % 2 == 0) throw std::invalid_argument("bose requires odd m >= 3");
    // Points (x, i) with x in Z_m, i in {0,1,2}, labeled x + 1 + i*m.
    auto label = [m](int x, int i) { return x + 1 + i * m; };
    int half = (m + 1) / 2;  // inverse of 2 mod m
    std::vector<Triple> blocks;
    for (int x = 0; x < m; ++x) blocks.push_back(sorted_triple(label(x, 0), label(x, 1), label(x, 2)));
    for (int i = 0; i < 3; ++i)
        for (int x = 0; x < m; ++x)
            for (int y = x + 1; y < m; ++y) {
                int z = static_cast<int>((static_cast<long long>(x + y) * half) % m);
                blocks.push_back(sorted_triple(label(x, i), label(y, i), label(z, (i + 1) % 3)));
            }
    return make_sts(3 * m, std::move(blocks));
}

SteinerTripleSystem hamming_sts(int r) {
    if (r < 3) throw std::invalid_argument("hamming_sts requires r >= 3");
    int n = (1 << r) - 1;
    std::vector<Triple> blocks;
    for (int a = 1; a <= n; ++a)
        for (int b = a + 1; b <= n; ++b) {
            int c = a ^ b;
            if (c > b) blocks.push_back(Triple{a, b, c});
        }
    return make_sts(n, std::move(blocks));
}

std::array<Triple, 4> doubled_quadruple(const Triple& t, int tau_bit, int n) {
    int i = t[0], j = t[1], k = t[2];
    auto bar = [n](int p) { return p + n; };
    if (tau_bit == 0) {
        // even number of barred points
        return {sorted_triple(i, j, k), sorted_triple(i, bar(j), bar(k)),
                sorted_triple(bar(i), j, bar(k)), sorted_triple(bar(i), bar(j), k)};
    }
    // odd number of barred points
    return {sorted_triple(bar(i), j, k), sorted_triple(bar(i), bar(j), bar(k)),
            sorted_triple(i, j, bar(k)), sorted_triple(i, bar(j), k)};
}

SteinerTripleSystem assmuss_mattson(const SteinerTripleSystem& base, const TauAssignment& tau) {
    if (tau.tau.size() != base.blocks.size())
        throw std::invalid_argument("tau domain does not match the block set of the base system");
    int n = base.n;
    std::vector<Triple> blocks;
    blocks.reserve(4 * base.blocks.size() + n);
    for (size_t b = 0; b < base.blocks.size(); ++b) {
        auto quad = doubled_quadruple(base.blocks[b], tau.tau[b] ? 1 : 0, n);
        blocks.insert(blocks.end(), quad.begin(), quad.end());
    }
    for (int i = 1; i <= n; ++i) blocks.push_back(sorted_triple(i, i + n, 2 * n + 1));
    return make_sts(2 * n + 1, std::move(blocks));
}

namespace {

// Exact-cover state for the resolution search: assemble parallel classes one
// at a time, each class built by always covering the lowest uncovered point.
struct ResolutionSearch {
    const SteinerTripleSystem& sts;
    std::vector<std::vector<int>> blocks_through;  // point -> block indices
    std::vector<char> block_used;
    std::vector<char> point_covered;  // within the class under construction
    std::vector<int> current_class;
    std::vector<std::vector<int>> classes;
    bool done = false;

    explicit ResolutionSearch(const SteinerTripleSystem& s) : sts(s) {
        blocks_through.assign(s.n + 1, {});
        for (int b = 0; b < s.block_count(); ++b)
            for (int p : s.blocks[b]) blocks_through[p].push_back(b);
        block_used.assign(s.block_count(), 0);
        point_covered.assign(s.n + 1, 0);
    }

    bool all_blocks_used() const {
        return static_cast<int>(classes.size()) * (sts.n / 3) == sts.block_count();
    }

    void extend_class() {
        if (done) return;
        int p = 0;
        for (int q = 1; q <= sts.n; ++q)
            if (!point_covered[q]) {
                p = q;
                break;
            }
        if (p == 0) {  // class complete
            classes.push_back(current_class);
            std::vector<int> saved = std::move(current_class);
            current_class.clear();
            search();
            if (done) return;
            classes.pop_back();
            current_class = std::move(saved);
            std::fill(point_covered.begin(), point_covered.end(), 0);
            for (int b : current_class)
                for (int q : sts.blocks[b]) point_covered[q] = 1;
            return;
        }
        for (int b : blocks_through[p]) {
            if (block_used[b]) continue;
            const Triple& t = sts.blocks[b];
            if (point_covered[t[0]] || point_covered[t[1]] || point_covered[t[2]]) continue;
            block_used[b] = 1;
            for (int q : t) point_covered[q] = 1;
            current_class.push_back(b);
            extend_class();
            if (done) return;
            current_class.pop_back();
            for (int q : t) point_covered[q] = 0;
            block_used[b] = 0;
        }
    }

    void search() {
        if (all_blocks_used()) {
            done = true;
            return;
        }
        // Each class is grown by always covering the lowest uncovered point,
        // which canonicalizes the search order.
        std::fill(point_covered.begin(), point_covered.end(), 0);
        extend_class();
    }
};

}  // namespace

std::optional<Resolution> find_resolution(const SteinerTripleSystem& sts) {
    if (sts.n % 6 != 3) return std::nullopt;  // parallel classes need 3 | n
    ResolutionSearch s(sts);
    s.search();
    if (!s.done) return std::nullopt;
    Resolution r;
    r.classes = std::move(s.classes);
    return r;
}

int binary_rank(const SteinerTripleSystem& sts) {
    int words = (sts.n + 63) / 64;
    std::vector<std::vector<uint64_t>> rows;
    rows.reserve(sts.blocks.size());
    for (const Triple& t : sts.blocks) {
        std::vector<uint64_t> row(words, 0);
        for (int p : t) row[(p - 1) / 64] |= uint64_t(1) << ((p - 1) % 64);
        rows.push_back(std::move(row));
    }
    int rank = 0;
    for (int col = 0; col < sts.n && rank < static_cast<int>(rows.size()); ++col) {
        int w = col / 64, bit = col % 64;
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if ((rows[r][w] >> bit) & 1) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r)
            if (r != rank && ((rows[r][w] >> bit) & 1))
                for (int x = 0; x < words; ++x) rows[r][x] ^= rows[rank][x];
        ++rank;
    }
    return rank;
}

namespace {

// third[p][q] = the point completing {p,q} to a block
std::vector<std::vector<int>> third_point_table(const SteinerTripleSystem& sts) {
    std::vector<std::vector<int>> third(sts.n + 1, std::vector<int>(sts.n + 1, 0));
    for (const Triple& t : sts.blocks) {
        third[t[0]][t[1]] = third[t[1]][t[0]] = t[2];
        third[t[0]][t[2]] = third[t[2]][t[0]] = t[1];
        third[t[1]][t[2]] = third[t[2]][t[1]] = t[0];
    }
    return third;
}

std::vector<int> closure(const std::vector<std::vector<int>>& third, std::vector<int> pts, int limit) {
    std::vector<char> in(third.size(), 0);
    for (int p : pts) in[p] = 1;
    for (size_t i = 0; i < pts.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            int r = third[pts[i]][pts[j]];
            if (!in[r]) {
                in[r] = 1;
                pts.push_back(r);
                if (static_cast<int>(pts.size()) > limit) return pts;  // caller prunes
            }
        }
    }
    std::sort(pts.begin(), pts.end());
    return pts;
}

}  // namespace

std::vector<std::vector<int>> find_subsystems(const SteinerTripleSystem& sts, int m) {
    if (m >= sts.n) throw std::invalid_argument("subsystem order must be smaller than n");
    auto third = third_point_table(sts);
    std::set<std::vector<int>> visited;
    std::set<std::vector<int>> found;

    // Closed sets of size <= m form a small lattice at these orders; walk it.
    std::vector<std::vector<int>> stack;
    for (int p = 1; p <= sts.n; ++p) stack.push_back({p});
    while (!stack.empty()) {
        std::vector<int> cur = std::move(stack.back());
        stack.pop_back();
        if (visited.count(cur)) continue;
        visited.insert(cur);
        if (static_cast<int>(cur.size()) == m) {
            found.insert(cur);
            continue;
        }
        std::vector<char> in(sts.n + 1, 0);
        for (int p : cur) in[p] = 1;
        for (int p = 1; p <= sts.n; ++p) {
            if (in[p]) continue;
            std::vector<int> ext = cur;
            ext.push_back(p);
            ext = closure(third, std::move(ext), m);
            if (static_cast<int>(ext.size()) <= m && !visited.count(ext)) stack.push_back(std::move(ext));
        }
    }
    return {found.begin(), found.end()};
}

std::vector<int> point_pencil(const SteinerTripleSystem& sts, int p) {
    if (p < 1 || p > sts.n) throw std::invalid_argument("point out of range");
    std::vector<int> out;
    for (int b = 0; b < sts.block_count(); ++b) {
        const Triple& t = sts.blocks[b];
        if (t[0] == p || t[1] == p || t[2] == p) out.push_back(b);
    }
    return out;
}

SteinerTripleSystem read_sts_stream(std::istream& in, const std::string& name) {
    std::string line;
    int n = -1, b = -1;
    std::vector<Triple> triples;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (n < 0) {
            if (!(ls >> n >> b)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) {
                    n = -1;
                    continue;
                }
                throw std::runtime_error(name + ": malformed header, expected 'n b'");
            }
            if (n <= 0 || b < 0) throw std::runtime_error(name + ": malformed header values");
            continue;
        }
        int x, y, z;
        if (!(ls >> x >> y >> z)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw std::runtime_error(name + ": malformed triple line: " + line);
        }
        int extra;
        if (ls >> extra) throw std::runtime_error(name + ": more than three labels on a line");
        if (x < 1 || y < 1 || z < 1 || x > n || y > n || z > n)
            throw std::runtime_error(name + ": triple out of range");
        triples.push_back(Triple{x, y, z});
    }
    if (n < 0) throw std::runtime_error(name + ": missing header");
    if (static_cast<int>(triples.size()) != b)
        throw std::runtime_error(name + ": header announces " + std::to_string(b) + " blocks but " +
                                 std::to_string(triples.size()) + " are present");
    SteinerTripleSystem sts;
    ValidationReport rep = validate_sts(n, triples, &sts);
    if (!rep.ok) throw std::runtime_error(name + ": validation failed: " + rep.message);
    return sts;
}

SteinerTripleSystem read_sts(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_sts_stream(in, path);
}

void write_sts_stream(const SteinerTripleSystem& sts, std::ostream& out) {
    out << sts.n << " " << sts.block_count() << "\n";
    for (const Triple& t : sts.blocks) out << t[0] << " " << t[1] << " " << t[2] << "\n";
}

void write_sts(const SteinerTripleSystem& sts, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_sts_stream(sts, out);
}

long long count_quadrilaterals(const SteinerTripleSystem& sts) {
    long long count = 0;
    int b = sts.block_count();
    // Two blocks sharing exactly one point start a quadrilateral; the other
    // two blocks are then determined by the third-point map.
    auto third = third_point_table(sts);
    std::map<Triple, int> index;
    for (int i = 0; i < b; ++i) index[sts.blocks[i]] = i;
    for (int i = 0; i < b; ++i)
        for (int j = i + 1; j < b; ++j) {
            const Triple &s = sts.blocks[i], &t = sts.blocks[j];
            std::vector<int> common;
            for (int p : s)
                for (int q : t)
                    if (p == q) common.push_back(p);
            if (common.size() != 1) continue;
            int a = common[0];
            std::array<int, 2> su{}, tu{};
            int si = 0, ti = 0;
            for (int p : s)
                if (p != a) su[si++] = p;
            for (int q : t)
                if (q != a) tu[ti++] = q;
            // Pairings of the leftover points; each consistent pairing closes
            // the configuration with two more blocks through a common apex.
            for (int swap = 0; swap < 2; ++swap) {
                int b1 = su[0], c1 = su[1];
                int d1 = tu[swap], e1 = tu[1 - swap];
                int f1 = third[b1][d1];
                if (f1 == 0 || f1 == a) continue;
                if (third[c1][e1] == f1) ++count;
            }
        }
    // Each quadrilateral has 4 blocks; ordered pairs of blocks sharing one
    // point within it: every pair of its blocks meets in one point (6 pairs),
    // and each pair sees the configuration once per consistent pairing.
    return count / 6;
}

std::optional<SteinerTripleSystem> switch_first_quadrilateral(const SteinerTripleSystem& sts) {
    auto third = third_point_table(sts);
    int b = sts.block_count();
    for (int i = 0; i < b; ++i)
        for (int j = i + 1; j < b; ++j) {
            const Triple &s = sts.blocks[i], &t = sts.blocks[j];
            std::vector<int> common;
            for (int p : s)
                for (int q : t)
                    if (p == q) common.push_back(p);
            if (common.size() != 1) continue;
            int a = common[0];
            std::array<int, 2> su{}, tu{};
            int si = 0, ti = 0;
            for (int p : s)
                if (p != a) su[si++] = p;
            for (int q : t)
                if (q != a) tu[ti++] = q;
            for (int swap = 0; swap < 2; ++swap) {
                int b1 = su[0], c1 = su[1];
                int d1 = tu[swap], e1 = tu[1 - swap];
                int f1 = third[b1][d1];
                if (f1 == 0 || f1 == a || third[c1][e1] != f1) continue;
                // {a,b,c},{a,d,e},{f,b,d},{f,c,e} -> {f,b,c},{f,d,e},{a,b,d},{a,c,e}
                std::vector<Triple> blocks = sts.blocks;
                auto drop = [&blocks](const Triple& x) {
                    blocks.erase(std::find(blocks.begin(), blocks.end(), x));
                };
                drop(sorted_triple(a, b1, c1));
                drop(sorted_triple(a, d1, e1));
                drop(sorted_triple(f1, b1, d1));
                drop(sorted_triple(f1, c1, e1));
                blocks.push_back(sorted_triple(f1, b1, c1));
                blocks.push_back(sorted_triple(f1, d1, e1));
                blocks.push_back(sorted_triple(a, b1, d1));
                blocks.push_back(sorted_triple(a, c1, e1));
                return make_sts(sts.n, std::move(blocks));
            }
        }
    return std::nullopt;
}

TauAssignment tau_constant(const SteinerTripleSystem& sts, int bit) {
    TauAssignment t;
    t.tau.assign(sts.blocks.size(), static_cast<uint8_t>(bit ? 1 : 0));
    return t;
}

TauAssignment tau_seeded(const SteinerTripleSystem& sts, uint64_t seed) {
    std::mt19937_64 rng(seed);
    TauAssignment t;
    t.tau.resize(sts.blocks.size());
    for (auto& bit : t.tau) bit = static_cast<uint8_t>(rng() & 1);
    return t;
}

}  // namespace stsflow
