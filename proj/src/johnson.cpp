#include "stsflow/johnson.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace stsflow {

long long gamma_of(long long k) {
    if (k < 1) throw std::invalid_argument("gamma_of requires k >= 1");
    for (long long g = 2;; ++g)
        if (k % g != 0) return g;
}

Rat t_of(long long k) {
    if (k < 2) throw std::invalid_argument("t_of requires k >= 2");
    long long j;
    if (k % 2 == 1) {
        j = 2 * k;
    } else {
        long long g = gamma_of(k);
        j = (g / 2 + 1) * (2 * k + g);
    }
    Rat jj = Rat(j) * Rat(j);
    return jj + 2 * k * j + 3 * k - j - jj / k;
}

bool in_B(long long n, long long k, const ParamTuple& t) {
    if (t.a < 0 || t.b < 1 || t.r < 0 || t.s < 1) throw std::invalid_argument("tuple out of range");
    if (t.r >= t.s) throw std::invalid_argument("tuple needs 0 <= r < s");
    if (gcd_ll(t.r, t.s) != 1) throw std::invalid_argument("tuple needs gcd(r,s) = 1");
    if (gcd_ll(n, k) % t.s != 0) throw std::invalid_argument("tuple needs s | gcd(n,k)");
    long long num = k * (t.b * t.s - t.r);
    long long den = t.s * (t.a + t.b);
    return num % den != 0;
}

namespace {

// max{k(a + r/s), k(b - r/s)}; integral because s | k.
long long tuple_objective(long long k, const ParamTuple& t) {
    long long ks = k / t.s;
    return std::max(ks * (t.a * t.s + t.r), ks * (t.b * t.s - t.r));
}

std::vector<std::pair<long long, long long>> fractional_parts(long long n, long long k) {
    long long g = gcd_ll(n, k);
    std::vector<std::pair<long long, long long>> rs;
    // For k = 3 and odd n the integral route is dominated: a zero-sum
    // integer vector on an odd number of points carries an even entry, which
    // forces a 3-sum of magnitude >= 6, never below the fractional bound.
    bool skip_integral = (k == 3 && n % 2 == 1 && g > 1);
    for (long long s = 1; s <= g; ++s) {
        if (g % s != 0) continue;
        if (s == 1 && skip_integral) continue;
        for (long long r = 0; r < s; ++r)
            if (gcd_ll(r, s) == 1 && (r > 0 || s == 1)) rs.push_back({r, s});
    }
    return rs;
}

}  // namespace

std::pair<long long, std::vector<ParamTuple>> n_of(long long n, long long k) {
    if (n < 2 * k) throw std::invalid_argument("n_of requires n >= 2k");
    auto rs = fractional_parts(n, k);

    auto scan = [&](long long a_cap, long long b_cap, long long best,
                    std::vector<ParamTuple>* witnesses) {
        for (auto [r, s] : rs)
            for (long long a = 0; a <= a_cap; ++a)
                for (long long b = 1; b <= b_cap; ++b) {
                    ParamTuple t{a, b, r, s};
                    if (!in_B(n, k, t)) continue;
                    long long obj = tuple_objective(k, t);
                    if (obj < best) {
                        best = obj;
                        if (witnesses) witnesses->clear();
                    }
                    if (witnesses && obj == best) witnesses->push_back(t);
                }
        return best;
    };

    // Locate any feasible tuple, then rescan completely under the bound it
    // implies: any tuple with objective <= N has a <= N/k and b <= N/k + 1.
    const long long kHuge = 1LL << 60;
    long long best = kHuge;
    for (long long cap = 1; best == kHuge; cap *= 2) {
        best = scan(cap, cap + 1, kHuge, nullptr);
        if (cap > (1LL << 24)) throw std::runtime_error("no feasible tuple found");
    }
    std::vector<ParamTuple> witnesses;
    best = scan(best / k, best / k + 1, best, &witnesses);
    std::sort(witnesses.begin(), witnesses.end());
    witnesses.erase(std::unique(witnesses.begin(), witnesses.end()), witnesses.end());
    return {best, witnesses};
}

KSumScan scan_k_sums(const std::vector<std::pair<Rat, long long>>& multiset, int k) {
    KSumScan result;
    // Depth-first over how many copies of each distinct value the
    // combination takes.
    std::vector<std::pair<Rat, long long>> ms = multiset;
    struct Rec {
        const std::vector<std::pair<Rat, long long>>& ms;
        int k;
        KSumScan& res;
        void go(size_t idx, int left, const Rat& sum) {
            if (left == 0) {
                Rat a = sum < 0 ? Rat(-sum) : sum;
                if (a > res.norm) res.norm = a;
                if (sum == 0) res.nzi = false;
                return;
            }
            if (idx >= ms.size()) return;
            long long take_max = std::min<long long>(ms[idx].second, left);
            for (long long c = take_max; c >= 0; --c) go(idx + 1, left - static_cast<int>(c), sum + ms[idx].first * c);
        }
    } rec{ms, k, result};
    long long total = 0;
    for (auto& [v, c] : ms) total += c;
    if (total < k) throw std::invalid_argument("multiset smaller than k");
    rec.go(0, k, Rat(0));
    return result;
}

KSumScan scan_k_sums(const RatVec& u, int k) { return scan_k_sums(value_multiset(u), k); }

std::vector<std::pair<Rat, long long>> value_multiset(const RatVec& u) {
    std::map<Rat, long long> counts;
    for (const Rat& v : u) ++counts[v];
    std::vector<std::pair<Rat, long long>> ms(counts.begin(), counts.end());
    std::reverse(ms.begin(), ms.end());
    return ms;
}

namespace {

RatVec expand_descending(const std::vector<std::pair<Rat, long long>>& ms) {
    std::vector<std::pair<Rat, long long>> sorted = ms;
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    RatVec u;
    for (auto& [v, c] : sorted)
        for (long long i = 0; i < c; ++i) u.push_back(v);
    return u;
}

UpperConstruction finish(std::vector<std::pair<Rat, long long>> ms, int k, std::string tag) {
    KSumScan scan = scan_k_sums(ms, k);
    if (!scan.nzi) throw std::logic_error("construction '" + tag + "' produced a zero k-sum");
    if (!is_integer(scan.norm)) throw std::logic_error("construction '" + tag + "' has non-integer norm");
    UpperConstruction c;
    c.u = expand_descending(ms);
    c.norm = static_cast<long long>(numerator(scan.norm));
    c.tag = std::move(tag);
    Rat total = 0;
    for (auto& [v, cnt] : ms) total += v * cnt;
    if (total != 0) throw std::logic_error("construction '" + c.tag + "' is not zero-sum");
    return c;
}

}  // namespace

std::optional<UpperConstruction> construct_all_but_one_equal(long long n, long long k) {
    if (n < 2 * k) return std::nullopt;
    long long g = gcd_ll(n, k);
    std::vector<std::pair<Rat, long long>> ms{{make_rat(1, g), n - 1}, {make_rat(-(n - 1), g), 1}};
    return finish(std::move(ms), static_cast<int>(k), "all-but-one-equal");
}

std::optional<UpperConstruction> construct_balanced_signs(long long n, long long k) {
    if (k % 2 == 0 || n % 2 != 0) return std::nullopt;
    std::vector<std::pair<Rat, long long>> ms{{Rat(1), n / 2}, {Rat(-1), n / 2}};
    return finish(std::move(ms), static_cast<int>(k), "balanced-signs");
}

std::optional<UpperConstruction> construct_peak_balanced(long long n, long long k) {
    if (k % 2 == 0 || n % 2 == 0 || n < k + 2) return std::nullopt;
    std::vector<std::pair<Rat, long long>> ms{
        {Rat(k + 1), 1}, {Rat(1), (n - k - 2) / 2}, {Rat(-1), (n + k) / 2}};
    return finish(std::move(ms), static_cast<int>(k), "peak-balanced");
}

std::optional<UpperConstruction> construct_gamma_blocks(long long n, long long k) {
    if (k % 2 != 0) return std::nullopt;
    long long g = gamma_of(k);
    long long l = g / 2;
    std::vector<std::pair<Rat, long long>> ms;
    auto add = [&ms](const Rat& v, long long c) {
        if (c <= 0) return;
        for (auto& [w, cnt] : ms)
            if (w == v) {
                cnt += c;
                return;
            }
        ms.push_back({v, c});
    };
    if (n % g == 0) {
        long long q = n / g;
        if (g % 2 == 1) {  // gamma odd: l copies of l+1, l+1 copies of -l per block
            add(Rat(l + 1), q * l);
            add(Rat(-l), q * (l + 1));
        } else {  // gamma even: l-1 copies of l+1, l+1 copies of -(l-1)
            add(Rat(l + 1), q * (l - 1));
            add(Rat(-(l - 1)), q * (l + 1));
        }
        return finish(std::move(ms), static_cast<int>(k), "gamma-blocks");
    }
    long long beta = (n - (k + 1)) % g;
    long long q = (n - beta - k - 1) / g;
    if (q < 0) return std::nullopt;
    if (g % 2 == 1) {
        add(Rat(l + 1), q * l);
        add(Rat(-l), q * (l + 1));
    } else {
        add(Rat(l + 1), q * (l - 1));
        add(Rat(-(l - 1)), q * (l + 1));
    }
    add(Rat(-(k + beta) * (l + 1)), 1);
    add(Rat(l + 1), k + beta);
    return finish(std::move(ms), static_cast<int>(k), "gamma-blocks-remainder");
}

UpperConstruction upper_vector(long long n, long long k) {
    if (n < 2 * k || k < 2) throw std::invalid_argument("upper_vector requires n >= 2k, k >= 2");
    std::optional<UpperConstruction> best;
    for (auto* ctor : {construct_all_but_one_equal, construct_balanced_signs,
                       construct_peak_balanced, construct_gamma_blocks}) {
        auto c = ctor(n, k);
        if (c && (!best || c->norm < best->norm)) best = std::move(c);
    }
    return *best;  // all-but-one-equal always applies
}

int m1_jn3(long long n) {
    if (n <= 63) throw std::invalid_argument("closed form for m(1,J(n,3)) requires n > 63");
    if (n % 2 == 0) return 4;
    long long m9 = n % 9;
    if (m9 == 0 || m9 == 6) return 6;
    return 7;
}

UpperConstruction jn3_witness(long long n) {
    int target = m1_jn3(n) - 1;  // throws below the threshold
    UpperConstruction c;
    if (n % 2 == 0) {
        c = *construct_balanced_signs(n, 3);
    } else if (n % 9 == 0) {
        std::vector<std::pair<Rat, long long>> ms{{make_rat(5, 3), 4 * n / 9}, {make_rat(-4, 3), 5 * n / 9}};
        c = [&] {
            KSumScan s = scan_k_sums(ms, 3);
            if (!s.nzi) throw std::logic_error("thirds witness has a zero 3-sum");
            UpperConstruction r;
            r.u = expand_descending(ms);
            r.norm = static_cast<long long>(numerator(s.norm));
            r.tag = "thirds-balanced";
            return r;
        }();
    } else if (n % 9 == 6) {
        std::vector<std::pair<Rat, long long>> ms{{make_rat(5, 3), (4 * n - 6) / 9},
                                                  {make_rat(2, 3), 1},
                                                  {make_rat(-4, 3), (5 * n - 3) / 9}};
        KSumScan s = scan_k_sums(ms, 3);
        if (!s.nzi) throw std::logic_error("offset thirds witness has a zero 3-sum");
        c.u = expand_descending(ms);
        c.norm = static_cast<long long>(numerator(s.norm));
        c.tag = "thirds-offset";
    } else {
        c = *construct_peak_balanced(n, 3);
    }
    if (c.norm != target)
        throw std::logic_error("witness norm " + std::to_string(c.norm) + " != expected " +
                               std::to_string(target));
    return c;
}

namespace {

// Branch-and-bound over value multisets for one fractional part and one norm
// target: pick counts for each admissible value in descending value order.
struct MultisetSearch {
    int n, k;
    Rat target;
    std::vector<Rat> values;  // descending
    std::vector<long long> counts;
    std::optional<RatVec> found;

    bool combos_ok(const Rat& bound) {
        // every complete k-combination of the chosen values must be nonzero
        // and within the bound
        struct Rec {
            const std::vector<Rat>& values;
            const std::vector<long long>& counts;
            int k;
            const Rat& bound;
            bool ok = true;
            void go(size_t idx, int left, const Rat& sum) {
                if (!ok) return;
                if (left == 0) {
                    Rat a = sum < 0 ? Rat(-sum) : sum;
                    if (sum == 0 || a > bound) ok = false;
                    return;
                }
                if (idx >= values.size()) return;
                long long m = std::min<long long>(counts[idx], left);
                for (long long c = m; c >= 0 && ok; --c) go(idx + 1, left - static_cast<int>(c), sum + values[idx] * c);
            }
        } rec{values, counts, k, bound};
        rec.go(0, k, Rat(0));
        return rec.ok;
    }

    void dfs(size_t idx, long long slots, Rat sum) {
        if (found) return;
        if (slots == 0) {
            if (sum != 0) return;
            long long chosen = 0;
            for (long long c : counts) chosen += c;
            (void)chosen;
            RatVec u;
            for (size_t i = 0; i < values.size(); ++i)
                for (long long c = 0; c < counts[i]; ++c) u.push_back(values[i]);
            found = std::move(u);
            return;
        }
        if (idx >= values.size()) return;
        // reachability of a zero total with the remaining values
        Rat lo = values.back() * slots;  // most negative completion
        Rat hi = values[idx] * slots;    // most positive completion
        if (sum + lo > 0 || sum + hi < 0) return;
        long long cap = slots;
        for (long long c = cap; c >= 0; --c) {
            counts[idx] = c;
            if (c == 0 || combos_ok(target)) dfs(idx + 1, slots - c, sum + values[idx] * c);
            counts[idx] = 0;
            if (found) return;
        }
    }
};

}  // namespace

std::optional<BruteResult> brute_min(int n, int k, long long cap) {
    if (n < 2 * k) throw std::invalid_argument("brute_min requires n >= 2k");
    if (cap < 1) throw std::invalid_argument("brute_min requires cap >= 1");
    long long g = gcd_ll(n, k);
    std::vector<std::pair<long long, long long>> rs;  // all shared fractional parts r/s
    for (long long s = 1; s <= g; ++s) {
        if (g % s != 0) continue;
        for (long long r = 0; r < s; ++r)
            if (gcd_ll(r, s) == 1 && (r > 0 || s == 1)) rs.push_back({r, s});
    }
    for (long long t = 1; t <= static_cast<long long>(k) * cap; ++t) {
        for (auto [r, s] : rs) {
            MultisetSearch search;
            search.n = n;
            search.k = k;
            search.target = Rat(t);
            // numerators congruent to r mod s with |value| <= cap, descending
            for (long long num = cap * s - ((s - r) % s); num >= -cap * s; num -= s)
                search.values.push_back(Rat(Int(num), Int(s)));
            search.counts.assign(search.values.size(), 0);
            search.dfs(0, n, Rat(0));
            if (search.found) {
                BruteResult res;
                res.value = t + 1;
                res.witness = *search.found;
                std::sort(res.witness.begin(), res.witness.end(), std::greater<Rat>());
                res.cap = cap;
                return res;
            }
        }
    }
    return std::nullopt;
}

std::optional<LowerInfo> lower_bound(long long n, long long k) {
    Rat t = t_of(k);
    if (Rat(n) <= t) return std::nullopt;
    auto [N, witnesses] = n_of(n, k);
    LowerInfo info;
    info.lower = N + 1;
    info.witnesses = witnesses;
    for (const ParamTuple& w : witnesses) {
        long long num = n * (w.b * w.s - w.r);
        long long den = w.s * (w.a + w.b);
        if (num % den == 0) {
            info.exact = N + 1;
            info.exact_via = "witness-divisibility";
            return info;
        }
    }
    long long g = gamma_of(k);
    if (gcd_ll(n, k) == 1 && n % g == 0) {
        long long expect = (g == 2) ? k + 1 : (g / 2 + 1) * k + 1;
        if (expect != N + 1) throw std::logic_error("coprime-gamma case disagrees with N(n,k)");
        info.exact = N + 1;
        info.exact_via = "coprime-gamma";
        return info;
    }
    if (n % 2 == 0 && k % 2 == 1) {
        if (k + 1 != N + 1) throw std::logic_error("even-n-odd-k case disagrees with N(n,k)");
        info.exact = N + 1;
        info.exact_via = "even-n-odd-k";
        return info;
    }
    return info;
}

}  // namespace stsflow
