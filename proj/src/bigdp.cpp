#include "cantrees/bigdp.hpp"

#include "cantrees/width.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace cantrees {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

void check_args(int t, std::int64_t n, std::int64_t cap, const char* op) {
    if (t < 2) throw domain_error(std::string(op) + ": arity must be at least 2");
    if (n < 0) throw domain_error(std::string(op) + ": negative size");
    if (n > cap)
        throw domain_error(std::string(op) + ": size exceeds resource cap " +
                           std::to_string(cap) + " (raise the cap to override)");
}

// Forward expansion table over states (v, j): v internal vertices total,
// j internal vertices on the deepest level.  A level of j internal
// vertices fits below a level of jp internal vertices exactly when
// j <= jp*t, so with suffix sums S[v][a] = sum_{jp >= a} A[v][jp] each
// cell is one lookup: A[v][j] = S[v-j][ceil(j/t)].
struct Forward {
    std::vector<std::vector<mpz_class>> S;  // S[v][a], a in [1, v+1]
    std::vector<mpz_class> last;            // A[n][j]
};

Forward build_forward(int t, std::int64_t n) {
    Forward f;
    f.S.resize(static_cast<std::size_t>(n + 1));
    std::vector<mpz_class> row;
    for (std::int64_t v = 1; v <= n; ++v) {
        row.assign(static_cast<std::size_t>(v + 1), mpz_class(0));
        if (v == 1) row[1] = 1;
        for (std::int64_t j = 1; j < v; ++j) {
            std::int64_t src = v - j, a = ceil_div(j, t);
            if (a <= src) row[j] = f.S[src][a];
        }
        f.S[v].assign(static_cast<std::size_t>(v + 2), mpz_class(0));
        for (std::int64_t j = v; j >= 1; --j)
            f.S[v][j] = f.S[v][j + 1] + row[j];
        if (v == n) f.last = std::move(row);
    }
    return f;
}

constexpr int kMaxDeg = 4;
using SumVec = std::vector<mpz_class>;

std::int64_t binom(int k, int i) {
    static const std::int64_t table[kMaxDeg + 1][kMaxDeg + 1] = {
        {1, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {1, 2, 1, 0, 0},
        {1, 3, 3, 1, 0}, {1, 4, 6, 4, 1}};
    return table[k][i];
}

// out[k] += sum over sources of (x + delta)^k given s[i] = sum of x^i
void add_shifted(SumVec& out, const SumVec& s, std::int64_t delta, int deg) {
    std::int64_t dp[kMaxDeg + 1];
    dp[0] = 1;
    for (int i = 1; i <= deg; ++i) dp[i] = dp[i - 1] * delta;
    for (int k = 0; k <= deg; ++k)
        for (int i = 0; i <= k; ++i)
            if (dp[k - i] != 0) out[k] += binom(k, i) * dp[k - i] * s[i];
}

// Power sums sum_trees stat^k for a statistic that equals base_val on the
// one-internal-vertex tree and grows by delta(V, j) on each transition
// into state (V, j).  Height: base 1, delta 1.  Total path length: base
// t*n, delta t*(n - V + j); summing t*(n - size before each step) over
// the expansion steps telescopes the depth-weighted vertex sum, so no
// layer index is needed.  That rewrite is exact only for walks ending at
// size n, and only those are harvested.
SumVec sums_uniform_delta(
    int t, std::int64_t n, int deg, std::int64_t base_val,
    const std::function<std::int64_t(std::int64_t, std::int64_t)>& delta) {
    std::vector<std::vector<SumVec>> suf(static_cast<std::size_t>(n + 1));
    SumVec zero(static_cast<std::size_t>(deg + 1), mpz_class(0));
    std::vector<SumVec> row;
    for (std::int64_t v = 1; v <= n; ++v) {
        row.assign(static_cast<std::size_t>(v + 1), zero);
        if (v == 1) {
            mpz_class bp = 1;
            for (int k = 0; k <= deg; ++k) {
                row[1][k] = bp;
                bp *= base_val;
            }
        }
        for (std::int64_t j = 1; j < v; ++j) {
            std::int64_t src = v - j, a = ceil_div(j, t);
            if (a <= src) add_shifted(row[j], suf[src][a], delta(v, j), deg);
        }
        suf[v].assign(static_cast<std::size_t>(v + 2), zero);
        for (std::int64_t j = v; j >= 1; --j)
            for (int k = 0; k <= deg; ++k)
                suf[v][j][k] = suf[v][j + 1][k] + row[j][k];
    }
    return suf[n][1];
}

// Distinct leaf depths: the tracked value counts finalized leaf levels
// plus one for the still-open deepest level.  Appending j internal
// vertices below a level of jp internal vertices leaves a leaf behind
// (one more finalized level) unless j = jp*t exactly.
SumVec sums_distinct_depths(int t, std::int64_t n, int deg) {
    std::vector<std::vector<SumVec>> suf(static_cast<std::size_t>(n + 1));
    SumVec zero(static_cast<std::size_t>(deg + 1), mpz_class(0));
    std::vector<SumVec> row;
    for (std::int64_t v = 1; v <= n; ++v) {
        row.assign(static_cast<std::size_t>(v + 1), zero);
        if (v == 1)
            for (int k = 0; k <= deg; ++k) row[1][k] = 1;
        for (std::int64_t j = 1; j < v; ++j) {
            std::int64_t src = v - j;
            std::int64_t a1 = j / t + 1;
            if (a1 <= src) add_shifted(row[j], suf[src][a1], 1, deg);
            if (j % t == 0 && j / t <= src) {
                std::int64_t jp = j / t;
                for (int k = 0; k <= deg; ++k)
                    row[j][k] += suf[src][jp][k] - suf[src][jp + 1][k];
            }
        }
        suf[v].assign(static_cast<std::size_t>(v + 2), zero);
        for (std::int64_t j = v; j >= 1; --j)
            for (int k = 0; k <= deg; ++k)
                suf[v][j][k] = suf[v][j + 1][k] + row[j][k];
    }
    return suf[n][1];
}

DistTable dist_height(int t, std::int64_t n) {
    DistTable table;
    table.stat_name = stat_to_string(Stat::height);
    if (n == 0) {
        table.entries[0] = 1;
        table.total = 1;
        return table;
    }
    // layered: after h expansion steps every live state is a tree of
    // height exactly h
    std::vector<std::vector<mpz_class>> cur(static_cast<std::size_t>(n + 1));
    std::vector<std::vector<mpz_class>> sufrow(static_cast<std::size_t>(n + 1));
    for (std::int64_t v = 0; v <= n; ++v)
        cur[v].assign(static_cast<std::size_t>(v + 1), mpz_class(0));
    cur[1][1] = 1;
    for (std::int64_t h = 1; h <= n; ++h) {
        mpz_class at_n = 0;
        for (std::int64_t j = 1; j <= n; ++j) at_n += cur[n][j];
        if (at_n > 0) table.entries[h] = at_n;

        bool any = false;
        for (std::int64_t v = 0; v <= n; ++v) {
            sufrow[v].assign(static_cast<std::size_t>(v + 2), mpz_class(0));
            for (std::int64_t j = v; j >= 1; --j) {
                sufrow[v][j] = sufrow[v][j + 1] + cur[v][j];
                if (v < n && cur[v][j] > 0) any = true;
            }
        }
        if (!any) break;
        for (std::int64_t v = 0; v <= n; ++v)
            std::fill(cur[v].begin(), cur[v].end(), mpz_class(0));
        for (std::int64_t v = 2; v <= n; ++v)
            for (std::int64_t j = 1; j <= v - 1; ++j) {
                std::int64_t a = ceil_div(j, t);
                if (a <= v - j) cur[v][j] = sufrow[v - j][a];
            }
    }
    for (const auto& [k, c] : table.entries) table.total += c;
    return table;
}

DistTable dist_distinct_depths(int t, std::int64_t n) {
    DistTable table;
    table.stat_name = stat_to_string(Stat::distinct_depths);
    if (n == 0) {
        table.entries[1] = 1;
        table.total = 1;
        return table;
    }
    // SS[v][a][d]: suffix over jp >= a of the count at state (v, jp) with
    // tracked depth value d (same convention as sums_distinct_depths)
    std::vector<std::vector<std::vector<mpz_class>>> SS(
        static_cast<std::size_t>(n + 1));
    std::vector<std::vector<mpz_class>> row;
    for (std::int64_t v = 1; v <= n; ++v) {
        row.assign(static_cast<std::size_t>(v + 1),
                   std::vector<mpz_class>(static_cast<std::size_t>(v + 1),
                                          mpz_class(0)));
        for (std::int64_t j = 1; j <= v; ++j) {
            std::int64_t src = v - j;
            if (src == 0) {
                if (j == 1) row[1][1] += 1;
                continue;
            }
            std::int64_t a1 = j / t + 1;
            if (a1 <= src) {
                std::int64_t dmax = std::min(v, src + 1);
                for (std::int64_t d = 1; d <= dmax; ++d)
                    row[j][d] += SS[src][a1][d - 1];
            }
            if (j % t == 0 && j / t <= src) {
                std::int64_t jp = j / t;
                for (std::int64_t d = 1; d <= src; ++d)
                    row[j][d] += SS[src][jp][d] - SS[src][jp + 1][d];
            }
        }
        if (v == n) {
            for (std::int64_t j = 1; j <= n; ++j)
                for (std::int64_t d = 1; d <= n; ++d)
                    if (row[j][d] > 0) table.entries[d] += row[j][d];
            break;
        }
        SS[v].assign(static_cast<std::size_t>(v + 2),
                     std::vector<mpz_class>(static_cast<std::size_t>(v + 1),
                                            mpz_class(0)));
        for (std::int64_t a = v; a >= 1; --a)
            for (std::int64_t d = 0; d <= v; ++d)
                SS[v][a][d] = SS[v][a + 1][d] + row[a][d];
    }
    for (const auto& [k, c] : table.entries) table.total += c;
    return table;
}

DistTable dist_last_level(int t, std::int64_t n) {
    DistTable table;
    table.stat_name = stat_to_string(Stat::last_level_leaves);
    if (n == 0) {
        table.entries[1] = 1;
        table.total = 1;
        return table;
    }
    Forward f = build_forward(t, n);
    for (std::int64_t j = 1; j <= n; ++j)
        if (f.last[j] > 0) table.entries[j * t] = f.last[j];
    for (const auto& [k, c] : table.entries) table.total += c;
    return table;
}

DistTable dist_width(int t, std::int64_t n) {
    DistTable table;
    table.stat_name = stat_to_string(Stat::width);
    if (n == 0) {
        table.entries[1] = 1;
        table.total = 1;
        return table;
    }
    // widths never exceed the leaf count 1 + n(t-1); difference the
    // capped counts over the cap
    std::int64_t wmax = 1 + n * (t - 1);
    mpz_class prev = 0;
    for (std::int64_t K = 1; K <= wmax; ++K) {
        mpz_class cur =
            width_capped_counts(t, K, n)[static_cast<std::size_t>(n)];
        if (cur > prev) table.entries[K] = cur - prev;
        prev = cur;
    }
    table.total = prev;
    return table;
}

// contiguous value window of path-length counts
struct Window {
    std::int64_t off = 0;
    std::vector<mpz_class> v;
    bool empty() const { return v.empty(); }
};

void window_add(Window& dst, const Window& src, std::int64_t shift) {
    if (src.empty()) return;
    std::int64_t lo = src.off + shift;
    std::int64_t hi = lo + static_cast<std::int64_t>(src.v.size()) - 1;
    if (dst.empty()) {
        dst.off = lo;
        dst.v = src.v;
        return;
    }
    std::int64_t dhi = dst.off + static_cast<std::int64_t>(dst.v.size()) - 1;
    std::int64_t nlo = std::min(dst.off, lo), nhi = std::max(dhi, hi);
    if (nlo != dst.off || nhi != dhi) {
        std::vector<mpz_class> grown(static_cast<std::size_t>(nhi - nlo + 1));
        for (std::size_t i = 0; i < dst.v.size(); ++i)
            grown[static_cast<std::size_t>(dst.off - nlo) + i] =
                std::move(dst.v[i]);
        dst.v = std::move(grown);
        dst.off = nlo;
    }
    for (std::size_t i = 0; i < src.v.size(); ++i)
        dst.v[static_cast<std::size_t>(lo - dst.off) + i] += src.v[i];
}

DistTable dist_path_length(int t, std::int64_t n) {
    DistTable table;
    table.stat_name = stat_to_string(Stat::total_path_length);
    if (n == 0) {
        table.entries[0] = 1;
        table.total = 1;
        return table;
    }
    // value windows over the telescoped path length (see
    // sums_uniform_delta); SW[v][a] aggregates the window at (v, jp) over
    // jp >= a
    std::vector<std::vector<Window>> SW(static_cast<std::size_t>(n + 1));
    std::vector<Window> row;
    for (std::int64_t v = 1; v <= n; ++v) {
        row.assign(static_cast<std::size_t>(v + 1), Window{});
        if (v == 1) {
            row[1].off = t * n;
            row[1].v = {mpz_class(1)};
        }
        for (std::int64_t j = 1; j < v; ++j) {
            std::int64_t src = v - j, a = ceil_div(j, t);
            if (a <= src) window_add(row[j], SW[src][a], t * (n - src));
        }
        SW[v].assign(static_cast<std::size_t>(v + 2), Window{});
        for (std::int64_t j = v; j >= 1; --j) {
            SW[v][j] = SW[v][j + 1];
            window_add(SW[v][j], row[j], 0);
        }
    }
    const Window& final_w = SW[n][1];
    for (std::size_t i = 0; i < final_w.v.size(); ++i)
        if (final_w.v[i] > 0)
            table.entries[final_w.off + static_cast<std::int64_t>(i)] =
                final_w.v[i];
    for (const auto& [k, c] : table.entries) table.total += c;
    return table;
}

mpz_class pow_i64(std::int64_t base, int e) {
    mpz_class r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

std::vector<mpz_class> sums_from_dist(const DistTable& table, int deg) {
    std::vector<mpz_class> out(static_cast<std::size_t>(deg + 1), mpz_class(0));
    for (const auto& [value, cnt] : table.entries)
        for (int k = 0; k <= deg; ++k) out[k] += pow_i64(value, k) * cnt;
    return out;
}

}  // namespace

Stat stat_from_string(const std::string& s) {
    if (s == "height") return Stat::height;
    if (s == "distinct_depths") return Stat::distinct_depths;
    if (s == "last_level_leaves") return Stat::last_level_leaves;
    if (s == "width") return Stat::width;
    if (s == "total_path_length") return Stat::total_path_length;
    throw domain_error("unknown statistic: " + s);
}

const char* stat_to_string(Stat s) {
    switch (s) {
        case Stat::height: return "height";
        case Stat::distinct_depths: return "distinct_depths";
        case Stat::last_level_leaves: return "last_level_leaves";
        case Stat::width: return "width";
        case Stat::total_path_length: return "total_path_length";
    }
    throw domain_error("unknown statistic enum value");
}

mpz_class count(int t, std::int64_t n, std::int64_t cap) {
    check_args(t, n, cap, "count");
    if (n == 0) return 1;
    return build_forward(t, n).S[n][1];
}

std::map<std::int64_t, mpz_class> count_by_m(int t, std::int64_t n,
                                             std::int64_t cap) {
    check_args(t, n, cap, "count_by_m");
    std::map<std::int64_t, mpz_class> out;
    if (n == 0) {
        out[1] = 1;
        return out;
    }
    Forward f = build_forward(t, n);
    for (std::int64_t j = 1; j <= n; ++j)
        if (f.last[j] > 0) out[j * t] = f.last[j];
    return out;
}

std::int64_t dist_default_cap(Stat stat) {
    switch (stat) {
        case Stat::height: return 400;
        case Stat::distinct_depths: return 200;
        case Stat::last_level_leaves: return 1000;
        case Stat::width: return 100;
        case Stat::total_path_length: return 60;
    }
    throw domain_error("unknown statistic enum value");
}

DistTable dist(int t, std::int64_t n, Stat stat, std::int64_t cap) {
    if (cap < 0) cap = dist_default_cap(stat);
    check_args(t, n, cap, "dist");
    switch (stat) {
        case Stat::height: return dist_height(t, n);
        case Stat::distinct_depths: return dist_distinct_depths(t, n);
        case Stat::last_level_leaves: return dist_last_level(t, n);
        case Stat::width: return dist_width(t, n);
        case Stat::total_path_length: return dist_path_length(t, n);
    }
    throw domain_error("unknown statistic enum value");
}

std::vector<mpz_class> power_sums(int t, std::int64_t n, Stat stat, int deg,
                                  std::int64_t cap) {
    if (deg < 0 || deg > kMaxDeg)
        throw domain_error("power_sums: degree must be between 0 and " +
                           std::to_string(kMaxDeg));
    if (cap < 0)
        cap = (stat == Stat::width) ? dist_default_cap(Stat::width) : 2000;
    check_args(t, n, cap, "power_sums");
    if (n == 0) {
        // the single-leaf tree: height 0, 1 leaf depth, 1 last-level
        // leaf, width 1, path length 0
        std::int64_t value =
            (stat == Stat::distinct_depths || stat == Stat::last_level_leaves ||
             stat == Stat::width)
                ? 1
                : 0;
        std::vector<mpz_class> out(static_cast<std::size_t>(deg + 1));
        for (int k = 0; k <= deg; ++k) out[k] = pow_i64(value, k);
        return out;
    }
    switch (stat) {
        case Stat::height:
            return sums_uniform_delta(
                t, n, deg, 1, [](std::int64_t, std::int64_t) { return 1; });
        case Stat::distinct_depths: return sums_distinct_depths(t, n, deg);
        case Stat::last_level_leaves:
            return sums_from_dist(dist_last_level(t, n), deg);
        case Stat::width: return sums_from_dist(dist_width(t, n), deg);
        case Stat::total_path_length:
            return sums_uniform_delta(
                t, n, deg, t * n, [t, n](std::int64_t v, std::int64_t j) {
                    return t * (n - v + j);
                });
    }
    throw domain_error("unknown statistic enum value");
}

ExactMoments moments(int t, std::int64_t n, Stat stat, std::int64_t cap) {
    std::vector<mpz_class> s = power_sums(t, n, stat, 2, cap);
    ExactMoments m;
    m.mean = mpq_class(s[1]) / mpq_class(s[0]);
    m.second_moment = mpq_class(s[2]) / mpq_class(s[0]);
    m.variance = m.second_moment - m.mean * m.mean;
    m.mean.canonicalize();
    m.second_moment.canonicalize();
    m.variance.canonicalize();
    return m;
}

namespace {

mpz_class draw_below(const mpz_class& bound, std::mt19937_64& rng) {
    std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
    std::size_t words = (bits + 63) / 64;
    while (true) {
        mpz_class v = 0;
        for (std::size_t i = 0; i < words; ++i) {
            mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), 64);
            v += mpz_class(static_cast<unsigned long>(rng()));
        }
        mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(),
                        static_cast<mp_bitcnt_t>(bits));
        if (v < bound) return v;
    }
}

}  // namespace

Profile sample_uniform(int t, std::int64_t n, std::uint64_t seed) {
    if (t < 2) throw domain_error("sample_uniform: arity must be at least 2");
    if (n < 0) throw domain_error("sample_uniform: negative size");
    if (n > 2000)
        throw domain_error("sample_uniform: size above 2000 not supported");
    if (n == 0) return {};

    // completion counts: C[rem][j] = ways to add rem more internal
    // vertices below a deepest level of j internal vertices.  For
    // j*t >= rem the value no longer depends on j, so each row keeps the
    // distinct prefix plus one saturated entry.
    std::vector<std::vector<mpz_class>> C(static_cast<std::size_t>(n));
    auto cval = [&C](std::int64_t rem, std::int64_t j) -> const mpz_class& {
        const auto& r = C[static_cast<std::size_t>(rem)];
        std::size_t idx = std::min(static_cast<std::size_t>(j), r.size() - 1);
        return r[idx];
    };
    C[0] = {mpz_class(1)};
    std::vector<mpz_class> diag;
    for (std::int64_t rem = 1; rem < n; ++rem) {
        // diag[k] = sum over j' <= k of C[rem - j'][j']
        diag.assign(static_cast<std::size_t>(rem + 1), mpz_class(0));
        for (std::int64_t k = 1; k <= rem; ++k)
            diag[k] = diag[k - 1] + cval(rem - k, k);
        std::int64_t jsat = ceil_div(rem, t);
        C[rem].assign(static_cast<std::size_t>(jsat + 1), mpz_class(0));
        for (std::int64_t j = 1; j <= jsat; ++j)
            C[rem][j] = diag[std::min(j * t, rem)];
    }

    std::mt19937_64 rng(seed);
    mpz_class total = (n == 1) ? mpz_class(1) : cval(n - 1, 1);
    mpz_class x = draw_below(total, rng);

    Profile p = {1};
    std::int64_t rem = n - 1, jcur = 1;
    while (rem > 0) {
        bool stepped = false;
        std::int64_t jmax = std::min(jcur * t, rem);
        for (std::int64_t j = 1; j <= jmax; ++j) {
            const mpz_class& c = cval(rem - j, j);
            if (x < c) {
                p.push_back(j);
                jcur = j;
                rem -= j;
                stepped = true;
                break;
            }
            x -= c;
        }
        if (!stepped) throw domain_error("sample_uniform: internal walk error");
    }
    return p;
}

std::string dist_csv(const DistTable& table, int prob_digits) {
    if (prob_digits < 1 || prob_digits > 60)
        throw domain_error("dist_csv: probability digits out of range");
    std::ostringstream out;
    out << "value,count,probability\n";
    mpz_class scale = pow_i64(10, prob_digits);
    mpz_class denom = 2 * table.total;
    for (const auto& [value, cnt] : table.entries) {
        // round(cnt / total * 10^digits), ties away from zero
        mpz_class num = 2 * cnt * scale + table.total;
        mpz_class r;
        mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), denom.get_mpz_t());
        mpz_class ip = r / scale, fp = r % scale;
        std::string frac = fp.get_str();
        frac.insert(0, static_cast<std::size_t>(prob_digits) - frac.size(), '0');
        out << value << "," << cnt.get_str() << "," << ip.get_str() << "."
            << frac << "\n";
    }
    return out.str();
}

}  // namespace cantrees
