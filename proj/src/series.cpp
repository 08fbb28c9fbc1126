#include "cantrees/series.hpp"

#include <sstream>

namespace cantrees {

std::int64_t hp(int t, int j) {
    if (t < 2) throw domain_error("hp: arity must be at least 2");
    if (j < 0) throw domain_error("hp: negative level count");
    std::int64_t v = 0, p = 1;
    for (int i = 0; i < j; ++i) {
        if (v > (INT64_MAX - p)) throw domain_error("hp: 64-bit overflow");
        v += p;
        if (i + 1 < j) {
            if (p > INT64_MAX / t) throw domain_error("hp: 64-bit overflow");
            p *= t;
        }
    }
    return v;
}

namespace {

SeriesQ zero_series(std::int64_t N) {
    SeriesQ s;
    s.coeffs.assign(static_cast<std::size_t>(N + 1), mpq_class(0));
    return s;
}

void add_scaled(SeriesQ& acc, const SeriesQ& x, int sign) {
    for (std::size_t i = 0; i < acc.coeffs.size() && i < x.coeffs.size(); ++i) {
        if (sign > 0) acc.coeffs[i] += x.coeffs[i];
        else acc.coeffs[i] -= x.coeffs[i];
    }
}

// x_j / (1 - x_j) with x_j = q^{hp(j)}: shifted geometric series
SeriesQ factor_series(int t, int j, std::int64_t N) {
    std::int64_t p = hp(t, j);
    SeriesQ s = zero_series(N);
    for (std::int64_t k = 1; k * p <= N; ++k) s.coeffs[k * p] = 1;
    return s;
}

}  // namespace

SeriesQ mul(const SeriesQ& x, const SeriesQ& y, std::int64_t N) {
    SeriesQ r = zero_series(N);
    std::int64_t nx = static_cast<std::int64_t>(x.coeffs.size());
    for (std::int64_t i = 0; i < nx && i <= N; ++i) {
        if (x.coeffs[i] == 0) continue;
        std::int64_t ny = static_cast<std::int64_t>(y.coeffs.size());
        for (std::int64_t k = 0; k < ny && i + k <= N; ++k) {
            if (y.coeffs[k] == 0) continue;
            r.coeffs[i + k] += x.coeffs[i] * y.coeffs[k];
        }
    }
    return r;
}

SeriesQ series_b(int t, std::int64_t N) {
    if (N < 0) throw domain_error("series_b: negative order");
    SeriesQ b = zero_series(N);
    SeriesQ prod = zero_series(N);
    prod.coeffs[0] = 1;
    // term j carries q-valuation hp(1)+...+hp(j), so few terms contribute
    std::int64_t val = 0;
    for (int j = 1;; ++j) {
        val += hp(t, j);
        if (val > N) break;
        prod = mul(prod, factor_series(t, j, N), N);
        add_scaled(b, prod, (j % 2 == 1) ? +1 : -1);
    }
    return b;
}

SeriesQ series_a(int t, std::int64_t N) {
    if (N < 0) throw domain_error("series_a: negative order");
    SeriesQ a = zero_series(N);
    a.coeffs[0] = 1;  // j = 0: empty product, q^{hp(0)} = 1
    SeriesQ prod = zero_series(N);
    prod.coeffs[0] = 1;
    std::int64_t val = 0;
    for (int j = 1;; ++j) {
        val += hp(t, j);
        std::int64_t lead = hp(t, j);
        if (val + lead > N) break;
        prod = mul(prod, factor_series(t, j, N), N);
        // shift by q^{hp(j)} and accumulate with sign (-1)^j
        for (std::int64_t i = 0; i + lead <= N; ++i) {
            if (prod.coeffs[i] == 0) continue;
            if (j % 2 == 0) a.coeffs[i + lead] += prod.coeffs[i];
            else a.coeffs[i + lead] -= prod.coeffs[i];
        }
    }
    return a;
}

SeriesQ series_H(int t, std::int64_t N) {
    SeriesQ a = series_a(t, N);
    SeriesQ b = series_b(t, N);
    // H (1 - b) = a  with b_0 = 0:  H_n = a_n + sum_{k=1..n} b_k H_{n-k}
    SeriesQ h = zero_series(N);
    for (std::int64_t n = 0; n <= N; ++n) {
        mpq_class v = a.coeffs[n];
        for (std::int64_t k = 1; k <= n; ++k) {
            if (b.coeffs[k] == 0) continue;
            v += b.coeffs[k] * h.coeffs[n - k];
        }
        h.coeffs[n] = v;
    }
    return h;
}

std::string series_csv(const SeriesQ& s) {
    std::ostringstream out;
    out << "n,coefficient\n";
    for (std::size_t n = 0; n < s.coeffs.size(); ++n)
        out << n << "," << s.coeffs[n].get_str() << "\n";
    return out.str();
}

std::vector<Interval> p_table(int t, const Interval& q0, int M) {
    if (M < 1) throw domain_error("p_table: need at least one index");
    if (!(q0.lo > 0.0 && q0.hi < 1.0))
        throw domain_error("p_table: singularity enclosure must lie in (0,1)");
    if (q0.width() > 1e-6)
        throw domain_error("p_table: singularity enclosure too wide");

    // powers of q0 needed: exponents k*hp(j) with k*t^{j-1} <= M
    std::int64_t max_exp = 0;
    for (int j = 1; hp(t, j) <= M; ++j) {
        std::int64_t tj1 = 1;
        for (int i = 1; i < j; ++i) tj1 *= t;
        std::int64_t kmax = M / tj1;
        max_exp = std::max(max_exp, kmax * hp(t, j));
    }
    std::vector<Interval> qpow(static_cast<std::size_t>(max_exp + 1), Interval(1.0));
    for (std::int64_t e = 1; e <= max_exp; ++e) qpow[e] = qpow[e - 1] * q0;

    // polynomials in u with powers stored in units of t (all powers of u
    // appearing in b are multiples of t)
    using UPoly = std::vector<Interval>;  // index = power/t, size M+1
    UPoly prod(static_cast<std::size_t>(M + 1), Interval(0.0));
    prod[0] = Interval(1.0);
    UPoly b(static_cast<std::size_t>(M + 1), Interval(0.0));

    for (int j = 1; hp(t, j) <= M; ++j) {
        std::int64_t tj1 = 1;  // t^{j-1}: u-step of factor j in units of t
        for (int i = 1; i < j; ++i) tj1 *= t;
        UPoly next(static_cast<std::size_t>(M + 1), Interval(0.0));
        for (std::int64_t s = 0; s <= M; ++s) {
            if (prod[s].lo == 0.0 && prod[s].hi == 0.0) continue;
            for (std::int64_t k = 1; s + k * tj1 <= M; ++k) {
                Interval term = prod[s] * qpow[k * hp(t, j)];
                next[s + k * tj1] = next[s + k * tj1] + term;
            }
        }
        prod = std::move(next);
        for (std::int64_t s = 0; s <= M; ++s) {
            if (j % 2 == 1) b[s] = b[s] + prod[s];
            else b[s] = b[s] - prod[s];
        }
    }

    std::vector<Interval> p;
    p.reserve(static_cast<std::size_t>(M));
    for (std::int64_t m = 1; m <= M; ++m) p.push_back(b[m]);
    return p;
}

Interval p_tail(const Interval& q0, int M) {
    Interval hi(q0.hi);
    Interval bound = pow_int(hi, M + 1) / (1.0 - hi);
    return Interval(0.0, bound.hi);
}

}  // namespace cantrees
