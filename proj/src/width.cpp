#include "cantrees/width.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>

namespace cantrees {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

// source-level range admitted by the cap: appending a level of r internal
// vertices below a level of s internal vertices leaves s*t - r leaves
// there, so ceil(r/t) <= s <= floor((r+K)/t)
std::int64_t row_lo(int t, std::int64_t r) { return ceil_div(r, t); }
std::int64_t row_hi(int t, std::int64_t K, std::int64_t r, std::int64_t N) {
    return std::min((r + K) / t, N);
}

}  // namespace

std::int64_t transfer_dimension(int t, std::int64_t K) {
    if (t < 2) throw domain_error("transfer_dimension: arity must be at least 2");
    if (K < t) throw domain_error("transfer_dimension: cap below arity has an empty matrix");
    return (K + t - 2) / (t - 1) - 1;
}

std::vector<mpz_class> width_capped_counts(int t, std::int64_t K,
                                           std::int64_t N_max) {
    if (t < 2) throw domain_error("width_capped_counts: arity must be at least 2");
    if (N_max < 0) throw domain_error("width_capped_counts: negative order");
    if (K < 1) throw domain_error("width_capped_counts: width cap below 1");
    std::vector<mpz_class> out(static_cast<std::size_t>(N_max + 1), mpz_class(0));
    out[0] = 1;  // the single leaf has width 1
    if (K < t) return out;  // no bigger tree fits: its last level has >= t leaves

    std::int64_t N = transfer_dimension(t, K);
    // w[r][n] = number of capped profiles whose deepest internal level has
    // r vertices; the cap applies to every level above the deepest one.
    // Recurrence: [q^n] w_r = [n=1][r=1] + sum over the parent-level count
    // s in [ceil(r/t), floor((r+K)/t)] of [q^{n-r}] w_s.
    std::vector<std::vector<mpz_class>> w(
        static_cast<std::size_t>(N + 1),
        std::vector<mpz_class>(static_cast<std::size_t>(N_max + 1)));
    // prefix[n][s] = sum_{s' <= s} w[s'][n]
    std::vector<std::vector<mpz_class>> prefix(
        static_cast<std::size_t>(N_max + 1),
        std::vector<mpz_class>(static_cast<std::size_t>(N + 1)));

    for (std::int64_t n = 0; n <= N_max; ++n) {
        for (std::int64_t r = 1; r <= std::min(N, n); ++r) {
            mpz_class val = (n == 1 && r == 1) ? 1 : 0;
            std::int64_t src = n - r;
            if (src >= 0) {
                std::int64_t lo = row_lo(t, r);
                std::int64_t hi = row_hi(t, K, r, N);
                if (lo <= hi)
                    val += prefix[src][hi] - prefix[src][lo - 1];
            }
            w[r][n] = val;
        }
        prefix[n][0] = 0;
        for (std::int64_t s = 1; s <= N; ++s)
            prefix[n][s] = prefix[n][s - 1] + (n >= s ? w[s][n] : mpz_class(0));
    }

    // completed trees additionally need the last level itself capped:
    // t*r leaves there, so r <= floor(K/t)
    std::int64_t r_max = std::min(K / t, N);
    for (std::int64_t n = 1; n <= N_max; ++n)
        for (std::int64_t r = 1; r <= std::min(r_max, n); ++r) out[n] += w[r][n];
    return out;
}

std::vector<mpq_class> apply_transfer(int t, std::int64_t K,
                                      const mpq_class& q,
                                      const std::vector<mpq_class>& x) {
    std::int64_t N = transfer_dimension(t, K);
    if (static_cast<std::int64_t>(x.size()) != N)
        throw domain_error("apply_transfer: vector length must match the matrix dimension");
    std::vector<mpq_class> y(static_cast<std::size_t>(N));
    mpq_class qr = 1;
    for (std::int64_t r = 1; r <= N; ++r) {
        qr *= q;
        mpq_class acc = 0;
        std::int64_t hi = row_hi(t, K, r, N);
        for (std::int64_t s = row_lo(t, r); s <= hi; ++s) acc += x[s - 1];
        y[r - 1] = qr * acc;
    }
    return y;
}

namespace {

// truncated rational power series helpers for the determinant check
using Poly = std::vector<mpq_class>;

Poly poly_mul(const Poly& a, const Poly& b, std::size_t len) {
    Poly out(len, mpq_class(0));
    for (std::size_t i = 0; i < len && i < a.size(); ++i) {
        if (a[i] == 0) continue;
        std::size_t jmax = std::min(b.size(), len - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            if (b[j] == 0) continue;
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

Poly poly_inv(const Poly& a, std::size_t len) {
    if (a.empty() || a[0] == 0)
        throw domain_error("series inverse requires a unit constant term");
    Poly out(len, mpq_class(0));
    out[0] = 1 / a[0];
    for (std::size_t m = 1; m < len; ++m) {
        mpq_class acc = 0;
        for (std::size_t l = 1; l <= m && l < a.size(); ++l)
            acc += a[l] * out[m - l];
        out[m] = -acc / a[0];
    }
    return out;
}

}  // namespace

std::vector<mpq_class> det_transfer_series(int t, std::int64_t K,
                                           std::int64_t N) {
    if (N < 0) throw domain_error("det_transfer_series: negative order");
    std::int64_t D = transfer_dimension(t, K);
    std::size_t len = static_cast<std::size_t>(N + 1);
    std::vector<std::vector<Poly>> A(
        static_cast<std::size_t>(D),
        std::vector<Poly>(static_cast<std::size_t>(D), Poly(len, mpq_class(0))));
    for (std::int64_t r = 1; r <= D; ++r) {
        A[r - 1][r - 1][0] = 1;
        if (r <= N) {
            std::int64_t hi = row_hi(t, K, r, D);
            for (std::int64_t s = row_lo(t, r); s <= hi; ++s)
                A[r - 1][s - 1][static_cast<std::size_t>(r)] -= 1;
        }
    }
    // elimination without pivoting: every pivot stays a unit because all
    // matrix entries outside the identity have positive valuation
    Poly det(len, mpq_class(0));
    det[0] = 1;
    for (std::int64_t i = 0; i < D; ++i) {
        const Poly piv = A[i][i];
        det = poly_mul(det, piv, len);
        Poly ipiv = poly_inv(piv, len);
        for (std::int64_t k = i + 1; k < D; ++k) {
            bool zero = true;
            for (const auto& c : A[k][i])
                if (c != 0) { zero = false; break; }
            if (zero) continue;
            Poly f = poly_mul(A[k][i], ipiv, len);
            for (std::int64_t j = i; j < D; ++j) {
                Poly fa = poly_mul(f, A[i][j], len);
                for (std::size_t c = 0; c < len; ++c) A[k][j][c] -= fa[c];
            }
        }
    }
    for (auto& c : det) c.canonicalize();
    return det;
}

namespace {

// round to the dyadic grid 2^-bits, ties up
mpq_class round_dyadic(const mpq_class& x, unsigned bits) {
    mpz_class two_k;
    mpz_ui_pow_ui(two_k.get_mpz_t(), 2, bits);
    mpq_class scaled = x * mpq_class(two_k);
    mpz_class twice = 2 * scaled.get_num() + scaled.get_den();
    mpz_class dden = 2 * scaled.get_den();
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), dden.get_mpz_t());
    mpq_class out(q, two_k);
    out.canonicalize();
    return out;
}

double spectral_radius_estimate(int t, std::int64_t K, double q,
                                std::vector<double>& v) {
    std::int64_t N = transfer_dimension(t, K);
    v.assign(static_cast<std::size_t>(N), 1.0);
    std::vector<double> qr(static_cast<std::size_t>(N + 1));
    qr[0] = 1;
    for (std::int64_t r = 1; r <= N; ++r) qr[r] = qr[r - 1] * q;
    std::vector<double> w(static_cast<std::size_t>(N));
    double lam = 1.0;
    for (int iter = 0; iter < 400; ++iter) {
        // one multiply plus the min/max component-ratio bounds, which
        // bracket the Perron root of a positive-irreducible matrix
        double rlo = 1e300, rhi = 0;
        for (std::int64_t r = 1; r <= N; ++r) {
            double acc = 0;
            std::int64_t hi = row_hi(t, K, r, N);
            for (std::int64_t s = row_lo(t, r); s <= hi; ++s)
                acc += v[s - 1];
            w[r - 1] = qr[r] * acc;
            double ratio = w[r - 1] / v[r - 1];
            rlo = std::min(rlo, ratio);
            rhi = std::max(rhi, ratio);
        }
        double scale = 1.0 / *std::max_element(w.begin(), w.end());
        for (std::int64_t r = 0; r < N; ++r)
            v[static_cast<std::size_t>(r)] = w[static_cast<std::size_t>(r)] * scale;
        lam = 0.5 * (rlo + rhi);
        if (rhi - rlo < 1e-14 * lam && iter > 20) break;
    }
    return lam;
}

// exact componentwise test; dir = +1 wants Mx >= x, -1 wants Mx <= x
bool witness_holds(int t, std::int64_t K, const mpq_class& q,
                   const std::vector<mpq_class>& x, int dir) {
    for (const auto& c : x)
        if (c <= 0) return false;
    std::vector<mpq_class> y = apply_transfer(t, K, q, x);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (dir > 0 && y[i] < x[i]) return false;
        if (dir < 0 && y[i] > x[i]) return false;
    }
    return true;
}

// polish an approximate Perron vector at exact q until the witness
// inequality verifies; each multiplication by the matrix contracts toward
// the eigenvector direction, and rounding stays on a dyadic grid fine
// enough not to spoil the componentwise margin
bool make_witness(int t, std::int64_t K, const mpq_class& q, int dir,
                  const std::vector<double>& seed,
                  std::vector<mpq_class>& out) {
    std::int64_t N = transfer_dimension(t, K);
    const unsigned kBits = 192;
    std::vector<mpq_class> x(static_cast<std::size_t>(N));
    for (std::int64_t i = 0; i < N; ++i) {
        double s = seed[static_cast<std::size_t>(i)];
        if (!(s > 0)) s = 1e-6;
        x[static_cast<std::size_t>(i)] = round_dyadic(mpq_class(s), kBits);
        if (x[static_cast<std::size_t>(i)] <= 0)
            x[static_cast<std::size_t>(i)] = mpq_class(1, 1048576);
    }
    for (int round = 0; round <= 9; ++round) {
        if (witness_holds(t, K, q, x, dir)) {
            out = x;
            return true;
        }
        int steps = 1 << round;
        for (int s = 0; s < steps; ++s) {
            std::vector<mpq_class> y = apply_transfer(t, K, q, x);
            mpq_class mx = 0;
            for (const auto& c : y) mx = std::max(mx, c);
            if (mx <= 0) return false;
            // normalize by a power of two to stay dyadic
            long e = std::lround(std::log2(std::max(mx.get_d(), 1e-300)));
            mpq_class scale = (e >= 0) ? mpq_class(1, mpz_class(1) << e)
                                       : mpq_class(mpz_class(1) << (-e), 1);
            for (auto& c : y) c = round_dyadic(c * scale, kBits);
            x = y;
        }
    }
    return false;
}

}  // namespace

QKCert solve_qK(int t, std::int64_t K, double precision) {
    std::int64_t N = transfer_dimension(t, K);
    (void)N;
    if (!(precision >= 1e-14) || precision > 0.1)
        throw domain_error("solve_qK: precision out of supported range");

    std::vector<double> v;
    double lo = 0.2, hi = 1.0 + 4 * precision;
    // the spectral radius is strictly increasing in q, so bisect on it
    while (hi - lo > 0.25 * precision) {
        double mid = 0.5 * (lo + hi);
        if (spectral_radius_estimate(t, K, mid, v) < 1)
            lo = mid;
        else
            hi = mid;
    }
    double center = 0.5 * (lo + hi);

    for (double halfwidth = 0.5 * precision; halfwidth < 0.2; halfwidth *= 2) {
        // snap the endpoints outward onto the 2^-48 dyadic grid so they
        // are exactly representable both as rationals and as doubles
        double step = std::ldexp(1.0, -48);
        double qlo_d = std::floor((center - halfwidth) / step) * step;
        double qhi_d = std::ceil((center + halfwidth) / step) * step;
        if (!(qlo_d > 0)) continue;
        mpq_class qlo(qlo_d), qhi(qhi_d);

        std::vector<double> seed_hi, seed_lo;
        spectral_radius_estimate(t, K, qhi_d, seed_hi);
        spectral_radius_estimate(t, K, qlo_d, seed_lo);
        QKCert cert;
        cert.K = K;
        if (!make_witness(t, K, qhi, +1, seed_hi, cert.x_hi)) continue;
        if (!make_witness(t, K, qlo, -1, seed_lo, cert.x_lo)) continue;
        cert.qK = Interval(qlo_d, qhi_d);
        return cert;
    }
    throw domain_error("solve_qK: witness verification failed at every attempted interval width");
}

namespace {

// ---- exact mean width ------------------------------------------------
//
// E(w) * count = sum_{K >= 0} (count - W_K[n]).  Split at B = ceil(tau/2)
// where tau = 1 + n(t-1) is the leaf count:
//   head = sum_{K < B} (count - W_K[n]), swept cap by cap;
//   tail = sum over trees of (w - B)^+.
// Two levels cannot both hold more than tau/2 of the tau leaves, so the
// tail equals the sum over (tree, level) pairs of the level's leaf excess
// over B, and that factors through forward x completion counting.  The
// tail and the class count are computed modulo enough 62-bit primes and
// reconstructed by remaindering.

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p);
}
u64 addmod(u64 a, u64 b, u64 p) {
    u64 s = a + b;  // p < 2^63, no overflow
    return s >= p ? s - p : s;
}
u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

std::vector<u64> prime_pool(std::size_t need) {
    static std::mutex mu;
    static std::vector<u64> pool;
    static mpz_class cursor = mpz_class(1) << 62;
    std::lock_guard<std::mutex> lock(mu);
    while (pool.size() < need) {
        mpz_nextprime(cursor.get_mpz_t(), cursor.get_mpz_t());
        pool.push_back(mpz_get_ui(cursor.get_mpz_t()));
    }
    return {pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(need)};
}

// triangular (v, j) layout, row v holding v+1 slots for j in [1, v+1]
struct Tri {
    std::vector<u64> a;
    std::vector<std::size_t> off;
    void init(std::int64_t n) {
        off.assign(static_cast<std::size_t>(n + 2), 0);
        for (std::int64_t v = 1; v <= n + 1; ++v)
            off[static_cast<std::size_t>(v)] =
                off[static_cast<std::size_t>(v - 1)] + static_cast<std::size_t>(v);
        a.assign(off[static_cast<std::size_t>(n + 1)], 0);
    }
    u64& at(std::int64_t v, std::int64_t j) {
        return a[off[static_cast<std::size_t>(v)] + static_cast<std::size_t>(j - 1)];
    }
};

struct TailAndCount {
    u64 tail;
    u64 count;
};

TailAndCount tail_mod_p(int t, std::int64_t n, std::int64_t B, u64 p) {
    // forward counts F and suffix sums S over the deepest-level index
    Tri F, S;
    F.init(n);
    S.init(n);
    for (std::int64_t v = 1; v <= n; ++v) {
        for (std::int64_t j = 1; j <= v; ++j) {
            u64 val = (v == 1 && j == 1) ? 1 : 0;
            std::int64_t src = v - j;
            if (src >= 1) {
                std::int64_t a = ceil_div(j, t);
                if (a <= src) val = addmod(val, S.at(src, a), p);
            }
            F.at(v, j) = val;
        }
        S.at(v, v + 1) = 0;
        for (std::int64_t j = v; j >= 1; --j)
            S.at(v, j) = addmod(S.at(v, j + 1), F.at(v, j), p);
    }

    // completion counts, rows compressed at the saturation point
    std::vector<std::vector<u64>> C(static_cast<std::size_t>(n));
    C[0] = {1};
    auto cval = [&C](std::int64_t rem, std::int64_t j) -> u64 {
        const auto& r = C[static_cast<std::size_t>(rem)];
        std::size_t idx = std::min(static_cast<std::size_t>(j), r.size() - 1);
        return r[idx];
    };
    std::vector<u64> diag;
    for (std::int64_t rem = 1; rem < n; ++rem) {
        diag.assign(static_cast<std::size_t>(rem + 1), 0);
        for (std::int64_t k = 1; k <= rem; ++k)
            diag[static_cast<std::size_t>(k)] =
                addmod(diag[static_cast<std::size_t>(k - 1)], cval(rem - k, k), p);
        std::int64_t jsat = ceil_div(rem, t);
        C[static_cast<std::size_t>(rem)].assign(static_cast<std::size_t>(jsat + 1), 0);
        for (std::int64_t j = 1; j <= jsat; ++j)
            C[static_cast<std::size_t>(rem)][static_cast<std::size_t>(j)] =
                diag[static_cast<std::size_t>(std::min(j * t, rem))];
    }

    // G[R][y] = sum_{j <= y} C[R-j][j],  G2 the same weighted by j
    std::vector<std::vector<u64>> G(static_cast<std::size_t>(n)),
        G2(static_cast<std::size_t>(n));
    for (std::int64_t R = 0; R < n; ++R) {
        G[static_cast<std::size_t>(R)].assign(static_cast<std::size_t>(R + 1), 0);
        G2[static_cast<std::size_t>(R)].assign(static_cast<std::size_t>(R + 1), 0);
        for (std::int64_t y = 1; y <= R; ++y) {
            u64 c = cval(R - y, y);
            G[static_cast<std::size_t>(R)][static_cast<std::size_t>(y)] =
                addmod(G[static_cast<std::size_t>(R)][static_cast<std::size_t>(y - 1)], c, p);
            G2[static_cast<std::size_t>(R)][static_cast<std::size_t>(y)] =
                addmod(G2[static_cast<std::size_t>(R)][static_cast<std::size_t>(y - 1)],
                       mulmod(static_cast<u64>(y), c, p), p);
        }
    }

    // a transition from deepest-level count jp to j fixes t*jp - j leaves
    // on the exited level; weight each by its excess over B
    u64 tail = 0;
    std::int64_t jp_min = ceil_div(B + 1, t);
    for (std::int64_t v = 1; v <= n - 1; ++v) {
        std::int64_t R = n - v;
        for (std::int64_t jp = jp_min; jp <= v; ++jp) {
            std::int64_t theta = t * jp - B;
            std::int64_t y = std::min(theta - 1, R);
            if (y < 1) continue;
            u64 inner =
                submod(mulmod(static_cast<u64>(theta),
                              G[static_cast<std::size_t>(R)][static_cast<std::size_t>(y)], p),
                       G2[static_cast<std::size_t>(R)][static_cast<std::size_t>(y)], p);
            tail = addmod(tail, mulmod(F.at(v, jp), inner, p), p);
        }
    }
    // the deepest level of a finished tree carries t*jp leaves
    for (std::int64_t jp = jp_min; jp <= n; ++jp) {
        std::int64_t theta = t * jp - B;
        tail = addmod(tail, mulmod(F.at(n, jp), static_cast<u64>(theta), p), p);
    }
    return {tail, S.at(n, 1)};
}

}  // namespace

std::map<std::int64_t, mpq_class> width_mean_batch(
    int t, const std::vector<std::int64_t>& sizes, std::int64_t cap) {
    if (t < 2) throw domain_error("width_mean: arity must be at least 2");
    std::map<std::int64_t, mpq_class> out;
    std::vector<std::int64_t> big;
    for (std::int64_t n : sizes) {
        if (n < 0) throw domain_error("width_mean: negative size");
        if (n > cap)
            throw domain_error("width_mean: size exceeds resource cap " +
                               std::to_string(cap) + " (raise the cap to override)");
        if (n == 0)
            out[n] = 1;
        else if (n == 1)
            out[n] = t;
        else
            big.push_back(n);
    }
    if (big.empty()) return out;
    std::sort(big.begin(), big.end());
    big.erase(std::unique(big.begin(), big.end()), big.end());

    // tails and class counts first, reconstructed from 62-bit residues;
    // a profile is a constrained composition led by 1, so the count is
    // below 2^n and the tail below count * tau
    std::vector<mpz_class> counts(big.size()), tails(big.size()), acc(big.size());
    std::vector<std::int64_t> B(big.size());
    for (std::size_t i = 0; i < big.size(); ++i) {
        std::int64_t n = big[i];
        std::int64_t tau = 1 + n * (t - 1);
        B[i] = (tau + 1) / 2;
        std::size_t need = static_cast<std::size_t>(
            (n + 2 * mpz_sizeinbase(mpz_class(tau).get_mpz_t(), 2) + 4) / 61 + 1);
        std::vector<u64> primes = prime_pool(need);
        mpz_class Xt = 0, Xc = 0, M = 1;
        for (u64 p : primes) {
            TailAndCount r = tail_mod_p(t, n, B[i], p);
            mpz_class pz(static_cast<unsigned long>(p));
            mpz_class inv, Mr = M % pz;
            if (mpz_invert(inv.get_mpz_t(), Mr.get_mpz_t(), pz.get_mpz_t()) == 0)
                throw domain_error("width_mean: repeated modulus in the prime pool");
            u64 im = mpz_get_ui(inv.get_mpz_t());
            u64 xt = mpz_get_ui(mpz_class(Xt % pz).get_mpz_t());
            u64 xc = mpz_get_ui(mpz_class(Xc % pz).get_mpz_t());
            Xt += M * mpz_class(static_cast<unsigned long>(
                          mulmod(submod(r.tail, xt, p), im, p)));
            Xc += M * mpz_class(static_cast<unsigned long>(
                          mulmod(submod(r.count, xc, p), im, p)));
            M *= pz;
        }
        counts[i] = Xc;
        tails[i] = Xt;
    }

    // head sweeps shared across sizes: one ring-buffered pass per cap K
    // yields the capped coefficient at every size still below its split
    std::int64_t B_max = B.back();
    if (B_max - 1 >= t) {
        std::int64_t D_max = transfer_dimension(t, B_max - 1);
        std::int64_t stride = D_max + 1;
        std::vector<mpz_class> buf(
            static_cast<std::size_t>(stride) * static_cast<std::size_t>(D_max + 1));
        std::int64_t n_max = big.back();

        std::vector<std::int64_t> lo(static_cast<std::size_t>(D_max + 1)),
            hi(static_cast<std::size_t>(D_max + 1));
        for (std::int64_t K = t; K <= B_max - 1; ++K) {
            std::int64_t D = transfer_dimension(t, K);
            std::int64_t depth = D + 1;
            auto column = [&](std::int64_t c) {
                return buf.data() + (c % depth) * stride;
            };
            for (std::int64_t r = 1; r <= D; ++r) {
                lo[static_cast<std::size_t>(r)] = row_lo(t, r);
                hi[static_cast<std::size_t>(r)] = row_hi(t, K, r, D);
            }
            std::int64_t harvest_row = std::min(K / t, D);

            mpz_class* col0 = column(0);
            for (std::int64_t s = 0; s <= D; ++s) col0[s] = 0;
            std::size_t size_idx = 0;
            for (std::int64_t n = 1; n <= n_max; ++n) {
                mpz_class* cur = column(n);
                cur[0] = 0;
                std::int64_t rmax = std::min(D, n);
                for (std::int64_t r = 1; r <= rmax; ++r) {
                    const mpz_class* src = column(n - r);
                    // cur[r] = cur[r-1] + (src[hi] - src[lo-1])
                    mpz_add(cur[r].get_mpz_t(), cur[r - 1].get_mpz_t(),
                            src[hi[static_cast<std::size_t>(r)]].get_mpz_t());
                    mpz_sub(cur[r].get_mpz_t(), cur[r].get_mpz_t(),
                            src[lo[static_cast<std::size_t>(r)] - 1].get_mpz_t());
                    if (n == 1 && r == 1) cur[1] += 1;
                }
                for (std::int64_t r = rmax + 1; r <= D; ++r) cur[r] = cur[rmax];
                while (size_idx < big.size() && big[size_idx] == n) {
                    if (K < B[size_idx]) acc[size_idx] += cur[harvest_row];
                    ++size_idx;
                }
            }
        }
    }

    for (std::size_t i = 0; i < big.size(); ++i) {
        mpz_class head = B[i] * counts[i] - acc[i];
        mpq_class mean(head + tails[i], counts[i]);
        mean.canonicalize();
        out[big[i]] = mean;
    }
    return out;
}

mpq_class width_mean(int t, std::int64_t n, std::int64_t cap) {
    return width_mean_batch(t, {n}, cap).at(n);
}

}  // namespace cantrees
