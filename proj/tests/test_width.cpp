#include "doctest.h"

#include "cantrees/bigdp.hpp"
#include "cantrees/series.hpp"
#include "cantrees/width.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

using namespace cantrees;

namespace {

// published enclosure of the dominant singularity at t=2, reproduced to
// full precision by the constants solver (tested in its own suite)
const Interval kQ0T2(0.5573678720139931, 0.5573678720139933);

// independent width histogram: walk the level profiles directly, keeping
// the running maximum of leaves released on each exited level
void brute_widths(int t, std::int64_t rem, std::int64_t last,
                  std::int64_t cur, std::map<std::int64_t, std::int64_t>& hist) {
    if (rem == 0) {
        hist[std::max(cur, t * last)] += 1;
        return;
    }
    std::int64_t jmax = std::min<std::int64_t>(t * last, rem);
    for (std::int64_t j = 1; j <= jmax; ++j)
        brute_widths(t, rem - j, j, std::max(cur, t * last - j), hist);
}

std::map<std::int64_t, std::int64_t> brute_width_hist(int t, std::int64_t n) {
    std::map<std::int64_t, std::int64_t> hist;
    if (n == 0)
        hist[1] = 1;
    else
        brute_widths(t, n - 1, 1, 0, hist);
    return hist;
}

}  // namespace

TEST_CASE("transfer matrix dimension") {
    CHECK(transfer_dimension(2, 2) == 1);
    CHECK(transfer_dimension(2, 3) == 2);
    CHECK(transfer_dimension(2, 4) == 3);
    CHECK(transfer_dimension(2, 10) == 9);
    CHECK(transfer_dimension(3, 3) == 1);
    CHECK(transfer_dimension(3, 7) == 3);
    CHECK(transfer_dimension(5, 13) == 3);
    CHECK_THROWS_AS(transfer_dimension(2, 1), domain_error);
    CHECK_THROWS_AS(transfer_dimension(3, 2), domain_error);
    CHECK_THROWS_AS(transfer_dimension(1, 5), domain_error);
}

TEST_CASE("capped counts at size 4") {
    auto all = width_capped_counts(2, 5, 4);
    CHECK(all[4] == 3);
    auto narrow = width_capped_counts(2, 2, 4);
    CHECK(narrow[4] == 1);  // only the profile (1,1,1,1) stays this thin
    CHECK(narrow[0] == 1);
    CHECK(narrow[1] == 1);
    CHECK(narrow[2] == 1);
    CHECK(narrow[3] == 1);
    CHECK_THROWS_AS(width_capped_counts(2, 0, 4), domain_error);
    CHECK_THROWS_AS(width_capped_counts(2, 3, -1), domain_error);
}

TEST_CASE("caps below the arity admit only the leaf") {
    for (int t : {3, 5}) {
        for (std::int64_t K = 1; K < t; ++K) {
            auto c = width_capped_counts(t, K, 6);
            CHECK(c[0] == 1);
            for (std::int64_t n = 1; n <= 6; ++n) CHECK(c[n] == 0);
        }
    }
}

TEST_CASE("capped counts vs direct profile enumeration") {
    for (int t : {2, 3}) {
        for (std::int64_t n = 0; n <= 12; ++n) {
            auto hist = brute_width_hist(t, n);
            std::int64_t tau = 1 + n * (t - 1);
            mpz_class cum = 0;
            std::map<std::int64_t, std::int64_t>::const_iterator it = hist.begin();
            for (std::int64_t K = std::max<std::int64_t>(1, t); K <= tau + 1; ++K) {
                while (it != hist.end() && it->first <= K) {
                    cum += it->second;
                    ++it;
                }
                mpz_class got = width_capped_counts(t, K, n)[n];
                mpz_class want(cum);
                CHECK(got == want);
            }
        }
    }
}

TEST_CASE("capped counts monotone in the cap and saturating") {
    for (int t : {2, 3}) {
        for (std::int64_t n = 1; n <= 15; ++n) {
            std::int64_t tau = 1 + n * (t - 1);
            mpz_class prev = 0;
            for (std::int64_t K = t; K <= tau + 2; ++K) {
                mpz_class cur = width_capped_counts(t, K, n)[n];
                bool mono = cur >= prev;
                CHECK(mono);
                prev = cur;
            }
            CHECK(prev == count(t, n));
            CHECK(width_capped_counts(t, tau, n)[n] == count(t, n));
        }
    }
}

TEST_CASE("library width distribution equals profile enumeration") {
    for (int t : {2, 3}) {
        for (std::int64_t n = 0; n <= 12; ++n) {
            auto hist = brute_width_hist(t, n);
            DistTable d = dist(t, n, Stat::width);
            CHECK(d.entries.size() == hist.size());
            for (const auto& kv : hist) {
                mpz_class got = d.entries.count(kv.first) ? d.entries.at(kv.first)
                                                          : mpz_class(0);
                CHECK(got == kv.second);
            }
        }
    }
}

TEST_CASE("one application of the transfer matrix") {
    // t=2, K=4: rows q(x1+x2), q^2(x1+x2+x3), q^3(x2+x3)
    mpq_class q(1, 2);
    std::vector<mpq_class> x = {1, 1, 1};
    auto y = apply_transfer(2, 4, q, x);
    REQUIRE(y.size() == 3);
    CHECK(y[0] == 1);
    CHECK(y[1] == mpq_class(3, 4));
    CHECK(y[2] == mpq_class(1, 4));
    std::vector<mpq_class> bad = {1, 1};
    CHECK_THROWS_AS(apply_transfer(2, 4, q, bad), domain_error);
}

TEST_CASE("determinant series matches the level kernel") {
    for (std::int64_t K : {6, 10, 14}) {
        std::int64_t order = K / 2;
        auto det = det_transfer_series(2, K, order);
        SeriesQ b = series_b(2, order);
        CHECK(det[0] == 1);
        for (std::int64_t j = 1; j <= order; ++j) {
            mpq_class want = -b.at(j);
            CHECK(det[static_cast<std::size_t>(j)] == want);
        }
    }
}

TEST_CASE("smallest nontrivial caps put the singularity at one") {
    for (int t : {2, 3, 5}) {
        QKCert c = solve_qK(t, t);
        bool contains_one = c.qK.lo <= 1.0 && 1.0 <= c.qK.hi;
        CHECK(contains_one);
        CHECK(c.qK.hi - c.qK.lo < 1e-10);
    }
}

TEST_CASE("cap three at arity two hits the golden ratio") {
    // radius-1 condition for the 2x2 all-ones-pattern block: q + q^2 = 1
    QKCert c = solve_qK(2, 3);
    double golden = 0.6180339887498949;
    bool inside = c.qK.lo <= golden && golden <= c.qK.hi;
    CHECK(inside);
}

TEST_CASE("witness vectors verify through the public interface") {
    for (std::int64_t K : {4, 10, 25}) {
        QKCert c = solve_qK(2, K);
        std::int64_t N = transfer_dimension(2, K);
        REQUIRE(static_cast<std::int64_t>(c.x_hi.size()) == N);
        REQUIRE(static_cast<std::int64_t>(c.x_lo.size()) == N);
        mpq_class qhi(c.qK.hi), qlo(c.qK.lo);
        auto yhi = apply_transfer(2, K, qhi, c.x_hi);
        auto ylo = apply_transfer(2, K, qlo, c.x_lo);
        for (std::int64_t i = 0; i < N; ++i) {
            bool pos_hi = c.x_hi[static_cast<std::size_t>(i)] > 0;
            bool pos_lo = c.x_lo[static_cast<std::size_t>(i)] > 0;
            bool grew = yhi[static_cast<std::size_t>(i)] >=
                        c.x_hi[static_cast<std::size_t>(i)];
            bool shrank = ylo[static_cast<std::size_t>(i)] <=
                          c.x_lo[static_cast<std::size_t>(i)];
            CHECK(pos_hi);
            CHECK(pos_lo);
            CHECK(grew);
            CHECK(shrank);
        }
    }
}

TEST_CASE("capped singularities decrease strictly toward the true one") {
    std::vector<QKCert> certs;
    for (std::int64_t K = 2; K <= 40; ++K) certs.push_back(solve_qK(2, K));
    for (std::size_t i = 0; i + 1 < certs.size(); ++i) {
        bool strict = certs[i + 1].qK.hi < certs[i].qK.lo;
        CHECK(strict);
    }
    for (const QKCert& c : certs) {
        bool above = c.qK.lo > kQ0T2.hi;
        CHECK(above);
    }

    // the approach is geometric at rate q0 per unit cap: least-squares
    // slope of log(q_K - q0) on K in [20,40]
    double q0 = 0.5 * (kQ0T2.lo + kQ0T2.hi);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::int64_t K = 20; K <= 40; ++K) {
        const Interval& e = certs[static_cast<std::size_t>(K - 2)].qK;
        double gap = 0.5 * (e.lo + e.hi) - q0;
        double x = static_cast<double>(K), y = std::log(gap);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    double want = std::log(q0);
    CHECK(std::fabs(slope - want) < 0.1 * std::fabs(want));
}

TEST_CASE("requested precision is honored and validated") {
    QKCert c = solve_qK(2, 10, 1e-6);
    CHECK(c.qK.hi - c.qK.lo <= 1.1e-6);
    QKCert fine = solve_qK(2, 10);
    bool nested = c.qK.lo <= fine.qK.lo && fine.qK.hi <= c.qK.hi;
    CHECK(nested);
    CHECK_THROWS_AS(solve_qK(2, 10, 0.5), domain_error);
    CHECK_THROWS_AS(solve_qK(2, 10, 1e-15), domain_error);
    CHECK_THROWS_AS(solve_qK(2, 1), domain_error);
}

TEST_CASE("eigenvector rows balance within the truncation tail") {
    // the p-vector is a fixed point of the uncapped matrix at q0; under
    // cap K=31 each row only misses mass beyond column min((r+K)/t, 30)
    const int M = 30;
    const std::int64_t K = 31;
    std::vector<Interval> p = p_table(2, kQ0T2, M);
    REQUIRE(static_cast<int>(p.size()) == M);
    for (std::int64_t r = 1; r <= 15; ++r) {
        std::int64_t lo = (r + 1) / 2;
        std::int64_t hi = std::min<std::int64_t>((r + K) / 2, M);
        Interval sum(0.0);
        for (std::int64_t s = lo; s <= hi; ++s)
            sum = sum + p[static_cast<std::size_t>(s - 1)];
        Interval lhs = pow_int(kQ0T2, r) * sum;
        Interval diff = lhs - p[static_cast<std::size_t>(r - 1)];
        // p_s <= q0^s, so the missing mass is at most q0^{hi+1}/(1-q0)
        double tail = std::pow(kQ0T2.hi, static_cast<double>(r + hi + 1)) /
                      (1.0 - kQ0T2.hi) * 1.001;
        bool not_above = diff.lo <= 1e-18;
        bool not_below = diff.hi >= -tail;
        CHECK(not_above);
        CHECK(not_below);
    }
}

TEST_CASE("mean width at the pictured size") {
    CHECK(width_mean(2, 4) == 3);
    CHECK(width_mean(2, 1) == 2);
    CHECK(width_mean(2, 0) == 1);
    CHECK(width_mean(3, 1) == 3);
}

TEST_CASE("mean width equals the survey over all caps") {
    for (int t : {2, 3}) {
        for (std::int64_t n : {2, 3, 5, 8, 13, 21, 24}) {
            mpq_class got = width_mean(t, n);
            mpz_class C = count(t, n);
            std::int64_t tau = 1 + n * (t - 1);
            mpz_class excess = 0;
            for (std::int64_t K = 1; K < tau; ++K)
                excess += C - width_capped_counts(t, K, n)[n];
            mpq_class want(C + excess, C);  // the K=0 term contributes C
            want.canonicalize();
            CHECK(got == want);
        }
    }
}

TEST_CASE("mean width survey at sizes needing several residue passes") {
    for (std::int64_t n : {60, 70}) {
        mpq_class got = width_mean(2, n);
        mpz_class C = count(2, n);
        std::int64_t tau = 1 + n;
        mpz_class s = 0;
        for (std::int64_t K = 1; K < tau; ++K)
            s += C - width_capped_counts(2, K, n)[n];
        mpq_class want(C + s, C);
        want.canonicalize();
        CHECK(got == want);
    }
}

TEST_CASE("batched means equal the one-size results") {
    auto batch = width_mean_batch(2, {17, 5, 9, 5});
    CHECK(batch.size() == 3);
    for (std::int64_t n : {5, 9, 17}) CHECK(batch.at(n) == width_mean(2, n));
}

TEST_CASE("mean width argument validation") {
    CHECK_THROWS_AS(width_mean(2, -1), domain_error);
    CHECK_THROWS_AS(width_mean(2, 4001), domain_error);
    CHECK_THROWS_AS(width_mean(1, 4), domain_error);
    CHECK(width_mean(2, 30, 30) == width_mean(2, 30));
}
