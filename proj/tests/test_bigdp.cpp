#include "doctest.h"

#include "cantrees/bigdp.hpp"
#include "cantrees/model.hpp"
#include "cantrees/series.hpp"

#include <cstdint>
#include <map>
#include <vector>

using namespace cantrees;

namespace {

using Hist = std::map<std::int64_t, mpz_class>;

Hist brute_hist(int t, std::int64_t n, Stat stat) {
    Hist h;
    for (const auto& p : enumerate_all(t, n)) {
        ParameterVector pv = parameters(p, t);
        std::int64_t value = 0;
        switch (stat) {
            case Stat::height: value = pv.h; break;
            case Stat::distinct_depths: value = pv.d; break;
            case Stat::last_level_leaves: value = pv.m; break;
            case Stat::width: value = pv.w; break;
            case Stat::total_path_length: value = pv.ell; break;
        }
        h[value] += 1;
    }
    return h;
}

std::vector<mpz_class> sums_of(const Hist& h, int deg) {
    std::vector<mpz_class> out(static_cast<std::size_t>(deg + 1), mpz_class(0));
    for (const auto& [value, cnt] : h) {
        mpz_class vp = 1;
        for (int k = 0; k <= deg; ++k) {
            out[k] += vp * cnt;
            vp *= value;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("class counts match hand values and the counting series") {
    CHECK(count(2, 4) == 3);
    CHECK(count(2, 6) == 9);
    CHECK(count(3, 5) == 7);
    CHECK(count(2, 1) == 1);
    for (int t : {2, 3, 7}) CHECK(count(t, 0) == 1);

    for (int t = 2; t <= 5; ++t) {
        SeriesQ H = series_H(t, 120);
        for (std::int64_t n = 0; n <= 120; ++n) {
            mpq_class c(count(t, n));
            CHECK(c == H.at(n));
        }
    }
}

TEST_CASE("last-level refinement sums to the class count") {
    for (int t = 2; t <= 5; ++t) {
        for (std::int64_t n = 0; n <= 200; n += (n < 30 ? 1 : 7)) {
            auto by_m = count_by_m(t, n);
            mpz_class total = 0;
            for (const auto& [m, c] : by_m) {
                CHECK(c > 0);
                if (n == 0) {
                    CHECK(m == 1);
                } else {
                    CHECK(m % t == 0);
                    CHECK(m >= t);
                    CHECK(m <= n * t);
                }
                total += c;
            }
            CHECK(total == count(t, n));
        }
    }
    auto zero = count_by_m(2, 0);
    CHECK(zero.size() == 1);
    CHECK(zero.at(1) == 1);
}

TEST_CASE("distribution tables reproduce hand-checked size-4 values") {
    auto dh = dist(2, 4, Stat::height);
    CHECK(dh.stat_name == "height");
    CHECK(dh.total == 3);
    Hist eh = {{3, mpz_class(2)}, {4, mpz_class(1)}};
    CHECK(dh.entries == eh);

    auto dd = dist(2, 4, Stat::distinct_depths);
    Hist ed = {{2, mpz_class(2)}, {4, mpz_class(1)}};
    CHECK(dd.entries == ed);

    auto dm = dist(2, 4, Stat::last_level_leaves);
    Hist em = {{2, mpz_class(2)}, {4, mpz_class(1)}};
    CHECK(dm.entries == em);

    auto dw = dist(2, 4, Stat::width);
    Hist ew = {{2, mpz_class(1)}, {3, mpz_class(1)}, {4, mpz_class(1)}};
    CHECK(dw.entries == ew);

    auto dl = dist(2, 4, Stat::total_path_length);
    Hist el = {{16, mpz_class(1)}, {18, mpz_class(1)}, {20, mpz_class(1)}};
    CHECK(dl.entries == el);
}

TEST_CASE("distribution tables at the degenerate sizes") {
    const Stat stats[] = {Stat::height, Stat::distinct_depths,
                          Stat::last_level_leaves, Stat::width,
                          Stat::total_path_length};
    for (int t : {2, 5}) {
        // n = 1 is a single tree: the star
        const std::map<Stat, std::int64_t> star = {
            {Stat::height, 1},
            {Stat::distinct_depths, 1},
            {Stat::last_level_leaves, t},
            {Stat::width, t},
            {Stat::total_path_length, t},
        };
        for (Stat s : stats) {
            auto d1 = dist(t, 1, s);
            CHECK(d1.total == 1);
            CHECK(d1.entries.size() == 1);
            CHECK(d1.entries.begin()->first == star.at(s));
        }
        // n = 0 is the bare leaf
        const std::map<Stat, std::int64_t> leaf = {
            {Stat::height, 0},
            {Stat::distinct_depths, 1},
            {Stat::last_level_leaves, 1},
            {Stat::width, 1},
            {Stat::total_path_length, 0},
        };
        for (Stat s : stats) {
            auto d0 = dist(t, 0, s);
            CHECK(d0.total == 1);
            CHECK(d0.entries.size() == 1);
            CHECK(d0.entries.begin()->first == leaf.at(s));
        }
    }
}

TEST_CASE("distribution tables match exhaustive enumeration") {
    const Stat stats[] = {Stat::height, Stat::distinct_depths,
                          Stat::last_level_leaves, Stat::width,
                          Stat::total_path_length};
    for (int t : {2, 3}) {
        for (std::int64_t n = 0; n <= 12; ++n) {
            for (Stat s : stats) {
                auto table = dist(t, n, s);
                Hist expect = brute_hist(t, n, s);
                CHECK(table.entries == expect);
                mpz_class total = 0;
                for (const auto& [k, c] : expect) total += c;
                CHECK(table.total == total);
            }
        }
    }
}

TEST_CASE("power sums agree with the tables up to fourth degree") {
    const Stat stats[] = {Stat::height, Stat::distinct_depths,
                          Stat::last_level_leaves, Stat::width,
                          Stat::total_path_length};
    for (int t : {2, 3}) {
        for (std::int64_t n : {0, 1, 2, 5, 9, 12}) {
            for (Stat s : stats) {
                auto direct = power_sums(t, n, s, 4);
                auto expect = sums_of(brute_hist(t, n, s), 4);
                CHECK(direct == expect);
            }
        }
    }
    // medium size, aggregated sums against the full table
    auto table = dist(2, 150, Stat::height);
    auto expect = sums_of(table.entries, 2);
    auto direct = power_sums(2, 150, Stat::height, 2);
    CHECK(direct == expect);
}

TEST_CASE("exact moments") {
    auto mh = moments(2, 4, Stat::height);
    CHECK(mh.mean == mpq_class(10, 3));
    CHECK(mh.variance == mpq_class(2, 9));

    // cross-check the aggregated path-length engine against the full
    // value table at a size where both are cheap
    auto ml = moments(2, 40, Stat::total_path_length);
    auto tl = dist(2, 40, Stat::total_path_length);
    mpq_class s0(tl.total), s1, s2;
    for (const auto& [value, cnt] : tl.entries) {
        s1 += mpq_class(value) * mpq_class(cnt);
        s2 += mpq_class(value) * mpq_class(value) * mpq_class(cnt);
    }
    mpq_class mean = s1 / s0;
    mpq_class var = s2 / s0 - mean * mean;
    CHECK(ml.mean == mean);
    CHECK(ml.variance == var);

    auto m0 = moments(3, 0, Stat::width);
    CHECK(m0.mean == 1);
    CHECK(m0.variance == 0);
}

TEST_CASE("uniform sampler validity and reproducibility") {
    CHECK(sample_uniform(2, 0, 99).empty());
    Profile one = sample_uniform(2, 1, 99);
    CHECK(one == Profile{1});

    Profile a = sample_uniform(2, 40, 20260815);
    Profile b = sample_uniform(2, 40, 20260815);
    CHECK(a == b);
    Profile golden2 = {1, 2, 1, 2, 1, 2, 1, 2, 2, 1, 1, 2, 2, 1,
                       1, 1, 1, 1, 2, 3, 1, 1, 2, 1, 2, 1, 2};
    CHECK(a == golden2);
    Profile golden3 = {1, 2, 4, 3, 4, 2, 3, 1, 2, 1, 1, 1};
    CHECK(sample_uniform(3, 25, 7) == golden3);

    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Profile p = sample_uniform(2, 40, seed);
        CHECK(validate_profile(p, 2));
        std::int64_t sum = 0;
        for (auto x : p) sum += x;
        CHECK(sum == 40);
    }
}

TEST_CASE("uniform sampler frequencies over the nine size-6 trees") {
    REQUIRE(count(2, 6) == 9);
    std::map<Profile, int> freq;
    const int N = 30000;
    for (int i = 0; i < N; ++i) freq[sample_uniform(2, 6, 1000003ull * i + 17)]++;
    CHECK(freq.size() == 9);
    // four standard deviations around 1/9
    const double p = 1.0 / 9.0;
    const double bound = 4.0 * std::sqrt(p * (1 - p) / N);
    for (const auto& [prof, c] : freq) {
        double dev = static_cast<double>(c) / N - p;
        CHECK(std::fabs(dev) < bound);
    }
}

TEST_CASE("distribution csv format") {
    auto dh = dist(2, 4, Stat::height);
    CHECK(dist_csv(dh) ==
          "value,count,probability\n"
          "3,2,0.666666666667\n"
          "4,1,0.333333333333\n");
    CHECK(dist_csv(dh, 3) ==
          "value,count,probability\n"
          "3,2,0.667\n"
          "4,1,0.333\n");
    CHECK_THROWS_AS(dist_csv(dh, 0), domain_error);
    CHECK_THROWS_AS(dist_csv(dh, 61), domain_error);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(count(1, 5), domain_error);
    CHECK_THROWS_AS(count(2, -1), domain_error);
    CHECK_THROWS_AS(count(2, 2001), domain_error);
    CHECK(count(2, 130, 130) > 0);
    CHECK_THROWS_AS(dist(2, 101, Stat::width), domain_error);
    CHECK_THROWS_AS(power_sums(2, 5, Stat::height, 5), domain_error);
    CHECK_THROWS_AS(sample_uniform(2, 2001, 1), domain_error);
    CHECK_THROWS_AS(stat_from_string("leaves"), domain_error);
    for (const char* name : {"height", "distinct_depths", "last_level_leaves",
                             "width", "total_path_length"}) {
        CHECK(stat_to_string(stat_from_string(name)) == std::string(name));
    }
}
