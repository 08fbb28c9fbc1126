#pragma once

#include "cantrees/errors.hpp"
#include "cantrees/interval.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace cantrees {

// hp(j) = 1 + t + ... + t^{j-1}, the internal size of the full t-ary tree
// with j levels; hp(0) = 0.  Throws on overflow of 64-bit range.
std::int64_t hp(int t, int j);

// Truncated power series in q with exact rational coefficients c_0..c_N.
struct SeriesQ {
    std::vector<mpq_class> coeffs;

    std::int64_t order() const {
        return static_cast<std::int64_t>(coeffs.size()) - 1;
    }
    const mpq_class& at(std::int64_t n) const { return coeffs[n]; }
};

// Series counting trees by internal size split by height parity of the
// last expansion step: b collects the "grow by one level" kernel, a the
// terminated shapes, and H = a / (1 - b) counts everything.
SeriesQ series_b(int t, std::int64_t N);
SeriesQ series_a(int t, std::int64_t N);
SeriesQ series_H(int t, std::int64_t N);

SeriesQ mul(const SeriesQ& x, const SeriesQ& y, std::int64_t N);

// CSV dump: header "n,coefficient", one row per order.
std::string series_csv(const SeriesQ& s);

// Enclosures of p_m = [u^{mt}] b(q0, u, 1, 1) for m = 1..M (index m-1).
// Every u-power in b is a multiple of t, and all terms with more than
// J = max{j : hp(j) <= M} factors have u-valuation above M*t, so the
// extraction is a finite sum of interval powers of q0: the truncation
// tail folded into each coefficient is identically zero.
std::vector<Interval> p_table(int t, const Interval& q0, int M);

// Upper bound on the omitted mass sum_{m > M} p_m, as [0, bound]
// (each p_m is at most q0^m).
Interval p_tail(const Interval& q0, int M);

}  // namespace cantrees
