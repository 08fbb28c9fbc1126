#pragma once

#include "cantrees/genfun.hpp"
#include "cantrees/interval.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cantrees {

// Certificate that the height denominator D(q) = 1 - b(q,1,1) has exactly
// one zero in q0, and that this zero is simple.  The proof record keeps the
// certified endpoint values (opposite signs) together with an enclosure of
// dD/dq over the whole box that stays strictly negative.
struct SingularityCert {
    int t = 0;
    Interval q0;
    std::int64_t J_used = 0;
    Interval D_at_lower;  // strictly positive enclosure of D(q0.lo)
    Interval D_at_upper;  // strictly negative enclosure of D(q0.hi)
    Interval dD_on_box;   // strictly negative enclosure of D'(q0)
};

struct MeanVar {
    Interval mean;
    Interval var;
};

// Weight families M(j) and derivative operators appearing in the
// alternating level sums of the path-length variance.  hp_level is
// M(j) = hp(j); harmonic is M(j) = sum_{i<=j} hp(i)/(1 - q0^{hp(i)}).
enum class SigmaWeight {
    one,
    linear,                 // M(j) = j
    hp_level,               // M(j) = hp(j)
    hp_next,                // M(j) = hp(j+1)
    two_hp_next_minus_one,  // M(j) = 2 hp(j+1) - 1
    harmonic,
    t_harmonic,             // t times harmonic
    two_t_harmonic,         // 2t times harmonic
};

enum class SigmaOperator { phi_u, phi_u_sq, phi_q_phi_u, phi_u_phi_w };

struct SigmaSpec {
    SigmaWeight M = SigmaWeight::one;
    SigmaOperator Phi = SigmaOperator::phi_u;
};

// Certified enclosures of every limit constant for one arity, plus the
// m-distribution table p_m (index m-1, the probability that the last level
// carries m*t leaves in the limit).
struct ConstantsReport {
    int t = 0;
    Interval q0;
    Interval mu_h, sigma2_h;    // height mean/variance slope
    Interval mu_d, sigma2_d;    // distinct-depths mean/variance slope
    Interval mu_m, sigma2_m;    // last-level leaf count (limit law)
    Interval mu_w;              // width mean slope
    Interval mu_tpl, sigma2_tpl;  // total path length over n
    Interval nu1;               // amplitude of the counting sequence
    std::vector<Interval> p_m;

    std::string to_json() const;
    std::string to_table() const;
};

// Bisection on the certified sign of D(q) = 1 - b(q,1,1) over the bracket
// (1/2, 1 - 0.72/t), refined until the bracket is narrower than
// precision_target.  Signs are certified from the value enclosure plus its
// tail bound; when a midpoint cannot be decided the truncation order is
// raised twice before giving up.  Throws domain_error when a sign cannot
// be certified or the target is below double resolution.
SingularityCert solve_q0(int t, double precision_target = 1e-13);

// Height mean/variance slopes from the partial derivatives
// c_{ag} = d^a_q d^g_w D(q0, 1):
//   mu     = c01 / (c10 q0),
//   sigma2 = (c01^2 c20 q0 + c01 c10^2 q0 - 2 c01 c10 c11 q0
//             + c02 c10^2 q0 + c01^2 c10) / (c10^3 q0^2).
// A variance enclosure that is not strictly positive is a hard error.
MeanVar constants_height(int t, const SingularityCert& cert);

// Same formulas with the distinct-depths denominator (derivatives in v).
MeanVar constants_depths(int t, const SingularityCert& cert);

// Limit law of the last-level leaf count m(T): P(u) = b(q0, u^{1/t}) is a
// probability generating function with b(q0,1) = 1, so
//   mu_m     = d_u b(q0,1),
//   sigma2_m = d^2_u b(q0,1) + mu_m - mu_m^2.
MeanVar constants_m(int t, const SingularityCert& cert);

// Width mean slope mu_w = -1 / ((t-1) ln q0).
Interval constant_width(int t, const SingularityCert& cert);

// Alternating level sum
//   Sigma(q0, M, Phi) = sum_{j>=0} (-1)^j M(j) (Phi b)(q0, q0^{hp(j)}, 1)
//                       prod_{i=1}^{j} q0^{hp(i)}/(1-q0^{hp(i)}),
// truncated at J_sigma terms with a certified tail bound (geometric
// majorant per weight family).  J_sigma <= 0 selects the default order.
Interval sigma_sum(int t, const Interval& q0, SigmaSpec spec,
                   std::int64_t J_sigma = 0);

// Total path length over n: mu_tpl = (t/2) mu_h, and sigma2_tpl from the
// closed combination of Sigma sums and the Phi-derivatives of b at
// (q0,1,1).  Positivity of the variance enclosure is enforced.
MeanVar constants_tpl(int t, const SingularityCert& cert);

// Amplitude nu(1) = a(q0,1,1) / (q0 d_q b(q0,1,1)) of the counting
// sequence: the number of size-n trees is asymptotically nu(1) q0^{-n}.
Interval nu1(int t, const SingularityCert& cert);

// nu(1) / q0^n.  Underflows (and throws) once q0^n falls below the
// smallest positive double; fine for n up to about a thousand.
Interval predicted_count(int t, std::int64_t n, const SingularityCert& cert);

// Solve for q0 and assemble every constant plus the first p_count entries
// of the p_m table.  Pure once the certificate exists, so reports for
// different arities can be built concurrently.
ConstantsReport constants_report(int t, double precision_target = 1e-13,
                                 int p_count = 40);

}  // namespace cantrees
