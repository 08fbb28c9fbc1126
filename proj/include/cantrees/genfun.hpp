#pragma once

#include "cantrees/interval.hpp"

#include <cstdint>

namespace cantrees {

// Certified evaluation of the truncated denominator/numerator sums of the
// counting generating function and of their partial derivatives.
//
// The series in question are alternating product sums over levels,
//
//   b(q,u,w) = sum_{j>=1} (-1)^{j-1} w^j prod_{i=1}^{j} x_i/(1-x_i),
//   a(q,u,w) = sum_{j>=0} (-1)^j w^j q^{hp(j)} u^{t^j}
//                prod_{i=1}^{j} x_i/(1-x_i),
//
// with x_i = q^{hp(i)} u^{t^i}.  An evaluation computes the first J-1
// (resp. J) terms in rectangle arithmetic and attaches an explicit bound on
// everything that was dropped, so the exact value of the infinite sum lies
// in `enclosure` inflated by `tail_bound` in each component.
struct CertifiedValue {
    ComplexBox enclosure;
    double tail_bound = 0.0;
    std::int64_t J = 0;  // truncation order actually used
};

// Mixed partial derivative order: alpha in q, beta in u, gamma in w (or in
// v for the depth denominator).  Orders above 2 are not supported; beta
// must be 0 for the operations that pin u to 1.
struct DerivOrder {
    int alpha = 0;
    int beta = 0;
    int gamma = 0;
};

// Default truncation order: 14 at t=2, decreasing to 4 for t >= 8.  The
// product terms shrink doubly exponentially in j, so these defaults already
// push the tail far below the widths rectangle arithmetic can resolve.
int default_truncation(int t);

// Partial derivative d^alpha_q d^beta_u d^gamma_w of b at the given boxes.
// Pass J <= 0 to use default_truncation(t).
//
// Preconditions (violations throw domain_error naming the failed one):
//   value (deriv = 0):       |q u^{t-1}| < 1 and tail ratio Q < 1;
//   derivatives, u = 1:      |q| <= 2/3, |w| <= 3/2 (closed-form constants);
//   derivatives, general u:  |q| <= 0.62, |u| <= 1, |w| <= 3/2 (Cauchy bound
//                            on the polydisc inflated by 1/25, 1/(20t), 1/6).
CertifiedValue eval_b(int t, const ComplexBox& q, const ComplexBox& u,
                      const ComplexBox& w, DerivOrder deriv = {},
                      std::int64_t J = 0);

// Numerator sum a at the given boxes, value only (no derivatives; the one
// downstream consumer needs a(q0,1,1)).  Same tail skeleton as the value
// case of eval_b with one extra head factor.
CertifiedValue eval_a(int t, const ComplexBox& q, const ComplexBox& u,
                      const ComplexBox& w, std::int64_t J = 0);

// Height denominator D(q,w) = 1 - b(q,1,w): the value case returns
// 1 - (finite part), derivatives return the negated b-partials, and the
// tail bound is inherited unchanged.  deriv.beta must be 0.
CertifiedValue eval_D_height(int t, const ComplexBox& q, const ComplexBox& w,
                             DerivOrder deriv = {}, std::int64_t J = 0);

// Depth denominator D(q,v) = 1 - b~(q,v) where
//
//   b~(q,v) = sum_{j>=1} v y(x_j) prod_{i=1}^{j-1} (1 - v/(1-x_i)),
//
// x_i = q^{hp(i)}, y(x) = x/(1-x).  DerivOrder.gamma is the order in v;
// beta must be 0.  Value case requires |q| < 1; derivatives require
// |q| <= 2/3 and |v| <= 3/2.
CertifiedValue eval_D_depths(int t, const ComplexBox& q, const ComplexBox& v,
                             DerivOrder deriv = {}, std::int64_t J = 0);

// eval_b with the u slot pinned to q^{hp(level)} and w pinned to 1: the
// building block of the level-shifted sums in the path-length variance.
// Returns the raw partial derivative with respect to the u slot (and q, w);
// callers compose the q^{hp(level)} factors themselves.
CertifiedValue eval_b_at_shifted_u(int t, const ComplexBox& q, int level,
                                   DerivOrder deriv = {}, std::int64_t J = 0);

}  // namespace cantrees
