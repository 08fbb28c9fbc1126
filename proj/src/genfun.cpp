#include "cantrees/genfun.hpp"

#include "cantrees/errors.hpp"
#include "cantrees/series.hpp"

#include <string>

namespace cantrees {

namespace {

const ComplexBox kOne(Interval(1.0));

// Partial-derivative table of one factor, orders 0..2 in each of two slots.
struct Tab {
    ComplexBox d[3][3];
};

// falling factorial n(n-1)...(n-k+1) for k <= 2, exact in doubles
Interval fall(std::int64_t n, int k) {
    if (k == 0) return Interval(1.0);
    if (n < k) return Interval(0.0);
    if (n > (std::int64_t{1} << 53))
        throw domain_error("genfun: level exponent exceeds exact double range");
    if (k == 1) return Interval(static_cast<double>(n));
    return Interval(static_cast<double>(n)) *
           Interval(static_cast<double>(n - 1));
}

double fact(int k) { return k == 2 ? 2.0 : 1.0; }

void check_orders(DerivOrder d) {
    if (d.alpha < 0 || d.alpha > 2 || d.beta < 0 || d.beta > 2 ||
        d.gamma < 0 || d.gamma > 2)
        throw domain_error("genfun: derivative orders are limited to 0..2");
}

bool is_exact_one(const ComplexBox& u) {
    return u.re.lo == 1.0 && u.re.hi == 1.0 && u.im.lo == 0.0 &&
           u.im.hi == 0.0;
}

// Upper bound on |z| over the box.  Exact for real boxes, where the outward
// nudging of abs() would otherwise push a point on a domain boundary (such
// as u = 1) just past its gate.
double sup_mod(const ComplexBox& z) {
    if (z.im.lo == 0.0 && z.im.hi == 0.0) return z.re.mag();
    return abs(z).hi;
}

ComplexBox inv(const ComplexBox& den, const char* what) {
    if (!(abs2(den).lo > 0.0))
        throw domain_error(std::string("genfun: enclosure of ") + what +
                           " touches zero; tighten the input boxes");
    return kOne / den;
}

// product rule for derivative tables
Tab mul_tab(const Tab& A, const Tab& B) {
    static const double BC[3][3] = {{1, 0, 0}, {1, 1, 0}, {1, 2, 1}};
    Tab R;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b) {
            ComplexBox acc;
            for (int a2 = 0; a2 <= a; ++a2)
                for (int b2 = 0; b2 <= b; ++b2)
                    acc = acc + Interval(BC[a][a2] * BC[b][b2]) *
                                    (A.d[a2][b2] * B.d[a - a2][b - b2]);
            R.d[a][b] = acc;
        }
    return R;
}

// X^n by binary exponentiation under the table product rule
Tab pow_tab(Tab X, int n) {
    Tab R;
    R.d[0][0] = kOne;
    while (n > 0) {
        if (n & 1) R = mul_tab(R, X);
        n >>= 1;
        if (n) X = mul_tab(X, X);
    }
    return R;
}

// derivative table of x_1 = q u^t in (q,u)
Tab x1_tab(int t, const ComplexBox& q, const ComplexBox& u) {
    Tab X;
    for (int b = 0; b <= 2; ++b) {
        Interval fm = fall(t, b);
        if (fm.hi == 0.0) continue;
        ComplexBox ub = fm * pow_int(u, t - b);
        X.d[0][b] = q * ub;
        X.d[1][b] = ub;
    }
    return X;
}

// Advance the level table: x_{i+1} = q x_i^t.  Powering the recurrence
// instead of the monomial q^{hp(i)} u^{t^i} keeps intermediates bounded by
// max(|x_1|, 1) even when |u| > 1 sends u^{t^i} alone out of double range.
Tab next_x_tab(int t, const ComplexBox& q, const Tab& X) {
    Tab Q;
    Q.d[0][0] = q;
    Q.d[1][0] = kOne;
    return mul_tab(Q, pow_tab(X, t));
}

// Composition through y = x/(1-x) given the table of x: chain rule with
// y' = s^2, y'' = 2s^3, y''' = 6s^4, y'''' = 24s^5, s = 1/(1-x).
Tab y_from_x_tab(const Tab& X) {
    const ComplexBox& x = X.d[0][0];
    const ComplexBox& X10 = X.d[1][0];
    const ComplexBox& X01 = X.d[0][1];
    const ComplexBox& X11 = X.d[1][1];
    const ComplexBox& X20 = X.d[2][0];
    const ComplexBox& X02 = X.d[0][2];
    const ComplexBox& X21 = X.d[2][1];
    const ComplexBox& X12 = X.d[1][2];
    const ComplexBox& X22 = X.d[2][2];

    ComplexBox s = inv(kOne - x, "1 - q^{hp(i)}·u^{t^i}");
    ComplexBox s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    const Interval two(2.0), four(4.0), six(6.0), twentyfour(24.0);

    Tab Y;
    Y.d[0][0] = x * s;
    Y.d[1][0] = s2 * X10;
    Y.d[0][1] = s2 * X01;
    Y.d[1][1] = two * (s3 * (X10 * X01)) + s2 * X11;
    Y.d[2][0] = two * (s3 * (X10 * X10)) + s2 * X20;
    Y.d[0][2] = two * (s3 * (X01 * X01)) + s2 * X02;
    Y.d[2][1] = six * (s4 * (X10 * X10 * X01)) +
                two * (s3 * (two * (X10 * X11) + X20 * X01)) + s2 * X21;
    Y.d[1][2] = six * (s4 * (X10 * (X01 * X01))) +
                two * (s3 * (two * (X01 * X11) + X02 * X10)) + s2 * X12;
    Y.d[2][2] = twentyfour * (s5 * ((X10 * X10) * (X01 * X01))) +
                six * (s4 * (X10 * X10 * X02 + four * (X10 * (X01 * X11)) +
                             X01 * X01 * X20)) +
                two * (s3 * (two * (X11 * X11) + two * (X10 * X12) +
                             two * (X01 * X21) + X20 * X02)) +
                s2 * X22;
    return Y;
}

// Shared q-derivatives at one level of the depth-marked sum: s = 1/(1-x),
// x = q^{hp(i)}.  Both factor shapes below are affine in s, and y = s - 1,
// so one set of s-partials serves head and gate alike.
struct VParts {
    ComplexBox s, sq, sqq;  // s and its first/second q-derivatives
};

VParts v_parts(int t, const ComplexBox& q, int i) {
    const std::int64_t h = hp(t, i);
    ComplexBox x = pow_int(q, h);
    ComplexBox s = inv(kOne - x, "1 - q^{hp(i)}");
    ComplexBox s2 = s * s, s3 = s2 * s;
    ComplexBox xq = fall(h, 1) * pow_int(q, h - 1);
    ComplexBox xqq;
    if (h >= 2) xqq = fall(h, 2) * pow_int(q, h - 2);
    VParts P;
    P.s = s;
    P.sq = s2 * xq;
    P.sqq = Interval(2.0) * (s3 * (xq * xq)) + s2 * xqq;
    return P;
}

// head of term j: v·x/(1-x) = v·(s-1), partials in (q,v)
Tab depth_head_tab(const VParts& P, const ComplexBox& v) {
    ComplexBox y = P.s - kOne;
    Tab H;
    H.d[0][0] = v * y;
    H.d[1][0] = v * P.sq;
    H.d[2][0] = v * P.sqq;
    H.d[0][1] = y;
    H.d[1][1] = P.sq;
    H.d[2][1] = P.sqq;
    return H;
}

// trailing factor of terms j' > i: 1 - v/(1-x) = 1 - v·s
Tab depth_factor_tab(const VParts& P, const ComplexBox& v) {
    Tab G;
    G.d[0][0] = kOne - v * P.s;
    G.d[1][0] = -(v * P.sq);
    G.d[2][0] = -(v * P.sqq);
    G.d[0][1] = -P.s;
    G.d[1][1] = -P.sq;
    G.d[2][1] = -P.sqq;
    return G;
}

// Dropped-term bound for the value of b (and of a when with_head is set):
// |w|^J · prod_{i<=J} xbar_i/|1-x_i| / (1-Q) with Q = |w|·xbar_{J+1}/(1-xbar_{J+1}),
// xbar_i = |q|^{hp(i)}|u|^{t^i}.  Needs |q·u^{t-1}| < 1 so the xbar_i decrease.
double tail_value_uw(int t, const ComplexBox& q, const ComplexBox& u,
                     const ComplexBox& w, std::int64_t J, bool with_head) {
    Interval aq(sup_mod(q)), au(sup_mod(u)), aw(sup_mod(w));
    Interval guard = aq * pow_int(au, t - 1);
    if (!(guard.hi < 1.0))
        throw domain_error("genfun: tail bound requires |q|·|u|^(t-1) < 1");
    Interval B = pow_int(aw, J);
    Interval xbar_next, xbar;
    ComplexBox xi;
    for (std::int64_t i = 1; i <= J + 1; ++i) {
        // level recurrence x_{i+1} = q x_i^t keeps intermediates in range
        xbar = (i == 1) ? aq * pow_int(au, t) : aq * pow_int(xbar, t);
        if (i <= J) {
            xi = (i == 1) ? q * pow_int(u, t) : q * pow_int(xi, t);
            ComplexBox dz = kOne - xi;
            if (!(abs2(dz).lo > 0.0))
                throw domain_error(
                    "genfun: enclosure of 1 - q^{hp(i)}·u^{t^i} touches zero; "
                    "tighten the input boxes");
            B = B * (xbar / abs(dz));
            if (with_head && i == J) B = B * xbar;
        } else {
            xbar_next = xbar;
        }
    }
    if (!(xbar_next.hi < 1.0))
        throw domain_error("genfun: tail_ratio_uw >= 1 at J=" +
                           std::to_string(J) + " (truncation order too small)");
    Interval Q = aw * (xbar_next / (Interval(1.0) - xbar_next));
    if (!(Q.hi < 1.0))
        throw domain_error("genfun: tail_ratio_uw >= 1 at J=" +
                           std::to_string(J) + " (truncation order too small)");
    B = B / (Interval(1.0) - Q);
    return B.hi;
}

// Dropped-term bound for derivatives at the real point u = 1:
// alpha! gamma! 6^{alpha+gamma} (5/3)^J prod_{i<=J} 1/((6/5)^{hp(i)} - 1) / (1-Q).
// The reciprocal factors are computed as p/(1-p), p = (5/6)^{hp(i)}, which
// survives the huge exponents that would overflow (6/5)^{hp(i)} directly.
double tail_deriv_u1(int t, const ComplexBox& q, const ComplexBox& w,
                     std::int64_t J, int alpha, int gamma) {
    Interval aq(sup_mod(q)), aw(sup_mod(w));
    if (!(aq.hi <= 2.0 / 3.0))
        throw domain_error(
            "genfun: derivative tail bound at u=1 requires |q| <= 2/3");
    if (!(aw.hi <= 1.5))
        throw domain_error("genfun: derivative tail bound requires |w| <= 3/2");
    const Interval p56 = Interval(5.0) / Interval(6.0);
    const Interval f53 = Interval(5.0) / Interval(3.0);
    Interval B = Interval(fact(alpha) * fact(gamma)) *
                 pow_int(Interval(6.0), alpha + gamma) * pow_int(f53, J);
    for (std::int64_t i = 1; i <= J; ++i) {
        Interval p = pow_int(p56, hp(t, static_cast<int>(i)));
        B = B * (p / (Interval(1.0) - p));
    }
    Interval pn = pow_int(p56, hp(t, static_cast<int>(J) + 1));
    Interval Q = f53 * (pn / (Interval(1.0) - pn));
    if (!(Q.hi < 1.0))
        throw domain_error("genfun: tail_ratio_uw >= 1 at J=" +
                           std::to_string(J) + " (truncation order too small)");
    return (B / (Interval(1.0) - Q)).hi;
}

// Dropped-term bound for derivatives at general u with |u| <= 1: Cauchy's
// estimate on the polydisc of radii 1/25 in q, 1/(20t) in u, 1/6 in w around
// the evaluation point.  The dropped tail is analytic there because every
// level factor stays below 1 in modulus at the inflated moduli, and its
// supremum is bounded by the value-case estimate at those moduli.
double tail_deriv_radii(int t, const ComplexBox& q, const ComplexBox& u,
                        const ComplexBox& w, std::int64_t J, int alpha,
                        int beta, int gamma) {
    Interval aq(sup_mod(q)), au(sup_mod(u)), aw(sup_mod(w));
    if (!(aq.hi <= 0.62))
        throw domain_error(
            "genfun: u-derivative tail bound requires |q| <= 0.62");
    if (!(au.hi <= 1.0))
        throw domain_error("genfun: u-derivative tail bound requires |u| <= 1");
    if (!(aw.hi <= 1.5))
        throw domain_error("genfun: derivative tail bound requires |w| <= 3/2");
    Interval qb = aq + Interval(1.0) / Interval(25.0);
    Interval ub = au + Interval(1.0) / Interval(20.0 * t);
    Interval wb = aw + Interval(1.0) / Interval(6.0);
    Interval guard = qb * pow_int(ub, t - 1);
    if (!(guard.hi < 1.0))
        throw domain_error(
            "genfun: inflated evaluation polydisc leaves the convergence "
            "region");
    Interval V = pow_int(wb, J);
    Interval xbar_next, xb;
    for (std::int64_t i = 1; i <= J + 1; ++i) {
        xb = (i == 1) ? qb * pow_int(ub, t) : qb * pow_int(xb, t);
        if (!(xb.hi < 1.0))
            throw domain_error(
                "genfun: inflated level factor reaches modulus 1; shrink the "
                "input boxes");
        if (i <= J)
            V = V * (xb / (Interval(1.0) - xb));
        else
            xbar_next = xb;
    }
    Interval Q = wb * (xbar_next / (Interval(1.0) - xbar_next));
    if (!(Q.hi < 1.0))
        throw domain_error("genfun: tail_ratio_uw >= 1 at J=" +
                           std::to_string(J) + " (truncation order too small)");
    V = V / (Interval(1.0) - Q);
    Interval C = Interval(fact(alpha) * fact(beta) * fact(gamma)) *
                 pow_int(Interval(25.0), alpha) *
                 pow_int(Interval(20.0 * t), beta) *
                 pow_int(Interval(6.0), gamma);
    return (C * V).hi;
}

// Dropped-term bound for the value of the depth-marked sum:
// [|v||q|^{hp(J)}/|1-q^{hp(J)}|] · prod_{i<J} (1 + |v|/|1-q^{hp(i)}|) / (1-Q),
// Q = |q|^{t^J} (1 + |v|/(1-|q|^{hp(J)})).
double tail_value_v(int t, const ComplexBox& q, const ComplexBox& v,
                    std::int64_t J) {
    Interval aq(sup_mod(q)), av(sup_mod(v));
    if (!(aq.hi < 1.0))
        throw domain_error(
            "genfun: depth-denominator tail bound requires |q| < 1");
    Interval B = Interval(1.0);
    for (std::int64_t i = 1; i < J; ++i) {
        ComplexBox dz = kOne - pow_int(q, hp(t, static_cast<int>(i)));
        if (!(abs2(dz).lo > 0.0))
            throw domain_error(
                "genfun: enclosure of 1 - q^{hp(i)} touches zero; tighten the "
                "input boxes");
        B = B * (Interval(1.0) + av / abs(dz));
    }
    std::int64_t hJ = hp(t, static_cast<int>(J));
    std::int64_t m = hp(t, static_cast<int>(J) + 1) - hJ;  // t^J
    ComplexBox dzJ = kOne - pow_int(q, hJ);
    if (!(abs2(dzJ).lo > 0.0))
        throw domain_error(
            "genfun: enclosure of 1 - q^{hp(J)} touches zero; tighten the "
            "input boxes");
    B = B * (av * (pow_int(aq, hJ) / abs(dzJ)));
    Interval qhJ = pow_int(aq, hJ);
    if (!(qhJ.hi < 1.0))
        throw domain_error("genfun: tail_ratio_v >= 1 at J=" +
                           std::to_string(J) + " (truncation order too small)");
    Interval Q =
        pow_int(aq, m) * (Interval(1.0) + av / (Interval(1.0) - qhJ));
    if (!(Q.hi < 1.0))
        throw domain_error("genfun: tail_ratio_v >= 1 at J=" +
                           std::to_string(J) + " (truncation order too small)");
    return (B / (Interval(1.0) - Q)).hi;
}

// Derivative analogue of the depth tail bound:
// alpha! gamma! 6^{alpha+gamma} [(5/3)/((6/5)^{hp(J)}-1)]
//   · prod_{i<J} (1 + (5/3)/(1-(5/6)^{hp(i)})) / (1-Q),
// Q = (5/6)^{t^J} (1 + (5/3)/(1-(5/6)^{hp(J)})).
double tail_deriv_v(int t, const ComplexBox& q, const ComplexBox& v,
                    std::int64_t J, int alpha, int gamma) {
    Interval aq(sup_mod(q)), av(sup_mod(v));
    if (!(aq.hi <= 2.0 / 3.0))
        throw domain_error(
            "genfun: depth-denominator derivative tail bound requires |q| <= "
            "2/3");
    if (!(av.hi <= 1.5))
        throw domain_error(
            "genfun: depth-denominator derivative tail bound requires |v| <= "
            "3/2");
    const Interval p56 = Interval(5.0) / Interval(6.0);
    const Interval f53 = Interval(5.0) / Interval(3.0);
    Interval B = Interval(fact(alpha) * fact(gamma)) *
                 pow_int(Interval(6.0), alpha + gamma);
    for (std::int64_t i = 1; i < J; ++i) {
        Interval p = pow_int(p56, hp(t, static_cast<int>(i)));
        B = B * (Interval(1.0) + f53 / (Interval(1.0) - p));
    }
    std::int64_t hJ = hp(t, static_cast<int>(J));
    std::int64_t m = hp(t, static_cast<int>(J) + 1) - hJ;
    Interval pJ = pow_int(p56, hJ);
    B = B * (f53 * (pJ / (Interval(1.0) - pJ)));
    Interval Q =
        pow_int(p56, m) * (Interval(1.0) + f53 / (Interval(1.0) - pJ));
    if (!(Q.hi < 1.0))
        throw domain_error("genfun: tail_ratio_v >= 1 at J=" +
                           std::to_string(J) + " (truncation order too small)");
    return (B / (Interval(1.0) - Q)).hi;
}

std::int64_t resolve_J(int t, std::int64_t J) {
    return J <= 0 ? default_truncation(t) : J;
}

}  // namespace

int default_truncation(int t) {
    if (t < 2) throw domain_error("genfun: arity must be at least 2");
    switch (t) {
        case 2: return 14;
        case 3: return 10;
        case 4: return 8;
        case 5: return 7;
        case 6: return 6;
        case 7: return 5;
        default: return 4;
    }
}

CertifiedValue eval_b(int t, const ComplexBox& q, const ComplexBox& u,
                      const ComplexBox& w, DerivOrder deriv, std::int64_t J) {
    if (t < 2) throw domain_error("genfun: arity must be at least 2");
    check_orders(deriv);
    J = resolve_J(t, J);

    double tail;
    if (deriv.alpha + deriv.beta + deriv.gamma == 0)
        tail = tail_value_uw(t, q, u, w, J, false);
    else if (deriv.beta == 0 && is_exact_one(u))
        tail = tail_deriv_u1(t, q, w, J, deriv.alpha, deriv.gamma);
    else
        tail = tail_deriv_radii(t, q, u, w, J, deriv.alpha, deriv.beta,
                                deriv.gamma);

    Tab P;
    P.d[0][0] = kOne;
    Tab X;
    ComplexBox res;
    for (std::int64_t j = 1; j < J; ++j) {
        X = (j == 1) ? x1_tab(t, q, u) : next_x_tab(t, q, X);
        P = mul_tab(P, y_from_x_tab(X));
        Interval cf = fall(j, deriv.gamma);
        if (cf.hi == 0.0) continue;
        ComplexBox term =
            cf * (pow_int(w, j - deriv.gamma) * P.d[deriv.alpha][deriv.beta]);
        if (j % 2 == 1)
            res = res + term;
        else
            res = res - term;
    }
    return {res, tail, J};
}

CertifiedValue eval_a(int t, const ComplexBox& q, const ComplexBox& u,
                      const ComplexBox& w, std::int64_t J) {
    if (t < 2) throw domain_error("genfun: arity must be at least 2");
    J = resolve_J(t, J);
    double tail = tail_value_uw(t, q, u, w, J, true);

    ComplexBox res = u;  // j = 0 term: q^{hp(0)} u^{t^0} = u
    ComplexBox P = kOne;
    ComplexBox xj;
    for (std::int64_t j = 1; j < J; ++j) {
        xj = (j == 1) ? q * pow_int(u, t) : q * pow_int(xj, t);
        P = P * (xj * inv(kOne - xj, "1 - q^{hp(i)}·u^{t^i}"));
        ComplexBox term = pow_int(w, j) * (xj * P);
        if (j % 2 == 1)
            res = res - term;
        else
            res = res + term;
    }
    return {res, tail, J};
}

CertifiedValue eval_D_height(int t, const ComplexBox& q, const ComplexBox& w,
                             DerivOrder deriv, std::int64_t J) {
    check_orders(deriv);
    if (deriv.beta != 0)
        throw domain_error("genfun: u is pinned to 1 here; beta must be 0");
    CertifiedValue r = eval_b(t, q, kOne, w, deriv, J);
    if (deriv.alpha == 0 && deriv.gamma == 0)
        r.enclosure = kOne - r.enclosure;
    else
        r.enclosure = -r.enclosure;
    return r;
}

CertifiedValue eval_D_depths(int t, const ComplexBox& q, const ComplexBox& v,
                             DerivOrder deriv, std::int64_t J) {
    if (t < 2) throw domain_error("genfun: arity must be at least 2");
    check_orders(deriv);
    if (deriv.beta != 0)
        throw domain_error("genfun: u is pinned to 1 here; beta must be 0");
    J = resolve_J(t, J);

    double tail = (deriv.alpha + deriv.gamma == 0)
                      ? tail_value_v(t, q, v, J)
                      : tail_deriv_v(t, q, v, J, deriv.alpha, deriv.gamma);

    Tab P;
    P.d[0][0] = kOne;
    ComplexBox res;
    for (std::int64_t j = 1; j < J; ++j) {
        VParts vp = v_parts(t, q, static_cast<int>(j));
        res = res + mul_tab(P, depth_head_tab(vp, v)).d[deriv.alpha][deriv.gamma];
        P = mul_tab(P, depth_factor_tab(vp, v));
    }
    if (deriv.alpha == 0 && deriv.gamma == 0)
        res = kOne - res;
    else
        res = -res;
    return {res, tail, J};
}

CertifiedValue eval_b_at_shifted_u(int t, const ComplexBox& q, int level,
                                   DerivOrder deriv, std::int64_t J) {
    if (level < 0)
        throw domain_error("genfun: level index must be non-negative");
    ComplexBox u = level == 0 ? kOne : pow_int(q, hp(t, level));
    return eval_b(t, q, u, kOne, deriv, J);
}

}  // namespace cantrees
