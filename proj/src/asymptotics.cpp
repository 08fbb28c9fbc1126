#include "cantrees/asymptotics.hpp"

#include "cantrees/errors.hpp"
#include "cantrees/series.hpp"

#include "json.hpp"

#include <cstdio>
#include <sstream>
#include <string>

namespace cantrees {

namespace {

const ComplexBox kOne(Interval(1.0));

// real part of a certified value, widened by the tail bound
Interval real_part(const CertifiedValue& cv) {
    return cv.enclosure.re.inflated(cv.tail_bound);
}

double mag_of(const CertifiedValue& cv) {
    return abs(cv.enclosure).hi + cv.tail_bound;
}

// +1 / -1 when the enclosure plus tail stays on one side of zero, else 0
int certified_sign(const CertifiedValue& cv) {
    if (cv.enclosure.re.lo - cv.tail_bound > 0.0) return 1;
    if (cv.enclosure.re.hi + cv.tail_bound < 0.0) return -1;
    return 0;
}

// Sign of D(q) at a point, retrying once with a larger truncation order in
// case the tail bound is what blocks the decision.  0 = undecided.
int sign_of_D(int t, double q, std::int64_t J, std::int64_t* J_used) {
    for (std::int64_t extra : {std::int64_t{0}, std::int64_t{6}}) {
        CertifiedValue cv =
            eval_D_height(t, ComplexBox(Interval(q)), kOne, {}, J + extra);
        int s = certified_sign(cv);
        if (s != 0) {
            if (J + extra > *J_used) *J_used = J + extra;
            return s;
        }
    }
    return 0;
}

void check_cert(int t, const SingularityCert& cert) {
    if (cert.t != t)
        throw domain_error("asymptotics: certificate belongs to a different arity");
    if (!(cert.q0.lo > 0.0) || !(cert.q0.hi < 1.0) ||
        !(cert.q0.lo <= cert.q0.hi))
        throw domain_error("asymptotics: certificate carries no valid enclosure");
}

// partial derivatives c_{ag} = d^a_q d^g D at (q0, 1), either denominator
struct CTable {
    Interval c10, c01, c20, c11, c02;
};

CTable c_table(int t, const Interval& q0, bool depths) {
    ComplexBox qb{q0};
    auto get = [&](int a, int g) {
        CertifiedValue cv =
            depths ? eval_D_depths(t, qb, kOne, {a, 0, g})
                   : eval_D_height(t, qb, kOne, {a, 0, g});
        return real_part(cv);
    };
    CTable c;
    c.c10 = get(1, 0);
    c.c01 = get(0, 1);
    c.c20 = get(2, 0);
    c.c11 = get(1, 1);
    c.c02 = get(0, 2);
    return c;
}

MeanVar mean_var_from(const CTable& c, const Interval& q0, const char* what) {
    Interval mu = c.c01 / (c.c10 * q0);
    Interval num = pow_int(c.c01, 2) * c.c20 * q0 +
                   c.c01 * pow_int(c.c10, 2) * q0 -
                   2.0 * (c.c01 * c.c10 * c.c11 * q0) +
                   c.c02 * pow_int(c.c10, 2) * q0 + pow_int(c.c01, 2) * c.c10;
    Interval var = num / (pow_int(c.c10, 3) * pow_int(q0, 2));
    if (!(var.lo > 0.0)) {
        std::string msg = "asymptotics: variance enclosure for ";
        msg += what;
        msg += " is not strictly positive";
        throw domain_error(msg);
    }
    return {mu, var};
}

// (Phi b)(q0, q0^{hp(level)}, 1) from the raw slot derivatives
Interval phi_b_at_level(int t, const ComplexBox& qb, const Interval& q0,
                        int level, SigmaOperator op) {
    Interval u = level == 0 ? Interval(1.0) : pow_int(q0, hp(t, level));
    switch (op) {
        case SigmaOperator::phi_u:
            return u * real_part(eval_b_at_shifted_u(t, qb, level, {0, 1, 0}));
        case SigmaOperator::phi_u_sq:
            return u * real_part(eval_b_at_shifted_u(t, qb, level, {0, 1, 0})) +
                   pow_int(u, 2) *
                       real_part(eval_b_at_shifted_u(t, qb, level, {0, 2, 0}));
        case SigmaOperator::phi_q_phi_u:
            return q0 *
                   (u * real_part(eval_b_at_shifted_u(t, qb, level, {1, 1, 0})));
        case SigmaOperator::phi_u_phi_w:
            return u * real_part(eval_b_at_shifted_u(t, qb, level, {0, 1, 1}));
    }
    throw domain_error("asymptotics: unknown sigma-sum operator");
}

// sup of |(Phi b)(q0, u, 1)| over |u| <= xbar, for the tail
Interval phi_b_sup(int t, const ComplexBox& qb, const Interval& q0,
                   double xbar, SigmaOperator op) {
    ComplexBox ub{Interval(-xbar, xbar)};
    Interval x{xbar};
    switch (op) {
        case SigmaOperator::phi_u:
            return x * Interval(mag_of(eval_b(t, qb, ub, kOne, {0, 1, 0})));
        case SigmaOperator::phi_u_sq:
            return x * Interval(mag_of(eval_b(t, qb, ub, kOne, {0, 1, 0}))) +
                   pow_int(x, 2) *
                       Interval(mag_of(eval_b(t, qb, ub, kOne, {0, 2, 0})));
        case SigmaOperator::phi_q_phi_u:
            return Interval(q0.mag()) * x *
                   Interval(mag_of(eval_b(t, qb, ub, kOne, {1, 1, 0})));
        case SigmaOperator::phi_u_phi_w:
            return x * Interval(mag_of(eval_b(t, qb, ub, kOne, {0, 1, 1})));
    }
    throw domain_error("asymptotics: unknown sigma-sum operator");
}

Interval weight_at(SigmaWeight M, int t, std::int64_t j, const Interval& harm) {
    switch (M) {
        case SigmaWeight::one:
            return Interval(1.0);
        case SigmaWeight::linear:
            return Interval(static_cast<double>(j));
        case SigmaWeight::hp_level:
            return Interval(static_cast<double>(hp(t, static_cast<int>(j))));
        case SigmaWeight::hp_next:
            return Interval(static_cast<double>(hp(t, static_cast<int>(j) + 1)));
        case SigmaWeight::two_hp_next_minus_one:
            return Interval(
                static_cast<double>(2 * hp(t, static_cast<int>(j) + 1) - 1));
        case SigmaWeight::harmonic:
            return harm;
        case SigmaWeight::t_harmonic:
            return static_cast<double>(t) * harm;
        case SigmaWeight::two_t_harmonic:
            return static_cast<double>(2 * t) * harm;
    }
    throw domain_error("asymptotics: unknown sigma-sum weight");
}

// Closed form of sum_{j >= J} M_j Q^{j-J} for a majorant M_j >= M(j):
// the dropped part of the sum is then bounded by sup|Phi b| * P_J * G.
Interval tail_weight_sum(SigmaWeight M, int t, std::int64_t J,
                         const Interval& q0, const Interval& Q) {
    const Interval one(1.0);
    if (!(Q.hi < 1.0))
        throw domain_error(
            "asymptotics: sigma_sum tail ratio is not below 1; raise J_sigma");
    switch (M) {
        case SigmaWeight::one:
            return one / (one - Q);
        case SigmaWeight::linear:
            return Interval(static_cast<double>(J)) / (one - Q) +
                   Q / pow_int(one - Q, 2);
        default:
            break;
    }
    // remaining families grow like t^j: geometric in t*Q
    Interval tQ = static_cast<double>(t) * Q;
    if (!(tQ.hi < 1.0))
        throw domain_error(
            "asymptotics: sigma_sum tail ratio t*Q is not below 1; raise J_sigma");
    Interval tJ = pow_int(Interval(static_cast<double>(t)), J);
    Interval tm1(static_cast<double>(t - 1));
    switch (M) {
        case SigmaWeight::hp_level:
            return tJ / (tm1 * (one - tQ));
        case SigmaWeight::hp_next:
            return static_cast<double>(t) * tJ / (tm1 * (one - tQ));
        case SigmaWeight::two_hp_next_minus_one:
            return static_cast<double>(2 * t) * tJ / (tm1 * (one - tQ));
        case SigmaWeight::harmonic:
            return 2.0 * tJ / ((one - q0) * (one - tQ));
        case SigmaWeight::t_harmonic:
            return static_cast<double>(2 * t) * tJ / ((one - q0) * (one - tQ));
        case SigmaWeight::two_t_harmonic:
            return static_cast<double>(4 * t) * tJ / ((one - q0) * (one - tQ));
        default:
            throw domain_error("asymptotics: unknown sigma-sum weight");
    }
}

nlohmann::ordered_json interval_json(const Interval& iv) {
    return nlohmann::ordered_json{{"lo", iv.lo}, {"hi", iv.hi}};
}

void table_row(std::ostringstream& os, const char* name, const Interval& iv) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "  %-10s  %.16g  (width %.2e)\n", name,
                  iv.mid(), iv.width());
    os << buf;
}

}  // namespace

SingularityCert solve_q0(int t, double precision_target) {
    if (t < 2) throw domain_error("asymptotics: arity must be at least 2");
    if (!(precision_target > 0.0))
        throw domain_error("asymptotics: precision target must be positive");
    std::int64_t J = default_truncation(t);
    std::int64_t J_used = J;

    double lo = 0.5;
    double hi = 1.0 - 0.72 / t;
    if (sign_of_D(t, lo, J, &J_used) <= 0)
        throw domain_error(
            "asymptotics: cannot certify a positive denominator at q = 1/2; "
            "raise the truncation order J");
    if (sign_of_D(t, hi, J, &J_used) >= 0)
        throw domain_error(
            "asymptotics: cannot certify a negative denominator at q = "
            "1 - 0.72/t; raise the truncation order J");

    while (hi - lo > precision_target) {
        double w = hi - lo;
        bool advanced = false;
        // midpoint first; if its sign is unresolvable (the zero sits within
        // the enclosure width of the probe), the quarter points are at least
        // w/2 apart, so at most one of them can be blocked too
        for (double frac : {0.5, 0.25, 0.75}) {
            double p = lo + frac * w;
            if (p <= lo || p >= hi) continue;
            int s = sign_of_D(t, p, J, &J_used);
            if (s > 0) {
                lo = p;
                advanced = true;
                break;
            }
            if (s < 0) {
                hi = p;
                advanced = true;
                break;
            }
        }
        if (!advanced) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "asymptotics: cannot certify the sign of the "
                          "denominator near q = %.17g; raise the truncation "
                          "order J",
                          0.5 * (lo + hi));
            throw domain_error(buf);
        }
    }

    SingularityCert cert;
    cert.t = t;
    cert.q0 = Interval(lo, hi);
    cert.J_used = J_used;
    cert.D_at_lower =
        real_part(eval_D_height(t, ComplexBox(Interval(lo)), kOne, {}, J_used));
    cert.D_at_upper =
        real_part(eval_D_height(t, ComplexBox(Interval(hi)), kOne, {}, J_used));
    cert.dD_on_box =
        real_part(eval_D_height(t, ComplexBox(cert.q0), kOne, {1, 0, 0}, J));
    if (!(cert.D_at_lower.lo > 0.0) || !(cert.D_at_upper.hi < 0.0))
        throw domain_error(
            "asymptotics: endpoint signs could not be re-certified; raise the "
            "truncation order J");
    if (!(cert.dD_on_box.hi < 0.0))
        throw domain_error(
            "asymptotics: cannot certify a simple zero (derivative enclosure "
            "touches zero); raise the truncation order J");
    return cert;
}

MeanVar constants_height(int t, const SingularityCert& cert) {
    check_cert(t, cert);
    return mean_var_from(c_table(t, cert.q0, false), cert.q0, "the height");
}

MeanVar constants_depths(int t, const SingularityCert& cert) {
    check_cert(t, cert);
    return mean_var_from(c_table(t, cert.q0, true), cert.q0,
                         "the distinct depths");
}

MeanVar constants_m(int t, const SingularityCert& cert) {
    check_cert(t, cert);
    ComplexBox qb{cert.q0};
    Interval b1 = real_part(eval_b(t, qb, kOne, kOne, {0, 1, 0}));

    // The q-sensitivities of b2 and b1^2 nearly cancel in the variance, so
    // a direct interval evaluation squanders two orders of magnitude of
    // width.  Mean value form around the midpoint keeps the cancellation:
    // var(q) in var(mid) + var'(box) * (box - mid).
    double mid = cert.q0.mid();
    ComplexBox qm{Interval(mid)};
    Interval b1m = real_part(eval_b(t, qm, kOne, kOne, {0, 1, 0}));
    Interval b2m = real_part(eval_b(t, qm, kOne, kOne, {0, 2, 0}));
    Interval var_mid = b2m + b1m - pow_int(b1m, 2);
    Interval db1 = real_part(eval_b(t, qb, kOne, kOne, {1, 1, 0}));
    Interval db2 = real_part(eval_b(t, qb, kOne, kOne, {1, 2, 0}));
    Interval dvar = db2 + db1 - 2.0 * (b1 * db1);
    Interval var = var_mid + dvar * (cert.q0 - Interval(mid));
    if (!(var.lo > 0.0))
        throw domain_error(
            "asymptotics: variance enclosure for the last-level leaf count is "
            "not strictly positive");
    return {b1, var};
}

Interval constant_width(int t, const SingularityCert& cert) {
    check_cert(t, cert);
    return Interval(-1.0) / (Interval(static_cast<double>(t - 1)) * ln(cert.q0));
}

Interval sigma_sum(int t, const Interval& q0, SigmaSpec spec,
                   std::int64_t J_sigma) {
    if (t < 2) throw domain_error("asymptotics: arity must be at least 2");
    if (!(q0.lo > 0.0) || !(q0.hi < 1.0))
        throw domain_error("asymptotics: sigma_sum needs q0 inside (0, 1)");
    std::int64_t J = J_sigma > 0 ? J_sigma : default_truncation(t);
    ComplexBox qb{q0};

    Interval finite(0.0);
    Interval P(1.0);     // prod_{i=1}^{j} q0^{hp(i)} / (1 - q0^{hp(i)})
    Interval harm(0.0);  // sum_{i=1}^{j} hp(i) / (1 - q0^{hp(i)})
    for (std::int64_t j = 0; j < J; ++j) {
        if (j >= 1) {
            Interval x = pow_int(q0, hp(t, static_cast<int>(j)));
            Interval d = Interval(1.0) - x;
            if (!(d.lo > 0.0))
                throw domain_error(
                    "asymptotics: level factor denominator touches zero");
            P = P * (x / d);
            harm = harm +
                   Interval(static_cast<double>(hp(t, static_cast<int>(j)))) / d;
        }
        Interval term = weight_at(spec.M, t, j, harm) *
                        phi_b_at_level(t, qb, q0, static_cast<int>(j), spec.Phi) *
                        P;
        finite = (j % 2 == 0) ? finite + term : finite - term;
    }

    Interval xJ = pow_int(q0, hp(t, static_cast<int>(J)));
    Interval dJ = Interval(1.0) - xJ;
    if (!(dJ.lo > 0.0))
        throw domain_error("asymptotics: level factor denominator touches zero");
    Interval P_full = P * (xJ / dJ);
    Interval x_next = pow_int(q0, hp(t, static_cast<int>(J) + 1));
    Interval Q = x_next / (Interval(1.0) - x_next);
    Interval G = tail_weight_sum(spec.M, t, J, q0, Q);
    Interval S = phi_b_sup(t, qb, q0, xJ.hi, spec.Phi);
    double tail = (S * P_full * G).hi;
    return finite.inflated(tail);
}

MeanVar constants_tpl(int t, const SingularityCert& cert) {
    check_cert(t, cert);
    const Interval& q0 = cert.q0;
    CTable c = c_table(t, q0, false);

    // Phi_q = q d/dq and Phi_w = w d/dw of b at (q0,1,1); the denominator
    // derivatives carry the opposite sign
    Interval Pq = -(q0 * c.c10);
    Interval Pw = -c.c01;
    Interval Pq2 = Pq + pow_int(q0, 2) * (-c.c20);
    Interval Pqw = -(q0 * c.c11);
    Interval Pw2 = Pw + (-c.c02);

    Interval mu = Interval(static_cast<double>(t) / 2.0) * (Pw / Pq);

    using W = SigmaWeight;
    using O = SigmaOperator;
    Interval S1 = sigma_sum(t, q0, {W::one, O::phi_u});
    Interval S_qu = sigma_sum(t, q0, {W::one, O::phi_q_phi_u});
    Interval S_hp_u2 = sigma_sum(t, q0, {W::hp_level, O::phi_u_sq});
    Interval S_harm = sigma_sum(t, q0, {W::harmonic, O::phi_u});
    Interval S_2hp_u2 = sigma_sum(t, q0, {W::two_hp_next_minus_one, O::phi_u_sq});
    Interval S_2th = sigma_sum(t, q0, {W::two_t_harmonic, O::phi_u});
    Interval S_uw = sigma_sum(t, q0, {W::one, O::phi_u_phi_w});
    Interval S_j = sigma_sum(t, q0, {W::linear, O::phi_u});

    Interval S1sq = pow_int(S1, 2);
    Interval Pq3 = pow_int(Pq, 3);
    Interval Pq4 = pow_int(Pq, 4);
    Interval Pq5 = pow_int(Pq, 5);
    Interval Pw_sq = pow_int(Pw, 2);

    Interval var = (Pq2 * Pw_sq / Pq5) * S1sq - (Pqw * Pw / Pq4) * S1sq -
                   (Pw_sq / Pq4) * (S1 * (S_qu + S_hp_u2 + S_harm)) +
                   (Pw_sq / (3.0 * Pq3)) * (S_2hp_u2 + S_2th) +
                   (Pw2 / (3.0 * Pq3)) * S1sq +
                   (Pw / (3.0 * Pq3)) * (S1 * (S_uw + S_j));
    if (!(var.lo > 0.0))
        throw domain_error(
            "asymptotics: variance enclosure for the total path length is not "
            "strictly positive");
    return {mu, var};
}

Interval nu1(int t, const SingularityCert& cert) {
    check_cert(t, cert);
    ComplexBox qb{cert.q0};
    Interval num = real_part(eval_a(t, qb, kOne, kOne));
    Interval dq_b = -real_part(eval_D_height(t, qb, kOne, {1, 0, 0}));
    return num / (cert.q0 * dq_b);
}

Interval predicted_count(int t, std::int64_t n, const SingularityCert& cert) {
    if (n < 0)
        throw domain_error("asymptotics: tree size must be non-negative");
    Interval denom = pow_int(cert.q0, n);
    if (!(denom.lo > 0.0))
        throw domain_error(
            "asymptotics: q0^n underflows; size too large for a prediction");
    return nu1(t, cert) / denom;
}

ConstantsReport constants_report(int t, double precision_target, int p_count) {
    if (p_count < 1)
        throw domain_error("asymptotics: p_count must be positive");
    SingularityCert cert = solve_q0(t, precision_target);
    ConstantsReport r;
    r.t = t;
    r.q0 = cert.q0;
    MeanVar h = constants_height(t, cert);
    r.mu_h = h.mean;
    r.sigma2_h = h.var;
    MeanVar d = constants_depths(t, cert);
    r.mu_d = d.mean;
    r.sigma2_d = d.var;
    MeanVar m = constants_m(t, cert);
    r.mu_m = m.mean;
    r.sigma2_m = m.var;
    r.mu_w = constant_width(t, cert);
    MeanVar tpl = constants_tpl(t, cert);
    r.mu_tpl = tpl.mean;
    r.sigma2_tpl = tpl.var;
    r.nu1 = nu1(t, cert);
    r.p_m = p_table(t, cert.q0, p_count);
    return r;
}

std::string ConstantsReport::to_json() const {
    nlohmann::ordered_json j;
    j["t"] = t;
    j["q0"] = interval_json(q0);
    j["mu_h"] = interval_json(mu_h);
    j["sigma2_h"] = interval_json(sigma2_h);
    j["mu_d"] = interval_json(mu_d);
    j["sigma2_d"] = interval_json(sigma2_d);
    j["mu_m"] = interval_json(mu_m);
    j["sigma2_m"] = interval_json(sigma2_m);
    j["mu_w"] = interval_json(mu_w);
    j["mu_tpl"] = interval_json(mu_tpl);
    j["sigma2_tpl"] = interval_json(sigma2_tpl);
    j["nu1"] = interval_json(nu1);
    nlohmann::ordered_json pm = nlohmann::ordered_json::array();
    for (const Interval& iv : p_m) pm.push_back(interval_json(iv));
    j["p_m"] = pm;
    return j.dump(2);
}

std::string ConstantsReport::to_table() const {
    std::ostringstream os;
    os << "t = " << t << "\n";
    table_row(os, "q0", q0);
    table_row(os, "mu_h", mu_h);
    table_row(os, "sigma2_h", sigma2_h);
    table_row(os, "mu_d", mu_d);
    table_row(os, "sigma2_d", sigma2_d);
    table_row(os, "mu_m", mu_m);
    table_row(os, "sigma2_m", sigma2_m);
    table_row(os, "mu_w", mu_w);
    table_row(os, "mu_tpl", mu_tpl);
    table_row(os, "sigma2_tpl", sigma2_tpl);
    table_row(os, "nu1", nu1);
    for (std::size_t i = 0; i < p_m.size(); ++i) {
        char name[24];
        std::snprintf(name, sizeof name, "p_%zu", i + 1);
        table_row(os, name, p_m[i]);
    }
    return os.str();
}

}  // namespace cantrees
