#include "cantrees/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace cantrees {

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

double step_down(double x, int k) {
    for (int i = 0; i < k; ++i) x = std::nextafter(x, -INF);
    return x;
}
double step_up(double x, int k) {
    for (int i = 0; i < k; ++i) x = std::nextafter(x, INF);
    return x;
}

void check_finite(double lo, double hi, const char* op) {
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw domain_error(std::string(op) + ": overflow to non-finite endpoint");
}

constexpr double MIN_NORMAL = std::numeric_limits<double>::min();

// Directed rounding emulated through error-free transforms: the TwoSum /
// fma residual tells on which side of the computed double the true result
// lies, so an endpoint is nudged only when it is not already a valid bound.
// The residuals are exact only for normal, finite results; anything else
// falls back to an unconditional nudge (non-finite values pass through and
// are caught by check_finite).

double add_down(double a, double b) {
    double s = a + b;
    if (!(std::fabs(s) < 1e300)) return std::nextafter(s, -INF);
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return err >= 0.0 ? s : std::nextafter(s, -INF);
}
double add_up(double a, double b) {
    double s = a + b;
    if (!(std::fabs(s) < 1e300)) return std::nextafter(s, INF);
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return err <= 0.0 ? s : std::nextafter(s, INF);
}

double mul_down(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    double p = a * b;
    double ap = std::fabs(p);
    if (ap >= MIN_NORMAL && std::isfinite(p)) {
        double err = std::fma(a, b, -p);
        return err >= 0.0 ? p : std::nextafter(p, -INF);
    }
    return std::nextafter(p, -INF);
}
double mul_up(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    double p = a * b;
    double ap = std::fabs(p);
    if (ap >= MIN_NORMAL && std::isfinite(p)) {
        double err = std::fma(a, b, -p);
        return err <= 0.0 ? p : std::nextafter(p, INF);
    }
    return std::nextafter(p, INF);
}

// true quotient is q - err/b with err = fma(q, b, -a), exact for normal
// operands; the sign test below decides whether q already bounds it
double div_down(double a, double b) {
    if (a == 0.0) return 0.0;
    double q = a / b;
    if (std::fabs(q) >= MIN_NORMAL && std::isfinite(q) &&
        std::fabs(a) >= MIN_NORMAL) {
        double err = std::fma(q, b, -a);
        bool true_ge_q = (b > 0.0) ? (err <= 0.0) : (err >= 0.0);
        return true_ge_q ? q : std::nextafter(q, -INF);
    }
    return std::nextafter(q, -INF);
}
double div_up(double a, double b) {
    if (a == 0.0) return 0.0;
    double q = a / b;
    if (std::fabs(q) >= MIN_NORMAL && std::isfinite(q) &&
        std::fabs(a) >= MIN_NORMAL) {
        double err = std::fma(q, b, -a);
        bool true_le_q = (b > 0.0) ? (err >= 0.0) : (err <= 0.0);
        return true_le_q ? q : std::nextafter(q, INF);
    }
    return std::nextafter(q, INF);
}

// x^n for x >= 0 by squaring, with every multiply bounded in direction
// dir (-1 down, +1 up).  Monotone in x, so directed endpoints are valid.
double pow_pos_dir(double x, long n, int dir) {
    double acc = 1.0;
    double base = x;
    auto mul = [dir](double a, double b) {
        return dir < 0 ? mul_down(a, b) : mul_up(a, b);
    };
    while (n > 0) {
        if (n & 1) acc = mul(acc, base);
        n >>= 1;
        if (n) base = mul(base, base);
    }
    if (acc < 0.0) acc = 0.0;  // directed rounding can graze below zero
    return acc;
}

}  // namespace

double next_up(double x) { return std::nextafter(x, INF); }
double next_down(double x) { return std::nextafter(x, -INF); }

Interval::Interval(double l, double h) : lo(l), hi(h) {
    if (!(lo <= hi)) throw domain_error("Interval: lo > hi");
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw domain_error("Interval: non-finite endpoint");
}

Interval Interval::hull(double a, double b) {
    return Interval(std::min(a, b), std::max(a, b));
}

Interval Interval::pi() {
    // M_PI rounds pi down, so [M_PI, next_up(M_PI)] encloses it.
    return Interval(3.141592653589793, next_up(3.141592653589793));
}

double Interval::mid() const {
    double m = 0.5 * (lo + hi);
    if (!std::isfinite(m)) m = 0.5 * lo + 0.5 * hi;
    if (m < lo) m = lo;
    if (m > hi) m = hi;
    return m;
}

double Interval::mig() const {
    if (straddles_zero()) return 0.0;
    return std::min(std::fabs(lo), std::fabs(hi));
}

Interval Interval::inflated(double r) const {
    return Interval(add_down(lo, -r), add_up(hi, r));
}

std::string Interval::str() const {
    char buf[128];
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", lo, hi);
    return buf;
}

Interval operator+(const Interval& a, const Interval& b) {
    double lo = add_down(a.lo, b.lo);
    double hi = add_up(a.hi, b.hi);
    check_finite(lo, hi, "add");
    return Interval(lo, hi);
}

Interval operator-(const Interval& a, const Interval& b) {
    double lo = add_down(a.lo, -b.hi);
    double hi = add_up(a.hi, -b.lo);
    check_finite(lo, hi, "sub");
    return Interval(lo, hi);
}

Interval operator*(const Interval& a, const Interval& b) {
    double lo = std::min(std::min(mul_down(a.lo, b.lo), mul_down(a.lo, b.hi)),
                         std::min(mul_down(a.hi, b.lo), mul_down(a.hi, b.hi)));
    double hi = std::max(std::max(mul_up(a.lo, b.lo), mul_up(a.lo, b.hi)),
                         std::max(mul_up(a.hi, b.lo), mul_up(a.hi, b.hi)));
    check_finite(lo, hi, "mul");
    return Interval(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains(0.0)) throw domain_error("div: denominator contains zero");
    double lo = std::min(std::min(div_down(a.lo, b.lo), div_down(a.lo, b.hi)),
                         std::min(div_down(a.hi, b.lo), div_down(a.hi, b.hi)));
    double hi = std::max(std::max(div_up(a.lo, b.lo), div_up(a.lo, b.hi)),
                         std::max(div_up(a.hi, b.lo), div_up(a.hi, b.hi)));
    check_finite(lo, hi, "div");
    return Interval(lo, hi);
}

Interval operator+(const Interval& a, double b) { return a + Interval(b); }
Interval operator-(const Interval& a, double b) { return a - Interval(b); }
Interval operator*(const Interval& a, double b) { return a * Interval(b); }
Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

Interval abs(const Interval& a) {
    if (a.lo >= 0.0) return a;
    if (a.hi <= 0.0) return -a;
    return Interval(0.0, std::max(-a.lo, a.hi));
}

Interval sqrt(const Interval& a) {
    if (a.lo < 0.0) throw domain_error("sqrt: negative argument");
    // std::sqrt is correctly rounded (IEEE 754); the residual r*r - a is
    // exact through fma for normal arguments and locates the true root
    auto root_dir = [](double x, int dir) {
        double r = std::sqrt(x);
        if (x >= MIN_NORMAL && std::isfinite(r)) {
            double err = std::fma(r, r, -x);
            if (dir < 0) return err <= 0.0 ? r : std::nextafter(r, -INF);
            return err >= 0.0 ? r : std::nextafter(r, INF);
        }
        if (x == 0.0) return 0.0;
        return dir < 0 ? std::nextafter(r, -INF) : std::nextafter(r, INF);
    };
    double lo = root_dir(a.lo, -1);
    double hi = root_dir(a.hi, +1);
    if (lo < 0.0) lo = 0.0;
    return Interval(lo, hi);
}

Interval pow_int(const Interval& a, long n) {
    if (n == 0) return Interval(1.0);
    if (n < 0) return 1.0 / pow_int(a, -n);
    if (n == 1) return a;
    if (n % 2 == 0) {
        // even power: monotone in |x|
        double m = a.mig(), M = a.mag();
        double lo = pow_pos_dir(m, n, -1);
        double hi = pow_pos_dir(M, n, +1);
        check_finite(lo, hi, "pow_int");
        return Interval(lo, hi);
    }
    // odd power: monotone on all of R
    auto odd_dir = [n](double x, int dir) {
        if (x >= 0.0) return pow_pos_dir(x, n, dir);
        return -pow_pos_dir(-x, n, -dir);
    };
    double lo = odd_dir(a.lo, -1);
    double hi = odd_dir(a.hi, +1);
    check_finite(lo, hi, "pow_int");
    return Interval(lo, hi);
}

Interval ln(const Interval& a) {
    if (a.lo <= 0.0) throw domain_error("ln: argument not strictly positive");
    return Interval(step_down(std::log(a.lo), 2), step_up(std::log(a.hi), 2));
}

Interval exp(const Interval& a) {
    double lo = step_down(std::exp(a.lo), 2);
    double hi = step_up(std::exp(a.hi), 2);
    if (lo < 0.0) lo = 0.0;
    check_finite(lo, hi, "exp");
    return Interval(lo, hi);
}

namespace {

// Enclosure of cos on [lo, hi] assuming libm cos is within 1 ulp.
// Endpoint values are widened by 2 ulps; interior extrema are found by
// checking which multiples of pi fall inside the interval.
Interval cos_core(double xlo, double xhi) {
    double c1 = std::cos(xlo), c2 = std::cos(xhi);
    double lo = std::min(c1, c2), hi = std::max(c1, c2);
    lo = step_down(lo, 2);
    hi = step_up(hi, 2);
    Interval pi_enc = Interval::pi();
    // multiples k*pi in [xlo, xhi]: use outward-rounded quotients
    double k_lo = std::floor(xlo / pi_enc.hi) - 1.0;
    double k_hi = std::ceil(xhi / pi_enc.lo) + 1.0;
    for (double k = k_lo; k <= k_hi; k += 1.0) {
        Interval kp = k * pi_enc;
        if (kp.hi < xlo || kp.lo > xhi) continue;
        // cos(k*pi) = +-1; the extremum may lie inside
        long ki = static_cast<long>(k);
        if (ki % 2 == 0) hi = 1.0;
        else lo = -1.0;
    }
    lo = std::max(lo, -1.0);
    hi = std::min(hi, 1.0);
    return Interval(lo, hi);
}

}  // namespace

Interval cos(const Interval& a) {
    if (a.mag() > 1e15) throw domain_error("cos: argument too large for enclosure");
    return cos_core(a.lo, a.hi);
}

Interval sin(const Interval& a) {
    if (a.mag() > 1e15) throw domain_error("sin: argument too large for enclosure");
    // sin(x) = cos(x - pi/2); do it with interval shift to stay sound
    Interval half_pi = Interval::pi() * Interval(0.5);
    Interval shifted = a - half_pi;
    return cos_core(shifted.lo, shifted.hi);
}

Interval hull(const Interval& a, const Interval& b) {
    return Interval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

Interval meet(const Interval& a, const Interval& b) {
    double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
    if (lo > hi) throw domain_error("meet: empty intersection");
    return Interval(lo, hi);
}

std::string ComplexBox::str() const {
    return re.str() + " + i*" + im.str();
}

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) {
    return {a.re + b.re, a.im + b.im};
}
ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) {
    return {a.re - b.re, a.im - b.im};
}
ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
ComplexBox operator/(const ComplexBox& a, const ComplexBox& b) {
    Interval n2 = abs2(b);
    if (n2.contains(0.0)) throw domain_error("complex div: denominator box contains zero");
    ComplexBox num = a * conj(b);
    return {num.re / n2, num.im / n2};
}
ComplexBox operator-(const ComplexBox& a) { return {-a.re, -a.im}; }
ComplexBox operator*(const Interval& a, const ComplexBox& b) {
    return {a * b.re, a * b.im};
}

Interval abs2(const ComplexBox& z) {
    return pow_int(z.re, 2) + pow_int(z.im, 2);
}

Interval abs(const ComplexBox& z) {
    Interval n2 = abs2(z);
    // the outward nudge in the component sums can push an exact-zero lower
    // endpoint just below zero; the squared modulus is nonnegative
    if (n2.lo < 0.0) n2.lo = 0.0;
    return sqrt(n2);
}

ComplexBox pow_int(const ComplexBox& z, long n) {
    if (n < 0) return ComplexBox(Interval(1.0)) / pow_int(z, -n);
    ComplexBox acc((Interval(1.0)));
    ComplexBox base = z;
    while (n > 0) {
        if (n & 1) acc = acc * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return acc;
}

ComplexBox conj(const ComplexBox& z) { return {z.re, -z.im}; }

ComplexBox unit_circle_point(const Interval& phi) {
    return {cos(phi), sin(phi)};
}

}  // namespace cantrees
