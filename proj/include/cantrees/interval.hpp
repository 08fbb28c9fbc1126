#pragma once

#include "cantrees/errors.hpp"

#include <cmath>
#include <string>

namespace cantrees {

double next_up(double x);
double next_down(double x);

// Closed interval [lo, hi] of binary64 endpoints.  Every operation returns
// an enclosure of the exact mathematical result: endpoint arithmetic runs in
// round-to-nearest and is then nudged one representable step outward.
// ln/exp/cos/sin assume the platform libm is faithfully rounded and nudge
// two steps instead (the single trust assumption of the whole artifact).
class Interval {
public:
    double lo, hi;

    Interval() : lo(0.0), hi(0.0) {}
    explicit Interval(double x) : lo(x), hi(x) {}
    Interval(double l, double h);

    static Interval hull(double a, double b);
    static Interval pi();

    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool strictly_contains(const Interval& o) const { return lo < o.lo && o.hi < hi; }
    bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
    double width() const { return hi - lo; }
    double mid() const;
    double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
    // largest lower bound on |x| over the interval (0 if it straddles 0)
    double mig() const;
    bool is_positive() const { return lo > 0.0; }
    bool is_negative() const { return hi < 0.0; }
    bool straddles_zero() const { return lo <= 0.0 && 0.0 <= hi; }

    Interval operator-() const { return Interval(-hi, -lo); }
    Interval inflated(double r) const;

    std::string str() const;  // "[lo, hi]" with 17 significant digits
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
Interval operator+(const Interval& a, double b);
Interval operator-(const Interval& a, double b);
Interval operator*(const Interval& a, double b);
Interval operator+(double a, const Interval& b);
Interval operator-(double a, const Interval& b);
Interval operator*(double a, const Interval& b);
Interval operator/(double a, const Interval& b);

Interval abs(const Interval& a);
Interval sqrt(const Interval& a);
Interval pow_int(const Interval& a, long n);
Interval ln(const Interval& a);
Interval exp(const Interval& a);
Interval cos(const Interval& a);
Interval sin(const Interval& a);
Interval hull(const Interval& a, const Interval& b);
// intersection; throws domain_error if empty
Interval meet(const Interval& a, const Interval& b);

// Axis-aligned rectangle enclosing a complex value.
class ComplexBox {
public:
    Interval re, im;

    ComplexBox() = default;
    ComplexBox(const Interval& r, const Interval& i) : re(r), im(i) {}
    explicit ComplexBox(const Interval& r) : re(r), im(0.0) {}
    explicit ComplexBox(double r) : re(r), im(0.0) {}

    bool contains(const ComplexBox& o) const {
        return re.contains(o.re) && im.contains(o.im);
    }
    bool strictly_contains(const ComplexBox& o) const {
        return re.strictly_contains(o.re) && im.strictly_contains(o.im);
    }
    bool contains_zero() const { return re.contains(0.0) && im.contains(0.0); }
    ComplexBox inflated(double r) const { return {re.inflated(r), im.inflated(r)}; }

    std::string str() const;
};

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator-(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator*(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator/(const ComplexBox& a, const ComplexBox& b);
ComplexBox operator-(const ComplexBox& a);
ComplexBox operator*(const Interval& a, const ComplexBox& b);

Interval abs(const ComplexBox& z);
// |z|^2 as an interval (cheaper and tighter than abs when comparing radii)
Interval abs2(const ComplexBox& z);
ComplexBox pow_int(const ComplexBox& z, long n);
ComplexBox conj(const ComplexBox& z);

// Box containing e^{i phi} for every phi in the interval.
ComplexBox unit_circle_point(const Interval& phi);

}  // namespace cantrees
