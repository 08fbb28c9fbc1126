#include "cantrees/locallimit.hpp"

#include "cantrees/errors.hpp"
#include "cantrees/genfun.hpp"
#include "cantrees/series.hpp"
#include "cantrees/util.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace cantrees {
namespace {

using cplx = std::complex<double>;

constexpr const char* kShrinkMsg =
    "locallimit: continuation step could not be certified; narrow the phase "
    "interval";

void check_cert(int t, const SingularityCert& cert) {
    if (cert.t != t)
        throw domain_error(
            "locallimit: certificate belongs to a different arity");
    if (!(cert.q0.lo > 0.0) || !(cert.q0.hi < 1.0) || cert.q0.lo > cert.q0.hi)
        throw domain_error(
            "locallimit: certificate carries no valid enclosure");
}

void check_phase(const Interval& phi) {
    // slightly beyond pi so that next_up(M_PI) still covers the true pi
    if (!(phi.lo >= -3.1416 && phi.hi <= 3.1416))
        throw domain_error("locallimit: phase must lie within [-pi, pi]");
}

ComplexBox eval_D(int t, ScanMode mode, const ComplexBox& q,
                  const ComplexBox& w, DerivOrder d = {}) {
    CertifiedValue cv = mode == ScanMode::height ? eval_D_height(t, q, w, d)
                                                 : eval_D_depths(t, q, w, d);
    return cv.enclosure.inflated(cv.tail_bound);
}

// Double-precision value and q-derivative of the truncated denominator,
// used only to seed Newton; certification never trusts these numbers.
void f_approx(int t, ScanMode mode, cplx q, cplx w, cplx& f, cplx& fq) {
    const int J = default_truncation(t) + 2;
    cplx x = q, xd = 1.0;
    f = 1.0;
    fq = 0.0;
    if (mode == ScanMode::height) {
        cplx P = 1.0, Pd = 0.0, wp = 1.0;
        double sign = -1.0;
        for (int j = 1; j <= J; ++j) {
            cplx inv = 1.0 / (1.0 - x);
            cplx y = x * inv, yd = xd * inv * inv;
            Pd = Pd * y + P * yd;
            P = P * y;
            wp *= w;
            f += sign * wp * P;
            fq += sign * wp * Pd;
            sign = -sign;
            cplx xp = 1.0;
            for (int i = 0; i < t - 1; ++i) xp *= x;
            cplx xt = xp * x;
            xd = xt + q * static_cast<double>(t) * xp * xd;
            x = q * xt;
        }
    } else {
        cplx F = 1.0, Fd = 0.0;
        for (int j = 1; j <= J; ++j) {
            cplx inv = 1.0 / (1.0 - x);
            cplx y = x * inv, yd = xd * inv * inv;
            f -= w * (y * F);
            fq -= w * (yd * F + y * Fd);
            cplx g = 1.0 - w * inv, gd = -w * inv * inv * xd;
            Fd = Fd * g + F * gd;
            F = F * g;
            cplx xp = 1.0;
            for (int i = 0; i < t - 1; ++i) xp *= x;
            cplx xt = xp * x;
            xd = xt + q * static_cast<double>(t) * xp * xd;
            x = q * xt;
        }
    }
}

bool newton(int t, ScanMode mode, cplx w, cplx& z) {
    for (int it = 0; it < 60; ++it) {
        cplx f, fq;
        f_approx(t, mode, z, w, f, fq);
        if (!(std::abs(fq) > 1e-12)) return false;
        cplx step = f / fq;
        z -= step;
        if (!(std::abs(z) < 0.9)) return false;
        if (std::abs(step) < 1e-14) return true;
    }
    return false;
}

// Krawczyk test over the box B for every w = e^{i phi}, phi in seg: any
// root inside B lies in K (mean-value form with the derivative box), and
// K strictly inside B proves existence plus uniqueness of such a root for
// each phi individually.  Returns the refined enclosure K on success.
std::optional<ComplexBox> krawczyk(int t, ScanMode mode, const Interval& seg,
                                   cplx z, const ComplexBox& B) {
    ComplexBox W = unit_circle_point(seg);
    ComplexBox zb{Interval(z.real()), Interval(z.imag())};
    ComplexBox Fz, Fp;
    try {
        Fz = eval_D(t, mode, zb, W);
        Fp = eval_D(t, mode, B, W, DerivOrder{1, 0, 0});
    } catch (const domain_error&) {
        return std::nullopt;
    }
    if (Fp.contains_zero()) return std::nullopt;
    cplx pm(Fp.re.mid(), Fp.im.mid());
    if (!(std::abs(pm) > 0.0)) return std::nullopt;
    cplx yc = 1.0 / pm;
    ComplexBox Y{Interval(yc.real()), Interval(yc.imag())};
    ComplexBox one{Interval(1.0)};
    ComplexBox K = zb - Y * Fz + (one - Y * Fp) * (B - zb);
    if (!B.strictly_contains(K)) return std::nullopt;
    return K;
}

struct SegCert {
    ComplexBox K;  // enclosure of the root for every phase in the segment
    ComplexBox B;  // box the uniqueness statement refers to
    bool easy;     // first trial radius sufficed
};

std::optional<SegCert> certify_seg(int t, ScanMode mode, const Interval& seg,
                                   cplx z, double rmin) {
    double r = std::max({rmin, 1e-13, 0.6 * seg.width()});
    for (int k = 0; k < 6; ++k, r *= 4.0) {
        ComplexBox zb{Interval(z.real()), Interval(z.imag())};
        ComplexBox B = zb.inflated(r);
        if (auto K = krawczyk(t, mode, seg, z, B))
            return SegCert{*K, B, k == 0};
    }
    return std::nullopt;
}

void check_disk(const ComplexBox& K) {
    static const double lim = pow_int(Interval(2.0) / Interval(3.0), 2).lo;
    if (!(abs2(K).hi < lim))
        throw domain_error(
            "locallimit: root continuation left the disk |q| < 2/3");
}

cplx polar_w(double phi) { return {std::cos(phi), std::sin(phi)}; }

// Adaptive continuation of the dominant root from phi = 0 across the
// target interval.  Each accepted step consists of a segment certificate
// and a point certificate at the far endpoint; requiring the previous knot
// and the new one to sit inside the segment's uniqueness box forces all
// three to describe the same analytic branch, so the chain started at the
// real root cannot silently hop to another root.
ComplexBox walk_root(int t, ScanMode mode, const SingularityCert& cert,
                     const Interval& target) {
    cplx z(cert.q0.mid(), 0.0);
    if (!newton(t, mode, cplx(1.0, 0.0), z))
        throw domain_error("locallimit: Newton failed at the real seed");
    ComplexBox zb{Interval(z.real()), Interval(z.imag())};
    ComplexBox B0 = zb.inflated(std::max(1e-12, 4.0 * cert.q0.width()));
    if (!B0.re.contains(cert.q0))
        B0.re = hull(B0.re, cert.q0).inflated(1e-14);
    // the seed box swallows the whole real enclosure, so its unique root
    // is the certified real singular point itself
    auto K0 = krawczyk(t, mode, Interval(0.0), z, B0);
    if (!K0)
        throw domain_error("locallimit: could not certify the seed root");
    ComplexBox knot = *K0;

    double goal = 0.0;
    if (target.lo > 0.0)
        goal = target.lo;
    else if (target.hi < 0.0)
        goal = target.hi;
    double cur = 0.0, h = 0.0625;
    long iters = 0;
    while (cur != goal) {
        if (++iters > 200000) throw domain_error(kShrinkMsg);
        double next = goal > 0.0 ? std::min(cur + h, goal)
                                 : std::max(cur - h, goal);
        Interval seg = Interval::hull(cur, next);
        cplx zm = z;
        bool accepted = false;
        if (newton(t, mode, polar_w(seg.mid()), zm)) {
            auto sc = certify_seg(t, mode, seg, zm, 0.0);
            if (sc && sc->B.contains(knot)) {
                cplx zn = zm;
                if (newton(t, mode, polar_w(next), zn)) {
                    auto pc = certify_seg(t, mode, Interval(next), zn, 0.0);
                    if (pc && sc->B.contains(pc->K)) {
                        check_disk(sc->K);
                        knot = pc->K;
                        z = cplx(knot.re.mid(), knot.im.mid());
                        cur = next;
                        accepted = true;
                        if (sc->easy) h = std::min(2.0 * h, 0.25);
                    }
                }
            }
        }
        if (!accepted) {
            h /= 2.0;
            if (h < 1e-7) throw domain_error(kShrinkMsg);
        }
    }
    cplx zm = z;
    if (!newton(t, mode, polar_w(target.mid()), zm))
        throw domain_error(kShrinkMsg);
    auto fin = certify_seg(t, mode, target, zm, 0.0);
    if (!fin || !fin->B.contains(knot)) throw domain_error(kShrinkMsg);
    check_disk(fin->K);
    return fin->K;
}

// Majorant of the level sum on the closed disk |q| <= rho, valid for every
// |w| <= 1: when it stays below 1 the denominator cannot vanish there.
bool inner_disk_clear(int t, ScanMode mode, double rho) {
    const Interval r(rho);
    Interval S(0.0);
    if (mode == ScanMode::height) {
        Interval P(1.0);
        for (int j = 1; j <= 5; ++j) {
            Interval xb = pow_int(r, hp(t, j));
            P = P * (xb / (1.0 - xb));
            S = S + P;
        }
        Interval xb6 = pow_int(r, hp(t, 6));
        Interval y6 = xb6 / (1.0 - xb6);
        if (!(y6.hi < 0.5)) return false;
        S = S + P * (y6 / (1.0 - y6));
    } else {
        Interval F(1.0), T(0.0);
        for (int j = 1; j <= 5; ++j) {
            Interval xb = pow_int(r, hp(t, j));
            T = (xb / (1.0 - xb)) * F;
            S = S + T;
            F = F * ((2.0 + xb) / (1.0 - xb));
        }
        long tp = 1;
        for (int i = 0; i < 5; ++i) tp *= t;
        // the term ratio beyond j = 5 is at most rho^(t^5) (2+rho)/(1-rho)
        Interval renv = pow_int(r, tp) * ((2.0 + r) / (1.0 - r));
        if (!(renv.hi < 0.5)) return false;
        S = S + T * (renv / (1.0 - renv));
    }
    return S.hi < 1.0;
}

// Zero-freeness of the denominator on {|q| <= R} x W by adaptive rectangle
// subdivision of the part of the disk not already covered by the inner
// majorant.  floor_w is the smallest rectangle worth splitting; budget
// caps the total number of rectangles examined.
bool annulus_clear(int t, ScanMode mode, const ComplexBox& W, double rho,
                   double R, double floor_w, long budget) {
    const Interval Rsq = pow_int(Interval(R), 2);
    const Interval rhosq = pow_int(Interval(rho), 2);
    std::vector<ComplexBox> stack;
    stack.push_back(ComplexBox{Interval(-R, R), Interval(-R, R)});
    while (!stack.empty()) {
        if (--budget < 0) return false;
        ComplexBox b = stack.back();
        stack.pop_back();
        Interval m2 = abs2(b);
        if (m2.lo > Rsq.hi) continue;    // outside the claimed disk
        if (m2.hi <= rhosq.lo) continue; // inside the majorant disk
        bool clear = false;
        try {
            clear = !eval_D(t, mode, b, W).contains_zero();
        } catch (const domain_error&) {
        }
        if (clear) continue;
        double wre = b.re.width(), wim = b.im.width();
        if (wre <= floor_w && wim <= floor_w) return false;
        if (wre >= wim) {
            double m = b.re.lo + wre / 2.0;
            stack.push_back(ComplexBox{Interval(b.re.lo, m), b.im});
            stack.push_back(ComplexBox{Interval(m, b.re.hi), b.im});
        } else {
            double m = b.im.lo + wim / 2.0;
            stack.push_back(ComplexBox{b.re, Interval(b.im.lo, m)});
            stack.push_back(ComplexBox{b.re, Interval(m, b.im.hi)});
        }
    }
    return true;
}

}  // namespace

ComplexBox q0_of_w(int t, const Interval& phi, const SingularityCert& cert,
                   ScanMode mode) {
    if (t < 2) throw domain_error("locallimit: arity must be at least 2");
    check_cert(t, cert);
    check_phase(phi);
    return walk_root(t, mode, cert, phi);
}

ImplicitDerivs implicit_derivs(int t, const Interval& phi,
                               const SingularityCert& cert, ScanMode mode) {
    if (t < 2) throw domain_error("locallimit: arity must be at least 2");
    check_cert(t, cert);
    check_phase(phi);
    ComplexBox K = walk_root(t, mode, cert, phi);
    ComplexBox W = unit_circle_point(phi);
    auto d = [&](int a, int g) {
        return eval_D(t, mode, K, W, DerivOrder{a, 0, g});
    };
    ComplexBox Dq = d(1, 0), Dw = d(0, 1);
    ComplexBox Dqq = d(2, 0), Dqw = d(1, 1), Dww = d(0, 2);
    if (Dq.contains_zero())
        throw domain_error(
            "locallimit: D_q enclosure touches zero; narrow the phase "
            "interval");
    ImplicitDerivs out;
    out.q0w = K;
    out.q0w_prime = -(Dw / Dq);
    ComplexBox num = Interval(2.0) * (Dqw * Dw * Dq) - Dqq * Dw * Dw -
                     Dww * Dq * Dq;
    out.q0w_doubleprime = num / (Dq * Dq * Dq);
    return out;
}

Interval second_derivative_abs(int t, const Interval& phi,
                               const SingularityCert& cert, ScanMode mode) {
    ImplicitDerivs dv = implicit_derivs(t, phi, cert, mode);
    ComplexBox W = unit_circle_point(phi);
    ComplexBox W2 = unit_circle_point(phi + phi);
    ComplexBox iW{-W.im, W.re};
    ComplexBox c1 = iW * dv.q0w_prime;
    ComplexBox c2 = -(W * dv.q0w_prime) - W2 * dv.q0w_doubleprime;
    Interval s = pow_int(c1.re, 2) + pow_int(c1.im, 2) +
                 dv.q0w.re * c2.re + dv.q0w.im * c2.im;
    return Interval(2.0) * s;
}

std::optional<double> certify_outer_cell(int t, ScanMode mode,
                                         const Interval& phi,
                                         const SingularityCert& cert) {
    if (t < 2) throw domain_error("locallimit: arity must be at least 2");
    check_cert(t, cert);
    check_phase(phi);
    const double rho = mode == ScanMode::height ? 0.45 : 0.35;
    if (!inner_disk_clear(t, mode, rho)) return std::nullopt;
    ComplexBox W = unit_circle_point(phi);
    static constexpr double kMargins[] = {0x1p-8, 0x1p-12, 0x1p-16, 0x1p-20,
                                          0x1p-26};
    for (double m : kMargins) {
        double R = cert.q0.hi + m;
        double floor_w = std::max(0x1p-31, m * 0x1p-3);
        if (annulus_clear(t, mode, W, rho, R, floor_w, 60000)) return R;
    }
    return std::nullopt;
}

ScanReport verify_unique_min(int t, ScanMode mode) {
    if (t < 2 || t > 30)
        throw domain_error("locallimit: arity must be between 2 and 30");
    SingularityCert cert = solve_q0(t);
    ScanReport rep;
    rep.t = t;
    rep.mode = mode;

    // Phase one: find a radius c with (|q0|^2)'' certified positive on
    // [0, c] (checked on an eightfold split).  The function is even, so
    // convexity on [-c, c] plus the stationary point at 0 give strict
    // growth away from the real axis on the whole central interval.
    double c = M_PI;
    bool central_ok = false;
    while (c >= 0x1p-20) {
        bool ok = true;
        try {
            for (int k = 0; k < 8 && ok; ++k) {
                Interval sub(c * (k / 8.0), c * ((k + 1) / 8.0));
                ok = second_derivative_abs(t, sub, cert, mode).lo > 0.0;
            }
        } catch (const domain_error&) {
            ok = false;
        }
        if (ok) {
            central_ok = true;
            break;
        }
        c /= 2.0;
    }
    if (!central_ok) {
        rep.failed_cell = {0.0, c};
        return rep;
    }
    rep.central_radius = c;

    // Phase two: adaptive bisection of [c, pi], one zero-freeness radius
    // per cell, processed by a small pool sharing one work stack.
    const double pi_hi = next_up(M_PI);
    struct Shared {
        std::mutex mu;
        std::vector<std::pair<double, double>> todo;
        int active = 0;
        bool failed = false;
        std::pair<double, double> bad{0.0, 0.0};
        std::vector<OuterCell> done;
    } sh;
    sh.todo.push_back({c, pi_hi});
    auto work = [&]() {
        for (;;) {
            std::optional<std::pair<double, double>> cell;
            {
                std::lock_guard<std::mutex> g(sh.mu);
                if (sh.failed) return;
                if (!sh.todo.empty()) {
                    cell = sh.todo.back();
                    sh.todo.pop_back();
                    ++sh.active;
                } else if (sh.active == 0) {
                    return;
                }
            }
            if (!cell) {
                std::this_thread::yield();
                continue;
            }
            auto [lo, hi] = *cell;
            std::optional<double> got;
            try {
                got = certify_outer_cell(t, mode, Interval(lo, hi), cert);
            } catch (const domain_error&) {
                got = std::nullopt;
            }
            std::lock_guard<std::mutex> g(sh.mu);
            --sh.active;
            if (got) {
                sh.done.push_back(OuterCell{lo, hi, *got});
            } else if (hi - lo > 0x1p-20) {
                double m = lo + (hi - lo) / 2.0;
                sh.todo.push_back({lo, m});
                sh.todo.push_back({m, hi});
            } else if (!sh.failed) {
                sh.failed = true;
                sh.bad = {lo, hi};
            }
        }
    };
    int nw = std::min(worker_count(), 8);
    std::vector<std::thread> pool;
    for (int i = 1; i < nw; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    if (sh.failed) {
        rep.failed_cell = sh.bad;
        return rep;
    }
    std::sort(sh.done.begin(), sh.done.end(),
              [](const OuterCell& a, const OuterCell& b) {
                  return a.phi_lo < b.phi_lo;
              });
    bool cover = !sh.done.empty() && sh.done.front().phi_lo == c &&
                 sh.done.back().phi_hi == pi_hi;
    for (std::size_t i = 0; cover && i + 1 < sh.done.size(); ++i)
        cover = sh.done[i].phi_hi == sh.done[i + 1].phi_lo;
    for (const OuterCell& oc : sh.done)
        cover = cover && oc.min_modulus > cert.q0.hi;
    rep.outer_cells = std::move(sh.done);
    rep.verified = cover;
    return rep;
}

std::string ScanReport::to_json() const {
    nlohmann::json j;
    j["t"] = t;
    j["mode"] = mode == ScanMode::height ? "height" : "depths";
    j["status"] = verified ? "verified" : "failed";
    j["central_radius"] = central_radius;
    if (failed_cell)
        j["failed_cell"] = {failed_cell->first, failed_cell->second};
    nlohmann::json cells = nlohmann::json::array();
    for (const OuterCell& cell : outer_cells)
        cells.push_back({{"phi_lo", cell.phi_lo},
                         {"phi_hi", cell.phi_hi},
                         {"min_modulus", cell.min_modulus}});
    j["outer_cells"] = std::move(cells);
    return j.dump(2);
}

}  // namespace cantrees
