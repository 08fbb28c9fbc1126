#pragma once

#include "cantrees/asymptotics.hpp"
#include "cantrees/interval.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cantrees {

// Certified scan showing that |q0(e^{i phi})| attains its minimum over
// [-pi, pi] only at phi = 0, where q0(w) is the root of the height
// denominator D(q, w) (or of the depth denominator D(q, v)) continued from
// the real singular point.  This is the computer-assisted ingredient of the
// local limit theorems for small arity; only phi in (0, pi] is scanned, the
// negative side following by conjugate symmetry.

enum class ScanMode { height, depths };

// Enclosures of q0(w) and its first two w-derivatives for w = e^{i phi},
// phi ranging over a requested interval.  The derivatives come from
// implicit differentiation of D(q0(w), w) = 0:
//
//   q0'  = -D_w / D_q,
//   q0'' = (2 D_qw D_w D_q - D_qq D_w^2 - D_ww D_q^2) / D_q^3,
//
// with every D-partial a certified box over the root enclosure.
struct ImplicitDerivs {
    ComplexBox q0w;
    ComplexBox q0w_prime;
    ComplexBox q0w_doubleprime;
};

// One certified piece of the outer scan: for every phi in [phi_lo, phi_hi]
// the denominator has no root of modulus <= min_modulus, so the dominant
// singularity stays strictly above the real one.
struct OuterCell {
    double phi_lo = 0.0;
    double phi_hi = 0.0;
    double min_modulus = 0.0;
};

struct ScanReport {
    int t = 0;
    ScanMode mode = ScanMode::height;
    // |q0(e^{i phi})|^2 is certified strictly convex on the symmetric
    // interval [-central_radius, central_radius]; being even it then grows
    // strictly away from phi = 0 there.
    double central_radius = 0.0;
    // contiguous cover of [central_radius, pi], sorted by phi_lo, with
    // exact endpoint sharing between neighbours
    std::vector<OuterCell> outer_cells;
    bool verified = false;
    // the offending cell when some piece resisted certification
    std::optional<std::pair<double, double>> failed_cell;

    std::string to_json() const;
};

// Enclosure of q0(e^{i phi}) over the phi interval.  The root is walked
// from the real certificate at phi = 0 in adaptive steps; every step is
// locked in by a Krawczyk test (complex Newton for the approximation, then
// the residual-versus-derivative containment check), certifying existence
// and uniqueness of the root in the returned box for each phi of the step
// simultaneously.  Consecutive boxes are glued through point certificates
// at the shared phase, so the returned branch really is the continuation
// of the real root.  Throws when a step cannot be certified even after
// shrinking, or when the root leaves the disk |q| < 2/3.
ComplexBox q0_of_w(int t, const Interval& phi, const SingularityCert& cert,
                   ScanMode mode = ScanMode::height);

// Root plus first two w-derivatives over the phi interval.
ImplicitDerivs implicit_derivs(int t, const Interval& phi,
                               const SingularityCert& cert,
                               ScanMode mode = ScanMode::height);

// Certified enclosure of d^2/dphi^2 |q0(e^{i phi})|^2, assembled from
// ImplicitDerivs through the chain rule for x + iy = q0(e^{i phi}):
//
//   x' + iy'  = i e^{i phi} q0',
//   x'' + iy'' = -e^{i phi} q0' - e^{2 i phi} q0'',
//   (|q0|^2)'' = 2 (x'^2 + y'^2 + x x'' + y y'').
Interval second_derivative_abs(int t, const Interval& phi,
                               const SingularityCert& cert,
                               ScanMode mode = ScanMode::height);

// Outer-phase certifier: proves D(q, e^{i phi}) != 0 for every phi in the
// cell and every |q| <= R for some R strictly above cert.q0.hi.  An inner
// disk is cleared once by a closed-form majorant of the level sum; the
// remaining annulus is covered by adaptively subdiving rectangles until
// each either avoids the disk of radius R or carries a denominator
// enclosure excluding zero.  Returns the certified R, or nullopt when the
// cell resists (as it must for any cell containing phi = 0, where the
// denominator does vanish at radius |q0(1)| <= R).
std::optional<double> certify_outer_cell(int t, ScanMode mode,
                                         const Interval& phi,
                                         const SingularityCert& cert);

// Two-phase verification for one arity and one mode.  Phase one shrinks a
// central interval by halving until second_derivative_abs is certified
// positive on it (checked on an eightfold split of the candidate).  Phase
// two covers the complement of (0, pi] with certify_outer_cell under
// adaptive bisection, processed by a small worker pool (see
// worker_count()).  Any cell resisting down to the width floor yields a
// failed report naming it.
ScanReport verify_unique_min(int t, ScanMode mode);

}  // namespace cantrees
