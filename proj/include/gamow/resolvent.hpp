#ifndef GAMOW_RESOLVENT_HPP
#define GAMOW_RESOLVENT_HPP

#include <optional>
#include <vector>

#include "gamow/core.hpp"

namespace gamow {

enum class Sheet { First, Second };
enum class CutSide { Above, Below };

struct EtaEvaluation {
    Complex z;
    Complex value;
    Sheet sheet = Sheet::First;
    double quadrature_error_estimate = 0.0;
};

struct PoleSearchReport {
    ResonancePole pole;
    int newton_iterations = 0;
    double final_residual = 0.0;
    std::optional<int> argument_principle_count;
};

/// Axis-aligned rectangle in the complex plane.
struct ComplexRectangle {
    double re_min, re_max;
    double im_min, im_max;
};

/// Reduced resolvent eta(z) = omega0 - z - lambda^2 int_0^inf f^2(w)/(w-z) dw,
/// analytic off the cut [0, inf).
EtaEvaluation eta_first_sheet(const FriedrichsModelSpec& model, Complex z);

/// Boundary values eta(w +/- i0) for w > 0: principal-value part plus the
/// Sokhotski-Plemelj term -/+ i pi lambda^2 f^2(w).
Complex eta_boundary(const FriedrichsModelSpec& model, double omega, CutSide side);

/// Continuation through the cut from above: eta_II(z) = eta(z) - 2 pi i
/// lambda^2 f^2(z).  Resonance poles are its zeros in the lower half-plane.
EtaEvaluation eta_second_sheet(const FriedrichsModelSpec& model, Complex z);

/// eta_II on a batch of lower-half-plane points (OpenMP across points).
std::vector<EtaEvaluation> eta_second_sheet_grid(const FriedrichsModelSpec& model,
                                                 const std::vector<Complex>& points);
namespace serial {
std::vector<EtaEvaluation> eta_second_sheet_grid(const FriedrichsModelSpec& model,
                                                 const std::vector<Complex>& points);
}

/*
 * Newton search for the zero of eta_II, seeded at the second-order
 * perturbative estimate
 *
 *   z_seed = omega0 + lambda^2 PV int f^2(w)/(omega0 - w) dw
 *                   - i pi lambda^2 f^2(omega0),
 *
 * with a central-difference derivative.  lambda = 0 short-circuits to
 * z = omega0 with zero width.  A converged point with Im(z) > tolerance is
 * rejected as a spurious first-sheet zero.
 */
PoleSearchReport find_pole(const FriedrichsModelSpec& model,
                           double tolerance = 1e-12, int max_iter = 60,
                           bool certify = true);

/// Zeros of eta_II inside the rectangle (with multiplicity), counted by
/// accumulating the boundary winding of eta_II.  The rectangle must lie
/// strictly below the real axis and keep eta_II nonzero on its boundary.
int count_poles_in_rectangle(const FriedrichsModelSpec& model,
                             const ComplexRectangle& rect);

}  // namespace gamow

#endif
