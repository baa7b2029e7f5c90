#include "gamow/resolvent.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "gamow/quadrature.hpp"

namespace gamow {

namespace {

constexpr double kPi = std::numbers::pi;

bool on_cut(Complex z) { return z.imag() == 0.0 && z.real() >= 0.0; }

std::vector<double> model_breakpoints(const FriedrichsModelSpec& model, Complex z) {
    std::vector<double> bp = model.form_factor.quadrature_breakpoints();
    bp.push_back(model.omega0);
    if (z.real() > 0.0) bp.push_back(z.real());
    return bp;
}

// omega0 - z - lambda^2 int f^2/(w - z), valid for any z off the cut.
EtaEvaluation eta_off_cut(const FriedrichsModelSpec& model, Complex z, Sheet sheet) {
    EtaEvaluation out;
    out.z = z;
    out.sheet = sheet;
    if (model.lambda == 0.0) {
        out.value = model.omega0 - z;
        return out;
    }
    const double l2 = model.lambda * model.lambda;
    auto integrand = [&](double w) { return model.form_factor.f2(w) / (w - z); };
    quad::Result r = quad::integrate_semi_infinite(integrand, model_breakpoints(model, z), {});
    out.value = model.omega0 - z - l2 * r.value;
    out.quadrature_error_estimate = l2 * r.error;
    return out;
}

// Continuation usable anywhere a Newton iterate may wander.  On the cut it
// coincides with eta(w + i0); elsewhere (including left of the cut, where
// the integral is regular) it is eta - 2 pi i lambda^2 f^2.
Complex eta_second_unchecked(const FriedrichsModelSpec& model, Complex z, double* err) {
    if (z.imag() == 0.0 && z.real() > 0.0) {
        if (err) *err = 0.0;
        return eta_boundary(model, z.real(), CutSide::Above);
    }
    EtaEvaluation ev = eta_off_cut(model, z, Sheet::Second);
    if (err) *err = ev.quadrature_error_estimate;
    Complex v = ev.value;
    if (model.lambda != 0.0)
        v -= Complex(0.0, 2.0 * kPi) * model.lambda * model.lambda *
             model.form_factor.f2_continued(z);
    return v;
}

}  // namespace

EtaEvaluation eta_first_sheet(const FriedrichsModelSpec& model, Complex z) {
    if (on_cut(z))
        throw std::domain_error(
            "eta_first_sheet: z lies on the branch cut [0, inf); use eta_boundary");
    return eta_off_cut(model, z, Sheet::First);
}

Complex eta_boundary(const FriedrichsModelSpec& model, double omega, CutSide side) {
    if (!(omega > 0.0))
        throw std::domain_error("eta_boundary: omega must be > 0");
    if (model.lambda == 0.0) return Complex(model.omega0 - omega, 0.0);

    const double l2 = model.lambda * model.lambda;
    auto f = [&](double w) { return model.form_factor.f2(w); };
    auto df = [&](double w) { return model.form_factor.f2_derivative(w); };
    quad::Result pv = quad::principal_value(f, df, omega,
                                            model_breakpoints(model, {omega, 0.0}), {});

    const double jump = kPi * l2 * model.form_factor.f2(omega);
    const double sign = (side == CutSide::Above) ? -1.0 : 1.0;
    return Complex(model.omega0 - omega - l2 * pv.value.real(), sign * jump);
}

EtaEvaluation eta_second_sheet(const FriedrichsModelSpec& model, Complex z) {
    if (!(z.imag() < 0.0))
        throw std::domain_error("eta_second_sheet: continuation is taken into Im(z) < 0");
    if (!model.form_factor.has_continuation())
        throw std::domain_error(
            "eta_second_sheet: form factor kind has no analytic continuation");
    EtaEvaluation out;
    out.z = z;
    out.sheet = Sheet::Second;
    out.value = eta_second_unchecked(model, z, &out.quadrature_error_estimate);
    return out;
}

std::vector<EtaEvaluation> serial::eta_second_sheet_grid(
    const FriedrichsModelSpec& model, const std::vector<Complex>& points) {
    std::vector<EtaEvaluation> out(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        out[i] = eta_second_sheet(model, points[i]);
    return out;
}

std::vector<EtaEvaluation> eta_second_sheet_grid(const FriedrichsModelSpec& model,
                                                 const std::vector<Complex>& points) {
    std::vector<EtaEvaluation> out(points.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(points.size()); ++i)
        out[static_cast<std::size_t>(i)] =
            eta_second_sheet(model, points[static_cast<std::size_t>(i)]);
    return out;
}

PoleSearchReport find_pole(const FriedrichsModelSpec& model, double tolerance,
                           int max_iter, bool certify) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("find_pole: tolerance must be > 0");
    if (max_iter < 1) throw std::invalid_argument("find_pole: max_iter must be >= 1");

    PoleSearchReport report;
    if (model.lambda == 0.0) {
        report.pole = ResonancePole(model.omega0, 0.0);
        return report;
    }
    if (!model.form_factor.has_continuation())
        throw std::domain_error("find_pole: form factor kind has no analytic continuation");

    const double l2 = model.lambda * model.lambda;
    auto f = [&](double w) { return model.form_factor.f2(w); };
    auto df = [&](double w) { return model.form_factor.f2_derivative(w); };
    quad::Result pv = quad::principal_value(
        f, df, model.omega0, model_breakpoints(model, {model.omega0, 0.0}), {});

    Complex z(model.omega0 - l2 * pv.value.real(),
              -kPi * l2 * model.form_factor.f2(model.omega0));

    bool converged = false;
    double residual = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        Complex fz = eta_second_unchecked(model, z, nullptr);
        residual = std::abs(fz);
        if (residual < tolerance) {
            converged = true;
            report.newton_iterations = it;
            break;
        }
        const double h = 1e-5 * std::max(std::abs(z), 1.0);
        Complex fp = eta_second_unchecked(model, z + h, nullptr);
        Complex fm = eta_second_unchecked(model, z - h, nullptr);
        Complex deriv = (fp - fm) / (2.0 * h);
        if (std::abs(deriv) == 0.0)
            throw std::runtime_error("find_pole: vanishing derivative in Newton step");
        Complex step = fz / deriv;
        const double cap = 0.5 * (std::abs(z) + 1.0);
        if (std::abs(step) > cap) step *= cap / std::abs(step);
        z -= step;
        report.newton_iterations = it + 1;
    }
    if (!converged) {
        Complex fz = eta_second_unchecked(model, z, nullptr);
        residual = std::abs(fz);
        if (residual >= tolerance)
            throw std::runtime_error("find_pole: Newton iteration did not converge");
        converged = true;
    }
    if (z.imag() > tolerance)
        throw std::runtime_error(
            "find_pole: converged to a first-sheet zero (Im z > tolerance)");

    report.pole = ResonancePole(z.real(), std::max(0.0, -2.0 * z.imag()));
    report.final_residual = residual;

    if (certify) {
        const double gamma = report.pole.gamma();
        const double half_w = std::max(10.0 * gamma, 0.05);
        const double below = std::max(3.0 * gamma, 0.03);
        ComplexRectangle rect{z.real() - half_w, z.real() + half_w,
                              -below, -std::max(gamma / 8.0, 1e-8)};
        report.argument_principle_count = count_poles_in_rectangle(model, rect);
    }
    return report;
}

namespace {

struct BoundaryScan {
    double accum = 0.0;
    double min_abs = std::numeric_limits<double>::infinity();
    double max_abs = 0.0;

    void sample(Complex v) {
        const double a = std::abs(v);
        if (a == 0.0)
            throw std::runtime_error("count_poles_in_rectangle: zero on the boundary");
        min_abs = std::min(min_abs, a);
        max_abs = std::max(max_abs, a);
    }
};

void march_segment(const FriedrichsModelSpec& model, Complex a, Complex b,
                   Complex fa, Complex fb, BoundaryScan& scan, int depth) {
    const double dphi = std::arg(fb / fa);
    if (std::abs(dphi) <= 0.4 * kPi) {
        scan.accum += dphi;
        return;
    }
    if (depth > 42)
        throw std::runtime_error(
            "count_poles_in_rectangle: cannot resolve the boundary winding "
            "(a zero may lie on or near the boundary)");
    const Complex mid = 0.5 * (a + b);
    const Complex fmid = eta_second_unchecked(model, mid, nullptr);
    scan.sample(fmid);
    march_segment(model, a, mid, fa, fmid, scan, depth + 1);
    march_segment(model, mid, b, fmid, fb, scan, depth + 1);
}

// 8 sub-segments up front so a full phase turn cannot alias inside one step.
void march_edge(const FriedrichsModelSpec& model, Complex a, Complex b,
                BoundaryScan& scan) {
    constexpr int kInitial = 8;
    Complex prev_pt = a;
    Complex prev_val = eta_second_unchecked(model, prev_pt, nullptr);
    scan.sample(prev_val);
    for (int k = 1; k <= kInitial; ++k) {
        const double s = static_cast<double>(k) / kInitial;
        const Complex pt = a + s * (b - a);
        const Complex val = eta_second_unchecked(model, pt, nullptr);
        scan.sample(val);
        march_segment(model, prev_pt, pt, prev_val, val, scan, 0);
        prev_pt = pt;
        prev_val = val;
    }
}

}  // namespace

int count_poles_in_rectangle(const FriedrichsModelSpec& model,
                             const ComplexRectangle& rect) {
    if (!(rect.im_max < 0.0))
        throw std::domain_error(
            "count_poles_in_rectangle: rectangle must lie strictly below the real axis");
    if (!(rect.re_min < rect.re_max) || !(rect.im_min < rect.im_max))
        throw std::invalid_argument("count_poles_in_rectangle: degenerate rectangle");
    if (!model.form_factor.has_continuation())
        throw std::domain_error(
            "count_poles_in_rectangle: form factor kind has no analytic continuation");

    const Complex corners[4] = {{rect.re_min, rect.im_min},
                                {rect.re_max, rect.im_min},
                                {rect.re_max, rect.im_max},
                                {rect.re_min, rect.im_max}};

    BoundaryScan scan;
    for (int i = 0; i < 4; ++i)
        march_edge(model, corners[i], corners[(i + 1) % 4], scan);
    if (scan.min_abs < 1e-12 * scan.max_abs)
        throw std::runtime_error(
            "count_poles_in_rectangle: boundary passes too close to a zero");

    const double winding = scan.accum / (2.0 * kPi);
    const long count = std::lround(winding);
    if (std::abs(winding - static_cast<double>(count)) > 0.25)
        throw std::runtime_error("count_poles_in_rectangle: winding did not close");
    if (count < 0)
        throw std::runtime_error(
            "count_poles_in_rectangle: negative winding (continuation pole inside?)");
    return static_cast<int>(count);
}

}  // namespace gamow
