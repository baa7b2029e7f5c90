#include "gamow/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gamow::quad {

namespace {

using Cplx = std::complex<double>;

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    Cplx kronrod{0.0, 0.0};
    double error = 0.0;
};

Panel gk15(const std::function<Cplx(double)>& f, double a, double b, long& evals) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    Cplx fc = f(mid);
    Cplx kron = kWgk[7] * fc;
    Cplx gauss = kWg[3] * fc;
    evals += 1;

    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        Cplx lo = f(mid - dx);
        Cplx hi = f(mid + dx);
        evals += 2;
        kron += kWgk[j] * (lo + hi);
        if (j % 2 == 1) gauss += kWg[j / 2] * (lo + hi);
    }
    kron *= half;
    gauss *= half;
    return {kron, std::abs(kron - gauss)};
}

struct WorkPanel {
    double a, b;
    Cplx value;
    double error;
    int depth;
    bool frozen;  // reached max depth; stop refining it
};

// Global worst-first refinement with a hard panel budget: splitting only the
// currently worst panel keeps sharp-peak integrands (poles just off the
// interval) at a linear, not exponential, panel count.
Result integrate_panels(const std::function<Cplx(double)>& f,
                        const std::vector<double>& knots, const Tolerances& tol) {
    constexpr int kMaxSplits = 20000;

    long evals = 0;
    std::vector<WorkPanel> panels;
    panels.reserve(knots.size() + 64);
    double rough = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        Panel p = gk15(f, knots[i], knots[i + 1], evals);
        panels.push_back({knots[i], knots[i + 1], p.kronrod, p.error, 0, false});
        rough += std::abs(p.kronrod);
    }
    const double target = std::max(tol.abs_tol, tol.rel_tol * rough);

    double total_err = 0.0;
    for (const WorkPanel& p : panels) total_err += p.error;

    for (int split = 0; split < kMaxSplits && total_err > target; ++split) {
        std::size_t worst = panels.size();
        double worst_err = 0.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            if (panels[i].frozen) continue;
            if (panels[i].error > worst_err) {
                worst_err = panels[i].error;
                worst = i;
            }
        }
        if (worst == panels.size()) break;  // everything refinable is exhausted

        WorkPanel& w = panels[worst];
        if (w.depth >= tol.max_depth || w.b - w.a < 1e-300) {
            w.frozen = true;
            continue;
        }
        const double a = w.a, b = w.b, mid = 0.5 * (a + b);
        const int depth = w.depth + 1;
        total_err -= w.error;
        Panel left = gk15(f, a, mid, evals);
        Panel right = gk15(f, mid, b, evals);
        w = {a, mid, left.kronrod, left.error, depth, false};
        panels.push_back({mid, b, right.kronrod, right.error, depth, false});
        total_err += left.error + right.error;
    }

    Result out;
    out.evaluations = evals;
    double err = 0.0;
    Cplx total{0.0, 0.0};
    for (const WorkPanel& p : panels) {
        total += p.value;
        err += p.error;
    }
    out.value = total;
    out.error = err;
    if (!std::isfinite(err) || !std::isfinite(std::abs(total)))
        throw std::runtime_error("quadrature produced a non-finite result");
    if (err > 50.0 * std::max(target, 1e-300) && err > 1e-6 * std::max(1.0, std::abs(total)))
        throw std::runtime_error("quadrature did not converge to the requested tolerance");
    return out;
}

}  // namespace

Result integrate(const std::function<Cplx(double)>& f, double a, double b,
                 const Tolerances& tol) {
    if (!(a < b)) {
        if (a == b) return {};
        throw std::invalid_argument("integrate: empty or reversed interval");
    }
    return integrate_panels(f, {a, b}, tol);
}

Result integrate_semi_infinite(const std::function<Cplx(double)>& f,
                               std::vector<double> breakpoints, const Tolerances& tol) {
    // w = t/(1-t) maps [0,1) onto [0,inf); dw = dt/(1-t)^2.
    auto mapped = [&f](double t) {
        const double u = 1.0 - t;
        const double w = t / u;
        return f(w) / (u * u);
    };

    std::vector<double> knots{0.0};
    std::sort(breakpoints.begin(), breakpoints.end());
    for (double w : breakpoints) {
        if (w <= 0.0 || !std::isfinite(w)) continue;
        const double t = w / (1.0 + w);
        if (t > knots.back() + 1e-12 && t < 1.0 - 1e-12) knots.push_back(t);
    }
    knots.push_back(1.0);
    return integrate_panels(mapped, knots, tol);
}

Result principal_value(const std::function<double(double)>& f,
                       const std::function<double(double)>& df,
                       double x0, std::vector<double> breakpoints,
                       const Tolerances& tol) {
    if (!(x0 > 0.0)) throw std::invalid_argument("principal_value: pole must satisfy x0 > 0");

    const double d = 0.5 * x0;
    const double a = x0 - d;
    const double b = x0 + d;

    Result out;

    if (a > 0.0) {
        auto head = [&](double w) { return Cplx(f(w) / (w - x0), 0.0); };
        Result r = integrate(head, 0.0, a, tol);
        out.value += r.value;
        out.error += r.error;
        out.evaluations += r.evaluations;
    }

    const double fx0 = f(x0);
    const double eps = 1e-9 * std::max(1.0, x0);
    auto subtracted = [&](double w) {
        if (std::abs(w - x0) < eps) return Cplx(df(x0), 0.0);
        return Cplx((f(w) - fx0) / (w - x0), 0.0);
    };
    Result mid = integrate(subtracted, a, b, tol);
    out.value += mid.value + fx0 * std::log((b - x0) / (x0 - a));
    out.error += mid.error;
    out.evaluations += mid.evaluations;

    auto tail = [&](double w) { return Cplx(f(w) / (w - x0), 0.0); };
    std::vector<double> shifted;
    for (double w : breakpoints)
        if (w > b) shifted.push_back(w - b);
    Result t = integrate_semi_infinite(
        [&](double u) { return tail(b + u); }, shifted, tol);
    out.value += t.value;
    out.error += t.error;
    out.evaluations += t.evaluations;
    return out;
}

}  // namespace gamow::quad
