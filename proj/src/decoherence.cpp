#include "gamow/decoherence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gamow/dynamics.hpp"
#include "series_detail.hpp"

namespace gamow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double normalization_sum(Complex a, Complex b,
                         const QuasiCoherentState& s1, const QuasiCoherentState& s2) {
    const Complex ov = overlap_exact(s1, s2);
    return std::norm(a) + std::norm(b) + 2.0 * (std::conj(a) * b * ov).real();
}

void require_real_labels(const Superposition& sup) {
    if (sup.s1.alpha.imag() != 0.0 || sup.s2.alpha.imag() != 0.0)
        throw std::invalid_argument(
            "off_diagonal: real labels required (the mixed-overlap expansion "
            "assumes them)");
}

double crossing_time(const TimeSeries& r, Complex asymptote, double drop) {
    const double ref = std::abs(r.values.front() - asymptote);
    const double target = drop * ref;
    double prev = ref;
    for (std::size_t i = 1; i < r.size(); ++i) {
        const double d = std::abs(r.values[i] - asymptote);
        if (d <= target) {
            const double t0 = r.times[i - 1];
            const double t1 = r.times[i];
            const double frac = (prev - target) / (prev - d);
            return t0 + frac * (t1 - t0);
        }
        prev = d;
    }
    return kInf;
}

// Field variant.  A width-free spectrum cannot decohere: any |rho12| dip is
// reversible dephasing (it revives), so the field is +inf there, as it is
// for traces that never leave their asymptote.
void fill_decoherence_time(OffDiagonalTrace& trace, const GamowSpectrum& spectrum,
                           double drop) {
    double max_gamma = 0.0;
    for (const ResonancePole& p : spectrum.poles())
        max_gamma = std::max(max_gamma, p.gamma());
    const double ref = std::abs(trace.rho12.values.front() - trace.asymptote_12);
    if (max_gamma == 0.0 || ref == 0.0 ||
        !(std::abs(trace.rho12.values.front()) > std::abs(trace.asymptote_12))) {
        trace.decoherence_time = kInf;
        return;
    }
    trace.decoherence_time = crossing_time(trace.rho12, trace.asymptote_12, drop);
}

}  // namespace

Superposition make_superposition(Complex a, Complex b,
                                 QuasiCoherentState s1, QuasiCoherentState s2) {
    Superposition sup{a, b, std::move(s1), std::move(s2), false};
    sup.normalized = std::abs(normalization_sum(a, b, sup.s1, sup.s2) - 1.0) <= 1e-10;
    return sup;
}

Superposition normalized_superposition(Complex a, Complex b,
                                       QuasiCoherentState s1, QuasiCoherentState s2) {
    const double s = normalization_sum(a, b, s1, s2);
    if (!(s > 0.0))
        throw std::invalid_argument("normalized_superposition: state has zero norm");
    const double scale = 1.0 / std::sqrt(s);
    Superposition sup{a * scale, b * scale, std::move(s1), std::move(s2), true};
    return sup;
}

GamowState expand(const Superposition& sup) {
    if (sup.s1.mode_count() != sup.s2.mode_count())
        throw std::invalid_argument("expand: component mode counts differ");
    GamowState out;
    out.coefficients.resize(sup.s1.mode_count());
    for (std::size_t n = 0; n < out.coefficients.size(); ++n)
        out.coefficients[n] = sup.a * sup.s1.state.coefficients[n] +
                              sup.b * sup.s2.state.coefficients[n];
    return out;
}

namespace {

OffDiagonalTrace off_diagonal_common(const Superposition& sup, const GamowSpectrum& spectrum,
                                     const std::vector<double>& grid, double hbar,
                                     double drop, bool parallel) {
    require_real_labels(sup);
    if (grid.empty()) throw std::invalid_argument("off_diagonal: empty time grid");
    if (!(grid.front() >= 0.0))
        throw std::invalid_argument("off_diagonal: grid must be nonnegative");
    if (spectrum.mode_count() != sup.s1.mode_count())
        throw std::invalid_argument("off_diagonal: spectrum/state mode count mismatch");

    OffDiagonalTrace trace;
    trace.macroscopic =
        macroscopicity_check(sup.s1.alpha, sup.s2.alpha, 1e-3).quasi_orthogonal;
    trace.rho12.times = grid;
    trace.rho21.times = grid;
    trace.rho12.values.resize(grid.size());
    trace.rho21.values.resize(grid.size());
    trace.rho12.validate();

    const Complex ab = sup.a * std::conj(sup.b);
    const Complex ba = std::conj(sup.a) * sup.b;

    const double L1 = detail::log_exp_sum(std::norm(sup.s1.alpha), sup.s1.n_max);
    const double L2 = detail::log_exp_sum(std::norm(sup.s2.alpha), sup.s2.n_max);
    const double a1 = sup.s1.alpha.real();
    const double a2 = sup.s2.alpha.real();

    auto eval_point = [&](std::size_t k) {
        const double t = grid[k];
        const Complex t11 = detail::poisson_phase_sum(a1 * a1, spectrum, t, hbar)
                                .times_exp(-L1);
        const Complex t22 = detail::poisson_phase_sum(a2 * a2, spectrum, t, hbar)
                                .times_exp(-L2);
        const Complex t12 = detail::poisson_phase_sum(a1 * a2, spectrum, t, hbar)
                                .times_exp(-0.5 * (L1 + L2));
        // real labels: T21 == T12
        trace.rho12.values[k] = ab * t11 * std::conj(t22) + ba * t12 * std::conj(t12);
        trace.rho21.values[k] = ab * t12 * std::conj(t12) + ba * t22 * std::conj(t11);
    };

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(grid.size()); ++i)
            eval_point(static_cast<std::size_t>(i));
    } else {
        for (std::size_t k = 0; k < grid.size(); ++k) eval_point(k);
    }

    const Complex t11_inf = detail::poisson_zero_mode_sum(a1 * a1, spectrum).times_exp(-L1);
    const Complex t22_inf = detail::poisson_zero_mode_sum(a2 * a2, spectrum).times_exp(-L2);
    const Complex t12_inf =
        detail::poisson_zero_mode_sum(a1 * a2, spectrum).times_exp(-0.5 * (L1 + L2));
    trace.asymptote_12 = ab * t11_inf * std::conj(t22_inf) + ba * t12_inf * std::conj(t12_inf);

    fill_decoherence_time(trace, spectrum, drop);
    return trace;
}

}  // namespace

OffDiagonalTrace off_diagonal(const Superposition& sup, const GamowSpectrum& spectrum,
                              const std::vector<double>& time_grid, double hbar,
                              double drop) {
    return off_diagonal_common(sup, spectrum, time_grid, hbar, drop, true);
}

OffDiagonalTrace serial::off_diagonal(const Superposition& sup, const GamowSpectrum& spectrum,
                                      const std::vector<double>& time_grid, double hbar,
                                      double drop) {
    return off_diagonal_common(sup, spectrum, time_grid, hbar, drop, false);
}

OffDiagonalTrace off_diagonal_poisson_sum(const Superposition& sup,
                                          const GamowSpectrum& spectrum,
                                          const std::vector<double>& time_grid,
                                          double hbar, double drop) {
    require_real_labels(sup);
    if (sup.s1.alpha != Complex(0.0, 0.0))
        throw std::invalid_argument(
            "off_diagonal_poisson_sum: derived for alpha1 = 0 initial values");
    if (time_grid.empty())
        throw std::invalid_argument("off_diagonal_poisson_sum: empty time grid");
    if (!(time_grid.front() >= 0.0))
        throw std::invalid_argument("off_diagonal_poisson_sum: grid must be nonnegative");
    if (spectrum.mode_count() != sup.s2.mode_count())
        throw std::invalid_argument(
            "off_diagonal_poisson_sum: spectrum/state mode count mismatch");

    OffDiagonalTrace trace;
    trace.macroscopic =
        macroscopicity_check(sup.s1.alpha, sup.s2.alpha, 1e-3).quasi_orthogonal;
    trace.rho12.times = time_grid;
    trace.rho21.times = time_grid;
    trace.rho12.values.resize(time_grid.size());
    trace.rho21.values.resize(time_grid.size());
    trace.rho12.validate();

    const Complex ab = sup.a * std::conj(sup.b);
    const Complex ba = std::conj(sup.a) * sup.b;
    const double x = std::norm(sup.s2.alpha);
    const double L2 = detail::log_exp_sum(x, sup.s2.n_max);

    for (std::size_t k = 0; k < time_grid.size(); ++k) {
        const Complex sum =
            detail::poisson_phase_sum(x, spectrum, time_grid[k], hbar).times_exp(-L2);
        trace.rho12.values[k] = ab * sum;
        trace.rho21.values[k] = ba * sum;
    }
    trace.asymptote_12 = ab * detail::poisson_zero_mode_sum(x, spectrum).times_exp(-L2);
    fill_decoherence_time(trace, spectrum, drop);
    return trace;
}

OffDiagonalTrace off_diagonal_single_pole(const Superposition& sup,
                                          const GamowSpectrum& spectrum,
                                          const std::vector<double>& time_grid,
                                          double hbar, double drop) {
    require_real_labels(sup);
    if (time_grid.empty())
        throw std::invalid_argument("off_diagonal_single_pole: empty time grid");
    if (!(time_grid.front() >= 0.0))
        throw std::invalid_argument("off_diagonal_single_pole: grid must be nonnegative");
    if (spectrum.mode_count() < 2)
        throw std::invalid_argument(
            "off_diagonal_single_pole: needs the base pole at index 1");

    OffDiagonalTrace trace;
    trace.macroscopic =
        macroscopicity_check(sup.s1.alpha, sup.s2.alpha, 1e-3).quasi_orthogonal;
    trace.rho12.times = time_grid;
    trace.rho21.times = time_grid;
    trace.rho12.values.resize(time_grid.size());
    trace.rho21.values.resize(time_grid.size());
    trace.rho12.validate();

    const Complex ab = sup.a * std::conj(sup.b);
    const Complex ba = std::conj(sup.a) * sup.b;
    const double n2sq = std::exp(-detail::log_exp_sum(std::norm(sup.s2.alpha), sup.s2.n_max));
    const ResonancePole& base = spectrum.pole(1);

    for (std::size_t k = 0; k < time_grid.size(); ++k) {
        const double t = time_grid[k];
        const double mag = n2sq * std::exp(-0.5 * base.gamma() * t / hbar);
        const double phase = -base.e_r() * t / hbar;
        const Complex osc = mag * Complex(std::cos(phase), std::sin(phase));
        trace.rho12.values[k] = ab * osc;
        trace.rho21.values[k] = ba * osc;
    }
    trace.asymptote_12 = (base.gamma() == 0.0 && base.e_r() == 0.0)
                             ? ab * n2sq
                             : Complex(0.0, 0.0);
    fill_decoherence_time(trace, spectrum, drop);
    return trace;
}

double decoherence_time(const OffDiagonalTrace& trace, double drop) {
    if (!(drop > 0.0) || !(drop < 1.0))
        throw std::invalid_argument("decoherence_time: drop must lie in (0, 1)");
    const TimeSeries& r = trace.rho12;
    if (r.size() == 0) throw std::invalid_argument("decoherence_time: empty trace");

    const Complex A = trace.asymptote_12;
    if (std::abs(r.values.front() - A) == 0.0)
        throw std::invalid_argument("decoherence_time: degenerate trace (already settled)");
    if (!(std::abs(r.values.front()) > std::abs(A)))
        throw std::invalid_argument(
            "decoherence_time: initial value does not exceed the asymptote");
    return crossing_time(r, A, drop);
}

double echo_rate(const GamowState& state, const GamowSpectrum& spectrum, double hbar) {
    if (state.mode_count() != spectrum.mode_count())
        throw std::invalid_argument("echo_rate: state/spectrum mode count mismatch");
    if (!(hbar > 0.0)) throw std::invalid_argument("echo_rate: hbar must be > 0");
    if (std::abs(state.norm_squared() - 1.0) > 1e-6)
        throw std::invalid_argument("echo_rate: state must be normalized");
    double rate = 0.0;
    for (std::size_t n = 0; n < state.mode_count(); ++n)
        rate += std::norm(state.coefficients[n]) * spectrum.pole(n).gamma() / hbar;
    return rate;
}

CompareReport compare_times(const Superposition& sup, const GamowSpectrum& spectrum,
                            const std::vector<double>& time_grid, double hbar) {
    CompareReport rep;
    rep.spectrum = &spectrum;
    rep.gamma_over_hbar.reserve(spectrum.mode_count());
    for (std::size_t n = 0; n < spectrum.mode_count(); ++n)
        rep.gamma_over_hbar.push_back(spectrum.pole(n).gamma() / hbar);

    rep.echo = echo_curve(sup.s2.state, spectrum, time_grid, hbar);
    rep.echo_initial_rate = echo_rate(sup.s2.state, spectrum, hbar);
    rep.trace = off_diagonal(sup, spectrum, time_grid, hbar);
    rep.decoherence_time = rep.trace.decoherence_time;
    return rep;
}

}  // namespace gamow
