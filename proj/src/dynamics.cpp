#include "gamow/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace gamow {

namespace {

// e^{-x} with underflow pinned to an exact zero past the IEEE range.
double decay_factor(double x) { return x > 700.0 ? 0.0 : std::exp(-x); }

EvolutionOperator make_op(EvolutionOperator::Direction dir, GamowSpectrum spectrum,
                          double tau, double hbar) {
    if (!(tau >= 0.0))
        throw std::invalid_argument("evolution: decaying modes evolve forward only (tau >= 0)");
    if (!(hbar > 0.0)) throw std::invalid_argument("evolution: hbar must be > 0");
    return {dir, std::move(spectrum), tau, hbar};
}

}  // namespace

EvolutionOperator forward_evolution(GamowSpectrum spectrum, double tau, double hbar) {
    return make_op(EvolutionOperator::Direction::Forward, std::move(spectrum), tau, hbar);
}

EvolutionOperator backward_evolution(GamowSpectrum spectrum, double tau, double hbar) {
    return make_op(EvolutionOperator::Direction::Backward, std::move(spectrum), tau, hbar);
}

GamowState evolve(const EvolutionOperator& op, const GamowState& state) {
    if (state.mode_count() != op.spectrum.mode_count())
        throw std::invalid_argument("evolve: state/spectrum mode count mismatch");
    const bool forward = op.direction == EvolutionOperator::Direction::Forward;

    GamowState out = state;
    for (std::size_t n = 0; n < out.mode_count(); ++n) {
        const ResonancePole& p = op.spectrum.pole(n);
        const double mag = decay_factor(0.5 * p.gamma() * op.tau / op.hbar);
        const double phase = p.e_r() * op.tau / op.hbar;
        // forward: e^{-i tau z/hbar}; backward: e^{+i tau z*/hbar} -- both decay
        const Complex factor = mag * Complex(std::cos(phase),
                                             forward ? -std::sin(phase) : std::sin(phase));
        out.coefficients[n] *= factor;
    }
    return out;
}

Complex survival_amplitude(const GamowState& bra, const GamowState& ket,
                           const GamowSpectrum& spectrum, double t, double hbar) {
    if (bra.mode_count() != ket.mode_count() || bra.mode_count() != spectrum.mode_count())
        throw std::invalid_argument("survival_amplitude: mode count mismatch");
    if (!(t >= 0.0)) throw std::invalid_argument("survival_amplitude: t must be >= 0");
    if (!(hbar > 0.0)) throw std::invalid_argument("survival_amplitude: hbar must be > 0");

    Complex a{0.0, 0.0};
    for (std::size_t n = 0; n < bra.mode_count(); ++n) {
        const ResonancePole& p = spectrum.pole(n);
        const double mag = decay_factor(0.5 * p.gamma() * t / hbar);
        const double phase = p.e_r() * t / hbar;
        a += std::conj(bra.coefficients[n]) * ket.coefficients[n] *
             (mag * Complex(std::cos(phase), -std::sin(phase)));
    }
    return a;
}

EchoResult echo(const GamowState& state, const GamowSpectrum& spectrum,
                double tau, double hbar) {
    if (state.mode_count() != spectrum.mode_count())
        throw std::invalid_argument("echo: state/spectrum mode count mismatch");
    if (!(tau >= 0.0)) throw std::invalid_argument("echo: tau must be >= 0");
    if (!(hbar > 0.0)) throw std::invalid_argument("echo: hbar must be > 0");

    EchoResult r;
    r.per_mode_contributions.resize(state.mode_count());
    double sum = 0.0;
    for (std::size_t n = 0; n < state.mode_count(); ++n) {
        const double w = decay_factor(spectrum.pole(n).gamma() * tau / hbar) *
                         std::norm(state.coefficients[n]);
        r.per_mode_contributions[n] = w;
        sum += w;
    }
    r.amplitude = Complex(sum, 0.0);
    r.probability = sum * sum;
    return r;
}

TimeSeries serial::echo_curve(const GamowState& state, const GamowSpectrum& spectrum,
                              const std::vector<double>& time_grid, double hbar) {
    TimeSeries ts;
    ts.times = time_grid;
    ts.values.resize(time_grid.size());
    ts.validate();
    if (time_grid.empty()) throw std::invalid_argument("echo_curve: empty time grid");
    if (!(time_grid.front() >= 0.0))
        throw std::invalid_argument("echo_curve: grid must be nonnegative");
    for (std::size_t i = 0; i < time_grid.size(); ++i)
        ts.values[i] = echo(state, spectrum, time_grid[i], hbar).amplitude;
    return ts;
}

TimeSeries echo_curve(const GamowState& state, const GamowSpectrum& spectrum,
                      const std::vector<double>& time_grid, double hbar) {
    TimeSeries ts;
    ts.times = time_grid;
    ts.values.resize(time_grid.size());
    ts.validate();
    if (time_grid.empty()) throw std::invalid_argument("echo_curve: empty time grid");
    if (!(time_grid.front() >= 0.0))
        throw std::invalid_argument("echo_curve: grid must be nonnegative");
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(time_grid.size()); ++i) {
        const auto k = static_cast<std::size_t>(i);
        ts.values[k] = echo(state, spectrum, time_grid[k], hbar).amplitude;
    }
    return ts;
}

ResonancePole backward_hamiltonian_map(const ResonancePole& pole) {
    return {-pole.e_r(), pole.gamma()};
}

}  // namespace gamow
