#include "gamow/coherent.hpp"

#include <cmath>
#include <stdexcept>

#include "series_detail.hpp"

namespace gamow {

namespace {

void require_same_truncation(const QuasiCoherentState& s1, const QuasiCoherentState& s2) {
    if (s1.n_max != s2.n_max)
        throw std::invalid_argument("quasi-coherent overlap: states truncated at different N");
}

}  // namespace

QuasiCoherentState make_quasi_coherent(Complex alpha, int n_max) {
    if (n_max < 1) throw std::invalid_argument("make_quasi_coherent: n_max must be >= 1");
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
        throw std::invalid_argument("make_quasi_coherent: non-finite label");

    const double x = std::norm(alpha);
    const double L = detail::log_exp_sum(x, n_max);
    const double theta = (x == 0.0) ? 0.0 : std::arg(alpha);

    QuasiCoherentState st;
    st.alpha = alpha;
    st.n_max = n_max;
    st.normalizer = std::exp(-0.5 * L);
    st.state.coefficients.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        double mag;
        if (x == 0.0) {
            mag = (n == 0) ? 1.0 : 0.0;
        } else {
            const double ln = n * std::log(x) - detail::log_factorial(n);
            mag = std::exp(0.5 * (ln - L));
        }
        st.state.coefficients[static_cast<std::size_t>(n)] =
            mag * Complex(std::cos(n * theta), std::sin(n * theta));
    }
    return st;
}

int recommended_mode_count(Complex alpha) {
    const double x = std::norm(alpha);
    return static_cast<int>(std::ceil(x + 10.0 * std::sqrt(std::max(x, 1.0)) + 20.0));
}

Complex overlap_exact(const QuasiCoherentState& s1, const QuasiCoherentState& s2) {
    require_same_truncation(s1, s2);
    const int n_max = s1.n_max;
    const double L1 = detail::log_exp_sum(std::norm(s1.alpha), n_max);
    const double L2 = detail::log_exp_sum(std::norm(s2.alpha), n_max);

    const Complex x = std::conj(s1.alpha) * s2.alpha;
    if (x == Complex(0.0, 0.0)) return std::exp(-0.5 * (L1 + L2));

    const double lr = std::log(std::abs(x));
    const double phi = std::arg(x);
    double m = detail::kNegInf;
    for (int n = 0; n <= n_max; ++n)
        m = std::max(m, n * lr - detail::log_factorial(n));
    Complex mant{0.0, 0.0};
    for (int n = 0; n <= n_max; ++n) {
        const double w = std::exp(n * lr - detail::log_factorial(n) - m);
        mant += w * Complex(std::cos(n * phi), std::sin(n * phi));
    }
    return std::exp(m - 0.5 * (L1 + L2)) * mant;
}

Complex overlap_gaussian_approx(Complex alpha1, Complex alpha2) {
    const Complex d = std::conj(alpha1) - alpha2;
    return std::exp(-0.5 * d * d);
}

Complex time_overlap(const QuasiCoherentState& s1, const QuasiCoherentState& s2,
                     const GamowSpectrum& spectrum, double t, double hbar) {
    require_same_truncation(s1, s2);
    if (s1.alpha.imag() != 0.0 || s2.alpha.imag() != 0.0)
        throw std::invalid_argument(
            "time_overlap: the mixed-state expansion assumes real labels; "
            "use real alpha1, alpha2 (rephase the states if needed)");
    if (spectrum.mode_count() != s1.mode_count())
        throw std::invalid_argument("time_overlap: spectrum/state mode count mismatch");
    if (!(t >= 0.0)) throw std::invalid_argument("time_overlap: t must be >= 0");
    if (!(hbar > 0.0)) throw std::invalid_argument("time_overlap: hbar must be > 0");

    const double L1 = detail::log_exp_sum(std::norm(s1.alpha), s1.n_max);
    const double L2 = detail::log_exp_sum(std::norm(s2.alpha), s2.n_max);
    const double x = s1.alpha.real() * s2.alpha.real();
    return detail::poisson_phase_sum(x, spectrum, t, hbar).times_exp(-0.5 * (L1 + L2));
}

namespace {

TimeSeries overlap_curve_common(const QuasiCoherentState& s1, const QuasiCoherentState& s2,
                                const GamowSpectrum& spectrum,
                                const std::vector<double>& grid, double hbar,
                                bool parallel) {
    if (grid.empty()) throw std::invalid_argument("time_overlap_curve: empty time grid");
    TimeSeries ts;
    ts.times = grid;
    ts.values.resize(grid.size());
    ts.validate();
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(grid.size()); ++i) {
            const auto k = static_cast<std::size_t>(i);
            ts.values[k] = time_overlap(s1, s2, spectrum, grid[k], hbar);
        }
    } else {
        for (std::size_t k = 0; k < grid.size(); ++k)
            ts.values[k] = time_overlap(s1, s2, spectrum, grid[k], hbar);
    }
    return ts;
}

}  // namespace

TimeSeries time_overlap_curve(const QuasiCoherentState& s1, const QuasiCoherentState& s2,
                              const GamowSpectrum& spectrum,
                              const std::vector<double>& time_grid, double hbar) {
    return overlap_curve_common(s1, s2, spectrum, time_grid, hbar, true);
}

TimeSeries serial::time_overlap_curve(const QuasiCoherentState& s1,
                                      const QuasiCoherentState& s2,
                                      const GamowSpectrum& spectrum,
                                      const std::vector<double>& time_grid, double hbar) {
    return overlap_curve_common(s1, s2, spectrum, time_grid, hbar, false);
}

MacroscopicityReport macroscopicity_check(Complex alpha1, Complex alpha2, double threshold) {
    if (!(threshold > 0.0) || !(threshold < 1.0))
        throw std::invalid_argument("macroscopicity_check: threshold must lie in (0, 1)");
    MacroscopicityReport rep;
    rep.threshold = threshold;
    rep.separation = std::abs(std::conj(alpha1) - alpha2);
    rep.overlap_magnitude = std::abs(overlap_gaussian_approx(alpha1, alpha2));
    rep.quasi_orthogonal = rep.overlap_magnitude < threshold;
    return rep;
}

}  // namespace gamow
