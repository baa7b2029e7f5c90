#ifndef GAMOW_SERIES_DETAIL_HPP
#define GAMOW_SERIES_DETAIL_HPP

#include <cmath>
#include <limits>

#include "gamow/core.hpp"

// Log-stabilized truncated exponential series shared by the coherent-state
// and decoherence layers.  Values are carried as exp(log_scale) * mantissa so
// labels of any size neither overflow nor flush the tail.

namespace gamow::detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(n!) from a one-time table: glibc's lgamma races on the global signgam,
// and these sums run inside OpenMP loops.
inline double log_factorial(int n) {
    constexpr int kTable = 4096;
    static const std::vector<double> table = [] {
        std::vector<double> t(kTable);
        for (int k = 0; k < kTable; ++k) t[static_cast<std::size_t>(k)] = std::lgamma(k + 1.0);
        return t;
    }();
    return n < kTable ? table[static_cast<std::size_t>(n)] : std::lgamma(n + 1.0);
}

// log( sum_{k=0}^{n_max} x^k / k! ), x >= 0.
inline double log_exp_sum(double x, int n_max) {
    if (x == 0.0) return 0.0;
    const double lx = std::log(x);
    double m = kNegInf;
    for (int k = 0; k <= n_max; ++k)
        m = std::max(m, k * lx - log_factorial(k));
    double s = 0.0;
    for (int k = 0; k <= n_max; ++k)
        s += std::exp(k * lx - log_factorial(k) - m);
    return m + std::log(s);
}

struct ScaledSum {
    double log_scale = kNegInf;
    Complex mantissa{0.0, 0.0};

    Complex times_exp(double log_prefactor) const {
        if (log_scale == kNegInf) return {0.0, 0.0};
        return std::exp(log_scale + log_prefactor) * mantissa;
    }
};

// sum_{n=0}^{N} x^n / n! e^{-i z_n t / hbar} over the spectrum's poles;
// x may be negative (sign folded into the mantissa).
inline ScaledSum poisson_phase_sum(double x, const GamowSpectrum& spectrum,
                                   double t, double hbar) {
    const int n_max = static_cast<int>(spectrum.mode_count()) - 1;
    const double lr = (x == 0.0) ? kNegInf : std::log(std::abs(x));
    const bool negative = x < 0.0;

    std::vector<double> lmag(spectrum.mode_count(), kNegInf);
    double m = kNegInf;
    for (int n = 0; n <= n_max; ++n) {
        const double decay = 0.5 * spectrum.pole(static_cast<std::size_t>(n)).gamma() * t / hbar;
        const double l = (n == 0) ? -decay : n * lr - log_factorial(n) - decay;
        lmag[static_cast<std::size_t>(n)] = l;
        m = std::max(m, l);
    }

    ScaledSum out;
    if (m == kNegInf) return out;
    out.log_scale = m;
    for (int n = 0; n <= n_max; ++n) {
        const double l = lmag[static_cast<std::size_t>(n)];
        if (l == kNegInf) continue;
        const double phase = -spectrum.pole(static_cast<std::size_t>(n)).e_r() * t / hbar;
        const double w = std::exp(l - m) * ((negative && (n % 2)) ? -1.0 : 1.0);
        out.mantissa += w * Complex(std::cos(phase), std::sin(phase));
    }
    return out;
}

// Same series restricted to poles that are exactly zero: the t -> inf limit
// of poisson_phase_sum when every other mode decays.
inline ScaledSum poisson_zero_mode_sum(double x, const GamowSpectrum& spectrum) {
    const int n_max = static_cast<int>(spectrum.mode_count()) - 1;
    const double lr = (x == 0.0) ? kNegInf : std::log(std::abs(x));
    const bool negative = x < 0.0;

    ScaledSum out;
    double m = kNegInf;
    for (int n = 0; n <= n_max; ++n) {
        const ResonancePole& p = spectrum.pole(static_cast<std::size_t>(n));
        if (p.e_r() != 0.0 || p.gamma() != 0.0) continue;
        const double l = (n == 0) ? 0.0 : n * lr - log_factorial(n);
        m = std::max(m, l);
    }
    if (m == kNegInf) return out;
    out.log_scale = m;
    for (int n = 0; n <= n_max; ++n) {
        const ResonancePole& p = spectrum.pole(static_cast<std::size_t>(n));
        if (p.e_r() != 0.0 || p.gamma() != 0.0) continue;
        const double l = (n == 0) ? 0.0 : n * lr - log_factorial(n);
        if (l == kNegInf) continue;
        out.mantissa += std::exp(l - m) * ((negative && (n % 2)) ? -1.0 : 1.0);
    }
    return out;
}

}  // namespace gamow::detail

#endif
