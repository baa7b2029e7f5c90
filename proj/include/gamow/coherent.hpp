#ifndef GAMOW_COHERENT_HPP
#define GAMOW_COHERENT_HPP

#include <vector>

#include "gamow/core.hpp"

namespace gamow {

/// Truncated coherent superposition of Gamow modes,
/// a_n = normalizer * alpha^n / sqrt(n!),  n = 0..n_max,
/// with the exact finite-N normalizer (sum_k |alpha|^{2k}/k!)^{-1/2}.
struct QuasiCoherentState {
    Complex alpha;
    int n_max = 1;
    double normalizer = 1.0;
    GamowState state;

    std::size_t mode_count() const noexcept { return state.mode_count(); }
};

/// The finite normalizer differs from the untruncated e^{-|alpha|^2/2} by
/// half the Poisson tail mass beyond n_max, which for |alpha|^2 <= n_max/2
/// is below the Chernoff bound e^{-n_max (ln 2 - 1/2)}.
QuasiCoherentState make_quasi_coherent(Complex alpha, int n_max);

/// Mode count that keeps the truncated Poisson tail mass below ~1e-12.
int recommended_mode_count(Complex alpha);

/// Exact finite-N overlap
/// <s1|s2> = N1 N2 sum_n (conj(alpha1) alpha2)^n / n!.
Complex overlap_exact(const QuasiCoherentState& s1, const QuasiCoherentState& s2);

/// Large-N resummation exp{-(conj(alpha1) - alpha2)^2 / 2}.
Complex overlap_gaussian_approx(Complex alpha1, Complex alpha2);

/// <s1(0)|s2(t)> = N1 N2 sum_n (alpha1 alpha2)^n / n! e^{-i z_n t/hbar}.
/// Labels must be real; the mixed-label derivation assumes it.
Complex time_overlap(const QuasiCoherentState& s1, const QuasiCoherentState& s2,
                     const GamowSpectrum& spectrum, double t, double hbar = 1.0);

TimeSeries time_overlap_curve(const QuasiCoherentState& s1, const QuasiCoherentState& s2,
                              const GamowSpectrum& spectrum,
                              const std::vector<double>& time_grid, double hbar = 1.0);
namespace serial {
TimeSeries time_overlap_curve(const QuasiCoherentState& s1, const QuasiCoherentState& s2,
                              const GamowSpectrum& spectrum,
                              const std::vector<double>& time_grid, double hbar = 1.0);
}

struct MacroscopicityReport {
    bool quasi_orthogonal = false;
    double separation = 0.0;         // |conj(alpha1) - alpha2|
    double overlap_magnitude = 1.0;  // |overlap_gaussian_approx|
    double threshold = 0.0;
};

/// True iff the Gaussian-limit overlap magnitude falls below the threshold.
MacroscopicityReport macroscopicity_check(Complex alpha1, Complex alpha2, double threshold);

}  // namespace gamow

#endif
