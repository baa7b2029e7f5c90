#ifndef GAMOW_DECOHERENCE_HPP
#define GAMOW_DECOHERENCE_HPP

#include <vector>

#include "gamow/core.hpp"
#include "gamow/coherent.hpp"

namespace gamow {

/// |Phi(0)> = a |alpha1(0)> + b |alpha2(0)>.
struct Superposition {
    Complex a;
    Complex b;
    QuasiCoherentState s1;
    QuasiCoherentState s2;
    bool normalized = false;  // |a|^2 + |b|^2 + 2 Re(conj(a) b <s1|s2>) == 1
};

Superposition make_superposition(Complex a, Complex b,
                                 QuasiCoherentState s1, QuasiCoherentState s2);
/// Same, with a and b rescaled so the state is exactly normalized.
Superposition normalized_superposition(Complex a, Complex b,
                                       QuasiCoherentState s1, QuasiCoherentState s2);

/// Coefficients of the superposition as a plain Gamow state.
GamowState expand(const Superposition& sup);

struct OffDiagonalTrace {
    TimeSeries rho12;
    TimeSeries rho21;
    Complex asymptote_12;
    double decoherence_time = 0.0;  // +inf when the drop level is never reached
    bool macroscopic = false;       // labels passed the quasi-orthogonality check
};

/*
 * Off-diagonal density-matrix entries in the frozen preferred basis,
 * evaluated exactly from the four time overlaps T_ij(t) = <a_i(0)|a_j(t)>:
 *
 *   rho12(t) = a b* T11(t) conj(T22(t)) + conj(a) b T12(t) conj(T21(t))
 *   rho21(t) = a b* T21(t) conj(T12(t)) + conj(a) b T22(t) conj(T11(t))
 *
 * (bras of evolved states carry conjugated coefficients, hence the conj).
 * Requires real labels; `macroscopic` reports whether the quasi-orthogonality
 * premise holds at threshold 1e-3.
 */
OffDiagonalTrace off_diagonal(const Superposition& sup, const GamowSpectrum& spectrum,
                              const std::vector<double>& time_grid, double hbar = 1.0,
                              double drop = 0.36787944117144233);
namespace serial {
OffDiagonalTrace off_diagonal(const Superposition& sup, const GamowSpectrum& spectrum,
                              const std::vector<double>& time_grid, double hbar = 1.0,
                              double drop = 0.36787944117144233);
}

/// Poisson-sum approximation (alpha1 = 0 required):
/// rho12(t) ~ a b* N2^2 sum_n (|alpha2|^2)^n/n! e^{-i z_n t/hbar},
/// rho21 the same with conj(a) b.  Keeps the constant n = 0 term.
OffDiagonalTrace off_diagonal_poisson_sum(const Superposition& sup,
                                          const GamowSpectrum& spectrum,
                                          const std::vector<double>& time_grid,
                                          double hbar = 1.0,
                                          double drop = 0.36787944117144233);

/// Single-pole truncation: rho12(t) ~ a b* N2^2 e^{-i z_1 t/hbar},
/// which decays to zero whenever Gamma_1 > 0.
OffDiagonalTrace off_diagonal_single_pole(const Superposition& sup,
                                          const GamowSpectrum& spectrum,
                                          const std::vector<double>& time_grid,
                                          double hbar = 1.0,
                                          double drop = 0.36787944117144233);

/// First time |rho12(t) - asymptote| falls to drop * |rho12(0) - asymptote|,
/// linearly interpolated between samples; +inf if never reached.
double decoherence_time(const OffDiagonalTrace& trace, double drop = 0.36787944117144233);

/// Initial logarithmic decay rate of the echo: sum_n |a_n|^2 gamma_n / hbar.
double echo_rate(const GamowState& state, const GamowSpectrum& spectrum, double hbar = 1.0);

/// Echo and decoherence curves generated from one shared spectrum, plus the
/// extracted characteristic quantities.
struct CompareReport {
    const GamowSpectrum* spectrum = nullptr;  // the instance both curves used
    std::vector<double> gamma_over_hbar;
    TimeSeries echo;
    double echo_initial_rate = 0.0;
    OffDiagonalTrace trace;
    double decoherence_time = 0.0;
};

CompareReport compare_times(const Superposition& sup, const GamowSpectrum& spectrum,
                            const std::vector<double>& time_grid, double hbar = 1.0);

}  // namespace gamow

#endif
