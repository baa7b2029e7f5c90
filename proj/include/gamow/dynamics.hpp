#ifndef GAMOW_DYNAMICS_HPP
#define GAMOW_DYNAMICS_HPP

#include <vector>

#include "gamow/core.hpp"

namespace gamow {

/// Diagonal (non-unitary) evolution in the Gamow basis.  Forward multiplies
/// mode n by e^{-i tau z_n / hbar}; Backward by e^{+i tau z_n^* / hbar}.
/// Both decay: attempted reversal does not undo the widths.
struct EvolutionOperator {
    enum class Direction { Forward, Backward };
    Direction direction;
    GamowSpectrum spectrum;
    double tau;
    double hbar;
};

EvolutionOperator forward_evolution(GamowSpectrum spectrum, double tau, double hbar = 1.0);
EvolutionOperator backward_evolution(GamowSpectrum spectrum, double tau, double hbar = 1.0);

GamowState evolve(const EvolutionOperator& op, const GamowState& state);

/// A(t) = sum_n conj(a_n) b_n e^{-i E_n t/hbar} e^{-Gamma_n t/(2 hbar)}.
Complex survival_amplitude(const GamowState& bra, const GamowState& ket,
                           const GamowSpectrum& spectrum, double t, double hbar = 1.0);

struct EchoResult {
    Complex amplitude;                          // bare matrix element
    double probability = 0.0;                   // |amplitude|^2
    std::vector<double> per_mode_contributions; // e^{-tau gamma_n/hbar} |a_n|^2
};

/// Loschmidt echo of a state under forward-then-backward evolution:
/// amplitude = sum_n e^{-tau gamma_n/hbar} |a_n|^2.
EchoResult echo(const GamowState& state, const GamowSpectrum& spectrum,
                double tau, double hbar = 1.0);

TimeSeries echo_curve(const GamowState& state, const GamowSpectrum& spectrum,
                      const std::vector<double>& time_grid, double hbar = 1.0);
namespace serial {
TimeSeries echo_curve(const GamowState& state, const GamowSpectrum& spectrum,
                      const std::vector<double>& time_grid, double hbar = 1.0);
}

/// Field reversal: z = E - i Gamma/2  ->  -z^* = -E - i Gamma/2.  The real
/// part flips, the width stays.
ResonancePole backward_hamiltonian_map(const ResonancePole& pole);

}  // namespace gamow

#endif
