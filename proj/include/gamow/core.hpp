#ifndef GAMOW_CORE_HPP
#define GAMOW_CORE_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace gamow {

using Complex = std::complex<double>;

/// One resonance energy z = e_r - i*gamma/2.  The conjugate (anti-resonance)
/// pole is always derived, never stored.
class ResonancePole {
public:
    ResonancePole() = default;
    ResonancePole(double e_r, double gamma);

    double e_r() const noexcept { return e_r_; }
    double gamma() const noexcept { return gamma_; }
    Complex z() const noexcept { return {e_r_, -0.5 * gamma_}; }

    /// Build from a complex energy in the closed lower half-plane.
    static ResonancePole from_z(Complex z);

private:
    double e_r_ = 0.0;
    double gamma_ = 0.0;
};

/// Coupling function f(omega) on [0, inf), handled through its square f^2.
/// The analytic kinds carry a closed-form continuation of f^2 into the
/// complex plane; tabulated data does not and is rejected by second-sheet
/// operations.
class FormFactor {
public:
    enum class Kind { RationalSquared, GaussianCutoff, Tabulated };

    // f^2(w) = amplitude^2 * w * (1 + (w/scale)^2)^(-power)
    static FormFactor rational_squared(double amplitude, double scale, int power);
    // f^2(w) = amplitude^2 * w * exp(-(w/scale)^2)
    static FormFactor gaussian_cutoff(double amplitude, double scale);
    // piecewise-linear f given on increasing nodes; zero outside the table
    static FormFactor tabulated(std::vector<double> omegas, std::vector<double> values);

    Kind kind() const noexcept { return kind_; }
    bool has_continuation() const noexcept { return kind_ != Kind::Tabulated; }

    double f2(double omega) const;
    double f2_derivative(double omega) const;
    Complex f2_continued(Complex z) const;

    /// Characteristic decay scale, used to place quadrature breakpoints.
    double scale() const noexcept { return scale_; }
    /// Upper end of the support (+inf for the analytic kinds).
    double support_upper() const noexcept;
    /// Points where integrands built on f^2 deserve a panel boundary
    /// (the decay scale, or every kink of a tabulated factor).
    std::vector<double> quadrature_breakpoints() const;

private:
    FormFactor() = default;
    void check_square_integrable() const;

    Kind kind_ = Kind::RationalSquared;
    double amplitude_ = 1.0;
    double scale_ = 1.0;
    int power_ = 2;
    std::vector<double> tab_w_, tab_f_;
};

/// Bound state at omega_0 > 0 embedded in the continuum [0, inf), coupled
/// with strength lambda through the form factor.
struct FriedrichsModelSpec {
    double omega0 = 1.0;
    double lambda = 0.0;
    FormFactor form_factor;

    FriedrichsModelSpec(double omega0, double lambda, FormFactor ff);
};

enum class Provenance { Solved, Ladder, UserSupplied };

/// Ordered pole list z_0..z_N shared by the dynamics, coherent-state and
/// decoherence layers.
class GamowSpectrum {
public:
    static GamowSpectrum from_poles(std::vector<ResonancePole> poles,
                                    Provenance provenance = Provenance::UserSupplied);
    /// poles[n] = n * base for n = 0..n_max (poles[0] is exactly zero).
    static GamowSpectrum ladder(const ResonancePole& base, int n_max,
                                Provenance provenance = Provenance::Ladder);

    std::size_t mode_count() const noexcept { return poles_.size(); }
    const ResonancePole& pole(std::size_t n) const { return poles_.at(n); }
    const std::vector<ResonancePole>& poles() const noexcept { return poles_; }
    Provenance provenance() const noexcept { return provenance_; }

private:
    GamowSpectrum() = default;
    std::vector<ResonancePole> poles_;
    Provenance provenance_ = Provenance::UserSupplied;
};

GamowSpectrum ladder_spectrum(const ResonancePole& base, int n_max);

/// Coefficient vector over the decaying modes; the matching bra carries the
/// conjugate coefficients on the growing duals.
struct GamowState {
    std::vector<Complex> coefficients;

    std::size_t mode_count() const noexcept { return coefficients.size(); }
    double norm_squared() const noexcept;
    bool is_normalized(double tol = 1e-12) const noexcept;

    static GamowState unit(std::size_t k, std::size_t modes);
};

/// <bra|ket> under the bi-orthogonal pairing: sum conj(a_n) b_n.
Complex pseudometric_pair(const GamowState& bra, const GamowState& ket);

struct TimeSeries {
    std::vector<double> times;
    std::vector<Complex> values;

    std::size_t size() const noexcept { return times.size(); }
    void validate() const;  // strictly increasing grid, matching lengths
};

/// Uniform grid with both endpoints included.
std::vector<double> uniform_grid(double t_start, double t_end, std::size_t samples);

}  // namespace gamow

#endif
