#include "gamow/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gamow/quadrature.hpp"

namespace gamow {

ResonancePole::ResonancePole(double e_r, double gamma) : e_r_(e_r), gamma_(gamma) {
    if (!std::isfinite(e_r) || !std::isfinite(gamma))
        throw std::invalid_argument("ResonancePole: non-finite energy");
    if (gamma < 0.0)
        throw std::invalid_argument("ResonancePole: width must be nonnegative");
}

ResonancePole ResonancePole::from_z(Complex z) {
    if (z.imag() > 0.0)
        throw std::invalid_argument("ResonancePole: decaying pole needs Im(z) <= 0");
    return {z.real(), -2.0 * z.imag()};
}

FormFactor FormFactor::rational_squared(double amplitude, double scale, int power) {
    if (!(scale > 0.0) || !std::isfinite(amplitude) || amplitude == 0.0)
        throw std::invalid_argument("FormFactor: need finite nonzero amplitude and scale > 0");
    if (power < 0) throw std::invalid_argument("FormFactor: power must be nonnegative");
    FormFactor ff;
    ff.kind_ = Kind::RationalSquared;
    ff.amplitude_ = amplitude;
    ff.scale_ = scale;
    ff.power_ = power;
    ff.check_square_integrable();
    return ff;
}

FormFactor FormFactor::gaussian_cutoff(double amplitude, double scale) {
    if (!(scale > 0.0) || !std::isfinite(amplitude) || amplitude == 0.0)
        throw std::invalid_argument("FormFactor: need finite nonzero amplitude and scale > 0");
    FormFactor ff;
    ff.kind_ = Kind::GaussianCutoff;
    ff.amplitude_ = amplitude;
    ff.scale_ = scale;
    ff.check_square_integrable();
    return ff;
}

FormFactor FormFactor::tabulated(std::vector<double> omegas, std::vector<double> values) {
    if (omegas.size() != values.size() || omegas.size() < 2)
        throw std::invalid_argument("FormFactor: table needs >= 2 matching nodes");
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        if (!std::isfinite(omegas[i]) || !std::isfinite(values[i]))
            throw std::invalid_argument("FormFactor: non-finite table entry");
        if (omegas[i] < 0.0)
            throw std::invalid_argument("FormFactor: table nodes must lie in [0, inf)");
        if (i > 0 && omegas[i] <= omegas[i - 1])
            throw std::invalid_argument("FormFactor: table nodes must increase");
    }
    FormFactor ff;
    ff.kind_ = Kind::Tabulated;
    ff.tab_w_ = std::move(omegas);
    ff.tab_f_ = std::move(values);
    ff.scale_ = ff.tab_w_.back();
    return ff;  // compact support: square-integrability is automatic
}

double FormFactor::f2(double w) const {
    if (w < 0.0) throw std::domain_error("FormFactor: omega must be >= 0");
    switch (kind_) {
        case Kind::RationalSquared: {
            const double u = w / scale_;
            return amplitude_ * amplitude_ * w * std::pow(1.0 + u * u, -power_);
        }
        case Kind::GaussianCutoff: {
            const double u = w / scale_;
            return amplitude_ * amplitude_ * w * std::exp(-u * u);
        }
        case Kind::Tabulated: {
            if (w <= tab_w_.front() || w >= tab_w_.back()) {
                if (w == tab_w_.front()) { const double f = tab_f_.front(); return f * f; }
                if (w == tab_w_.back()) { const double f = tab_f_.back(); return f * f; }
                return 0.0;
            }
            auto it = std::upper_bound(tab_w_.begin(), tab_w_.end(), w);
            const std::size_t i = static_cast<std::size_t>(it - tab_w_.begin());
            const double s = (w - tab_w_[i - 1]) / (tab_w_[i] - tab_w_[i - 1]);
            const double f = (1.0 - s) * tab_f_[i - 1] + s * tab_f_[i];
            return f * f;
        }
    }
    return 0.0;
}

double FormFactor::f2_derivative(double w) const {
    if (w < 0.0) throw std::domain_error("FormFactor: omega must be >= 0");
    const double a2 = amplitude_ * amplitude_;
    switch (kind_) {
        case Kind::RationalSquared: {
            const double u = w / scale_;
            const double base = 1.0 + u * u;
            return a2 * std::pow(base, -power_ - 1) *
                   (base - 2.0 * power_ * u * u);
        }
        case Kind::GaussianCutoff: {
            const double u = w / scale_;
            return a2 * std::exp(-u * u) * (1.0 - 2.0 * u * u);
        }
        case Kind::Tabulated: {
            if (w <= tab_w_.front() || w >= tab_w_.back()) return 0.0;
            auto it = std::upper_bound(tab_w_.begin(), tab_w_.end(), w);
            const std::size_t i = static_cast<std::size_t>(it - tab_w_.begin());
            const double slope = (tab_f_[i] - tab_f_[i - 1]) / (tab_w_[i] - tab_w_[i - 1]);
            const double s = (w - tab_w_[i - 1]) / (tab_w_[i] - tab_w_[i - 1]);
            const double f = (1.0 - s) * tab_f_[i - 1] + s * tab_f_[i];
            return 2.0 * f * slope;
        }
    }
    return 0.0;
}

Complex FormFactor::f2_continued(Complex z) const {
    const double a2 = amplitude_ * amplitude_;
    switch (kind_) {
        case Kind::RationalSquared: {
            const Complex u = z / scale_;
            return a2 * z * std::pow(1.0 + u * u, Complex(-power_, 0.0));
        }
        case Kind::GaussianCutoff: {
            const Complex u = z / scale_;
            return a2 * z * std::exp(-u * u);
        }
        case Kind::Tabulated:
            throw std::domain_error(
                "FormFactor: tabulated data has no analytic continuation");
    }
    return {};
}

double FormFactor::support_upper() const noexcept {
    if (kind_ == Kind::Tabulated) return tab_w_.back();
    return std::numeric_limits<double>::infinity();
}

std::vector<double> FormFactor::quadrature_breakpoints() const {
    if (kind_ == Kind::Tabulated) return tab_w_;
    return {scale_};
}

void FormFactor::check_square_integrable() const {
    // Geometric windows [T 2^j, T 2^{j+1}]: the partial sums must settle.
    const double T = std::max(scale_, 1.0);
    auto f = [this](double w) { return Complex(f2(w), 0.0); };

    quad::Tolerances rough{1e-10, 1e-8, 30};
    quad::Result head = quad::integrate(f, 0.0, T, rough);
    double total = std::abs(head.value);
    if (!std::isfinite(total))
        throw std::invalid_argument("FormFactor: f^2 is not integrable near the origin");

    double lo = T;
    for (int j = 0; j < 48; ++j) {
        const double hi = 2.0 * lo;
        quad::Result win = quad::integrate(f, lo, hi, rough);
        const double w = std::abs(win.value);
        if (!std::isfinite(w))
            throw std::invalid_argument("FormFactor: f^2 tail integral is not finite");
        total += w;
        if (w < 1e-14 * std::max(1.0, total)) return;  // tail converged
        lo = hi;
    }
    throw std::invalid_argument("FormFactor: f^2 tail quadrature does not converge");
}

FriedrichsModelSpec::FriedrichsModelSpec(double omega0_in, double lambda_in, FormFactor ff)
    : omega0(omega0_in), lambda(lambda_in), form_factor(std::move(ff)) {
    if (!(omega0 > 0.0))
        throw std::invalid_argument("FriedrichsModelSpec: omega0 must be > 0");
    if (!std::isfinite(lambda))
        throw std::invalid_argument("FriedrichsModelSpec: lambda must be finite");
}

GamowSpectrum GamowSpectrum::from_poles(std::vector<ResonancePole> poles,
                                        Provenance provenance) {
    if (poles.empty())
        throw std::invalid_argument("GamowSpectrum: empty pole list");
    GamowSpectrum s;
    s.poles_ = std::move(poles);
    s.provenance_ = provenance;
    return s;
}

GamowSpectrum GamowSpectrum::ladder(const ResonancePole& base, int n_max,
                                    Provenance provenance) {
    if (n_max < 1)
        throw std::invalid_argument(
            "GamowSpectrum: a one-mode ladder carries no dynamics (n_max >= 1)");
    std::vector<ResonancePole> poles;
    poles.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n)
        poles.emplace_back(n * base.e_r(), n * base.gamma());
    GamowSpectrum s;
    s.poles_ = std::move(poles);
    s.provenance_ = provenance;
    return s;
}

GamowSpectrum ladder_spectrum(const ResonancePole& base, int n_max) {
    return GamowSpectrum::ladder(base, n_max);
}

double GamowState::norm_squared() const noexcept {
    double s = 0.0;
    for (const Complex& c : coefficients) s += std::norm(c);
    return s;
}

bool GamowState::is_normalized(double tol) const noexcept {
    return std::abs(norm_squared() - 1.0) <= tol;
}

GamowState GamowState::unit(std::size_t k, std::size_t modes) {
    if (k >= modes) throw std::invalid_argument("GamowState::unit: index out of range");
    GamowState st;
    st.coefficients.assign(modes, Complex(0.0, 0.0));
    st.coefficients[k] = 1.0;
    return st;
}

Complex pseudometric_pair(const GamowState& bra, const GamowState& ket) {
    if (bra.mode_count() != ket.mode_count())
        throw std::invalid_argument("pseudometric_pair: mode count mismatch");
    Complex s{0.0, 0.0};
    for (std::size_t n = 0; n < bra.mode_count(); ++n)
        s += std::conj(bra.coefficients[n]) * ket.coefficients[n];
    return s;
}

void TimeSeries::validate() const {
    if (times.size() != values.size())
        throw std::invalid_argument("TimeSeries: times/values length mismatch");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("TimeSeries: times must strictly increase");
}

std::vector<double> uniform_grid(double t_start, double t_end, std::size_t samples) {
    if (samples < 2 || !(t_end > t_start))
        throw std::invalid_argument("uniform_grid: need samples >= 2 and t_end > t_start");
    std::vector<double> g(samples);
    const double dt = (t_end - t_start) / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i)
        g[i] = t_start + dt * static_cast<double>(i);
    g.back() = t_end;
    return g;
}

}  // namespace gamow
