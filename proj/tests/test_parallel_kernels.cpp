// The OpenMP kernels must agree bitwise with their serial references: every
// grid slot is computed independently, so scheduling cannot change results.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gamow/coherent.hpp"
#include "gamow/decoherence.hpp"
#include "gamow/dynamics.hpp"
#include "gamow/resolvent.hpp"

using namespace gamow;

namespace {

void check_identical(const TimeSeries& a, const TimeSeries& b) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.times[i] == b.times[i]);
        CHECK(a.values[i] == b.values[i]);
    }
}

}  // namespace

TEST_CASE("echo curve: parallel equals serial bitwise") {
    const GamowSpectrum spectrum = ladder_spectrum(ResonancePole(1.0, 0.2), 80);
    const QuasiCoherentState st = make_quasi_coherent(2.0, 80);
    const auto grid = uniform_grid(0.0, 30.0, 1501);
    check_identical(serial::echo_curve(st.state, spectrum, grid),
                    echo_curve(st.state, spectrum, grid));
}

TEST_CASE("time-overlap curve: parallel equals serial bitwise") {
    const GamowSpectrum spectrum = ladder_spectrum(ResonancePole(1.0, 0.2), 80);
    const QuasiCoherentState s1 = make_quasi_coherent(1.0, 80);
    const QuasiCoherentState s2 = make_quasi_coherent(3.0, 80);
    const auto grid = uniform_grid(0.0, 12.0, 977);
    check_identical(serial::time_overlap_curve(s1, s2, spectrum, grid),
                    time_overlap_curve(s1, s2, spectrum, grid));
}

TEST_CASE("off-diagonal trace: parallel equals serial bitwise") {
    const GamowSpectrum spectrum = ladder_spectrum(ResonancePole(1.0, 0.2), 76);
    const Superposition sup = normalized_superposition(
        0.6, 0.8, make_quasi_coherent(0.0, 76), make_quasi_coherent(4.0, 76));
    const auto grid = uniform_grid(0.0, 40.0, 1203);
    const OffDiagonalTrace par = off_diagonal(sup, spectrum, grid);
    const OffDiagonalTrace ser = serial::off_diagonal(sup, spectrum, grid);
    check_identical(ser.rho12, par.rho12);
    check_identical(ser.rho21, par.rho21);
    CHECK(ser.asymptote_12 == par.asymptote_12);
    CHECK(ser.decoherence_time == par.decoherence_time);
}

TEST_CASE("eta grid: parallel equals serial bitwise") {
    const FriedrichsModelSpec model(1.0, 0.2, FormFactor::rational_squared(1.0, 1.0, 2));
    std::vector<Complex> pts;
    for (int i = 0; i < 48; ++i) pts.emplace_back(0.6 + 0.02 * i, -0.03 - 0.004 * i);
    const auto ser = serial::eta_second_sheet_grid(model, pts);
    const auto par = eta_second_sheet_grid(model, pts);
    REQUIRE(ser.size() == par.size());
    for (std::size_t i = 0; i < ser.size(); ++i) {
        CHECK(ser[i].value == par[i].value);
        CHECK(ser[i].quadrature_error_estimate == par[i].quadrature_error_estimate);
    }
}
