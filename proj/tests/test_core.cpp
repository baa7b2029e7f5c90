#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gamow/core.hpp"

using namespace gamow;

TEST_CASE("resonance pole stores energy and width") {
    ResonancePole p(1.5, 0.3);
    CHECK(p.z() == Complex(1.5, -0.15));
    CHECK_THROWS_AS(ResonancePole(1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(ResonancePole::from_z(Complex(1.0, 0.2)), std::invalid_argument);
    CHECK(ResonancePole::from_z(Complex(2.0, -0.05)).gamma() == doctest::Approx(0.1));
}

TEST_CASE("pseudometric pairing is the bi-orthogonal coefficient sum") {
    const GamowState e1 = GamowState::unit(1, 4);
    const GamowState e2 = GamowState::unit(2, 4);

    CHECK(pseudometric_pair(e2, e2) == Complex(1.0, 0.0));
    CHECK(pseudometric_pair(e1, e2) == Complex(0.0, 0.0));

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    GamowState plus{{inv_sqrt2, inv_sqrt2, 0.0, 0.0}};
    GamowState minus{{inv_sqrt2, -inv_sqrt2, 0.0, 0.0}};
    CHECK(std::abs(pseudometric_pair(plus, minus)) < 1e-15);

    GamowState three{{1.0, 0.0, 0.0}};
    CHECK_THROWS_AS(pseudometric_pair(three, e1), std::invalid_argument);
}

TEST_CASE("pseudometric pairing is sesquilinear") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto rand_state = [&](std::size_t n) {
        GamowState st;
        for (std::size_t i = 0; i < n; ++i) st.coefficients.emplace_back(u(rng), u(rng));
        return st;
    };
    for (int trial = 0; trial < 50; ++trial) {
        const GamowState x = rand_state(6), y = rand_state(6), z = rand_state(6);
        const Complex mu(u(rng), u(rng)), nu(u(rng), u(rng));

        GamowState ket;  // mu*y + nu*z
        for (std::size_t i = 0; i < 6; ++i)
            ket.coefficients.push_back(mu * y.coefficients[i] + nu * z.coefficients[i]);
        const Complex lhs = pseudometric_pair(x, ket);
        const Complex rhs = mu * pseudometric_pair(x, y) + nu * pseudometric_pair(x, z);
        CHECK(std::abs(lhs - rhs) < 1e-14);

        GamowState bra;  // mu*x + nu*y, conjugate-linear slot
        for (std::size_t i = 0; i < 6; ++i)
            bra.coefficients.push_back(mu * x.coefficients[i] + nu * y.coefficients[i]);
        const Complex lhsb = pseudometric_pair(bra, z);
        const Complex rhsb = std::conj(mu) * pseudometric_pair(x, z) +
                             std::conj(nu) * pseudometric_pair(y, z);
        CHECK(std::abs(lhsb - rhsb) < 1e-14);
    }
}

TEST_CASE("ladder spectrum scales the base pole") {
    const GamowSpectrum s = ladder_spectrum(ResonancePole(1.0, 0.2), 3);
    REQUIRE(s.mode_count() == 4);
    CHECK(s.provenance() == Provenance::Ladder);
    CHECK(s.pole(0).e_r() == 0.0);
    CHECK(s.pole(0).gamma() == 0.0);
    CHECK(s.pole(1).z() == Complex(1.0, -0.5 * 0.2));
    CHECK(s.pole(2).z() == Complex(2.0, -0.5 * (2 * 0.2)));
    CHECK(s.pole(3).z() == Complex(3.0, -0.5 * (3 * 0.2)));

    SUBCASE("zero-width base gives an all-real ladder") {
        const GamowSpectrum real_ladder = ladder_spectrum(ResonancePole(0.7, 0.0), 2);
        for (std::size_t n = 0; n < real_ladder.mode_count(); ++n)
            CHECK(real_ladder.pole(n).gamma() == 0.0);
    }

    SUBCASE("one-mode ladder is rejected") {
        CHECK_THROWS_AS(ladder_spectrum(ResonancePole(1.0, 0.1), 0), std::invalid_argument);
    }

    SUBCASE("width multiples are exact") {
        const GamowSpectrum big = ladder_spectrum(ResonancePole(0.3, 0.07), 40);
        for (std::size_t n = 0; n < big.mode_count(); ++n) {
            CHECK(big.pole(n).gamma() == static_cast<double>(n) * big.pole(1).gamma());
            CHECK(big.pole(n).e_r() == static_cast<double>(n) * big.pole(1).e_r());
        }
    }
}

TEST_CASE("form factor construction enforces square integrability") {
    CHECK_NOTHROW(FormFactor::rational_squared(1.0, 1.0, 2));
    CHECK_NOTHROW(FormFactor::gaussian_cutoff(2.0, 0.5));
    // f^2 = w and f^2 ~ w^-1 tails both diverge
    CHECK_THROWS_AS(FormFactor::rational_squared(1.0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(FormFactor::rational_squared(1.0, 1.0, 1), std::invalid_argument);

    const FormFactor ff = FormFactor::rational_squared(1.0, 1.0, 2);
    CHECK(ff.f2(1.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(ff.f2(0.0) == 0.0);
    CHECK(ff.has_continuation());
    // continuation agrees with the real values on the axis
    CHECK(std::abs(ff.f2_continued({2.0, 0.0}) - Complex(ff.f2(2.0), 0.0)) < 1e-15);

    const FormFactor tab = FormFactor::tabulated({0.0, 1.0, 2.0}, {0.0, 0.5, 0.0});
    CHECK(!tab.has_continuation());
    CHECK(tab.f2(0.5) == doctest::Approx(0.0625));  // (0.25)^2
    CHECK(tab.f2(3.0) == 0.0);
    CHECK_THROWS_AS(tab.f2_continued({1.0, -0.1}), std::domain_error);
}

TEST_CASE("form factor derivative matches finite differences") {
    const FormFactor rational = FormFactor::rational_squared(1.3, 0.8, 3);
    const FormFactor gauss = FormFactor::gaussian_cutoff(0.9, 2.0);
    for (const FormFactor* ff : {&rational, &gauss}) {
        for (double w : {0.1, 0.7, 1.9, 4.2}) {
            const double h = 1e-6;
            const double fd = (ff->f2(w + h) - ff->f2(w - h)) / (2.0 * h);
            CHECK(ff->f2_derivative(w) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("gamow state norm and normalization flag") {
    GamowState st{{Complex(0.6, 0.0), Complex(0.0, 0.8)}};
    CHECK(st.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(st.is_normalized());
    st.coefficients[0] = 0.7;
    CHECK(!st.is_normalized());
}

TEST_CASE("time series invariants") {
    TimeSeries ts;
    ts.times = {0.0, 1.0, 2.0};
    ts.values = {Complex(1.0, 0.0), Complex(0.5, 0.0), Complex(0.25, 0.0)};
    CHECK_NOTHROW(ts.validate());

    ts.times = {0.0, 1.0, 1.0};
    CHECK_THROWS_AS(ts.validate(), std::invalid_argument);

    ts.times = {0.0, 1.0};
    CHECK_THROWS_AS(ts.validate(), std::invalid_argument);  // length mismatch

    CHECK_THROWS_AS(uniform_grid(0.0, 1.0, 1), std::invalid_argument);
    const auto g = uniform_grid(0.0, 2.0, 5);
    CHECK(g.size() == 5);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 2.0);
}

TEST_CASE("model spec validates the embedded bound state") {
    const FormFactor ff = FormFactor::rational_squared(1.0, 1.0, 2);
    CHECK_NOTHROW(FriedrichsModelSpec(1.0, 0.2, ff));
    CHECK_THROWS_AS(FriedrichsModelSpec(0.0, 0.2, ff), std::invalid_argument);
    CHECK_THROWS_AS(FriedrichsModelSpec(-1.0, 0.2, ff), std::invalid_argument);
}
