#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gamow/coherent.hpp"

using namespace gamow;

namespace {

// independent plain-double summation; safe for moderate labels
Complex overlap_direct(Complex a1, Complex a2, int n_max) {
    auto norm_sum = [n_max](Complex a) {
        double s = 0.0, term = 1.0;
        const double x = std::norm(a);
        for (int k = 0; k <= n_max; ++k) {
            s += term;
            term *= x / (k + 1.0);
        }
        return s;
    };
    Complex sum{0.0, 0.0}, term{1.0, 0.0};
    const Complex x = std::conj(a1) * a2;
    for (int n = 0; n <= n_max; ++n) {
        sum += term;
        term *= x / (n + 1.0);
    }
    return sum / std::sqrt(norm_sum(a1) * norm_sum(a2));
}

}  // namespace

TEST_CASE("quasi-coherent construction") {
    SUBCASE("alpha = 0 is the vacuum mode") {
        const QuasiCoherentState st = make_quasi_coherent(0.0, 5);
        CHECK(st.state.coefficients[0] == Complex(1.0, 0.0));
        for (int n = 1; n <= 5; ++n)
            CHECK(st.state.coefficients[n] == Complex(0.0, 0.0));
        CHECK(st.normalizer == 1.0);
    }

    SUBCASE("alpha = 1, N = 1 gives the two-term state") {
        const QuasiCoherentState st = make_quasi_coherent(1.0, 1);
        CHECK(st.normalizer == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
        CHECK(st.state.coefficients[0].real() ==
              doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
        CHECK(st.state.coefficients[1].real() ==
              doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    }

    SUBCASE("exact finite-N normalization") {
        for (Complex alpha : {Complex(2.0, 0.0), Complex(0.0, 3.0), Complex(-1.5, 2.5)}) {
            const QuasiCoherentState st = make_quasi_coherent(alpha, 50);
            CHECK(std::abs(st.state.norm_squared() - 1.0) < 1e-12);
        }
        // very large labels survive through the log-space path
        const QuasiCoherentState big = make_quasi_coherent(30.0, 1100);
        CHECK(std::abs(big.state.norm_squared() - 1.0) < 1e-11);
    }

    SUBCASE("guards") {
        CHECK_THROWS_AS(make_quasi_coherent(1.0, 0), std::invalid_argument);
        CHECK_THROWS_AS(make_quasi_coherent(Complex(1.0 / 0.0, 0.0), 5),
                        std::invalid_argument);
    }

    SUBCASE("recommended truncation rule") {
        CHECK(recommended_mode_count(0.0) == 30);   // 0 + 10 + 20
        CHECK(recommended_mode_count(2.0) == 44);   // 4 + 20 + 20
        CHECK(recommended_mode_count(4.0) == 76);   // 16 + 40 + 20
    }
}

TEST_CASE("exact overlaps") {
    SUBCASE("self-overlap of a normalized state is one") {
        for (Complex alpha : {Complex(1.0, 0.0), Complex(2.0, -1.0)}) {
            const QuasiCoherentState st = make_quasi_coherent(alpha, 60);
            CHECK(std::abs(overlap_exact(st, st) - Complex(1.0, 0.0)) < 1e-13);
        }
    }

    SUBCASE("vacuum against a displaced state leaves only the normalizer") {
        const QuasiCoherentState vac = make_quasi_coherent(0.0, 200);
        const QuasiCoherentState disp = make_quasi_coherent(3.0, 200);
        const Complex ov = overlap_exact(vac, disp);
        CHECK(std::abs(ov - std::exp(-4.5)) < 1e-12);
    }

    SUBCASE("separated real labels reach the Gaussian limit") {
        const QuasiCoherentState s1 = make_quasi_coherent(1.0, 60);
        const QuasiCoherentState s2 = make_quasi_coherent(4.0, 60);
        const Complex ov = overlap_exact(s1, s2);
        CHECK(std::abs(ov - std::exp(-4.5)) < 1e-6);
        // independent direct summation at N = 400
        const Complex direct = overlap_direct(1.0, 4.0, 400);
        CHECK(std::abs(overlap_exact(make_quasi_coherent(1.0, 400),
                                     make_quasi_coherent(4.0, 400)) -
                       direct) < 1e-13);
    }

    SUBCASE("hermitian symmetry and the unit bound") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        for (int trial = 0; trial < 40; ++trial) {
            const Complex a1(u(rng), u(rng)), a2(u(rng), u(rng));
            const QuasiCoherentState s1 = make_quasi_coherent(a1, 70);
            const QuasiCoherentState s2 = make_quasi_coherent(a2, 70);
            const Complex ov12 = overlap_exact(s1, s2);
            const Complex ov21 = overlap_exact(s2, s1);
            CHECK(std::abs(ov12 - std::conj(ov21)) < 1e-13);
            CHECK(std::abs(ov12) <= 1.0 + 1e-13);
        }
    }

    SUBCASE("mismatched truncations are rejected") {
        CHECK_THROWS_AS(
            overlap_exact(make_quasi_coherent(1.0, 10), make_quasi_coherent(1.0, 11)),
            std::invalid_argument);
    }

    SUBCASE("two-normalizer and merged-normalizer forms converge together") {
        // the merged form applies the Cauchy product/binomial identity, exact
        // only as N -> infinity; the finite-N gap must shrink monotonically
        const Complex a1(1.0, 0.0), a2(2.0, 0.0);
        double prev_gap = 1e300;
        for (int n_max : {5, 10, 20, 40}) {
            const Complex two = overlap_exact(make_quasi_coherent(a1, n_max),
                                              make_quasi_coherent(a2, n_max));
            double merged_norm = 0.0, term = 1.0;
            Complex series{0.0, 0.0};
            double sterm = 1.0;
            for (int k = 0; k <= n_max; ++k) {
                merged_norm += term;
                term *= (std::norm(a1) + std::norm(a2)) / (k + 1.0);
                series += sterm;
                sterm *= (std::conj(a1) * a2).real() / (k + 1.0);
            }
            const Complex merged = series / std::sqrt(merged_norm);
            const double gap = std::abs(two - merged);
            CHECK(gap < prev_gap);
            prev_gap = gap;
        }
        CHECK(prev_gap < 1e-8);
    }
}

TEST_CASE("gaussian-limit overlap") {
    CHECK(overlap_gaussian_approx(1.3, 1.3) == Complex(1.0, 0.0));
    CHECK(std::abs(overlap_gaussian_approx(0.0, 3.0) - std::exp(-4.5)) < 1e-16);

    SUBCASE("agreement with the exact overlap at the recommended truncation") {
        for (double a2 : {1.0, 2.0, 3.0, 4.0}) {
            const int n = recommended_mode_count(a2);
            const Complex exact = overlap_exact(make_quasi_coherent(1.0, n),
                                                make_quasi_coherent(a2, n));
            const Complex gauss = overlap_gaussian_approx(1.0, a2);
            CHECK(std::abs(exact - gauss) < 1e-8);
        }
    }
}

TEST_CASE("time overlaps") {
    const GamowSpectrum ladder = ladder_spectrum(ResonancePole(1.0, 0.2), 80);

    SUBCASE("t = 0 reduces to the exact overlap") {
        const QuasiCoherentState s1 = make_quasi_coherent(1.0, 80);
        const QuasiCoherentState s2 = make_quasi_coherent(2.5, 80);
        CHECK(std::abs(time_overlap(s1, s2, ladder, 0.0) - overlap_exact(s1, s2)) < 1e-14);
    }

    SUBCASE("vacuum stays put on a ladder") {
        const QuasiCoherentState vac = make_quasi_coherent(0.0, 80);
        for (double t : {0.0, 1.0, 17.0})
            CHECK(time_overlap(vac, vac, ladder, t) == Complex(1.0, 0.0));
    }

    SUBCASE("Poisson resummation on the ladder") {
        // |alpha|^2 = 4, base pole 1 - 0.1i, t = 0.7:
        // exp(4 (e^{-i z1 t} - 1)) = -0.23464813324698211 - 0.21379664545178560i
        const QuasiCoherentState st = make_quasi_coherent(2.0, 80);
        const Complex got = time_overlap(st, st, ladder, 0.7);
        const Complex frozen(-0.23464813324698211, -0.21379664545178560);
        CHECK(std::abs(got - frozen) < 1e-8);
        // live resummation
        const Complex z1(1.0, -0.1);
        const Complex resummed = std::exp(4.0 * (std::exp(Complex(0.0, -0.7) * z1) - 1.0));
        CHECK(std::abs(got - resummed) < 1e-8);
    }

    SUBCASE("late times leave only the constant mode") {
        const QuasiCoherentState s1 = make_quasi_coherent(1.0, 80);
        const QuasiCoherentState s2 = make_quasi_coherent(2.0, 80);
        const Complex late = time_overlap(s1, s2, ladder, 1e4);
        CHECK(std::abs(std::abs(late) - s1.normalizer * s2.normalizer) < 1e-13);
    }

    SUBCASE("complex labels are rejected with guidance") {
        const QuasiCoherentState bad = make_quasi_coherent(Complex(1.0, 0.5), 80);
        const QuasiCoherentState ok = make_quasi_coherent(1.0, 80);
        CHECK_THROWS_WITH_AS(time_overlap(bad, ok, ladder, 1.0),
                             doctest::Contains("real labels"), std::invalid_argument);
    }

    SUBCASE("negative product of labels alternates the series") {
        const QuasiCoherentState neg = make_quasi_coherent(-1.5, 80);
        const QuasiCoherentState pos = make_quasi_coherent(2.0, 80);
        const Complex got = time_overlap(neg, pos, ladder, 0.4);
        // resummed: N1 N2 exp(x e^{-i z1 t}) with x = -3
        const Complex z1(1.0, -0.1);
        const Complex resummed = neg.normalizer * pos.normalizer *
                                 std::exp(-3.0 * std::exp(Complex(0.0, -0.4) * z1));
        CHECK(std::abs(got - resummed) < 1e-9);
    }

    SUBCASE("curve equals pointwise calls") {
        const QuasiCoherentState s1 = make_quasi_coherent(1.0, 80);
        const QuasiCoherentState s2 = make_quasi_coherent(2.0, 80);
        const auto grid = uniform_grid(0.0, 3.0, 31);
        const TimeSeries ts = time_overlap_curve(s1, s2, ladder, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            CHECK(ts.values[i] == time_overlap(s1, s2, ladder, grid[i]));
    }
}

TEST_CASE("macroscopicity check") {
    SUBCASE("widely separated labels are quasi-orthogonal") {
        const MacroscopicityReport rep = macroscopicity_check(0.0, 10.0, 1e-6);
        CHECK(rep.quasi_orthogonal);
        CHECK(rep.separation == 10.0);
        CHECK(rep.overlap_magnitude == doctest::Approx(std::exp(-50.0)));
    }

    SUBCASE("coincident labels never pass") {
        for (double thr : {0.9, 0.5, 1e-6})
            CHECK(!macroscopicity_check(1.7, 1.7, thr).quasi_orthogonal);
    }

    SUBCASE("threshold boundary inverts the Gaussian") {
        const double theta = 1e-3;
        const double sep = std::sqrt(2.0 * std::log(1.0 / theta));
        const MacroscopicityReport rep = macroscopicity_check(0.0, sep, theta);
        CHECK(rep.overlap_magnitude == doctest::Approx(theta).epsilon(1e-13));
        CHECK(!rep.quasi_orthogonal);  // strictly-below test at the exact boundary
    }

    CHECK_THROWS_AS(macroscopicity_check(0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(macroscopicity_check(0.0, 1.0, 1.0), std::invalid_argument);
}
