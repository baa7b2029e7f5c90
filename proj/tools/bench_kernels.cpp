// Serial vs OpenMP timing for the grid kernels.  Sanity-checks that both
// paths agree bitwise before reporting speedups.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gamow/coherent.hpp"
#include "gamow/decoherence.hpp"
#include "gamow/dynamics.hpp"
#include "gamow/resolvent.hpp"

using namespace gamow;

namespace {

double now() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

bool same_series(const TimeSeries& a, const TimeSeries& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.values[i] != b.values[i]) return false;
    return true;
}

void report(const char* name, double t_serial, double t_parallel, bool match) {
    std::printf("%-22s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx   %s\n",
                name, 1e3 * t_serial, 1e3 * t_parallel, t_serial / t_parallel,
                match ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel paths run serially\n");
#endif

    const GamowSpectrum spectrum = ladder_spectrum(ResonancePole(1.0, 0.2), 400);
    const QuasiCoherentState big = make_quasi_coherent(4.0, 400);
    const QuasiCoherentState vac = make_quasi_coherent(0.0, 400);
    const std::vector<double> grid = uniform_grid(0.0, 50.0, 20000);

    {
        double t0 = now();
        const TimeSeries s = serial::echo_curve(big.state, spectrum, grid);
        double t1 = now();
        const TimeSeries p = echo_curve(big.state, spectrum, grid);
        double t2 = now();
        report("echo_curve", t1 - t0, t2 - t1, same_series(s, p));
    }
    {
        double t0 = now();
        const TimeSeries s = serial::time_overlap_curve(big, big, spectrum, grid);
        double t1 = now();
        const TimeSeries p = time_overlap_curve(big, big, spectrum, grid);
        double t2 = now();
        report("time_overlap_curve", t1 - t0, t2 - t1, same_series(s, p));
    }
    {
        const Superposition sup = normalized_superposition(0.6, 0.8, vac, big);
        double t0 = now();
        const OffDiagonalTrace s = serial::off_diagonal(sup, spectrum, grid);
        double t1 = now();
        const OffDiagonalTrace p = off_diagonal(sup, spectrum, grid);
        double t2 = now();
        report("off_diagonal", t1 - t0, t2 - t1,
               same_series(s.rho12, p.rho12) && same_series(s.rho21, p.rho21));
    }
    {
        const FriedrichsModelSpec model(1.0, 0.2, FormFactor::rational_squared(1.0, 1.0, 2));
        std::vector<Complex> pts;
        for (int i = 0; i < 96; ++i)
            pts.emplace_back(0.5 + 0.01 * i, -0.05 - 0.002 * i);
        double t0 = now();
        const auto s = serial::eta_second_sheet_grid(model, pts);
        double t1 = now();
        const auto p = eta_second_sheet_grid(model, pts);
        double t2 = now();
        bool match = s.size() == p.size();
        for (std::size_t i = 0; match && i < s.size(); ++i)
            match = s[i].value == p[i].value;
        report("eta_second_sheet_grid", t1 - t0, t2 - t1, match);
    }
    return 0;
}
