// Benchmark: parallel kernels against the serial reference implementations.
// The reference paths recompute everything from raw samples, so this doubles
// as a coarse agreement check on large random inputs.

#include "varcap/numeric.hpp"
#include "varcap/reference.hpp"
#include "varcap/scenario.hpp"
#include "varcap/segmentation.hpp"
#include "varcap/tco.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

varcap::PriceSeries random_series(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> price(-50.0, 500.0);
    varcap::PriceSeries s;
    s.start = 1704067200; // 2024-01-01T00:00:00Z
    s.interval = 3600;
    s.currency = "EUR";
    s.prices.resize(n);
    for (auto& p : s.prices) {
        p = price(rng);
    }
    return s;
}

template <typename F>
double time_call(F&& f) {
    const auto t0 = Clock::now();
    f();
    return seconds_since(t0);
}

} // namespace

int main(int argc, char** argv) {
    std::size_t n = 500000;
    std::size_t naive_n = 4000;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i] ? argv[i] : "";
        if (arg == "--n" && i + 1 < argc) {
            n = std::stoull(argv[++i]);
        } else if (arg == "--naive-n" && i + 1 < argc) {
            naive_n = std::stoull(argv[++i]);
        }
    }

#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
#else
    const int max_threads = 1;
#endif
    std::printf("samples: %zu (naive comparison at %zu), threads: %d\n", n, naive_n, max_threads);

    // prefix-scan curve vs O(n^2) serial reference
    {
        const auto series = random_series(naive_n, 42);
        varcap::VariabilityCurve fast;
        std::vector<varcap::PriceSegmentation> naive;
        const double t_fast = time_call([&] { fast = varcap::variability_curve(series); });
        const double t_naive = time_call([&] { naive = varcap::ref::curve_naive(series); });
        double max_rel = 0.0;
        for (std::size_t i = 0; i < naive.size(); ++i) {
            const double d = std::abs(fast.points[i].k - naive[i].k) /
                             std::max(std::abs(naive[i].k), 1.0);
            max_rel = std::max(max_rel, d);
        }
        std::printf("curve      n=%-8zu prefix-scan %.4fs   serial naive %.4fs   (%.1fx, max |dk| %.2e)\n",
                    naive_n, t_fast, t_naive, t_naive / t_fast, max_rel);
    }

    // curve construction, 1 thread vs all threads, identical output required
    {
        const auto series = random_series(n, 7);
#ifdef _OPENMP
        omp_set_num_threads(1);
#endif
        varcap::VariabilityCurve serial;
        const double t1 = time_call([&] { serial = varcap::variability_curve(series); });
#ifdef _OPENMP
        omp_set_num_threads(max_threads);
#endif
        varcap::VariabilityCurve parallel;
        const double tp = time_call([&] { parallel = varcap::variability_curve(series); });
        bool identical = serial.points.size() == parallel.points.size();
        for (std::size_t i = 0; identical && i < serial.points.size(); ++i) {
            identical = serial.points[i].k == parallel.points[i].k &&
                        serial.points[i].p_low == parallel.points[i].p_low;
        }
        std::printf("curve      n=%-8zu 1 thread    %.4fs   %d threads    %.4fs   (%.2fx, outputs %s)\n",
                    n, t1, max_threads, tp, t1 / tp, identical ? "identical" : "DIFFER");

        // optimizer vs exhaustive assess loop
        const auto cost = varcap::cost_structure_from_psi(2.0, series.span_hours(), 1.0,
                                                          varcap::mean_price(series));
        varcap::OptimizationResult opt;
        const double t_opt = time_call([&] { opt = varcap::optimize(parallel, cost); });
        std::optional<std::size_t> ex;
        const double t_ex = time_call([&] { ex = varcap::ref::optimize_exhaustive(parallel, cost); });
        const bool agree = (!opt.x_opt && !ex) ||
                           (opt.x_opt && ex && *opt.x_opt == parallel.points[*ex].x);
        std::printf("optimize   n=%-8zu objective   %.4fs   exhaustive    %.4fs   (results %s)\n",
                    n, t_opt, t_ex, agree ? "agree" : "DISAGREE");

        // psi sweep, parallel over grid entries
        const auto grid = varcap::scenario::default_psi_grid();
        varcap::scenario::PsiSweep sweep;
        const double t_sweep = time_call([&] { sweep = varcap::scenario::sweep_psi(parallel, cost, grid); });
        std::printf("sweep-psi  n=%-8zu %zu entries  %.4fs\n", n, grid.size(), t_sweep);
        if (!identical || !agree) {
            return 1;
        }
    }
    return 0;
}
