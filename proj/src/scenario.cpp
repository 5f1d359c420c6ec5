#include "varcap/scenario.hpp"

#include "varcap/error.hpp"
#include "varcap/numeric.hpp"

#include <cmath>
#include <cstddef>

namespace varcap::scenario {

std::vector<double> fossil_shares(const GenerationMix& mix) {
    validate(mix);
    std::vector<double> beta(mix.samples.size());
    for (std::size_t i = 0; i < mix.samples.size(); ++i) {
        const auto& s = mix.samples[i];
        beta[i] = s.fossil / (s.fossil + s.renewable);
    }
    return beta;
}

PriceSeries amplify(const PriceSeries& series, const GenerationMix& mix) {
    validate(series);
    validate(mix);
    if (series.start != mix.start || series.interval != mix.interval ||
        series.size() != mix.size()) {
        throw Error("price series and generation mix are not aligned: series covers " +
                    format_rfc3339(series.start) + " step " + std::to_string(series.interval) +
                    " s x " + std::to_string(series.size()) + ", mix covers " +
                    format_rfc3339(mix.start) + " step " + std::to_string(mix.interval) + " s x " +
                    std::to_string(mix.size()));
    }
    PriceSeries out = series;
    for (std::size_t i = 0; i < out.prices.size(); ++i) {
        const double p = series.prices[i];
        if (p <= 0.0) {
            continue; // negative and zero prices pass through untouched
        }
        const auto& s = mix.samples[i];
        const double beta = s.fossil / (s.fossil + s.renewable);
        out.prices[i] = p * (1.0 - beta) / 2.0 + p * beta * 2.0;
    }
    return out;
}

CostStructure scale_fixed_costs(const CostStructure& cost, double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw Error("fixed-cost scale factor must be positive");
    }
    return make_cost_structure(cost.fixed_costs * factor, cost.horizon_hours, cost.power_mw,
                               cost.p_avg);
}

PsiSweep sweep_psi(const VariabilityCurve& curve, const CostStructure& base_cost,
                   const std::vector<double>& psi_values) {
    if (!approx_equal(curve.p_avg, base_cost.p_avg, 1e-9)) {
        throw Error("p_avg mismatch between curve and base cost structure");
    }
    if (psi_values.empty()) {
        throw Error("psi sweep needs at least one value");
    }
    for (std::size_t i = 0; i < psi_values.size(); ++i) {
        if (!(psi_values[i] > 0.0) || !std::isfinite(psi_values[i])) {
            throw Error("psi values must be positive");
        }
        if (i > 0 && psi_values[i] <= psi_values[i - 1]) {
            throw Error("psi values must be strictly ascending");
        }
    }
    PsiSweep sweep;
    sweep.psi_values = psi_values;
    sweep.gains.resize(psi_values.size());
    auto* gains = sweep.gains.data();
    const auto* psis = sweep.psi_values.data();
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(psi_values.size()); ++i) {
        const auto cost = cost_structure_from_psi(psis[i], base_cost.horizon_hours,
                                                  base_cost.power_mw, base_cost.p_avg);
        const auto result = optimize(curve, cost);
        gains[i] = result.gain.value_or(0.0);
    }
    return sweep;
}

std::vector<double> log_spaced_psi_grid(double from, double to, std::size_t points) {
    if (!(from > 0.0) || !(to > from) || points < 2) {
        throw Error("need 0 < from < to and at least 2 grid points");
    }
    std::vector<double> grid(points);
    const double log_from = std::log(from);
    const double log_to = std::log(to);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(points - 1);
        grid[i] = std::exp(log_from + t * (log_to - log_from));
    }
    grid.front() = from;
    grid.back() = to;
    return grid;
}

std::vector<double> default_psi_grid() {
    return log_spaced_psi_grid(0.1, 10.0, 50);
}

std::string sweep_to_csv(const PsiSweep& sweep) {
    std::string out = "psi,gain\n";
    for (std::size_t i = 0; i < sweep.psi_values.size(); ++i) {
        out += format_double(sweep.psi_values[i]);
        out += ',';
        out += format_double(sweep.gains[i]);
        out += '\n';
    }
    return out;
}

} // namespace varcap::scenario
