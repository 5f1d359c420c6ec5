#pragma once

#include "varcap/tco.hpp"
#include "varcap/time_series.hpp"

#include <string>
#include <vector>

namespace varcap::scenario {

// Variability amplification driven by the fossil share of generation:
// with beta_i = fossil_i / (fossil_i + renewable_i), every positive price
// becomes p * (1 - beta)/2 + p * beta * 2; non-positive prices pass through
// unchanged. The mix must cover exactly the same timestamps as the series.
PriceSeries amplify(const PriceSeries& series, const GenerationMix& mix);

// Per-sample fossil shares, exposed for inspection and tests.
std::vector<double> fossil_shares(const GenerationMix& mix);

// F' = factor * F (and therefore psi' = factor * psi); factor must be > 0.
CostStructure scale_fixed_costs(const CostStructure& cost, double factor);

struct PsiSweep {
    std::vector<double> psi_values; // ascending
    std::vector<double> gains;      // max efficiency gain per psi, 0 when none
};

// Evaluates the optimal-shutdown gain for each psi in ascending psi_values
// (all > 0), reusing the horizon/power/p_avg of base_cost. Entries are
// independent and may be computed in parallel; assembly order is fixed.
PsiSweep sweep_psi(const VariabilityCurve& curve, const CostStructure& base_cost,
                   const std::vector<double>& psi_values);

// 50 log-spaced values over [0.1, 10].
std::vector<double> default_psi_grid();
std::vector<double> log_spaced_psi_grid(double from, double to, std::size_t points);

// CSV with header "psi,gain".
std::string sweep_to_csv(const PsiSweep& sweep);

} // namespace varcap::scenario
