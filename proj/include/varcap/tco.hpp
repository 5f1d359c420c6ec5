#pragma once

#include "varcap/segmentation.hpp"

#include <optional>

namespace varcap {

// System cost structure over the analysis horizon. psi is the derived
// fixed-to-energy cost ratio F / (T * P * p_avg).
struct CostStructure {
    double fixed_costs = 0.0;   // currency over the horizon
    double horizon_hours = 0.0; // T
    double power_mw = 0.0;      // draw under full operation
    double p_avg = 0.0;         // currency/MWh, from the series under analysis
    double psi = 0.0;
};

// Validates and derives psi. Throws varcap::Error on fixed_costs < 0,
// horizon <= 0, power <= 0, or p_avg <= 0.
CostStructure make_cost_structure(double fixed_costs, double horizon_hours,
                                  double power_mw, double p_avg);

// Builds the structure from a target psi instead; fixed_costs is implied as
// psi * T * P * p_avg so the type invariant keeps holding.
CostStructure cost_structure_from_psi(double psi, double horizon_hours,
                                      double power_mw, double p_avg);

// Always-on vs with-shutdowns policy comparison at one segmentation.
struct PolicyAssessment {
    double e_ao = 0.0;   // T * P * p_avg
    double e_ws = 0.0;   // T * P * p_avg * (1 - k x); may be negative
    double cpc_ao = 0.0; // (F + e_ao) / T, currency per operational hour
    double cpc_ws = 0.0; // (F + e_ws) / ((1 - x) * T)
    bool viable = false; // k > psi + 1
    PriceSegmentation segmentation;
};

struct OptimizationResult {
    std::optional<double> x_be;   // largest grid x with k(x) > psi + 1
    std::optional<double> x_opt;  // argmin of cpc_ws over the curve grid
    double k_opt = 0.0;           // meaningful only when x_opt is present
    double p_thresh_opt = 0.0;    // shutdown threshold price at x_opt
    std::optional<double> gain;   // 1 - cpc_ws(x_opt) / cpc_ao
    double cpc_ao = 0.0;
    std::optional<double> cpc_ws_opt;
};

// Minimum k at which shutdowns become beneficial: psi + 1. Independent of x.
double viability_bound(const CostStructure& cost);

// Dimensionless shutdown objective f(x) = (1 - k x + psi) / (1 - x);
// equals cpc_ws / (P * p_avg). Minimizing it minimizes cpc_ws.
double shutdown_objective(double k, double x, double psi);

// Throws varcap::Error when seg.p_avg and cost.p_avg disagree beyond 1e-9
// relative (both must derive from the same series over the same horizon).
PolicyAssessment assess(const PriceSegmentation& seg, const CostStructure& cost);

// 1 - cpc_ws/cpc_ao at this segmentation; negative when shutdowns hurt.
double efficiency_gain(const PriceSegmentation& seg, const CostStructure& cost);

// Largest grid x with k(x) > psi + 1, or absent when no point qualifies.
std::optional<double> break_even(const VariabilityCurve& curve, const CostStructure& cost);

// Argmin of the objective over viable curve points, ties toward smaller x;
// x_opt and gain are absent together when no point beats always-on.
OptimizationResult optimize(const VariabilityCurve& curve, const CostStructure& cost);

} // namespace varcap
