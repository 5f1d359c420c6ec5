#include "varcap/tco.hpp"

#include "varcap/error.hpp"
#include "varcap/numeric.hpp"

#include <cmath>
#include <vector>

namespace varcap {

namespace {

void check_p_avg_match(double seg_p_avg, double cost_p_avg) {
    if (!approx_equal(seg_p_avg, cost_p_avg, 1e-9)) {
        throw Error("p_avg mismatch: segmentation has " + format_double(seg_p_avg) +
                    ", cost structure has " + format_double(cost_p_avg) +
                    " (both must derive from the same series)");
    }
}

} // namespace

CostStructure make_cost_structure(double fixed_costs, double horizon_hours, double power_mw,
                                  double p_avg) {
    if (!(fixed_costs >= 0.0) || !std::isfinite(fixed_costs)) {
        throw Error("fixed costs must be >= 0");
    }
    if (!(horizon_hours > 0.0) || !std::isfinite(horizon_hours)) {
        throw Error("horizon must be positive");
    }
    if (!(power_mw > 0.0) || !std::isfinite(power_mw)) {
        throw Error("power draw must be positive");
    }
    if (!(p_avg > 0.0) || !std::isfinite(p_avg)) {
        throw Error("average price must be positive, got " + format_double(p_avg));
    }
    CostStructure cost;
    cost.fixed_costs = fixed_costs;
    cost.horizon_hours = horizon_hours;
    cost.power_mw = power_mw;
    cost.p_avg = p_avg;
    cost.psi = fixed_costs / (horizon_hours * power_mw * p_avg);
    return cost;
}

CostStructure cost_structure_from_psi(double psi, double horizon_hours, double power_mw,
                                      double p_avg) {
    if (!(psi >= 0.0) || !std::isfinite(psi)) {
        throw Error("psi must be >= 0");
    }
    return make_cost_structure(psi * horizon_hours * power_mw * p_avg, horizon_hours, power_mw,
                               p_avg);
}

double viability_bound(const CostStructure& cost) {
    return cost.psi + 1.0;
}

double shutdown_objective(double k, double x, double psi) {
    return (1.0 - k * x + psi) / (1.0 - x);
}

PolicyAssessment assess(const PriceSegmentation& seg, const CostStructure& cost) {
    check_p_avg_match(seg.p_avg, cost.p_avg);
    PolicyAssessment a;
    a.segmentation = seg;
    const double t = cost.horizon_hours;
    const double p = cost.power_mw;
    a.e_ao = t * p * cost.p_avg;
    a.e_ws = t * p * cost.p_avg * (1.0 - seg.k * seg.x);
    a.cpc_ao = (cost.fixed_costs + a.e_ao) / t;
    a.cpc_ws = (cost.fixed_costs + a.e_ws) / ((1.0 - seg.x) * t);
    a.viable = seg.k > viability_bound(cost);
    return a;
}

double efficiency_gain(const PriceSegmentation& seg, const CostStructure& cost) {
    check_p_avg_match(seg.p_avg, cost.p_avg);
    const double bound = viability_bound(cost);
    return 1.0 - shutdown_objective(seg.k, seg.x, cost.psi) / bound;
}

std::optional<double> break_even(const VariabilityCurve& curve, const CostStructure& cost) {
    check_p_avg_match(curve.p_avg, cost.p_avg);
    const double bound = viability_bound(cost);
    // k is non-increasing in x, so scan from the high end for the largest
    // grid point that still satisfies the inequality.
    for (auto it = curve.points.rbegin(); it != curve.points.rend(); ++it) {
        if (it->k > bound) {
            return it->x;
        }
    }
    return std::nullopt;
}

OptimizationResult optimize(const VariabilityCurve& curve, const CostStructure& cost) {
    check_p_avg_match(curve.p_avg, cost.p_avg);
    OptimizationResult result;
    result.cpc_ao = (cost.fixed_costs + cost.horizon_hours * cost.power_mw * cost.p_avg) /
                    cost.horizon_hours;
    result.x_be = break_even(curve, cost);

    const std::size_t count = curve.points.size();
    std::vector<double> objective(count);
    const auto* points = curve.points.data();
    const double psi = cost.psi;
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
        objective[i] = shutdown_objective(points[i].k, points[i].x, psi);
    }

    const double bound = viability_bound(cost);
    std::ptrdiff_t best = -1;
    double best_f = 0.0;
    // Only viable points can beat the always-on policy; the serial scan keeps
    // ties resolved toward smaller x independent of thread count.
    for (std::size_t i = 0; i < count; ++i) {
        if (!(points[i].k > bound)) {
            continue;
        }
        if (best < 0 || objective[i] < best_f) {
            best = static_cast<std::ptrdiff_t>(i);
            best_f = objective[i];
        }
    }
    if (best < 0) {
        return result; // shutdowns never beat always-on at this psi
    }
    const auto& win = points[best];
    result.x_opt = win.x;
    result.k_opt = win.k;
    result.p_thresh_opt = win.p_thresh;
    result.gain = 1.0 - best_f / bound;
    result.cpc_ws_opt = assess(win, cost).cpc_ws;
    return result;
}

} // namespace varcap
