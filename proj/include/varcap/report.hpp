#pragma once

#include "varcap/scenario.hpp"
#include "varcap/segmentation.hpp"
#include "varcap/svg.hpp"
#include "varcap/tco.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace varcap::report {

struct Summary {
    std::string text; // one-paragraph verdict
    std::string json; // keys: psi, viability_bound_k, x_be, x_opt, k_opt,
                      //       p_thresh_opt, gain, cpc_ao, cpc_ws_opt
};

Summary summarize(const OptimizationResult& result, const CostStructure& cost,
                  const std::string& currency);

// JSON document for a cost structure alone (optimization fields null).
std::string cost_only_json(const CostStructure& cost);

// Every plot writer emits <stem>.svg plus a <stem>.csv data sidecar whose
// values round-trip the in-memory data.

// k-x lines (log/log). band_psi, when set, shades the viable region
// k > psi + 1.
void write_kx_plot(const std::filesystem::path& stem,
                   const std::vector<VariabilityCurve>& curves,
                   const std::vector<std::string>& labels,
                   std::optional<double> band_psi = std::nullopt,
                   const std::vector<svg::Marker>& annotations = {});

struct GainSeries {
    std::string label;
    std::vector<double> xs;    // shutdown fractions
    std::vector<double> gains; // efficiency gain per x
};

void write_efficiency_plot(const std::filesystem::path& stem,
                           const std::vector<GainSeries>& series,
                           const std::vector<svg::Marker>& annotations = {});

void write_sweep_plot(const std::filesystem::path& stem, const scenario::PsiSweep& sweep);

// Prices in descending order over a log-x rank axis.
void write_survival_plot(const std::filesystem::path& stem, const PriceSeries& series,
                         bool log_y = false);

void write_chronological_plot(const std::filesystem::path& stem, const PriceSeries& series);

void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace varcap::report
