#include "varcap/report.hpp"

#include "varcap/error.hpp"
#include "varcap/ingest.hpp"
#include "varcap/numeric.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

namespace varcap::report {

namespace {

void set_optional(nlohmann::json& doc, const char* key, const std::optional<double>& v) {
    if (v) {
        doc[key] = *v;
    } else {
        doc[key] = nullptr;
    }
}

std::string percent(double fraction) {
    return format_fixed(fraction * 100.0, 2) + "%";
}

std::string price_with_unit(double value, const std::string& currency) {
    std::string s = format_fixed(value, 2);
    if (!currency.empty()) {
        s += " " + currency + "/MWh";
    }
    return s;
}

} // namespace

Summary summarize(const OptimizationResult& result, const CostStructure& cost,
                  const std::string& currency) {
    nlohmann::json doc;
    doc["psi"] = cost.psi;
    doc["viability_bound_k"] = viability_bound(cost);
    set_optional(doc, "x_be", result.x_be);
    set_optional(doc, "x_opt", result.x_opt);
    if (result.x_opt) {
        doc["k_opt"] = result.k_opt;
        doc["p_thresh_opt"] = result.p_thresh_opt;
    } else {
        doc["k_opt"] = nullptr;
        doc["p_thresh_opt"] = nullptr;
    }
    set_optional(doc, "gain", result.gain);
    doc["cpc_ao"] = result.cpc_ao;
    set_optional(doc, "cpc_ws_opt", result.cpc_ws_opt);

    std::string text;
    if (result.x_opt && result.x_be && result.gain) {
        text = "Shutdowns are viable up to x = " + percent(*result.x_be) +
               " of the time (break-even). The optimum shuts the system down " +
               percent(*result.x_opt) + " of the time for a " + percent(*result.gain) +
               " efficiency gain over always-on, with shutdown threshold price " +
               price_with_unit(result.p_thresh_opt, currency) + " (k at optimum " +
               format_fixed(result.k_opt, 4) + ", viability bound k > " +
               format_fixed(viability_bound(cost), 4) + ", psi = " +
               format_fixed(cost.psi, 4) + ").";
    } else {
        text = "Shutdowns are never beneficial at psi = " + format_fixed(cost.psi, 4) +
               ": no shutdown fraction reaches the viability bound k > " +
               format_fixed(viability_bound(cost), 4) + ".";
    }

    Summary summary;
    summary.text = text;
    summary.json = doc.dump(2) + "\n";
    return summary;
}

std::string cost_only_json(const CostStructure& cost) {
    OptimizationResult empty;
    empty.cpc_ao =
        (cost.fixed_costs + cost.horizon_hours * cost.power_mw * cost.p_avg) / cost.horizon_hours;
    nlohmann::json doc;
    doc["psi"] = cost.psi;
    doc["viability_bound_k"] = viability_bound(cost);
    doc["x_be"] = nullptr;
    doc["x_opt"] = nullptr;
    doc["k_opt"] = nullptr;
    doc["p_thresh_opt"] = nullptr;
    doc["gain"] = nullptr;
    doc["cpc_ao"] = empty.cpc_ao;
    doc["cpc_ws_opt"] = nullptr;
    return doc.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write '" + path.string() + "'");
    }
    out << content;
    if (!out) {
        throw Error("write failed for '" + path.string() + "'");
    }
}

void write_kx_plot(const std::filesystem::path& stem, const std::vector<VariabilityCurve>& curves,
                   const std::vector<std::string>& labels, std::optional<double> band_psi,
                   const std::vector<svg::Marker>& annotations) {
    if (curves.empty() || curves.size() != labels.size()) {
        throw Error("kx plot needs one label per curve");
    }
    auto spec = svg::make_spec(svg::PlotKind::kx_line);
    spec.title = "price variability";
    spec.annotations = annotations;
    if (band_psi) {
        svg::Band band;
        band.y_from = *band_psi + 1.0;
        band.label = "viable region: k > " + format_double(*band_psi + 1.0) +
                     " (psi = " + format_double(*band_psi) + ")";
        spec.band = band;
    }
    std::vector<svg::Series> data(curves.size());
    for (std::size_t i = 0; i < curves.size(); ++i) {
        data[i].label = labels[i];
        data[i].xs.reserve(curves[i].points.size());
        data[i].ys.reserve(curves[i].points.size());
        for (const auto& p : curves[i].points) {
            data[i].xs.push_back(p.x);
            data[i].ys.push_back(p.k);
        }
    }
    write_text_file(stem.string() + ".svg", svg::render(spec, data));

    std::string csv;
    if (curves.size() == 1) {
        csv = curve_to_csv(curves[0]);
    } else {
        csv = "series,x,k,p_thresh,p_high,p_low\n";
        for (std::size_t i = 0; i < curves.size(); ++i) {
            for (const auto& p : curves[i].points) {
                csv += labels[i];
                csv += ',';
                csv += format_double(p.x);
                csv += ',';
                csv += format_double(p.k);
                csv += ',';
                csv += format_double(p.p_thresh);
                csv += ',';
                csv += format_double(p.p_high);
                csv += ',';
                csv += format_double(p.p_low);
                csv += '\n';
            }
        }
    }
    write_text_file(stem.string() + ".csv", csv);
}

void write_efficiency_plot(const std::filesystem::path& stem,
                           const std::vector<GainSeries>& series,
                           const std::vector<svg::Marker>& annotations) {
    if (series.empty()) {
        throw Error("efficiency plot needs at least one series");
    }
    auto spec = svg::make_spec(svg::PlotKind::efficiency_vs_x);
    spec.title = "efficiency gain vs shutdown fraction";
    spec.annotations = annotations;
    std::vector<svg::Series> data(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        data[i].label = series[i].label;
        data[i].xs = series[i].xs;
        data[i].ys = series[i].gains;
    }
    write_text_file(stem.string() + ".svg", svg::render(spec, data));

    std::string csv;
    if (series.size() == 1) {
        csv = "x,gain\n";
        for (std::size_t j = 0; j < series[0].xs.size(); ++j) {
            csv += format_double(series[0].xs[j]);
            csv += ',';
            csv += format_double(series[0].gains[j]);
            csv += '\n';
        }
    } else {
        csv = "series,x,gain\n";
        for (const auto& s : series) {
            for (std::size_t j = 0; j < s.xs.size(); ++j) {
                csv += s.label;
                csv += ',';
                csv += format_double(s.xs[j]);
                csv += ',';
                csv += format_double(s.gains[j]);
                csv += '\n';
            }
        }
    }
    write_text_file(stem.string() + ".csv", csv);
}

void write_sweep_plot(const std::filesystem::path& stem, const scenario::PsiSweep& sweep) {
    auto spec = svg::make_spec(svg::PlotKind::psi_sweep);
    spec.title = "max efficiency gain vs psi";
    svg::Series s;
    s.label = "max gain";
    s.xs = sweep.psi_values;
    s.ys = sweep.gains;
    write_text_file(stem.string() + ".svg", svg::render(spec, {s}));
    write_text_file(stem.string() + ".csv", scenario::sweep_to_csv(sweep));
}

void write_survival_plot(const std::filesystem::path& stem, const PriceSeries& series,
                         bool log_y) {
    validate(series);
    auto spec = svg::make_spec(svg::PlotKind::price_survival);
    spec.log_y = log_y;
    spec.title = "prices in descending order";
    std::vector<double> sorted = series.prices;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    svg::Series s;
    s.label = "price";
    s.xs.resize(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        s.xs[i] = static_cast<double>(i + 1);
    }
    s.ys = sorted;
    write_text_file(stem.string() + ".svg", svg::render(spec, {s}));

    std::string csv = "rank,price\n";
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        csv += std::to_string(i + 1);
        csv += ',';
        csv += format_double(sorted[i]);
        csv += '\n';
    }
    write_text_file(stem.string() + ".csv", csv);
}

void write_chronological_plot(const std::filesystem::path& stem, const PriceSeries& series) {
    validate(series);
    auto spec = svg::make_spec(svg::PlotKind::price_chronological);
    spec.title = "prices over time";
    svg::Series s;
    s.label = "price";
    s.xs.resize(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        s.xs[i] = static_cast<double>(i) * static_cast<double>(series.interval) / 86400.0;
    }
    s.ys = series.prices;
    write_text_file(stem.string() + ".svg", svg::render(spec, {s}));
    write_text_file(stem.string() + ".csv", ingest::to_generic_csv(series));
}

} // namespace varcap::report
