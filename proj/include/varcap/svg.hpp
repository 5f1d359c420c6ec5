#pragma once

#include <optional>
#include <string>
#include <vector>

namespace varcap::svg {

enum class PlotKind {
    kx_line,
    efficiency_vs_x,
    psi_sweep,
    price_survival,
    price_chronological,
};

struct Series {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
};

// Point annotation; when vline is set a dashed vertical rule is drawn at x
// in addition to the marker glyph.
struct Marker {
    double x = 0.0;
    double y = 0.0;
    std::string label;
    bool vline = false;
};

// Shaded horizontal band from y_from to the top of the plot area.
struct Band {
    double y_from = 0.0;
    std::string label;
};

struct PlotSpec {
    PlotKind kind = PlotKind::kx_line;
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    std::vector<Marker> annotations;
    std::optional<Band> band;
};

// Axis-scale defaults per kind: kx_line is log/log, efficiency_vs_x and
// psi_sweep and price_survival are log-x only.
PlotSpec make_spec(PlotKind kind);

// Renders a self-contained SVG document. Output is deterministic: fixed
// fonts and geometry, locale-independent number formatting, no timestamps.
// Data series become <polyline> elements, one per series, so structural
// tests can count them. Throws varcap::Error on empty data or non-positive
// values on a logarithmic axis; the one exception is a price_survival plot
// with log_y, where non-positive prices are clipped and a caption note
// reports how many were dropped.
std::string render(const PlotSpec& spec, const std::vector<Series>& data);

} // namespace varcap::svg
