#include "varcap/svg.hpp"

#include "varcap/error.hpp"
#include "varcap/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace varcap::svg {

namespace {

constexpr double canvas_w = 800.0;
constexpr double canvas_h = 500.0;
constexpr double margin_left = 78.0;
constexpr double margin_right = 24.0;
constexpr double margin_top = 44.0;
constexpr double margin_bottom = 64.0;

const char* const palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                               "#9467bd", "#8c564b", "#e377c2"};
constexpr std::size_t palette_size = sizeof(palette) / sizeof(palette[0]);

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string px(double v) {
    return format_fixed(v, 2);
}

struct AxisScale {
    bool log = false;
    double lo = 0.0, hi = 1.0;       // data range
    double pixel_lo = 0.0, pixel_hi = 1.0;

    double to_pixel(double v) const {
        const double a = log ? std::log10(v) : v;
        const double lo_t = log ? std::log10(lo) : lo;
        const double hi_t = log ? std::log10(hi) : hi;
        const double t = (a - lo_t) / (hi_t - lo_t);
        return pixel_lo + t * (pixel_hi - pixel_lo);
    }
};

void expand(double v, double& lo, double& hi) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
}

AxisScale make_scale(bool log_axis, double lo, double hi, double pixel_lo, double pixel_hi,
                     const char* axis_name) {
    AxisScale s;
    s.log = log_axis;
    if (log_axis) {
        if (!(lo > 0.0)) {
            throw Error(std::string("non-positive value on logarithmic ") + axis_name + " axis");
        }
        s.lo = lo / std::pow(10.0, 0.04);
        s.hi = hi * std::pow(10.0, 0.04);
        if (s.lo == s.hi) {
            s.lo /= 10.0;
            s.hi *= 10.0;
        }
    } else {
        double pad = (hi - lo) * 0.05;
        if (pad == 0.0) {
            pad = (hi == 0.0) ? 1.0 : std::abs(hi) * 0.05;
        }
        s.lo = lo - pad;
        s.hi = hi + pad;
    }
    s.pixel_lo = pixel_lo;
    s.pixel_hi = pixel_hi;
    return s;
}

std::vector<double> linear_ticks(double lo, double hi) {
    const double span = hi - lo;
    const double raw_step = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw_step)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * m >= raw_step) {
            step = mag * m;
            break;
        }
    }
    std::vector<double> ticks;
    double first = std::ceil(lo / step) * step;
    for (double v = first; v <= hi + step * 1e-9; v += step) {
        ticks.push_back(v == 0.0 ? 0.0 : v); // normalize -0
    }
    return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
    std::vector<double> ticks;
    const int e_lo = static_cast<int>(std::floor(std::log10(lo)));
    const int e_hi = static_cast<int>(std::ceil(std::log10(hi)));
    for (int e = e_lo; e <= e_hi; ++e) {
        const double v = std::pow(10.0, e);
        if (v >= lo && v <= hi) {
            ticks.push_back(v);
        }
    }
    if (ticks.size() < 2) {
        // fewer than two decades visible: fall back to 1-2-5 within range
        for (int e = e_lo - 1; e <= e_hi; ++e) {
            for (double m : {1.0, 2.0, 5.0}) {
                const double v = m * std::pow(10.0, e);
                if (v >= lo && v <= hi) {
                    ticks.push_back(v);
                }
            }
        }
        std::sort(ticks.begin(), ticks.end());
        ticks.erase(std::unique(ticks.begin(), ticks.end()), ticks.end());
    }
    return ticks;
}

std::string tick_label(double v) {
    // shortest round-trip form is exact but clutters axes when it gets long
    std::string s = format_double(v);
    if (s.size() > 10) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.4g", v);
        s = buf;
    }
    return s;
}

} // namespace

PlotSpec make_spec(PlotKind kind) {
    PlotSpec spec;
    spec.kind = kind;
    switch (kind) {
    case PlotKind::kx_line:
        spec.log_x = true;
        spec.log_y = true;
        spec.x_label = "shutdown fraction x";
        spec.y_label = "k = p_high / p_avg";
        break;
    case PlotKind::efficiency_vs_x:
        spec.log_x = true;
        spec.log_y = false;
        spec.x_label = "shutdown fraction x";
        spec.y_label = "efficiency gain over always-on";
        break;
    case PlotKind::psi_sweep:
        spec.log_x = true;
        spec.log_y = false;
        spec.x_label = "cost-distribution coefficient psi";
        spec.y_label = "max efficiency gain";
        break;
    case PlotKind::price_survival:
        spec.log_x = true;
        spec.log_y = false;
        spec.x_label = "samples (descending price)";
        spec.y_label = "price";
        break;
    case PlotKind::price_chronological:
        spec.log_x = false;
        spec.log_y = false;
        spec.x_label = "days from start";
        spec.y_label = "price";
        break;
    }
    return spec;
}

std::string render(const PlotSpec& spec, const std::vector<Series>& data) {
    if (data.empty()) {
        throw Error("nothing to plot: no data series");
    }
    std::vector<Series> series = data;
    std::size_t clipped = 0;
    for (auto& s : series) {
        if (s.xs.size() != s.ys.size()) {
            throw Error("series '" + s.label + "': x/y size mismatch");
        }
        if (s.xs.empty()) {
            throw Error("series '" + s.label + "' is empty");
        }
        if (spec.log_y && spec.kind == PlotKind::price_survival) {
            // log-scale survival plots cannot show non-positive prices;
            // clip them and report the count in a caption note
            std::vector<double> xs, ys;
            for (std::size_t i = 0; i < s.xs.size(); ++i) {
                if (s.ys[i] > 0.0) {
                    xs.push_back(s.xs[i]);
                    ys.push_back(s.ys[i]);
                } else {
                    ++clipped;
                }
            }
            s.xs = std::move(xs);
            s.ys = std::move(ys);
            if (s.xs.empty()) {
                throw Error("series '" + s.label + "': no positive samples for log axis");
            }
        }
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (spec.log_x && !(s.xs[i] > 0.0)) {
                throw Error("series '" + s.label + "': non-positive value on logarithmic x axis");
            }
            if (spec.log_y && !(s.ys[i] > 0.0)) {
                throw Error("series '" + s.label + "': non-positive value on logarithmic y axis");
            }
        }
    }

    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -std::numeric_limits<double>::infinity();
    double y_lo = std::numeric_limits<double>::infinity();
    double y_hi = -std::numeric_limits<double>::infinity();
    for (const auto& s : series) {
        for (double v : s.xs) {
            expand(v, x_lo, x_hi);
        }
        for (double v : s.ys) {
            expand(v, y_lo, y_hi);
        }
    }
    for (const auto& m : spec.annotations) {
        expand(m.x, x_lo, x_hi);
        expand(m.y, y_lo, y_hi);
    }
    if (spec.band) {
        expand(spec.band->y_from, y_lo, y_hi);
    }

    const AxisScale sx =
        make_scale(spec.log_x, x_lo, x_hi, margin_left, canvas_w - margin_right, "x");
    const AxisScale sy =
        make_scale(spec.log_y, y_lo, y_hi, canvas_h - margin_bottom, margin_top, "y");

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(canvas_w) + "\" height=\"" +
           px(canvas_h) + "\" viewBox=\"0 0 " + px(canvas_w) + " " + px(canvas_h) + "\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + px(canvas_w) + "\" height=\"" + px(canvas_h) +
           "\" fill=\"#ffffff\"/>\n";

    const double plot_x = margin_left;
    const double plot_y = margin_top;
    const double plot_w = canvas_w - margin_left - margin_right;
    const double plot_h = canvas_h - margin_top - margin_bottom;

    // viability band behind everything else
    if (spec.band) {
        const double y_band = sy.to_pixel(spec.band->y_from);
        out += "<rect class=\"band\" x=\"" + px(plot_x) + "\" y=\"" + px(plot_y) + "\" width=\"" +
               px(plot_w) + "\" height=\"" + px(std::max(0.0, y_band - plot_y)) +
               "\" fill=\"#1f77b4\" fill-opacity=\"0.12\">";
        out += "<title>" + xml_escape(spec.band->label) + "</title></rect>\n";
    }

    // grid and ticks
    const auto xticks = sx.log ? log_ticks(sx.lo, sx.hi) : linear_ticks(sx.lo, sx.hi);
    const auto yticks = sy.log ? log_ticks(sy.lo, sy.hi) : linear_ticks(sy.lo, sy.hi);
    for (double t : xticks) {
        const double xp = sx.to_pixel(t);
        out += "<line x1=\"" + px(xp) + "\" y1=\"" + px(plot_y) + "\" x2=\"" + px(xp) +
               "\" y2=\"" + px(plot_y + plot_h) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + px(xp) + "\" y=\"" + px(plot_y + plot_h + 18.0) +
               "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">" +
               xml_escape(tick_label(t)) + "</text>\n";
    }
    for (double t : yticks) {
        const double yp = sy.to_pixel(t);
        out += "<line x1=\"" + px(plot_x) + "\" y1=\"" + px(yp) + "\" x2=\"" +
               px(plot_x + plot_w) + "\" y2=\"" + px(yp) +
               "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        out += "<text x=\"" + px(plot_x - 6.0) + "\" y=\"" + px(yp + 4.0) +
               "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">" +
               xml_escape(tick_label(t)) + "</text>\n";
    }

    // frame
    out += "<rect x=\"" + px(plot_x) + "\" y=\"" + px(plot_y) + "\" width=\"" + px(plot_w) +
           "\" height=\"" + px(plot_h) + "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    // data series
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = palette[si % palette_size];
        std::string pts;
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            if (i) {
                pts += ' ';
            }
            pts += px(sx.to_pixel(s.xs[i])) + "," + px(sy.to_pixel(s.ys[i]));
        }
        out += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + pts + "\"><title>" + xml_escape(s.label) +
               "</title></polyline>\n";
    }

    // annotations
    for (const auto& m : spec.annotations) {
        const double xp = sx.to_pixel(m.x);
        const double yp = sy.to_pixel(m.y);
        if (m.vline) {
            out += "<line class=\"annotation\" x1=\"" + px(xp) + "\" y1=\"" + px(plot_y) +
                   "\" x2=\"" + px(xp) + "\" y2=\"" + px(plot_y + plot_h) +
                   "\" stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
        }
        out += "<circle class=\"marker\" cx=\"" + px(xp) + "\" cy=\"" + px(yp) +
               "\" r=\"3.5\" fill=\"#d62728\"><title>" + xml_escape(m.label) +
               "</title></circle>\n";
        out += "<text x=\"" + px(xp + 6.0) + "\" y=\"" + px(yp - 6.0) +
               "\" font-family=\"monospace\" font-size=\"12\">" + xml_escape(m.label) +
               "</text>\n";
    }

    // legend (line swatches, not polylines, so series counts stay exact)
    if (series.size() > 1 || !series.front().label.empty()) {
        double ly = plot_y + 14.0;
        for (std::size_t si = 0; si < series.size(); ++si) {
            const char* color = palette[si % palette_size];
            const double lx = plot_x + plot_w - 180.0;
            out += "<line x1=\"" + px(lx) + "\" y1=\"" + px(ly - 4.0) + "\" x2=\"" +
                   px(lx + 24.0) + "\" y2=\"" + px(ly - 4.0) + "\" stroke=\"" +
                   std::string(color) + "\" stroke-width=\"1.5\"/>\n";
            out += "<text x=\"" + px(lx + 30.0) + "\" y=\"" + px(ly) +
                   "\" font-family=\"monospace\" font-size=\"12\">" +
                   xml_escape(series[si].label) + "</text>\n";
            ly += 16.0;
        }
    }

    // title and axis labels
    if (!spec.title.empty()) {
        out += "<text x=\"" + px(canvas_w / 2.0) + "\" y=\"24\" font-family=\"monospace\" "
               "font-size=\"15\" text-anchor=\"middle\">" +
               xml_escape(spec.title) + "</text>\n";
    }
    out += "<text x=\"" + px(plot_x + plot_w / 2.0) + "\" y=\"" + px(canvas_h - 24.0) +
           "\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\">" +
           xml_escape(spec.x_label) + "</text>\n";
    out += "<text x=\"18\" y=\"" + px(plot_y + plot_h / 2.0) +
           "\" font-family=\"monospace\" font-size=\"13\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 18 " +
           px(plot_y + plot_h / 2.0) + ")\">" + xml_escape(spec.y_label) + "</text>\n";

    if (clipped > 0) {
        out += "<text class=\"caption-note\" x=\"" + px(plot_x) + "\" y=\"" +
               px(canvas_h - 8.0) + "\" font-family=\"monospace\" font-size=\"11\">note: " +
               std::to_string(clipped) + " non-positive price sample(s) not shown on log axis" +
               "</text>\n";
    }

    out += "</svg>\n";
    return out;
}

} // namespace varcap::svg
