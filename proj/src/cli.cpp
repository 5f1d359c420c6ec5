#include "varcap/cli.hpp"

#include "varcap/error.hpp"
#include "varcap/ingest.hpp"
#include "varcap/numeric.hpp"
#include "varcap/report.hpp"
#include "varcap/scenario.hpp"
#include "varcap/segmentation.hpp"
#include "varcap/tco.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace varcap::cli {

namespace {

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    return in;
}

// Horizon T is always the span the prices cover: n * interval.
CostStructure cost_from_flags(const PriceSeries& series, std::optional<double> fixed_costs,
                              double power_mw, std::optional<double> psi) {
    const double horizon_hours = series.span_hours();
    const double p_avg = mean_price(series);
    if (psi) {
        return cost_structure_from_psi(*psi, horizon_hours, power_mw, p_avg);
    }
    if (!fixed_costs) {
        throw Error("either --fixed-costs or --psi is required");
    }
    return make_cost_structure(*fixed_costs, horizon_hours, power_mw, p_avg);
}

struct IngestArgs {
    std::string format = "generic";
    std::string input;
    std::string output;
    std::string resample;
    std::string currency;
};

int run_ingest(const IngestArgs& args, std::ostream& out) {
    auto in = open_input(args.input);
    auto series = ingest::parse_prices(in, ingest::price_format_from_name(args.format));
    if (!args.currency.empty()) {
        series.currency = args.currency;
    }
    if (!args.resample.empty()) {
        series = ingest::resample(series, ingest::parse_duration_seconds(args.resample));
    }
    report::write_text_file(args.output, ingest::to_canonical_json(series));
    out << "wrote " << args.output << " (" << series.size() << " samples, interval "
        << series.interval << " s)\n";
    return 0;
}

struct SeriesArgs {
    std::string series_path;
    std::string output;
};

int run_kx(const SeriesArgs& args, std::ostream& out) {
    const auto series = ingest::load_series(args.series_path);
    const auto curve = variability_curve(series);
    report::write_kx_plot(args.output, {curve}, {"k-x line"});
    out << "wrote " << args.output << ".svg and " << args.output << ".csv (" << curve.points.size()
        << " points)\n";
    return 0;
}

struct AssessArgs {
    std::string series_path;
    std::string output;
    std::optional<double> fixed_costs;
    double power_mw = 0.0;
    std::optional<double> psi;
};

int run_assess(const AssessArgs& args, std::ostream& out) {
    const auto series = ingest::load_series(args.series_path);
    const auto cost = cost_from_flags(series, args.fixed_costs, args.power_mw, args.psi);
    report::write_text_file(args.output + ".json", report::cost_only_json(cost));
    out << "psi = " << format_fixed(cost.psi, 4) << "; shutdowns become viable when k > "
        << format_fixed(viability_bound(cost), 4) << " (always-on cost per compute "
        << format_fixed((cost.fixed_costs + cost.horizon_hours * cost.power_mw * cost.p_avg) /
                            cost.horizon_hours,
                        2)
        << (series.currency.empty() ? "" : " " + series.currency) << "/h).\n";
    return 0;
}

int run_optimize(const AssessArgs& args, std::ostream& out) {
    const auto series = ingest::load_series(args.series_path);
    const auto cost = cost_from_flags(series, args.fixed_costs, args.power_mw, args.psi);
    const auto curve = variability_curve(series);
    const auto result = optimize(curve, cost);
    const auto summary = report::summarize(result, cost, series.currency);
    report::write_text_file(args.output + ".json", summary.json);

    report::GainSeries gains;
    gains.label = "gain";
    gains.xs.reserve(curve.points.size());
    gains.gains.reserve(curve.points.size());
    for (const auto& p : curve.points) {
        gains.xs.push_back(p.x);
        gains.gains.push_back(efficiency_gain(p, cost));
    }
    std::vector<svg::Marker> markers;
    if (result.x_opt && result.gain) {
        markers.push_back({*result.x_opt, *result.gain,
                           "optimum x = " + format_fixed(*result.x_opt * 100.0, 2) + "%", false});
    }
    if (result.x_be) {
        markers.push_back({*result.x_be, 0.0,
                           "break-even x = " + format_fixed(*result.x_be * 100.0, 2) + "%", true});
    }
    report::write_efficiency_plot(args.output, {gains}, markers);
    out << summary.text << "\n";
    return 0;
}

struct AmplifyArgs {
    std::string series_path;
    std::string mix_path;
    std::string mix_format = "generic";
    std::string output;
};

int run_amplify(const AmplifyArgs& args, std::ostream& out) {
    const auto series = ingest::load_series(args.series_path);
    auto mix_in = open_input(args.mix_path);
    const auto mix = ingest::parse_mix(mix_in, ingest::mix_format_from_name(args.mix_format));
    const auto amplified = scenario::amplify(series, mix);
    const bool csv = args.output.size() > 4 && args.output.ends_with(".csv");
    report::write_text_file(args.output, csv ? ingest::to_generic_csv(amplified)
                                             : ingest::to_canonical_json(amplified));
    out << "wrote " << args.output << " (" << amplified.size() << " samples)\n";
    return 0;
}

struct SweepArgs {
    std::string series_path;
    std::string output;
    double from = 0.1;
    double to = 10.0;
    std::size_t points = 50;
    double power_mw = 1.0;
};

int run_sweep(const SweepArgs& args, std::ostream& out) {
    const auto series = ingest::load_series(args.series_path);
    const auto curve = variability_curve(series);
    const auto base = cost_structure_from_psi(1.0, series.span_hours(), args.power_mw,
                                              mean_price(series));
    const auto grid = scenario::log_spaced_psi_grid(args.from, args.to, args.points);
    const auto sweep = scenario::sweep_psi(curve, base, grid);
    report::write_sweep_plot(args.output, sweep);
    out << "wrote " << args.output << ".svg and " << args.output << ".csv (" << grid.size()
        << " psi values)\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"TCO impact of price-driven temporary shutdowns for compute infrastructure"};
    app.require_subcommand(1);

    IngestArgs ingest_args;
    auto* cmd_ingest = app.add_subcommand("ingest", "parse a price CSV into canonical JSON");
    cmd_ingest->add_option("--format", ingest_args.format, "input dialect: generic|smard|aemo")
        ->check(CLI::IsMember({"generic", "smard", "aemo"}));
    cmd_ingest->add_option("--input", ingest_args.input, "input CSV path")->required();
    cmd_ingest->add_option("--output", ingest_args.output, "output JSON path")->required();
    cmd_ingest->add_option("--resample", ingest_args.resample,
                           "target interval: 1h, 1d, 1w or seconds");
    cmd_ingest->add_option("--currency", ingest_args.currency, "override the currency label");

    SeriesArgs kx_args;
    auto* cmd_kx = app.add_subcommand("kx", "compute the k-x variability curve");
    cmd_kx->add_option("--series", kx_args.series_path, "price series (canonical JSON or CSV)")
        ->required();
    cmd_kx->add_option("--output", kx_args.output, "output stem for .svg/.csv")->required();

    AssessArgs assess_args;
    auto* cmd_assess = app.add_subcommand("assess", "derive psi and the viability bound");
    cmd_assess->add_option("--series", assess_args.series_path, "price series")->required();
    cmd_assess->add_option("--fixed-costs", assess_args.fixed_costs,
                           "fixed costs over the series span");
    cmd_assess->add_option("--power", assess_args.power_mw, "power draw in MW")->required();
    cmd_assess->add_option("--psi", assess_args.psi, "override the derived psi");
    cmd_assess->add_option("--output", assess_args.output, "output stem for .json")->required();

    AssessArgs optimize_args;
    auto* cmd_optimize =
        app.add_subcommand("optimize", "find break-even and optimal shutdown fractions");
    cmd_optimize->add_option("--series", optimize_args.series_path, "price series")->required();
    cmd_optimize->add_option("--fixed-costs", optimize_args.fixed_costs,
                             "fixed costs over the series span");
    cmd_optimize->add_option("--power", optimize_args.power_mw, "power draw in MW")->required();
    cmd_optimize->add_option("--psi", optimize_args.psi, "override the derived psi");
    cmd_optimize->add_option("--output", optimize_args.output, "output stem for .json/.svg/.csv")
        ->required();

    auto* cmd_scenario = app.add_subcommand("scenario", "hypothetical-scenario generation");
    cmd_scenario->require_subcommand(1);
    AmplifyArgs amplify_args;
    auto* cmd_amplify = cmd_scenario->add_subcommand(
        "amplify", "amplify price variability by the fossil generation share");
    cmd_amplify->add_option("--series", amplify_args.series_path, "price series")->required();
    cmd_amplify->add_option("--mix", amplify_args.mix_path, "generation-mix CSV")->required();
    cmd_amplify->add_option("--mix-format", amplify_args.mix_format, "mix dialect: generic|smard")
        ->check(CLI::IsMember({"generic", "smard"}));
    cmd_amplify->add_option("--output", amplify_args.output,
                            "output path (.json canonical, .csv generic)")
        ->required();

    SweepArgs sweep_args;
    auto* cmd_sweep = app.add_subcommand("sweep-psi", "max gain across a log-spaced psi grid");
    cmd_sweep->add_option("--series", sweep_args.series_path, "price series")->required();
    cmd_sweep->add_option("--from", sweep_args.from, "lowest psi");
    cmd_sweep->add_option("--to", sweep_args.to, "highest psi");
    cmd_sweep->add_option("--points", sweep_args.points, "grid size");
    cmd_sweep->add_option("--power", sweep_args.power_mw, "power draw in MW");
    cmd_sweep->add_option("--output", sweep_args.output, "output stem for .svg/.csv")->required();

    std::vector<std::string> argv_vec;
    argv_vec.push_back("varcap");
    argv_vec.insert(argv_vec.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_vec.size());
    for (const auto& a : argv_vec) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (cmd_ingest->parsed()) {
            return run_ingest(ingest_args, out);
        }
        if (cmd_kx->parsed()) {
            return run_kx(kx_args, out);
        }
        if (cmd_assess->parsed()) {
            return run_assess(assess_args, out);
        }
        if (cmd_optimize->parsed()) {
            return run_optimize(optimize_args, out);
        }
        if (cmd_scenario->parsed()) {
            return run_amplify(amplify_args, out);
        }
        if (cmd_sweep->parsed()) {
            return run_sweep(sweep_args, out);
        }
        err << "error: no subcommand given\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace varcap::cli
