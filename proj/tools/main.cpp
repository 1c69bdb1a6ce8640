#include "commands.hpp"

#include "refcast/errors.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>

namespace cli = refcast::cli;

int main(int argc, char** argv) {
    CLI::App app{"refcast - reference class forecasting over completed-project datasets"};
    app.require_subcommand(1);

    std::string config_path;
    if (const char* env = std::getenv("REFCAST_CONFIG")) config_path = env;
    std::string format_flag, store_flag;
    app.add_option("--config", config_path, "config file (JSON); env REFCAST_CONFIG");
    app.add_option("--format", format_flag, "output format: text|csv|jsonl");
    app.add_option("--store", store_flag, "dataset store directory");

    // validate
    std::string v_path;
    auto* validate = app.add_subcommand("validate", "parse a dataset and report rejects");
    validate->add_option("dataset", v_path, "dataset CSV path or store id")->required();

    // describe
    std::string d_path, d_variable = "both", d_by;
    auto* describe = app.add_subcommand("describe", "overrun summary statistics and outliers");
    describe->add_option("dataset", d_path)->required();
    describe->add_option("--variable", d_variable, "cost|schedule|both");
    describe->add_option("--by", d_by, "group rows by sector|country");

    // compare
    std::string c_path, c_group, c_baseline, c_variable = "both";
    auto* compare = app.add_subcommand("compare", "group comparison with rank-sum tests");
    compare->add_option("dataset", c_path)->required();
    compare->add_option("--group-col", c_group, "sector|country")->required();
    compare->add_option("--baseline", c_baseline, "baseline group")->required();
    compare->add_option("--variable", c_variable, "cost|schedule|both");

    auto add_filter_flags = [](CLI::App* cmd, cli::FilterFlags& f) {
        cmd->add_option("--sector", f.sector, "keep one sector");
        cmd->add_option("--country", f.country, "keep one country (ISO alpha-2)");
        cmd->add_option("--from-year", f.from_year, "earliest decision year");
        cmd->add_option("--to-year", f.to_year, "latest decision year");
    };

    // forecast
    std::string f_path;
    cli::ForecastOptions f_opts;
    double f_base = 0.0, f_adjust = 0.0;
    auto* forecast = app.add_subcommand("forecast", "certainty-level uplifts from a class");
    forecast->add_option("dataset", f_path)->required();
    add_filter_flags(forecast, f_opts.filters);
    forecast->add_option("--variable", f_opts.variable, "cost|schedule");
    forecast->add_option("--certainty", f_opts.certainties,
                         "certainty levels in (0,1], e.g. 0.5 0.8")->delimiter(',');
    auto* f_base_opt = forecast->add_option("--base", f_base, "base estimate to uplift");
    auto* f_adj_opt = forecast->add_option("--adjust", f_adjust,
                                           "multiplicative uplift adjustment");
    forecast->add_option("--evidence", f_opts.evidence,
                         "hard evidence justifying --adjust");
    forecast->add_option("--plot", f_opts.plot_dir, "emit curve CSV/SVG files here");

    // regime
    std::string r_path;
    cli::RegimeOptions r_opts;
    double r_actual = 0.0;
    auto* regime = app.add_subcommand("regime", "tiered contingency regime over a class");
    regime->add_option("dataset", r_path)->required();
    add_filter_flags(regime, r_opts.filters);
    regime->add_option("--variable", r_opts.variable, "cost|schedule");
    regime->add_option("--base", r_opts.base, "base estimate")->required();
    regime->add_option("--tiers", r_opts.tier_levels, "tier levels, e.g. P30,P50,P80");
    auto* r_actual_opt = regime->add_option("--actual", r_actual,
                                            "allocate an actual outturn cost");

    // trend
    std::string t_path;
    cli::TrendOptions t_opts;
    int t_window = 0;
    double t_confidence = 0.0;
    auto* trend = app.add_subcommand("trend", "historic moving average with a CI band");
    trend->add_option("dataset", t_path)->required();
    add_filter_flags(trend, t_opts.filters);
    trend->add_option("--variable", t_opts.variable_sel, "cost|schedule|both");
    auto* t_window_opt = trend->add_option("--window", t_window, "odd window width in years");
    auto* t_conf_opt = trend->add_option("--confidence", t_confidence,
                                         "band confidence in (0,1)");
    trend->add_option("--plot", t_opts.plot_dir, "emit trend CSV/SVG files here");

    // error-test
    std::string e_path;
    auto* error_test = app.add_subcommand("error-test",
                                          "test whether overruns look like mere error");
    error_test->add_option("dataset", e_path)->required();

    // synth
    cli::SynthOptions s_opts;
    std::uint64_t s_n = 0;
    auto* synth = app.add_subcommand("synth", "generate a seeded synthetic dataset");
    synth->add_option("--n", s_n, "record count")->required();
    synth->add_option("--location", s_opts.spec.location, "location parameter");
    synth->add_option("--scale", s_opts.spec.scale, "scale parameter (>= 0)");
    synth->add_option("--tail", s_opts.tail, "symmetric|heavy_right");
    synth->add_option("--seed", s_opts.spec.seed, "64-bit seed");
    synth->add_option("--sector", s_opts.sector, "sector label to stamp");
    synth->add_option("--country", s_opts.spec.country, "country label to stamp");
    synth->add_option("--out", s_opts.out_path, "output CSV path")->required();
    synth->add_option("--register", s_opts.register_id, "register in the dataset store");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kOk : cli::kUsage;
    }

    try {
        cli::GlobalOptions g;
        if (!config_path.empty()) cli::load_config(config_path, g);
        if (!format_flag.empty()) {
            const auto f = cli::format_from_string(format_flag);
            if (!f) throw refcast::DomainError("unknown format '" + format_flag + "'");
            g.format = *f;
        }
        if (!store_flag.empty()) g.store_dir = store_flag;

        if (*validate) return cli::cmd_validate(g, v_path, std::cout, std::cerr);
        if (*describe)
            return cli::cmd_describe(g, d_path, d_variable, d_by, std::cout, std::cerr);
        if (*compare)
            return cli::cmd_compare(g, c_path, c_group, c_baseline, c_variable, std::cout,
                                    std::cerr);
        if (*forecast) {
            if (f_base_opt->count()) f_opts.base = f_base;
            if (f_adj_opt->count()) f_opts.adjust_factor = f_adjust;
            return cli::cmd_forecast(g, f_path, f_opts, std::cout, std::cerr);
        }
        if (*regime) {
            if (r_actual_opt->count()) r_opts.actual = r_actual;
            return cli::cmd_regime(g, r_path, r_opts, std::cout, std::cerr);
        }
        if (*trend) {
            if (t_window_opt->count()) t_opts.window = t_window;
            if (t_conf_opt->count()) t_opts.confidence = t_confidence;
            return cli::cmd_trend(g, t_path, t_opts, std::cout, std::cerr);
        }
        if (*error_test) return cli::cmd_error_test(g, e_path, std::cout, std::cerr);
        if (*synth) {
            s_opts.spec.n = s_n;
            return cli::cmd_synth(g, s_opts, std::cout, std::cerr);
        }
    } catch (const refcast::FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kValidation;
    } catch (const refcast::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kUsage;
    }
    return cli::kUsage;
}
