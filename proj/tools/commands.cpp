#include "commands.hpp"

#include "refcast/csv.hpp"
#include "refcast/errors.hpp"
#include "refcast/hypotests.hpp"
#include "refcast/plot.hpp"
#include "refcast/rcf.hpp"
#include "refcast/stats.hpp"
#include "refcast/store.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace refcast::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

// Resolves a dataset argument: a registered store id when a store is
// configured, otherwise a plain file path. Unreadable files are usage
// errors; malformed content stays a FormatError (validation).
Dataset load_dataset(const GlobalOptions& g, const std::string& path_or_id) {
    std::string path = path_or_id;
    if (g.store_dir && !fs::exists(path)) {
        DatasetStore store(*g.store_dir);
        if (auto resolved = store.resolve(path_or_id)) path = resolved->string();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open dataset '" + path_or_id + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset(buf.str(), path);
}

void add_input_meta(Report& report, const Dataset& ds) {
    report.meta("input", ds.source_meta.path + " (" + std::to_string(ds.size()) +
                             " records, " + std::to_string(ds.source_meta.rejects.size()) +
                             " rejected)");
    for (const auto& a : ds.source_meta.annotations) report.meta("note", a);
    if (!ds.source_meta.rejects.empty())
        report.warn(std::to_string(ds.source_meta.rejects.size()) +
                    " rejected rows; run 'refcast validate' for details");
}

std::string p_level_label(double p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "P%g", p * 100.0);
    return buf;
}

std::string range_text(double lo, double hi) { return pct(lo) + " to " + pct(hi); }

std::string num(double v) { return refcast::csv::num_to_string(v); }

constexpr const char* kStarFootnote =
    "*** p < 0.001; ** p < 0.01; * p < 0.05 "
    "(two-sample Wilcoxon tests against the baseline row)";

void write_file_or_throw(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw DomainError("cannot write '" + path.string() + "'");
}

} // namespace

void load_config(const std::string& path, GlobalOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open config '" + path + "'");
    ordered_json cfg;
    try {
        in >> cfg;
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError("config '" + path + "': " + e.what());
    }

    if (cfg.contains("dataset_store")) opts.store_dir = cfg["dataset_store"].get<std::string>();
    if (cfg.contains("window")) opts.window = cfg["window"].get<int>();
    if (cfg.contains("confidence")) opts.confidence = cfg["confidence"].get<double>();
    if (cfg.contains("format")) {
        const auto f = format_from_string(cfg["format"].get<std::string>());
        if (!f) throw DomainError("config: unknown format '" +
                                  cfg["format"].get<std::string>() + "'");
        opts.format = *f;
    }
    if (cfg.contains("tiers")) {
        std::vector<TierSpec> tiers;
        for (const auto& t : cfg["tiers"])
            tiers.push_back({t.value("name", ""), t.value("p", 0.0), t.value("owner", "")});
        opts.tiers = std::move(tiers);
    }
    if (cfg.contains("pain_gain")) {
        const auto& pg = cfg["pain_gain"];
        opts.pain_gain.funder_share_cap = pg.value("funder_share_cap", 0.75);
        opts.pain_gain.contractor_gain_share = pg.value("contractor_gain_share", 0.0);
    }

    if (opts.window < 1 || opts.window % 2 == 0)
        throw DomainError("config: window must be an odd positive integer");
    if (!(opts.confidence > 0.0 && opts.confidence < 1.0))
        throw DomainError("config: confidence must lie in (0, 1)");
    for (std::size_t i = 1; i < opts.tiers.size(); ++i)
        if (!(opts.tiers[i].p_level > opts.tiers[i - 1].p_level))
            throw DomainError("config: tier p levels must be strictly increasing");
}

std::vector<Variable> parse_variable_selection(const std::string& s) {
    if (s == "both") return {Variable::cost, Variable::schedule};
    const auto v = variable_from_string(s);
    if (!v) throw DomainError("unknown variable '" + s + "' (cost|schedule|both)");
    return {*v};
}

std::vector<TierSpec> parse_tier_levels(const std::string& s,
                                        const std::vector<TierSpec>& configured) {
    std::vector<TierSpec> tiers;
    std::stringstream ss(s);
    std::string token;
    while (std::getline(ss, token, ',')) {
        std::string trimmed{refcast::csv::trim(token)};
        if (trimmed.empty()) continue;
        std::string_view body = trimmed;
        if (body.front() == 'P' || body.front() == 'p') body.remove_prefix(1);
        const auto percent = refcast::csv::parse_double(body);
        if (!percent) throw DomainError("bad tier level '" + trimmed + "' (use e.g. P80)");
        const double p = *percent / 100.0;
        TierSpec spec{trimmed, p, ""};
        for (const auto& c : configured)
            if (std::fabs(c.p_level - p) < 1e-9) spec = c;
        tiers.push_back(std::move(spec));
    }
    if (tiers.empty()) throw DomainError("no tier levels given");
    return tiers;
}

Filter FilterFlags::to_filter() const {
    Filter f;
    if (!sector.empty()) {
        const auto s = sector_from_string(sector);
        if (!s) throw DomainError("unknown sector '" + sector + "'");
        f.sector = *s;
    }
    if (!country.empty()) f.country = country;
    f.year_from = from_year;
    f.year_to = to_year;
    return f;
}

int cmd_validate(const GlobalOptions& g, const std::string& path, std::ostream& out,
                 std::ostream& err) {
    const Dataset ds = load_dataset(g, path);
    Report report("validate", g.format);
    report.meta("input", ds.source_meta.path);
    report.meta("records", std::to_string(ds.size()));
    report.meta("rejected", std::to_string(ds.source_meta.rejects.size()));
    if (ds.size() == 0) report.warn("dataset has no usable records");

    std::string body;
    for (const auto& rej : ds.source_meta.rejects) {
        report.row({{"line", rej.line}, {"reason", rej.reason}});
        body += "line " + std::to_string(rej.line) + ": " + rej.reason + "\n";
    }
    if (ds.source_meta.rejects.empty()) {
        report.text() = "OK: " + std::to_string(ds.size()) + " records, 0 rejected\n";
        report.emit(out, err);
        return kOk;
    }
    report.text() = body;
    report.emit(out, err);
    return kValidation;
}

namespace {

void describe_group(Report& report, const std::string& group_label,
                    const std::vector<OverrunObservation>& obs, Variable v,
                    TextTable& table, std::string& outlier_text) {
    const std::string var_label =
        v == Variable::cost ? "Cost overrun" : "Schedule overrun";
    if (obs.empty()) {
        report.warn("no " + std::string(to_string(v)) + " observations" +
                    (group_label == "all" ? "" : " in group '" + group_label + "'"));
        return;
    }

    const auto s = summarize(std::span<const OverrunObservation>(obs));
    table.rows.push_back({var_label, pct(s.mean), pct(s.median),
                          range_text(s.min, s.max), pct_plain(s.freq_overrun),
                          std::to_string(s.n)});

    ordered_json row{{"group", group_label},
                     {"variable", std::string(to_string(v))},
                     {"n", s.n},
                     {"mean", s.mean},
                     {"median", s.median},
                     {"min", s.min},
                     {"max", s.max},
                     {"freq_overrun", s.freq_overrun}};

    if (obs.size() >= 4) {
        const auto fences = tukey_fences(obs);
        row["lower_fence"] = fences.lower_fence;
        row["upper_fence"] = fences.upper_fence;
        row["outliers"] = fences.outlier_ids.size();
        row["outlier_share"] = fences.outlier_share;
        row["outlier_ids"] = fences.outlier_ids;
        outlier_text += var_label + ": fences [" + pct(fences.lower_fence) + ", " +
                        pct(fences.upper_fence) + "], flagged " +
                        std::to_string(fences.outlier_ids.size()) + " of " +
                        std::to_string(fences.n) + " (" + pct_plain(fences.outlier_share) +
                        ")\n";
    } else {
        row["lower_fence"] = nullptr;
        row["upper_fence"] = nullptr;
        row["outliers"] = nullptr;
        row["outlier_share"] = nullptr;
        row["outlier_ids"] = ordered_json::array();
        report.warn("fewer than 4 " + std::string(to_string(v)) +
                    " observations; outlier fences skipped");
    }
    report.row(std::move(row));
}

} // namespace

int cmd_describe(const GlobalOptions& g, const std::string& path,
                 const std::string& variable_sel, const std::string& by, std::ostream& out,
                 std::ostream& err) {
    const Dataset ds = load_dataset(g, path);
    const auto variables = parse_variable_selection(variable_sel);

    Report report("describe", g.format);
    add_input_meta(report, ds);

    // Group labels in first-appearance order; "all" when ungrouped.
    std::vector<std::pair<std::string, Dataset>> groups;
    if (by.empty()) {
        groups.emplace_back("all", ds);
    } else if (by == "sector") {
        for (const auto& r : ds.records) {
            const std::string label{to_string(r.sector)};
            auto it = std::find_if(groups.begin(), groups.end(),
                                   [&](const auto& gp) { return gp.first == label; });
            if (it == groups.end()) {
                groups.emplace_back(label, Dataset{{}, ds.source_meta});
                it = groups.end() - 1;
            }
            it->second.records.push_back(r);
        }
    } else if (by == "country") {
        for (const auto& r : ds.records) {
            auto it = std::find_if(groups.begin(), groups.end(),
                                   [&](const auto& gp) { return gp.first == r.country; });
            if (it == groups.end()) {
                groups.emplace_back(r.country, Dataset{{}, ds.source_meta});
                it = groups.end() - 1;
            }
            it->second.records.push_back(r);
        }
    } else {
        throw DomainError("unknown grouping '" + by + "' (sector|country)");
    }

    std::string body;
    for (const auto& [label, group_ds] : groups) {
        TextTable table;
        table.header = {"", "Average", "Median", "Range", "Frequency of overrun",
                        "Sample size (n)"};
        std::string outlier_text;
        for (Variable v : variables)
            describe_group(report, label, extract_observations(group_ds, v), v, table,
                           outlier_text);
        if (table.rows.empty()) continue;
        if (!by.empty()) body += "== " + by + ": " + label + " ==\n";
        body += table.render();
        if (!outlier_text.empty())
            body += "\nBlack-Swan outliers (values at or beyond the Tukey fences)\n" +
                    outlier_text;
        body += "\n";
    }
    if (!body.empty() && body.back() == '\n') body.pop_back();
    report.text() = std::move(body);
    report.emit(out, err);
    return kOk;
}

int cmd_compare(const GlobalOptions& g, const std::string& path, const std::string& group_col,
                const std::string& baseline, const std::string& variable_sel,
                std::ostream& out, std::ostream& err) {
    const Dataset ds = load_dataset(g, path);
    const auto variables = parse_variable_selection(variable_sel);

    Grouping grouping;
    if (group_col == "sector")
        grouping = Grouping::by_sector;
    else if (group_col == "country")
        grouping = Grouping::by_country;
    else
        throw DomainError("unknown group column '" + group_col + "' (sector|country)");

    const auto cmp = compare_groups(ds, grouping, baseline);

    Report report("compare", g.format);
    add_input_meta(report, ds);
    report.meta("baseline", cmp.baseline);
    for (const auto& note : cmp.notes) report.warn(note);

    TextTable table;
    table.header = {""};
    for (Variable v : variables) {
        const std::string cap = v == Variable::cost ? "cost" : "schedule";
        table.header.push_back((v == Variable::cost ? "Cost overrun (mean)"
                                                    : "Schedule overrun (mean)"));
        table.header.push_back("Frequency of " + cap + " overrun");
    }
    table.header.push_back("Sample size (n)");

    for (const auto& row : cmp.rows) {
        std::vector<std::string> cells{row.group};
        ordered_json jrow{{"group", row.group}, {"records", row.records}};
        for (Variable v : variables) {
            const auto& cell = v == Variable::cost ? row.cost : row.schedule;
            const std::string key{to_string(v)};
            if (!cell) {
                cells.push_back("NA");
                cells.push_back("NA");
                jrow[key + "_mean"] = nullptr;
                jrow[key + "_freq_overrun"] = nullptr;
                jrow[key + "_n"] = 0;
                jrow[key + "_p_value"] = nullptr;
                jrow[key + "_stars"] = "";
                continue;
            }
            const std::string stars = cell->vs_baseline ? cell->vs_baseline->stars : "";
            cells.push_back(pct(cell->mean) + stars);
            cells.push_back(pct_plain(cell->freq_overrun));
            jrow[key + "_mean"] = cell->mean;
            jrow[key + "_freq_overrun"] = cell->freq_overrun;
            jrow[key + "_n"] = cell->n;
            if (cell->vs_baseline) {
                jrow[key + "_p_value"] = cell->vs_baseline->p_value;
                jrow[key + "_stars"] = cell->vs_baseline->stars;
                jrow[key + "_method"] = std::string(to_string(cell->vs_baseline->method));
                if (cell->vs_baseline->method == TestMethod::normal_approx)
                    report.warn("normal approximation used for '" + row.group + "' " + key +
                                " test");
            } else {
                jrow[key + "_p_value"] = nullptr;
                jrow[key + "_stars"] = "";
            }
        }
        cells.push_back(std::to_string(row.records));
        table.rows.push_back(std::move(cells));
        report.row(std::move(jrow));
    }

    report.text() = "Baseline: " + cmp.baseline + " (grouped by " + group_col + ")\n\n" +
                    table.render() + "\n" + kStarFootnote + "\n";
    report.emit(out, err);
    return kOk;
}

int cmd_forecast(const GlobalOptions& g, const std::string& path, const ForecastOptions& fo,
                 std::ostream& out, std::ostream& err) {
    if (fo.adjust_factor && fo.evidence.empty())
        throw DomainError("adjustment requires hard evidence: pass --evidence with --adjust");

    const Dataset ds = load_dataset(g, path);
    const auto variables = parse_variable_selection(fo.variable);
    if (variables.size() != 1) throw DomainError("forecast takes --variable cost|schedule");
    const Variable variable = variables[0];
    const Filter f = fo.filters.to_filter();
    const auto rc = build_reference_class(ds, f, variable);

    Report report("forecast", g.format);
    add_input_meta(report, ds);
    report.meta("reference_class", std::string(to_string(variable)) + " overruns, n = " +
                                       std::to_string(rc.n()) + " (" + f.describe() + ")");
    if (rc.small_sample())
        report.warn("reference class holds only " + std::to_string(rc.n()) +
                    " projects; guidance is a minimum of 20-30");

    TextTable table;
    table.header = {"Certainty", "Uplift"};
    if (fo.adjust_factor) table.header.push_back("Adjusted uplift");
    if (fo.base) table.header.push_back("Budget");
    if (fo.base && fo.adjust_factor) table.header.push_back("Adjusted budget");

    for (double certainty : fo.certainties) {
        UpliftResult u = uplift(rc, certainty);
        if (fo.adjust_factor) {
            u = adjust_uplift(u, *fo.adjust_factor, fo.evidence);
            if (!u.note.empty()) report.warn(u.note);
        }
        std::vector<std::string> cells{p_level_label(certainty), pct(u.uplift)};
        ordered_json row{{"variable", std::string(to_string(variable))},
                         {"certainty", certainty},
                         {"uplift", u.uplift}};
        if (fo.adjust_factor) {
            cells.push_back(pct(*u.adjusted_uplift));
            row["adjusted_uplift"] = *u.adjusted_uplift;
            row["adjustment_evidence"] = u.adjustment_evidence;
        }
        if (fo.base) {
            cells.push_back(num(apply_uplift(*fo.base, u.uplift)));
            row["base"] = *fo.base;
            row["budget"] = apply_uplift(*fo.base, u.uplift);
            if (fo.adjust_factor) {
                cells.push_back(num(apply_uplift(*fo.base, *u.adjusted_uplift)));
                row["adjusted_budget"] = apply_uplift(*fo.base, *u.adjusted_uplift);
            }
        }
        table.rows.push_back(std::move(cells));
        report.row(std::move(row));
    }

    if (!fo.plot_dir.empty()) {
        fs::create_directories(fo.plot_dir);
        const std::string prefix = std::string(to_string(variable));
        const auto cf = cumulative_frequency_curve(rc);
        const auto uc = uplift_curve(rc);
        write_file_or_throw(fs::path(fo.plot_dir) / (prefix + "_cumulative_frequency.csv"),
                            plot::xy_csv("overrun", "cumulative_frequency", cf));
        write_file_or_throw(
            fs::path(fo.plot_dir) / (prefix + "_cumulative_frequency.svg"),
            plot::svg_line_chart("Cumulative frequency of " + prefix + " overrun",
                                 prefix + " overrun", "cumulative frequency",
                                 {{"", cf, false}}));
        write_file_or_throw(fs::path(fo.plot_dir) / (prefix + "_uplift_vs_certainty.csv"),
                            plot::xy_csv("certainty", "uplift", uc));
        write_file_or_throw(
            fs::path(fo.plot_dir) / (prefix + "_uplift_vs_certainty.svg"),
            plot::svg_line_chart("Required " + prefix + " uplift by certainty", "certainty",
                                 "uplift", {{"", uc, false}}));
        write_file_or_throw(fs::path(fo.plot_dir) / (prefix + "_reference_class.csv"),
                            to_csv(rc));
        report.meta("plots", fo.plot_dir);
    }

    report.text() += table.render();
    report.emit(out, err);
    return kOk;
}

int cmd_regime(const GlobalOptions& g, const std::string& path, const RegimeOptions& ro,
               std::ostream& out, std::ostream& err) {
    const Dataset ds = load_dataset(g, path);
    const auto variables = parse_variable_selection(ro.variable);
    if (variables.size() != 1) throw DomainError("regime takes --variable cost|schedule");
    if (!(ro.base > 0.0)) throw DomainError("--base must be a positive estimate");

    const Filter f = ro.filters.to_filter();
    const auto rc = build_reference_class(ds, f, variables[0]);
    const auto tiers =
        ro.tier_levels.empty() ? g.tiers : parse_tier_levels(ro.tier_levels, g.tiers);
    const auto regime = build_regime(rc, ro.base, tiers);

    Report report("regime", g.format);
    add_input_meta(report, ds);
    report.meta("reference_class", std::string(to_string(variables[0])) + " overruns, n = " +
                                       std::to_string(rc.n()) + " (" + f.describe() + ")");
    if (rc.small_sample())
        report.warn("reference class holds only " + std::to_string(rc.n()) +
                    " projects; guidance is a minimum of 20-30");

    TextTable table;
    table.header = {"Tier", "P-level", "Cumulative budget", "Tranche", "Owner"};
    for (const auto& tier : regime.tiers) {
        table.rows.push_back({tier.spec.name, p_level_label(tier.spec.p_level),
                              num(tier.cumulative_budget), num(tier.tranche),
                              tier.spec.owner});
        report.row({{"variable", std::string(to_string(variables[0]))},
                    {"tier", tier.spec.name},
                    {"p_level", tier.spec.p_level},
                    {"cumulative_budget", tier.cumulative_budget},
                    {"tranche", tier.tranche},
                    {"owner", tier.spec.owner}});
    }

    std::string body = table.render();
    body += "\nBase estimate " + num(regime.base_estimate) + "; total funded " +
            num(regime.total_funded) + "\n";

    int exit_code = kOk;
    if (ro.actual) {
        const auto alloc = allocate_outturn(regime, *ro.actual);
        TextTable spend;
        spend.header = {"Tier", "Tranche", "Spent"};
        for (const auto& s : alloc.spends) {
            spend.rows.push_back({s.tier, num(s.tranche), num(s.spent)});
            report.row({{"variable", std::string(to_string(variables[0]))},
                        {"tier", s.tier},
                        {"tranche", s.tranche},
                        {"spent", s.spent}});
        }
        body += "\nOutturn allocation (actual " + num(*ro.actual) + ")\n" + spend.render();
        ordered_json summary{{"variable", std::string(to_string(variables[0]))},
                             {"actual", *ro.actual},
                             {"breach", alloc.breach},
                             {"excess", alloc.excess},
                             {"unspent", alloc.unspent}};
        report.row(std::move(summary));
        if (alloc.breach) {
            report.warn("actual cost exceeds total funding by " + num(alloc.excess));
            body += "BREACH: actual exceeds total funding by " + num(alloc.excess) + "\n";
            exit_code = kBreach;
        } else {
            body += "No breach; unspent contingency " + num(alloc.unspent) + "\n";
        }
    }

    report.text() = std::move(body);
    report.emit(out, err);
    return exit_code;
}

int cmd_trend(const GlobalOptions& g, const std::string& path, const TrendOptions& to,
              std::ostream& out, std::ostream& err) {
    const Dataset raw = load_dataset(g, path);
    const Filter f = to.filters.to_filter();
    const Dataset ds = f.empty() ? raw : filter(raw, f);
    const auto variables = parse_variable_selection(to.variable_sel);
    const int window = to.window.value_or(g.window);
    const double confidence = to.confidence.value_or(g.confidence);

    Report report("trend", g.format);
    add_input_meta(report, ds);
    report.meta("window", std::to_string(window) + " years");
    report.meta("confidence", num(confidence));

    std::string body;
    for (Variable v : variables) {
        const auto obs = extract_observations(ds, v);
        if (obs.empty()) {
            report.warn("no " + std::string(to_string(v)) + " observations");
            continue;
        }
        const auto series = moving_average(obs, window, confidence);
        if (series.points.empty())
            report.warn("no year window holds two or more " + std::string(to_string(v)) +
                        " observations");

        TextTable table;
        table.header = {"Year", "Window mean", "CI low", "CI high", "Window n"};
        std::vector<std::pair<double, double>> mean_pts, lo_pts, hi_pts;
        for (const auto& p : series.points) {
            table.rows.push_back({std::to_string(p.year), pct(p.window_mean), pct(p.ci_low),
                                  pct(p.ci_high), std::to_string(p.window_n)});
            report.row({{"variable", std::string(to_string(v))},
                        {"year", p.year},
                        {"window_mean", p.window_mean},
                        {"ci_low", p.ci_low},
                        {"ci_high", p.ci_high},
                        {"window_n", p.window_n}});
            mean_pts.emplace_back(p.year, p.window_mean);
            lo_pts.emplace_back(p.year, p.ci_low);
            hi_pts.emplace_back(p.year, p.ci_high);
        }
        body += std::string(to_string(v)) + " overrun, " + std::to_string(window) +
                "-year centered window\n" + table.render() + "\n";

        if (!to.plot_dir.empty() && !series.points.empty()) {
            fs::create_directories(to.plot_dir);
            const std::string prefix{to_string(v)};
            std::string curve = "year,window_mean,ci_low,ci_high,window_n\n";
            for (const auto& p : series.points)
                curve += std::to_string(p.year) + "," + num(p.window_mean) + "," +
                         num(p.ci_low) + "," + num(p.ci_high) + "," +
                         std::to_string(p.window_n) + "\n";
            write_file_or_throw(fs::path(to.plot_dir) / (prefix + "_trend.csv"), curve);
            write_file_or_throw(
                fs::path(to.plot_dir) / (prefix + "_trend.svg"),
                plot::svg_line_chart("Moving average of " + prefix + " overrun", "year",
                                     "overrun",
                                     {{"window mean", mean_pts, false},
                                      {"CI low", lo_pts, true},
                                      {"CI high", hi_pts, true}}));
            report.meta("plots", to.plot_dir);
        }
    }
    if (!body.empty() && body.back() == '\n') body.pop_back();
    report.text() = std::move(body);
    report.emit(out, err);
    return kOk;
}

int cmd_error_test(const GlobalOptions& g, const std::string& path, std::ostream& out,
                   std::ostream& err) {
    const Dataset ds = load_dataset(g, path);
    const auto rep = error_explanation_test(ds);

    Report report("error-test", g.format);
    add_input_meta(report, ds);
    for (const auto& note : rep.notes) report.warn(note);

    TextTable table;
    table.header = {"", "Mean", "Wilcoxon test (error centers on zero)",
                    "Frequency of overrun", "Binomial test (overruns vs underruns)"};
    for (const auto& row : rep.rows) {
        const std::string label =
            row.variable == Variable::cost ? "Cost overrun" : "Schedule overrun";
        table.rows.push_back({label, pct(row.mean),
                              p_text(row.signed_rank.p_value) + " " + row.signed_rank.stars,
                              pct_plain(row.freq_overrun),
                              p_text(row.binomial.p_value) + " " + row.binomial.stars});
        report.row({{"variable", std::string(to_string(row.variable))},
                    {"n", row.n},
                    {"mean", row.mean},
                    {"signed_rank_p", row.signed_rank.p_value},
                    {"signed_rank_stars", row.signed_rank.stars},
                    {"signed_rank_method", std::string(to_string(row.signed_rank.method))},
                    {"zeros_dropped", row.signed_rank.zeros_dropped},
                    {"freq_overrun", row.freq_overrun},
                    {"binomial_p", row.binomial.p_value},
                    {"binomial_stars", row.binomial.stars}});
        if (row.signed_rank.method == TestMethod::normal_approx)
            report.warn("normal approximation used for the " +
                        std::string(to_string(row.variable)) + " Wilcoxon test");
        if (row.signed_rank.zeros_dropped > 0)
            report.warn(std::to_string(row.signed_rank.zeros_dropped) + " exact-zero " +
                        std::string(to_string(row.variable)) +
                        " observations dropped from the Wilcoxon test");
    }
    report.text() = table.render();
    report.emit(out, err);
    return kOk;
}

int cmd_synth(const GlobalOptions& g, const SynthOptions& so, std::ostream& out,
              std::ostream& err) {
    SynthSpec spec = so.spec;
    const auto sector = sector_from_string(so.sector);
    if (!sector) throw DomainError("unknown sector '" + so.sector + "'");
    spec.sector = *sector;
    const auto tail = tail_from_string(so.tail);
    if (!tail) throw DomainError("unknown tail '" + so.tail + "' (symmetric|heavy_right)");
    spec.tail = *tail;
    if (so.out_path.empty()) throw DomainError("--out is required");

    const Dataset ds = generate(spec);
    const std::string text = to_csv(ds);
    write_file_or_throw(so.out_path, text);

    Report report("synth", g.format);
    report.meta("out", so.out_path);
    report.row({{"n", ds.size()},
                {"tail", std::string(to_string(spec.tail))},
                {"location", spec.location},
                {"scale", spec.scale},
                {"seed", spec.seed},
                {"path", so.out_path},
                {"checksum", fnv1a64_hex(text)}});
    report.text() = "wrote " + std::to_string(ds.size()) + " records to " + so.out_path +
                    " (tail " + std::string(to_string(spec.tail)) + ", location " +
                    num(spec.location) + ", scale " + num(spec.scale) + ", seed " +
                    std::to_string(spec.seed) + ")\n";

    if (!so.register_id.empty()) {
        if (!g.store_dir)
            throw DomainError("--register needs a dataset store (--store or config)");
        DatasetStore store(*g.store_dir);
        store.register_file(so.register_id, fs::absolute(so.out_path), ds.size());
        report.meta("registered", so.register_id);
    }
    report.emit(out, err);
    return kOk;
}

} // namespace refcast::cli
