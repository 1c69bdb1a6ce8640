#pragma once

#include "render.hpp"

#include "refcast/dataset.hpp"
#include "refcast/regime.hpp"
#include "refcast/synth.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace refcast::cli {

// Settings resolved from the config file (REFCAST_CONFIG or --config),
// then overridden by flags. Flags win.
struct GlobalOptions {
    Format format = Format::text;
    std::optional<std::string> store_dir;
    std::vector<TierSpec> tiers = default_tiers();
    int window = 10;
    double confidence = 0.95;
    PainGainRule pain_gain{0.75, 0.0};
};

// Loads and validates a JSON config file into opts. Throws DomainError on
// invalid settings.
void load_config(const std::string& path, GlobalOptions& opts);

// Variables selected by --variable cost|schedule|both.
std::vector<Variable> parse_variable_selection(const std::string& s);

// "P30,P50,P80" -> tier specs; names/owners taken from the configured
// tiers when the level matches, else the token itself.
std::vector<TierSpec> parse_tier_levels(const std::string& s,
                                        const std::vector<TierSpec>& configured);

struct FilterFlags {
    std::string sector;
    std::string country;
    std::optional<int> from_year;
    std::optional<int> to_year;
    Filter to_filter() const;  // throws DomainError on unknown sector
};

int cmd_validate(const GlobalOptions& g, const std::string& path, std::ostream& out,
                 std::ostream& err);

int cmd_describe(const GlobalOptions& g, const std::string& path,
                 const std::string& variable_sel, const std::string& by, std::ostream& out,
                 std::ostream& err);

int cmd_compare(const GlobalOptions& g, const std::string& path, const std::string& group_col,
                const std::string& baseline, const std::string& variable_sel,
                std::ostream& out, std::ostream& err);

struct ForecastOptions {
    FilterFlags filters;
    std::string variable = "cost";
    std::vector<double> certainties{0.5, 0.8};
    std::optional<double> base;
    std::optional<double> adjust_factor;
    std::string evidence;
    std::string plot_dir;
};

int cmd_forecast(const GlobalOptions& g, const std::string& path, const ForecastOptions& fo,
                 std::ostream& out, std::ostream& err);

struct RegimeOptions {
    FilterFlags filters;
    std::string variable = "cost";
    double base = 0.0;
    std::string tier_levels;  // empty -> configured tiers
    std::optional<double> actual;
};

int cmd_regime(const GlobalOptions& g, const std::string& path, const RegimeOptions& ro,
               std::ostream& out, std::ostream& err);

struct TrendOptions {
    FilterFlags filters;
    std::string variable_sel = "both";
    std::optional<int> window;
    std::optional<double> confidence;
    std::string plot_dir;
};

int cmd_trend(const GlobalOptions& g, const std::string& path, const TrendOptions& to,
              std::ostream& out, std::ostream& err);

int cmd_error_test(const GlobalOptions& g, const std::string& path, std::ostream& out,
                   std::ostream& err);

struct SynthOptions {
    SynthSpec spec;
    std::string sector = "hydro";
    std::string tail = "symmetric";
    std::string out_path;
    std::string register_id;
};

int cmd_synth(const GlobalOptions& g, const SynthOptions& so, std::ostream& out,
              std::ostream& err);

} // namespace refcast::cli
