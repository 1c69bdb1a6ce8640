#pragma once

#include "refcast/rcf.hpp"

#include <span>
#include <string>
#include <vector>

namespace refcast {

struct TierSpec {
    std::string name;      // contract / project / funder / ...
    double p_level = 0.0;  // in (0, 1]; strictly increasing across tiers
    std::string owner;     // who holds spending authority
};

// The conventional three tiers: contract to P30, project to P50, funder
// to P80.
std::vector<TierSpec> default_tiers();

struct RegimeTier {
    TierSpec spec;
    double cumulative_budget = 0.0;  // base uplifted to this tier's P-level
    double tranche = 0.0;            // increment over the previous tier
};

struct ContingencyRegime {
    double base_estimate = 0.0;
    std::vector<RegimeTier> tiers;
    double total_funded = 0.0;  // last cumulative budget
};

// Cumulative budget at tier i is the base uplifted by max(0, Q(p_i));
// negative quantiles clamp at the base estimate (no negative contingency).
// Throws DomainError on empty or non-increasing p_levels.
ContingencyRegime build_regime(const ReferenceClass& rc, double base_estimate,
                               std::span<const TierSpec> tiers);

struct TierSpend {
    std::string tier;
    double tranche = 0.0;
    double spent = 0.0;
};

struct OutturnAllocation {
    std::vector<TierSpend> spends;  // tier order
    bool breach = false;            // actual exceeded total funding
    double excess = 0.0;            // amount beyond total_funded
    double unspent = 0.0;           // contingency left over
};

// Absorbs actual cost tier by tier; sets the breach flag with the excess
// when the actual exceeds total funding.
OutturnAllocation allocate_outturn(const ContingencyRegime& regime, double actual_cost);

struct PainGainRule {
    double funder_share_cap = 0.75;      // DfT-style: at most this share of any increase
    double contractor_gain_share = 0.0;  // T5-style: bonus share of unspent amount
};

struct Settlement {
    double funder_pays = 0.0;
    double counterparty_pays = 0.0;
    double contractor_bonus = 0.0;
};

// Splits an overrun funder/counterparty by the cap, pays a gain share on
// an underrun; conserves the overrun exactly.
Settlement pain_gain_settlement(double target, double actual, const PainGainRule& rule);

} // namespace refcast
