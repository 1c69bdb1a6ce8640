#include "refcast/regime.hpp"

#include "refcast/errors.hpp"

#include <algorithm>
#include <cmath>

namespace refcast {

std::vector<TierSpec> default_tiers() {
    return {
        {"contract", 0.30, "contract manager"},
        {"project", 0.50, "project manager"},
        {"funder", 0.80, "project funder"},
    };
}

ContingencyRegime build_regime(const ReferenceClass& rc, double base_estimate,
                               std::span<const TierSpec> tiers) {
    if (tiers.empty()) throw DomainError("build_regime: no tiers given");
    if (!(base_estimate > 0.0)) throw DomainError("build_regime: base estimate must be positive");
    for (std::size_t i = 0; i < tiers.size(); ++i) {
        if (!(tiers[i].p_level > 0.0 && tiers[i].p_level <= 1.0))
            throw DomainError("build_regime: tier '" + tiers[i].name +
                              "' p_level outside (0, 1]");
        if (i > 0 && !(tiers[i].p_level > tiers[i - 1].p_level))
            throw DomainError("build_regime: tier p_levels must be strictly increasing");
    }

    ContingencyRegime regime;
    regime.base_estimate = base_estimate;
    double prev = base_estimate;
    for (const TierSpec& spec : tiers) {
        const double q = uplift(rc, spec.p_level).uplift;
        const double cumulative = apply_uplift(base_estimate, std::max(0.0, q));
        regime.tiers.push_back({spec, cumulative, cumulative - prev});
        prev = cumulative;
    }
    regime.total_funded = prev;
    return regime;
}

OutturnAllocation allocate_outturn(const ContingencyRegime& regime, double actual_cost) {
    if (!(actual_cost > 0.0)) throw DomainError("allocate_outturn: actual cost must be positive");

    OutturnAllocation alloc;
    double remaining = std::max(0.0, actual_cost - regime.base_estimate);
    for (const RegimeTier& tier : regime.tiers) {
        const double spent = std::min(remaining, tier.tranche);
        alloc.spends.push_back({tier.spec.name, tier.tranche, spent});
        remaining -= spent;
    }
    if (actual_cost > regime.total_funded) {
        alloc.breach = true;
        alloc.excess = actual_cost - regime.total_funded;
    } else {
        alloc.unspent = regime.total_funded - std::max(actual_cost, regime.base_estimate);
    }
    return alloc;
}

Settlement pain_gain_settlement(double target, double actual, const PainGainRule& rule) {
    if (!(target > 0.0) || !(actual > 0.0))
        throw DomainError("pain_gain_settlement: target and actual must be positive");
    if (rule.funder_share_cap < 0.0 || rule.funder_share_cap > 1.0 ||
        rule.contractor_gain_share < 0.0 || rule.contractor_gain_share > 1.0)
        throw DomainError("pain_gain_settlement: shares must lie in [0, 1]");

    Settlement s;
    if (actual > target) {
        const double overrun = actual - target;
        s.funder_pays = rule.funder_share_cap * overrun;
        s.counterparty_pays = overrun - s.funder_pays;
    } else if (actual < target) {
        s.contractor_bonus = rule.contractor_gain_share * (target - actual);
    }
    return s;
}

} // namespace refcast
