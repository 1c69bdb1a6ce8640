#pragma once

#include "refcast/dataset.hpp"

#include <cstdint>
#include <string>

namespace refcast {

enum class Tail { symmetric, heavy_right };

std::string_view to_string(Tail t);
std::optional<Tail> tail_from_string(std::string_view s);

// Seedable generator spec. Identical spec, identical dataset, bit for bit.
struct SynthSpec {
    std::size_t n = 0;
    double location = 0.0;
    double scale = 1.0;  // > 0 required; 0 allowed for degenerate fixtures
    Tail tail = Tail::symmetric;
    std::uint64_t seed = 0;
    Sector sector = Sector::hydro;
    std::string country = "ZZ";
};

// n records with est_cost = 100 and act_cost = 100 * (1 + v):
//   symmetric:   v = location + scale * u,  u uniform on [-1, 1]
//   heavy_right: v = exp(location + scale * z) - 1,  z standard normal
//                via the AS 241 inverse-CDF transform
// Record i draws from its own counter-based substream, so v_i depends only
// on (seed, i); candidates with v <= -1 are resampled within the
// substream. Decision years cycle 1960..2009.
Dataset generate(const SynthSpec& spec);

} // namespace refcast
