#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fwm/error.hpp"

namespace fwm {

/// lo, lo + step, ... up to hi inclusive; points are lo + i * step, never accumulated.
inline std::vector<double> linear_grid(double lo, double hi, double step) {
    if (!(lo < hi) || !(step > 0.0) || !std::isfinite(hi - lo)) throw DomainError("grid needs lo < hi and step > 0");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = lo + static_cast<double>(i) * step;
    return out;
}

}  // namespace fwm
