#pragma once

#include <span>

namespace ilbench {

/// Kahan compensated sum; keeps probability-vector validation accurate for
/// long uniform rows.
inline double kahan_sum(std::span<const double> xs) {
    double sum = 0.0, comp = 0.0;
    for (const double x : xs) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

} // namespace ilbench
