#pragma once

#include <cmath>

namespace betatest {

/// Standard normal CDF.
inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

/// Two-sided normal p-value, 2 * (1 - Phi(|t|)).
inline double two_sided_p_value(double t) {
    return std::erfc(std::fabs(t) / std::sqrt(2.0));
}

/// Upper tail of the chi-squared distribution with 2 degrees of freedom.
inline double chi2_2df_upper_tail(double x) {
    if (x <= 0.0) return 1.0;
    return std::exp(-0.5 * x);
}

}  // namespace betatest
