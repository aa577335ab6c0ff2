#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "betatest/errors.hpp"
#include "betatest/math.hpp"

namespace betatest {

struct GofResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Jarque-Bera statistic from precomputed sample skewness and kurtosis
/// (kurtosis in the non-excess convention, 3 for the normal law). The
/// regressor count is 1 (plain sample, mean estimated), so the prefactor
/// is n/6; p-values come from the chi-squared(2) upper tail.
inline GofResult jb_from_moments(std::size_t n, double skewness, double kurtosis) {
    GofResult r;
    r.statistic = static_cast<double>(n) / 6.0 *
                  (skewness * skewness + 0.25 * (kurtosis - 3.0) * (kurtosis - 3.0));
    r.p_value = chi2_2df_upper_tail(r.statistic);
    return r;
}

inline GofResult jb_statistic(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 8) throw InputError("Jarque-Bera needs at least 8 samples, got " + std::to_string(n));
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(n);
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= static_cast<double>(n);
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    if (!(m2 > 0.0)) throw DegenerateSampleError("Jarque-Bera is undefined for zero sample variance");
    const double skew = m3 / std::pow(m2, 1.5);
    const double kurt = m4 / (m2 * m2);
    return jb_from_moments(n, skew, kurt);
}

/// Survival function of the Kolmogorov distribution,
/// 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2), truncated at 100 terms and
/// clamped to [0,1].
inline double kolmogorov_upper_tail(double t) {
    if (t < 1e-8) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * t * t);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// Exact one-sample sup-distance between the empirical CDF and a reference
/// CDF, with the asymptotic sqrt(n)-scaled Kolmogorov p-value.
template <class Cdf>
GofResult ks_statistic(std::span<const double> xs, Cdf&& cdf) {
    const std::size_t n = xs.size();
    if (n < 1) throw InputError("Kolmogorov-Smirnov needs at least 1 sample");
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());

    double d = 0.0;
    double prev_f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(sorted[i]);
        if (!(f >= 0.0) || !(f <= 1.0) || f + 1e-12 < prev_f)
            throw InputError("reference CDF must be nondecreasing into [0,1]");
        prev_f = f;
        const double hi = static_cast<double>(i + 1) / n - f;
        const double lo = f - static_cast<double>(i) / n;
        d = std::max({d, hi, lo});
    }
    GofResult r;
    r.statistic = d;
    r.p_value = kolmogorov_upper_tail(std::sqrt(static_cast<double>(n)) * d);
    return r;
}

}  // namespace betatest
