#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "betatest/asymptotics.hpp"
#include "betatest/covariance.hpp"
#include "betatest/design.hpp"
#include "betatest/kurtosis.hpp"
#include "betatest/math.hpp"

namespace betatest {

enum class Statistic { T1, T2 };

inline const char* to_string(Statistic s) { return s == Statistic::T1 ? "T1" : "T2"; }

enum class WhichTests { T1, T2, Both };

/// How the excess-kurtosis inputs of the CLT corrections are resolved.
struct KurtosisPolicy {
    enum class Kind { AssumedNormal, Estimate, Fixed };

    Kind kind = Kind::AssumedNormal;
    double delta1 = 0.0;
    double delta2 = 0.0;

    static KurtosisPolicy assumed_normal() { return {}; }
    static KurtosisPolicy estimate() { return {Kind::Estimate, 0.0, 0.0}; }
    static KurtosisPolicy fixed(double d1, double d2) { return {Kind::Fixed, d1, d2}; }
};

struct SpectrumSummary {
    int k0 = 0;
    int k1 = 0;
    double min_retained = std::numeric_limits<double>::quiet_NaN();
    double max_retained = std::numeric_limits<double>::quiet_NaN();
    /// Full sorted spectrum, pinned eigenvalues included. Kept for
    /// transparency: under alternatives with large spikes, stripped boundary
    /// eigenvalues can themselves be informative.
    Eigen::VectorXd all_eigenvalues;
};

/// One standardized test outcome with every ingredient of the standardization.
struct TestReport {
    Statistic statistic = Statistic::T1;
    double raw_value = 0.0;     ///< L or L~
    double limit_term = 0.0;    ///< p * l_n  (resp. p * l~_n)
    double mean_term = 0.0;     ///< mu_n     (resp. mu~_n)
    double sd_term = 0.0;       ///< nu_n     (resp. nu~_n)
    double standardized = 0.0;  ///< (raw - limit - mean) / sd
    double p_value = 1.0;       ///< two-sided, 2 (1 - Phi(|standardized|))
    TwoSampleDesign design;
    KurtosisPair kurtosis;
    SpectrumSummary spectrum;
    std::vector<std::string> warnings;
};

namespace detail {

inline TestReport standardize(Statistic which, double raw, double limit, double mean, double var,
                              const TwoSampleDesign& design, const KurtosisPair& kurt,
                              const SpectrumSummary& summary,
                              const std::vector<std::string>& warnings) {
    TestReport r;
    r.statistic = which;
    r.raw_value = raw;
    r.limit_term = limit;
    r.mean_term = mean;
    r.sd_term = std::sqrt(var);
    r.standardized = (raw - limit - mean) / r.sd_term;
    r.p_value = two_sided_p_value(r.standardized);
    r.design = design;
    r.kurtosis = kurt;
    r.spectrum = summary;
    r.warnings = warnings;
    return r;
}

}  // namespace detail

/// Resolves the kurtosis inputs for a pair of samples under a policy.
/// Estimation may throw EstimatorUndefinedError; callers choose the fallback.
inline KurtosisPair resolve_kurtosis(const KurtosisPolicy& policy, const Eigen::MatrixXd& data1,
                                     const Eigen::MatrixXd& data2,
                                     std::vector<std::string>* warnings = nullptr) {
    switch (policy.kind) {
        case KurtosisPolicy::Kind::AssumedNormal:
            return KurtosisPair{0.0, 0.0, KurtosisPair::Source::AssumedNormal};
        case KurtosisPolicy::Kind::Fixed: {
            KurtosisPair pair{policy.delta1, policy.delta2, KurtosisPair::Source::UserSupplied};
            if (warnings && (pair.delta1 < -2.0 || pair.delta2 < -2.0))
                warnings->push_back(
                    "user-supplied excess kurtosis below -2 violates the fourth-moment bound "
                    "for unit-variance variables");
            return pair;
        }
        case KurtosisPolicy::Kind::Estimate:
            return estimate_deltas(data1, data2, warnings);
    }
    return {};
}

/// End-to-end two-sample covariance equality test. Computes the Beta spectrum
/// once and evaluates the requested statistics against their null CLTs.
inline std::vector<TestReport> run_test(const Eigen::MatrixXd& data1, const Eigen::MatrixXd& data2,
                                        WhichTests which = WhichTests::Both,
                                        const KurtosisPolicy& policy = KurtosisPolicy::assumed_normal()) {
    if (data1.cols() != data2.cols())
        throw DesignError("samples have different dimensions: p1=" + std::to_string(data1.cols()) +
                          ", p2=" + std::to_string(data2.cols()));
    const auto design = TwoSampleDesign::make(static_cast<int>(data1.rows()),
                                              static_cast<int>(data2.rows()),
                                              static_cast<int>(data1.cols()));

    std::vector<std::string> warnings;
    const KurtosisPair kurt = resolve_kurtosis(policy, data1, data2, &warnings);

    const Eigen::MatrixXd s1 = sample_covariance(data1);
    const Eigen::MatrixXd s2 = sample_covariance(data2);
    const BetaSpectrum spec = beta_spectrum(s1, s2, design);
    if (spec.count_mismatch)
        warnings.push_back("boundary eigenvalue counts (" + std::to_string(spec.observed_zeros) +
                           " near 0, " + std::to_string(spec.observed_ones) + " near 1) disagree with " +
                           "the rank formulas (k0=" + std::to_string(spec.k0) + ", k1=" +
                           std::to_string(spec.k1) + "); data may violate the continuous-population " +
                           "assumption. Rank-formula counts were used.");

    SpectrumSummary summary;
    summary.k0 = spec.k0;
    summary.k1 = spec.k1;
    if (spec.retained.size() > 0) {
        summary.min_retained = spec.retained.minCoeff();
        summary.max_retained = spec.retained.maxCoeff();
    }
    summary.all_eigenvalues = spec.all_eigs;

    const double p = static_cast<double>(design.p);
    std::vector<TestReport> reports;
    if (which == WhichTests::T1 || which == WhichTests::Both) {
        reports.push_back(detail::standardize(Statistic::T1, modified_trace(spec),
                                              p * limit_l(design), mean_mu(design, kurt),
                                              var_nu2(design, kurt), design, kurt, summary, warnings));
    }
    if (which == WhichTests::T2 || which == WhichTests::Both) {
        reports.push_back(detail::standardize(Statistic::T2, modified_quadratic(spec, design),
                                              p * limit_l_tilde(design), mean_mu_tilde(design, kurt),
                                              var_nu2_tilde(design, kurt), design, kurt, summary,
                                              warnings));
    }
    return reports;
}

}  // namespace betatest
