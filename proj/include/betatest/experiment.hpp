#pragma once

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "betatest/design.hpp"
#include "betatest/models.hpp"
#include "betatest/parallel.hpp"
#include "betatest/pillai.hpp"
#include "betatest/rng.hpp"

namespace betatest {

/// One Monte Carlo size/power experiment: draw both samples `reps` times
/// from the model with a covariance scale separation of (1 + delta/n1)
/// between them, and count rejections. The separation is applied by scaling
/// sample 1's observations by (1 + delta/n1); delta = 0 is the null.
struct ExperimentConfig {
    ModelSpec model;  ///< model.p must equal p; model.seed is set from seed
    Population dist = Population::Normal;
    int n1 = 0;
    int n2 = 0;
    int p = 0;
    double delta = 0.0;
    int reps = 1000;
    double alpha_level = 0.05;
    std::uint64_t seed = 0;
    bool run_t1 = true;
    bool run_t2 = true;
    /// Unset: use the sampled population's true excess kurtosis.
    std::optional<KurtosisPolicy> kurt_policy;
    int threads = 0;  ///< 0 = BETATEST_THREADS env cap or hardware
};

/// Rejection rates for one (config, delta) cell.
struct PowerRow {
    ExperimentConfig config;
    double rate_t1 = std::numeric_limits<double>::quiet_NaN();
    double rate_t2 = std::numeric_limits<double>::quiet_NaN();
    int reps_used = 0;
    double wall_seconds = 0.0;
    std::vector<std::string> warnings;
};

/// Per-replicate outcome; standardized scores and p-values for the
/// statistics that ran.
struct ReplicateOutcome {
    bool ok = false;
    double t1 = std::numeric_limits<double>::quiet_NaN();
    double p1 = std::numeric_limits<double>::quiet_NaN();
    double t2 = std::numeric_limits<double>::quiet_NaN();
    double p2 = std::numeric_limits<double>::quiet_NaN();
    std::string error;
};

inline KurtosisPolicy resolve_experiment_kurtosis(const ExperimentConfig& config) {
    if (config.kurt_policy) return *config.kurt_policy;
    const double d = population_excess_kurtosis(config.dist);
    return KurtosisPolicy::fixed(d, d);
}

/// Runs every replicate of the experiment. Replicate r draws from the
/// substream keyed by (seed, r), so the result vector is bit-identical for
/// any worker count.
inline std::vector<ReplicateOutcome> run_replicates(const ExperimentConfig& config) {
    if (config.reps < 1) throw InputError("experiment needs at least 1 replicate");
    if (config.p != config.model.p)
        throw DesignError("config p and model p disagree");
    TwoSampleDesign::make(config.n1, config.n2, config.p);  // validate bounds up front

    ModelSpec model = config.model;
    model.seed = config.seed;
    const Eigen::MatrixXd sigma = make_sigma(model);
    const Eigen::MatrixXd base_root = sqrt_psd(sigma);
    const Eigen::MatrixXd root1 = (1.0 + config.delta / config.n1) * base_root;
    const Eigen::MatrixXd& root2 = base_root;

    const KurtosisPolicy kurt = resolve_experiment_kurtosis(config);
    WhichTests which = WhichTests::Both;
    if (config.run_t1 && !config.run_t2) which = WhichTests::T1;
    if (!config.run_t1 && config.run_t2) which = WhichTests::T2;
    if (!config.run_t1 && !config.run_t2) throw InputError("experiment selects no statistic");

    std::vector<ReplicateOutcome> outcomes(static_cast<std::size_t>(config.reps));
    parallel_for(
        config.reps,
        [&](int r) {
            auto& out = outcomes[static_cast<std::size_t>(r)];
            try {
                std::mt19937_64 rng = substream_engine(config.seed, static_cast<std::uint64_t>(r));
                const Eigen::MatrixXd data1 = sample_population(config.dist, config.n1, root1, rng);
                const Eigen::MatrixXd data2 = sample_population(config.dist, config.n2, root2, rng);
                const auto reports = run_test(data1, data2, which, kurt);
                for (const auto& rep : reports) {
                    if (rep.statistic == Statistic::T1) {
                        out.t1 = rep.standardized;
                        out.p1 = rep.p_value;
                    } else {
                        out.t2 = rep.standardized;
                        out.p2 = rep.p_value;
                    }
                }
                out.ok = true;
            } catch (const std::exception& e) {
                out.ok = false;
                out.error = e.what();
            }
        },
        config.threads);
    return outcomes;
}

inline PowerRow run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const auto outcomes = run_replicates(config);

    PowerRow row;
    row.config = config;
    int used = 0, rej1 = 0, rej2 = 0, errored = 0;
    std::string first_error;
    for (const auto& out : outcomes) {
        if (!out.ok) {
            ++errored;
            if (first_error.empty()) first_error = out.error;
            continue;
        }
        ++used;
        if (config.run_t1 && out.p1 < config.alpha_level) ++rej1;
        if (config.run_t2 && out.p2 < config.alpha_level) ++rej2;
    }
    row.reps_used = used;
    if (errored > 0)
        row.warnings.push_back(std::to_string(errored) + " of " + std::to_string(config.reps) +
                               " replicates errored and were excluded (first: " + first_error + ")");
    if (used > 0) {
        if (config.run_t1) row.rate_t1 = static_cast<double>(rej1) / used;
        if (config.run_t2) row.rate_t2 = static_cast<double>(rej2) / used;
    } else {
        row.warnings.push_back("no replicate succeeded; rejection rates are undefined");
    }
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

/// Standardized null statistic values for goodness-of-fit studies; errored
/// replicates are skipped.
inline std::vector<double> null_statistics(const ExperimentConfig& config, Statistic which,
                                           std::vector<std::string>* warnings = nullptr) {
    ExperimentConfig null_config = config;
    null_config.delta = 0.0;
    null_config.run_t1 = (which == Statistic::T1);
    null_config.run_t2 = (which == Statistic::T2);
    const auto outcomes = run_replicates(null_config);
    std::vector<double> values;
    values.reserve(outcomes.size());
    int errored = 0;
    for (const auto& out : outcomes) {
        if (!out.ok) {
            ++errored;
            continue;
        }
        values.push_back(which == Statistic::T1 ? out.t1 : out.t2);
    }
    if (warnings && errored > 0)
        warnings->push_back(std::to_string(errored) + " replicates errored and were excluded");
    return values;
}

}  // namespace betatest
