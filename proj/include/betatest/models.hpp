#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "betatest/errors.hpp"
#include "betatest/rng.hpp"

namespace betatest {

/// Entry distribution of the standardized population (mean 0, variance 1).
enum class Population { Normal, Uniform };

inline const char* to_string(Population d) { return d == Population::Normal ? "normal" : "uniform"; }

/// Exact excess kurtosis of the standardized entries: 0 for the normal law,
/// 9/5 - 3 = -1.2 for Unif(-sqrt(3), sqrt(3)).
inline double population_excess_kurtosis(Population d) {
    return d == Population::Normal ? 0.0 : -1.2;
}

/// Covariance model for the first population; the seed fixes Model 3's
/// random diagonal for the lifetime of an experiment.
struct ModelSpec {
    int model_id = 1;  ///< 1..4
    int p = 0;
    std::uint64_t seed = 0;
};

inline Eigen::MatrixXd make_sigma(const ModelSpec& spec) {
    const int p = spec.p;
    if (p < 1) throw DesignError("model dimension must be positive");
    switch (spec.model_id) {
        case 1:
            return Eigen::MatrixXd::Identity(p, p);
        case 2: {
            Eigen::VectorXd d = Eigen::VectorXd::Ones(p);
            d[0] = static_cast<double>(p) * p;
            return d.asDiagonal();
        }
        case 3: {
            if (p < 5) throw DesignError("block covariance model needs p >= 5");
            // Sigma* : unit diagonal, 0.5 off-diagonal inside consecutive
            // blocks of 5 (last block truncated at p).
            Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(p, p);
            for (int start = 0; start < p; start += 5) {
                const int stop = std::min(start + 5, p);
                for (int i = start; i < stop; ++i)
                    for (int j = start; j < stop; ++j)
                        if (i != j) sigma(i, j) = 0.5;
            }
            std::mt19937_64 rng = substream_engine(spec.seed, kSigmaStream);
            std::uniform_real_distribution<double> unif(0.5, 2.5);
            Eigen::VectorXd droot(p);
            for (int i = 0; i < p; ++i) droot[i] = std::sqrt(unif(rng));
            return droot.asDiagonal() * sigma * droot.asDiagonal();
        }
        case 4: {
            Eigen::MatrixXd sigma = Eigen::MatrixXd::Constant(p, p, 0.5);
            sigma.diagonal().array() = 1.0;
            return sigma;
        }
        default:
            throw DesignError("unknown covariance model id " + std::to_string(spec.model_id));
    }
}

/// Symmetric PSD square root via eigendecomposition.
inline Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& sigma) {
    if (sigma.rows() != sigma.cols()) throw InputError("matrix square root needs a square matrix");
    Eigen::MatrixXd sym = 0.5 * (sigma + sigma.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    if (es.info() != Eigen::Success) throw SingularPencilError("eigendecomposition failed");
    const double norm = std::max(std::fabs(es.eigenvalues().minCoeff()),
                                 std::fabs(es.eigenvalues().maxCoeff()));
    Eigen::VectorXd lambda = es.eigenvalues();
    for (int i = 0; i < lambda.size(); ++i) {
        if (lambda[i] < -1e-10 * norm)
            throw InputError("matrix is not positive semidefinite: eigenvalue " +
                             std::to_string(lambda[i]));
        lambda[i] = std::sqrt(std::max(lambda[i], 0.0));
    }
    Eigen::MatrixXd root =
        es.eigenvectors() * lambda.asDiagonal() * es.eigenvectors().transpose();
    return 0.5 * (root + root.transpose());
}

/// n observations of root * x with iid standardized entries of x.
/// Rows are observations; entries are drawn row-major so the layout of the
/// draw stream is fixed.
inline Eigen::MatrixXd sample_population(Population dist, int n, const Eigen::MatrixXd& root,
                                         std::mt19937_64& rng) {
    if (n < 2) throw DegenerateSampleError("need at least 2 observations");
    const int p = static_cast<int>(root.rows());
    Eigen::MatrixXd x(n, p);
    if (dist == Population::Normal) {
        std::normal_distribution<double> normal(0.0, 1.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < p; ++j) x(i, j) = normal(rng);
    } else {
        const double bound = std::sqrt(3.0);
        std::uniform_real_distribution<double> unif(-bound, bound);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < p; ++j) x(i, j) = unif(rng);
    }
    // row z' = (root x)' = x' root for symmetric root
    if (root.isDiagonal(0.0)) return x * root.diagonal().asDiagonal();
    return x * root;
}

}  // namespace betatest
