#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "betatest/asymptotics.hpp"
#include "betatest/covariance.hpp"
#include "betatest/errors.hpp"

namespace betatest {

namespace detail {

// Quadratic forms u_j' (w1 S_{1j-removed} + w2 S_other)^{-1} u_j for every
// observation j of `data`, where u_j = z_j - mean. Removing observation j
// is a rank-one downdate of the base pencil, so one Cholesky factorization
// plus a Sherman-Morrison correction covers all j.
inline std::vector<double> leave_one_out_quadratic_forms(const Eigen::MatrixXd& data,
                                                         const Eigen::MatrixXd& own_cov,
                                                         const Eigen::MatrixXd& other_cov,
                                                         double w_own, double w_other) {
    const int n = static_cast<int>(data.rows());
    if (n < 3)
        throw DegenerateSampleError(
            "leave-one-out covariance needs at least 3 observations, got " + std::to_string(n));

    // S_{j} = ((n-1) S - (n/(n-1)) u_j u_j') / (n-2)
    const double a = w_own * static_cast<double>(n - 1) / (n - 2);
    const double beta = w_own * static_cast<double>(n) / (static_cast<double>(n - 1) * (n - 2));
    Eigen::MatrixXd base = a * own_cov + w_other * other_cov;
    base = 0.5 * (base + base.transpose()).eval();

    Eigen::LLT<Eigen::MatrixXd> llt(base);
    if (llt.info() != Eigen::Success)
        throw SingularPencilError("leave-one-out pencil is numerically singular");

    const Eigen::RowVectorXd mean = data.colwise().mean();
    std::vector<double> forms(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXd u = (data.row(j) - mean).transpose();
        const double w = u.dot(llt.solve(u));
        const double denom = 1.0 - beta * w;
        if (!(denom > 1e-12))
            throw SingularPencilError("leave-one-out pencil lost positive definiteness at observation " +
                                      std::to_string(j + 1));
        forms[static_cast<std::size_t>(j)] = w / denom;
    }
    return forms;
}

}  // namespace detail

/// Fourth-moment estimators for the two populations from the raw samples.
/// Requires p < n1 + n2 - 1; outputs below the unit-variance lower bound -2
/// are clamped with a warning.
inline KurtosisPair estimate_deltas(const Eigen::MatrixXd& data1, const Eigen::MatrixXd& data2,
                                    std::vector<std::string>* warnings = nullptr) {
    const int n1 = static_cast<int>(data1.rows());
    const int n2 = static_cast<int>(data2.rows());
    const int p = static_cast<int>(data1.cols());
    if (data2.cols() != p) throw DesignError("samples have different dimensions");

    const double denom_n = static_cast<double>(n1) + n2 - 1.0;
    const double y = static_cast<double>(p) / denom_n;
    if (y >= 1.0)
        throw EstimatorUndefinedError("kurtosis estimator is undefined for p >= n1+n2-1 (p=" +
                                      std::to_string(p) + ", n1+n2-1=" +
                                      std::to_string(n1 + n2 - 1) + ")");

    const Eigen::MatrixXd s1 = sample_covariance(data1);
    const Eigen::MatrixXd s2 = sample_covariance(data2);

    const double c11 = (n1 - 1.0) / denom_n;
    const double c12 = n2 / denom_n;
    const double c21 = n1 / denom_n;
    const double c22 = (n2 - 1.0) / denom_n;
    const double center = p / (1.0 - y);
    const double one_minus_y2 = (1.0 - y) * (1.0 - y);

    auto accumulate = [center](const std::vector<double>& forms) {
        double acc = 0.0;
        for (double q : forms) {
            const double dev = q - center;
            acc += dev * dev;
        }
        return acc;
    };

    const auto forms1 = detail::leave_one_out_quadratic_forms(data1, s1, s2, c11, c12);
    const auto forms2 = detail::leave_one_out_quadratic_forms(data2, s2, s1, c22, c21);

    KurtosisPair pair;
    pair.delta1 = one_minus_y2 * accumulate(forms1) / (static_cast<double>(p) * n1) - 2.0 / (1.0 - y);
    pair.delta2 = one_minus_y2 * accumulate(forms2) / (static_cast<double>(p) * n2) - 2.0 / (1.0 - y);
    pair.source = KurtosisPair::Source::Estimated;

    for (double* d : {&pair.delta1, &pair.delta2}) {
        if (*d < -2.0) {
            if (warnings)
                warnings->push_back("estimated excess kurtosis " + std::to_string(*d) +
                                    " is below the unit-variance bound -2; clamped");
            *d = -2.0;
        }
    }
    return pair;
}

}  // namespace betatest
