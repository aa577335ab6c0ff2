#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <string>

#include "betatest/design.hpp"
#include "betatest/errors.hpp"

namespace betatest {

namespace detail {
inline constexpr double kEigClampEps = 1e-10;   // solver round-off allowance outside [0,1]
inline constexpr double kBoundaryTol = 1e-8;    // "numerically 0 / 1" classification
}  // namespace detail

inline void require_finite(const Eigen::MatrixXd& m, const char* what) {
    if (!m.allFinite()) throw InputError(std::string(what) + " contains non-finite entries");
}

/// Centered sample covariance with divisor n-1; rows are observations.
inline Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& data) {
    const auto n = data.rows();
    const auto p = data.cols();
    if (n < 2)
        throw DegenerateSampleError("sample covariance needs at least 2 observations, got " +
                                    std::to_string(n));
    require_finite(data, "data matrix");

    Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(p, p);
    s.selfadjointView<Eigen::Lower>().rankUpdate(centered.adjoint(), 1.0 / static_cast<double>(n - 1));
    return s.selfadjointView<Eigen::Lower>();
}

/// Eigenvalue layout of the Beta matrix B = S1 (S1 + (n2/n1) S2)^{-1}.
///
/// The k0 = max(0, p-(n1-1)) smallest eigenvalues are pinned at 0 and the
/// k1 = max(0, p-(n2-1)) largest at 1 by rank arithmetic whenever the data
/// come from continuous populations; the remaining ones are stochastic.
struct BetaSpectrum {
    Eigen::VectorXd all_eigs;      ///< all p eigenvalues, ascending, clamped to [0,1]
    Eigen::VectorXd retained;      ///< all_eigs with the k0 smallest and k1 largest removed
    int k0 = 0;
    int k1 = 0;
    int observed_zeros = 0;        ///< eigenvalues below 1e-8
    int observed_ones = 0;         ///< eigenvalues above 1 - 1e-8
    bool count_mismatch = false;   ///< observed boundary counts disagree with k0/k1
};

/// Spectrum of the Beta matrix through the symmetric generalized problem
/// S1 v = lambda (S1 + w S2) v with w = (n2-1)/(n1-1), reduced with a
/// Cholesky factor of the pencil so every eigenvalue comes out real. The
/// weight balances the two covariance estimates by their effective degrees
/// of freedom; mean-centering costs each sample one observation.
inline BetaSpectrum beta_spectrum(const Eigen::MatrixXd& s1, const Eigen::MatrixXd& s2,
                                  const TwoSampleDesign& design) {
    const int p = design.p;
    if (s1.rows() != p || s1.cols() != p || s2.rows() != p || s2.cols() != p)
        throw DesignError("covariance dimensions do not match design p=" + std::to_string(p));
    require_finite(s1, "S1");
    require_finite(s2, "S2");

    Eigen::MatrixXd m = s1 + design.alpha_eff * s2;
    m = 0.5 * (m + m.transpose()).eval();

    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success || llt.rcond() < static_cast<double>(p) * 1e-12)
        throw SingularPencilError(
            "pencil S1 + (n2/n1) S2 is numerically singular (p=" + std::to_string(p) +
            ", n1+n2-2=" + std::to_string(design.n1 + design.n2 - 2) +
            "); degenerate data or dimension bound violated");

    // C = L^{-1} S1 L^{-T} shares the pencil's eigenvalues and is symmetric.
    Eigen::MatrixXd c = llt.matrixL().solve(s1);
    c = llt.matrixL().solve(c.transpose()).eval();
    c = 0.5 * (c + c.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw SingularPencilError("symmetric eigensolver failed to converge");

    BetaSpectrum spec;
    spec.all_eigs = es.eigenvalues();
    for (int i = 0; i < p; ++i) {
        double lam = spec.all_eigs[i];
        if (lam < -detail::kEigClampEps || lam > 1.0 + detail::kEigClampEps)
            throw SingularPencilError("Beta eigenvalue " + std::to_string(lam) +
                                      " escapes [0,1] beyond round-off; pencil is ill-conditioned");
        spec.all_eigs[i] = std::clamp(lam, 0.0, 1.0);
    }

    spec.k0 = std::max(0, p - (design.n1 - 1));
    spec.k1 = std::max(0, p - (design.n2 - 1));
    spec.retained = spec.all_eigs.segment(spec.k0, p - spec.k0 - spec.k1);

    spec.observed_zeros =
        static_cast<int>((spec.all_eigs.array() < detail::kBoundaryTol).count());
    spec.observed_ones =
        static_cast<int>((spec.all_eigs.array() > 1.0 - detail::kBoundaryTol).count());
    spec.count_mismatch = (spec.observed_zeros != spec.k0) || (spec.observed_ones != spec.k1);
    return spec;
}

/// Sum of the stochastic eigenvalues (trace of B with the pinned 0/1
/// eigenvalues removed).
inline double modified_trace(const BetaSpectrum& spec) {
    return spec.retained.sum();
}

/// Weighted squared deviation of each stochastic eigenvalue pair
/// (lambda, 1-lambda) from the null center (c1, c2):
///   sum over retained lambda of c1 (lambda/c1 - 1)^2 + c2 ((1-lambda)/c2 - 1)^2,
/// with the effective-count centers c_l = (n_l-1)/(n1+n2-2) where the null
/// spectrum actually concentrates.
inline double modified_quadratic(const BetaSpectrum& spec, const TwoSampleDesign& design) {
    const double c1 = design.c1_eff;
    const double c2 = design.c2_eff;
    double total = 0.0;
    for (Eigen::Index i = 0; i < spec.retained.size(); ++i) {
        const double lam = spec.retained[i];
        const double a = lam / c1 - 1.0;
        const double b = (1.0 - lam) / c2 - 1.0;
        total += c1 * a * a + c2 * b * b;
    }
    return total;
}

}  // namespace betatest
