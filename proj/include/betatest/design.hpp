#pragma once

#include <cmath>
#include <string>

#include "betatest/errors.hpp"

namespace betatest {

/// Sample-size geometry of a two-sample covariance comparison: (n1, n2, p)
/// plus every derived ratio that enters the asymptotic formulas.
///
/// Mean-centering consumes one degree of freedom per sample, so each sample
/// covariance carries n_l - 1 effective observations. All theoretical
/// quantities (pencil weight, quadratic centers, CLT constants) are built on
/// the effective counts; the raw ratios are kept alongside for reporting.
struct TwoSampleDesign {
    int n1 = 0;
    int n2 = 0;
    int p = 0;
    double y1n = 0.0;     ///< p / n1
    double y2n = 0.0;     ///< p / n2
    double hn = 0.0;      ///< sqrt(y1n + y2n - y1n * y2n)
    double c1 = 0.0;      ///< n1 / (n1 + n2)
    double c2 = 0.0;      ///< n2 / (n1 + n2)
    double alpha_n = 0.0; ///< n2 / n1

    double y1_eff = 0.0;    ///< p / (n1 - 1)
    double y2_eff = 0.0;    ///< p / (n2 - 1)
    double h_eff = 0.0;     ///< sqrt(y1_eff + y2_eff - y1_eff * y2_eff)
    double c1_eff = 0.0;    ///< (n1 - 1) / (n1 + n2 - 2)
    double c2_eff = 0.0;    ///< (n2 - 1) / (n1 + n2 - 2)
    double alpha_eff = 0.0; ///< (n2 - 1) / (n1 - 1), the pencil weight

    static TwoSampleDesign make(int n1, int n2, int p);
};

inline TwoSampleDesign TwoSampleDesign::make(int n1, int n2, int p) {
    if (n1 < 2 || n2 < 2)
        throw DegenerateSampleError("two-sample design needs n1 >= 2 and n2 >= 2, got n1=" +
                                    std::to_string(n1) + ", n2=" + std::to_string(n2));
    if (p < 1) throw DesignError("dimension p must be positive, got p=" + std::to_string(p));
    if (p > n1 + n2 - 2)
        throw DesignError("p=" + std::to_string(p) + " exceeds n1+n2-2=" + std::to_string(n1 + n2 - 2) +
                          "; S1 + (n2/n1) S2 is singular almost surely");

    TwoSampleDesign d;
    d.n1 = n1;
    d.n2 = n2;
    d.p = p;
    d.y1n = static_cast<double>(p) / n1;
    d.y2n = static_cast<double>(p) / n2;
    // h^2 = p (n1 + n2 - p) / (n1 n2): strictly positive whenever p < n1 + n2.
    d.hn = std::sqrt(d.y1n + d.y2n - d.y1n * d.y2n);
    d.c1 = static_cast<double>(n1) / (n1 + n2);
    d.c2 = static_cast<double>(n2) / (n1 + n2);
    d.alpha_n = static_cast<double>(n2) / n1;

    d.y1_eff = static_cast<double>(p) / (n1 - 1);
    d.y2_eff = static_cast<double>(p) / (n2 - 1);
    d.h_eff = std::sqrt(d.y1_eff + d.y2_eff - d.y1_eff * d.y2_eff);
    d.c1_eff = static_cast<double>(n1 - 1) / (n1 + n2 - 2);
    d.c2_eff = static_cast<double>(n2 - 1) / (n1 + n2 - 2);
    d.alpha_eff = static_cast<double>(n2 - 1) / (n1 - 1);
    return d;
}

}  // namespace betatest
