#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <random>

#include "betatest/pillai.hpp"
#include "betatest/rng.hpp"

using namespace betatest;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using Eigen::MatrixXd;

namespace {

MatrixXd gaussian_matrix(int n, int p, std::uint64_t seed) {
    std::mt19937_64 rng = substream_engine(seed, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    MatrixXd m(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j) m(i, j) = normal(rng);
    return m;
}

}  // namespace

TEST_CASE("identical samples of equal size give a centered T1") {
    const MatrixXd data = gaussian_matrix(30, 10, 17);
    const auto reports = run_test(data, data, WhichTests::T1);
    REQUIRE(reports.size() == 1);
    const auto& r = reports.front();
    REQUIRE_THAT(r.raw_value, WithinAbs(5.0, 1e-9));  // L = p/2 exactly
    REQUIRE_THAT(r.standardized, WithinAbs(0.0, 1e-8));
    REQUIRE_THAT(r.p_value, WithinAbs(1.0, 1e-8));
    REQUIRE(r.kurtosis.source == KurtosisPair::Source::AssumedNormal);
}

TEST_CASE("both statistics come back in order with a shared spectrum summary") {
    const MatrixXd d1 = gaussian_matrix(40, 25, 23);
    const MatrixXd d2 = gaussian_matrix(55, 25, 24);
    const auto reports = run_test(d1, d2);
    REQUIRE(reports.size() == 2);
    REQUIRE(reports[0].statistic == Statistic::T1);
    REQUIRE(reports[1].statistic == Statistic::T2);
    REQUIRE(reports[0].spectrum.k0 == reports[1].spectrum.k0);
    REQUIRE(reports[0].p_value >= 0.0);
    REQUIRE(reports[0].p_value <= 1.0);

    SECTION("standardization algebra holds as stored") {
        for (const auto& r : reports) {
            const double recon = r.raw_value - r.limit_term - r.mean_term - r.standardized * r.sd_term;
            REQUIRE(std::fabs(recon) <= 1e-12 * std::max(1.0, std::fabs(r.raw_value)));
            REQUIRE_THAT(r.p_value, WithinAbs(two_sided_p_value(r.standardized), 1e-15));
        }
    }
}

TEST_CASE("reports are invariant under a common linear map") {
    const MatrixXd d1 = gaussian_matrix(60, 40, 31);
    const MatrixXd d2 = gaussian_matrix(80, 40, 32);
    const auto base = run_test(d1, d2);

    std::mt19937_64 rng(7);
    std::normal_distribution<double> normal(0.0, 1.0);
    MatrixXd g(40, 40);
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 40; ++j) g(i, j) = normal(rng);
    const MatrixXd q = Eigen::HouseholderQR<MatrixXd>(g).householderQ();
    Eigen::VectorXd diag(40);
    std::uniform_real_distribution<double> unif(0.8, 1.4);
    for (int i = 0; i < 40; ++i) diag[i] = unif(rng);
    const MatrixXd a = q * diag.asDiagonal() * q.transpose();

    const auto mapped = run_test(d1 * a, d2 * a);
    for (std::size_t i = 0; i < base.size(); ++i) {
        REQUIRE_THAT(mapped[i].standardized, WithinRel(base[i].standardized, 1e-8));
        REQUIRE_THAT(mapped[i].p_value, WithinRel(base[i].p_value, 1e-8));
        REQUIRE_THAT(mapped[i].raw_value, WithinRel(base[i].raw_value, 1e-8));
    }
}

TEST_CASE("kurtosis policies flow into the reports") {
    const MatrixXd d1 = gaussian_matrix(60, 20, 41);
    const MatrixXd d2 = gaussian_matrix(70, 20, 42);

    SECTION("fixed deltas") {
        const auto reports = run_test(d1, d2, WhichTests::T1, KurtosisPolicy::fixed(-1.2, -1.2));
        REQUIRE(reports[0].kurtosis.source == KurtosisPair::Source::UserSupplied);
        REQUIRE_THAT(reports[0].kurtosis.delta1, WithinAbs(-1.2, 1e-15));
    }
    SECTION("estimation") {
        const auto reports = run_test(d1, d2, WhichTests::T1, KurtosisPolicy::estimate());
        REQUIRE(reports[0].kurtosis.source == KurtosisPair::Source::Estimated);
        REQUIRE(reports[0].kurtosis.delta1 >= -2.0);
    }
    SECTION("estimation is refused at degenerate margins") {
        // p = 20 = n1 + n2 - 2: every leave-one-out pencil is rank deficient,
        // and the boundary design itself has a collapsed effective support
        const MatrixXd w1 = gaussian_matrix(10, 20, 43);
        const MatrixXd w2 = gaussian_matrix(12, 20, 44);
        REQUIRE_THROWS_AS(run_test(w1, w2, WhichTests::T1, KurtosisPolicy::estimate()),
                          SingularPencilError);
        REQUIRE_THROWS_AS(run_test(w1, w2, WhichTests::T1), DegenerateDesignError);
        // one dimension down everything is defined again
        const MatrixXd v1 = gaussian_matrix(10, 18, 45);
        const MatrixXd v2 = gaussian_matrix(12, 18, 46);
        REQUIRE_NOTHROW(run_test(v1, v2, WhichTests::T1));
    }
    SECTION("suspicious fixed deltas are flagged, invalid variance throws") {
        const auto reports = run_test(d1, d2, WhichTests::T1, KurtosisPolicy::fixed(-2.5, 0.0));
        REQUIRE_FALSE(reports[0].warnings.empty());
        REQUIRE_THROWS_AS(run_test(d1, d2, WhichTests::T1, KurtosisPolicy::fixed(-50.0, -50.0)),
                          InvalidKurtosisError);
    }
}

TEST_CASE("mismatched dimensions are rejected") {
    const MatrixXd d1 = gaussian_matrix(30, 10, 51);
    const MatrixXd d2 = gaussian_matrix(30, 11, 52);
    REQUIRE_THROWS_AS(run_test(d1, d2), DesignError);
}

TEST_CASE("degenerate data is reported, not hidden") {
    MatrixXd d1(12, 8);
    const MatrixXd rows = gaussian_matrix(3, 8, 53);
    for (int i = 0; i < 12; ++i) d1.row(i) = rows.row(i % 3);
    const MatrixXd d2 = gaussian_matrix(25, 8, 54);
    const auto reports = run_test(d1, d2, WhichTests::T1);
    REQUIRE_FALSE(reports[0].warnings.empty());
    REQUIRE(reports[0].warnings.front().find("rank formulas") != std::string::npos);
}
