#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qroc/exact_roc.hpp"

using namespace qroc;

namespace {

DensityMatrix diag_state(std::initializer_list<double> vals) {
    MatrixXcd m = MatrixXcd::Zero(static_cast<Eigen::Index>(vals.size()),
                                  static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (double v : vals) m(i, i) = v, ++i;
    return validate_density(m);
}

DensityMatrix qubit1() { return diag_state({0.8, 0.2}); }
DensityMatrix qubit2() { return diag_state({0.6, 0.4}); }

DensityMatrix qutrit1() { return diag_state({0.6, 0.2, 0.2}); }

DensityMatrix qutrit2() {
    MatrixXcd m(3, 3);
    m << 0.6, 0.1, 0.1, 0.1, 0.2, 0.1, 0.1, 0.1, 0.2;
    return validate_density(m);
}

}  // namespace

TEST_CASE("weighted trace norm") {
    CHECK(weighted_trace_norm(qubit1(), qubit2(), 0.5) ==
          doctest::Approx(0.2).epsilon(1e-13));
    // p = 0 and p = 1 give plain state trace norms: 1
    CHECK(weighted_trace_norm(qubit1(), qubit2(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("exact errors satisfy the optimality relation") {
    for (double p : {0.2, 0.35, 0.5, 0.8}) {
        const double t = weighted_trace_norm(qubit1(), qubit2(), p);
        ErrorPair e = exact_errors(qubit1(), qubit2(), p, 0.5);
        CHECK(p * e.alpha + (1 - p) * e.beta ==
              doctest::Approx((1 - t) / 2).epsilon(1e-12));
    }
}

TEST_CASE("kernel points of the commuting qubit pair") {
    // eigenvalue (1-p)q_i - p p_i crosses zero at p = 3/7 and p = 2/3
    std::vector<double> kp = locate_kernel_points(qubit1(), qubit2());
    REQUIRE(kp.size() == 2);
    CHECK(kp[0] == doctest::Approx(3.0 / 7.0).epsilon(1e-9));
    CHECK(kp[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("kernel points of the qutrit pair") {
    // frozen from a 10^5-point determinant sign scan + root polish
    std::vector<double> kp = locate_kernel_points(qutrit1(), qutrit2());
    REQUIRE(kp.size() == 3);
    CHECK(kp[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(kp[1] == doctest::Approx(0.435438575059689).epsilon(1e-9));
    CHECK(kp[2] == doctest::Approx(0.633526942181690).epsilon(1e-9));
}

TEST_CASE("common null space is not a kernel point") {
    DensityMatrix a = diag_state({0.8, 0.2, 0.0});
    DensityMatrix b = diag_state({0.6, 0.4, 0.0});
    std::vector<double> kp = locate_kernel_points(a, b);
    REQUIRE(kp.size() == 2);
    CHECK(kp[0] == doctest::Approx(3.0 / 7.0).epsilon(1e-9));
    CHECK(kp[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("qubit ROC is the piecewise-linear hull through (0.6, 0.2)") {
    // vertices (0,1), (3/5,1/5), (1,0); interior points interpolate linearly
    CHECK(exact_alpha_at_beta(qubit1(), qubit2(), 0.0) ==
          doctest::Approx(1.0).epsilon(1e-10));
    CHECK(exact_alpha_at_beta(qubit1(), qubit2(), 0.3) ==
          doctest::Approx(0.6).epsilon(1e-10));
    CHECK(exact_alpha_at_beta(qubit1(), qubit2(), 0.6) ==
          doctest::Approx(0.2).epsilon(1e-10));
    CHECK(exact_alpha_at_beta(qubit1(), qubit2(), 0.8) ==
          doctest::Approx(0.1).epsilon(1e-10));
    CHECK(exact_alpha_at_beta(qubit1(), qubit2(), 1.0) ==
          doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("qutrit ROC values (dense eigendecomposition oracle)") {
    struct Row {
        double beta, alpha;
    };
    // frozen from a 2*10^6-point positive-eigenspace scan
    const Row rows[] = {{0.05, 0.900000000000}, {0.10, 0.800000000000},
                        {0.20, 0.670346483459}, {0.30, 0.540692966918},
                        {0.40, 0.411039450378}, {0.50, 0.302191664718},
                        {0.60, 0.231385933837}, {0.70, 0.173539450378},
                        {0.80, 0.115692966918}, {0.90, 0.057846483459}};
    for (const Row& r : rows) {
        CHECK(exact_alpha_at_beta(qutrit1(), qutrit2(), r.beta) ==
              doctest::Approx(r.alpha).epsilon(1e-9));
    }
}

TEST_CASE("identical states give the diagonal") {
    for (double beta : {0.0, 0.25, 0.5, 0.9}) {
        CHECK(exact_alpha_at_beta(qubit1(), qubit1(), beta) ==
              doctest::Approx(1.0 - beta).epsilon(1e-9));
    }
}

TEST_CASE("curve emission covers the kernel segments and is sorted") {
    ROCCurve c = roc_curve_exact(qubit1(), qubit2());
    REQUIRE(!c.points.empty());
    for (size_t i = 1; i < c.points.size(); ++i) {
        CHECK(c.points[i].beta >= c.points[i - 1].beta - 1e-15);
    }
    int kernel_pts = 0;
    bool has_vertex = false;
    for (const ROCPoint& pt : c.points) {
        if (pt.kind == PointKind::KernelSegment) ++kernel_pts;
        if (std::abs(pt.beta - 0.6) < 1e-9 && std::abs(pt.alpha - 0.2) < 1e-9) {
            has_vertex = true;
        }
    }
    CHECK(kernel_pts == 4);  // two kernel points, two endpoints each
    CHECK(has_vertex);
    // every emitted point lies on the hull through the three vertices
    for (const ROCPoint& pt : c.points) {
        const double hull = pt.beta <= 0.6 ? 1.0 - (0.8 / 0.6) * pt.beta
                                           : 0.2 - 0.5 * (pt.beta - 0.6);
        CHECK(pt.alpha == doctest::Approx(hull).epsilon(1e-9));
    }
}

TEST_CASE("curve is convex for the qutrit pair") {
    ROCCurve c = roc_curve_exact(qutrit1(), qutrit2());
    // slopes must be non-decreasing along increasing beta
    double prev_slope = -1e300;
    for (size_t i = 1; i < c.points.size(); ++i) {
        const double db = c.points[i].beta - c.points[i - 1].beta;
        if (db < 1e-12) continue;
        const double slope = (c.points[i].alpha - c.points[i - 1].alpha) / db;
        CHECK(slope >= prev_slope - 1e-7);
        prev_slope = slope;
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(exact_errors(qubit1(), qubit2(), -0.1, 0.5),
                    ParameterOutOfRange);
    CHECK_THROWS_AS(exact_errors(qubit1(), qubit2(), 0.5, 1.5),
                    ParameterOutOfRange);
}
