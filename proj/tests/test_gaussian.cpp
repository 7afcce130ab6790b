#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qroc/gaussian.hpp"

using namespace qroc;

namespace {

// Q_s for a thermal pair (geometric spectra): with x = nbar/(nbar+1),
// Q_s = (1-x2)^s (1-x1)^(1-s) / (1 - x2^s x1^(1-s)).
double thermal_qs(double n1, double n2, double s) {
    const double x1 = n1 / (n1 + 1.0), x2 = n2 / (n2 + 1.0);
    return std::pow(1 - x2, s) * std::pow(1 - x1, 1 - s) /
           (1 - std::pow(x2, s) * std::pow(x1, 1 - s));
}

}  // namespace

TEST_CASE("validation") {
    MatrixXd cov(2, 2);
    cov << 1.0, 0.2, 0.1, 1.0;
    CHECK_THROWS_AS(validate_gaussian(VectorXd::Zero(2), cov, 1),
                    AsymmetricCovariance);
    // violates the uncertainty relation
    CHECK_THROWS_AS(
        validate_gaussian(VectorXd::Zero(2), 0.3 * MatrixXd::Identity(2, 2), 1),
        Unphysical);
    CHECK_THROWS_AS(
        validate_gaussian(VectorXd::Zero(3), MatrixXd::Identity(2, 2), 1),
        DimensionMismatch);
}

TEST_CASE("symplectic eigenvalues and zeta") {
    GaussianState t = thermal_state(0.7);
    VectorXd nu = symplectic_eigenvalues(t);
    REQUIRE(nu.size() == 1);
    CHECK(nu(0) == doctest::Approx(1.2).epsilon(1e-12));
    // det(V + i Omega/2) = nu^2 - 1/4 = nbar (nbar+1)
    CHECK(gaussian_zeta(t) == doctest::Approx(std::sqrt(0.7 * 1.7)).epsilon(1e-12));

    GaussianState tm = tmsv_through_thermal_loss(4.0, 0.7, 0.4);
    VectorXd nu2 = symplectic_eigenvalues(tm);
    REQUIRE(nu2.size() == 2);
    CHECK(nu2(0) >= nu2(1));
    CHECK(nu2(1) >= 0.5 - 1e-12);
    // pure TMSV (no loss): both symplectic eigenvalues are 1/2
    GaussianState pure = tmsv_through_thermal_loss(1.5, 1.0, 0.0);
    VectorXd nup = symplectic_eigenvalues(pure);
    CHECK(nup(0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(nup(1) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("Q_s matches the thermal closed form") {
    GaussianState g1 = thermal_state(0.7), g2 = thermal_state(1.9);
    for (double s : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        CHECK(gaussian_q_s(g1, g2, s) ==
              doctest::Approx(thermal_qs(0.7, 1.9, s)).epsilon(1e-12));
    }
}

TEST_CASE("log-derivative matches central differences") {
    GaussianState g1 = tmsv_through_thermal_loss(4.0, 0.7, 0.4);
    GaussianState g2 = tmsv_through_thermal_loss(4.0, 0.3, 0.6);
    const double h = 1e-6;
    for (double s : {0.25, 0.5, 0.75}) {
        const double fd = -(std::log(gaussian_q_s(g1, g2, s + h)) -
                            std::log(gaussian_q_s(g1, g2, s - h))) /
                          (2 * h);
        CHECK(gaussian_q_s_logderiv(g1, g2, s) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("displaced states contribute the quadratic term") {
    VectorXd m1(2), m2(2);
    m1 << 0.3, -0.2;
    m2 << -0.1, 0.5;
    MatrixXd c2(2, 2);
    c2 << 1.4, 0.2, 0.2, 1.1;
    GaussianState d1 = validate_gaussian(m1, 0.9 * MatrixXd::Identity(2, 2), 1);
    GaussianState d2 = validate_gaussian(m2, c2, 1);
    const double h = 1e-6;
    for (double s : {0.35, 0.65}) {
        const double fd = -(std::log(gaussian_q_s(d1, d2, s + h)) -
                            std::log(gaussian_q_s(d1, d2, s - h))) /
                          (2 * h);
        CHECK(gaussian_q_s_logderiv(d1, d2, s) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("pure states are rejected by the Q_s engine") {
    GaussianState vac = thermal_state(0.0);
    GaussianState th = thermal_state(1.0);
    CHECK_THROWS_AS(gaussian_q_s(vac, th, 0.5), SingularGaussianState);
    CHECK_THROWS_AS(gaussian_qs_evaluator(th, vac), SingularGaussianState);
}

TEST_CASE("evaluator endpoints approximate the Stein limits") {
    GaussianState g1 = thermal_state(0.7), g2 = thermal_state(1.9);
    auto q = gaussian_qs_evaluator(g1, g2);
    CHECK(q->value(0.5) == doctest::Approx(thermal_qs(0.7, 1.9, 0.5)).epsilon(1e-12));
    // derivative at the clamped endpoints is finite and has the right signs
    CHECK(q->derivative(0.0) < 0.0);
    CHECK(q->derivative(1.0) > 0.0);
}

TEST_CASE("thermal loss channel covariance") {
    GaussianState g = tmsv_through_thermal_loss(0.5, 0.8, 0.3);
    CHECK(g.cov(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.cov(2, 2) == doctest::Approx(0.8 * 1.0 + 0.2 * 0.8).epsilon(1e-14));
    CHECK(g.cov(0, 2) ==
          doctest::Approx(std::sqrt(0.8) * std::sqrt(0.5 * 1.5)).epsilon(1e-14));
    CHECK(g.cov(1, 3) == doctest::Approx(-g.cov(0, 2)).epsilon(1e-14));
    CHECK_THROWS_AS(tmsv_through_thermal_loss(-0.1, 0.5, 0.0), ParameterOutOfRange);
    CHECK_THROWS_AS(tmsv_through_thermal_loss(0.5, 1.2, 0.0), ParameterOutOfRange);
}

TEST_CASE("Fock conversion: thermal diagonal") {
    FockState f = gaussian_to_fock(thermal_state(0.25), 40);
    CHECK(f.trace_deficit < 1e-12);
    CHECK(f.matrix(0, 0).real() == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(f.matrix(1, 1).real() == doctest::Approx(0.8 * 0.2).epsilon(1e-12));
    CHECK(std::abs(f.matrix(0, 1)) < 1e-14);
}

TEST_CASE("Fock conversion reconstructs mean and covariance") {
    MatrixXd cv(2, 2);
    cv << 1.3, -0.35, -0.35, 0.7;
    VectorXd mu(2);
    mu << 0.4, -0.6;
    GaussianState g = validate_gaussian(mu, cv, 1);
    const int cut = 50, dim = cut + 1;
    FockState f = gaussian_to_fock(g, cut);
    MatrixXcd a = MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    MatrixXcd x = (a + a.adjoint()) / std::sqrt(2.0);
    MatrixXcd p = Complex(0, 1) * (a.adjoint() - a) / std::sqrt(2.0);
    const double mx = (f.matrix * x).trace().real();
    const double mp = (f.matrix * p).trace().real();
    CHECK(mx == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(mp == doctest::Approx(-0.6).epsilon(1e-9));
    auto cov = [&](const MatrixXcd& A, const MatrixXcd& B, double ma, double mb) {
        return 0.5 * (f.matrix * (A * B + B * A)).trace().real() - ma * mb;
    };
    CHECK(cov(x, x, mx, mx) == doctest::Approx(1.3).epsilon(1e-9));
    CHECK(cov(x, p, mx, mp) == doctest::Approx(-0.35).epsilon(1e-8));
    CHECK(cov(p, p, mp, mp) == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("two-mode conversion requires the squeezed-thermal structure") {
    MatrixXd cov = MatrixXd::Identity(4, 4);
    cov(0, 3) = cov(3, 0) = 0.2;  // x1-p2 coupling breaks the form
    GaussianState g = validate_gaussian(VectorXd::Zero(4), cov, 2);
    CHECK_THROWS_AS(gaussian_to_fock(g, 10), UnsupportedInput);
}

TEST_CASE("cutoff gate") {
    CHECK_THROWS_AS(gaussian_to_fock(thermal_state(5.0), 4), CutoffTooSmall);
    FockState f = gaussian_to_fock(thermal_state(5.0), 4, false);
    CHECK(f.trace_deficit > 1e-6);
}

TEST_CASE("truncated fidelity: thermal closed form") {
    // F(th(n1), th(n2)) = 1 / (sqrt((n1+1)(n2+1)) - sqrt(n1 n2))
    GaussianState g1 = thermal_state(0.7), g2 = thermal_state(1.9);
    FidelityEstimate fe = gaussian_fidelity_truncated(g1, g2, 60);
    const double expect = 1.0 / (std::sqrt(1.7 * 2.9) - std::sqrt(0.7 * 1.9));
    CHECK(fe.value == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("truncated fidelity: frozen single-mode oracle") {
    VectorXd m1(2), m2(2);
    m1 << 0.3, -0.2;
    m2 << -0.1, 0.5;
    MatrixXd c2(2, 2);
    c2 << 1.4, 0.2, 0.2, 1.1;
    GaussianState d1 = validate_gaussian(m1, 0.9 * MatrixXd::Identity(2, 2), 1);
    GaussianState d2 = validate_gaussian(m2, c2, 1);
    FidelityEstimate fe = gaussian_fidelity_truncated(d1, d2, 60);
    CHECK(fe.value == doctest::Approx(0.900418840330).epsilon(1e-8));
}

TEST_CASE("truncated fidelity: frozen two-mode channel oracle") {
    // independent oracle: full Fock-space beam-splitter dilation of the
    // thermal loss channel applied to an exact TMSV vector
    GaussianState t1 = tmsv_through_thermal_loss(0.5, 0.8, 0.3);
    GaussianState t2 = tmsv_through_thermal_loss(0.5, 0.4, 0.9);
    FidelityEstimate fe = gaussian_fidelity_truncated(t1, t2, 45);
    CHECK(fe.value == doctest::Approx(0.851771977168).epsilon(1e-6));
    FidelityEstimate self = gaussian_fidelity_truncated(t1, t1, 45);
    CHECK(self.value == doctest::Approx(1.0).epsilon(1e-9));
}
