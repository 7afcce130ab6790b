#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qroc/linalg.hpp"

using namespace qroc;

TEST_CASE("hermiticity check") {
    MatrixXcd m(2, 2);
    m << 1.0, Complex(0.0, 1.0), Complex(0.0, -1.0), 2.0;
    CHECK(is_hermitian(m));
    m(0, 1) = Complex(0.0, 1.0 + 1e-6);
    CHECK(!is_hermitian(m));
    CHECK_THROWS_AS(require_hermitian(m), NonHermitianInput);
}

TEST_CASE("hermitian_eig sorts descending") {
    MatrixXcd m = MatrixXcd::Zero(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = 3.0;
    m(2, 2) = -2.0;
    EigenSystem es = hermitian_eig(m);
    CHECK(es.eigenvalues(0) == doctest::Approx(3.0));
    CHECK(es.eigenvalues(1) == doctest::Approx(1.0));
    CHECK(es.eigenvalues(2) == doctest::Approx(-2.0));
}

TEST_CASE("psd matrix functions") {
    MatrixXcd m(2, 2);
    m << 2.0, 1.0, 1.0, 2.0;  // eigenvalues 3 and 1
    MatrixXcd r = psd_sqrt(m);
    CHECK((r * r - m).cwiseAbs().maxCoeff() < 1e-12);
    MatrixXcd p = psd_power(m, 0.25);
    CHECK((p * p * p * p - m).cwiseAbs().maxCoeff() < 1e-11);

    // support convention: 0^s = 0, log restricted to the support
    MatrixXcd sing = MatrixXcd::Zero(2, 2);
    sing(0, 0) = 4.0;
    CHECK(psd_power(sing, 0.5)(1, 1).real() == doctest::Approx(0.0));
    CHECK(psd_log(sing)(0, 0).real() == doctest::Approx(std::log(4.0)));
    CHECK(psd_log(sing)(1, 1).real() == doctest::Approx(0.0));

    MatrixXcd neg = MatrixXcd::Zero(2, 2);
    neg(0, 0) = 1.0;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(psd_sqrt(neg), NotPositiveSemidefinite);
}

TEST_CASE("trace norm") {
    MatrixXcd m = MatrixXcd::Zero(2, 2);
    m(0, 0) = 0.1;
    m(1, 1) = -0.1;
    CHECK(trace_norm(m) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("signed projectors split the space") {
    MatrixXcd m = MatrixXcd::Zero(3, 3);
    m(0, 0) = 0.5;
    m(1, 1) = -0.25;
    m(2, 2) = 1e-16;  // numerically zero
    SignedProjectors sp = signed_projectors(m);
    CHECK(real_trace(sp.plus) == doctest::Approx(1.0));
    CHECK(real_trace(sp.minus) == doctest::Approx(1.0));
    CHECK(real_trace(sp.zero) == doctest::Approx(1.0));
    MatrixXcd sum = sp.plus + sp.minus + sp.zero;
    CHECK((sum - MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}
