#ifndef QROC_LINALG_HPP
#define QROC_LINALG_HPP

#include <Eigen/Dense>
#include <complex>

#include "qroc/errors.hpp"

namespace qroc {

using Complex = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;
using MatrixXd = Eigen::MatrixXd;
using VectorXd = Eigen::VectorXd;
using VectorXcd = Eigen::VectorXcd;

// Relative tolerance for the Hermiticity check (scaled by the largest
// absolute entry).
inline constexpr double kHermTol = 1e-12;

// Eigenvalue-zero threshold: relative cut scaled by the spectral radius,
// with an absolute floor for near-zero operators.
inline constexpr double kZeroTolRel = 1e-10;
inline constexpr double kZeroTolAbs = 1e-14;

bool is_hermitian(const MatrixXcd& m, double tol = kHermTol);

// Throws NonHermitianInput unless m passes the Hermiticity check.
void require_hermitian(const MatrixXcd& m, const char* what = "matrix");

struct EigenSystem {
    VectorXd eigenvalues;   // sorted descending
    MatrixXcd eigenvectors; // orthonormal columns, same order
};

// Full eigendecomposition of a Hermitian matrix.
EigenSystem hermitian_eig(const MatrixXcd& m);

enum class MatrixFn { Sqrt, Power, Log };

// U f(diag) U^dagger for PSD input. Eigenvalues below the relative clamp
// threshold are treated as exactly zero: 0^s = 0 for s > 0, and the log is
// restricted to the support. Throws NotPositiveSemidefinite if an eigenvalue
// falls below -1e-10 times the largest one.
MatrixXcd psd_matrix_function(const MatrixXcd& m, MatrixFn fn, double s = 0.0);

inline MatrixXcd psd_sqrt(const MatrixXcd& m) {
    return psd_matrix_function(m, MatrixFn::Sqrt);
}
inline MatrixXcd psd_power(const MatrixXcd& m, double s) {
    return psd_matrix_function(m, MatrixFn::Power, s);
}
inline MatrixXcd psd_log(const MatrixXcd& m) {
    return psd_matrix_function(m, MatrixFn::Log);
}

// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const MatrixXcd& m);

struct SignedProjectors {
    MatrixXcd plus;
    MatrixXcd minus;
    MatrixXcd zero;
};

// Default zero tolerance for the given spectrum: relative to the spectral
// radius, with an absolute floor when the matrix is near zero.
double default_zero_tol(const VectorXd& eigenvalues);

// Projectors onto the positive, negative, and (numerical) kernel eigenspaces.
// Eigenvalues with |lambda| <= zero_tol go to the kernel projector.
// Degenerate eigenvalues are clustered so that each projector is built from
// a whole eigenvalue cluster. zero_tol <= 0 selects the default rule.
SignedProjectors signed_projectors(const MatrixXcd& m, double zero_tol = 0.0);

inline double real_trace(const MatrixXcd& m) { return m.trace().real(); }

}  // namespace qroc

#endif
