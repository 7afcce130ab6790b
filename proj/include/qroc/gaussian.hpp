#ifndef QROC_GAUSSIAN_HPP
#define QROC_GAUSSIAN_HPP

#include <memory>

#include "qroc/dv_states.hpp"

namespace qroc {

// Bosonic Gaussian state in xpxp quadrature ordering, vacuum variance 1/2.
struct GaussianState {
    int modes = 0;
    VectorXd mean;  // length 2m
    MatrixXd cov;   // 2m x 2m symmetric, cov + i Omega/2 >= 0
};

// Symplectic form: block diagonal with per-mode blocks [[0,1],[-1,0]].
MatrixXd symplectic_form(int modes);

// Throws AsymmetricCovariance or Unphysical on bad input.
GaussianState validate_gaussian(const VectorXd& mean, const MatrixXd& cov,
                                int modes);

// Symplectic eigenvalues (each >= 1/2 for a physical state).
VectorXd symplectic_eigenvalues(const GaussianState& g);

// Z(G) = sqrt(det(V + i Omega/2)); zero exactly for pure states.
double gaussian_zeta(const GaussianState& g);

// Q_s = Tr[rho2^s rho1^(1-s)] from first and second moments. Requires both
// states strictly full rank (every symplectic eigenvalue > 1/2 + 1e-8).
double gaussian_q_s(const GaussianState& g1, const GaussianState& g2, double s);

// q_s = -d/ds ln Q_s, from the analytic Frechet-derivative expression.
double gaussian_q_s_logderiv(const GaussianState& g1, const GaussianState& g2,
                             double s);

// QsEvaluator backed by the moment formulas. Endpoint s values are taken
// as one-sided limits with step 1e-6.
std::shared_ptr<QsEvaluator> gaussian_qs_evaluator(const GaussianState& g1,
                                                   const GaussianState& g2);

// One mode of a two-mode squeezed vacuum (mean photon number nbar per mode)
// sent through a thermal loss channel of transmissivity tau and thermal
// number nth. Mode A is retained, mode B passes through the channel.
GaussianState tmsv_through_thermal_loss(double nbar, double tau, double nth);

// Single-mode thermal state, cov = (nbar + 1/2) I.
GaussianState thermal_state(double nbar);

struct FockState {
    MatrixXcd matrix;      // truncated density matrix, trace < 1
    double trace_deficit;  // 1 - Tr
};

// Fock-basis truncation at the given per-mode cutoff (basis 0..cutoff).
// One mode: any Gaussian state. Two modes: covariance of the form
// [[a I, c sigma_z], [c sigma_z, b I]] with zero mean (two-mode squeezed
// thermal class, which covers tmsv_through_thermal_loss outputs).
// Throws CutoffTooSmall when the trace deficit exceeds 1e-6.
FockState gaussian_to_fock(const GaussianState& g, int cutoff,
                           bool enforce_deficit = true);

struct FidelityEstimate {
    double value;
    double error_bar;  // sum of the two trace deficits
};

// Fidelity of the Fock-truncated pair, with the truncation error reported.
FidelityEstimate gaussian_fidelity_truncated(const GaussianState& g1,
                                             const GaussianState& g2, int cutoff,
                                             bool enforce_deficit = true);

}  // namespace qroc

#endif
