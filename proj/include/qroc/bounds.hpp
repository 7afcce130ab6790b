#ifndef QROC_BOUNDS_HPP
#define QROC_BOUNDS_HPP

#include <vector>

#include "qroc/exact_roc.hpp"

namespace qroc {

// Fidelity-based lower bound, parametric in p. Both errors are exact for
// pure pairs. Throws DegenerateParameter when 1-4p(1-p)F^2 vanishes
// ((F,p) = (1,1/2)).
ErrorPair fidelity_lb_point(double f, double p);

// Eliminated-p form of the fidelity lower bound: alpha as a function of
// beta, clamped to 0 past the axis crossing at beta = F^2.
double fidelity_lb_alpha(double f, double beta);

// Piecewise-tightened fidelity upper bound with knots at F^2/2 and 1/2.
double fidelity_ub_alpha(double f, double beta);

// Constant-s Chernoff-family upper bound (CAQCB), parametric in p. The raw
// curve may exceed 1 near the endpoints; callers clamp via caqcb_alpha.
ErrorPair caqcb_point(double q_s0, double s0, double p);

// Piecewise CAQCB with knots at s0*Q^(1/s0) and s0.
double caqcb_alpha(double q_s0, double s0, double beta);

// Optimal asymmetric QCB: the p-optimized member of the Q_s family.
// Physical ([0,1]) for every p without piecewise modification.
ErrorPair oaqcb_point(const QsEvaluator& q, double p);

// Binary entropy in bits, 0 log 0 = 0.
double binary_entropy(double eps);

// Hypothesis-testing-relative-entropy lower bounds. Relative entropies are
// taken in bits; an infinite entropy yields the trivial bound 0.
double qre_lb_alpha(double s21_bits, double beta);
double qre_lb_beta(double s12_bits, double alpha);

// Uniform curve emission over a beta or p grid.
ROCCurve fidelity_lb_curve(double f, const std::vector<double>& beta_grid);
ROCCurve fidelity_ub_curve(double f, const std::vector<double>& beta_grid);
ROCCurve caqcb_curve(double q_s0, double s0, const std::vector<double>& beta_grid);
ROCCurve oaqcb_curve(const QsEvaluator& q, const std::vector<double>& p_grid);
ROCCurve qre_lb_alpha_curve(double s21_bits, const std::vector<double>& beta_grid);
ROCCurve qre_lb_beta_curve(double s12_bits, const std::vector<double>& alpha_grid);

// Uniform grid over [0,1] with n points (inclusive endpoints).
std::vector<double> uniform_grid(int n);

}  // namespace qroc

#endif
