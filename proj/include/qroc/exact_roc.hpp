#ifndef QROC_EXACT_ROC_HPP
#define QROC_EXACT_ROC_HPP

#include <string>
#include <vector>

#include "qroc/dv_states.hpp"

namespace qroc {

// t_p = ||(1-p) rho2 - p rho1||_1
double weighted_trace_norm(const DensityMatrix& rho1, const DensityMatrix& rho2,
                           double p);

// The Neyman-Pearson POVM for (1-p) rho2 - p rho1, split into the positive,
// negative, and kernel eigenspace projectors, plus the kernel traces
// x_p = Tr[P0 rho1] and y_p = Tr[P0 rho2].
struct HelstromParts {
    double p;
    MatrixXcd p1;  // negative eigenspace: decide rho1
    MatrixXcd p2;  // positive eigenspace: decide rho2
    MatrixXcd p0;  // kernel
    double t_p;
    double x_p;
    double y_p;
};

HelstromParts neyman_pearson_povm(const DensityMatrix& rho1,
                                  const DensityMatrix& rho2, double p,
                                  double zero_tol = 0.0);

struct ErrorPair {
    double alpha;
    double beta;
};

// Errors of the POVM {P1 + q P0, P2 + (1-q) P0}. The weighted sum
// p*alpha + (1-p)*beta equals (1-t_p)/2 for every kernel weight q.
ErrorPair exact_errors(const DensityMatrix& rho1, const DensityMatrix& rho2,
                       double p, double q);

ErrorPair exact_errors(const HelstromParts& parts, const DensityMatrix& rho1,
                       const DensityMatrix& rho2, double q);

// p values in (0,1) at which (1-p) rho2 - p rho1 is rank deficient, i.e.
// where an eigenvalue flips sign and dt_p/dp is discontinuous. A kernel
// subspace shared by every p (common null space of both states) is ignored.
std::vector<double> locate_kernel_points(const DensityMatrix& rho1,
                                         const DensityMatrix& rho2,
                                         int scan_points = 2048,
                                         double zero_tol = 1e-10);

enum class PointKind { Exact, KernelSegment, Bound };

struct ROCPoint {
    double p = -1.0;  // negative means "not applicable"
    double q = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    PointKind kind = PointKind::Exact;
    std::string label;  // bound tag for PointKind::Bound
};

struct ROCCurve {
    std::vector<ROCPoint> points;  // ordered by increasing beta

    // Linear interpolation of alpha at the given beta (curve points are the
    // knots). Outside the spanned range the nearest endpoint value is used.
    double alpha_at(double beta) const;
};

void sort_curve(ROCCurve& curve);

// Chebyshev-spaced grid in (0,1), denser near the endpoints.
std::vector<double> chebyshev_p_grid(int n);

// Optimal alpha at a requested beta, solved by bisection on the tangent
// parameter p (beta* is non-decreasing in p). When beta lands inside a
// kernel segment, the point is interpolated along that straight segment,
// which is exact.
double exact_alpha_at_beta(const DensityMatrix& rho1, const DensityMatrix& rho2,
                           double beta, double zero_tol = 1e-10);

// Exact ROC over the given p grid. Kernel points are located automatically
// and contribute both segment endpoints (q=0 and q=1), tagged KernelSegment.
// An empty grid selects the default: 512 Chebyshev points plus endpoints.
ROCCurve roc_curve_exact(const DensityMatrix& rho1, const DensityMatrix& rho2,
                         std::vector<double> p_grid = {},
                         double zero_tol = 1e-10);

}  // namespace qroc

#endif
