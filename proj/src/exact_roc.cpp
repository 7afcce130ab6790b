#include "qroc/exact_roc.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace qroc {

namespace {

void require_probability(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ParameterOutOfRange(std::string(name) + " must lie in [0,1]");
    }
}

MatrixXcd helstrom_operator(const DensityMatrix& rho1, const DensityMatrix& rho2,
                            double p) {
    if (rho1.dim() != rho2.dim()) {
        throw DimensionMismatch("state dimensions differ");
    }
    return (1.0 - p) * rho2.matrix - p * rho1.matrix;
}

// Sorted absolute eigenvalues of the Helstrom operator at p.
VectorXd abs_spectrum(const DensityMatrix& rho1, const DensityMatrix& rho2,
                      double p) {
    VectorXd ev = hermitian_eig(helstrom_operator(rho1, rho2, p)).eigenvalues;
    VectorXd a = ev.cwiseAbs();
    std::sort(a.data(), a.data() + a.size());
    return a;
}

}  // namespace

double weighted_trace_norm(const DensityMatrix& rho1, const DensityMatrix& rho2,
                           double p) {
    require_probability(p, "p");
    return trace_norm(helstrom_operator(rho1, rho2, p));
}

HelstromParts neyman_pearson_povm(const DensityMatrix& rho1,
                                  const DensityMatrix& rho2, double p,
                                  double zero_tol) {
    require_probability(p, "p");
    MatrixXcd x = helstrom_operator(rho1, rho2, p);
    SignedProjectors proj = signed_projectors(x, zero_tol);
    HelstromParts parts;
    parts.p = p;
    parts.p1 = proj.minus;
    parts.p2 = proj.plus;
    parts.p0 = proj.zero;
    parts.t_p = trace_norm(x);
    parts.x_p = real_trace(parts.p0 * rho1.matrix);
    parts.y_p = real_trace(parts.p0 * rho2.matrix);
    return parts;
}

ErrorPair exact_errors(const HelstromParts& parts, const DensityMatrix& rho1,
                       const DensityMatrix& rho2, double q) {
    require_probability(q, "q");
    ErrorPair e;
    e.alpha = real_trace(parts.p2 * rho1.matrix) + (1.0 - q) * parts.x_p;
    e.beta = real_trace(parts.p1 * rho2.matrix) + q * parts.y_p;
    e.alpha = std::clamp(e.alpha, 0.0, 1.0);
    e.beta = std::clamp(e.beta, 0.0, 1.0);
    return e;
}

ErrorPair exact_errors(const DensityMatrix& rho1, const DensityMatrix& rho2,
                       double p, double q) {
    return exact_errors(neyman_pearson_povm(rho1, rho2, p), rho1, rho2, q);
}

std::vector<double> locate_kernel_points(const DensityMatrix& rho1,
                                         const DensityMatrix& rho2,
                                         int scan_points, double zero_tol) {
    if (scan_points < 100) {
        throw ParameterOutOfRange("scan_points must be at least 100");
    }
    const Eigen::Index dim = rho1.dim();

    // Persistent kernel dimension: eigenvalues that stay at zero for every p
    // (common null space) are not sign flips and are skipped.
    std::vector<VectorXd> spectra(static_cast<size_t>(scan_points));
    std::vector<double> ps(static_cast<size_t>(scan_points));
    Eigen::Index base = dim;
    for (int i = 0; i < scan_points; ++i) {
        const double p = (i + 1.0) / (scan_points + 1.0);
        ps[static_cast<size_t>(i)] = p;
        spectra[static_cast<size_t>(i)] = abs_spectrum(rho1, rho2, p);
        Eigen::Index below = 0;
        while (below < dim && spectra[static_cast<size_t>(i)](below) <= zero_tol) ++below;
        base = std::min(base, below);
    }
    if (base >= dim) return {};  // states are both zero on the whole space

    auto tracked = [&](double p) {
        VectorXd a = abs_spectrum(rho1, rho2, p);
        return a(base);
    };

    // Golden-section refinement of each local minimum of the tracked
    // eigenvalue magnitude; accept if the refined value sits below zero_tol.
    std::vector<double> found;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int i = 0; i < scan_points; ++i) {
        const double gi = spectra[static_cast<size_t>(i)](base);
        const double gl = (i > 0) ? spectra[static_cast<size_t>(i - 1)](base) : kInfinity;
        const double gr = (i + 1 < scan_points) ? spectra[static_cast<size_t>(i + 1)](base)
                                                : kInfinity;
        if (!(gi <= gl && gi <= gr)) continue;
        double a = (i > 0) ? ps[static_cast<size_t>(i - 1)] : 0.0;
        double b = (i + 1 < scan_points) ? ps[static_cast<size_t>(i + 1)] : 1.0;
        double x1 = b - phi * (b - a);
        double x2 = a + phi * (b - a);
        double f1 = tracked(x1);
        double f2 = tracked(x2);
        while (b - a > 1e-12) {
            if (f1 <= f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - phi * (b - a);
                f1 = tracked(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + phi * (b - a);
                f2 = tracked(x2);
            }
        }
        const double p_star = 0.5 * (a + b);
        if (tracked(p_star) < zero_tol && p_star > 0.0 && p_star < 1.0) {
            bool duplicate = false;
            for (double prev : found) {
                if (std::abs(prev - p_star) < 1e-9) duplicate = true;
            }
            if (!duplicate) found.push_back(p_star);
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

double ROCCurve::alpha_at(double beta) const {
    if (points.empty()) throw NumericalError("empty ROC curve");
    if (beta <= points.front().beta) return points.front().alpha;
    if (beta >= points.back().beta) return points.back().alpha;
    for (size_t i = 1; i < points.size(); ++i) {
        if (beta <= points[i].beta) {
            const double b0 = points[i - 1].beta;
            const double b1 = points[i].beta;
            if (b1 - b0 < 1e-15) return std::min(points[i - 1].alpha, points[i].alpha);
            const double t = (beta - b0) / (b1 - b0);
            return (1.0 - t) * points[i - 1].alpha + t * points[i].alpha;
        }
    }
    return points.back().alpha;
}

void sort_curve(ROCCurve& curve) {
    std::sort(curve.points.begin(), curve.points.end(),
              [](const ROCPoint& a, const ROCPoint& b) {
                  if (a.beta != b.beta) return a.beta < b.beta;
                  return a.alpha > b.alpha;
              });
}

std::vector<double> chebyshev_p_grid(int n) {
    std::vector<double> grid;
    grid.reserve(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k) {
        grid.push_back(0.5 * (1.0 - std::cos(M_PI * k / (n + 1.0))));
    }
    return grid;
}

double exact_alpha_at_beta(const DensityMatrix& rho1, const DensityMatrix& rho2,
                           double beta, double zero_tol) {
    require_probability(beta, "beta");
    auto beta_at = [&](double p) {
        HelstromParts parts = neyman_pearson_povm(rho1, rho2, p, zero_tol);
        // q=0 gives the left end of any kernel segment (smallest beta at p).
        return exact_errors(parts, rho1, rho2, 0.0).beta;
    };
    double lo = 1e-12, hi = 1.0 - 1e-12;
    // At the grid edges any kernel segment is vertical in beta, so the
    // achievable alpha is the smaller of the two q-sweep endpoints.
    auto min_alpha_at = [&](double p) {
        HelstromParts parts = neyman_pearson_povm(rho1, rho2, p, zero_tol);
        return std::min(exact_errors(parts, rho1, rho2, 0.0).alpha,
                        exact_errors(parts, rho1, rho2, 1.0).alpha);
    };
    if (beta <= beta_at(lo)) return min_alpha_at(lo);
    if (beta >= beta_at(hi)) return min_alpha_at(hi);
    for (int iter = 0; iter < 200 && hi - lo > 1e-14; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (beta_at(mid) < beta) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Both bracket endpoints produce points on the ROC, and sweeping the
    // kernel weight q at either one traces any straight segment passing
    // through it.  Collect all four candidates and interpolate between the
    // tightest pair straddling the requested beta.
    HelstromParts pl = neyman_pearson_povm(rho1, rho2, lo, zero_tol);
    HelstromParts ph = neyman_pearson_povm(rho1, rho2, hi, zero_tol);
    const std::array<ErrorPair, 4> candidates = {
        exact_errors(pl, rho1, rho2, 0.0), exact_errors(pl, rho1, rho2, 1.0),
        exact_errors(ph, rho1, rho2, 0.0), exact_errors(ph, rho1, rho2, 1.0)};
    ErrorPair left = candidates[0];
    ErrorPair right = candidates[0];
    bool have_left = false, have_right = false;
    for (const ErrorPair& pt : candidates) {
        if (pt.beta <= beta && (!have_left || pt.beta > left.beta)) {
            left = pt;
            have_left = true;
        }
        if (pt.beta >= beta && (!have_right || pt.beta < right.beta)) {
            right = pt;
            have_right = true;
        }
    }
    if (!have_left) return right.alpha;
    if (!have_right) return left.alpha;
    if (right.beta - left.beta < 1e-13) return std::min(left.alpha, right.alpha);
    const double t = (beta - left.beta) / (right.beta - left.beta);
    return (1.0 - t) * left.alpha + t * right.alpha;
}

ROCCurve roc_curve_exact(const DensityMatrix& rho1, const DensityMatrix& rho2,
                         std::vector<double> p_grid, double zero_tol) {
    if (p_grid.empty()) {
        p_grid = chebyshev_p_grid(512);
        p_grid.insert(p_grid.begin(), 0.0);
        p_grid.push_back(1.0);
    }
    std::vector<double> kernels = locate_kernel_points(rho1, rho2, 2048, zero_tol);

    ROCCurve curve;
    for (double p : p_grid) {
        // Skip grid points that sit on a kernel; the segment endpoints below
        // cover them.
        bool near_kernel = false;
        for (double k : kernels) {
            if (std::abs(p - k) < 1e-9) near_kernel = true;
        }
        if (near_kernel) continue;
        HelstromParts parts = neyman_pearson_povm(rho1, rho2, p, zero_tol);
        ErrorPair e = exact_errors(parts, rho1, rho2, 0.0);
        curve.points.push_back({p, 0.0, e.alpha, e.beta, PointKind::Exact, "exact"});
        // A nonzero kernel away from detected flips (e.g. a persistent null
        // space, or p = 0/1 with a rank-deficient state) still spans a
        // segment; emit the far endpoint too.
        if (parts.x_p > 1e-12 || parts.y_p > 1e-12) {
            ErrorPair e1 = exact_errors(parts, rho1, rho2, 1.0);
            curve.points.push_back(
                {p, 1.0, e1.alpha, e1.beta, PointKind::KernelSegment, "kernel-segment"});
        }
    }
    for (double k : kernels) {
        HelstromParts parts = neyman_pearson_povm(rho1, rho2, k, zero_tol);
        for (double q : {0.0, 1.0}) {
            ErrorPair e = exact_errors(parts, rho1, rho2, q);
            curve.points.push_back(
                {k, q, e.alpha, e.beta, PointKind::KernelSegment, "kernel-segment"});
        }
    }
    sort_curve(curve);
    return curve;
}

}  // namespace qroc
