#include "qroc/dv_states.hpp"

#include <cmath>

namespace qroc {

namespace {

// Entries with negligible overlap weight are dropped to avoid 0*ln(0)
// noise in the derivative series.
constexpr double kOverlapDrop = 1e-14;
// A term contributes a divergence when its mass against a zero target
// eigenvalue exceeds this.
constexpr double kDivergenceMass = 1e-12;

void require_in_range(double s) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw ParameterOutOfRange("s must lie in [0,1]");
    }
}

}  // namespace

DensityMatrix validate_density(const MatrixXcd& matrix) {
    require_hermitian(matrix, "density matrix");
    EigenSystem sys = hermitian_eig(matrix);
    const double lmax = sys.eigenvalues(0);
    if (sys.eigenvalues.minCoeff() < -1e-10 * std::max(lmax, 0.0) - kZeroTolAbs) {
        throw NotPositiveSemidefinite("density matrix has a negative eigenvalue");
    }
    const double tr = matrix.trace().real();
    if (std::abs(tr - 1.0) > 1e-8) {
        throw TraceNotOne("density matrix trace differs from 1");
    }
    return DensityMatrix{matrix};
}

double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim()) {
        throw DimensionMismatch("fidelity: states have different dimensions");
    }
    MatrixXcd prod = psd_sqrt(rho1.matrix) * psd_sqrt(rho2.matrix);
    Eigen::JacobiSVD<MatrixXcd> svd(prod);
    const double f = svd.singularValues().sum();
    // The derived curves scale like sqrt(1 - F^2), so rounding noise in a
    // fidelity that is mathematically 1 gets amplified to ~1e-8.  Snap to 1
    // inside a window far above the accumulated floating-point error.
    if (f > 1.0 - 1e-12) return 1.0;
    return f;
}

OverlapDecomposition overlap_decomposition(const DensityMatrix& rho1,
                                           const DensityMatrix& rho2) {
    if (rho1.dim() != rho2.dim()) {
        throw DimensionMismatch("overlap_decomposition: dimension mismatch");
    }
    EigenSystem e1 = hermitian_eig(rho1.matrix);
    EigenSystem e2 = hermitian_eig(rho2.matrix);
    const Eigen::Index n = rho1.dim();
    OverlapDecomposition d;
    d.entries.reserve(static_cast<size_t>(n * n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double mu = std::max(e1.eigenvalues(i), 0.0);
        for (Eigen::Index j = 0; j < n; ++j) {
            const double lambda = std::max(e2.eigenvalues(j), 0.0);
            const double c =
                std::norm(e2.eigenvectors.col(j).dot(e1.eigenvectors.col(i)));
            if (c < kOverlapDrop) continue;
            d.entries.push_back({c, lambda, mu});
        }
    }
    return d;
}

double q_s(const OverlapDecomposition& d, double s) {
    require_in_range(s);
    double sum = 0.0;
    for (const auto& e : d.entries) {
        const double ls = (e.lambda == 0.0) ? (s > 0.0 ? 0.0 : 1.0) : std::pow(e.lambda, s);
        const double mu1s =
            (e.mu == 0.0) ? (s < 1.0 ? 0.0 : 1.0) : std::pow(e.mu, 1.0 - s);
        sum += e.c * ls * mu1s;
    }
    return sum;
}

double q_s_derivative(const OverlapDecomposition& d, double s) {
    require_in_range(s);
    double sum = 0.0;
    for (const auto& e : d.entries) {
        const double ls = (e.lambda == 0.0) ? (s > 0.0 ? 0.0 : 1.0) : std::pow(e.lambda, s);
        const double mu1s =
            (e.mu == 0.0) ? (s < 1.0 ? 0.0 : 1.0) : std::pow(e.mu, 1.0 - s);
        const double weight = e.c * ls * mu1s;
        if (weight == 0.0) continue;  // 0 ln 0 = 0
        sum += weight * (std::log(e.lambda) - std::log(e.mu));
    }
    return sum;
}

RelativeEntropies relative_entropies(const OverlapDecomposition& d, EntropyUnit unit) {
    // S12 = -dQ/ds at s=0 = -sum c mu (ln lambda - ln mu): diverges when a
    // term carries mass c*mu against lambda = 0. S21 symmetric.
    double s12 = 0.0;
    double s21 = 0.0;
    bool s12_inf = false;
    bool s21_inf = false;
    for (const auto& e : d.entries) {
        if (e.mu > 0.0) {
            if (e.lambda <= 0.0 && e.c * e.mu > kDivergenceMass) {
                s12_inf = true;
            } else if (e.lambda > 0.0) {
                s12 -= e.c * e.mu * (std::log(e.lambda) - std::log(e.mu));
            }
        }
        if (e.lambda > 0.0) {
            if (e.mu <= 0.0 && e.c * e.lambda > kDivergenceMass) {
                s21_inf = true;
            } else if (e.mu > 0.0) {
                s21 += e.c * e.lambda * (std::log(e.lambda) - std::log(e.mu));
            }
        }
    }
    RelativeEntropies out;
    out.s12 = s12_inf ? kInfinity : s12;
    out.s21 = s21_inf ? kInfinity : s21;
    out.unit = unit;
    if (unit == EntropyUnit::Bits) {
        out.s12 /= std::log(2.0);
        out.s21 /= std::log(2.0);
    }
    return out;
}

ChernoffPoint chernoff_s_star(const OverlapDecomposition& d) {
    // Q_s is log-convex, hence unimodal: golden-section over [0,1].
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = 1.0;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = q_s(d, x1);
    double f2 = q_s(d, x2);
    while (b - a > 1e-10) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = q_s(d, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = q_s(d, x2);
        }
    }
    double s = 0.5 * (a + b);
    double q = q_s(d, s);
    // Flat objective (identical states): deterministic tie-break at 1/2.
    if (std::abs(q_s(d, 0.0) - q) < 1e-12 && std::abs(q_s(d, 1.0) - q) < 1e-12) {
        s = 0.5;
        q = q_s(d, s);
    }
    // Endpoints can win when Q_s is monotone.
    if (q_s(d, 0.0) < q) {
        s = 0.0;
        q = q_s(d, 0.0);
    }
    if (q_s(d, 1.0) < q) {
        s = 1.0;
        q = q_s(d, 1.0);
    }
    return {s, q};
}

double TensorPowerQs::value(double s) const {
    return std::pow(base_->value(s), n_);
}

double TensorPowerQs::derivative(double s) const {
    const double v = base_->value(s);
    return static_cast<double>(n_) * std::pow(v, n_ - 1) * base_->derivative(s);
}

}  // namespace qroc
