#include "qroc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qroc {

bool is_hermitian(const MatrixXcd& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

void require_hermitian(const MatrixXcd& m, const char* what) {
    if (!is_hermitian(m)) {
        throw NonHermitianInput(std::string(what) + " is not Hermitian");
    }
}

EigenSystem hermitian_eig(const MatrixXcd& m) {
    require_hermitian(m);
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Hermitian eigendecomposition failed");
    }
    const Eigen::Index n = m.rows();
    EigenSystem sys;
    sys.eigenvalues.resize(n);
    sys.eigenvectors.resize(n, n);
    // Eigen returns ascending order; flip to descending.
    for (Eigen::Index i = 0; i < n; ++i) {
        sys.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
        sys.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    }
    return sys;
}

MatrixXcd psd_matrix_function(const MatrixXcd& m, MatrixFn fn, double s) {
    EigenSystem sys = hermitian_eig(m);
    const double lmax = sys.eigenvalues.size() ? sys.eigenvalues(0) : 0.0;
    if (sys.eigenvalues.size() && sys.eigenvalues.minCoeff() < -1e-10 * std::max(lmax, 0.0) - kZeroTolAbs) {
        throw NotPositiveSemidefinite("matrix has a negative eigenvalue");
    }
    const double clamp = 1e-14 * std::max(lmax, 0.0);
    VectorXd fv(sys.eigenvalues.size());
    for (Eigen::Index i = 0; i < sys.eigenvalues.size(); ++i) {
        double lam = sys.eigenvalues(i);
        if (lam <= clamp) lam = 0.0;
        switch (fn) {
            case MatrixFn::Sqrt:
                fv(i) = std::sqrt(lam);
                break;
            case MatrixFn::Power:
                // support convention: 0^s = 0 for s > 0, 0^0 = 0
                fv(i) = (lam == 0.0) ? 0.0 : std::pow(lam, s);
                break;
            case MatrixFn::Log:
                // log restricted to the support
                fv(i) = (lam == 0.0) ? 0.0 : std::log(lam);
                break;
        }
    }
    MatrixXcd out = sys.eigenvectors * fv.asDiagonal() * sys.eigenvectors.adjoint();
    // symmetrize away roundoff
    return 0.5 * (out + out.adjoint().eval());
}

double trace_norm(const MatrixXcd& m) {
    EigenSystem sys = hermitian_eig(m);
    return sys.eigenvalues.cwiseAbs().sum();
}

double default_zero_tol(const VectorXd& eigenvalues) {
    const double radius = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    return std::max(kZeroTolRel * radius, kZeroTolAbs);
}

SignedProjectors signed_projectors(const MatrixXcd& m, double zero_tol) {
    EigenSystem sys = hermitian_eig(m);
    const Eigen::Index n = m.rows();
    if (zero_tol <= 0.0) zero_tol = default_zero_tol(sys.eigenvalues);

    // Cluster eigenvalues whose gap is below zero_tol so projectors are
    // built from whole clusters.
    std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;  // [begin, end)
    Eigen::Index begin = 0;
    for (Eigen::Index i = 1; i <= n; ++i) {
        if (i == n || sys.eigenvalues(i - 1) - sys.eigenvalues(i) > zero_tol) {
            clusters.emplace_back(begin, i);
            begin = i;
        }
    }

    SignedProjectors proj{MatrixXcd::Zero(n, n), MatrixXcd::Zero(n, n), MatrixXcd::Zero(n, n)};
    for (auto [b, e] : clusters) {
        double mean = 0.0;
        for (Eigen::Index i = b; i < e; ++i) mean += sys.eigenvalues(i);
        mean /= static_cast<double>(e - b);
        MatrixXcd block = MatrixXcd::Zero(n, n);
        for (Eigen::Index i = b; i < e; ++i) {
            block.noalias() += sys.eigenvectors.col(i) * sys.eigenvectors.col(i).adjoint();
        }
        if (std::abs(mean) <= zero_tol) {
            proj.zero += block;
        } else if (mean > 0.0) {
            proj.plus += block;
        } else {
            proj.minus += block;
        }
    }
    return proj;
}

}  // namespace qroc
