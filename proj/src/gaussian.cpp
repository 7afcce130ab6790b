#include "qroc/gaussian.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace qroc {

namespace {

constexpr double kEndpointStep = 1e-6;  // one-sided limit for s in {0,1}
constexpr double kPhysicalityTol = 1e-8;
constexpr double kFullRankMargin = 1e-8;
constexpr double kDeficitLimit = 1e-6;

const Complex kI(0.0, 1.0);

// Eigendecomposition of W = -2 V i Omega (non-normal); every matrix function
// of W below is evaluated on this basis.
struct WAnalysis {
    MatrixXcd vectors;
    MatrixXcd inverse;
    VectorXcd values;
};

WAnalysis analyze_w(const MatrixXd& cov) {
    const int n = static_cast<int>(cov.rows());
    MatrixXcd i_omega = kI * symplectic_form(n / 2).cast<Complex>();
    MatrixXcd w = -2.0 * cov.cast<Complex>() * i_omega;
    Eigen::ComplexEigenSolver<MatrixXcd> solver(w);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigendecomposition of W failed");
    }
    WAnalysis a;
    a.vectors = solver.eigenvectors();
    a.values = solver.eigenvalues();
    Eigen::JacobiSVD<MatrixXcd> svd(a.vectors);
    const double cond =
        svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
    if (!(cond < 1e8)) {
        throw IllConditioned("eigenvector matrix of W is ill-conditioned");
    }
    a.inverse = a.vectors.inverse();
    return a;
}

MatrixXcd apply_scalar(const WAnalysis& a, const std::function<Complex(Complex)>& fn) {
    VectorXcd fv(a.values.size());
    for (Eigen::Index i = 0; i < a.values.size(); ++i) fv(i) = fn(a.values(i));
    return a.vectors * fv.asDiagonal() * a.inverse;
}

// W_j(s) eigenvalue map: ((w+1)^s + (w-1)^s) / ((w+1)^s - (w-1)^s).
Complex w_power(Complex w, double s) {
    const Complex up = std::pow(w + 1.0, s);
    const Complex dn = std::pow(w - 1.0, s);
    return (up + dn) / (up - dn);
}

// d/ds of the above: 2 (w-1)^s (w+1)^s / ((w-1)^s - (w+1)^s)^2 * log((w-1)/(w+1)).
Complex w_power_deriv(Complex w, double s) {
    const Complex up = std::pow(w + 1.0, s);
    const Complex dn = std::pow(w - 1.0, s);
    const Complex diff = dn - up;
    return 2.0 * dn * up / (diff * diff) * std::log((w - 1.0) / (w + 1.0));
}

// Summand of g_j(s) = -d/ds Tr log(V_j(s) + i Omega/2).
Complex g_term(Complex w, double s) {
    const Complex up = std::pow(w + 1.0, s);
    const Complex dn = std::pow(w - 1.0, s);
    return up / (dn - up) * std::log((w - 1.0) / (w + 1.0));
}

// V_j(s) and its s-derivative, from the W functions: V = -W i Omega / 2.
MatrixXcd v_of_w(const MatrixXcd& w_mat, int modes) {
    MatrixXcd i_omega = kI * symplectic_form(modes).cast<Complex>();
    return -0.5 * w_mat * i_omega;
}

double real_checked(Complex z, const char* what) {
    if (std::abs(z.imag()) > 1e-8 * std::max(1.0, std::abs(z.real()))) {
        throw NumericalError(std::string(what) + " has a large imaginary part");
    }
    return z.real();
}

double log_det_real(const MatrixXcd& m, const char* what) {
    Eigen::PartialPivLU<MatrixXcd> lu(m);
    Complex det = lu.determinant();
    const double re = real_checked(det, what);
    if (!(re > 0.0)) throw NumericalError(std::string(what) + " is not positive");
    return std::log(re);
}

void require_full_rank(const GaussianState& g) {
    VectorXd nu = symplectic_eigenvalues(g);
    if (nu.minCoeff() <= 0.5 + kFullRankMargin) {
        throw SingularGaussianState("state is pure or near-pure");
    }
}

void require_interior(double s) {
    if (!(s > 0.0 && s < 1.0)) {
        throw ParameterOutOfRange("s must lie in (0,1); endpoints via limits");
    }
}

struct QsParts {
    WAnalysis a;  // state entering with power s (rho2)
    WAnalysis b;  // state entering with power 1-s (rho1)
    MatrixXd va;
    MatrixXd vb;
    VectorXd delta;
    int modes;
    double log_zeta2_a;  // ln det(Va + i Omega/2)
    double log_zeta2_b;
};

QsParts prepare(const GaussianState& g1, const GaussianState& g2) {
    if (g1.modes != g2.modes || g1.cov.rows() != g2.cov.rows()) {
        throw DimensionMismatch("Gaussian states have different mode counts");
    }
    require_full_rank(g1);
    require_full_rank(g2);
    QsParts p;
    p.modes = g1.modes;
    p.a = analyze_w(g2.cov);
    p.b = analyze_w(g1.cov);
    p.va = g2.cov;
    p.vb = g1.cov;
    p.delta = g2.mean - g1.mean;
    MatrixXcd half_omega = 0.5 * kI * symplectic_form(p.modes).cast<Complex>();
    p.log_zeta2_a = log_det_real(g2.cov.cast<Complex>() + half_omega, "det(V2+iO/2)");
    p.log_zeta2_b = log_det_real(g1.cov.cast<Complex>() + half_omega, "det(V1+iO/2)");
    return p;
}

}  // namespace

MatrixXd symplectic_form(int modes) {
    MatrixXd omega = MatrixXd::Zero(2 * modes, 2 * modes);
    for (int k = 0; k < modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

GaussianState validate_gaussian(const VectorXd& mean, const MatrixXd& cov,
                                int modes) {
    if (modes < 1 || mean.size() != 2 * modes || cov.rows() != 2 * modes ||
        cov.cols() != 2 * modes) {
        throw DimensionMismatch("inconsistent Gaussian state dimensions");
    }
    const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw AsymmetricCovariance("covariance matrix is not symmetric");
    }
    MatrixXcd phys = cov.cast<Complex>() + 0.5 * kI * symplectic_form(modes).cast<Complex>();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(phys);
    if (solver.eigenvalues().minCoeff() < -kPhysicalityTol) {
        throw Unphysical("cov + i Omega/2 has a negative eigenvalue");
    }
    return GaussianState{modes, mean, cov};
}

VectorXd symplectic_eigenvalues(const GaussianState& g) {
    MatrixXcd i_omega = kI * symplectic_form(g.modes).cast<Complex>();
    MatrixXcd m = i_omega * g.cov.cast<Complex>();
    Eigen::ComplexEigenSolver<MatrixXcd> solver(m);
    VectorXd a = solver.eigenvalues().cwiseAbs();
    std::sort(a.data(), a.data() + a.size(), std::greater<double>());
    VectorXd nu(g.modes);
    for (int k = 0; k < g.modes; ++k) nu(k) = a(2 * k);  // pairs +-nu
    return nu;
}

double gaussian_zeta(const GaussianState& g) {
    MatrixXcd m =
        g.cov.cast<Complex>() + 0.5 * kI * symplectic_form(g.modes).cast<Complex>();
    Eigen::PartialPivLU<MatrixXcd> lu(m);
    const double det = real_checked(lu.determinant(), "det(V+iO/2)");
    return std::sqrt(std::max(det, 0.0));
}

double gaussian_q_s(const GaussianState& g1, const GaussianState& g2, double s) {
    require_interior(s);
    QsParts p = prepare(g1, g2);
    MatrixXcd half_omega = 0.5 * kI * symplectic_form(p.modes).cast<Complex>();

    MatrixXcd va_s = v_of_w(apply_scalar(p.a, [s](Complex w) { return w_power(w, s); }),
                            p.modes);
    MatrixXcd vb_1ms = v_of_w(
        apply_scalar(p.b, [s](Complex w) { return w_power(w, 1.0 - s); }), p.modes);
    MatrixXcd m12 = va_s + vb_1ms;

    double log_q = 0.0;
    log_q += 0.5 * (log_det_real(va_s + half_omega, "det(V2(s)+iO/2)") -
                    s * p.log_zeta2_a);
    log_q += 0.5 * (log_det_real(vb_1ms + half_omega, "det(V1(1-s)+iO/2)") -
                    (1.0 - s) * p.log_zeta2_b);
    log_q -= 0.5 * log_det_real(m12, "det(V12)");

    VectorXcd delta = p.delta.cast<Complex>();
    Complex quad = delta.dot(m12.partialPivLu().solve(delta));
    log_q -= 0.5 * real_checked(quad, "delta' V12^-1 delta");
    return std::exp(log_q);
}

double gaussian_q_s_logderiv(const GaussianState& g1, const GaussianState& g2,
                             double s) {
    require_interior(s);
    QsParts p = prepare(g1, g2);

    MatrixXcd va_s = v_of_w(apply_scalar(p.a, [s](Complex w) { return w_power(w, s); }),
                            p.modes);
    MatrixXcd vb_1ms = v_of_w(
        apply_scalar(p.b, [s](Complex w) { return w_power(w, 1.0 - s); }), p.modes);
    // d/ds of V2(s) + V1(1-s): the second term picks up a sign from the
    // argument reversal.
    MatrixXcd va_p =
        v_of_w(apply_scalar(p.a, [s](Complex w) { return w_power_deriv(w, s); }),
               p.modes);
    MatrixXcd vb_p = v_of_w(
        apply_scalar(p.b, [s](Complex w) { return w_power_deriv(w, 1.0 - s); }),
        p.modes);
    MatrixXcd m12 = va_s + vb_1ms;
    MatrixXcd m12_prime = va_p - vb_p;

    Complex g_a(0.0, 0.0), g_b(0.0, 0.0);
    for (Eigen::Index i = 0; i < p.a.values.size(); ++i) {
        g_a += g_term(p.a.values(i), s);
    }
    for (Eigen::Index i = 0; i < p.b.values.size(); ++i) {
        g_b += g_term(p.b.values(i), 1.0 - s);
    }

    Eigen::PartialPivLU<MatrixXcd> lu(m12);
    MatrixXcd m_inv_mp = lu.solve(m12_prime);
    const double trace_term = real_checked(m_inv_mp.trace(), "Tr[V12^-1 V12']");

    VectorXcd delta = p.delta.cast<Complex>();
    VectorXcd m_inv_delta = lu.solve(delta);
    Complex quad = m_inv_delta.dot(m12_prime * m_inv_delta);

    const double log_z_ratio = 0.5 * (p.log_zeta2_a - p.log_zeta2_b);
    const double g_diff = real_checked(g_a - g_b, "g1(s)-g2(1-s)");

    return log_z_ratio + 0.5 * (g_diff + trace_term) -
           0.5 * real_checked(quad, "delta quadratic form");
}

namespace {

class GaussianQs : public QsEvaluator {
public:
    GaussianQs(GaussianState g1, GaussianState g2)
        : g1_(std::move(g1)), g2_(std::move(g2)) {}

    double value(double s) const override {
        return gaussian_q_s(g1_, g2_, clamp(s));
    }
    double derivative(double s) const override {
        const double sc = clamp(s);
        return -gaussian_q_s_logderiv(g1_, g2_, sc) * gaussian_q_s(g1_, g2_, sc);
    }

private:
    static double clamp(double s) {
        return std::clamp(s, kEndpointStep, 1.0 - kEndpointStep);
    }
    GaussianState g1_;
    GaussianState g2_;
};

}  // namespace

std::shared_ptr<QsEvaluator> gaussian_qs_evaluator(const GaussianState& g1,
                                                   const GaussianState& g2) {
    require_full_rank(g1);
    require_full_rank(g2);
    return std::make_shared<GaussianQs>(g1, g2);
}

GaussianState tmsv_through_thermal_loss(double nbar, double tau, double nth) {
    if (nbar < 0.0 || nth < 0.0 || tau < 0.0 || tau > 1.0) {
        throw ParameterOutOfRange("need nbar,nth >= 0 and tau in [0,1]");
    }
    const double a = nbar + 0.5;
    const double b = tau * a + (1.0 - tau) * (nth + 0.5);
    const double c = std::sqrt(tau) * std::sqrt(nbar * (nbar + 1.0));
    MatrixXd cov = MatrixXd::Zero(4, 4);
    cov(0, 0) = cov(1, 1) = a;
    cov(2, 2) = cov(3, 3) = b;
    cov(0, 2) = cov(2, 0) = c;
    cov(1, 3) = cov(3, 1) = -c;
    return validate_gaussian(VectorXd::Zero(4), cov, 2);
}

GaussianState thermal_state(double nbar) {
    if (nbar < 0.0) throw ParameterOutOfRange("nbar must be nonnegative");
    return validate_gaussian(VectorXd::Zero(2),
                             (nbar + 0.5) * MatrixXd::Identity(2, 2), 1);
}

namespace {

constexpr int kFockPad = 24;

MatrixXcd lowering_operator(int dim) {
    MatrixXcd a = MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

VectorXd thermal_weights(double nu, int dim) {
    const double nbar = std::max(nu - 0.5, 0.0);
    const double x = nbar / (nbar + 1.0);
    VectorXd w(dim);
    double term = 1.0 / (nbar + 1.0);
    for (int n = 0; n < dim; ++n) {
        w(n) = term;
        term *= x;
    }
    return w;
}

FockState fock_single_mode(const GaussianState& g, int cutoff) {
    const double nu = std::sqrt(std::max(g.cov.determinant(), 0.25));
    // V / nu = R diag(e^{2r}, e^{-2r}) R^T with R a rotation.
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(g.cov / nu);
    const double r = 0.5 * std::log(es.eigenvalues()(1));  // larger eigenvalue
    MatrixXd rot = es.eigenvectors();
    // Column 1 (largest eigenvalue direction) defines the stretched axis.
    const double theta = std::atan2(rot(1, 1), rot(0, 1));

    const int dim = cutoff + 1 + kFockPad;
    MatrixXcd a = lowering_operator(dim);
    MatrixXcd n_op = a.adjoint() * a;

    // Squeezer exp((r/2)(a^2 - a^dag^2)) scales x by e^{-r}; we need e^{+r}
    // along the rotated axis, so apply it with -r.
    MatrixXcd squeeze = (0.5 * (-r) * (a * a - a.adjoint() * a.adjoint())).exp();
    // Phase-space rotation mapping the x axis onto the stretched axis.
    MatrixXcd rotate = (kI * theta * n_op).exp();

    MatrixXcd rho = thermal_weights(nu, dim).cast<Complex>().asDiagonal();
    MatrixXcd u = rotate * squeeze;
    rho = u * rho * u.adjoint();

    if (g.mean.cwiseAbs().maxCoeff() > 0.0) {
        const Complex alpha((g.mean(0)) / std::sqrt(2.0), (g.mean(1)) / std::sqrt(2.0));
        MatrixXcd disp = (alpha * a.adjoint() - std::conj(alpha) * a).exp();
        rho = disp * rho * disp.adjoint();
    }

    FockState out;
    out.matrix = rho.topLeftCorner(cutoff + 1, cutoff + 1);
    out.matrix = 0.5 * (out.matrix + out.matrix.adjoint().eval());
    out.trace_deficit = 1.0 - out.matrix.trace().real();
    return out;
}

// Two-mode squeezed thermal parameters recovered from the covariance
// blocks [[a I, c sigma_z], [c sigma_z, b I]].
struct TmstParams {
    double r;
    double nu1;
    double nu2;
};

bool tmst_structure(const GaussianState& g, double* a, double* b, double* c) {
    if (g.modes != 2) return false;
    if (g.mean.cwiseAbs().maxCoeff() > 1e-12) return false;
    const MatrixXd& v = g.cov;
    *a = v(0, 0);
    *b = v(2, 2);
    *c = v(0, 2);
    MatrixXd model = MatrixXd::Zero(4, 4);
    model(0, 0) = model(1, 1) = *a;
    model(2, 2) = model(3, 3) = *b;
    model(0, 2) = model(2, 0) = *c;
    model(1, 3) = model(3, 1) = -*c;
    return (v - model).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, v.cwiseAbs().maxCoeff());
}

TmstParams tmst_params(double a, double b, double c) {
    TmstParams p;
    const double t = 2.0 * c / (a + b);
    p.r = 0.5 * std::atanh(t);
    const double sum = (a + b) / std::cosh(2.0 * p.r);
    p.nu1 = 0.5 * (sum + (a - b));
    p.nu2 = 0.5 * (sum - (a - b));
    return p;
}

// exp(r K_d) on the |n+d, n> ladder of a fixed photon-number-difference
// sector, with K = a^dag b^dag - a b.
MatrixXd sector_squeezer(double r, int d, int dim) {
    MatrixXd k = MatrixXd::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) {
        const double v = std::sqrt((n + d + 1.0) * (n + 1.0));
        k(n + 1, n) = v;
        k(n, n + 1) = -v;
    }
    return (r * k).exp();
}

// Per-sector blocks of a two-mode squeezed thermal state. Sector d holds
// basis |n+d, n> for d >= 0 and |n, n-d> for d < 0, n = 0..(cutoff-|d|).
std::vector<MatrixXd> tmst_blocks(const TmstParams& p, double x1_nu, double x2_nu,
                                  int cutoff, int pad) {
    const double n1 = std::max(x1_nu - 0.5, 0.0);
    const double n2 = std::max(x2_nu - 0.5, 0.0);
    const double x1 = n1 / (n1 + 1.0);
    const double x2 = n2 / (n2 + 1.0);
    const double w0 = 1.0 / ((n1 + 1.0) * (n2 + 1.0));

    std::vector<MatrixXd> blocks;
    blocks.reserve(static_cast<size_t>(2 * cutoff + 1));
    for (int d = -cutoff; d <= cutoff; ++d) {
        const int ad = std::abs(d);
        const int keep = cutoff - ad + 1;
        const int dim = keep + pad;
        VectorXd w(dim);
        for (int n = 0; n < dim; ++n) {
            const int na = (d >= 0) ? n + ad : n;
            const int nb = (d >= 0) ? n : n + ad;
            w(n) = w0 * std::pow(x1, na) * std::pow(x2, nb);
        }
        MatrixXd u = sector_squeezer(p.r, ad, dim);
        MatrixXd block = u * w.asDiagonal() * u.transpose();
        blocks.push_back(block.topLeftCorner(keep, keep));
    }
    return blocks;
}

FockState fock_two_mode(const GaussianState& g, int cutoff) {
    double a, b, c;
    if (!tmst_structure(g, &a, &b, &c)) {
        throw UnsupportedInput(
            "two-mode Fock conversion requires zero mean and covariance "
            "[[aI, c sigma_z],[c sigma_z, bI]]");
    }
    TmstParams p = tmst_params(a, b, c);
    std::vector<MatrixXd> blocks = tmst_blocks(p, p.nu1, p.nu2, cutoff, 30);

    const int side = cutoff + 1;
    FockState out;
    out.matrix = MatrixXcd::Zero(side * side, side * side);
    auto idx = [side](int na, int nb) { return na * side + nb; };
    for (int d = -cutoff; d <= cutoff; ++d) {
        const MatrixXd& block = blocks[static_cast<size_t>(d + cutoff)];
        const int ad = std::abs(d);
        for (int m = 0; m < block.rows(); ++m) {
            for (int n = 0; n < block.cols(); ++n) {
                const int ma = (d >= 0) ? m + ad : m;
                const int mb = (d >= 0) ? m : m + ad;
                const int na = (d >= 0) ? n + ad : n;
                const int nb = (d >= 0) ? n : n + ad;
                out.matrix(idx(ma, mb), idx(na, nb)) = block(m, n);
            }
        }
    }
    out.trace_deficit = 1.0 - out.matrix.trace().real();
    return out;
}

void check_deficit(const FockState& f) {
    if (f.trace_deficit > kDeficitLimit) {
        throw CutoffTooSmall("truncated trace deficit exceeds 1e-6");
    }
}

// Trace norm of sqrt(A) sqrt(B) for small PSD blocks.
double block_fidelity(const MatrixXd& a, const MatrixXd& b) {
    auto psd_sqrt_real = [](const MatrixXd& m) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(m);
        VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        return MatrixXd(es.eigenvectors() * ev.asDiagonal() *
                        es.eigenvectors().transpose());
    };
    Eigen::JacobiSVD<MatrixXd> svd(psd_sqrt_real(a) * psd_sqrt_real(b));
    return svd.singularValues().sum();
}

}  // namespace

FockState gaussian_to_fock(const GaussianState& g, int cutoff,
                           bool enforce_deficit) {
    if (cutoff < 1) throw ParameterOutOfRange("cutoff must be positive");
    if (g.modes > 2) throw UnsupportedInput("Fock conversion supports at most 2 modes");
    FockState f = (g.modes == 1) ? fock_single_mode(g, cutoff) : fock_two_mode(g, cutoff);
    if (enforce_deficit) check_deficit(f);
    return f;
}

FidelityEstimate gaussian_fidelity_truncated(const GaussianState& g1,
                                             const GaussianState& g2, int cutoff,
                                             bool enforce_deficit) {
    if (g1.modes != g2.modes) {
        throw DimensionMismatch("Gaussian states have different mode counts");
    }
    if (g1.modes > 2) throw UnsupportedInput("fidelity estimator supports at most 2 modes");

    if (g1.modes == 1) {
        FockState f1 = gaussian_to_fock(g1, cutoff, enforce_deficit);
        FockState f2 = gaussian_to_fock(g2, cutoff, enforce_deficit);
        MatrixXcd prod = psd_sqrt(f1.matrix) * psd_sqrt(f2.matrix);
        Eigen::JacobiSVD<MatrixXcd> svd(prod);
        return {svd.singularValues().sum(), f1.trace_deficit + f2.trace_deficit};
    }

    // Two modes: both states share the photon-number-difference grading, so
    // the fidelity splits into small per-sector blocks.
    double a1, b1, c1, a2, b2, c2;
    if (!tmst_structure(g1, &a1, &b1, &c1) || !tmst_structure(g2, &a2, &b2, &c2)) {
        throw UnsupportedInput("two-mode fidelity requires squeezed-thermal structure");
    }
    TmstParams p1 = tmst_params(a1, b1, c1);
    TmstParams p2 = tmst_params(a2, b2, c2);
    std::vector<MatrixXd> blocks1 = tmst_blocks(p1, p1.nu1, p1.nu2, cutoff, 30);
    std::vector<MatrixXd> blocks2 = tmst_blocks(p2, p2.nu1, p2.nu2, cutoff, 30);

    double fid = 0.0;
    double tr1 = 0.0, tr2 = 0.0;
    for (size_t i = 0; i < blocks1.size(); ++i) {
        fid += block_fidelity(blocks1[i], blocks2[i]);
        tr1 += blocks1[i].trace();
        tr2 += blocks2[i].trace();
    }
    FockState probe1{{}, 1.0 - tr1};
    FockState probe2{{}, 1.0 - tr2};
    if (enforce_deficit) {
        check_deficit(probe1);
        check_deficit(probe2);
    }
    return {fid, probe1.trace_deficit + probe2.trace_deficit};
}

}  // namespace qroc
