#include "qroc/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace qroc {

namespace {

void require_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ParameterOutOfRange(std::string(name) + " must lie in [0,1]");
    }
}

void require_open_unit(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
        throw ParameterOutOfRange(std::string(name) + " must lie in (0,1)");
    }
}

ROCPoint bound_point(const char* label, double p, double beta, double alpha) {
    ROCPoint pt;
    pt.p = p;
    pt.q = 0.0;
    pt.beta = beta;
    pt.alpha = alpha;
    pt.kind = PointKind::Bound;
    pt.label = label;
    return pt;
}

}  // namespace

ErrorPair fidelity_lb_point(double f, double p) {
    require_unit(f, "F");
    require_open_unit(p, "p");
    const double r = 1.0 - 4.0 * p * (1.0 - p) * f * f;
    if (r < 1e-14) {
        throw DegenerateParameter("fidelity LB is degenerate at (F,p)=(1,1/2)");
    }
    const double sq = std::sqrt(r);
    ErrorPair e;
    e.alpha = (2.0 * (1.0 - p) * f * f - 1.0 + sq) / (2.0 * sq);
    e.beta = (2.0 * p * f * f - 1.0 + sq) / (2.0 * sq);
    e.alpha = std::clamp(e.alpha, 0.0, 1.0);
    e.beta = std::clamp(e.beta, 0.0, 1.0);
    return e;
}

double fidelity_lb_alpha(double f, double beta) {
    require_unit(f, "F");
    require_unit(beta, "beta");
    const double f2 = f * f;
    if (beta >= f2) return 0.0;
    const double val =
        beta - 2.0 * beta * f2 +
        f * (f - 2.0 * std::sqrt((1.0 - beta) * beta * (1.0 - f2)));
    return std::clamp(val, 0.0, 1.0);
}

double fidelity_ub_alpha(double f, double beta) {
    require_unit(f, "F");
    require_unit(beta, "beta");
    if (f == 0.0) return 0.0;
    const double f2 = f * f;
    double val;
    if (beta <= f2 / 2.0) {
        val = 1.0 - beta / f2;
    } else if (beta <= 0.5) {
        val = f2 / (4.0 * beta);
    } else {
        val = (1.0 - beta) * f2;
    }
    return std::clamp(val, 0.0, 1.0);
}

ErrorPair caqcb_point(double q_s0, double s0, double p) {
    if (!(q_s0 > 0.0 && q_s0 <= 1.0)) {
        throw ParameterOutOfRange("Q_{s0} must lie in (0,1]");
    }
    require_open_unit(s0, "s0");
    require_open_unit(p, "p");
    ErrorPair e;
    e.alpha = std::pow((1.0 - p) / p, s0) * (1.0 - s0) * q_s0;
    e.beta = std::pow(p / (1.0 - p), 1.0 - s0) * s0 * q_s0;
    return e;
}

double caqcb_alpha(double q_s0, double s0, double beta) {
    if (!(q_s0 > 0.0 && q_s0 <= 1.0)) {
        throw ParameterOutOfRange("Q_{s0} must lie in (0,1]");
    }
    require_open_unit(s0, "s0");
    require_unit(beta, "beta");
    const double knot_low = s0 * std::pow(q_s0, 1.0 / s0);
    double val;
    if (beta <= knot_low) {
        val = 1.0 - beta * std::pow(q_s0, -1.0 / s0);
    } else if (beta <= s0) {
        val = (1.0 - s0) * std::pow(q_s0, 1.0 / (1.0 - s0)) *
              std::pow(s0 / beta, s0 / (1.0 - s0));
    } else {
        val = (1.0 - beta) * std::pow(q_s0, 1.0 / (1.0 - s0));
    }
    return std::clamp(val, 0.0, 1.0);
}

ErrorPair oaqcb_point(const QsEvaluator& q, double p) {
    require_open_unit(p, "p");
    const double val = q.value(p);
    if (!(val > 0.0)) {
        throw ParameterOutOfRange("Q_p must be positive");
    }
    const double logderiv = q.derivative(p) / val;
    ErrorPair e;
    e.alpha = std::exp(-p * logderiv) * (1.0 - p) * val;
    e.beta = std::exp((1.0 - p) * logderiv) * p * val;
    return e;
}

double binary_entropy(double eps) {
    require_unit(eps, "eps");
    double h = 0.0;
    if (eps > 0.0) h -= eps * std::log2(eps);
    if (eps < 1.0) h -= (1.0 - eps) * std::log2(1.0 - eps);
    return h;
}

double qre_lb_alpha(double s21_bits, double beta) {
    if (!(beta >= 0.0 && beta < 1.0)) {
        throw ParameterOutOfRange("beta must lie in [0,1)");
    }
    if (std::isinf(s21_bits)) return 0.0;
    return std::exp2(-(s21_bits + binary_entropy(beta)) / (1.0 - beta));
}

double qre_lb_beta(double s12_bits, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw ParameterOutOfRange("alpha must lie in [0,1)");
    }
    if (std::isinf(s12_bits)) return 0.0;
    return std::exp2(-(s12_bits + binary_entropy(alpha)) / (1.0 - alpha));
}

ROCCurve fidelity_lb_curve(double f, const std::vector<double>& beta_grid) {
    ROCCurve c;
    for (double b : beta_grid) {
        c.points.push_back(bound_point("fidLB", -1.0, b, fidelity_lb_alpha(f, b)));
    }
    sort_curve(c);
    return c;
}

ROCCurve fidelity_ub_curve(double f, const std::vector<double>& beta_grid) {
    ROCCurve c;
    for (double b : beta_grid) {
        c.points.push_back(bound_point("fidUB", -1.0, b, fidelity_ub_alpha(f, b)));
    }
    sort_curve(c);
    return c;
}

ROCCurve caqcb_curve(double q_s0, double s0, const std::vector<double>& beta_grid) {
    ROCCurve c;
    for (double b : beta_grid) {
        c.points.push_back(bound_point("CAQCB", -1.0, b, caqcb_alpha(q_s0, s0, b)));
    }
    sort_curve(c);
    return c;
}

ROCCurve oaqcb_curve(const QsEvaluator& q, const std::vector<double>& p_grid) {
    ROCCurve c;
    for (double p : p_grid) {
        if (!(p > 0.0 && p < 1.0)) continue;
        ErrorPair e = oaqcb_point(q, p);
        c.points.push_back(bound_point("OAQCB", p, e.beta, e.alpha));
    }
    sort_curve(c);
    return c;
}

ROCCurve qre_lb_alpha_curve(double s21_bits, const std::vector<double>& beta_grid) {
    ROCCurve c;
    for (double b : beta_grid) {
        const double a = (b < 1.0) ? qre_lb_alpha(s21_bits, b) : 0.0;
        c.points.push_back(bound_point("QRE-LBalpha", -1.0, b, a));
    }
    sort_curve(c);
    return c;
}

ROCCurve qre_lb_beta_curve(double s12_bits, const std::vector<double>& alpha_grid) {
    ROCCurve c;
    for (double a : alpha_grid) {
        const double b = (a < 1.0) ? qre_lb_beta(s12_bits, a) : 0.0;
        c.points.push_back(bound_point("QRE-LBbeta", -1.0, b, a));
    }
    sort_curve(c);
    return c;
}

std::vector<double> uniform_grid(int n) {
    std::vector<double> g;
    g.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        g.push_back(static_cast<double>(i) / (n - 1.0));
    }
    return g;
}

}  // namespace qroc
