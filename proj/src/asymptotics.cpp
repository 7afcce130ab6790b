#include "qroc/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace qroc {

namespace {

// Stein endpoints from the evaluator: S12 = -dQ/ds|0, S21 = dQ/ds|1 (nats).
double stein_s12(const QsEvaluator& q) { return -q.derivative(0.0) / q.value(0.0); }
double stein_s21(const QsEvaluator& q) { return q.derivative(1.0) / q.value(1.0); }

}  // namespace

double ncopy_fidelity(double f1, int n) {
    if (!(f1 >= 0.0 && f1 <= 1.0)) throw ParameterOutOfRange("F must lie in [0,1]");
    if (n < 1) throw ParameterOutOfRange("N must be positive");
    return std::pow(f1, n);
}

double ncopy_qs(double q1, int n) {
    if (!(q1 >= 0.0 && q1 <= 1.0)) throw ParameterOutOfRange("Q must lie in [0,1]");
    if (n < 1) throw ParameterOutOfRange("N must be positive");
    return std::pow(q1, n);
}

ErrorPair oaqcb_ncopy_point(const QsEvaluator& q, double p, int n) {
    if (!(p > 0.0 && p < 1.0)) throw ParameterOutOfRange("p must lie in (0,1)");
    if (n < 1) throw ParameterOutOfRange("N must be positive");
    ErrorPair single = oaqcb_point(q, p);
    ErrorPair e;
    e.alpha = std::pow(single.alpha, n) / std::pow(1.0 - p, n - 1);
    e.beta = std::pow(single.beta, n) / std::pow(p, n - 1);
    return e;
}

ExponentPair error_exponents(const QsEvaluator& q, double p) {
    if (!(p > 0.0 && p < 1.0)) throw ParameterOutOfRange("p must lie in (0,1)");
    const double val = q.value(p);
    const double logderiv = q.derivative(p) / val;
    ExponentPair g;
    g.gamma_alpha = p * logderiv - std::log(val);
    g.gamma_beta = -(1.0 - p) * logderiv - std::log(val);
    return g;
}

HoeffdingResult hoeffding_bmax(const QsEvaluator& q, double r) {
    const double s12 = stein_s12(q);
    if (!(r > 0.0) || !(r < s12)) {
        throw RateOutOfRange("r must lie in (0, S(rho1||rho2))");
    }
    const double s_hi = 1.0 - 1e-6;
    auto objective = [&](double s) {
        return (-s * r - std::log(q.value(s))) / (1.0 - s);
    };
    // 2048-point scan, then golden-section around the best sample.
    const int n = 2048;
    int best = 0;
    double best_val = -kInfinity;
    for (int i = 0; i <= n; ++i) {
        const double s = s_hi * i / n;
        const double v = objective(s);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double a = (best > 0) ? s_hi * (best - 1) / n : 0.0;
    double b = (best < n) ? s_hi * (best + 1) / n : s_hi;
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = objective(x1);
    double f2 = objective(x2);
    while (b - a > 1e-8) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = objective(x2);
        }
    }
    HoeffdingResult out;
    out.s_max = 0.5 * (a + b);
    out.value = objective(out.s_max);
    // Boundary peak: the objective is 0/0 at s=1 when r -> 0; the analytic
    // limit there is S21 - r by l'Hopital.
    if (out.s_max > s_hi - 2.0 * s_hi / n) {
        const double limit = stein_s21(q) - r;
        if (limit > out.value) {
            out.value = limit;
            out.s_max = 1.0;
        }
    }
    return out;
}

SaturationReport check_hoeffding_saturation(const QsEvaluator& q,
                                            const std::vector<double>& p_grid,
                                            double tol) {
    SaturationReport report;
    report.worst_deviation = 0.0;
    report.trivial = true;
    for (double p : p_grid) {
        ExponentPair g = error_exponents(q, p);
        SaturationReport::Row row;
        row.p = p;
        row.gamma_alpha = g.gamma_alpha;
        row.gamma_beta = g.gamma_beta;
        if (g.gamma_alpha > 1e-12 || g.gamma_beta > 1e-12) report.trivial = false;
        if (g.gamma_beta > 1e-12) {
            HoeffdingResult h = hoeffding_bmax(q, g.gamma_beta);
            row.bmax = h.value;
            row.s_max = h.s_max;
            row.deviation = std::abs(h.value - g.gamma_alpha);
        } else {
            row.bmax = g.gamma_alpha;
            row.s_max = p;
            row.deviation = 0.0;
        }
        report.worst_deviation = std::max(report.worst_deviation, row.deviation);
        report.rows.push_back(row);
    }
    report.pass = report.worst_deviation <= tol;
    return report;
}

LogConvexityReport logconvexity_check(const QsEvaluator& q, int s_points,
                                      double tol) {
    if (s_points < 3) throw ParameterOutOfRange("need at least 3 grid points");
    std::vector<double> lnq(static_cast<size_t>(s_points));
    const double h = 1.0 / (s_points - 1.0);
    for (int i = 0; i < s_points; ++i) {
        lnq[static_cast<size_t>(i)] = std::log(q.value(i * h));
    }
    double min_dd = kInfinity;
    for (int i = 1; i + 1 < s_points; ++i) {
        const double dd = (lnq[static_cast<size_t>(i + 1)] - 2.0 * lnq[static_cast<size_t>(i)] +
                           lnq[static_cast<size_t>(i - 1)]) /
                          (h * h);
        min_dd = std::min(min_dd, dd);
    }
    return {min_dd >= -tol, min_dd};
}

}  // namespace qroc
