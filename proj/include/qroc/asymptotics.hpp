#ifndef QROC_ASYMPTOTICS_HPP
#define QROC_ASYMPTOTICS_HPP

#include <vector>

#include "qroc/bounds.hpp"

namespace qroc {

// Multi-copy power laws: F_(N) = F^N, Q_s,(N) = Q_s^N.
double ncopy_fidelity(double f1, int n);
double ncopy_qs(double q1, int n);

// N-copy OAQCB from the single-copy evaluator:
// alpha_N = alpha_1^N / (1-p)^(N-1), beta_N = beta_1^N / p^(N-1).
ErrorPair oaqcb_ncopy_point(const QsEvaluator& q, double p, int n);

// Asymptotic decay rates achieved by the OAQCB at fixed p, in nats/copy.
struct ExponentPair {
    double gamma_alpha;
    double gamma_beta;
};

ExponentPair error_exponents(const QsEvaluator& q, double p);

// Quantum Hoeffding bound: b_max(r) = sup_{0<=s<1} (-s r - ln Q_s)/(1-s),
// valid for 0 < r < S(rho1||rho2).
struct HoeffdingResult {
    double value;
    double s_max;  // maximizing s
};

HoeffdingResult hoeffding_bmax(const QsEvaluator& q, double r);

// Checks b_max(gamma_beta(p)) = gamma_alpha(p) over a p grid.
struct SaturationReport {
    struct Row {
        double p;
        double gamma_alpha;
        double gamma_beta;
        double bmax;
        double s_max;
        double deviation;
    };
    std::vector<Row> rows;
    double worst_deviation;
    bool trivial;  // all exponents ~0 (identical states)
    bool pass;
};

SaturationReport check_hoeffding_saturation(const QsEvaluator& q,
                                            const std::vector<double>& p_grid,
                                            double tol);

// Second divided differences of ln Q_s over a uniform s grid.
struct LogConvexityReport {
    bool pass;
    double min_second_difference;
};

LogConvexityReport logconvexity_check(const QsEvaluator& q, int s_points,
                                      double tol);

}  // namespace qroc

#endif
