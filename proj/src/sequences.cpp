#include "qroc/sequences.hpp"

#include <cmath>

namespace qroc {

namespace {

// Fidelity LB point on the closed interval [0,1]; the parametric formulas
// are continuous at the endpoints whenever F < 1.  The only degenerate
// combination is (F,p)=(1,1/2), where the limit along F->1 is (1/2,1/2).
ErrorPair lb_point_closed(double f, double p) {
    const double r = 1.0 - 4.0 * p * (1.0 - p) * f * f;
    if (r < 1e-14) {
        return ErrorPair{0.5, 0.5};
    }
    const double sq = std::sqrt(r);
    ErrorPair e;
    e.alpha = (2.0 * (1.0 - p) * f * f - 1.0 + sq) / (2.0 * sq);
    e.beta = (2.0 * p * f * f - 1.0 + sq) / (2.0 * sq);
    return e;
}

void require_unit(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ParameterOutOfRange(std::string(name) + " must lie in [0,1]");
    }
}

}  // namespace

ErrorPair nonadaptive_three_copy(double f1, double p, ThreeCopyRule rule) {
    require_unit(f1, "F1");
    if (!(p > 0.0 && p < 1.0)) throw ParameterOutOfRange("p must lie in (0,1)");
    ErrorPair single = lb_point_closed(f1, p);
    const double a = single.alpha;
    const double b = single.beta;
    ErrorPair e;
    switch (rule) {
        case ThreeCopyRule::AllAgree:  // decide rho1 only on unanimous rho1
            e.alpha = 1.0 - std::pow(1.0 - a, 3);
            e.beta = b * b * b;
            break;
        case ThreeCopyRule::MajorityVote:
            e.alpha = 3.0 * a * a - 2.0 * a * a * a;
            e.beta = 3.0 * b * b - 2.0 * b * b * b;
            break;
        case ThreeCopyRule::AnyAgree:  // decide rho2 only on unanimous rho2
            e.alpha = a * a * a;
            e.beta = 1.0 - std::pow(1.0 - b, 3);
            break;
    }
    return e;
}

SequencePlan adaptive_parameters(double p0, const std::vector<double>& fidelities) {
    if (!(p0 > 0.0 && p0 < 1.0)) throw ParameterOutOfRange("p0 must lie in (0,1)");
    SequencePlan plan;
    plan.p0 = p0;
    plan.fidelities = fidelities;
    double product_sq = 1.0;
    for (double f : fidelities) {
        require_unit(f, "fidelity");
        product_sq *= f * f;
        const double radicand = 1.0 - 4.0 * p0 * (1.0 - p0) * product_sq;
        const double root = std::sqrt(std::max(radicand, 0.0));
        plan.branch_parameters.emplace_back(0.5 * (1.0 - root), 0.5 * (1.0 + root));
    }
    return plan;
}

ErrorPair adaptive_sequence_errors(double p0, double f1, double f2) {
    if (!(p0 > 0.0 && p0 < 1.0)) throw ParameterOutOfRange("p0 must lie in (0,1)");
    require_unit(f1, "F1");
    require_unit(f2, "F2");
    const double root = std::sqrt(1.0 - 4.0 * p0 * (1.0 - p0) * f1 * f1);
    const double p_minus = 0.5 * (1.0 - root);
    const double p_plus = 0.5 * (1.0 + root);
    ErrorPair first = lb_point_closed(f1, p0);
    // An outcome favoring rho1 raises the weight on rho1, so it steers to
    // the plus root; an outcome favoring rho2 steers to the minus root.
    ErrorPair after_rho1 = lb_point_closed(f2, p_plus);
    ErrorPair after_rho2 = lb_point_closed(f2, p_minus);
    ErrorPair e;
    e.alpha = (1.0 - first.alpha) * after_rho1.alpha + first.alpha * after_rho2.alpha;
    e.beta = first.beta * after_rho1.beta + (1.0 - first.beta) * after_rho2.beta;
    return e;
}

}  // namespace qroc
