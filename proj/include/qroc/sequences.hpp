#ifndef QROC_SEQUENCES_HPP
#define QROC_SEQUENCES_HPP

#include <vector>

#include "qroc/bounds.hpp"

namespace qroc {

enum class ThreeCopyRule { AllAgree, MajorityVote, AnyAgree };  // cases a, b, c

// Three identical optimal single-copy measurements on a pure 3-copy pair,
// combined by the given Boolean decision rule.
ErrorPair nonadaptive_three_copy(double f1, double p, ThreeCopyRule rule);

// Branch parameters for an adaptive single-copy measurement sequence. The
// minus branch follows a "measured rho1" outcome, the plus branch a
// "measured rho2" outcome; the two branches are complementary.
struct SequencePlan {
    double p0;
    std::vector<double> fidelities;
    std::vector<std::pair<double, double>> branch_parameters;  // (p_i-, p_i+)
};

SequencePlan adaptive_parameters(double p0, const std::vector<double>& fidelities);

// Two-step adaptive sequence where only the final outcome decides. Equals
// the optimal errors for a pure pair with fidelity F1*F2.
ErrorPair adaptive_sequence_errors(double p0, double f1, double f2);

}  // namespace qroc

#endif
