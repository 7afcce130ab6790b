#ifndef QROC_DV_STATES_HPP
#define QROC_DV_STATES_HPP

#include <limits>
#include <memory>
#include <vector>

#include "qroc/linalg.hpp"

namespace qroc {

// A validated finite-dimensional quantum state.
struct DensityMatrix {
    MatrixXcd matrix;

    Eigen::Index dim() const { return matrix.rows(); }
};

// Validates Hermiticity, positivity, and unit trace.
// Throws NonHermitianInput, NotPositiveSemidefinite, or TraceNotOne.
DensityMatrix validate_density(const MatrixXcd& matrix);

// F(rho1, rho2) = || sqrt(rho1) sqrt(rho2) ||_1
double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2);

// One entry per eigenvector pair: c = squared overlap, mu from rho1's
// spectrum, lambda from rho2's. Powers Q_s = sum c lambda^s mu^(1-s),
// its derivative, and the relative entropies.
struct OverlapDecomposition {
    struct Entry {
        double c;
        double lambda;  // eigenvalue of rho2
        double mu;      // eigenvalue of rho1
    };
    std::vector<Entry> entries;
};

OverlapDecomposition overlap_decomposition(const DensityMatrix& rho1,
                                           const DensityMatrix& rho2);

double q_s(const OverlapDecomposition& d, double s);

// d/ds of Q_s; endpoints use the 0 ln 0 = 0 convention, so the s=0 value is
// -S(rho1||rho2) and the s=1 value is S(rho2||rho1), in nats.
double q_s_derivative(const OverlapDecomposition& d, double s);

enum class EntropyUnit { Nats, Bits };

struct RelativeEntropies {
    double s12;  // S(rho1||rho2), +infinity when support containment fails
    double s21;  // S(rho2||rho1)
    EntropyUnit unit;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

RelativeEntropies relative_entropies(const OverlapDecomposition& d,
                                     EntropyUnit unit = EntropyUnit::Nats);

// Minimizer of Q_s over [0,1]. Returns s = 0.5 by convention when Q_s is
// flat (identical states).
struct ChernoffPoint {
    double s_star;
    double q_star;
};

ChernoffPoint chernoff_s_star(const OverlapDecomposition& d);

// Abstract map s -> (Q_s, dQ_s/ds) shared by the finite-dimensional and
// Gaussian back ends.
class QsEvaluator {
public:
    virtual ~QsEvaluator() = default;
    virtual double value(double s) const = 0;
    virtual double derivative(double s) const = 0;
};

// Q_s evaluator backed by an overlap decomposition.
class DecompositionQs : public QsEvaluator {
public:
    explicit DecompositionQs(OverlapDecomposition d) : d_(std::move(d)) {}
    double value(double s) const override { return q_s(d_, s); }
    double derivative(double s) const override { return q_s_derivative(d_, s); }
    const OverlapDecomposition& decomposition() const { return d_; }

private:
    OverlapDecomposition d_;
};

// N-fold tensor power: Q_s -> Q_s^N.
class TensorPowerQs : public QsEvaluator {
public:
    TensorPowerQs(std::shared_ptr<const QsEvaluator> base, int copies)
        : base_(std::move(base)), n_(copies) {}
    double value(double s) const override;
    double derivative(double s) const override;

private:
    std::shared_ptr<const QsEvaluator> base_;
    int n_;
};

}  // namespace qroc

#endif
