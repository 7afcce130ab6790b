#ifndef QROC_IO_HPP
#define QROC_IO_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qroc/exact_roc.hpp"
#include "qroc/gaussian.hpp"

namespace qroc {

// Parsed state description from an input JSON document.
struct StateSpec {
    enum class Kind { Density, Gaussian, PureOverlap };
    Kind kind = Kind::Density;
    DensityMatrix density;           // Kind::Density
    GaussianState gaussian;          // Kind::Gaussian
    double fidelity = 0.0;           // Kind::PureOverlap
};

StateSpec parse_state_spec(const std::string& json_text);
StateSpec load_state_spec(const std::string& path);

// One CSV row. Missing p/q serialize as empty fields.
struct CurveRecord {
    std::string bound;
    std::optional<double> p;
    std::optional<double> q;
    double beta = 0.0;
    double alpha = 0.0;

    bool operator==(const CurveRecord&) const = default;
};

std::vector<CurveRecord> records_from_curve(const ROCCurve& curve,
                                            const std::string& default_bound);

// Fixed 17-significant-digit decimal formatting used everywhere a value is
// serialized, so identical runs are byte-identical.
std::string format_value(double v);

// Rows are sorted by (bound, beta) before emission; header
// "bound,p,q,beta,alpha".
void write_csv(std::ostream& os, std::vector<CurveRecord> records);
void write_csv_file(const std::string& path, std::vector<CurveRecord> records);
std::vector<CurveRecord> parse_csv(std::istream& is);

// Minimal standalone SVG scatter/line plot of alpha vs beta, one polyline per
// bound tag. log = log10 axes (values clamped at 1e-12).
void write_svg(const std::string& path, const std::vector<CurveRecord>& records,
               bool log_axes);

// One-line machine-readable error object for the diagnostic stream.
void write_error_json(std::ostream& os, int exit_code, const std::string& kind,
                      const std::string& message);

}  // namespace qroc

#endif
