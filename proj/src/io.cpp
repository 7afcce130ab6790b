#include "qroc/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qroc {

namespace {

using nlohmann::json;

Complex parse_complex(const json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw MalformedInput("complex entries must be [re, im] pairs");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

StateSpec parse_density(const json& j) {
    const int dim = j.at("dim").get<int>();
    const json& rows = j.at("matrix");
    if (dim < 1 || !rows.is_array() || static_cast<int>(rows.size()) != dim) {
        throw DimensionMismatch("matrix row count does not match dim");
    }
    MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const json& row = rows[static_cast<size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != dim) {
            throw DimensionMismatch("matrix column count does not match dim");
        }
        for (int c = 0; c < dim; ++c) {
            m(r, c) = parse_complex(row[static_cast<size_t>(c)]);
        }
    }
    StateSpec spec;
    spec.kind = StateSpec::Kind::Density;
    spec.density = validate_density(m);
    return spec;
}

StateSpec parse_gaussian(const json& j) {
    const int modes = j.at("modes").get<int>();
    const json& jm = j.at("mean");
    const json& jc = j.at("cov");
    if (modes < 1 || static_cast<int>(jm.size()) != 2 * modes ||
        static_cast<int>(jc.size()) != 2 * modes) {
        throw DimensionMismatch("mean/cov size does not match modes");
    }
    VectorXd mean(2 * modes);
    MatrixXd cov(2 * modes, 2 * modes);
    for (int i = 0; i < 2 * modes; ++i) {
        mean(i) = jm[static_cast<size_t>(i)].get<double>();
        const json& row = jc[static_cast<size_t>(i)];
        if (static_cast<int>(row.size()) != 2 * modes) {
            throw DimensionMismatch("cov is not square");
        }
        for (int k = 0; k < 2 * modes; ++k) {
            cov(i, k) = row[static_cast<size_t>(k)].get<double>();
        }
    }
    StateSpec spec;
    spec.kind = StateSpec::Kind::Gaussian;
    spec.gaussian = validate_gaussian(mean, cov, modes);
    return spec;
}

}  // namespace

StateSpec parse_state_spec(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("invalid JSON: ") + e.what());
    }
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "density") return parse_density(j);
        if (kind == "gaussian") return parse_gaussian(j);
        if (kind == "pure-overlap") {
            StateSpec spec;
            spec.kind = StateSpec::Kind::PureOverlap;
            spec.fidelity = j.at("fidelity").get<double>();
            if (spec.fidelity < 0.0 || spec.fidelity > 1.0) {
                throw ParameterOutOfRange("fidelity must lie in [0,1]");
            }
            return spec;
        }
        throw UnsupportedInput("unknown state kind: " + kind);
    } catch (const json::exception& e) {
        throw MalformedInput(std::string("malformed state document: ") + e.what());
    }
}

StateSpec load_state_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open state file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_state_spec(ss.str());
}

std::vector<CurveRecord> records_from_curve(const ROCCurve& curve,
                                            const std::string& default_bound) {
    std::vector<CurveRecord> out;
    out.reserve(curve.points.size());
    for (const ROCPoint& pt : curve.points) {
        CurveRecord rec;
        rec.bound = pt.label.empty() ? default_bound : pt.label;
        if (pt.kind == PointKind::KernelSegment) {
            rec.bound = default_bound + "-kernel";
        }
        if (pt.p >= 0.0) rec.p = pt.p;
        if (pt.kind != PointKind::Bound || pt.p >= 0.0) rec.q = pt.q;
        rec.beta = pt.beta;
        rec.alpha = pt.alpha;
        out.push_back(std::move(rec));
    }
    return out;
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, std::vector<CurveRecord> records) {
    std::stable_sort(records.begin(), records.end(),
                     [](const CurveRecord& a, const CurveRecord& b) {
                         if (a.bound != b.bound) return a.bound < b.bound;
                         return a.beta < b.beta;
                     });
    os << "bound,p,q,beta,alpha\n";
    for (const CurveRecord& r : records) {
        os << r.bound << ',';
        if (r.p) os << format_value(*r.p);
        os << ',';
        if (r.q) os << format_value(*r.q);
        os << ',' << format_value(r.beta) << ',' << format_value(r.alpha) << '\n';
    }
}

void write_csv_file(const std::string& path, std::vector<CurveRecord> records) {
    std::ofstream out(path);
    if (!out) throw UnsupportedInput("cannot open output file: " + path);
    write_csv(out, std::move(records));
}

std::vector<CurveRecord> parse_csv(std::istream& is) {
    std::vector<CurveRecord> out;
    std::string line;
    if (!std::getline(is, line) || line != "bound,p,q,beta,alpha") {
        throw MalformedInput("missing or unexpected CSV header");
    }
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        while (fields.size() < 5) fields.emplace_back();
        CurveRecord rec;
        rec.bound = fields[0];
        if (!fields[1].empty()) rec.p = std::stod(fields[1]);
        if (!fields[2].empty()) rec.q = std::stod(fields[2]);
        rec.beta = std::stod(fields[3]);
        rec.alpha = std::stod(fields[4]);
        out.push_back(std::move(rec));
    }
    return out;
}

namespace {

double plot_coord(double v, bool log_axes) {
    if (!log_axes) return v;
    return std::log10(std::max(v, 1e-12));
}

const char* kPalette[] = {"#1b6ca8", "#c0392b", "#27ae60", "#8e44ad",
                          "#d35400", "#16a085", "#7f8c8d", "#2c3e50"};

}  // namespace

void write_svg(const std::string& path, const std::vector<CurveRecord>& records,
               bool log_axes) {
    constexpr double kW = 640.0, kH = 480.0, kMargin = 50.0;
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (const CurveRecord& r : records) {
        const double x = plot_coord(r.beta, log_axes);
        const double y = plot_coord(r.alpha, log_axes);
        lo_x = std::min(lo_x, x);
        hi_x = std::max(hi_x, x);
        lo_y = std::min(lo_y, y);
        hi_y = std::max(hi_y, y);
    }
    if (records.empty() || hi_x <= lo_x) {
        lo_x = 0.0;
        hi_x = 1.0;
    }
    if (records.empty() || hi_y <= lo_y) {
        lo_y = 0.0;
        hi_y = 1.0;
    }
    auto sx = [&](double v) {
        return kMargin + (plot_coord(v, log_axes) - lo_x) / (hi_x - lo_x) *
                             (kW - 2 * kMargin);
    };
    auto sy = [&](double v) {
        return kH - kMargin - (plot_coord(v, log_axes) - lo_y) / (hi_y - lo_y) *
                                  (kH - 2 * kMargin);
    };

    std::vector<std::string> bounds;
    for (const CurveRecord& r : records) {
        if (std::find(bounds.begin(), bounds.end(), r.bound) == bounds.end()) {
            bounds.push_back(r.bound);
        }
    }
    std::sort(bounds.begin(), bounds.end());

    std::ofstream out(path);
    if (!out) throw UnsupportedInput("cannot open SVG output: " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
        << "\" height=\"" << kH << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
        << kW - 2 * kMargin << "\" height=\"" << kH - 2 * kMargin
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (size_t bi = 0; bi < bounds.size(); ++bi) {
        std::vector<CurveRecord> pts;
        for (const CurveRecord& r : records) {
            if (r.bound == bounds[bi]) pts.push_back(r);
        }
        std::sort(pts.begin(), pts.end(),
                  [](const CurveRecord& a, const CurveRecord& b) {
                      return a.beta < b.beta;
                  });
        out << "<polyline fill=\"none\" stroke=\""
            << kPalette[bi % (sizeof(kPalette) / sizeof(kPalette[0]))]
            << "\" stroke-width=\"1.5\" points=\"";
        for (const CurveRecord& r : pts) {
            out << sx(r.beta) << ',' << sy(r.alpha) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << kW - kMargin + 4 << "\" y=\""
            << kMargin + 16.0 * static_cast<double>(bi + 1)
            << "\" font-size=\"11\" fill=\""
            << kPalette[bi % (sizeof(kPalette) / sizeof(kPalette[0]))] << "\">"
            << bounds[bi] << "</text>\n";
    }
    out << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
        << "\" font-size=\"12\" text-anchor=\"middle\">beta"
        << (log_axes ? " (log10)" : "") << "</text>\n"
        << "<text x=\"14\" y=\"" << kH / 2
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << kH / 2 << ")\">alpha" << (log_axes ? " (log10)" : "") << "</text>\n"
        << "</svg>\n";
}

void write_error_json(std::ostream& os, int exit_code, const std::string& kind,
                      const std::string& message) {
    json j;
    j["error"] = kind;
    j["exit_code"] = exit_code;
    j["message"] = message;
    os << j.dump() << '\n';
}

}  // namespace qroc
