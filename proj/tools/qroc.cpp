#include <CLI11.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "qroc/asymptotics.hpp"
#include "qroc/io.hpp"
#include "qroc/sequences.hpp"

namespace {

using namespace qroc;
using nlohmann::json;

void apply_thread_cap() {
    if (const char* env = std::getenv("QROC_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) Eigen::setNbThreads(n);
    }
}

// Constant evaluator for an abstract pure pair: Q_s = F^2 for every s.
class FlatQs : public QsEvaluator {
public:
    explicit FlatQs(double f) : q_(f * f) {}
    double value(double) const override { return q_; }
    double derivative(double) const override { return 0.0; }

private:
    double q_;
};

std::vector<double> interior_grid(int n) {
    std::vector<double> g;
    g.reserve(static_cast<size_t>(n));
    for (int i = 1; i <= n; ++i) {
        g.push_back(static_cast<double>(i) / (n + 1.0));
    }
    return g;
}

double minimize_qs(const QsEvaluator& q, double* q_star) {
    // Golden-section over [0,1]; ln Q_s is convex so Q_s is unimodal.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0, b = 1.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = q.value(c), fd = q.value(d);
    while (b - a > 1e-10) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = q.value(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = q.value(d);
        }
    }
    double s = 0.5 * (a + b);
    const double q0 = q.value(0.5);
    if (std::abs(q.value(s) - q0) < 1e-14 * std::max(1.0, q0)) s = 0.5;  // flat
    if (q_star) *q_star = q.value(s);
    return s;
}

// Everything the bound emitters need, assembled once per invocation.
struct Engine {
    double fidelity_1 = 1.0;           // single-copy fidelity
    double fidelity_deficit = 0.0;     // truncation error bar (Gaussian only)
    std::shared_ptr<const QsEvaluator> qs_1;
    double s12_nats = 0.0;             // S(rho1||rho2), may be +inf
    double s21_nats = 0.0;
};

Engine build_engine(const StateSpec& s1, const StateSpec& s2, int fock_cutoff,
                    bool enforce_deficit = true) {
    Engine e;
    if (s1.kind != s2.kind) {
        throw UnsupportedInput("the two states must have the same kind");
    }
    switch (s1.kind) {
        case StateSpec::Kind::Density: {
            e.fidelity_1 = fidelity(s1.density, s2.density);
            OverlapDecomposition d = overlap_decomposition(s1.density, s2.density);
            RelativeEntropies re = relative_entropies(d);
            e.s12_nats = re.s12;
            e.s21_nats = re.s21;
            e.qs_1 = std::make_shared<DecompositionQs>(std::move(d));
            break;
        }
        case StateSpec::Kind::Gaussian: {
            FidelityEstimate fe =
                gaussian_fidelity_truncated(s1.gaussian, s2.gaussian, fock_cutoff,
                                            enforce_deficit);
            e.fidelity_1 = fe.value;
            e.fidelity_deficit = fe.error_bar;
            e.qs_1 = gaussian_qs_evaluator(s1.gaussian, s2.gaussian);
            e.s12_nats = -e.qs_1->derivative(0.0) / e.qs_1->value(0.0);
            e.s21_nats = e.qs_1->derivative(1.0) / e.qs_1->value(1.0);
            break;
        }
        case StateSpec::Kind::PureOverlap: {
            e.fidelity_1 = s1.fidelity;
            if (std::abs(s1.fidelity - s2.fidelity) > 1e-15) {
                throw UnsupportedInput("pure-overlap inputs must agree on fidelity");
            }
            e.qs_1 = std::make_shared<FlatQs>(s1.fidelity);
            const bool same = s1.fidelity >= 1.0;
            e.s12_nats = same ? 0.0 : kInfinity;
            e.s21_nats = same ? 0.0 : kInfinity;
            break;
        }
    }
    return e;
}

constexpr double kLn2 = 0.69314718055994530942;

int cmd_exact(const std::string& f1, const std::string& f2, int grid,
              const std::string& out) {
    StateSpec s1 = load_state_spec(f1);
    StateSpec s2 = load_state_spec(f2);
    if (s1.kind != StateSpec::Kind::Density || s2.kind != StateSpec::Kind::Density) {
        throw UnsupportedInput("the exact engine accepts density inputs only");
    }
    std::vector<double> p_grid;
    if (grid > 0) {
        std::vector<double> cheb = chebyshev_p_grid(grid);
        p_grid.push_back(0.0);
        p_grid.insert(p_grid.end(), cheb.begin(), cheb.end());
        p_grid.push_back(1.0);
    }
    ROCCurve curve = roc_curve_exact(s1.density, s2.density, std::move(p_grid));
    write_csv_file(out, records_from_curve(curve, "exact"));
    return 0;
}

int cmd_bounds(const std::string& f1, const std::string& f2,
               std::vector<std::string> bounds, int copies, int grid,
               int fock_cutoff, bool enforce_deficit, const std::string& out,
               const std::string& svg, bool log_axes) {
    StateSpec s1 = load_state_spec(f1);
    StateSpec s2 = load_state_spec(f2);
    if (copies < 1) throw ParameterOutOfRange("--copies must be positive");
    if (grid < 2) throw ParameterOutOfRange("--grid must be at least 2");
    Engine e = build_engine(s1, s2, fock_cutoff, enforce_deficit);
    if (e.fidelity_deficit > 0.0) {
        json diag;
        diag["fidelity_truncation_error_bar"] = e.fidelity_deficit;
        std::cerr << diag.dump() << '\n';
    }

    const double f_n = ncopy_fidelity(e.fidelity_1, copies);
    std::shared_ptr<const QsEvaluator> qs = e.qs_1;
    if (copies > 1) qs = std::make_shared<TensorPowerQs>(e.qs_1, copies);
    const double s12_bits = e.s12_nats * copies / kLn2;
    const double s21_bits = e.s21_nats * copies / kLn2;

    if (bounds.empty()) {
        bounds = {"fidLB", "fidUB", "CAQCB", "OAQCB", "QRE-LBalpha", "QRE-LBbeta"};
    }
    const std::vector<double> beta_grid = uniform_grid(grid);
    const std::vector<double> p_grid = interior_grid(grid);

    std::vector<CurveRecord> records;
    auto append = [&records](const ROCCurve& c, const std::string& tag) {
        std::vector<CurveRecord> r = records_from_curve(c, tag);
        records.insert(records.end(), r.begin(), r.end());
    };
    for (const std::string& b : bounds) {
        if (b == "fidLB") {
            append(fidelity_lb_curve(f_n, beta_grid), "fidLB");
        } else if (b == "fidUB") {
            append(fidelity_ub_curve(f_n, beta_grid), "fidUB");
        } else if (b == "CAQCB") {
            double q_star = 0.0;
            const double s_star = minimize_qs(*qs, &q_star);
            append(caqcb_curve(q_star, s_star, beta_grid), "CAQCB");
        } else if (b == "OAQCB") {
            append(oaqcb_curve(*qs, p_grid), "OAQCB");
        } else if (b == "QRE-LBalpha") {
            append(qre_lb_alpha_curve(s21_bits, beta_grid), "QRE-LBalpha");
        } else if (b == "QRE-LBbeta") {
            append(qre_lb_beta_curve(s12_bits, beta_grid), "QRE-LBbeta");
        } else {
            throw ParameterOutOfRange("unknown bound tag: " + b);
        }
    }
    write_csv_file(out, records);
    if (!svg.empty()) write_svg(svg, records, log_axes);
    return 0;
}

int cmd_asymptotics(const std::string& f1, const std::string& f2, int p_points,
                    const std::string& out) {
    StateSpec s1 = load_state_spec(f1);
    StateSpec s2 = load_state_spec(f2);
    if (p_points < 1) throw ParameterOutOfRange("--p-grid must be positive");
    Engine e = build_engine(s1, s2, 64);

    SaturationReport rep =
        check_hoeffding_saturation(*e.qs_1, interior_grid(p_points), 1e-6);
    LogConvexityReport lc = logconvexity_check(*e.qs_1, 101, 1e-9);

    json j;
    j["stein"]["s12_nats"] =
        std::isinf(e.s12_nats) ? json("inf") : json(e.s12_nats);
    j["stein"]["s21_nats"] =
        std::isinf(e.s21_nats) ? json("inf") : json(e.s21_nats);
    j["saturation"]["worst_deviation"] = rep.worst_deviation;
    j["saturation"]["trivial"] = rep.trivial;
    j["saturation"]["pass"] = rep.pass;
    json rows = json::array();
    for (const SaturationReport::Row& r : rep.rows) {
        rows.push_back({{"p", r.p},
                        {"gamma_alpha", r.gamma_alpha},
                        {"gamma_beta", r.gamma_beta},
                        {"bmax", r.bmax},
                        {"s_max", r.s_max},
                        {"deviation", r.deviation}});
    }
    j["saturation"]["rows"] = std::move(rows);
    j["log_convexity"]["pass"] = lc.pass;
    j["log_convexity"]["min_second_difference"] = lc.min_second_difference;

    std::ofstream os(out);
    if (!os) throw MalformedInput("cannot open output file: " + out);
    os << j.dump(2) << '\n';
    return 0;
}

int cmd_sequence(double p0, bool p0_set, std::vector<double> fidelities,
                 const std::string& rule, int grid, const std::string& out) {
    if (fidelities.empty()) throw ParameterOutOfRange("--fidelities is required");
    for (double f : fidelities) {
        if (f < 0.0 || f > 1.0) throw ParameterOutOfRange("fidelities must lie in [0,1]");
    }
    std::vector<double> p_values;
    if (p0_set) {
        p_values.push_back(p0);
    } else {
        p_values = interior_grid(grid);
    }

    std::vector<CurveRecord> records;
    double max_residual = 0.0;
    for (double p : p_values) {
        CurveRecord rec;
        rec.p = p;
        ErrorPair pt{};
        if (rule == "adaptive") {
            if (fidelities.size() != 2) {
                throw ParameterOutOfRange("adaptive rule needs exactly two fidelities");
            }
            pt = adaptive_sequence_errors(p, fidelities[0], fidelities[1]);
            const double fprod = fidelities[0] * fidelities[1];
            // (F,p)=(1,1/2) is the lone degenerate combination; the limit
            // of the reference point along F->1 is the midpoint.
            const ErrorPair ref = (1.0 - 4.0 * p * (1.0 - p) * fprod * fprod < 1e-14)
                                      ? ErrorPair{0.5, 0.5}
                                      : fidelity_lb_point(fprod, p);
            max_residual = std::max(
                max_residual,
                std::max(std::abs(pt.alpha - ref.alpha), std::abs(pt.beta - ref.beta)));
            rec.bound = "seq-adaptive";
        } else {
            ThreeCopyRule r;
            if (rule == "a") r = ThreeCopyRule::AllAgree;
            else if (rule == "b") r = ThreeCopyRule::MajorityVote;
            else if (rule == "c") r = ThreeCopyRule::AnyAgree;
            else throw ParameterOutOfRange("rule must be one of a, b, c, adaptive");
            pt = nonadaptive_three_copy(fidelities[0], p, r);
            rec.bound = "seq-" + rule;
        }
        rec.alpha = pt.alpha;
        rec.beta = pt.beta;
        records.push_back(rec);
    }
    if (rule == "adaptive") {
        json diag;
        diag["identity_max_residual"] = max_residual;
        std::cout << diag.dump() << '\n';
    }
    write_csv_file(out, std::move(records));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();
    CLI::App app{"ROC curves and analytic bounds for binary quantum state "
                 "discrimination"};
    app.require_subcommand(1);

    std::string state1, state2, out, svg;
    int grid = 0, copies = 1, p_points = 9, fock_cutoff = 64;
    bool log_axes = false;
    std::vector<std::string> bound_tags;
    double p0 = 0.5;
    std::vector<double> fidelities;
    std::string rule = "adaptive";

    CLI::App* ex = app.add_subcommand("exact", "Exact ROC for density inputs");
    ex->add_option("state1", state1)->required();
    ex->add_option("state2", state2)->required();
    ex->add_option("--grid", grid, "Number of interior tangent points (0 = default)");
    ex->add_option("--out", out)->required();

    CLI::App* bd = app.add_subcommand("bounds", "Analytic ROC bounds");
    bd->add_option("state1", state1)->required();
    bd->add_option("state2", state2)->required();
    bd->add_option("--bounds", bound_tags, "Subset of fidLB,fidUB,CAQCB,OAQCB,QRE-LBalpha,QRE-LBbeta")
        ->delimiter(',');
    bd->add_option("--copies", copies);
    bd->add_option("--grid", grid, "Grid resolution (default 201)");
    bd->add_option("--cutoff", fock_cutoff, "Fock cutoff for Gaussian fidelity");
    bd->add_option("--out", out)->required();
    bd->add_option("--svg", svg);
    bd->add_flag("--log", log_axes);
    bool no_trunc_check = false;
    bd->add_flag("--no-truncation-check", no_trunc_check,
                 "Report the truncation error bar instead of failing on it");

    CLI::App* as = app.add_subcommand("asymptotics", "Exponents, Hoeffding saturation, Stein endpoints");
    as->add_option("state1", state1)->required();
    as->add_option("state2", state2)->required();
    as->add_option("--p-grid", p_points);
    as->add_option("--out", out)->required();

    CLI::App* sq = app.add_subcommand("sequence", "Measurement-sequence strategies");
    CLI::Option* p0_opt = sq->add_option("--p0", p0);
    sq->add_option("--fidelities", fidelities)->delimiter(',')->required();
    sq->add_option("--rule", rule, "a, b, c, or adaptive");
    sq->add_option("--grid", grid);
    sq->add_option("--out", out)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (ex->parsed()) return cmd_exact(state1, state2, grid, out);
        if (bd->parsed()) {
            if (grid == 0) grid = 201;
            return cmd_bounds(state1, state2, bound_tags, copies, grid, fock_cutoff,
                              !no_trunc_check, out, svg, log_axes);
        }
        if (as->parsed()) return cmd_asymptotics(state1, state2, p_points, out);
        if (sq->parsed()) {
            if (grid == 0) grid = 99;
            return cmd_sequence(p0, p0_opt->count() > 0, fidelities, rule, grid, out);
        }
    } catch (const qroc::ValidationError& err) {
        qroc::write_error_json(std::cerr, 2, "validation", err.what());
        return 2;
    } catch (const qroc::CapabilityError& err) {
        qroc::write_error_json(std::cerr, 3, "capability", err.what());
        return 3;
    } catch (const std::exception& err) {
        qroc::write_error_json(std::cerr, 4, "numerical", err.what());
        return 4;
    }
    return 0;
}
