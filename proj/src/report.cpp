#include "opsym/report.hpp"

#include <json.hpp>
#include <sstream>

namespace opsym {

namespace {

using nlohmann::json;

json vector_json(const Eigen::VectorXd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        out.push_back(row);
    }
    return out;
}

std::string format_basis(const Eigen::MatrixXd& basis) {
    std::ostringstream os;
    os.precision(6);
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        os << "(";
        for (Eigen::Index r = 0; r < basis.rows(); ++r) os << (r ? "," : "") << basis(r, c);
        os << ")" << (c + 1 < basis.cols() ? " " : "");
    }
    return os.str();
}

}  // namespace

std::string render_text(const AnalysisReport& r) {
    std::ostringstream os;
    os.precision(12);
    os << "operator " << r.operator_name << "  (n=" << r.n << ", k=" << r.k << ", dimV=" << r.dimV
       << ", dimE=" << r.dimE << ")\n";
    os << "  injectively elliptic : " << to_string(r.elliptic);
    if (r.elliptic != Verdict::No)
        os << "   min sigma = " << r.min_singular_value << ", C = " << r.ellipticity_constant;
    if (r.ellipticity_witness) os << "   witness xi = (" << *r.ellipticity_witness << ")";
    os << "\n";
    os << "  cancelling           : " << to_string(r.cancelling);
    if (r.cancelling != Verdict::NotApplicable) {
        os << "   intersection dim = " << r.intersection.dim();
        if (r.intersection.dim() > 0) os << "  basis " << format_basis(r.intersection.basis);
    }
    os << "\n";
    os << "  cocancelling         : " << to_string(r.cocancelling)
       << "   kernel intersection dim = " << r.kernel_intersection.dim() << "\n";
    os << "  weakly cancelling    : " << to_string(r.weakly_cancelling);
    if (r.weakly_cancelling == Verdict::Yes || r.weakly_cancelling == Verdict::No)
        os << "   max |integral| = " << r.weak.max_abs;
    os << "\n";
    if (r.compat_synthesized)
        os << "  compatibility L(xi)  : order " << r.compat_order
           << ", cocancelling(L) = " << to_string(r.compat_cocancelling)
           << (r.compat_cocancelling == r.cancelling ? "  [agrees with cancelling]"
                                                     : "  [MISMATCH with cancelling]")
           << "\n";
    os << "  trace: samples=" << r.cancelling_trace.samples_used
       << " stable=" << r.cancelling_trace.stable_rounds << " exact-check="
       << (r.cancelling_trace.exact_check_passed ? "ok" : "FAILED") << "  seed=" << r.seed
       << " tol=" << r.tol << "\n";
    return os.str();
}

std::string render_json(const AnalysisReport& r) {
    json j;
    j["format_version"] = 1;
    j["operator"] = r.operator_name;
    j["n"] = r.n;
    j["k"] = r.k;
    j["dimV"] = r.dimV;
    j["dimE"] = r.dimE;
    j["verdicts"] = {{"elliptic", to_string(r.elliptic)},
                     {"cancelling", to_string(r.cancelling)},
                     {"cocancelling", to_string(r.cocancelling)},
                     {"weakly_cancelling", to_string(r.weakly_cancelling)}};
    j["min_singular_value"] = r.min_singular_value;
    j["argmin"] = vector_json(r.argmin);
    j["ellipticity_constant"] = r.ellipticity_constant;
    if (r.ellipticity_witness) j["ellipticity_witness"] = *r.ellipticity_witness;
    j["intersection"] = {{"dim", r.intersection.dim()}, {"basis", matrix_json(r.intersection.basis)}};
    j["kernel_intersection"] = {{"dim", r.kernel_intersection.dim()},
                                {"basis", matrix_json(r.kernel_intersection.basis)}};
    j["weak_cancellation"] = {{"max_abs", r.weak.max_abs},
                              {"threshold", r.weak.threshold},
                              {"integrals", matrix_json(r.weak.integrals)}};
    j["compatibility"] = {{"synthesized", r.compat_synthesized},
                          {"order", r.compat_order},
                          {"cocancelling", to_string(r.compat_cocancelling)}};
    j["trace"] = {{"cancelling_samples", r.cancelling_trace.samples_used},
                  {"cancelling_stable", r.cancelling_trace.stable_rounds},
                  {"cancelling_exact_check", r.cancelling_trace.exact_check_passed},
                  {"cocancelling_samples", r.cocancelling_trace.samples_used},
                  {"cocancelling_stable", r.cocancelling_trace.stable_rounds},
                  {"cocancelling_exact_check", r.cocancelling_trace.exact_check_passed}};
    j["config"] = {{"seed", r.seed}, {"tol", r.tol}, {"samples", r.samples}};
    return j.dump(2) + "\n";
}

std::string render_text(const RatioTable& t) {
    std::ostringstream os;
    os.precision(6);
    os << "experiment " << t.experiment << " on " << t.operator_name << "  (grid N=" << t.grid_size
       << ", n=" << t.grid_dim << ", seed=" << t.seed << ")\n";
    for (const auto& row : t.rows)
        os << "  " << row.label << "  ratio=" << row.ratio << "  num=" << row.numerator
           << "  den=" << row.denominator << "\n";
    if (t.diagnosis) os << "  diagnosis: " << to_string(*t.diagnosis) << "\n";
    if (t.envelope > 0) os << "  envelope (max trial ratio): " << t.envelope << "\n";
    if (!t.notes.empty()) os << "  notes: " << t.notes << "\n";
    return os.str();
}

std::string render_json(const RatioTable& t) {
    json j;
    j["format_version"] = 1;
    j["experiment"] = t.experiment;
    j["operator"] = t.operator_name;
    j["grid_N"] = t.grid_size;
    j["grid_dim"] = t.grid_dim;
    j["seed"] = t.seed;
    j["rows"] = json::array();
    for (const auto& row : t.rows)
        j["rows"].push_back({{"label", row.label},
                             {"epsilon", row.epsilon},
                             {"ratio", row.ratio},
                             {"numerator", row.numerator},
                             {"denominator", row.denominator}});
    if (t.diagnosis) j["diagnosis"] = to_string(*t.diagnosis);
    j["envelope"] = t.envelope;
    j["notes"] = t.notes;
    return j.dump(2) + "\n";
}

std::string render_text(const GreensReport& r) {
    std::ostringstream os;
    os.precision(6);
    if (r.skipped) return "greens check skipped (e = 0, zero kernel)\n";
    os << "greens homogeneity check: shells r=" << r.r << " and 2r, " << r.shell_points
       << " lattice points\n";
    os << "  mean |K(x) - 2^{n-k} K(2x)| / mean |K(x)| = " << r.homogeneity_error << "  ["
       << (r.pass ? "PASS" : "FAIL") << " at 0.05]\n";
    os << "  mean |K| inner shell = " << r.mean_abs_inner
       << ", outer shell = " << r.mean_abs_outer << "\n";
    return os.str();
}

std::string render_json(const GreensReport& r) {
    json j;
    j["format_version"] = 1;
    j["skipped"] = r.skipped;
    j["r"] = r.r;
    j["shell_points"] = r.shell_points;
    j["homogeneity_error"] = r.homogeneity_error;
    j["pass"] = r.pass;
    j["mean_abs_inner"] = r.mean_abs_inner;
    j["mean_abs_outer"] = r.mean_abs_outer;
    return j.dump(2) + "\n";
}

}  // namespace opsym
