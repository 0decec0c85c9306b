#include "cauchydual/report.hpp"

#include <algorithm>

#include "cauchydual/error.hpp"

namespace cauchydual {

using nlohmann::json;

namespace {

constexpr const char* kModule = "cli_reports";

void require_schema(const json& j) {
    if (j.value("schema", 0) != kSchemaVersion)
        throw Error(ErrorKind::ParseError, kModule, "unsupported report schema");
}

json complex_list(const std::vector<CScalar>& v) {
    json out = json::array();
    for (CScalar z : v) out.push_back(complex_to_json(z));
    return out;
}

std::vector<CScalar> complex_list_from(const json& j) {
    std::vector<CScalar> out;
    for (const auto& e : j) out.push_back(complex_from_json(e));
    return out;
}

}  // namespace

json complex_to_json(CScalar z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

CScalar complex_from_json(const json& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw Error(ErrorKind::ParseError, kModule, "complex value must be {\"re\", \"im\"}");
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(i, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw Error(ErrorKind::ParseError, kModule, "matrix must be an array of rows");
    const std::size_t r = j.size();
    const std::size_t c = r ? j[0].size() : 0;
    CMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (j[i].size() != c) throw Error(ErrorKind::ParseError, kModule, "ragged matrix");
        for (std::size_t k = 0; k < c; ++k) m(i, k) = complex_from_json(j[i][k]);
    }
    return m;
}

Decision decision_from_string(std::string_view s) {
    for (auto d : {Decision::NotSubnormal, Decision::SubnormalNumeric, Decision::Inconclusive})
        if (to_string(d) == s) return d;
    throw Error(ErrorKind::ParseError, kModule, "unknown decision " + std::string(s));
}

DecisionPath path_from_string(std::string_view s) {
    for (auto p : {DecisionPath::OffDiagonalNonzero, DecisionPath::PsdViolation, DecisionPath::OffDiagonalZero,
                   DecisionPath::GrayZone, DecisionPath::PremiseFailed})
        if (to_string(p) == s) return p;
    throw Error(ErrorKind::ParseError, kModule, "unknown decision path " + std::string(s));
}

std::string_view to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "PASS";
        case CheckStatus::Fail: return "FAIL";
        case CheckStatus::NotApplicable: return "NOT-APPLICABLE";
    }
    return "FAIL";
}

CheckStatus check_status_from_string(std::string_view s) {
    for (auto c : {CheckStatus::Pass, CheckStatus::Fail, CheckStatus::NotApplicable})
        if (to_string(c) == s) return c;
    throw Error(ErrorKind::ParseError, kModule, "unknown check status " + std::string(s));
}

bool PaperCheckReport::passed() const {
    return std::none_of(items.begin(), items.end(), [](const CheckItem& c) { return c.status == CheckStatus::Fail; });
}

// ---------------------------------------------------------------- evidence

void to_json(json& j, const PairEvidence& e) {
    j = json{{"r", e.r},
             {"t", e.t},
             {"product", complex_to_json(e.product)},
             {"premise_ok", e.premise_ok},
             {"S", complex_to_json(e.S_rt)},
             {"S_scale", e.S_scale},
             {"normalized", e.normalized()}};
}

void from_json(const json& j, PairEvidence& e) {
    e.r = j.at("r").get<std::size_t>();
    e.t = j.at("t").get<std::size_t>();
    e.product = complex_from_json(j.at("product"));
    e.premise_ok = j.at("premise_ok").get<bool>();
    e.S_rt = complex_from_json(j.at("S"));
    e.S_scale = j.at("S_scale").get<double>();
}

void to_json(json& j, const PsdProbe& p) {
    j = json{{"l", p.l}, {"N", p.N}, {"min_eig", p.min_eig}, {"trace", p.trace}, {"violation", p.violation}};
}

void from_json(const json& j, PsdProbe& p) {
    p.l = j.at("l").get<int>();
    p.N = j.at("N").get<int>();
    p.min_eig = j.at("min_eig").get<double>();
    p.trace = j.at("trace").get<double>();
    p.violation = j.at("violation").get<bool>();
}

void to_json(json& j, const DualProbe& p) {
    j = json{{"n_max", p.n_max},
             {"trials", p.trials},
             {"N", p.N},
             {"most_negative", p.most_negative},
             {"most_negative_2N", p.most_negative_2N},
             {"witness_n", p.witness_n},
             {"witness", complex_list(p.witness)},
             {"truncation_caution", p.truncation_caution},
             {"dual_norm", p.dual_norm},
             {"dual_norm_2N", p.dual_norm_2N},
             {"corner_deviation", p.corner_deviation}};
}

void from_json(const json& j, DualProbe& p) {
    p.n_max = j.at("n_max").get<int>();
    p.trials = j.at("trials").get<int>();
    p.N = j.at("N").get<std::size_t>();
    p.most_negative = j.at("most_negative").get<double>();
    p.most_negative_2N = j.at("most_negative_2N").get<double>();
    p.witness_n = j.at("witness_n").get<int>();
    p.witness = complex_list_from(j.at("witness"));
    p.truncation_caution = j.at("truncation_caution").get<bool>();
    p.dual_norm = j.at("dual_norm").get<double>();
    p.dual_norm_2N = j.at("dual_norm_2N").get<double>();
    p.corner_deviation = j.at("corner_deviation").get<double>();
}

void to_json(json& j, const OracleSummary& o) {
    j = json{{"N", o.N},
             {"trials", o.trials},
             {"n_max", o.n_max},
             {"b2_max", o.b2_max},
             {"bn_max", o.bn_max},
             {"gram_crosscheck", o.gram_crosscheck},
             {"quadrature",
              {{"N", o.quadrature.N},
               {"closed_form_deviation", o.quadrature.closed_form_deviation},
               {"refinement_change", o.quadrature.refinement_change}}},
             {"dual_probe", o.probe},
             {"flags", o.flags}};
}

void from_json(const json& j, OracleSummary& o) {
    o.N = j.at("N").get<std::size_t>();
    o.trials = j.at("trials").get<int>();
    o.n_max = j.at("n_max").get<int>();
    o.b2_max = j.at("b2_max").get<double>();
    o.bn_max = j.at("bn_max").get<double>();
    o.gram_crosscheck = j.at("gram_crosscheck").get<double>();
    const auto& q = j.at("quadrature");
    o.quadrature.N = q.at("N").get<std::size_t>();
    o.quadrature.closed_form_deviation = q.at("closed_form_deviation").get<double>();
    o.quadrature.refinement_change = q.at("refinement_change").get<double>();
    o.probe = j.at("dual_probe").get<DualProbe>();
    o.flags = j.at("flags").get<std::vector<std::string>>();
}

// ---------------------------------------------------------------- analyze

void to_json(json& j, const Report& r) {
    json verdict{{"decision", to_string(r.verdict.decision)},
                 {"path", to_string(r.verdict.path)},
                 {"max_normalized", r.verdict.max_normalized},
                 {"alphas_distinct", r.verdict.alphas_distinct},
                 {"pairs", r.verdict.pairs},
                 {"psd_probes", r.verdict.probes}};
    j = json{{"schema", r.schema},
             {"command", r.command},
             {"measure", r.measure},
             {"alphas", complex_list(r.alphas)},
             {"d", r.d},
             {"identity_residual", r.identity_residual},
             {"fprime", complex_list(r.fprime)},
             {"gram", {{"D", matrix_to_json(r.D)}, {"B", matrix_to_json(r.B)}, {"asymmetry", r.gram_asymmetry}}},
             {"form", {{"C", matrix_to_json(r.C)}, {"refit_residual", r.refit_residual}, {"schur_sup", r.schur_sup}}},
             {"S_diag", r.S_diag},
             {"verdict", std::move(verdict)},
             {"policy", r.policy}};
    if (r.oracle) j["oracle"] = *r.oracle;
    if (r.timings) j["timings"] = *r.timings;
}

void from_json(const json& j, Report& r) {
    require_schema(j);
    r.schema = j.at("schema").get<int>();
    r.command = j.at("command").get<std::string>();
    r.measure = j.at("measure");
    r.alphas = complex_list_from(j.at("alphas"));
    r.d = j.at("d").get<double>();
    r.identity_residual = j.at("identity_residual").get<double>();
    r.fprime = complex_list_from(j.at("fprime"));
    const auto& g = j.at("gram");
    r.D = matrix_from_json(g.at("D"));
    r.B = matrix_from_json(g.at("B"));
    r.gram_asymmetry = g.at("asymmetry").get<double>();
    const auto& f = j.at("form");
    r.C = matrix_from_json(f.at("C"));
    r.refit_residual = f.at("refit_residual").get<double>();
    r.schur_sup = f.at("schur_sup").get<double>();
    r.S_diag = j.at("S_diag").get<std::vector<double>>();
    r.policy = j.at("policy").get<NumericPolicy>();
    const auto& v = j.at("verdict");
    r.verdict.decision = decision_from_string(v.at("decision").get<std::string>());
    r.verdict.path = path_from_string(v.at("path").get<std::string>());
    r.verdict.max_normalized = v.at("max_normalized").get<double>();
    r.verdict.alphas_distinct = v.at("alphas_distinct").get<bool>();
    r.verdict.pairs = v.at("pairs").get<std::vector<PairEvidence>>();
    r.verdict.probes = v.at("psd_probes").get<std::vector<PsdProbe>>();
    r.verdict.tolerances = r.policy;
    r.oracle.reset();
    if (j.contains("oracle")) r.oracle = j.at("oracle").get<OracleSummary>();
    r.timings.reset();
    if (j.contains("timings")) r.timings = j.at("timings").get<std::map<std::string, double>>();
}

// ---------------------------------------------------------------- paper-check

void to_json(json& j, const CheckItem& c) {
    j = json{{"name", c.name},
             {"status", to_string(c.status)},
             {"deviation", c.deviation},
             {"tolerance", c.tolerance},
             {"detail", c.detail}};
}

void from_json(const json& j, CheckItem& c) {
    c.name = j.at("name").get<std::string>();
    c.status = check_status_from_string(j.at("status").get<std::string>());
    c.deviation = j.at("deviation").get<double>();
    c.tolerance = j.at("tolerance").get<double>();
    c.detail = j.at("detail").get<std::string>();
}

void to_json(json& j, const PaperCheckReport& r) {
    j = json{{"schema", r.schema},
             {"command", r.command},
             {"measure", r.measure},
             {"rotation", r.rotation},
             {"closed_form_applicable", r.closed_form_applicable},
             {"items", r.items},
             {"decision", r.decision},
             {"path", r.path},
             {"passed", r.passed()}};
}

void from_json(const json& j, PaperCheckReport& r) {
    require_schema(j);
    r.schema = j.at("schema").get<int>();
    r.command = j.at("command").get<std::string>();
    r.measure = j.at("measure");
    r.rotation = j.at("rotation").get<std::string>();
    r.closed_form_applicable = j.at("closed_form_applicable").get<bool>();
    r.items = j.at("items").get<std::vector<CheckItem>>();
    r.decision = j.at("decision").get<std::string>();
    r.path = j.at("path").get<std::string>();
}

// ---------------------------------------------------------------- kernel

void to_json(json& j, const KernelReport& r) {
    j = json{{"schema", r.schema},
             {"command", r.command},
             {"measure", r.measure},
             {"z", complex_to_json(r.z)},
             {"lambda", complex_to_json(r.lam)},
             {"K_omu", complex_to_json(r.k_omu)},
             {"K_perp", complex_to_json(r.k_perp)},
             {"K_full", complex_to_json(r.k_full)},
             {"K_B", complex_to_json(r.k_b)},
             {"difference", r.difference}};
}

void from_json(const json& j, KernelReport& r) {
    require_schema(j);
    r.schema = j.at("schema").get<int>();
    r.command = j.at("command").get<std::string>();
    r.measure = j.at("measure");
    r.z = complex_from_json(j.at("z"));
    r.lam = complex_from_json(j.at("lambda"));
    r.k_omu = complex_from_json(j.at("K_omu"));
    r.k_perp = complex_from_json(j.at("K_perp"));
    r.k_full = complex_from_json(j.at("K_full"));
    r.k_b = complex_from_json(j.at("K_B"));
    r.difference = j.at("difference").get<double>();
}

}  // namespace cauchydual
