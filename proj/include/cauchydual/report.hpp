#pragma once

// JSON report types. Complex numbers serialize as {"re": x, "im": y} and
// matrices as arrays of rows. Every report carries "schema": 1.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cauchydual/numerics.hpp"
#include "cauchydual/operator_oracle.hpp"
#include "cauchydual/policy.hpp"
#include "cauchydual/subnormality.hpp"
#include "json.hpp"

namespace cauchydual {

inline constexpr int kSchemaVersion = 1;

nlohmann::json complex_to_json(CScalar z);
CScalar complex_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const nlohmann::json& j);

Decision decision_from_string(std::string_view s);
DecisionPath path_from_string(std::string_view s);

struct QuadratureSummary {
    std::size_t N = 0;
    double closed_form_deviation = 0.0;
    double refinement_change = 0.0;
};

struct OracleSummary {
    std::size_t N = 0;
    int trials = 0;
    int n_max = 0;
    double b2_max = 0.0;     // max |<B_2 v, v>| / ||v||^2
    double bn_max = 0.0;     // max <B_n v, v> / ||v||^2 over n = 1..n_max
    double gram_crosscheck = 0.0;
    QuadratureSummary quadrature;
    DualProbe probe;
    std::vector<std::string> flags;
};

struct Report {
    int schema = kSchemaVersion;
    std::string command = "analyze";
    nlohmann::json measure;
    std::vector<CScalar> alphas;
    double d = 0.0;
    double identity_residual = 0.0;
    std::vector<CScalar> fprime;
    CMatrix D;
    CMatrix B;
    double gram_asymmetry = 0.0;
    CMatrix C;
    double refit_residual = 0.0;
    double schur_sup = 0.0;
    std::vector<double> S_diag;
    Verdict verdict;
    std::optional<OracleSummary> oracle;
    NumericPolicy policy;
    std::optional<std::map<std::string, double>> timings;
};

enum class CheckStatus { Pass, Fail, NotApplicable };
std::string_view to_string(CheckStatus s);
CheckStatus check_status_from_string(std::string_view s);

struct CheckItem {
    std::string name;
    CheckStatus status = CheckStatus::Fail;
    double deviation = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct PaperCheckReport {
    int schema = kSchemaVersion;
    std::string command = "paper-check";
    nlohmann::json measure;
    std::string rotation;          // applied rotation in turns, "0" if none
    bool closed_form_applicable = false;
    std::vector<CheckItem> items;
    std::string decision;
    std::string path;

    bool passed() const;
};

struct KernelReport {
    int schema = kSchemaVersion;
    std::string command = "kernel";
    nlohmann::json measure;
    CScalar z, lam;
    CScalar k_omu, k_perp, k_full, k_b;
    double difference = 0.0;
};

void to_json(nlohmann::json& j, const PairEvidence& e);
void from_json(const nlohmann::json& j, PairEvidence& e);
void to_json(nlohmann::json& j, const PsdProbe& p);
void from_json(const nlohmann::json& j, PsdProbe& p);
void to_json(nlohmann::json& j, const DualProbe& p);
void from_json(const nlohmann::json& j, DualProbe& p);
void to_json(nlohmann::json& j, const OracleSummary& o);
void from_json(const nlohmann::json& j, OracleSummary& o);
void to_json(nlohmann::json& j, const Report& r);
void from_json(const nlohmann::json& j, Report& r);
void to_json(nlohmann::json& j, const CheckItem& c);
void from_json(const nlohmann::json& j, CheckItem& c);
void to_json(nlohmann::json& j, const PaperCheckReport& r);
void from_json(const nlohmann::json& j, PaperCheckReport& r);
void to_json(nlohmann::json& j, const KernelReport& r);
void from_json(const nlohmann::json& j, KernelReport& r);

}  // namespace cauchydual
