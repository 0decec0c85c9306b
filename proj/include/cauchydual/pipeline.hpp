#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cauchydual/debranges.hpp"
#include "cauchydual/dirichlet_space.hpp"
#include "cauchydual/fejer_riesz.hpp"
#include "cauchydual/measure.hpp"
#include "cauchydual/report.hpp"
#include "cauchydual/subnormality.hpp"

namespace cauchydual {

struct PipelineOptions {
    bool oracle = false;
    bool timings = false;
};

struct PipelineResult {
    Measure measure;
    FejerRiesz fr;
    DirichletData dd;
    HermForm form;
    Verdict verdict;
    std::optional<OracleSummary> oracle;
    std::map<std::string, double> timings;
};

/// fejer_riesz -> dirichlet_space -> debranges -> decision (-> operator oracle).
PipelineResult run_pipeline(const Measure& m, const NumericPolicy& policy, const PipelineOptions& opts = {});

OracleSummary run_oracle(const Measure& m, const DirichletData& dd, const NumericPolicy& policy);

Report make_report(const PipelineResult& res, const NumericPolicy& policy, bool timings);
Report cmd_analyze(const Measure& m, const NumericPolicy& policy, const PipelineOptions& opts = {});

/// The equi-spaced three-point measure with unit weights.
Measure three_point_measure();

/// Displayed-constant regression. Closed-form items apply when the measure is
/// a rotation of the equi-spaced unit-weight triple and are NOT-APPLICABLE
/// otherwise; pipeline items are always checked.
PaperCheckReport cmd_paper_check(const std::optional<Measure>& m, const std::optional<Turns>& rotate,
                                 const NumericPolicy& policy);

/// 50 seeded disc pairs: max |K_omu + K_perp - K_B| / (1 + |K_B|).
double kernel_equality_defect(const PipelineResult& res, std::uint64_t seed, int pairs = 50);

struct SweepSpec {
    int grid = 12;                                      // angles a/grid turns
    std::vector<std::array<double, 3>> weights{{1.0, 1.0, 1.0}};
    int jobs = 0;                                       // 0: hardware concurrency
};

struct SweepRow {
    Turns theta2, theta3;
    std::array<double, 3> w{};
    std::optional<double> max_offdiag_norm;
    std::string verdict;
    std::string error;
};

/// One row per (weights, theta2, theta3) cell with atoms at 0, theta2, theta3;
/// rows come back in grid order regardless of scheduling.
std::vector<SweepRow> cmd_sweep(const SweepSpec& spec, const NumericPolicy& policy);
std::string sweep_csv(const std::vector<SweepRow>& rows);

KernelReport cmd_kernel(const Measure& m, CScalar z, CScalar lam, const NumericPolicy& policy);

}  // namespace cauchydual
