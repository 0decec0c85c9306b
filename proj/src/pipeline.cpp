#include "cauchydual/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "cauchydual/error.hpp"
#include "cauchydual/operator_oracle.hpp"

namespace cauchydual {

namespace {

constexpr const char* kModule = "cli_reports";

class Stopwatch {
public:
    explicit Stopwatch(std::map<std::string, double>& sink) : sink_(sink) {}
    void lap(const std::string& name) {
        const auto now = std::chrono::steady_clock::now();
        sink_[name] = std::chrono::duration<double>(now - last_).count();
        last_ = now;
    }

private:
    std::map<std::string, double>& sink_;
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string error_text(const Error& e) {
    return std::string(to_string(e.kind())) + " (" + e.module() + "): " + e.what();
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

CheckItem check(std::string name, double deviation, double tol, std::string detail = {}) {
    CheckItem c;
    c.name = std::move(name);
    c.deviation = deviation;
    c.tolerance = tol;
    c.status = (std::isfinite(deviation) && deviation <= tol) ? CheckStatus::Pass : CheckStatus::Fail;
    c.detail = std::move(detail);
    return c;
}

CheckItem not_applicable(std::string name) {
    CheckItem c;
    c.name = std::move(name);
    c.status = CheckStatus::NotApplicable;
    c.detail = "measure is not a rotation of the equi-spaced unit-weight triple";
    return c;
}

double rel(CScalar got, CScalar want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

// If m is zeta0 {1, w, w^2} with unit weights, the atom order that starts at
// the atom of smallest angle in [0, 2 pi) and proceeds counter-clockwise.
std::optional<std::vector<std::size_t>> equispaced_order(const Measure& m) {
    if (m.k() != 3) return std::nullopt;
    for (std::size_t j = 0; j < 3; ++j)
        if (std::abs(m.weight(j) - 1.0) > 1e-12) return std::nullopt;
    auto angle = [&](std::size_t j) {
        double a = std::arg(m.point(j));
        return a < 0.0 ? a + 2.0 * std::numbers::pi : a;
    };
    std::size_t first = 0;
    for (std::size_t j = 1; j < 3; ++j)
        if (angle(j) < angle(first)) first = j;
    const CScalar w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    std::vector<std::size_t> order{first};
    for (CScalar target : {m.point(first) * w, m.point(first) * w * w}) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < 3; ++j)
            if (std::abs(m.point(j) - target) < std::abs(m.point(best) - target)) best = j;
        if (std::abs(m.point(best) - target) > 1e-12) return std::nullopt;
        order.push_back(best);
    }
    return order;
}

std::size_t nearest(const std::vector<CScalar>& v, CScalar target) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < v.size(); ++j)
        if (std::abs(v[j] - target) < std::abs(v[best] - target)) best = j;
    return best;
}

void closed_form_items(const PipelineResult& res, PaperCheckReport& rep, const NumericPolicy& policy) {
    const double sqrt13 = std::sqrt(13.0);
    const double b = (11.0 + 3.0 * sqrt13) / 2.0;
    const double x = (sqrt13 - 1.0) / 2.0;
    const CScalar w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const CScalar z0 = res.measure.point(0);
    const CScalar z0c = z0 * z0 * z0;
    const double alpha = std::cbrt(b);
    const auto& dd = res.dd;
    auto& items = rep.items;

    // trigonometric coefficients: 11 at 0, -conj(z0^3) and -z0^3 at +-3
    const TrigPoly t = build_trig(res.measure);
    double dev = 0.0;
    for (int m = -3; m <= 3; ++m) {
        CScalar want = 0.0;
        if (m == 0) want = 11.0;
        if (m == 3) want = -std::conj(z0c);
        if (m == -3) want = -z0c;
        dev = std::max(dev, std::abs(t.coeff(m) - want));
    }
    items.push_back(check("trig_coefficients", dev, 1e-12, "t0 = 11, t(+-3) = -1 up to the rotation phase"));

    dev = 0.0;
    for (CScalar a : res.fr.alphas) dev = std::max(dev, rel(a * a * a, b * z0c));
    items.push_back(check("alpha_cubed", dev, 1e-10, "alpha^3 = (11 + 3 sqrt 13) / 2"));

    items.push_back(check("d_times_b", std::abs(res.fr.d * b - 1.0), 1e-10, "d = 1/b"));

    dev = 0.0;
    for (double r : {0.2, 0.55, 0.9})
        for (int s = 0; s < 8; ++s) {
            const CScalar z = std::polar(r, 0.3 + 2.0 * std::numbers::pi * s / 8.0);
            const CScalar z3 = z * z * z;
            const CScalar want = (z3 - z0c) / (std::sqrt(res.fr.d) * (z3 - b * z0c));
            dev = std::max(dev, rel(dd.outer(z), want));
        }
    items.push_back(check("outer_function", dev, 1e-10, "O(z) = (z^3 - 1) / (sqrt(d) (z^3 - alpha^3))"));

    dev = 0.0;
    for (CScalar f : dd.fprime_at_zeta) dev = std::max(dev, std::abs(std::abs(f) - 1.0));
    items.push_back(check("outer_derivative_modulus", dev, 1e-10, "|O'(zeta)| = 1 at every atom"));

    const double diag = -(2.0 + b) / (1.0 - b);
    const CScalar s = 1.0 / (w - 1.0);
    const CScalar s2 = 1.0 / (w * w - 1.0);
    dev = 0.0;
    for (std::size_t i = 0; i < 3; ++i) dev = std::max(dev, std::abs(dd.D(i, i) - diag));
    items.push_back(check("gram_diagonal", dev, 1e-10, "||f_i||^2 = -(2 + b) / (1 - b) = " + fmt(diag)));

    dev = std::max({std::abs(dd.D(0, 1) - s), std::abs(dd.D(0, 2) - s2), std::abs(dd.D(1, 2) - s)});
    items.push_back(check("gram_offdiagonal", dev, 1e-10, "<f_1, f_2> = 1/(w - 1), <f_1, f_3> = 1/(w^2 - 1)"));

    const double det_want = x * (x * x - 1.0);
    const CScalar det = lu_determinant(dd.D);
    items.push_back(check("det_D", std::abs(det - det_want) / det_want, 1e-9, "det D = x (x^2 - 1)"));

    // Inverse of the Hermitian circulant [[x, s, conj s], [conj s, x, s], [s, conj s, x]].
    const CScalar sb = std::conj(s);
    const CScalar bd = (x * x - 1.0 / 3.0) / det_want;
    const CScalar b01 = (sb * sb - x * s) / det_want;
    const CScalar b02 = (s * s - x * sb) / det_want;
    const CMatrix B_want{{bd, b01, b02}, {std::conj(b01), bd, b01}, {std::conj(b02), std::conj(b01), bd}};
    items.push_back(check("inverse_matrix", (dd.B - B_want).max_abs(), 1e-9, "B = D^{-1} entrywise"));

    const double c1 = 3.0 * b / (x * (x - 1.0));
    const double c2 = 3.0 * b / (x * (x + 1.0));
    const double c3 = (1.0 - b) + 3.0 * b / (x + 1.0);
    const CMatrix& C = res.form.C;
    dev = std::max({rel(C(0, 0), c1), rel(C(1, 1), c2), rel(C(2, 2), c3)});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) dev = std::max(dev, std::abs(C(i, j)) / c1);
    items.push_back(check("form_coefficients", dev, 1e-8,
                          "S = c3 (z u*)^3 + c2 (z u*)^2 + c1 (z u*), c = (" + fmt(c1) + ", " + fmt(c2) + ", " +
                              fmt(c3) + ")"));

    dev = std::max(std::abs(x * (x + 1.0) - 3.0), std::abs(x * (x - 1.0) - (4.0 - sqrt13)));
    items.push_back(check("cross_identities", dev, 1e-10, "x (x + 1) = 3, x (x - 1) = 4 - sqrt 13"));

    // S(alpha, alpha w) = Y (c3 Y^2 + c2 Y + c1), Y = alpha^2 conj(w), in rotated coordinates.
    const CScalar a0 = res.fr.alphas[nearest(res.fr.alphas, alpha * z0)];
    const CScalar a1 = res.fr.alphas[nearest(res.fr.alphas, alpha * z0 * w)];
    const CScalar Y = alpha * alpha * std::conj(w);
    const CScalar quad = c3 * Y * Y + c2 * Y + c1;
    const FormEvaluator S(dd);
    const CScalar got = S(a0, a1);
    items.push_back(check("offdiag_closed_form", rel(got, Y * quad), 1e-8,
                          "|S(alpha, alpha w)| = " + fmt(std::abs(got))));

    const double nonroot = std::abs(quad) / (c3 * std::norm(Y) + c2 * std::abs(Y) + c1);
    CheckItem nr;
    nr.name = "quadratic_nonroot";
    nr.deviation = nonroot;
    nr.tolerance = policy.zero_reject;
    nr.status = nonroot > policy.zero_reject ? CheckStatus::Pass : CheckStatus::Fail;
    nr.detail = "alpha^2 conj(w) is not a root of c3 Y^2 + c2 Y + c1 (normalized modulus above tolerance)";
    items.push_back(nr);

    CheckItem v;
    v.name = "verdict";
    v.status = (res.verdict.decision == Decision::NotSubnormal && res.verdict.path == DecisionPath::OffDiagonalNonzero)
                   ? CheckStatus::Pass
                   : CheckStatus::Fail;
    v.deviation = res.verdict.max_normalized;
    v.tolerance = policy.zero_reject;
    v.detail = "NotSubnormal through nonzero off-diagonal values";
    items.push_back(v);
}

}  // namespace

PipelineResult run_pipeline(const Measure& m, const NumericPolicy& policy, const PipelineOptions& opts) {
    policy.validate();
    std::map<std::string, double> timings;
    Stopwatch sw(timings);
    FejerRiesz fr = fejer_riesz(m, policy);
    sw.lap("fejer_riesz");
    DirichletData dd = build_dirichlet(m, fr, policy);
    sw.lap("dirichlet_space");
    HermForm form = build_form(dd, policy);
    sw.lap("debranges");
    const FormEvaluator S(dd);
    Verdict verdict = decide(fr, S, policy);
    sw.lap("cdsp_tests");
    std::optional<OracleSummary> oracle;
    if (opts.oracle) {
        oracle = run_oracle(m, dd, policy);
        sw.lap("operator_oracle");
    }
    return PipelineResult{m, std::move(fr), std::move(dd), std::move(form), std::move(verdict), std::move(oracle),
                          std::move(timings)};
}

OracleSummary run_oracle(const Measure& m, const DirichletData& dd, const NumericPolicy& policy) {
    OracleSummary o;
    o.N = static_cast<std::size_t>(policy.oracle_n);
    o.trials = 100;
    o.n_max = 6;
    const MonomialModel mm = monomial_gram(m, o.N);
    std::mt19937_64 rng(policy.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    o.bn_max = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < o.trials; ++t) {
        CoeffVec v(o.N, 0.0);
        for (std::size_t i = 0; i + o.n_max < o.N; ++i) v[i] = {gauss(rng), gauss(rng)};
        const double n2 = model_norm2(mm, v);
        o.b2_max = std::max(o.b2_max, std::abs(bn_form(mm, 2, v)) / n2);
        for (int n = 1; n <= o.n_max; ++n) o.bn_max = std::max(o.bn_max, bn_form(mm, n, v) / n2);
    }
    o.gram_crosscheck = gram_crosscheck(dd, m, 200);
    o.quadrature.N = 16;
    const auto qc = check_closed_form(m, o.quadrature.N);
    o.quadrature.closed_form_deviation = qc.closed_form_deviation;
    o.quadrature.refinement_change = qc.refinement_change;
    o.probe = bn_dual_probe(m, o.N, 8, 20, policy.seed, policy);

    if (o.b2_max > 1e-9) o.flags.push_back("two_isometry_defect");
    if (o.bn_max > 1e-9) o.flags.push_back("agler_form_positive");
    if (o.probe.dual_norm > 1.0 + 1e-6) o.flags.push_back("dual_norm_exceeds_one");
    if (o.quadrature.closed_form_deviation > 1e-6 || o.quadrature.refinement_change > 1e-7)
        o.flags.push_back("quadrature_mismatch");
    if (o.gram_crosscheck > 1e-6) o.flags.push_back("gram_crosscheck_mismatch");
    if (o.probe.truncation_caution) o.flags.push_back("dual_truncation_caution");
    if (o.probe.most_negative < -1e-4) o.flags.push_back("dual_negative_witness");
    return o;
}

Report make_report(const PipelineResult& res, const NumericPolicy& policy, bool timings) {
    Report r;
    r.measure = measure_to_json(res.measure);
    r.alphas = res.fr.alphas;
    r.d = res.fr.d;
    r.identity_residual = res.fr.residual;
    r.fprime = res.dd.fprime_at_zeta;
    r.D = res.dd.D;
    r.B = res.dd.B;
    r.gram_asymmetry = res.dd.gram_asymmetry;
    r.C = res.form.C;
    r.refit_residual = res.form.refit_residual;
    r.schur_sup = schur_sup(schur_data(res.form, res.dd));
    const FormEvaluator S(res.dd);
    for (CScalar a : res.fr.alphas) r.S_diag.push_back(S(a, a).real());
    r.verdict = res.verdict;
    r.oracle = res.oracle;
    r.policy = policy;
    if (timings) r.timings = res.timings;
    return r;
}

Report cmd_analyze(const Measure& m, const NumericPolicy& policy, const PipelineOptions& opts) {
    return make_report(run_pipeline(m, policy, opts), policy, opts.timings);
}

Measure three_point_measure() { return parse_measure("0,1/3,2/3:1,1,1"); }

double kernel_equality_defect(const PipelineResult& res, std::uint64_t seed, int pairs) {
    const SchurData sd = schur_data(res.form, res.dd);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> rad(0.0, 0.95), ang(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (int s = 0; s < pairs; ++s) {
        const CScalar z = std::polar(rad(rng), ang(rng));
        const CScalar lam = std::polar(rad(rng), ang(rng));
        const CScalar kb = kernel_KB(sd, z, lam);
        worst = std::max(worst, std::abs(kernel_full(res.dd, z, lam) - kb) / (1.0 + std::abs(kb)));
    }
    return worst;
}

PaperCheckReport cmd_paper_check(const std::optional<Measure>& m, const std::optional<Turns>& rotate,
                                 const NumericPolicy& policy) {
    Measure base = m ? *m : three_point_measure();
    if (rotate) base = rotate_measure(base, *rotate, policy);
    const auto order = equispaced_order(base);
    if (order) base = permute_measure(base, *order, policy);

    PaperCheckReport rep;
    rep.measure = measure_to_json(base);
    rep.rotation = rotate ? rotate->str() : "0";
    rep.closed_form_applicable = order.has_value();

    const PipelineResult res = run_pipeline(base, policy);
    rep.decision = std::string(to_string(res.verdict.decision));
    rep.path = std::string(to_string(res.verdict.path));

    if (order) {
        closed_form_items(res, rep, policy);
    } else {
        for (const char* name : {"trig_coefficients", "alpha_cubed", "d_times_b", "outer_function",
                                 "outer_derivative_modulus", "gram_diagonal", "gram_offdiagonal", "det_D",
                                 "inverse_matrix", "form_coefficients", "cross_identities", "offdiag_closed_form",
                                 "quadratic_nonroot", "verdict"})
            rep.items.push_back(not_applicable(name));
    }

    auto& items = rep.items;
    items.push_back(check("factorization_identity", res.fr.residual, policy.identity_tol));
    const CScalar o0 = res.dd.outer(0.0);
    items.push_back(check("outer_normalization", o0.real() > 0.0 ? std::abs(o0.imag()) / o0.real() : 1.0, 1e-12,
                          "O(0) > 0"));
    const std::size_t k = res.dd.k();
    items.push_back(check("gram_inverse", (res.dd.D * res.dd.B - CMatrix::identity(k)).frobenius(), policy.inverse_tol));
    items.push_back(check("form_refit", res.form.refit_residual, policy.refit_tol));
    const SchurData sd = schur_data(res.form, res.dd);
    items.push_back(check("schur_bound", std::max(0.0, schur_sup(sd) - 1.0), 1e-9, "sup ||B(z)|| on |z| = 0.999"));
    items.push_back(check("kernel_equality", kernel_equality_defect(res, policy.seed), 1e-8,
                          "K_omu + K_perp = K_B at 50 seeded pairs"));
    double norm_dev = 0.0;
    for (CScalar z : {CScalar{0.3, 0.1}, CScalar{-0.5, 0.4}, CScalar{0.0, -0.8}}) {
        norm_dev = std::max(norm_dev, std::abs(kernel_KB(sd, z, 0.0) - 1.0));
        norm_dev = std::max(norm_dev, std::abs(kernel_full(res.dd, z, 0.0) - 1.0));
    }
    items.push_back(check("kernel_normalization", norm_dev, 1e-10, "K(z, 0) = 1"));
    return rep;
}

std::vector<SweepRow> cmd_sweep(const SweepSpec& spec, const NumericPolicy& policy) {
    policy.validate();
    if (spec.grid < 1) throw Error(ErrorKind::ValidationError, kModule, "sweep grid must be positive");
    const std::size_t n = static_cast<std::size_t>(spec.grid);
    const std::size_t cells = spec.weights.size() * n * n;
    std::vector<SweepRow> rows(cells);

    auto run_cell = [&](std::size_t idx) {
        SweepRow& row = rows[idx];
        const std::size_t wi = idx / (n * n);
        const std::size_t a = (idx / n) % n;
        const std::size_t b = idx % n;
        row.theta2 = Turns::make(static_cast<std::int64_t>(a), spec.grid);
        row.theta3 = Turns::make(static_cast<std::int64_t>(b), spec.grid);
        row.w = spec.weights[wi];
        try {
            const Measure m({Atom{CirclePoint::from_turns(Turns::make(0, 1)), row.w[0]},
                             Atom{CirclePoint::from_turns(row.theta2), row.w[1]},
                             Atom{CirclePoint::from_turns(row.theta3), row.w[2]}},
                            policy);
            const FejerRiesz fr = fejer_riesz(m, policy);
            const DirichletData dd = build_dirichlet(m, fr, policy);
            const Verdict v = decide(fr, FormEvaluator(dd), policy);
            row.max_offdiag_norm = v.max_normalized;
            row.verdict = std::string(to_string(v.decision));
        } catch (const Error& e) {
            row.error = error_text(e);
        }
    };

    unsigned jobs = spec.jobs > 0 ? static_cast<unsigned>(spec.jobs) : std::thread::hardware_concurrency();
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells)));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < cells; i = next++) run_cell(i);
        });
    for (auto& th : pool) th.join();
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    auto quote = [](const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += '"';
            out += c;
        }
        return out + "\"";
    };
    std::ostringstream os;
    os << "theta2,theta3,w1,w2,w3,max_offdiag_norm,verdict,error\n";
    for (const auto& r : rows) {
        os << r.theta2.str() << ',' << r.theta3.str() << ',' << fmt(r.w[0]) << ',' << fmt(r.w[1]) << ','
           << fmt(r.w[2]) << ',' << (r.max_offdiag_norm ? fmt(*r.max_offdiag_norm) : "") << ',' << r.verdict << ','
           << quote(r.error) << '\n';
    }
    return os.str();
}

KernelReport cmd_kernel(const Measure& m, CScalar z, CScalar lam, const NumericPolicy& policy) {
    policy.validate();
    const FejerRiesz fr = fejer_riesz(m, policy);
    const DirichletData dd = build_dirichlet(m, fr, policy);
    const HermForm form = build_form(dd, policy);
    const SchurData sd = schur_data(form, dd);
    KernelReport r;
    r.measure = measure_to_json(m);
    r.z = z;
    r.lam = lam;
    r.k_omu = kernel_omu(dd, z, lam);
    r.k_perp = kernel_perp(dd, z, lam);
    r.k_full = r.k_omu + r.k_perp;
    r.k_b = kernel_KB(sd, z, lam);
    r.difference = std::abs(r.k_full - r.k_b);
    return r;
}

}  // namespace cauchydual
