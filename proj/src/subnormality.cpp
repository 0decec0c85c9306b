#include "cauchydual/subnormality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cauchydual/error.hpp"

namespace cauchydual {

namespace {

constexpr const char* kModule = "cdsp_tests";

bool alphas_distinct(const FejerRiesz& fr, double tol) {
    for (std::size_t r = 0; r < fr.alphas.size(); ++r)
        for (std::size_t t = r + 1; t < fr.alphas.size(); ++t)
            if (std::abs(fr.alphas[r] - fr.alphas[t]) <= tol) return false;
    return true;
}

}  // namespace

std::string_view to_string(Decision d) {
    switch (d) {
        case Decision::NotSubnormal: return "NotSubnormal";
        case Decision::SubnormalNumeric: return "SubnormalNumeric";
        case Decision::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

std::string_view to_string(DecisionPath p) {
    switch (p) {
        case DecisionPath::OffDiagonalNonzero: return "offdiag_nonzero";
        case DecisionPath::PsdViolation: return "psd_violation";
        case DecisionPath::OffDiagonalZero: return "offdiag_zero";
        case DecisionPath::GrayZone: return "gray_zone";
        case DecisionPath::PremiseFailed: return "premise_failed";
    }
    return "gray_zone";
}

std::vector<PairEvidence> pair_premise(const FejerRiesz& fr, const NumericPolicy& policy) {
    std::vector<PairEvidence> out;
    const auto& a = fr.alphas;
    for (std::size_t r = 0; r < a.size(); ++r) {
        for (std::size_t t = r + 1; t < a.size(); ++t) {
            PairEvidence e;
            e.r = r;
            e.t = t;
            e.product = a[r] * std::conj(a[t]);
            const bool on_ray = std::abs(e.product.imag()) <= policy.premise_tol &&
                                e.product.real() >= 1.0 - policy.premise_tol;
            e.premise_ok = !on_ray;
            out.push_back(e);
        }
    }
    return out;
}

std::vector<PairEvidence> offdiag_sums(const FejerRiesz& fr, const FormFn& S, const NumericPolicy& policy) {
    auto pairs = pair_premise(fr, policy);
    std::vector<double> diag;
    for (CScalar a : fr.alphas) {
        const double v = S(a, a).real();
        if (!(v > 0.0)) throw Error(ErrorKind::InvariantViolation, kModule, "S(alpha, alpha) is not positive");
        diag.push_back(v);
    }
    for (auto& e : pairs) {
        e.S_rt = S(fr.alphas[e.r], fr.alphas[e.t]);
        e.S_scale = std::sqrt(diag[e.r] * diag[e.t]);
    }
    return pairs;
}

CMatrix truncation_matrix(const FejerRiesz& fr, const FormFn& S, int l, int N, const NumericPolicy& policy) {
    const auto& a = fr.alphas;
    const std::size_t k = a.size();
    if (N < 1 || l < 0) throw Error(ErrorKind::ValidationError, kModule, "truncation size and order must be positive");
    if (!alphas_distinct(fr, policy.alpha_distinct_tol))
        throw Error(ErrorKind::DegenerateAlphas, kModule, "exterior roots are not pairwise distinct");

    // a_r = prod_{t != r} (alpha_r - alpha_t) in log-magnitude / phase form.
    std::vector<double> log_mag(k, 0.0), phase(k, 0.0);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t t = 0; t < k; ++t)
            if (t != r) {
                log_mag[r] += std::log(std::abs(a[r] - a[t]));
                phase[r] += std::arg(a[r] - a[t]);
            }

    CMatrix Q(k, k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t t = 0; t < k; ++t) {
            const CScalar kappa = S(a[r], a[t]) * std::polar(std::exp(-(log_mag[r] + log_mag[t])), -(phase[r] - phase[t]));
            Q(r, t) = kappa * std::pow(1.0 - 1.0 / (a[r] * std::conj(a[t])), l);
        }
    Q = Q.hermitian_part();

    const std::size_t n = static_cast<std::size_t>(N);
    CMatrix V(n, k);
    for (std::size_t r = 0; r < k; ++r) {
        const CScalar inv = 1.0 / a[r];
        CScalar pw = inv * inv;
        for (std::size_t m = 0; m < n; ++m, pw *= inv) V(m, r) = pw;
    }
    return (V * Q * V.adjoint()).hermitian_part();
}

std::vector<PsdProbe> psd_search(const FejerRiesz& fr, const FormFn& S, int l_max, int N, bool exhaustive,
                                 const NumericPolicy& policy) {
    std::vector<PsdProbe> probes;
    for (int l = 1; l <= l_max; ++l) {
        const CMatrix M = truncation_matrix(fr, S, l, N, policy);
        const auto eig = herm_eigen(M, policy);
        PsdProbe p;
        p.l = l;
        p.N = N;
        p.min_eig = eig.front();
        p.trace = M.trace().real();
        p.violation = p.min_eig < -policy.psd_tol * std::abs(p.trace);
        probes.push_back(p);
        if (p.violation && !exhaustive) break;
    }
    return probes;
}

Verdict decide(const FejerRiesz& fr, const FormFn& S, const NumericPolicy& policy) {
    Verdict v;
    v.tolerances = policy;
    v.pairs = offdiag_sums(fr, S, policy);
    v.alphas_distinct = alphas_distinct(fr, policy.alpha_distinct_tol);
    if (v.alphas_distinct) v.probes = psd_search(fr, S, policy.l_max, policy.n_trunc, policy.exhaustive_psd, policy);

    bool premises = true;
    for (const auto& e : v.pairs) {
        premises = premises && e.premise_ok;
        v.max_normalized = std::max(v.max_normalized, e.normalized());
    }
    const bool strong_violation = std::any_of(v.probes.begin(), v.probes.end(), [&](const PsdProbe& p) {
        return p.min_eig < -policy.psd_decide_tol * std::abs(p.trace);
    });

    if (premises && v.max_normalized > policy.zero_reject) {
        v.decision = Decision::NotSubnormal;
        v.path = DecisionPath::OffDiagonalNonzero;
    } else if (strong_violation) {
        v.decision = Decision::NotSubnormal;
        v.path = DecisionPath::PsdViolation;
    } else if (premises && v.max_normalized <= policy.zero_accept) {
        v.decision = Decision::SubnormalNumeric;
        v.path = DecisionPath::OffDiagonalZero;
    } else {
        v.decision = Decision::Inconclusive;
        v.path = premises ? DecisionPath::GrayZone : DecisionPath::PremiseFailed;
    }
    return v;
}

}  // namespace cauchydual
