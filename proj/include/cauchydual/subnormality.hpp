#pragma once

// Subnormality tests for the Cauchy dual of M_z on a de Branges-Rovnyak space
// H(B), B = (p_1/q, ..., p_k/q):
//
//  * pair test: when no product alpha_r conj(alpha_t), r != t, lies in [1, inf),
//    the dual is subnormal iff S(alpha_r, alpha_t) = 0 for all r != t;
//  * truncation test: the dual is subnormal iff for every l >= 1 the infinite
//    matrix sum_{r,t} kappa_rt (1 - 1/(alpha_r conj(alpha_t)))^l
//    [alpha_r^{-(m+2)} conj(alpha_t)^{-(n+2)}]_{m,n>=0} is positive semidefinite,
//    with kappa_rt = S(alpha_r, alpha_t) / (a_r conj(a_t)) and
//    a_r = prod_{t != r} (alpha_r - alpha_t).
//
// Only a violation of the truncation test is conclusive.

#include <functional>
#include <string_view>
#include <vector>

#include "cauchydual/fejer_riesz.hpp"
#include "cauchydual/numerics.hpp"
#include "cauchydual/policy.hpp"

namespace cauchydual {

using FormFn = std::function<CScalar(CScalar, CScalar)>;

struct PairEvidence {
    std::size_t r = 0, t = 0;
    CScalar product;        // alpha_r conj(alpha_t)
    bool premise_ok = true;
    CScalar S_rt;
    double S_scale = 0.0;   // sqrt(S(alpha_r, alpha_r) S(alpha_t, alpha_t))

    double normalized() const { return S_scale > 0.0 ? std::abs(S_rt) / S_scale : 0.0; }
};

struct PsdProbe {
    int l = 0;
    int N = 0;
    double min_eig = 0.0;
    double trace = 0.0;
    bool violation = false;
};

enum class Decision { NotSubnormal, SubnormalNumeric, Inconclusive };
enum class DecisionPath { OffDiagonalNonzero, PsdViolation, OffDiagonalZero, GrayZone, PremiseFailed };

std::string_view to_string(Decision d);
std::string_view to_string(DecisionPath p);

struct Verdict {
    Decision decision = Decision::Inconclusive;
    DecisionPath path = DecisionPath::GrayZone;
    std::vector<PairEvidence> pairs;
    std::vector<PsdProbe> probes;
    double max_normalized = 0.0;
    bool alphas_distinct = true;
    NumericPolicy tolerances;
};

/// Pairs r < t with the product and premise flag filled in. Empty for k = 1.
std::vector<PairEvidence> pair_premise(const FejerRiesz& fr, const NumericPolicy& policy = {});

/// Pairs r < t with S(alpha_r, alpha_t) and its diagonal scale.
std::vector<PairEvidence> offdiag_sums(const FejerRiesz& fr, const FormFn& S, const NumericPolicy& policy = {});

/// N x N truncation of the order-l matrix. DegenerateAlphas if two alphas coincide.
CMatrix truncation_matrix(const FejerRiesz& fr, const FormFn& S, int l, int N, const NumericPolicy& policy = {});

/// Probes l = 1..l_max at truncation N; stops at the first violation unless
/// `exhaustive`.
std::vector<PsdProbe> psd_search(const FejerRiesz& fr, const FormFn& S, int l_max, int N, bool exhaustive,
                                 const NumericPolicy& policy = {});

Verdict decide(const FejerRiesz& fr, const FormFn& S, const NumericPolicy& policy = {});

}  // namespace cauchydual
