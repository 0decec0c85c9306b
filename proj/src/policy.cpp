#include "cauchydual/policy.hpp"

#include "cauchydual/error.hpp"

namespace cauchydual {

#define CAUCHYDUAL_POLICY_FIELDS(X)                                                        \
    X(root_tol) X(root_max_sweeps) X(deflation_tol) X(eigen_tol) X(eigen_max_sweeps)       \
    X(hermitian_tol) X(chol_clamp) X(chol_not_psd) X(singular_tol) X(on_circle_tol)        \
    X(distinct_tol) X(circle_margin) X(pairing_tol) X(identity_tol) X(pole_tol)            \
    X(degenerate_atom) X(gram_asym_tol) X(inverse_tol) X(form_psd_tol) X(refit_tol)        \
    X(vandermonde_cond_max) X(interp_radius) X(interp_radius_fallback) X(premise_tol)      \
    X(zero_accept) X(zero_reject) X(psd_tol) X(psd_decide_tol) X(alpha_distinct_tol)       \
    X(l_max) X(n_trunc) X(exhaustive_psd) X(max_atoms) X(oracle_n) X(seed)

void NumericPolicy::validate() const {
    auto bad = [](const char* what) {
        throw Error(ErrorKind::ValidationError, "cli_reports", std::string("policy: ") + what);
    };
    const double tols[] = {root_tol, deflation_tol, eigen_tol, hermitian_tol, chol_clamp,
                           chol_not_psd, singular_tol, on_circle_tol, distinct_tol, circle_margin,
                           pairing_tol, identity_tol, pole_tol, degenerate_atom, gram_asym_tol,
                           inverse_tol, form_psd_tol, refit_tol, premise_tol, zero_accept,
                           zero_reject, psd_tol, psd_decide_tol, alpha_distinct_tol};
    for (double t : tols)
        if (!(t > 0.0)) bad("all tolerances must be positive");
    if (!(zero_accept < zero_reject)) bad("zero_accept must be below zero_reject");
    if (root_max_sweeps < 1 || eigen_max_sweeps < 1) bad("iteration budgets must be positive");
    if (l_max < 1) bad("l_max must be at least 1");
    if (n_trunc < 8) bad("n_trunc must be at least 8");
    if (oracle_n < 8) bad("oracle_n must be at least 8");
    if (max_atoms < 1 || max_atoms > 16) bad("max_atoms must lie in 1..16");
    if (!(interp_radius > 0.0) || !(interp_radius_fallback > 0.0)) bad("interpolation radii must be positive");
}

void to_json(nlohmann::json& j, const NumericPolicy& p) {
    j = nlohmann::json::object();
#define X(name) j[#name] = p.name;
    CAUCHYDUAL_POLICY_FIELDS(X)
#undef X
}

void from_json(const nlohmann::json& j, NumericPolicy& p) {
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "cli_reports", "policy must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
#define X(name) if (it.key() == #name) { it.value().get_to(p.name); known = true; }
        CAUCHYDUAL_POLICY_FIELDS(X)
#undef X
        if (!known) throw Error(ErrorKind::ParseError, "cli_reports", "unknown policy key: " + it.key());
    }
}

}  // namespace cauchydual
