#pragma once

#include <cstdint>

#include "json.hpp"

namespace cauchydual {

/// All tolerances and budgets of the pipeline in one place. Defaults are the
/// values each operation documents; the CLI can override any subset from a
/// JSON file.
struct NumericPolicy {
    // polynomial roots
    double root_tol = 1e-12;         // backward error |p(r)| / sum |a_i||r|^i
    int root_max_sweeps = 500;
    double deflation_tol = 1e-9;     // synthetic division remainder, relative

    // dense linear algebra
    double eigen_tol = 1e-14;        // off(M) <= eigen_tol * ||M||_F
    int eigen_max_sweeps = 100;
    double hermitian_tol = 1e-12;
    double chol_clamp = 1e-12;       // pivots below chol_clamp * trace treated as zero
    double chol_not_psd = 1e-8;      // pivots below -chol_not_psd * trace reject
    double singular_tol = 1e-14;

    // measure and factorization
    double on_circle_tol = 1e-12;
    double distinct_tol = 1e-9;
    double circle_margin = 1e-7;
    double pairing_tol = 1e-7;
    double identity_tol = 1e-9;

    // Dirichlet space data
    double pole_tol = 1e-13;
    double degenerate_atom = 1e-10;
    double gram_asym_tol = 1e-10;
    double inverse_tol = 1e-9;

    // de Branges-Rovnyak form
    double form_psd_tol = 1e-9;
    double refit_tol = 1e-9;
    double vandermonde_cond_max = 1e10;
    double interp_radius = 0.9;
    double interp_radius_fallback = 1.0;

    // subnormality decision
    double premise_tol = 1e-10;
    double zero_accept = 1e-7;
    double zero_reject = 1e-4;
    double psd_tol = 1e-10;          // probe violation: min_eig < -psd_tol * trace
    double psd_decide_tol = 1e-8;    // violation strong enough to decide
    double alpha_distinct_tol = 1e-9;
    int l_max = 16;
    int n_trunc = 64;
    bool exhaustive_psd = false;
    int max_atoms = 16;

    // operator oracle
    int oracle_n = 64;
    std::uint64_t seed = 42;

    /// Throws Error(ValidationError) on inconsistent settings.
    void validate() const;
};

void to_json(nlohmann::json& j, const NumericPolicy& p);
/// Missing keys keep their defaults.
void from_json(const nlohmann::json& j, NumericPolicy& p);

}  // namespace cauchydual
