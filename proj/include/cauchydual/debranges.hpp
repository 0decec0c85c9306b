#pragma once

#include <vector>

#include "cauchydual/dirichlet_space.hpp"
#include "cauchydual/numerics.hpp"

namespace cauchydual {

/// Evaluates S(z, u) = sum_j p_j(z) conj(p_j(u)) through the expansion
///
///   S = q(z) q(u)* - p(z) p(u)* - (1 - z u*) sum_ij W_ji h_j(z) conj(h_i(u)),
///   W_ji = conj(B_ji) / (O'(zeta_j) conj(O'(zeta_i))),  h_j = p / (z - zeta_j),
///
/// which is polynomial in z and conj(u) once the atoms are divided out, so it
/// is well defined at the atoms and outside the disc.
class FormEvaluator {
public:
    explicit FormEvaluator(const DirichletData& dd);
    CScalar operator()(CScalar z, CScalar u) const;

private:
    CPoly p_, q_;
    std::vector<CPoly> deflated_;
    CMatrix weights_;
};

CScalar eval_S(const DirichletData& dd, CScalar z, CScalar u);

/// S(z, u) = sum_{m,n=1..k} C[m-1][n-1] z^m conj(u)^n with C = P^T conj(P),
/// rows of the upper-triangular P giving the coefficients of p_j.
struct HermForm {
    std::size_t k = 0;
    CMatrix C;
    CMatrix P;
    double refit_residual = 0.0;   // relative, at off-grid check pairs
    double constant_term = 0.0;    // relative size of the fitted z^0 / u^0 terms
    double interp_radius = 0.0;

    CScalar operator()(CScalar z, CScalar u) const;        // from C
    CScalar from_factor(CScalar z, CScalar u) const;       // from P
    /// p_j as polynomials (no constant term).
    std::vector<CPoly> row_polynomials() const;
};

/// Recovers C by tensor interpolation of S on (k+1) x (k+1) nodes
/// r e^{2 pi i a/(k+1)}, checks the fitted constant terms vanish and the fit
/// reproduces S off the grid. Retries once at the fallback radius when the
/// node matrix is ill conditioned.
HermForm extract_C(const DirichletData& dd, const NumericPolicy& policy = {});

/// Upper-triangular P with nonnegative diagonal and C = P^T conj(P).
CMatrix factor_P(const HermForm& hf, const NumericPolicy& policy = {});

/// extract_C followed by factor_P.
HermForm build_form(const DirichletData& dd, const NumericPolicy& policy = {});

/// B = (p_1/q, ..., p_k/q).
struct SchurData {
    std::vector<CPoly> numerators;
    CPoly q;

    /// ||B(z)||, the Euclidean norm of the row.
    double norm_at(CScalar z) const;
    /// sum_j b_j(z) conj(b_j(w))
    CScalar inner(CScalar z, CScalar w) const;
};

SchurData schur_data(const HermForm& hf, const DirichletData& dd);

/// max ||B(z)|| over `samples` equispaced points of |z| = radius.
double schur_sup(const SchurData& sd, double radius = 0.999, int samples = 512);

/// (1 - B(z) B(w)^*) / (1 - z conj(w)).
CScalar kernel_KB(const SchurData& sd, CScalar z, CScalar w);

}  // namespace cauchydual
