#pragma once

#include <vector>

#include "cauchydual/fejer_riesz.hpp"
#include "cauchydual/measure.hpp"
#include "cauchydual/numerics.hpp"

namespace cauchydual {

/// O_mu = p / q with p = e^{i theta} / sqrt(d) prod (z - zeta_j),
/// q = prod (z - alpha_j), and theta fixed by O_mu(0) > 0.
struct OuterData {
    CPoly p;
    CPoly q;
    double theta = 0.0;

    CScalar operator()(CScalar z) const { return p(z) / q(z); }
};

/// Everything the reproducing kernel of D(mu) is assembled from.
struct DirichletData {
    OuterData outer;
    std::vector<CScalar> points;
    std::vector<double> weights;
    std::vector<CScalar> fprime_at_zeta;  // O_mu'(zeta_j)
    std::vector<CPoly> deflated;          // p / (z - zeta_j), exact
    CMatrix D;                            // <f_i, f_j>
    CMatrix B;                            // D^{-1}
    double gram_asymmetry = 0.0;          // before Hermitianization

    std::size_t k() const { return points.size(); }
};

OuterData build_outer(const Measure& m, const FejerRiesz& fr);

/// Gram matrix of f_1..f_k in D(mu). Diagonal from c_i zeta_i f_i'(zeta_i),
/// off-diagonal from 1 / (O'(zeta_i) conj(O'(zeta_j)) (1 - zeta_i conj(zeta_j))),
/// then Hermitianized; `gram_asymmetry` records the defect.
struct GramResult {
    CMatrix D;
    double asymmetry = 0.0;
};
GramResult gram(const DirichletData& partial, const NumericPolicy& policy = {});

/// Full construction: outer data, O'(zeta_j), deflations, D and B.
DirichletData build_dirichlet(const Measure& m, const FejerRiesz& fr, const NumericPolicy& policy = {});

/// f_j(z) = O_mu(z) / (O_mu'(zeta_j)(z - zeta_j)), finite at zeta_j.
CScalar eval_f(const DirichletData& dd, std::size_t j, CScalar z, const NumericPolicy& policy = {});
CScalar eval_f_derivative(const DirichletData& dd, std::size_t j, CScalar z, const NumericPolicy& policy = {});

/// Reproducing kernel of O_mu H^2.
CScalar kernel_omu(const DirichletData& dd, CScalar z, CScalar lam);
/// Reproducing kernel of the orthogonal complement of O_mu H^2 in D(mu).
CScalar kernel_perp(const DirichletData& dd, CScalar z, CScalar lam);
/// kernel_omu + kernel_perp, the reproducing kernel of D(mu).
CScalar kernel_full(const DirichletData& dd, CScalar z, CScalar lam);

}  // namespace cauchydual
