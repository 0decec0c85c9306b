#include "cauchydual/dirichlet_space.hpp"

#include <cmath>
#include <sstream>

#include "cauchydual/error.hpp"

namespace cauchydual {

namespace {

constexpr const char* kModule = "dirichlet_space";

void require_disc(CScalar z, const char* name) {
    if (!(std::abs(z) < 1.0)) {
        std::ostringstream os;
        os << name << " = " << z << " is outside the open unit disc";
        throw Error(ErrorKind::DomainError, kModule, os.str());
    }
}

}  // namespace

OuterData build_outer(const Measure& m, const FejerRiesz& fr) {
    const auto zetas = m.points();
    const CPoly monic_p = CPoly::from_roots(zetas);
    const CPoly q = CPoly::from_roots(fr.alphas);
    // O_mu(0) = e^{i theta} monic_p(0) / (sqrt(d) q(0)) must be positive.
    const double theta = -std::arg(monic_p[0] / q[0]);
    const CScalar scale = std::polar(1.0 / std::sqrt(fr.d), theta);
    return OuterData{monic_p.scaled(scale), q, theta};
}

GramResult gram(const DirichletData& dd, const NumericPolicy& policy) {
    const std::size_t k = dd.k();
    CMatrix D(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        if (std::abs(dd.fprime_at_zeta[i]) <= policy.degenerate_atom)
            throw Error(ErrorKind::DegenerateAtom, kModule, "O_mu' vanishes at atom " + std::to_string(i));
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) {
                D(i, i) = dd.weights[i] * dd.points[i] * eval_f_derivative(dd, i, dd.points[i], policy);
            } else {
                D(i, j) = 1.0 / (dd.fprime_at_zeta[i] * std::conj(dd.fprime_at_zeta[j]) *
                                 (1.0 - dd.points[i] * std::conj(dd.points[j])));
            }
        }
    }
    GramResult out;
    out.asymmetry = D.hermitian_defect() / std::max(1.0, D.max_abs());
    if (out.asymmetry > policy.gram_asym_tol) {
        std::ostringstream os;
        os << "Gram matrix asymmetry " << out.asymmetry << " exceeds " << policy.gram_asym_tol;
        throw Error(ErrorKind::InvariantViolation, kModule, os.str());
    }
    out.D = D.hermitian_part();
    return out;
}

DirichletData build_dirichlet(const Measure& m, const FejerRiesz& fr, const NumericPolicy& policy) {
    DirichletData dd;
    dd.outer = build_outer(m, fr);
    dd.points = m.points();
    for (const auto& a : m.atoms()) dd.weights.push_back(a.weight);
    for (std::size_t j = 0; j < m.k(); ++j) {
        try {
            dd.deflated.push_back(synthetic_division(dd.outer.p, dd.points[j], policy));
        } catch (const Error& e) {
            throw Error(e.kind(), kModule, std::string("deflating p at an atom: ") + e.what());
        }
        // p(zeta_j) = 0, so O'(zeta_j) = p'(zeta_j) / q(zeta_j) = deflated_j(zeta_j) / q(zeta_j).
        dd.fprime_at_zeta.push_back(dd.deflated[j](dd.points[j]) / dd.outer.q(dd.points[j]));
    }
    auto g = gram(dd, policy);
    dd.D = std::move(g.D);
    dd.gram_asymmetry = g.asymmetry;

    const auto eig = herm_eigen(dd.D, policy);
    if (!(eig.front() > 0.0))
        throw Error(ErrorKind::InvariantViolation, kModule, "Gram matrix is not positive definite");
    try {
        dd.B = solve_linear(dd.D, CMatrix::identity(m.k()), policy);
    } catch (const Error& e) {
        throw Error(e.kind(), kModule, std::string("inverting the Gram matrix: ") + e.what());
    }
    const double defect = (dd.D * dd.B - CMatrix::identity(m.k())).frobenius();
    if (defect > policy.inverse_tol)
        throw Error(ErrorKind::InvariantViolation, kModule, "Gram inverse residual too large");
    dd.B = dd.B.hermitian_part();
    return dd;
}

CScalar eval_f(const DirichletData& dd, std::size_t j, CScalar z, const NumericPolicy& policy) {
    const CScalar qz = dd.outer.q(z);
    if (std::abs(qz) < policy.pole_tol) throw Error(ErrorKind::PoleHit, kModule, "f_j evaluated at a pole");
    return dd.deflated.at(j)(z) / (dd.fprime_at_zeta[j] * qz);
}

CScalar eval_f_derivative(const DirichletData& dd, std::size_t j, CScalar z, const NumericPolicy& policy) {
    const CScalar qz = dd.outer.q(z);
    if (std::abs(qz) < policy.pole_tol) throw Error(ErrorKind::PoleHit, kModule, "f_j' evaluated at a pole");
    const CPoly& h = dd.deflated.at(j);
    const CScalar num = h.derivative()(z) * qz - h(z) * dd.outer.q.derivative()(z);
    return num / (dd.fprime_at_zeta[j] * qz * qz);
}

CScalar kernel_omu(const DirichletData& dd, CScalar z, CScalar lam) {
    require_disc(z, "z");
    require_disc(lam, "lambda");
    return dd.outer(z) * std::conj(dd.outer(lam)) / (1.0 - std::conj(lam) * z);
}

CScalar kernel_perp(const DirichletData& dd, CScalar z, CScalar lam) {
    require_disc(z, "z");
    require_disc(lam, "lambda");
    const std::size_t k = dd.k();
    std::vector<CScalar> f_lam(k), f_z(k);
    for (std::size_t j = 0; j < k; ++j) {
        f_lam[j] = eval_f(dd, j, lam);
        f_z[j] = eval_f(dd, j, z);
    }
    const auto g_conj = dd.B.apply(f_lam);  // conj(g_j(lambda))
    CScalar acc{0.0};
    for (std::size_t j = 0; j < k; ++j) acc += std::conj(g_conj[j]) * f_z[j];
    return acc;
}

CScalar kernel_full(const DirichletData& dd, CScalar z, CScalar lam) {
    return kernel_omu(dd, z, lam) + kernel_perp(dd, z, lam);
}

}  // namespace cauchydual
