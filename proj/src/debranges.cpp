#include "cauchydual/debranges.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cauchydual/error.hpp"

namespace cauchydual {

namespace {

constexpr const char* kModule = "debranges";

double norm1(const CMatrix& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) col += std::abs(m(i, j));
        best = std::max(best, col);
    }
    return best;
}

struct Fit {
    CMatrix coeffs;  // (k+1) x (k+1), including constant terms
    double cond = 0.0;
    double scale = 0.0;
};

Fit fit_on_nodes(const FormEvaluator& S, std::size_t k, double radius, const NumericPolicy& policy) {
    const std::size_t n = k + 1;
    std::vector<CScalar> nodes(n);
    for (std::size_t a = 0; a < n; ++a) nodes[a] = std::polar(radius, 2.0 * std::numbers::pi * a / n);
    CMatrix V(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        CScalar pw = 1.0;
        for (std::size_t m = 0; m < n; ++m, pw *= nodes[a]) V(a, m) = pw;
    }
    const CMatrix Vinv = solve_linear(V, CMatrix::identity(n), policy);
    Fit fit;
    fit.cond = norm1(V) * norm1(Vinv);
    if (fit.cond > policy.vandermonde_cond_max) return fit;
    CMatrix samples(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) samples(a, b) = S(nodes[a], nodes[b]);
    fit.scale = samples.max_abs();
    fit.coeffs = Vinv * samples * Vinv.adjoint();
    return fit;
}

}  // namespace

// ---------------------------------------------------------------- S

FormEvaluator::FormEvaluator(const DirichletData& dd)
    : p_(dd.outer.p), q_(dd.outer.q), deflated_(dd.deflated), weights_(dd.k(), dd.k()) {
    for (std::size_t j = 0; j < dd.k(); ++j)
        for (std::size_t i = 0; i < dd.k(); ++i)
            weights_(j, i) = std::conj(dd.B(j, i)) / (dd.fprime_at_zeta[j] * std::conj(dd.fprime_at_zeta[i]));
}

CScalar FormEvaluator::operator()(CScalar z, CScalar u) const {
    const std::size_t k = deflated_.size();
    std::vector<CScalar> hz(k), hu(k);
    for (std::size_t j = 0; j < k; ++j) {
        hz[j] = deflated_[j](z);
        hu[j] = std::conj(deflated_[j](u));
    }
    CScalar sum{0.0};
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < k; ++i) sum += weights_(j, i) * hz[j] * hu[i];
    return q_(z) * std::conj(q_(u)) - p_(z) * std::conj(p_(u)) - (1.0 - z * std::conj(u)) * sum;
}

CScalar eval_S(const DirichletData& dd, CScalar z, CScalar u) { return FormEvaluator(dd)(z, u); }

// ---------------------------------------------------------------- HermForm

CScalar HermForm::operator()(CScalar z, CScalar u) const {
    CScalar acc{0.0};
    const CScalar ub = std::conj(u);
    CScalar zm = z;
    for (std::size_t m = 0; m < k; ++m, zm *= z) {
        CScalar un = ub;
        for (std::size_t n = 0; n < k; ++n, un *= ub) acc += C(m, n) * zm * un;
    }
    return acc;
}

std::vector<CPoly> HermForm::row_polynomials() const {
    std::vector<CPoly> rows;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<CScalar> c(k + 1, 0.0);
        for (std::size_t m = 0; m < k; ++m) c[m + 1] = P(j, m);
        rows.emplace_back(std::move(c));
    }
    return rows;
}

CScalar HermForm::from_factor(CScalar z, CScalar u) const {
    CScalar acc{0.0};
    for (const auto& pj : row_polynomials()) acc += pj(z) * std::conj(pj(u));
    return acc;
}

HermForm extract_C(const DirichletData& dd, const NumericPolicy& policy) {
    const FormEvaluator S(dd);
    const std::size_t k = dd.k();
    HermForm hf;
    hf.k = k;
    hf.interp_radius = policy.interp_radius;
    Fit fit = fit_on_nodes(S, k, hf.interp_radius, policy);
    if (fit.cond > policy.vandermonde_cond_max) {
        hf.interp_radius = policy.interp_radius_fallback;
        fit = fit_on_nodes(S, k, hf.interp_radius, policy);
        if (fit.cond > policy.vandermonde_cond_max) {
            std::ostringstream os;
            os << "interpolation node matrix condition " << fit.cond << " exceeds " << policy.vandermonde_cond_max;
            throw Error(ErrorKind::IllConditioned, kModule, os.str());
        }
    }

    const double cmax = std::max(fit.coeffs.max_abs(), 1e-300);
    double constant = 0.0;
    for (std::size_t i = 0; i <= k; ++i)
        constant = std::max({constant, std::abs(fit.coeffs(0, i)), std::abs(fit.coeffs(i, 0))});
    hf.constant_term = constant / cmax;
    if (hf.constant_term > policy.refit_tol) {
        std::ostringstream os;
        os << "fitted form has a constant term of relative size " << hf.constant_term << " (B(0) != 0)";
        throw Error(ErrorKind::InvariantViolation, kModule, os.str());
    }

    CMatrix C(k, k);
    for (std::size_t m = 0; m < k; ++m)
        for (std::size_t n = 0; n < k; ++n) C(m, n) = fit.coeffs(m + 1, n + 1);
    hf.C = C.hermitian_part();

    // Off-grid validation against the direct expansion.
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> rad(0.2, 0.95), ang(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    for (int s = 0; s < 16; ++s) {
        const CScalar z = std::polar(rad(rng), ang(rng));
        const CScalar u = std::polar(rad(rng), ang(rng));
        worst = std::max(worst, std::abs(hf(z, u) - S(z, u)));
    }
    hf.refit_residual = worst / std::max(fit.scale, 1e-300);
    if (hf.refit_residual > policy.refit_tol) {
        std::ostringstream os;
        os << "coefficient refit residual " << hf.refit_residual << " exceeds " << policy.refit_tol;
        throw Error(ErrorKind::InvariantViolation, kModule, os.str());
    }
    return hf;
}

CMatrix factor_P(const HermForm& hf, const NumericPolicy& policy) {
    const auto eig = herm_eigen(hf.C, policy);
    const double trace = std::abs(hf.C.trace().real());
    if (!eig.empty() && eig.front() < -policy.form_psd_tol * trace) {
        std::ostringstream os;
        os << "coefficient matrix has eigenvalue " << eig.front() << " (trace " << trace << ")";
        throw Error(ErrorKind::NotPSD, kModule, os.str());
    }
    try {
        return cholesky_herm(hf.C, policy).conjugate();
    } catch (const Error& e) {
        throw Error(e.kind(), kModule, std::string("factoring the coefficient matrix: ") + e.what());
    }
}

HermForm build_form(const DirichletData& dd, const NumericPolicy& policy) {
    HermForm hf = extract_C(dd, policy);
    hf.P = factor_P(hf, policy);
    return hf;
}

// ---------------------------------------------------------------- Schur

double SchurData::norm_at(CScalar z) const { return std::sqrt(std::max(0.0, inner(z, z).real())); }

CScalar SchurData::inner(CScalar z, CScalar w) const {
    const CScalar qz = q(z), qw = q(w);
    CScalar acc{0.0};
    for (const auto& pj : numerators) acc += (pj(z) / qz) * std::conj(pj(w) / qw);
    return acc;
}

SchurData schur_data(const HermForm& hf, const DirichletData& dd) { return {hf.row_polynomials(), dd.outer.q}; }

double schur_sup(const SchurData& sd, double radius, int samples) {
    double best = 0.0;
    for (int s = 0; s < samples; ++s)
        best = std::max(best, sd.norm_at(std::polar(radius, 2.0 * std::numbers::pi * s / samples)));
    return best;
}

CScalar kernel_KB(const SchurData& sd, CScalar z, CScalar w) {
    if (!(std::abs(z) < 1.0) || !(std::abs(w) < 1.0))
        throw Error(ErrorKind::DomainError, kModule, "K_B needs points of the open unit disc");
    return (1.0 - sd.inner(z, w)) / (1.0 - z * std::conj(w));
}

}  // namespace cauchydual
