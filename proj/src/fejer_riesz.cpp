#include "cauchydual/fejer_riesz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cauchydual/error.hpp"

namespace cauchydual {

namespace {

constexpr const char* kModule = "fejer_riesz";

using Laurent = std::vector<CScalar>;  // centered: index m + offset

// |z - zeta|^2 on the circle, as the Laurent polynomial -zeta z^{-1} + 2 - conj(zeta) z.
Laurent circle_factor(CScalar zeta) { return {-zeta, 2.0, -std::conj(zeta)}; }

Laurent convolve(const Laurent& a, const Laurent& b) {
    Laurent c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

double lhs_on_circle(const Measure& m, CScalar z) {
    double prod = 1.0;
    for (std::size_t j = 0; j < m.k(); ++j) prod *= std::norm(z - m.point(j));
    double total = prod;
    for (std::size_t j = 0; j < m.k(); ++j) {
        double term = m.weight(j);
        for (std::size_t i = 0; i < m.k(); ++i)
            if (i != j) term *= std::norm(z - m.point(i));
        total += term;
    }
    return total;
}

double rhs_on_circle(const FejerRiesz& fr, CScalar z) {
    double prod = fr.d;
    for (CScalar a : fr.alphas) prod *= std::norm(z - a);
    return prod;
}

}  // namespace

CScalar TrigPoly::operator()(CScalar z) const {
    CScalar acc{0.0};
    for (int m = -k; m <= k; ++m) acc += coeff(m) * std::pow(z, m);
    return acc;
}

CPoly TrigPoly::shifted() const { return CPoly(t); }

TrigPoly build_trig(const Measure& m) {
    const int k = static_cast<int>(m.k());
    // Centered Laurent polynomials with total degree k each after padding.
    Laurent full{1.0};
    for (std::size_t j = 0; j < m.k(); ++j) full = convolve(full, circle_factor(m.point(j)));
    for (std::size_t j = 0; j < m.k(); ++j) {
        Laurent term{m.weight(j)};
        for (std::size_t i = 0; i < m.k(); ++i)
            if (i != j) term = convolve(term, circle_factor(m.point(i)));
        // term spans -(k-1)..(k-1); full spans -k..k
        for (std::size_t idx = 0; idx < term.size(); ++idx) full[idx + 1] += term[idx];
    }
    TrigPoly tp{k, Laurent(2 * static_cast<std::size_t>(k) + 1)};
    for (int mm = -k; mm <= k; ++mm) {
        const CScalar a = full[static_cast<std::size_t>(mm + k)];
        const CScalar b = std::conj(full[static_cast<std::size_t>(-mm + k)]);
        tp.t[static_cast<std::size_t>(mm + k)] = 0.5 * (a + b);
    }
    tp.t[static_cast<std::size_t>(k)] = tp.t[static_cast<std::size_t>(k)].real();
    return tp;
}

FejerRiesz factorize(const TrigPoly& t, const NumericPolicy& policy) {
    const int k = t.k;
    if (k < 1) throw Error(ErrorKind::ValidationError, kModule, "trigonometric polynomial of degree 0");
    std::vector<CScalar> roots;
    try {
        roots = poly_roots(t.shifted(), policy);
    } catch (const Error& e) {
        throw Error(e.kind(), kModule, std::string("root extraction: ") + e.what());
    }

    std::vector<CScalar> outside, inside;
    for (CScalar r : roots) {
        const double gap = std::abs(r) - 1.0;
        if (std::abs(gap) < policy.circle_margin) {
            std::ostringstream os;
            os << "root " << r << " lies on the unit circle (|root| - 1 = " << gap << ")";
            throw Error(ErrorKind::RootOnCircle, kModule, os.str());
        }
        (gap > 0 ? outside : inside).push_back(r);
    }
    if (outside.size() != static_cast<std::size_t>(k))
        throw Error(ErrorKind::PairingFailure, kModule,
                    "expected " + std::to_string(k) + " exterior roots, found " + std::to_string(outside.size()));

    // Greedy nearest matching of each exterior root with its reflection.
    std::vector<bool> used(inside.size(), false);
    for (CScalar a : outside) {
        const CScalar mirror = 1.0 / std::conj(a);
        std::size_t best = inside.size();
        double best_dist = 0.0;
        for (std::size_t i = 0; i < inside.size(); ++i) {
            if (used[i]) continue;
            const double dist = std::abs(inside[i] - mirror);
            if (best == inside.size() || dist < best_dist) best = i, best_dist = dist;
        }
        if (best == inside.size() || best_dist > policy.pairing_tol * std::max(1.0, std::abs(mirror))) {
            std::ostringstream os;
            os << "no reflected partner for root " << a << " (distance " << best_dist << ")";
            throw Error(ErrorKind::PairingFailure, kModule, os.str());
        }
        used[best] = true;
    }

    std::sort(outside.begin(), outside.end(), [](CScalar x, CScalar y) {
        const double ax = std::arg(x), ay = std::arg(y);
        if (ax != ay) return ax < ay;
        return std::abs(x) < std::abs(y);
    });

    FejerRiesz fr;
    fr.alphas = outside;
    const CScalar z0 = std::polar(1.0, 0.7);
    double prod = 1.0;
    for (CScalar a : fr.alphas) prod *= std::norm(z0 - a);
    fr.d = t(z0).real() / prod;
    if (!(fr.d > 0.0)) throw Error(ErrorKind::InvariantViolation, kModule, "factorization constant is not positive");

    const int samples = 4 * k + 16;
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const CScalar z = std::polar(1.0, 2.0 * std::numbers::pi * s / samples);
        const double lhs = t(z).real();
        worst = std::max(worst, std::abs(lhs - rhs_on_circle(fr, z)) / std::abs(lhs));
    }
    fr.residual = worst;
    if (worst > policy.identity_tol) {
        std::ostringstream os;
        os << "factorization residual " << worst << " exceeds " << policy.identity_tol;
        throw Error(ErrorKind::InvariantViolation, kModule, os.str());
    }
    return fr;
}

double verify_identity(const Measure& m, const FejerRiesz& fr) {
    const int samples = 8 * static_cast<int>(m.k()) + 32;
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        // Offset by half a step so samples avoid the atoms themselves.
        const CScalar z = std::polar(1.0, 2.0 * std::numbers::pi * (s + 0.5) / samples);
        const double lhs = lhs_on_circle(m, z);
        worst = std::max(worst, std::abs(lhs - rhs_on_circle(fr, z)) / std::abs(lhs));
    }
    return worst;
}

FejerRiesz fejer_riesz(const Measure& m, const NumericPolicy& policy) { return factorize(build_trig(m), policy); }

}  // namespace cauchydual
