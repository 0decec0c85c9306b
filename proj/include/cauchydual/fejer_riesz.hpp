#pragma once

#include <vector>

#include "cauchydual/measure.hpp"
#include "cauchydual/numerics.hpp"

namespace cauchydual {

/// Laurent polynomial sum_{m=-k..k} t_m z^m, real and positive on the circle.
struct TrigPoly {
    int k = 0;
    std::vector<CScalar> t;  // t[m + k]

    CScalar coeff(int m) const { return (m < -k || m > k) ? CScalar{0.0} : t[static_cast<std::size_t>(m + k)]; }
    CScalar operator()(CScalar z) const;
    /// z^k t(z) as an ordinary polynomial of degree 2k.
    CPoly shifted() const;
};

/// Exterior roots and constant of
///   prod |z - zeta_j|^2 + sum_j c_j prod_{i != j} |z - zeta_i|^2 = d prod |z - alpha_j|^2
/// on the circle. Alphas are ordered by ascending argument, then modulus.
struct FejerRiesz {
    std::vector<CScalar> alphas;
    double d = 0.0;
    double residual = 0.0;  // relative identity residual on the check grid
};

TrigPoly build_trig(const Measure& m);

/// Throws RootOnCircle when a root lies within `circle_margin` of the circle
/// and PairingFailure when roots do not come in pairs (beta, 1/conj(beta)).
FejerRiesz factorize(const TrigPoly& t, const NumericPolicy& policy = {});

/// max over 8k+32 circle samples of |LHS - d prod |z - alpha_j|^2| / |LHS|.
double verify_identity(const Measure& m, const FejerRiesz& fr);

/// build_trig followed by factorize.
FejerRiesz fejer_riesz(const Measure& m, const NumericPolicy& policy = {});

}  // namespace cauchydual
