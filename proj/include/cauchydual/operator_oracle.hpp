#pragma once

// M_z on the span of 1, z, ..., z^{N-1} inside D(mu), with
//
//   <z^n, z^m> = delta_nm + min(n, m) sum_j c_j zeta_j^{n-m}
//
// (Hardy part plus the local Dirichlet integrals). Coefficient vectors pair as
// <v, w> = sum_{n,m} v_n conj(w_m) G[n][m].

#include <cstdint>
#include <vector>

#include "cauchydual/dirichlet_space.hpp"
#include "cauchydual/measure.hpp"
#include "cauchydual/numerics.hpp"

namespace cauchydual {

using CoeffVec = std::vector<CScalar>;

struct MonomialModel {
    std::size_t N = 0;
    CMatrix G;
    std::vector<CScalar> points;
    std::vector<double> weights;

    /// <z^n, z^m> for any n, m (not limited to the truncation).
    CScalar entry(std::size_t n, std::size_t m) const;
};

MonomialModel monomial_gram(const Measure& m, std::size_t N);

CScalar model_inner(const MonomialModel& mm, const CoeffVec& v, const CoeffVec& w);
double model_norm2(const MonomialModel& mm, const CoeffVec& v);

/// Coefficient shift; Overflow when the top coefficient is nonzero.
CoeffVec apply_mz(const MonomialModel& mm, const CoeffVec& v);

/// <B_n(M_z) v, v> = sum_k (-1)^k C(n, k) ||z^k v||^2. Headroom error unless v
/// vanishes from index N - n on.
double bn_form(const MonomialModel& mm, int n, const CoeffVec& v);

/// Matrix (acting on coefficient vectors) of the compression of T (T^*T)^{-1}
/// to the model: T^*T is compressed to the model, inverted, shifted, and the
/// result projected G-orthogonally back onto the model.
CMatrix cauchy_dual_matrix(const MonomialModel& mm, const NumericPolicy& policy = {});

/// Operator norm of A with respect to the G inner product.
double model_operator_norm(const MonomialModel& mm, const CMatrix& A, const NumericPolicy& policy = {});

/// sum_k (-1)^k C(n, k) ||A^k v||^2 / ||v||^2 for a model operator A.
double agler_form(const MonomialModel& mm, const CMatrix& A, int n, const CoeffVec& v);

struct DualProbe {
    int n_max = 0;
    int trials = 0;
    std::size_t N = 0;
    double most_negative = 0.0;      // at size N
    double most_negative_2N = 0.0;   // same witness at size 2N
    int witness_n = 0;
    CoeffVec witness;
    bool truncation_caution = false;
    double dual_norm = 0.0;
    double dual_norm_2N = 0.0;
    double corner_deviation = 0.0;   // leading 8x8 corners of the N and 2N duals
};

/// Random test vectors supported on the first min(8, N/2) coefficients.
DualProbe bn_dual_probe(const Measure& m, std::size_t N, int n_max, int trials, std::uint64_t seed,
                        const NumericPolicy& policy = {});

// ---------------------------------------------------------------- quadrature

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre01(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Gram matrix of 1, ..., z^{N-1} from the area integral with the Poisson
/// weight: Gauss-Legendre in r, trapezoid in the angle with about
/// `angular_scale / (1 - r)` points on each circle.
CMatrix quadrature_gram(const Measure& m, std::size_t N, int radial_nodes = 48, double angular_scale = 40.0);

struct QuadratureCheck {
    double closed_form_deviation = 0.0;  // max entry |closed form - quadrature|
    double refinement_change = 0.0;      // max entry change on doubling both grids
};

QuadratureCheck check_closed_form(const Measure& m, std::size_t N);

/// max |D[i][j] - <f_i, f_j>| with f_i expanded to `degree` and paired through G.
double gram_crosscheck(const DirichletData& dd, const Measure& m, std::size_t degree = 200);

}  // namespace cauchydual
