#pragma once

// Complex scalar, polynomial and dense matrix primitives.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "cauchydual/policy.hpp"

namespace cauchydual {

using CScalar = std::complex<double>;

/// Throws ValidationError if a component is NaN or infinite.
void require_finite(CScalar z, const char* what);

/// Polynomial with complex coefficients, ascending degree. Trailing exact
/// zeros are trimmed so the leading coefficient is nonzero (the zero
/// polynomial keeps a single zero coefficient).
class CPoly {
public:
    CPoly() : coeffs_{CScalar{0.0}} {}
    explicit CPoly(std::vector<CScalar> coeffs);
    CPoly(std::initializer_list<CScalar> coeffs) : CPoly(std::vector<CScalar>(coeffs)) {}

    /// Monic polynomial prod (z - r).
    static CPoly from_roots(std::span<const CScalar> roots);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == CScalar{0.0}; }
    const std::vector<CScalar>& coeffs() const { return coeffs_; }
    CScalar operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : CScalar{0.0}; }
    CScalar leading() const { return coeffs_.back(); }

    /// Horner evaluation.
    CScalar operator()(CScalar z) const;
    /// sum |a_i| |z|^i, the natural scale for residuals of p(z).
    double magnitude_at(double abs_z) const;

    CPoly derivative() const;
    CPoly scaled(CScalar s) const;

    friend CPoly operator*(const CPoly& a, const CPoly& b);
    friend CPoly operator+(const CPoly& a, const CPoly& b);
    friend CPoly operator-(const CPoly& a, const CPoly& b);

private:
    void trim();
    std::vector<CScalar> coeffs_;
};

CScalar poly_eval(const CPoly& p, CScalar z);
CPoly poly_derivative(const CPoly& p);

/// All complex roots with multiplicity: Aberth-Ehrlich simultaneous iteration
/// followed by Newton polishing. Throws NonConvergence when the backward error
/// target is not met within `policy.root_max_sweeps` sweeps.
std::vector<CScalar> poly_roots(const CPoly& p, const NumericPolicy& policy = {});

/// Quotient of p by (z - root); the remainder must be below
/// `policy.deflation_tol` relative to the scale of p at the root, else NotARoot.
CPoly synthetic_division(const CPoly& p, CScalar root, const NumericPolicy& policy = {});

/// Leading `count` Taylor coefficients of num/den at the origin; den(0) != 0.
std::vector<CScalar> taylor_coefficients(const CPoly& num, const CPoly& den, std::size_t count);

/// Dense row-major complex matrix.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    CMatrix(std::initializer_list<std::initializer_list<CScalar>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(std::span<const CScalar> d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    CScalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    CScalar operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conjugate() const;
    CScalar trace() const;
    double frobenius() const;
    double max_abs() const;
    /// max |M(i,j) - conj(M(j,i))|
    double hermitian_defect() const;
    /// (M + M^H) / 2
    CMatrix hermitian_part() const;

    std::vector<CScalar> apply(std::span<const CScalar> v) const;

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator*(CScalar s, const CMatrix& a);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<CScalar> data_;
};

/// Eigenvalues (ascending) of a Hermitian matrix by cyclic Jacobi rotations.
std::vector<double> herm_eigen(const CMatrix& m, const NumericPolicy& policy = {});

/// Upper-triangular R with M = R^H R for Hermitian positive semidefinite M.
/// Near-zero pivots are clamped to zero and their row left empty; a pivot
/// below -chol_not_psd * trace raises NotPSD.
CMatrix cholesky_herm(const CMatrix& m, const NumericPolicy& policy = {});

/// Solves M X = rhs by LU with partial pivoting; Singular on a vanishing pivot.
CMatrix solve_linear(const CMatrix& m, const CMatrix& rhs, const NumericPolicy& policy = {});

/// Determinant by LU with partial pivoting.
CScalar lu_determinant(const CMatrix& m);

}  // namespace cauchydual
