#include "cauchydual/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cauchydual/error.hpp"

namespace cauchydual {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

[[noreturn]] void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, "core_numerics", what);
}

}  // namespace

void require_finite(CScalar z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorKind::ValidationError, "core_numerics",
                    std::string("non-finite value for ") + what);
    }
}

// ---------------------------------------------------------------- CPoly

CPoly::CPoly(std::vector<CScalar> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    trim();
}

void CPoly::trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == CScalar{0.0}) coeffs_.pop_back();
}

CPoly CPoly::from_roots(std::span<const CScalar> roots) {
    std::vector<CScalar> c{1.0};
    for (CScalar r : roots) {
        std::vector<CScalar> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    return CPoly(std::move(c));
}

CScalar CPoly::operator()(CScalar z) const {
    CScalar acc = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * z + coeffs_[i];
    return acc;
}

double CPoly::magnitude_at(double abs_z) const {
    double acc = std::abs(coeffs_.back());
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) acc = acc * abs_z + std::abs(coeffs_[i]);
    return acc;
}

CPoly CPoly::derivative() const {
    if (coeffs_.size() == 1) return CPoly{};
    std::vector<CScalar> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
    return CPoly(std::move(d));
}

CPoly CPoly::scaled(CScalar s) const {
    std::vector<CScalar> c = coeffs_;
    for (auto& x : c) x *= s;
    return CPoly(std::move(c));
}

CPoly operator*(const CPoly& a, const CPoly& b) {
    std::vector<CScalar> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return CPoly(std::move(c));
}

CPoly operator+(const CPoly& a, const CPoly& b) {
    std::vector<CScalar> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
    return CPoly(std::move(c));
}

CPoly operator-(const CPoly& a, const CPoly& b) { return a + b.scaled(-1.0); }

CScalar poly_eval(const CPoly& p, CScalar z) { return p(z); }

CPoly poly_derivative(const CPoly& p) { return p.derivative(); }

// ---------------------------------------------------------------- roots

std::vector<CScalar> poly_roots(const CPoly& p, const NumericPolicy& policy) {
    if (p.degree() < 1) fail(ErrorKind::ValidationError, "poly_roots requires degree >= 1");
    for (CScalar c : p.coeffs()) require_finite(c, "polynomial coefficient");

    std::vector<CScalar> roots;
    // Exact zero roots are split off so the iteration works on a(0) != 0.
    std::size_t shift = 0;
    while (p[shift] == CScalar{0.0}) {
        roots.push_back(0.0);
        ++shift;
    }
    std::vector<CScalar> c(p.coeffs().begin() + static_cast<std::ptrdiff_t>(shift), p.coeffs().end());
    const CScalar lead = c.back();
    for (auto& x : c) x /= lead;
    const CPoly monic(c);
    const CPoly dmonic = monic.derivative();
    const int n = monic.degree();
    if (n == 0) return roots;

    double bound = 0.0;
    for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(monic[i]));
    const double radius = 1.0 + bound;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));

    std::vector<CScalar> z(n);
    for (int i = 0; i < n; ++i) {
        const double phase = 2.0 * std::numbers::pi * i / n + 0.4 + golden * i / n;
        z[i] = std::polar(radius, phase);
    }

    std::vector<bool> done(n, false);
    int remaining = n;
    for (int sweep = 0; sweep < policy.root_max_sweeps && remaining > 0; ++sweep) {
        for (int i = 0; i < n; ++i) {
            if (done[i]) continue;
            const CScalar val = monic(z[i]);
            const double scale = monic.magnitude_at(std::abs(z[i]));
            if (std::abs(val) <= 4.0 * kEps * scale) {
                done[i] = true;
                --remaining;
                continue;
            }
            const CScalar ratio = val / dmonic(z[i]);
            CScalar repulsion{0.0};
            for (int j = 0; j < n; ++j)
                if (j != i) repulsion += 1.0 / (z[i] - z[j]);
            const CScalar step = ratio / (1.0 - ratio * repulsion);
            z[i] -= step;
            if (std::abs(step) <= 2.0 * kEps * std::abs(z[i])) {
                done[i] = true;
                --remaining;
            }
        }
    }

    // Newton polishing on the original polynomial, accepting only improving steps.
    const CPoly dp = p.derivative();
    for (CScalar& r : z) {
        CScalar best = r;
        double best_res = std::abs(p(r));
        for (int it = 0; it < 8 && best_res > 0.0; ++it) {
            const CScalar d = dp(best);
            if (d == CScalar{0.0}) break;
            const CScalar cand = best - p(best) / d;
            const double res = std::abs(p(cand));
            if (!(res < best_res)) break;
            best = cand;
            best_res = res;
        }
        r = best;
    }

    for (CScalar r : z) {
        const double scale = p.magnitude_at(std::abs(r));
        if (!(std::abs(p(r)) <= policy.root_tol * scale)) {
            std::ostringstream os;
            os << "root finder did not reach backward error " << policy.root_tol << " within "
               << policy.root_max_sweeps << " sweeps";
            fail(ErrorKind::NonConvergence, os.str());
        }
        roots.push_back(r);
    }
    return roots;
}

CPoly synthetic_division(const CPoly& p, CScalar root, const NumericPolicy& policy) {
    const auto& a = p.coeffs();
    const int n = p.degree();
    if (n < 1) fail(ErrorKind::ValidationError, "synthetic division of a constant");
    std::vector<CScalar> b(n);
    b[n - 1] = a[n];
    for (int i = n - 1; i > 0; --i) b[i - 1] = a[i] + root * b[i];
    const CScalar remainder = a[0] + root * b[0];
    const double scale = p.magnitude_at(std::abs(root));
    if (std::abs(remainder) > policy.deflation_tol * scale) {
        std::ostringstream os;
        os << "deflation remainder " << std::abs(remainder) << " exceeds tolerance";
        fail(ErrorKind::NotARoot, os.str());
    }
    return CPoly(std::move(b));
}

std::vector<CScalar> taylor_coefficients(const CPoly& num, const CPoly& den, std::size_t count) {
    const CScalar d0 = den[0];
    if (d0 == CScalar{0.0}) fail(ErrorKind::PoleHit, "Taylor expansion at a pole");
    std::vector<CScalar> out(count);
    const std::size_t dd = static_cast<std::size_t>(den.degree());
    for (std::size_t n = 0; n < count; ++n) {
        CScalar acc = num[n];
        for (std::size_t k = 1; k <= std::min(n, dd); ++k) acc -= den[k] * out[n - k];
        out[n] = acc / d0;
    }
    return out;
}

// ---------------------------------------------------------------- CMatrix

CMatrix::CMatrix(std::initializer_list<std::initializer_list<CScalar>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) fail(ErrorKind::ValidationError, "ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const CScalar> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
}

CMatrix CMatrix::transpose() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

CMatrix CMatrix::conjugate() const {
    CMatrix t = *this;
    for (auto& x : t.data_) x = std::conj(x);
    return t;
}

CScalar CMatrix::trace() const {
    CScalar acc{0.0};
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) acc += (*this)(i, i);
    return acc;
}

double CMatrix::frobenius() const {
    double acc = 0.0;
    for (auto x : data_) acc += std::norm(x);
    return std::sqrt(acc);
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (auto x : data_) m = std::max(m, std::abs(x));
    return m;
}

double CMatrix::hermitian_defect() const {
    if (!square()) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

CMatrix CMatrix::hermitian_part() const {
    CMatrix h(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            h(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return h;
}

std::vector<CScalar> CMatrix::apply(std::span<const CScalar> v) const {
    if (v.size() != cols_) fail(ErrorKind::ValidationError, "matrix-vector size mismatch");
    std::vector<CScalar> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        CScalar acc{0.0};
        for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorKind::ValidationError, "matrix product size mismatch");
    CMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const CScalar aik = a(i, k);
            if (aik == CScalar{0.0}) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorKind::ValidationError, "matrix sum size mismatch");
    CMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) { return a + (-1.0) * b; }

CMatrix operator*(CScalar s, const CMatrix& a) {
    CMatrix c = a;
    for (auto& x : c.data_) x *= s;
    return c;
}

// ---------------------------------------------------------------- eigen

std::vector<double> herm_eigen(const CMatrix& m, const NumericPolicy& policy) {
    if (!m.square()) fail(ErrorKind::ValidationError, "herm_eigen requires a square matrix");
    const std::size_t n = m.rows();
    if (m.hermitian_defect() > policy.hermitian_tol * std::max(1.0, m.max_abs()))
        fail(ErrorKind::ValidationError, "herm_eigen input is not Hermitian");

    CMatrix a = m.hermitian_part();
    for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

    const double norm = a.frobenius();
    std::vector<double> eig(n);
    if (n == 0) return eig;
    const double target = policy.eigen_tol * norm;
    const double skip = target / static_cast<double>(n);

    auto off_norm = [&] {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) acc += 2.0 * std::norm(a(i, j));
        return std::sqrt(acc);
    };

    int sweep = 0;
    while (off_norm() > target) {
        if (sweep++ >= policy.eigen_max_sweeps)
            fail(ErrorKind::NonConvergence, "Jacobi eigensolver exceeded its sweep budget");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const CScalar apq = a(p, q);
                const double g = std::abs(apq);
                if (g <= skip) continue;
                const CScalar e = apq / g;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const CScalar jpp = c, jpq = s, jqp = -s * std::conj(e), jqq = c * std::conj(e);
                for (std::size_t k = 0; k < n; ++k) {
                    const CScalar akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const CScalar apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

// ---------------------------------------------------------------- Cholesky

CMatrix cholesky_herm(const CMatrix& m, const NumericPolicy& policy) {
    if (!m.square()) fail(ErrorKind::ValidationError, "cholesky_herm requires a square matrix");
    if (m.hermitian_defect() > policy.hermitian_tol * std::max(1.0, m.max_abs()))
        fail(ErrorKind::ValidationError, "cholesky_herm input is not Hermitian");
    const std::size_t n = m.rows();
    const double trace = std::abs(m.trace().real());
    CMatrix r(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = m(j, j).real();
        for (std::size_t k = 0; k < j; ++k) pivot -= std::norm(r(k, j));
        if (pivot < -policy.chol_not_psd * trace) {
            std::ostringstream os;
            os << "negative pivot " << pivot << " at index " << j;
            throw Error(ErrorKind::NotPSD, "core_numerics", os.str());
        }
        if (pivot <= policy.chol_clamp * trace) continue;  // row j stays zero
        const double rjj = std::sqrt(pivot);
        r(j, j) = rjj;
        for (std::size_t i = j + 1; i < n; ++i) {
            CScalar acc = m(j, i);
            for (std::size_t k = 0; k < j; ++k) acc -= std::conj(r(k, j)) * r(k, i);
            r(j, i) = acc / rjj;
        }
    }
    return r;
}

// ---------------------------------------------------------------- LU

namespace {

struct LU {
    CMatrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
    bool singular = false;
};

LU lu_factor(const CMatrix& m, double singular_tol) {
    LU f{m, {}, 1, false};
    const std::size_t n = m.rows();
    f.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.perm[i] = i;
    const double scale = m.max_abs();
    CMatrix& a = f.lu;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > best) best = std::abs(a(i, k)), piv = i;
        if (best <= singular_tol * scale || best == 0.0) {
            f.singular = true;
            return f;
        }
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
            f.sign = -f.sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const CScalar l = a(i, k) / a(k, k);
            a(i, k) = l;
            if (l == CScalar{0.0}) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
        }
    }
    return f;
}

}  // namespace

CMatrix solve_linear(const CMatrix& m, const CMatrix& rhs, const NumericPolicy& policy) {
    if (!m.square() || rhs.rows() != m.rows()) fail(ErrorKind::ValidationError, "solve_linear size mismatch");
    const LU f = lu_factor(m, policy.singular_tol);
    if (f.singular) throw Error(ErrorKind::Singular, "core_numerics", "matrix is numerically singular");
    const std::size_t n = m.rows();
    CMatrix x(n, rhs.cols());
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
        std::vector<CScalar> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            CScalar acc = rhs(f.perm[i], c);
            for (std::size_t j = 0; j < i; ++j) acc -= f.lu(i, j) * y[j];
            y[i] = acc;
        }
        for (std::size_t i = n; i-- > 0;) {
            CScalar acc = y[i];
            for (std::size_t j = i + 1; j < n; ++j) acc -= f.lu(i, j) * x(j, c);
            x(i, c) = acc / f.lu(i, i);
        }
    }
    return x;
}

CScalar lu_determinant(const CMatrix& m) {
    if (!m.square()) fail(ErrorKind::ValidationError, "determinant of a non-square matrix");
    const LU f = lu_factor(m, 0.0);
    if (f.singular) return 0.0;
    CScalar det = static_cast<double>(f.sign);
    for (std::size_t i = 0; i < m.rows(); ++i) det *= f.lu(i, i);
    return det;
}

}  // namespace cauchydual
