#include "cauchydual/operator_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "cauchydual/error.hpp"

namespace cauchydual {

namespace {

constexpr const char* kModule = "operator_oracle";

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

// H[m][n] = <e_n, e_m> so that <v, w> = w^H H v.
CMatrix pairing_matrix(const MonomialModel& mm, std::size_t rows, std::size_t cols, std::size_t off_r = 0,
                       std::size_t off_c = 0) {
    CMatrix H(rows, cols);
    for (std::size_t m = 0; m < rows; ++m)
        for (std::size_t n = 0; n < cols; ++n) H(m, n) = mm.entry(n + off_c, m + off_r);
    return H;
}

CoeffVec pad(const CoeffVec& v, std::size_t n) {
    CoeffVec out(n, 0.0);
    std::copy_n(v.begin(), std::min(n, v.size()), out.begin());
    return out;
}

}  // namespace

CScalar MonomialModel::entry(std::size_t n, std::size_t m) const {
    CScalar acc = n == m ? 1.0 : 0.0;
    const std::size_t lo = std::min(n, m);
    if (lo == 0) return acc;
    const long diff = static_cast<long>(n) - static_cast<long>(m);
    CScalar s{0.0};
    for (std::size_t j = 0; j < points.size(); ++j) {
        // zeta^{n-m} through the angle keeps |zeta^diff| = 1 for large powers.
        s += weights[j] * std::polar(1.0, std::arg(points[j]) * static_cast<double>(diff));
    }
    return acc + static_cast<double>(lo) * s;
}

MonomialModel monomial_gram(const Measure& m, std::size_t N) {
    if (N < 4) throw Error(ErrorKind::ValidationError, kModule, "truncation size must be at least 4");
    MonomialModel mm;
    mm.N = N;
    mm.points = m.points();
    for (const auto& a : m.atoms()) mm.weights.push_back(a.weight);
    mm.G = CMatrix(N, N);
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t k = 0; k < N; ++k) mm.G(n, k) = mm.entry(n, k);
    return mm;
}

CScalar model_inner(const MonomialModel& mm, const CoeffVec& v, const CoeffVec& w) {
    if (v.size() != mm.N || w.size() != mm.N)
        throw Error(ErrorKind::ValidationError, kModule, "coefficient vector length differs from the model size");
    CScalar acc{0.0};
    for (std::size_t n = 0; n < mm.N; ++n) {
        if (v[n] == CScalar{0.0}) continue;
        CScalar row{0.0};
        for (std::size_t m = 0; m < mm.N; ++m) row += std::conj(w[m]) * mm.G(n, m);
        acc += v[n] * row;
    }
    return acc;
}

double model_norm2(const MonomialModel& mm, const CoeffVec& v) { return model_inner(mm, v, v).real(); }

CoeffVec apply_mz(const MonomialModel& mm, const CoeffVec& v) {
    if (v.size() != mm.N)
        throw Error(ErrorKind::ValidationError, kModule, "coefficient vector length differs from the model size");
    if (v.back() != CScalar{0.0}) throw Error(ErrorKind::Overflow, kModule, "top coefficient is nonzero");
    CoeffVec out(mm.N, 0.0);
    std::copy(v.begin(), v.end() - 1, out.begin() + 1);
    return out;
}

double bn_form(const MonomialModel& mm, int n, const CoeffVec& v) {
    if (n < 0) throw Error(ErrorKind::ValidationError, kModule, "Agler order must be nonnegative");
    if (v.size() != mm.N)
        throw Error(ErrorKind::ValidationError, kModule, "coefficient vector length differs from the model size");
    for (std::size_t i = mm.N - std::min<std::size_t>(mm.N, n); i < mm.N; ++i)
        if (v[i] != CScalar{0.0}) {
            std::ostringstream os;
            os << "vector must vanish from index " << mm.N - n << " on for order " << n;
            throw Error(ErrorKind::Headroom, kModule, os.str());
        }
    double acc = 0.0;
    CoeffVec u = v;
    for (int k = 0; k <= n; ++k) {
        acc += (k % 2 == 0 ? 1.0 : -1.0) * binomial(n, k) * model_norm2(mm, u);
        if (k < n) u = apply_mz(mm, u);
    }
    return acc;
}

CMatrix cauchy_dual_matrix(const MonomialModel& mm, const NumericPolicy& policy) {
    const std::size_t N = mm.N;
    const CMatrix H = pairing_matrix(mm, N, N);
    const CMatrix A = pairing_matrix(mm, N, N, 1, 1);          // compressed T^*T, paired
    const CMatrix KS = pairing_matrix(mm, N, N, 0, 1);         // <z e_n, e_m>
    try {
        const CMatrix Xinv = solve_linear(A, H, policy);       // (H^{-1} A)^{-1}
        return solve_linear(H, KS * Xinv, policy);
    } catch (const Error& e) {
        throw Error(e.kind(), kModule, std::string("Cauchy dual: ") + e.what());
    }
}

double model_operator_norm(const MonomialModel& mm, const CMatrix& A, const NumericPolicy& policy) {
    const CMatrix H = pairing_matrix(mm, mm.N, mm.N);
    const CMatrix R = cholesky_herm(H, policy);
    const CMatrix Rinv = solve_linear(R, CMatrix::identity(mm.N), policy);
    const CMatrix M = R * A * Rinv;
    const auto eig = herm_eigen((M.adjoint() * M).hermitian_part(), policy);
    return std::sqrt(std::max(0.0, eig.back()));
}

double agler_form(const MonomialModel& mm, const CMatrix& A, int n, const CoeffVec& v) {
    const double base = model_norm2(mm, v);
    if (!(base > 0.0)) throw Error(ErrorKind::ValidationError, kModule, "test vector has zero norm");
    double acc = 0.0;
    CoeffVec u = v;
    for (int k = 0; k <= n; ++k) {
        acc += (k % 2 == 0 ? 1.0 : -1.0) * binomial(n, k) * model_norm2(mm, u);
        if (k < n) u = A.apply(u);
    }
    return acc / base;
}

DualProbe bn_dual_probe(const Measure& m, std::size_t N, int n_max, int trials, std::uint64_t seed,
                        const NumericPolicy& policy) {
    DualProbe out;
    out.n_max = n_max;
    out.trials = trials;
    out.N = N;
    const MonomialModel small = monomial_gram(m, N);
    const MonomialModel large = monomial_gram(m, 2 * N);
    const CMatrix Cs = cauchy_dual_matrix(small, policy);
    const CMatrix Cl = cauchy_dual_matrix(large, policy);
    out.dual_norm = model_operator_norm(small, Cs, policy);
    out.dual_norm_2N = model_operator_norm(large, Cl, policy);
    const std::size_t corner = std::min<std::size_t>(8, N);
    for (std::size_t i = 0; i < corner; ++i)
        for (std::size_t j = 0; j < corner; ++j)
            out.corner_deviation = std::max(out.corner_deviation, std::abs(Cs(i, j) - Cl(i, j)));

    const std::size_t support = std::min<std::size_t>(8, N / 2);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    bool first = true;
    for (int t = 0; t < trials; ++t) {
        CoeffVec v(N, 0.0);
        for (std::size_t i = 0; i < support; ++i) v[i] = {gauss(rng), gauss(rng)};
        for (int n = 1; n <= n_max; ++n) {
            const double val = agler_form(small, Cs, n, v);
            if (first || val < out.most_negative) {
                first = false;
                out.most_negative = val;
                out.witness_n = n;
                out.witness = v;
            }
        }
    }
    if (!first) {
        out.most_negative_2N = agler_form(large, Cl, out.witness_n, pad(out.witness, 2 * N));
        const double scale = std::max({std::abs(out.most_negative), std::abs(out.most_negative_2N), 1e-12});
        out.truncation_caution = std::abs(out.most_negative - out.most_negative_2N) > 0.1 * scale;
    }
    return out;
}

// ---------------------------------------------------------------- quadrature

void gauss_legendre01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes[i] = 0.5 * (1.0 - x);
        weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);  // 2/((1-x^2)p'^2) scaled to [0, 1]
    }
}

CMatrix quadrature_gram(const Measure& m, std::size_t N, int radial_nodes, double angular_scale) {
    std::vector<double> rs, ws;
    gauss_legendre01(radial_nodes, rs, ws);
    const auto pts = m.points();
    const int J = static_cast<int>(N) - 1;

    CMatrix G = CMatrix::identity(N);
    std::vector<CScalar> F(2 * J + 1);
    for (int q = 0; q < radial_nodes; ++q) {
        const double r = rs[q];
        const auto M = static_cast<std::size_t>(
            std::clamp(std::ceil(angular_scale / (1.0 - r)), 64.0, static_cast<double>(1 << 20)));
        // F(j) = (1/2pi) int P_mu(r e^{i theta}) e^{i j theta} d theta
        std::fill(F.begin(), F.end(), CScalar{0.0});
        for (std::size_t s = 0; s < M; ++s) {
            const double th = 2.0 * std::numbers::pi * s / M;
            const CScalar z = std::polar(r, th);
            double P = 0.0;
            for (std::size_t j = 0; j < pts.size(); ++j) P += m.weight(j) * (1.0 - r * r) / std::norm(z - pts[j]);
            const CScalar step = std::polar(1.0, th);
            CScalar e = std::polar(1.0, -J * th);
            for (int j = -J; j <= J; ++j, e *= step) F[j + J] += P * e;
        }
        for (auto& f : F) f /= static_cast<double>(M);
        for (std::size_t n = 1; n < N; ++n)
            for (std::size_t k = 1; k < N; ++k) {
                const int diff = static_cast<int>(n) - static_cast<int>(k);
                G(n, k) += ws[q] * 2.0 * n * k * std::pow(r, n + k - 1) * F[diff + J];
            }
    }
    return G;
}

QuadratureCheck check_closed_form(const Measure& m, std::size_t N) {
    const CMatrix base = quadrature_gram(m, N, 48, 40.0);
    const CMatrix fine = quadrature_gram(m, N, 96, 80.0);
    const MonomialModel mm = monomial_gram(m, std::max<std::size_t>(N, 4));
    QuadratureCheck out;
    for (std::size_t n = 0; n < N; ++n)
        for (std::size_t k = 0; k < N; ++k) {
            out.refinement_change = std::max(out.refinement_change, std::abs(base(n, k) - fine(n, k)));
            out.closed_form_deviation = std::max(out.closed_form_deviation, std::abs(mm.G(n, k) - fine(n, k)));
        }
    return out;
}

double gram_crosscheck(const DirichletData& dd, const Measure& m, std::size_t degree) {
    const std::size_t n = degree + 1;
    const MonomialModel mm = monomial_gram(m, n);
    std::vector<CoeffVec> f;
    for (std::size_t j = 0; j < dd.k(); ++j)
        f.push_back(taylor_coefficients(dd.deflated[j].scaled(1.0 / dd.fprime_at_zeta[j]), dd.outer.q, n));
    double worst = 0.0;
    for (std::size_t i = 0; i < dd.k(); ++i)
        for (std::size_t j = 0; j < dd.k(); ++j)
            worst = std::max(worst, std::abs(dd.D(i, j) - model_inner(mm, f[i], f[j])));
    return worst;
}

}  // namespace cauchydual
