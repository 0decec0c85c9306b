#include <cmath>
#include <numbers>
#include <random>

#include "cauchydual/error.hpp"
#include "cauchydual/operator_oracle.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace cauchydual;

namespace {

CoeffVec unit(std::size_t N, std::size_t i) {
    CoeffVec v(N, 0.0);
    v[i] = 1.0;
    return v;
}

CoeffVec random_vec(std::mt19937_64& rng, std::size_t N, std::size_t support) {
    std::normal_distribution<double> g;
    CoeffVec v(N, 0.0);
    for (std::size_t i = 0; i < support; ++i) v[i] = {g(rng), g(rng)};
    return v;
}

}  // namespace

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    std::vector<double> x, w;
    gauss_legendre01(10, x, w);
    for (int p = 0; p < 20; ++p) {
        double acc = 0.0;
        for (int i = 0; i < 10; ++i) acc += w[i] * std::pow(x[i], p);
        CHECK(std::abs(acc - 1.0 / (p + 1)) < 1e-14);
    }
}

TEST_CASE("monomial Gram closed form") {
    const MonomialModel delta = monomial_gram(fixtures::measure("0:1"), 8);
    CHECK(delta.G(2, 3) == CScalar(2.0));
    CHECK(delta.G(2, 2) == CScalar(3.0));
    CHECK(delta.G(0, 0) == CScalar(1.0));
    for (std::size_t m = 1; m < 8; ++m) {
        CHECK(delta.G(0, m) == CScalar(0.0));
        CHECK(delta.G(m, 0) == CScalar(0.0));
    }

    const MonomialModel tri = monomial_gram(fixtures::measure("0,1/3,2/3:1,1,1"), 16);
    for (std::size_t n = 0; n < 16; ++n)
        for (std::size_t m = 0; m < 16; ++m) {
            double want = n == m ? 1.0 : 0.0;
            if ((n + 48 - m) % 3 == 0) want += 3.0 * std::min(n, m);
            CHECK(std::abs(tri.G(n, m) - want) < 1e-12);
        }
    CHECK(tri.G.hermitian_defect() < 1e-14);
    CHECK_THROWS_AS(monomial_gram(fixtures::measure("0:1"), 3), Error);
}

TEST_CASE("closed form agrees with the area-integral quadrature") {
    std::vector<std::string> specs;
    for (const auto& named : fixtures::test_measures()) specs.push_back(named.spec);
    specs.push_back("0.1,0.35,0.8:0.5,2,1.25");
    for (const auto& spec : specs) {
        const auto qc = check_closed_form(fixtures::measure(spec), 16);
        CAPTURE(spec);
        CHECK(qc.closed_form_deviation <= 1e-6);
        CHECK(qc.refinement_change < 1e-7);
    }
    const CMatrix Q = quadrature_gram(fixtures::measure("0:1"), 4);
    CHECK(std::abs(Q(2, 3) - 2.0) < 1e-9);
    CHECK(std::abs(Q(2, 2) - 3.0) < 1e-9);
}

TEST_CASE("shift on coefficient vectors") {
    const MonomialModel mm = monomial_gram(fixtures::measure("0:1"), 6);
    CHECK(apply_mz(mm, unit(6, 0)) == unit(6, 1));
    CoeffVec v(6, 0.0);
    v[0] = v[1] = 1.0;
    const CoeffVec w = apply_mz(mm, v);
    CHECK(w == CoeffVec{0.0, 1.0, 1.0, 0.0, 0.0, 0.0});
    try {
        apply_mz(mm, unit(6, 5));
        FAIL("expected Overflow");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Overflow);
        CHECK(e.module() == "operator_oracle");
    }
}

TEST_CASE("Agler forms of M_z: 2-isometry and complete hyperexpansivity") {
    std::mt19937_64 rng(53);
    std::vector<std::string> specs;
    for (const auto& named : fixtures::test_measures()) specs.push_back(named.spec);
    specs.push_back("0.05,0.3,0.55,0.9:1.5,0.25,3,1");
    for (const auto& spec : specs) {
        const MonomialModel mm = monomial_gram(fixtures::measure(spec), 64);
        for (int t = 0; t < 30; ++t) {
            const CoeffVec v = random_vec(rng, 64, 58);
            const double n2 = model_norm2(mm, v);
            CHECK(std::abs(bn_form(mm, 2, v)) <= 1e-9 * n2);
            for (int n = 1; n <= 6; ++n) CHECK(bn_form(mm, n, v) <= 1e-9 * n2);
        }
    }
    const MonomialModel delta = monomial_gram(fixtures::measure("0:1"), 8);
    CHECK(std::abs(bn_form(delta, 1, unit(8, 0)) + 1.0) < 1e-15);
    CHECK(bn_form(delta, 0, unit(8, 7)) == doctest::Approx(8.0));
    try {
        bn_form(delta, 2, unit(8, 6));
        FAIL("expected Headroom");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Headroom);
    }
}

TEST_CASE("Cauchy dual on the model") {
    for (const auto& named : fixtures::test_measures()) {
        const Measure m = fixtures::measure(named.spec);
        const MonomialModel small = monomial_gram(m, 4);
        const CMatrix C4 = cauchy_dual_matrix(small);
        // <T' v, z w> = <v, w> whenever z w stays in the model
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                const CScalar lhs = model_inner(small, C4.apply(unit(4, i)), unit(4, j + 1));
                CHECK(std::abs(lhs - small.G(i, j)) < 1e-12);
            }

        const MonomialModel mm = monomial_gram(m, 64);
        const MonomialModel big = monomial_gram(m, 128);
        const CMatrix C = cauchy_dual_matrix(mm);
        const CMatrix Cb = cauchy_dual_matrix(big);
        CHECK(model_operator_norm(mm, C) <= 1.0 + 1e-6);
        double corner = 0.0;
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j) corner = std::max(corner, std::abs(C(i, j) - Cb(i, j)));
        CHECK(corner < 1e-6);
    }
}

TEST_CASE("Agler forms of the Cauchy dual") {
    const DualProbe delta = bn_dual_probe(fixtures::measure("0:1"), 64, 8, 20, 42);
    CHECK(delta.most_negative >= -1e-6);
    CHECK(delta.dual_norm <= 1.0 + 1e-6);
    CHECK_FALSE(delta.truncation_caution);

    const DualProbe anti = bn_dual_probe(fixtures::measure("0,1/2:1,1"), 64, 8, 20, 42);
    CHECK(anti.most_negative >= -1e-6);

    const DualProbe tri = bn_dual_probe(fixtures::measure("0,1/3,2/3:1,1,1"), 64, 8, 20, 42);
    CHECK(tri.most_negative < -1e-4);
    CHECK_FALSE(tri.truncation_caution);
    CHECK(tri.witness.size() == 64);
    CHECK(std::abs(tri.most_negative - tri.most_negative_2N) < 1e-6);
}

TEST_CASE("Gram of the f_j agrees with the monomial expansion") {
    for (const auto& named : fixtures::test_measures()) {
        const Measure m = fixtures::measure(named.spec);
        const FejerRiesz fr = fejer_riesz(m);
        const DirichletData dd = build_dirichlet(m, fr);
        CHECK(gram_crosscheck(dd, m, 200) <= 1e-6);
    }
}
