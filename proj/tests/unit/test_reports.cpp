#include <cmath>

#include "cauchydual/error.hpp"
#include "cauchydual/pipeline.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace cauchydual;

TEST_CASE("policy JSON: partial documents keep defaults, unknown keys fail") {
    const NumericPolicy p = nlohmann::json::parse(R"({"l_max": 4, "zero_accept": 1e-8})").get<NumericPolicy>();
    CHECK(p.l_max == 4);
    CHECK(p.zero_accept == 1e-8);
    CHECK(p.root_tol == NumericPolicy{}.root_tol);
    CHECK_THROWS_AS(nlohmann::json::parse(R"({"l_maxx": 4})").get<NumericPolicy>(), Error);

    const nlohmann::json j = NumericPolicy{};
    CHECK(j.get<NumericPolicy>().seed == 42);
    CHECK(nlohmann::json(j.get<NumericPolicy>()) == j);

    NumericPolicy bad;
    bad.zero_accept = 1e-3;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = NumericPolicy{};
    bad.psd_tol = -1.0;
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("analyze report round-trips and is byte-stable") {
    const Measure m = fixtures::measure("0,1/3,2/3:1,1,1");
    const NumericPolicy policy;
    const Report r = cmd_analyze(m, policy, {true, false});
    REQUIRE(r.oracle.has_value());
    CHECK_FALSE(r.timings.has_value());
    CHECK(r.verdict.decision == Decision::NotSubnormal);
    CHECK(r.schema == 1);

    const nlohmann::json j = r;
    const Report back = nlohmann::json::parse(j.dump()).get<Report>();
    CHECK(nlohmann::json(back).dump() == j.dump());
    CHECK(back.D(0, 1) == r.D(0, 1));
    CHECK(back.verdict.pairs[0].S_rt == r.verdict.pairs[0].S_rt);

    const Report again = cmd_analyze(m, policy, {true, false});
    CHECK(nlohmann::json(again).dump(2) == j.dump(2));

    const Report timed = cmd_analyze(m, policy, {false, true});
    REQUIRE(timed.timings.has_value());
    CHECK(timed.timings->count("fejer_riesz") == 1);
    const Report timed_back = nlohmann::json(timed).get<Report>();
    CHECK(timed_back.timings == timed.timings);

    nlohmann::json wrong = j;
    wrong["schema"] = 2;
    CHECK_THROWS_AS(wrong.get<Report>(), Error);
}

TEST_CASE("oracle summary for the controls carries no violation flags") {
    for (const char* spec : {"0:1", "0,1/2:1,1"}) {
        const Report r = cmd_analyze(fixtures::measure(spec), NumericPolicy{}, {true, false});
        REQUIRE(r.oracle.has_value());
        CHECK(r.oracle->flags.empty());
        CHECK(r.oracle->b2_max <= 1e-9);
        CHECK(r.oracle->bn_max <= 1e-9);
    }
    const Report tri = cmd_analyze(fixtures::measure("0,1/3,2/3:1,1,1"), NumericPolicy{}, {true, false});
    CHECK(tri.oracle->flags == std::vector<std::string>{"dual_negative_witness"});
}

TEST_CASE("paper check") {
    const PaperCheckReport r = cmd_paper_check(std::nullopt, std::nullopt, NumericPolicy{});
    CHECK(r.closed_form_applicable);
    CHECK(r.passed());
    CHECK(r.decision == "NotSubnormal");
    for (const auto& item : r.items) {
        CAPTURE(item.name);
        CHECK(item.status == CheckStatus::Pass);
    }
    const nlohmann::json j = r;
    CHECK(nlohmann::json(j.get<PaperCheckReport>()) == j);

    const PaperCheckReport rot = cmd_paper_check(std::nullopt, Turns{1, 7}, NumericPolicy{});
    CHECK(rot.closed_form_applicable);
    CHECK(rot.passed());
    CHECK(rot.decision == r.decision);
    CHECK(rot.rotation == "1/7");

    const PaperCheckReport skew = cmd_paper_check(fixtures::measure("0,1/3,2/3:1,1,2"), std::nullopt, NumericPolicy{});
    CHECK_FALSE(skew.closed_form_applicable);
    CHECK(skew.passed());
    std::size_t na = 0;
    for (const auto& item : skew.items) {
        if (item.status == CheckStatus::NotApplicable) ++na;
        else CHECK(item.status == CheckStatus::Pass);
    }
    CHECK(na == 14);

    const PaperCheckReport perm = cmd_paper_check(fixtures::measure("2/3,0,1/3:1,1,1"), std::nullopt, NumericPolicy{});
    CHECK(perm.closed_form_applicable);
    CHECK(perm.passed());
}

TEST_CASE("sweep rows: order, degenerate cells, equi-spaced cell") {
    SweepSpec spec;
    spec.grid = 6;
    spec.weights = {{1.0, 1.0, 1.0}, {1.0, 2.0, 0.5}};
    spec.jobs = 1;
    const auto serial = cmd_sweep(spec, NumericPolicy{});
    spec.jobs = 3;
    const auto parallel = cmd_sweep(spec, NumericPolicy{});
    CHECK(serial.size() == 72);
    CHECK(sweep_csv(serial) == sweep_csv(parallel));

    for (const auto& row : serial) {
        const bool degenerate = row.theta2.num == 0 || row.theta3.num == 0 || row.theta2 == row.theta3;
        if (degenerate) {
            CHECK(row.error.rfind("ValidationError (measure_model)", 0) == 0);
            CHECK_FALSE(row.max_offdiag_norm.has_value());
        } else {
            CHECK(row.error.empty());
            CHECK(row.max_offdiag_norm.has_value());
        }
        if (row.w == std::array<double, 3>{1.0, 1.0, 1.0} && row.theta2 == Turns{1, 3} && row.theta3 == Turns{2, 3}) {
            CHECK(row.verdict == "NotSubnormal");
            CHECK(*row.max_offdiag_norm > 1e-2);
        }
    }
    const std::string csv = sweep_csv(serial);
    CHECK(csv.rfind("theta2,theta3,w1,w2,w3,max_offdiag_norm,verdict,error\n", 0) == 0);

    SweepRow quoted;
    quoted.error = "a, \"b\"";
    CHECK(sweep_csv({quoted}).find("\"a, \"\"b\"\"\"") != std::string::npos);
}

TEST_CASE("kernel command") {
    for (const auto& named : fixtures::test_measures()) {
        const Measure m = fixtures::measure(named.spec);
        const KernelReport at0 = cmd_kernel(m, {0.3, -0.2}, 0.0, NumericPolicy{});
        CHECK(std::abs(at0.k_b - 1.0) < 1e-12);
        CHECK(std::abs(at0.k_full - 1.0) < 1e-12);
        const KernelReport diag = cmd_kernel(m, {0.5, 0.4}, {0.5, 0.4}, NumericPolicy{});
        for (CScalar v : {diag.k_omu, diag.k_perp, diag.k_full, diag.k_b}) {
            CHECK(v.real() > 0.0);
            CHECK(std::abs(v.imag()) < 1e-12 * v.real());
        }
        const KernelReport gen = cmd_kernel(m, {-0.6, 0.1}, {0.2, 0.7}, NumericPolicy{});
        CHECK(gen.difference <= 1e-8 * (1.0 + std::abs(gen.k_b)));
        const nlohmann::json j = gen;
        CHECK(nlohmann::json(j.get<KernelReport>()) == j);
    }
    CHECK_THROWS_AS(cmd_kernel(fixtures::measure("0:1"), 1.2, 0.0, NumericPolicy{}), Error);
}
