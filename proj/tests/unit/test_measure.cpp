#include <cmath>
#include <numbers>
#include <random>

#include "cauchydual/error.hpp"
#include "cauchydual/measure.hpp"
#include "doctest.h"

using namespace cauchydual;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvariantViolation;
}

}  // namespace

TEST_CASE("turns parsing and reduction") {
    CHECK(parse_turns("1/3") == Turns{1, 3});
    CHECK(parse_turns("2/6") == Turns{1, 3});
    CHECK(parse_turns("4/3") == Turns{1, 3});
    CHECK(parse_turns("-1/4") == Turns{3, 4});
    CHECK(parse_turns("0.125") == Turns{1, 8});
    CHECK(parse_turns("1") == Turns{0, 1});
    CHECK(parse_turns("0").str() == "0");
    CHECK(parse_turns("5/12").str() == "5/12");
    CHECK((Turns{1, 3} + Turns{2, 3}) == Turns{0, 1});
    CHECK(kind_of([] { parse_turns("1/0"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_turns("abc"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_turns(""); }) == ErrorKind::ParseError);
}

TEST_CASE("exact circle points land on the axes") {
    CHECK(CirclePoint::from_turns({1, 4}).value == CScalar(0.0, 1.0));
    CHECK(CirclePoint::from_turns({1, 2}).value == CScalar(-1.0, 0.0));
    CHECK(CirclePoint::from_turns({3, 4}).value == CScalar(0.0, -1.0));
    const CScalar w = CirclePoint::from_turns({1, 3}).value;
    CHECK(std::abs(w - CScalar(-0.5, std::sqrt(3.0) / 2.0)) < 1e-16);
    const CScalar w2 = CirclePoint::from_turns({2, 3}).value;
    CHECK(w2 == std::conj(w));
}

TEST_CASE("inline measure parsing") {
    const Measure m = parse_measure("0,1/3,2/3:1,1,1");
    CHECK(m.k() == 3);
    CHECK(m.point(0) == CScalar(1.0, 0.0));
    CHECK(m.weight(2) == 1.0);
    CHECK(m.inline_spec() == "0,1/3,2/3:1,1,1");
    CHECK(parse_measure(" 0 , 1/2 : 1 , 2.5 ").weight(1) == 2.5);

    CHECK(kind_of([] { parse_measure("0,1/3:1"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_measure("0,1/3"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { parse_measure("0,0:1,1"); }) == ErrorKind::ValidationError);
    CHECK(kind_of([] { parse_measure("0:-1"); }) == ErrorKind::ValidationError);
    CHECK(kind_of([] { parse_measure("0:0"); }) == ErrorKind::ValidationError);
    CHECK(kind_of([] { parse_measure(":"); }) != ErrorKind::InvariantViolation);
}

TEST_CASE("measure atom limits") {
    std::string turns, weights;
    for (int j = 0; j < 17; ++j) {
        turns += (j ? "," : "") + std::to_string(j) + "/17";
        weights += j ? ",1" : "1";
    }
    CHECK(kind_of([&] { parse_measure(turns + ":" + weights); }) == ErrorKind::ValidationError);
    NumericPolicy p;
    p.max_atoms = 16;
    CHECK_NOTHROW(parse_measure("0,1/16,1/8:1,1,1", p));
}

TEST_CASE("JSON measure forms") {
    const auto doc = nlohmann::json::parse(R"({"atoms": [
        {"turns": "1/4", "weight": 2},
        {"angle": 3.141592653589793, "weight": 1},
        {"point": {"re": 0.6, "im": -0.8}, "weight": 0.5}]})");
    const Measure m = measure_from_json(doc);
    CHECK(m.k() == 3);
    CHECK(m.point(0) == CScalar(0.0, 1.0));
    CHECK(std::abs(m.point(1) - CScalar(-1.0, 0.0)) < 1e-15);
    CHECK(std::abs(m.point(2) - CScalar(0.6, -0.8)) < 1e-15);
    CHECK(parse_measure(doc.dump()).k() == 3);

    const auto off = nlohmann::json::parse(R"({"atoms": [{"point": {"re": 0.6, "im": 0.6}, "weight": 1}]})");
    CHECK(kind_of([&] { measure_from_json(off); }) == ErrorKind::ValidationError);
    CHECK(kind_of([] { measure_from_json(nlohmann::json::parse(R"({"atoms": 3})")); }) == ErrorKind::ParseError);
}

TEST_CASE("JSON round trip is lossless") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi), wt(0.01, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Atom> atoms;
        const int k = 1 + trial % 6;
        for (int j = 0; j < k; ++j) {
            if (trial % 2 == 0)
                atoms.push_back({CirclePoint::from_turns(Turns::make(j, k)), wt(rng)});
            else
                atoms.push_back({CirclePoint::from_angle(ang(rng)), wt(rng)});
        }
        Measure m(atoms);
        const auto j1 = measure_to_json(m);
        const Measure back = measure_from_json(nlohmann::json::parse(j1.dump()));
        REQUIRE(back.k() == m.k());
        for (std::size_t i = 0; i < m.k(); ++i) {
            CHECK(back.point(i) == m.point(i));
            CHECK(back.weight(i) == m.weight(i));
        }
        CHECK(measure_to_json(back) == j1);
    }
}

TEST_CASE("rotation and permutation") {
    const Measure m = parse_measure("0,1/3,2/3:1,1,1");
    const Measure r = rotate_measure(m, {1, 7});
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(std::abs(r.point(j) - m.point(j) * std::polar(1.0, 2.0 * std::numbers::pi / 7.0)) < 1e-15);
        REQUIRE(r.atoms()[j].point.exact.has_value());
    }
    CHECK(r.atoms()[1].point.exact->str() == "10/21");
    const Measure p = permute_measure(m, {2, 0, 1});
    CHECK(p.point(0) == m.point(2));
    CHECK(kind_of([&] { permute_measure(m, {0, 0, 1}); }) == ErrorKind::ValidationError);
}
