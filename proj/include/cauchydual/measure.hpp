#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cauchydual/numerics.hpp"
#include "json.hpp"

namespace cauchydual {

/// Angle as a fraction of a full turn, reduced to lowest terms in [0, 1).
struct Turns {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Turns make(std::int64_t num, std::int64_t den);
    double radians() const;
    std::string str() const;  // "1/3", "0"
    friend bool operator==(const Turns&, const Turns&) = default;
    friend Turns operator+(const Turns& a, const Turns& b);
};

/// Parses "p/q", an integer, or a terminating decimal such as "0.125".
Turns parse_turns(std::string_view text);

/// Point on the unit circle; when `exact` is set the value is the correctly
/// rounded root of unity e^{2 pi i num/den}.
struct CirclePoint {
    CScalar value;
    std::optional<Turns> exact;

    static CirclePoint from_turns(Turns t);
    static CirclePoint from_angle(double radians);
    /// Validates |z| = 1 within `on_circle_tol`; stores z / |z| unless z is
    /// already on the circle to a few ulp, in which case it is kept as given.
    static CirclePoint from_value(CScalar z, double on_circle_tol = 1e-12);
};

struct Atom {
    CirclePoint point;
    double weight = 0.0;
};

/// Finitely supported positive measure sum_j c_j delta_{zeta_j} on the circle.
class Measure {
public:
    /// Validates positivity, distinctness and the atom count.
    explicit Measure(std::vector<Atom> atoms, const NumericPolicy& policy = {});

    std::size_t k() const { return atoms_.size(); }
    const std::vector<Atom>& atoms() const { return atoms_; }
    CScalar point(std::size_t j) const { return atoms_[j].point.value; }
    double weight(std::size_t j) const { return atoms_[j].weight; }
    std::vector<CScalar> points() const;
    /// Inline form "t1,t2:w1,w2" when every point is exact, otherwise empty.
    std::string inline_spec() const;

private:
    std::vector<Atom> atoms_;
};

/// Inline "t1,...,tk : w1,...,wk" (turns as rationals or decimals) or a JSON
/// document `{"atoms": [{"turns"|"angle"|"point", "weight"}]}`.
Measure parse_measure(std::string_view spec, const NumericPolicy& policy = {});
Measure measure_from_json(const nlohmann::json& doc, const NumericPolicy& policy = {});
nlohmann::json measure_to_json(const Measure& m);

/// Multiplies every atom by e^{2 pi i phase}; weights unchanged.
Measure rotate_measure(const Measure& m, Turns phase, const NumericPolicy& policy = {});
Measure permute_measure(const Measure& m, const std::vector<std::size_t>& order,
                        const NumericPolicy& policy = {});

}  // namespace cauchydual
