#include <limits>
#include "cauchydual/measure.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "cauchydual/error.hpp"

namespace cauchydual {

namespace {

constexpr const char* kModule = "measure_model";

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, kModule, what); }
[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::ValidationError, kModule, what); }

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

std::int64_t parse_int(std::string_view s) {
    std::int64_t v = 0;
    if (s.empty()) parse_fail("empty integer");
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) parse_fail("malformed integer '" + std::string(s) + "'");
    return v;
}

double parse_double(std::string_view s) {
    double v = 0.0;
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        parse_fail("malformed number '" + std::string(s) + "'");
    return v;
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

}  // namespace

// ---------------------------------------------------------------- Turns

Turns Turns::make(std::int64_t num, std::int64_t den) {
    if (den == 0) parse_fail("zero denominator in turns");
    if (den < 0) num = -num, den = -den;
    num %= den;
    if (num < 0) num += den;
    const std::int64_t g = std::gcd(num, den);
    return g > 0 ? Turns{num / g, den / g} : Turns{0, 1};
}

double Turns::radians() const { return 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den); }

std::string Turns::str() const {
    if (num == 0) return "0";
    return std::to_string(num) + "/" + std::to_string(den);
}

Turns operator+(const Turns& a, const Turns& b) {
    const std::int64_t l = std::lcm(a.den, b.den);
    return Turns::make(a.num * (l / a.den) + b.num * (l / b.den), l);
}

Turns parse_turns(std::string_view text) {
    text = trim(text);
    if (text.empty()) parse_fail("empty angle");
    if (auto slash = text.find('/'); slash != std::string_view::npos)
        return Turns::make(parse_int(trim(text.substr(0, slash))), parse_int(trim(text.substr(slash + 1))));
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        const bool negative = !text.empty() && text.front() == '-';
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        if (negative || (!whole.empty() && whole.front() == '+')) whole.remove_prefix(1);
        if (frac.size() > 15 || frac.find_first_not_of("0123456789") != std::string_view::npos)
            parse_fail("malformed decimal turns '" + std::string(text) + "'");
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const std::int64_t w = whole.empty() ? 0 : parse_int(whole);
        const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
        const std::int64_t num = w * den + f;
        return Turns::make(negative ? -num : num, den);
    }
    return Turns::make(parse_int(text), 1);
}

// ---------------------------------------------------------------- points

CirclePoint CirclePoint::from_turns(Turns t) {
    // Fold into one quadrant with integer arithmetic, then rotate by i^q exactly.
    const std::int64_t scaled = 4 * t.num;
    const std::int64_t quadrant = scaled / t.den;
    const std::int64_t rem = scaled % t.den;
    const long double theta = std::numbers::pi_v<long double> / 2.0L * static_cast<long double>(rem) /
                              static_cast<long double>(t.den);
    const double c = rem == 0 ? 1.0 : static_cast<double>(std::cos(theta));
    const double s = rem == 0 ? 0.0 : static_cast<double>(std::sin(theta));
    CScalar v;
    switch (quadrant) {
        case 0: v = {c, s}; break;
        case 1: v = {-s, c}; break;
        case 2: v = {-c, -s}; break;
        default: v = {s, -c}; break;
    }
    return CirclePoint{v, t};
}

CirclePoint CirclePoint::from_angle(double radians) {
    if (!std::isfinite(radians)) invalid("non-finite angle");
    return CirclePoint{std::polar(1.0, radians), std::nullopt};
}

CirclePoint CirclePoint::from_value(CScalar z, double on_circle_tol) {
    require_finite(z, "circle point");
    if (std::abs(std::abs(z) - 1.0) > on_circle_tol) invalid("point is off the unit circle");
    // Values already on the circle to rounding are kept bit-exact.
    const double r = std::abs(z);
    return CirclePoint{std::abs(r - 1.0) <= 4.0 * std::numeric_limits<double>::epsilon() ? z : z / r, std::nullopt};
}

// ---------------------------------------------------------------- Measure

Measure::Measure(std::vector<Atom> atoms, const NumericPolicy& policy) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) invalid("measure needs at least one atom");
    if (atoms_.size() > static_cast<std::size_t>(policy.max_atoms))
        invalid("measure has more than " + std::to_string(policy.max_atoms) + " atoms");
    for (const auto& a : atoms_) {
        if (!(a.weight > 0.0) || !std::isfinite(a.weight)) invalid("weights must be positive and finite");
        require_finite(a.point.value, "atom");
        if (std::abs(std::abs(a.point.value) - 1.0) > policy.on_circle_tol) invalid("atom is off the unit circle");
    }
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        for (std::size_t j = i + 1; j < atoms_.size(); ++j)
            if (std::abs(atoms_[i].point.value - atoms_[j].point.value) <= policy.distinct_tol)
                invalid("atoms " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}

std::vector<CScalar> Measure::points() const {
    std::vector<CScalar> p;
    p.reserve(atoms_.size());
    for (const auto& a : atoms_) p.push_back(a.point.value);
    return p;
}

std::string Measure::inline_spec() const {
    std::string turns, weights;
    for (std::size_t j = 0; j < atoms_.size(); ++j) {
        if (!atoms_[j].point.exact) return {};
        if (j) turns += ",", weights += ",";
        turns += atoms_[j].point.exact->str();
        weights += format_double(atoms_[j].weight);
    }
    return turns + ":" + weights;
}

Measure measure_from_json(const nlohmann::json& doc, const NumericPolicy& policy) {
    if (!doc.is_object() || !doc.contains("atoms") || !doc["atoms"].is_array())
        parse_fail("measure document needs an \"atoms\" array");
    std::vector<Atom> atoms;
    for (const auto& a : doc["atoms"]) {
        if (!a.is_object() || !a.contains("weight") || !a["weight"].is_number())
            parse_fail("each atom needs a numeric \"weight\"");
        Atom atom;
        atom.weight = a["weight"].get<double>();
        if (a.contains("turns")) {
            const auto& t = a["turns"];
            if (t.is_string()) atom.point = CirclePoint::from_turns(parse_turns(t.get<std::string>()));
            else if (t.is_number()) atom.point = CirclePoint::from_turns(parse_turns(t.dump()));
            else parse_fail("\"turns\" must be a string or number");
        } else if (a.contains("point")) {
            const auto& p = a["point"];
            if (!p.is_object() || !p.contains("re") || !p.contains("im")) parse_fail("\"point\" needs re and im");
            atom.point = CirclePoint::from_value({p["re"].get<double>(), p["im"].get<double>()}, policy.on_circle_tol);
        } else if (a.contains("angle")) {
            if (!a["angle"].is_number()) parse_fail("\"angle\" must be a number");
            atom.point = CirclePoint::from_angle(a["angle"].get<double>());
        } else {
            parse_fail("atom needs one of turns, point, angle");
        }
        atoms.push_back(atom);
    }
    return Measure(std::move(atoms), policy);
}

nlohmann::json measure_to_json(const Measure& m) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& a : m.atoms()) {
        nlohmann::json j;
        if (a.point.exact) {
            j["turns"] = a.point.exact->str();
        } else {
            j["angle"] = std::arg(a.point.value);
            j["point"] = {{"re", a.point.value.real()}, {"im", a.point.value.imag()}};
        }
        j["weight"] = a.weight;
        atoms.push_back(std::move(j));
    }
    return {{"atoms", atoms}};
}

Measure parse_measure(std::string_view spec, const NumericPolicy& policy) {
    spec = trim(spec);
    if (spec.empty()) parse_fail("empty measure specification");
    if (spec.front() == '{') {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(spec);
        } catch (const nlohmann::json::exception& e) {
            parse_fail(std::string("measure JSON: ") + e.what());
        }
        return measure_from_json(doc, policy);
    }
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) parse_fail("inline measure needs 'turns : weights'");
    const auto turns = split(spec.substr(0, colon), ',');
    const auto weights = split(spec.substr(colon + 1), ',');
    if (turns.size() != weights.size())
        parse_fail("inline measure has " + std::to_string(turns.size()) + " angles but " +
                   std::to_string(weights.size()) + " weights");
    std::vector<Atom> atoms;
    for (std::size_t j = 0; j < turns.size(); ++j)
        atoms.push_back({CirclePoint::from_turns(parse_turns(turns[j])), parse_double(weights[j])});
    return Measure(std::move(atoms), policy);
}

Measure rotate_measure(const Measure& m, Turns phase, const NumericPolicy& policy) {
    const CirclePoint rot = CirclePoint::from_turns(phase);
    std::vector<Atom> atoms;
    for (const auto& a : m.atoms()) {
        Atom r = a;
        if (a.point.exact) r.point = CirclePoint::from_turns(*a.point.exact + phase);
        else r.point = CirclePoint{a.point.value * rot.value, std::nullopt};
        atoms.push_back(r);
    }
    return Measure(std::move(atoms), policy);
}

Measure permute_measure(const Measure& m, const std::vector<std::size_t>& order, const NumericPolicy& policy) {
    if (order.size() != m.k()) invalid("permutation size mismatch");
    std::vector<Atom> atoms;
    for (std::size_t i : order) atoms.push_back(m.atoms().at(i));
    return Measure(std::move(atoms), policy);
}

}  // namespace cauchydual
