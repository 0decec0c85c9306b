#pragma once

#include <string>
#include <vector>

#include "cauchydual/measure.hpp"

namespace fixtures {

// Frozen reference values, computed at 40 digits by tests/oracles/derive_constants.py.
inline constexpr double kAlpha = 2.2177846927700819918;
inline constexpr double kB = 10.90832691319598394;
inline constexpr double kD = 0.091673086804016060321;
inline constexpr double kX = 1.3027756377319946466;
inline constexpr double kC1 = 82.963839667835876871;
inline constexpr double kC2 = 10.90832691319598394;
inline constexpr double kC3 = 4.3027756377319946466;
inline constexpr double kDetD = 0.90832691319598393968;
inline constexpr double kS01Re = 176.01358780807430908;
inline constexpr double kS01Im = -124.85109355507433846;
inline constexpr double kS01Abs = 215.79754089184753746;
inline constexpr double kSDiag = 1183.9552460576811013;

inline constexpr double kDeltaAlpha = 2.61803398874989484820;
inline constexpr double kDeltaD = 0.3819660112501051518;
inline constexpr double kDeltaSDiag = 17.94427190999915879;

inline constexpr double kAntipodalD = 0.1715728752538099024;
inline constexpr double kAntipodalSDiag = 231.9655121145938;

inline constexpr double kQuarterD = 0.18305994859423597588;
inline constexpr double kQuarterSDiag = 83.0234509511827;
inline constexpr double kQuarterS01Re = -17.63070651037754;
inline constexpr double kQuarterS01Im = 30.16715787565947;

struct Named {
    std::string name;
    std::string spec;
};

inline std::vector<Named> test_measures() {
    return {{"three-point", "0,1/3,2/3:1,1,1"}, {"delta_1", "0:1"}, {"antipodal", "0,1/2:1,1"}, {"quarter", "0,1/4:1,1"}};
}

inline cauchydual::Measure measure(const std::string& spec) { return cauchydual::parse_measure(spec); }

}  // namespace fixtures
