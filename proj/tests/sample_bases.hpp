#pragma once

namespace negbeta::samples {

inline constexpr const char* kMinus2 = "beta=-2";
inline constexpr const char* kMinus3 = "beta=-3";
// -gamma_0, root of X^2 + X - 1.
inline constexpr const char* kGolden = "poly=-1,1,1;interval=-17/10,-16/10";
// -gamma_1, root of X^3 - X + 1.
inline constexpr const char* kGamma1 = "poly=1,-1,0,1;interval=-14/10,-13/10";
// Level 0 with d = (1001)^inf, root of X^3 + X^2 + 1.
inline constexpr const char* kLevel0 = "poly=1,0,1,1;interval=-3/2,-7/5";
// Level 1 with d = (10011100)^inf.
inline constexpr const char* kLevel1 = "poly=-1,0,-1,0,0,-1;interval=-6/5,-11/10";
inline constexpr const char* kEx1 = "poly=1,2,-2,-1,2,-1,-1,0,0,0,0,2,-1,0,3,1;interval=-3,-2";
inline constexpr const char* kEx2 = "poly=1,0,-2,1,1,-2,1,-1,1,-1,1,1,-2,2,1;interval=-3,-2";

} // namespace negbeta::samples
