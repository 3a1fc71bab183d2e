#pragma once

// Everything inside the library is SI (farad, ohm, second, ampere, volt).
// These factors convert the lab units used by the file formats.
namespace xtmon::units {

inline constexpr double fF = 1e-15;
inline constexpr double pF = 1e-12;
inline constexpr double ps = 1e-12;
inline constexpr double ns = 1e-9;
inline constexpr double us = 1e-6;
inline constexpr double uA = 1e-6;
inline constexpr double mA = 1e-3;
inline constexpr double kOhm = 1e3;

}  // namespace xtmon::units
