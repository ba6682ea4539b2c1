// Physical constants and Earth defaults shared across the library.
#pragma once

namespace optgrav::constants {

// Schwarzschild radius of Earth, meters (2GM/c^2 with standard GM).
inline constexpr double earth_schwarzschild_radius = 8.87e-3;

// Mean Earth radius, meters. Used as the ground radial coordinate.
inline constexpr double earth_radius = 6.371e6;

// Speed of light, m/s. Figure-reproduction runs override this with 3e8.
inline constexpr double speed_of_light = 2.9979e8;

// Rounded speed of light used by the reference parameter studies.
inline constexpr double speed_of_light_rounded = 3.0e8;

}  // namespace optgrav::constants
