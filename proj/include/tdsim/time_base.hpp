// time_base.hpp: integer cycle time base and millisecond conversions.
#pragma once

#include <cmath>
#include <cstdint>

namespace tdsim {

// Absolute times and durations are unsigned 64-bit clock cycles.
// Millicycles (1/1000 cycle) carry sub-cycle precision where measured
// constants do not land on whole cycles.
using Cycles = std::uint64_t;
using Millicycles = std::uint64_t;

constexpr double kDefaultClockGhz = 1.25;

inline double cycles_per_ms(double clock_ghz) { return clock_ghz * 1e6; }

// Rounds toward longer durations so derived bounds stay conservative.
// The epsilon guard keeps decimal inputs that are exact in cycles
// (e.g. 0.1 ms at 1.25 GHz) from being bumped up by binary float noise.
inline Cycles ms_to_cycles(double ms, double clock_ghz = kDefaultClockGhz) {
    if (ms <= 0.0) return 0;
    double v = ms * cycles_per_ms(clock_ghz);
    double c = std::ceil(v - 1e-6);
    return c <= 0.0 ? 0 : static_cast<Cycles>(c);
}

inline Millicycles ms_to_millicycles(double ms, double clock_ghz = kDefaultClockGhz) {
    if (ms <= 0.0) return 0;
    double v = ms * cycles_per_ms(clock_ghz) * 1000.0;
    double c = std::ceil(v - 1e-3);
    return c <= 0.0 ? 0 : static_cast<Millicycles>(c);
}

inline double cycles_to_ms(Cycles c, double clock_ghz = kDefaultClockGhz) {
    return static_cast<double>(c) / cycles_per_ms(clock_ghz);
}

inline double millicycles_to_ms(Millicycles mc, double clock_ghz = kDefaultClockGhz) {
    return static_cast<double>(mc) / (cycles_per_ms(clock_ghz) * 1000.0);
}

inline Cycles millicycles_ceil_to_cycles(Millicycles mc) {
    return (mc + 999) / 1000;
}

inline Cycles ceil_div(Cycles num, Cycles den) { return (num + den - 1) / den; }

} // namespace tdsim
