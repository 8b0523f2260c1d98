#pragma once

#include <cmath>
#include <vector>

#include "porowave/config.hpp"
#include "porowave/greens.hpp"
#include "porowave/material.hpp"

namespace porowave::testing {

inline LayerProperties top_props() {
    return {2200, 950, 0.4, 2, 6.9e9, 2e9, 6.7e9, 3e9};
}

inline LayerProperties bottom_props() {
    return {2650, 750, 0.2, 2, 37e9, 1.7e9, 2.2e9, 4.4e9};
}

inline SourceAmplitudes bulk_source() { return {-1e10, -1e10, 0}; }
inline SourceAmplitudes pressure_source() { return {0, 0, 1}; }

inline constexpr double kHeight = 500.0;

inline Receiver r1() { return {400, 0, 533}; }
inline Receiver r2() { return {400, 0, -533}; }

inline Problem section3(const SourceAmplitudes& src = bulk_source()) {
    return make_problem(derive_layer(top_props()), derive_layer(bottom_props()), kHeight, src);
}

inline ProblemConfig section3_config(const SourceAmplitudes& src = bulk_source()) {
    ProblemConfig c;
    c.top = top_props();
    c.bottom = bottom_props();
    c.h = kHeight;
    c.source = src;
    c.wavelet = {15.0, WaveletKind::gaussian_d4};
    c.receivers = {{"r1", r1()}, {"r2", r2()}};
    c.t_start = 0.0;
    c.t_end = 1.4;
    c.samples_per_period = 200;
    return c;
}

inline double rel_diff(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace porowave::testing
