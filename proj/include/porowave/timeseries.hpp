#pragma once

#include <cstddef>
#include <vector>

namespace porowave {

enum class WaveletKind { gaussian_d4 };

struct Wavelet {
    double f0 = 15.0;
    WaveletKind kind = WaveletKind::gaussian_d4;
};

void validate_wavelet(const Wavelet& w);

double wavelet_value(const Wavelet& w, double t);
double wavelet_derivative(const Wavelet& w, double t);

// Distance from the wavelet centre 1/f0 beyond which |f| < 1e-12 max|f|.
double wavelet_half_width(const Wavelet& w);

struct Trace {
    double t_start = 0;
    double dt = 0;
    std::vector<double> samples;

    double time(std::size_t i) const { return t_start + static_cast<double>(i) * dt; }
};

// A step of the sampled function at time t: value and slope just after it,
// minus those just before.
struct Jump {
    double t = 0;
    double size = 0;
    double slope = 0;
};

// derivative: time derivative of the convolution, g * f' + f(0) g.
enum class Kernel { value, derivative };

// Trapezoid approximation of the causal convolution  int g(tau) f(t - tau) dtau
// over the trace support. Steps listed in `jumps` get an end correction so
// they do not spoil the second-order accuracy of the rule.
Trace convolve(const Trace& green, const Wavelet& w, const std::vector<Jump>& jumps = {},
               Kernel kernel = Kernel::value);

}  // namespace porowave
