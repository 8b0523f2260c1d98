#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "porowave/error.hpp"
#include "porowave/timeseries.hpp"

using namespace porowave;

namespace {

const Wavelet W{15.0, WaveletKind::gaussian_d4};
constexpr double kPi = std::numbers::pi;

// Second transcription, straight from the printed expression.
double printed(double f0, double t) {
    const double d = t - 1.0 / f0;
    return 2 * kPi * kPi / (f0 * f0) *
           (3 + 12 * kPi * kPi / (f0 * f0) * d * d + 4 * std::pow(kPi, 4) / std::pow(f0, 4) * std::pow(d, 4)) *
           std::exp(-kPi * kPi / (f0 * f0) * d * d);
}

double max_derivative() {
    double m = 0;
    for (double s = 0; s < 30; s += 1e-3) m = std::max(m, std::abs(wavelet_derivative(W, 1 / W.f0 + s)));
    return m;
}

Trace smooth_with_step(double dt, double ta, double t_end) {
    Trace g;
    g.t_start = 0.0;
    g.dt = dt;
    const std::size_t n = static_cast<std::size_t>(std::llround(t_end / dt)) + 1;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = g.time(i);
        g.samples.push_back(t > ta ? std::cos(3 * t) : 0.0);
    }
    return g;
}

}  // namespace

TEST(Wavelet, CentreValue) {
    EXPECT_NEAR(wavelet_value(W, 1 / W.f0), 6 * kPi * kPi / 225, 1e-16);
    EXPECT_LT(std::abs(wavelet_derivative(W, 1 / W.f0)), 1e-15 * max_derivative());  // 1/f0 is not exact
}

TEST(Wavelet, MatchesPrintedFormula) {
    for (double f0 : {5.0, 15.0, 40.0})
        for (double s : {0.0, 0.3, 1.0, 3.0, 8.0, 20.0}) {
            const Wavelet w{f0, WaveletKind::gaussian_d4};
            const double t = 1 / f0 + s * f0 / 15;
            EXPECT_LE(std::abs(wavelet_value(w, t) - printed(f0, t)), 1e-14 * std::abs(printed(f0, t)) + 1e-300)
                << f0 << " " << s;
        }
}

TEST(Wavelet, Symmetry) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 30.0);
    const double c = 1 / W.f0;
    const double dmax = max_derivative();
    for (int i = 0; i < 1000; ++i) {
        const double s = U(rng);
        // c +- s round differently, which is all the asymmetry allowed
        EXPECT_LE(std::abs(wavelet_value(W, c + s) - wavelet_value(W, c - s)), 1e-13 * wavelet_value(W, c));
        EXPECT_LE(std::abs(wavelet_derivative(W, c + s) + wavelet_derivative(W, c - s)), 1e-13 * dmax);
    }
}

TEST(Wavelet, DerivativeMatchesFiniteDifference) {
    const double h = 1e-6 / W.f0;
    const double scale = max_derivative();
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(-15.0, 15.0);
    for (int i = 0; i < 1000; ++i) {
        const double t = 1 / W.f0 + U(rng);
        const double tp = t + h, tm = t - h;  // the step actually taken
        const double fd = (wavelet_value(W, tp) - wavelet_value(W, tm)) / (tp - tm);
        EXPECT_LE(std::abs(fd - wavelet_derivative(W, t)), 1e-8 * scale) << t;
    }
}

TEST(Wavelet, HalfWidth) {
    const double hw = wavelet_half_width(W);
    double peak = 0;
    for (double s = 0; s < 30; s += 1e-3) peak = std::max(peak, std::abs(wavelet_value(W, 1 / W.f0 + s)));
    EXPECT_LE(std::abs(wavelet_value(W, 1 / W.f0 + hw)), 1.000001e-12 * peak);
    EXPECT_GT(std::abs(wavelet_value(W, 1 / W.f0 + 0.99 * hw)), 1e-12 * peak);
    // the printed exponent scales with 1/f0^2, so the width grows with f0
    EXPECT_NEAR(wavelet_half_width({30.0, WaveletKind::gaussian_d4}) / hw, 2.0, 1e-9);
    EXPECT_THROW(wavelet_half_width({0.0, WaveletKind::gaussian_d4}), ConfigError);
}

TEST(Convolve, ZeroInZeroOut) {
    Trace g{0.0, 1e-3, std::vector<double>(500, 0.0)};
    const Trace y = convolve(g, W);
    EXPECT_EQ(y.samples.size(), 500u);
    EXPECT_EQ(y.t_start, 0.0);
    for (double v : y.samples) EXPECT_EQ(v, 0.0);
}

TEST(Convolve, Impulse) {
    const double dt = 1e-3;
    const std::size_t k = 10;
    Trace g{0.25, dt, std::vector<double>(400, 0.0)};
    g.samples[k] = 1.0 / dt;
    const Trace y = convolve(g, W);
    EXPECT_EQ(y.t_start, 0.25);
    for (std::size_t n = 0; n < k; ++n) EXPECT_EQ(y.samples[n], 0.0);
    EXPECT_NEAR(y.samples[k], 0.5 * wavelet_value(W, 0.0), 1e-14);
    for (std::size_t n = k + 1; n < 400; ++n)
        EXPECT_NEAR(y.samples[n], wavelet_value(W, (n - k) * dt), 1e-13) << n;
}

TEST(Convolve, Linearity) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> N;
    Trace a{0.0, 2e-3, {}}, b{0.0, 2e-3, {}}, c{0.0, 2e-3, {}};
    for (int i = 0; i < 700; ++i) {
        a.samples.push_back(N(rng));
        b.samples.push_back(N(rng));
        c.samples.push_back(2.5 * a.samples.back() - 0.75 * b.samples.back());
    }
    const Trace ya = convolve(a, W), yb = convolve(b, W), yc = convolve(c, W);
    double scale = 0;
    for (double v : yc.samples) scale = std::max(scale, std::abs(v));
    for (int i = 0; i < 700; ++i)
        EXPECT_LE(std::abs(yc.samples[i] - (2.5 * ya.samples[i] - 0.75 * yb.samples[i])), 1e-12 * scale);
}

TEST(Convolve, ShiftCommutes) {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> N;
    Trace g{0.0, 2e-3, {0.0}};
    for (int i = 0; i < 300; ++i) g.samples.push_back(N(rng));
    const std::size_t m = 37;
    Trace s = g;
    s.samples.insert(s.samples.begin(), m, 0.0);
    const Trace yg = convolve(g, W), ys = convolve(s, W);
    for (std::size_t i = 0; i < g.samples.size(); ++i) EXPECT_EQ(ys.samples[i + m], yg.samples[i]);
    for (std::size_t i = 0; i < m; ++i) EXPECT_EQ(ys.samples[i], 0.0);
}

TEST(Convolve, Undersampled) {
    Trace g{0.0, 1.0 / (15 * 19), std::vector<double>(10, 1.0)};
    try {
        convolve(g, W);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("undersampled wavelet"), std::string::npos);
    }
    g.dt = 1.0 / (15 * 20);
    EXPECT_NO_THROW(convolve(g, W));
    EXPECT_THROW(convolve(Trace{0.0, 1e-3, {1.0}}, W), ConfigError);
}

// A step inside a cell, corrected with its value and slope, keeps the rule
// second order.
TEST(Convolve, SecondOrderWithStep) {
    const double ta = 0.3137, T = 1.2;
    const Wavelet w{15.0, WaveletKind::gaussian_d4};
    std::vector<double> at_T;
    for (int lev = 0; lev < 4; ++lev) {
        const double dt = 1.0 / (300.0 * (1 << lev));
        const Trace g = smooth_with_step(dt, ta, T);
        const Jump j{ta, std::cos(3 * ta), -3 * std::sin(3 * ta)};
        for (Kernel k : {Kernel::value}) {
            const Trace y = convolve(g, w, {j}, k);
            at_T.push_back(y.samples.back());
        }
    }
    const double r1 = (at_T[0] - at_T[1]) / (at_T[1] - at_T[2]);
    const double r2 = (at_T[1] - at_T[2]) / (at_T[2] - at_T[3]);
    EXPECT_GE(r1, 3.5);
    EXPECT_LE(r1, 4.5);
    EXPECT_GE(r2, 3.5);
    EXPECT_LE(r2, 4.5);
}

TEST(Convolve, DerivativeKernelIsVelocity) {
    // d/dt (g * f) = g * f' for g vanishing at the start.
    const double dt = 1e-4;
    const Trace g = smooth_with_step(dt, 0.2, 0.8);
    const Jump j{0.2, std::cos(0.6), -3 * std::sin(0.6)};
    const Trace y = convolve(g, W, {j});
    const Trace v = convolve(g, W, {j}, Kernel::derivative);
    for (std::size_t i = 3000; i + 1 < y.samples.size(); i += 500) {
        const double fd = (y.samples[i + 1] - y.samples[i - 1]) / (2 * dt);
        EXPECT_NEAR(fd, v.samples[i], 1e-5 * std::abs(v.samples[i]) + 1e-12) << i;
    }
}
