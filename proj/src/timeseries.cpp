#include "porowave/timeseries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "porowave/error.hpp"

namespace porowave {

namespace {

// f(t) = 2a [3 + 12 a s^2 + 4 a^2 s^4] exp(-a s^2), a = pi^2 / f0^2, s = t - 1/f0
double rate(const Wavelet& w) { return std::numbers::pi * std::numbers::pi / (w.f0 * w.f0); }

long double rate_l(const Wavelet& w) {
    constexpr long double pi = std::numbers::pi_v<long double>;
    const long double f = w.f0;
    return pi * pi / (f * f);
}

// Shape of f as a function of u = a s^2, without the 2a prefactor.
double shape(double u) { return (3.0 + 12.0 * u + 4.0 * u * u) * std::exp(-u); }

}  // namespace

void validate_wavelet(const Wavelet& w) {
    if (!(w.f0 > 0.0) || !std::isfinite(w.f0)) throw ConfigError("wavelet frequency must be positive");
}

// Evaluated in extended precision so the result is close to correctly
// rounded; finite differences of the wavelet then see only the last bit.
double wavelet_value(const Wavelet& w, double t) {
    using L = long double;
    const L a = rate_l(w);
    const L s = static_cast<L>(t) - 1.0L / static_cast<L>(w.f0);
    const L u = a * s * s;
    return static_cast<double>(2.0L * a * (3.0L + 12.0L * u + 4.0L * u * u) * std::exp(-u));
}

double wavelet_derivative(const Wavelet& w, double t) {
    using L = long double;
    const L a = rate_l(w);
    const L s = static_cast<L>(t) - 1.0L / static_cast<L>(w.f0);
    const L u = a * s * s;
    return static_cast<double>(4.0L * a * a * s * (9.0L - 4.0L * u - 4.0L * u * u) * std::exp(-u));
}

double wavelet_half_width(const Wavelet& w) {
    validate_wavelet(w);
    // shape(u) peaks where 4u^2 + 4u - 9 = 0 and decays monotonically after.
    const double u_peak = (-1.0 + std::sqrt(10.0)) / 2.0;
    const double floor = 1e-12 * shape(u_peak);
    double lo = u_peak, hi = 2.0 * u_peak;
    while (shape(hi) > floor) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (shape(mid) > floor ? lo : hi) = mid;
    }
    return std::sqrt(hi / rate(w));
}

Trace convolve(const Trace& green, const Wavelet& w, const std::vector<Jump>& jumps, Kernel kernel) {
    validate_wavelet(w);
    const std::size_t n = green.samples.size();
    if (!(green.dt > 0.0) || !std::isfinite(green.dt)) throw ConfigError("trace time step must be positive");
    if (n < 2) throw ConfigError("trace needs at least two samples");
    if (1.0 / (w.f0 * green.dt) < 20.0)
        throw ConfigError("undersampled wavelet: " + std::to_string(1.0 / (w.f0 * green.dt)) +
                          " samples per period, at least 20 required");

    auto f = [&](double t) { return kernel == Kernel::value ? wavelet_value(w, t) : wavelet_derivative(w, t); };
    const double dt = green.dt;
    const double reach = 1.0 / w.f0 + wavelet_half_width(w);
    const std::size_t lags = std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(reach / dt)) + 1);

    std::vector<double> fk(lags);
    for (std::size_t k = 0; k < lags; ++k) fk[k] = f(static_cast<double>(k) * dt);

    Trace out;
    out.t_start = green.t_start;
    out.dt = dt;
    out.samples.assign(n, 0.0);
    const auto& g = green.samples;
    for (std::size_t i = 1; i < n; ++i) {
        // lags 0 .. i; the end points carry half weight
        const std::size_t kmax = std::min(i, lags - 1);
        double acc = 0.5 * g[i] * fk[0];
        for (std::size_t k = 1; k < kmax; ++k) acc += g[i - k] * fk[k];
        if (kmax == i)
            acc += 0.5 * g[0] * fk[i];
        else
            acc += g[i - kmax] * fk[kmax];
        out.samples[i] = acc * dt;
    }
    // d/dt (g * f) = g * f' + f(0) g(t); the wavelet does not vanish at 0.
    if (kernel == Kernel::derivative) {
        const double f0v = wavelet_value(w, 0.0);
        for (std::size_t i = 0; i < n; ++i) out.samples[i] += f0v * g[i];
    }

    // On the cell holding a step the rule sees only the right end point of
    // the step part p(s) = size + slope*s; swap that for the exact integral.
    static const double gx[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
    static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    const double t_end = green.time(n - 1);
    for (const Jump& J : jumps) {
        if (!(J.t > green.t_start) || J.t > t_end) continue;
        const double pos = (J.t - green.t_start) / dt;
        std::size_t k = static_cast<std::size_t>(std::floor(pos));
        if (k >= n - 1) k = n - 2;
        const double len = green.time(k + 1) - J.t;
        auto p = [&](double s) { return J.size + J.slope * s; };
        for (std::size_t i = k + 1; i < n; ++i) {
            const double ti = green.time(i);
            if (ti - J.t > reach + dt) break;
            double exact = 0.0;
            for (int m = 0; m < 3; ++m) {
                const double s = 0.5 * len * (1.0 + gx[m]);
                exact += gw[m] * p(s) * f(ti - J.t - s);
            }
            exact *= 0.5 * len;
            const double end = 0.5 * dt * p(len) * f(ti - green.time(k + 1));
            out.samples[i] += exact - end;
        }
    }
    return out;
}

}  // namespace porowave
