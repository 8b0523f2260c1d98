#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>
#include <type_traits>

#include "porowave/cagniard.hpp"
#include "porowave/error.hpp"
#include "porowave/quadrature.hpp"

namespace porowave {

namespace detail {

template <class R>
void require_converged(const R& res, const WavePair& pair, double t, const char* branch) {
    if (res.converged) return;
    std::ostringstream os;
    os.precision(10);
    os << "quadrature did not converge for " << pair.kind.label() << " (" << branch << " branch) at t = " << t
       << ", worst subinterval [" << res.worst_a << ", " << res.worst_b << "] of the angular variable, error "
       << std::max(res.error[0], res.error[1]);
    throw NumericalError(os.str());
}

}  // namespace detail

// (1/pi^2) times the q-integrals of Re[g(gamma) dgamma/dt] over (0, q0) and of
// the head-wave term over the window's v-range. g returns the (x, z) kernels
// evaluated with the on-cut kappa convention; on the cut the value from the
// physical side of the contour is its conjugate. A kernel may return a third
// entry, the magnitude the kernel would have with a unit coefficient; the
// quadrature then stops once the field is resolved relative to that scale.
template <class Kernel>
std::array<double, 2> cagniard_integral(const WavePair& pair, const TimeWindows& tw, double t, Kernel&& g,
                                        const QuadratureOptions& opt) {
    using KOut = std::invoke_result_t<Kernel&, cplx, double>;
    constexpr std::size_t N = std::tuple_size_v<KOut> == 3 ? 3 : 2;
    auto run = [&](auto&& fn, double a, double b) {
        if constexpr (N == 3)
            return integrate_referenced<3>(fn, a, b, opt);
        else
            return integrate<2>(fn, a, b, opt);
    };
    // Real integrand components from a kernel value at path derivative w.
    auto parts = [](const KOut& k, cplx w, double jac) {
        std::array<double, N> o;
        o[0] = (k[0] * w).real() * jac;
        o[1] = (k[1] * w).real() * jac;
        if constexpr (N == 3) o[2] = std::abs(k[2] * w * jac);
        return o;
    };
    std::array<double, 2> acc{0.0, 0.0};
    const double t0 = tw.t0;

    if (t > t0) {
        const double q0 = q0_of_t(pair, t);
        if (q0 > 0.0) {
            auto f = [&](double th) -> std::array<double, N> {
                const double c = std::cos(th);
                const double q = q0 * std::sin(th);
                const double e = travel_time_difference(pair, q, q0, q0 * q0 * c * c);
                if (!(e > 0.0)) return {};
                const PathPoint pt = gamma_from_excess(pair, saddle_at(pair, q), e);
                return parts(g(pt.value, q), pt.dvalue_dt, q0 * c);
            };
            const auto res = run(f, 0.0, 0.5 * std::numbers::pi);
            detail::require_converged(res, pair, t, "gamma");
            acc[0] += res.value[0];
            acc[1] += res.value[1];
        }
    }

    if (tw.head_exists && t > *tw.t_h1 && t < *tw.t_h2 && t != t0) {
        const double q1 = q1_of_t(pair, t);
        auto head = [&](double q, double d, double jac) -> std::array<double, N> {
            if (!(d > 0.0)) return {};
            const PathPoint pt = v_from_deficit(pair, saddle_at(pair, q), d);
            KOut k = g(pt.value, q);
            for (auto& x : k) x = std::conj(x);
            return parts(k, pt.dvalue_dt, jac);
        };
        if (t < t0) {
            auto f = [&](double th) {
                const double q = q1 * std::sin(th);
                const double d = travel_time_difference(pair, 0.0, q, q * q) + (t0 - t);
                return head(q, d, q1 * std::cos(th));
            };
            const auto res = run(f, 0.0, 0.5 * std::numbers::pi);
            detail::require_converged(res, pair, t, "head");
            acc[0] += res.value[0];
            acc[1] += res.value[1];
        } else {
            const double q0 = q0_of_t(pair, t);
            if (q1 > q0) {
                const double span = q1 - q0;
                auto f = [&](double th) {
                    const double sh = std::sin(0.5 * th);
                    const double dq = span * sh * sh;
                    const double q = q0 + dq;
                    const double d = travel_time_difference(pair, q0, q, dq * (q + q0));
                    return head(q, d, 0.5 * span * std::sin(th));
                };
                const auto res = run(f, 0.0, std::numbers::pi);
                detail::require_converged(res, pair, t, "head");
                acc[0] += res.value[0];
                acc[1] += res.value[1];
            }
        }
    }
    const double norm = 1.0 / (std::numbers::pi * std::numbers::pi);
    return {acc[0] * norm, acc[1] * norm};
}

}  // namespace porowave
