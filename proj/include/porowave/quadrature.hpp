#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace porowave {

// Accept when, per component, error <= max(abs_tol, rel_tol * integral of |f|).
// Measuring against the integral of |f| keeps the test scale-free and still
// terminates on integrals that cancel to nearly zero.
struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_intervals = 2000;
    // With a reference component, rel_tol also applies to its L1 norm, so
    // integrands that are pure cancellation noise against the reference stop.
    double ref_tol = 1e-10;
};

template <std::size_t N>
struct QuadResult {
    std::array<double, N> value{};
    std::array<double, N> error{};
    std::array<double, N> l1{};
    int intervals = 0;
    bool converged = false;
    double worst_a = 0.0, worst_b = 0.0;  // subinterval with the largest error at exit
};

namespace gk15 {
// Kronrod abscissae on [0,1]; odd indices are the Gauss-7 nodes.
inline constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                  0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                  0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                  0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                  0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                  0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                  0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                 0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
}  // namespace gk15

namespace detail {

template <std::size_t N>
struct Segment {
    double a, b;
    std::array<double, N> value, error, l1;
};

template <std::size_t N, class F>
Segment<N> gk15_segment(F& f, double a, double b) {
    using namespace gk15;
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Segment<N> s{a, b, {}, {}, {}};
    std::array<double, N> rk{}, rg{}, ra{};
    std::array<std::array<double, N>, 15> fv;

    fv[7] = f(c);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        fv[j] = f(c - dx);
        fv[14 - j] = f(c + dx);
    }
    for (std::size_t k = 0; k < N; ++k) {
        double sk = wgk[7] * fv[7][k];
        double sg = wg[3] * fv[7][k];
        double sa = wgk[7] * std::abs(fv[7][k]);
        for (int j = 0; j < 7; ++j) {
            const double pair = fv[j][k] + fv[14 - j][k];
            sk += wgk[j] * pair;
            sa += wgk[j] * (std::abs(fv[j][k]) + std::abs(fv[14 - j][k]));
            if (j % 2 == 1) sg += wg[j / 2] * pair;
        }
        rk[k] = sk;
        rg[k] = sg;
        ra[k] = sa;
    }
    for (std::size_t k = 0; k < N; ++k) {
        const double mean = 0.5 * rk[k];
        double asc = wgk[7] * std::abs(fv[7][k] - mean);
        for (int j = 0; j < 7; ++j) asc += wgk[j] * (std::abs(fv[j][k] - mean) + std::abs(fv[14 - j][k] - mean));
        asc *= std::abs(h);
        double err = std::abs((rk[k] - rg[k]) * h);
        if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
        const double abs_part = ra[k] * std::abs(h);
        err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * abs_part);
        s.value[k] = rk[k] * h;
        s.error[k] = err;
        s.l1[k] = abs_part;
    }
    return s;
}

}  // namespace detail

namespace detail {

// When `reference` is set, the last component only sets a tolerance floor for
// the others and is not itself required to converge.
template <std::size_t N, class F>
QuadResult<N> integrate_impl(F& f, double a, double b, const QuadratureOptions& opt, bool reference) {
    QuadResult<N> r;
    if (a == b) {
        r.converged = true;
        return r;
    }
    std::vector<Segment<N>> segs;
    segs.reserve(64);
    segs.push_back(gk15_segment<N>(f, a, b));

    for (;;) {
        std::array<double, N> tot{}, err{}, l1{};
        for (const auto& s : segs)
            for (std::size_t k = 0; k < N; ++k) {
                tot[k] += s.value[k];
                err[k] += s.error[k];
                l1[k] += s.l1[k];
            }
        std::array<double, N> tol{};
        bool done = true;
        const std::size_t checked = reference ? N - 1 : N;
        const double floor = reference ? opt.ref_tol * l1[N - 1] : 0.0;
        for (std::size_t k = 0; k < checked; ++k) {
            tol[k] = std::max({opt.abs_tol, opt.rel_tol * l1[k], floor});
            if (err[k] > tol[k]) done = false;
        }
        // Split the segment contributing most to the normalised error.
        std::size_t worst = 0;
        double worst_score = -1.0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            double score = 0.0;
            for (std::size_t k = 0; k < checked; ++k)
                score += tol[k] > 0.0 ? segs[i].error[k] / tol[k] : segs[i].error[k];
            if (score > worst_score) {
                worst_score = score;
                worst = i;
            }
        }
        r.value = tot;
        r.error = err;
        r.l1 = l1;
        r.intervals = static_cast<int>(segs.size());
        r.worst_a = segs[worst].a;
        r.worst_b = segs[worst].b;
        if (done) {
            r.converged = true;
            return r;
        }
        const double sa = segs[worst].a, sb = segs[worst].b, mid = 0.5 * (sa + sb);
        if (static_cast<int>(segs.size()) >= opt.max_intervals || !(mid > sa && mid < sb)) return r;
        segs[worst] = gk15_segment<N>(f, sa, mid);
        segs.push_back(gk15_segment<N>(f, mid, sb));
    }
}

}  // namespace detail

// Globally adaptive 15-point Gauss-Kronrod for an N-component integrand
// returning std::array<double, N>.
template <std::size_t N, class F>
QuadResult<N> integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
    return detail::integrate_impl<N>(f, a, b, opt, false);
}

// As integrate, but f returns N values whose last is a non-negative reference
// magnitude; components 0..N-2 converge to within ref_tol of its integral.
template <std::size_t N, class F>
QuadResult<N> integrate_referenced(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
    static_assert(N >= 2);
    return detail::integrate_impl<N>(f, a, b, opt, true);
}

}  // namespace porowave
