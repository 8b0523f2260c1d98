#include "porowave/greens.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "porowave/cagniard_integral.hpp"
#include "porowave/error.hpp"

namespace porowave {

namespace {

const cplx I(0.0, 1.0);

double p1(const DerivedLayer& L, Mode m) { return m == Mode::Pf ? L.P.a11 : L.P.a12; }

constexpr Mode kIncidence[2] = {Mode::Pf, Mode::Ps};
constexpr Mode kOutgoing[3] = {Mode::Pf, Mode::Ps, Mode::S};

}  // namespace

Problem make_problem(const DerivedLayer& top, const DerivedLayer& bottom, double h, const SourceAmplitudes& src) {
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("source height must be positive");
    Problem pb;
    pb.top = top;
    pb.bottom = bottom;
    pb.h = h;
    pb.modal = project_source(top, src);
    pb.v_max = max_speed(top, bottom);
    return pb;
}

double Receiver::offset() const { return std::hypot(x, y); }

Displacement3 rotate_to_3d(const Displacement2& u, const Receiver& rcv) {
    const double rho = rcv.offset();
    double c = 1.0, s = 0.0;
    if (rho > 0.0) {
        c = rcv.x / rho;
        s = rcv.y / rho;
    }
    return {u.ux * c, u.ux * s, u.uz};
}

std::vector<WaveTerm> wave_terms(const Problem& pb, const Receiver& rcv) {
    if (!(rcv.z != 0.0) || !std::isfinite(rcv.z)) throw ConfigError("receiver may not sit on the interface (z = 0)");
    const double x = rcv.offset();
    std::vector<WaveTerm> out;
    auto place = [&](WaveTerm& w) {
        w.x = x;
        w.z = rcv.z;
    };
    if (rcv.top()) {
        for (Mode m : kIncidence) {
            WaveTerm w;
            w.incident = true;
            w.mode = m;
            w.label = mode_name(m);
            w.pair.kind = {m, m, Side::reflected};
            w.pair.v1 = w.pair.v2 = pb.top.speed(m);
            w.pair.h = std::abs(rcv.z - pb.h);
            w.pair.x = x;
            w.pair.v_max = pb.v_max;
            w.windows.t0 = std::hypot(x, rcv.z - pb.h) / pb.top.speed(m);
            place(w);
            out.push_back(w);
        }
    }
    const Side side = rcv.top() ? Side::reflected : Side::transmitted;
    for (Mode in : kIncidence)
        for (Mode o : kOutgoing) {
            WaveTerm w;
            w.kind = {in, o, side};
            w.label = w.kind.label();
            w.pair = make_wave_pair(w.kind, pb.top, pb.bottom, pb.h, x, rcv.z);
            w.windows = head_window(w.pair);
            place(w);
            out.push_back(w);
        }
    return out;
}

Displacement2 incident_green(Mode mode, const Problem& pb, double x, double z, double t) {
    if (mode == Mode::S) throw ConfigError("no incident shear wave");
    const double r = std::hypot(x, z - pb.h);
    if (r == 0.0) throw PhysicalError("receiver coincides with the source (singular point)");
    const double v = pb.top.speed(mode);
    if (!(t > r / v)) return {};
    const double a = -p1(pb.top, mode) * pb.modal.of(mode) / (v * v) * t / (4.0 * std::numbers::pi * r * r * r);
    return {a * x, a * (z - pb.h)};
}

Displacement2 scattered_green(const Problem& pb, const WaveTerm& term, double t) {
    const Scattering& k = term.kind;
    const bool refl = k.side == Side::reflected;
    const DerivedLayer& out = refl ? pb.top : pb.bottom;
    const double F = pb.modal.of(k.incidence);
    const double v_out = out.speed(k.outgoing);
    const int idx = (refl ? 0 : 3) + static_cast<int>(k.outgoing);
    const double zsign = refl ? -1.0 : 1.0;  // d/dz of the outgoing exponential, per unit kappa

    // Third entry: the same kernel with a coefficient as large as the largest
    // of the six, the scale the solve's rounding error is relative to.
    auto kernel = [&](cplx p, double q) -> std::array<cplx, 3> {
        const WaveCoefficients c = solve_coefficients({p, q}, k.incidence, pb.top, pb.bottom, pb.solve);
        double cmax = 0.0;
        for (const cplx& ci : c.c) cmax = std::max(cmax, std::abs(ci));
        const cplx X = c.c[idx] * F;
        const double Xref = cmax * std::abs(F);
        const cplx ko = kappa(v_out, p, q);
        if (k.outgoing == Mode::S) {
            // u = (d_xz, d_yz, -Laplacian_perp) applied to the shear potential
            const cplx ax = -zsign * I * p * ko, az = p * p + q * q;
            return {ax * X, az * X, std::max(std::abs(ax), std::abs(az)) * Xref};
        }
        const double P = p1(out, k.outgoing);
        const cplx ax = -I * p * P, az = zsign * ko * P;
        return {ax * X, az * X, std::max(std::abs(ax), std::abs(az)) * Xref};
    };
    const auto u = cagniard_integral(term.pair, term.windows, t, kernel, pb.quad);
    return {u[0], u[1]};
}

Displacement2 evaluate_term(const Problem& pb, const WaveTerm& term, double t) {
    if (term.incident) return incident_green(term.mode, pb, term.x, term.z, t);
    return scattered_green(pb, term, t);
}

GreenSample total_green(const Problem& pb, const Receiver& rcv, double t) {
    GreenSample s;
    s.t = t;
    for (const auto& w : wave_terms(pb, rcv)) {
        const Displacement2 u = evaluate_term(pb, w, t);
        s.per_wave.push_back(u);
        s.total.ux += u.ux;
        s.total.uz += u.uz;
    }
    return s;
}

std::optional<ArrivalStep> arrival_jump(const Problem& pb, const WaveTerm& term) {
    if (term.windows.head_exists) return std::nullopt;
    const double t0 = term.windows.t0;
    const double e = 1e-5 * t0;
    const Displacement2 g0 = evaluate_term(pb, term, t0 * (1.0 + 1e-12));
    const Displacement2 g1 = evaluate_term(pb, term, t0 + e);
    const Displacement2 g2 = evaluate_term(pb, term, t0 + 2.0 * e);
    ArrivalStep s;
    s.t = t0;
    s.value = g0;
    // second-order one-sided difference
    s.slope.ux = (-3.0 * g0.ux + 4.0 * g1.ux - g2.ux) / (2.0 * e);
    s.slope.uz = (-3.0 * g0.uz + 4.0 * g1.uz - g2.uz) / (2.0 * e);
    return s;
}

TimeGrid align_grid(TimeGrid grid, const std::vector<double>& arrivals) {
    for (double ta : arrivals) {
        const double k = (ta - grid.t_start) / grid.dt;
        if (k >= 0.0 && std::abs(k - std::round(k)) < 1e-6) {
            grid.t_start += grid.dt / 7.0;
            break;
        }
    }
    return grid;
}

std::vector<double> GreenTraces::total_x() const {
    std::vector<double> s(grid.n, 0.0);
    for (const auto& w : waves)
        for (std::size_t i = 0; i < grid.n; ++i) s[i] += w.ux[i];
    return s;
}

std::vector<double> GreenTraces::total_z() const {
    std::vector<double> s(grid.n, 0.0);
    for (const auto& w : waves)
        for (std::size_t i = 0; i < grid.n; ++i) s[i] += w.uz[i];
    return s;
}

namespace {

GreenTraces prepare(const Problem& pb, const Receiver& rcv, const TimeGrid& grid, std::vector<WaveTerm>& terms) {
    if (!(grid.dt > 0.0)) throw ConfigError("time step must be positive");
    terms = wave_terms(pb, rcv);
    GreenTraces g;
    g.receiver = rcv;
    g.grid = grid;
    for (const auto& w : terms) {
        WaveTrace tr;
        tr.label = w.label;
        tr.windows = w.windows;
        tr.ux.assign(grid.n, 0.0);
        tr.uz.assign(grid.n, 0.0);
        g.waves.push_back(std::move(tr));
    }
    return g;
}

}  // namespace

GreenTraces green_traces_serial(const Problem& pb, const Receiver& rcv, const TimeGrid& grid) {
    std::vector<WaveTerm> terms;
    GreenTraces g = prepare(pb, rcv, grid, terms);
    for (std::size_t w = 0; w < terms.size(); ++w) {
        for (std::size_t i = 0; i < grid.n; ++i) {
            const Displacement2 u = evaluate_term(pb, terms[w], grid.at(i));
            g.waves[w].ux[i] = u.ux;
            g.waves[w].uz[i] = u.uz;
        }
        g.waves[w].jump = arrival_jump(pb, terms[w]);
    }
    return g;
}

GreenTraces green_traces(const Problem& pb, const Receiver& rcv, const TimeGrid& grid) {
    std::vector<WaveTerm> terms;
    GreenTraces g = prepare(pb, rcv, grid, terms);
    const long nw = static_cast<long>(terms.size());
    const long ns = static_cast<long>(grid.n);
    const long total = nw * ns;
    std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 8)
    for (long k = 0; k < total; ++k) {
        const long w = k / ns, i = k % ns;
        try {
            const Displacement2 u = evaluate_term(pb, terms[w], grid.at(static_cast<std::size_t>(i)));
            g.waves[w].ux[i] = u.ux;
            g.waves[w].uz[i] = u.uz;
        } catch (...) {
#pragma omp critical(porowave_trace_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<std::optional<ArrivalStep>> jumps(terms.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long w = 0; w < nw; ++w) {
        try {
            jumps[w] = arrival_jump(pb, terms[w]);
        } catch (...) {
#pragma omp critical(porowave_trace_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (long w = 0; w < nw; ++w) g.waves[w].jump = jumps[w];
    return g;
}

}  // namespace porowave
