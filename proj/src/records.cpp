#include "porowave/records.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "porowave/error.hpp"
#include "porowave/timeseries.hpp"

namespace porowave {

namespace {

std::vector<double> arrival_times(const Problem& pb, const Receiver& rcv) {
    std::vector<double> ts;
    for (const auto& w : wave_terms(pb, rcv)) {
        ts.push_back(w.windows.t0);
        if (w.windows.head_exists) ts.push_back(*w.windows.t_h1);
    }
    return ts;
}

GreenTraces run_green(const Problem& pb, const Receiver& rcv, const TimeGrid& grid, Engine engine) {
    return engine == Engine::parallel ? green_traces(pb, rcv, grid) : green_traces_serial(pb, rcv, grid);
}

ReceiverRecord empty_record(const NamedReceiver& rcv, const TimeGrid& grid, const GreenTraces& g) {
    ReceiverRecord r;
    r.receiver = rcv;
    r.grid = grid;
    for (const auto& w : g.waves) {
        r.labels.push_back(w.label);
        r.windows.push_back(w.windows);
    }
    r.waves.resize(g.waves.size());
    for (auto& c : r.total) c.assign(grid.n, 0.0);
    return r;
}

void sum_total(ReceiverRecord& r) {
    for (auto& c : r.total) std::fill(c.begin(), c.end(), 0.0);
    for (const auto& w : r.waves)
        for (int c = 0; c < 3; ++c)
            for (std::size_t i = 0; i < r.grid.n; ++i) r.total[c][i] += w[c][i];
}

// In-plane (offset, depth) components to (x, y, z).
void rotate_into(std::array<std::vector<double>, 3>& out, const std::vector<double>& ur,
                 const std::vector<double>& uz, const Receiver& rcv, std::size_t from, std::size_t n) {
    for (auto& c : out) c.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Displacement3 u = rotate_to_3d({ur[from + i], uz[from + i]}, rcv);
        out[0][i] = u.ux;
        out[1][i] = u.uy;
        out[2][i] = u.uz;
    }
}

}  // namespace

TimeGrid output_grid(const ProblemConfig& cfg, const Problem& pb, const Receiver& rcv) {
    const double dt = cfg.step();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step must be positive");
    const double span = (cfg.t_end - cfg.t_start) / dt;
    if (span > 5e7) throw ConfigError("time window holds more than 5e7 samples");
    TimeGrid g{cfg.t_start, dt, static_cast<std::size_t>(std::floor(span + 1e-9)) + 1};
    if (g.n < 2) throw ConfigError("time window holds fewer than two samples");
    return align_grid(g, arrival_times(pb, rcv));
}

ReceiverRecord green_record(const ProblemConfig& cfg, const Problem& pb, const NamedReceiver& rcv, Engine engine) {
    const TimeGrid grid = output_grid(cfg, pb, rcv.at);
    const GreenTraces g = run_green(pb, rcv.at, grid, engine);
    ReceiverRecord r = empty_record(rcv, grid, g);
    for (std::size_t w = 0; w < g.waves.size(); ++w)
        rotate_into(r.waves[w], g.waves[w].ux, g.waves[w].uz, rcv.at, 0, grid.n);
    sum_total(r);
    return r;
}

ReceiverRecord seismogram_record(const ProblemConfig& cfg, const Problem& pb, const NamedReceiver& rcv,
                                 Engine engine) {
    const TimeGrid grid = output_grid(cfg, pb, rcv.at);
    TimeGrid ext = grid;
    std::size_t lead = 0;
    if (grid.t_start > 0.0) {
        lead = static_cast<std::size_t>(std::ceil(grid.t_start / grid.dt));
        ext.t_start = grid.t_start - static_cast<double>(lead) * grid.dt;
        ext.n = grid.n + lead;
    }
    const GreenTraces g = run_green(pb, rcv.at, ext, engine);
    ReceiverRecord r = empty_record(rcv, grid, g);
    const Kernel kern = cfg.quantity == Quantity::velocity ? Kernel::derivative : Kernel::value;

    const long nw = static_cast<long>(g.waves.size());
    std::vector<std::array<Trace, 2>> conv(g.waves.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) if (engine == Engine::parallel)
    for (long k = 0; k < 2 * nw; ++k) {
        const long w = k / 2;
        const int c = static_cast<int>(k % 2);
        try {
            const WaveTrace& wt = g.waves[w];
            std::vector<Jump> jumps;
            if (wt.jump) {
                const Displacement2& v = wt.jump->value;
                const Displacement2& s = wt.jump->slope;
                jumps.push_back({wt.jump->t, c == 0 ? v.ux : v.uz, c == 0 ? s.ux : s.uz});
            }
            conv[w][c] = convolve(Trace{ext.t_start, ext.dt, c == 0 ? wt.ux : wt.uz}, cfg.wavelet, jumps, kern);
        } catch (...) {
#pragma omp critical(porowave_conv_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (std::size_t w = 0; w < g.waves.size(); ++w)
        rotate_into(r.waves[w], conv[w][0].samples, conv[w][1].samples, rcv.at, lead, grid.n);
    sum_total(r);
    return r;
}

TraceColumns to_columns(const ReceiverRecord& rec) {
    TraceColumns t;
    t.names.push_back("t");
    for (const auto& l : rec.labels)
        for (const char* c : {"_ux", "_uy", "_uz"}) t.names.push_back(l + c);
    for (const char* c : {"total_ux", "total_uy", "total_uz"}) t.names.push_back(c);
    t.rows.resize(rec.grid.n);
    for (std::size_t i = 0; i < rec.grid.n; ++i) {
        auto& row = t.rows[i];
        row.reserve(t.names.size());
        row.push_back(rec.grid.at(i));
        for (const auto& w : rec.waves)
            for (int c = 0; c < 3; ++c) row.push_back(w[c][i]);
        for (int c = 0; c < 3; ++c) row.push_back(rec.total[c][i]);
    }
    return t;
}

}  // namespace porowave
