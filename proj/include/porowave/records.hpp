#pragma once

#include <array>
#include <string>
#include <vector>

#include "porowave/config.hpp"
#include "porowave/greens.hpp"
#include "porowave/trace_file.hpp"

namespace porowave {

// Per-wave three-component traces at one receiver, plus their sum.
struct ReceiverRecord {
    NamedReceiver receiver;
    TimeGrid grid;
    std::vector<std::string> labels;
    std::vector<TimeWindows> windows;
    std::vector<std::array<std::vector<double>, 3>> waves;  // ux, uy, uz
    std::array<std::vector<double>, 3> total;
};

enum class Engine { parallel, serial };

// The configured window, shifted by dt/7 if a sample would land on an arrival.
TimeGrid output_grid(const ProblemConfig& cfg, const Problem& pb, const Receiver& rcv);

ReceiverRecord green_record(const ProblemConfig& cfg, const Problem& pb, const NamedReceiver& rcv,
                            Engine engine = Engine::parallel);

// Green traces convolved with the wavelet (or its derivative for velocity).
// The Green function is sampled from t <= 0 so the causal integral is complete.
ReceiverRecord seismogram_record(const ProblemConfig& cfg, const Problem& pb, const NamedReceiver& rcv,
                                 Engine engine = Engine::parallel);

TraceColumns to_columns(const ReceiverRecord& rec);

}  // namespace porowave
