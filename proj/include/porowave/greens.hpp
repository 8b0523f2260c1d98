#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "porowave/cagniard.hpp"
#include "porowave/coefficients.hpp"
#include "porowave/material.hpp"
#include "porowave/quadrature.hpp"

namespace porowave {

struct Problem {
    DerivedLayer top;
    DerivedLayer bottom;
    double h = 0;
    ModalAmplitudes modal;
    double v_max = 0;
    QuadratureOptions quad;
    SolveOptions solve;
};

Problem make_problem(const DerivedLayer& top, const DerivedLayer& bottom, double h, const SourceAmplitudes& src);

struct Receiver {
    double x = 0, y = 0, z = 0;

    double offset() const;  // horizontal distance to the source axis
    bool top() const { return z > 0.0; }
};

struct Displacement2 {
    double ux = 0, uz = 0;  // in the (offset, depth) plane
};

struct Displacement3 {
    double ux = 0, uy = 0, uz = 0;
};

Displacement3 rotate_to_3d(const Displacement2& u, const Receiver& rcv);

// One contribution to the field at a receiver: incident (top only) or scattered.
struct WaveTerm {
    std::string label;
    bool incident = false;
    Mode mode = Mode::Pf;  // incident mode when incident
    Scattering kind;       // scattered family otherwise
    WavePair pair;         // for incident terms: the direct leg
    TimeWindows windows;
    double x = 0, z = 0;   // receiver offset and depth
};

std::vector<WaveTerm> wave_terms(const Problem& pb, const Receiver& rcv);

Displacement2 incident_green(Mode mode, const Problem& pb, double x, double z, double t);

Displacement2 scattered_green(const Problem& pb, const WaveTerm& term, double t);

Displacement2 evaluate_term(const Problem& pb, const WaveTerm& term, double t);

struct GreenSample {
    double t = 0;
    Displacement2 total;
    std::vector<Displacement2> per_wave;
};

GreenSample total_green(const Problem& pb, const Receiver& rcv, double t);

// Value and one-sided slope of a term just after its volume arrival, where
// it switches on. Nothing when the term has no finite jump there (head-wave
// families are log-singular at t0).
struct ArrivalStep {
    double t = 0;
    Displacement2 value;
    Displacement2 slope;
};

std::optional<ArrivalStep> arrival_jump(const Problem& pb, const WaveTerm& term);

struct TimeGrid {
    double t_start = 0;
    double dt = 0;
    std::size_t n = 0;

    double at(std::size_t i) const { return t_start + static_cast<double>(i) * dt; }
};

// Shifts the grid by dt/7 if a sample lands on one of the given times.
TimeGrid align_grid(TimeGrid grid, const std::vector<double>& arrivals);

struct WaveTrace {
    std::string label;
    TimeWindows windows;
    std::vector<double> ux, uz;
    std::optional<ArrivalStep> jump;
};

struct GreenTraces {
    Receiver receiver;
    TimeGrid grid;
    std::vector<WaveTrace> waves;

    std::vector<double> total_x() const;
    std::vector<double> total_z() const;
};

// Work is spread over (wave, sample) pairs with OpenMP.
GreenTraces green_traces(const Problem& pb, const Receiver& rcv, const TimeGrid& grid);

// Plain loop, kept as the reference for the parallel kernel.
GreenTraces green_traces_serial(const Problem& pb, const Receiver& rcv, const TimeGrid& grid);

}  // namespace porowave
