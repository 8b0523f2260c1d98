#pragma once

#include <optional>
#include <string>

#include "porowave/kinematics.hpp"
#include "porowave/material.hpp"

namespace porowave {

enum class Side { reflected, transmitted };

// One scattered family: incident mode in the top layer, outgoing mode on the
// receiver's side.
struct Scattering {
    Mode incidence = Mode::Pf;
    Mode outgoing = Mode::Pf;
    Side side = Side::reflected;

    std::string label() const;  // e.g. "PfPs" (reflected) or "PfPs-" (transmitted)
};

struct WavePair {
    Scattering kind;
    double v1 = 0;     // incident leg speed
    double v2 = 0;     // outgoing leg speed
    double h = 0;      // source height
    double x = 0;      // horizontal offset, >= 0
    double zleg = 0;   // outgoing leg length |z|
    double v_max = 0;

    // Reflection into the incident mode: closed forms apply.
    bool same_speed() const { return kind.side == Side::reflected && kind.incidence == kind.outgoing; }
    // Mirror distance for same-speed pairs.
    double mirror_distance() const;
};

WavePair make_wave_pair(const Scattering& kind, const DerivedLayer& top, const DerivedLayer& bottom, double h,
                        double x, double z);

enum class Branch { gamma, v };

struct PathPoint {
    cplx value;
    cplx dvalue_dt;
    Branch branch = Branch::gamma;
};

struct TimeWindows {
    double t0 = 0;
    std::optional<double> t_h1;
    std::optional<double> t_h2;
    bool head_exists = false;
};

// F(p, q, t) = h kappa_1(p) + |z| kappa_2(p) + i p x - t.
cplx path_function(const WavePair& pair, cplx p, double q, double t);
cplx path_function_dp(const WavePair& pair, cplx p, double q);

// Ray parameter y0(q) of the fastest fictitious ray; gamma(t~0(q), q) = -i y0(q).
double saddle_slowness(const WavePair& pair, double q);

double travel_time(const WavePair& pair, double q);
double arrival_time(const WavePair& pair);

double q0_of_t(const WavePair& pair, double t);
double q1_of_t(const WavePair& pair, double t);

TimeWindows head_window(const WavePair& pair);

PathPoint gamma_point(const WavePair& pair, double t, double q);
PathPoint v_point(const WavePair& pair, double t, double q);

}  // namespace porowave

namespace porowave {

// Saddle data at a fixed transverse slowness, reused by the precise path solvers.
struct Saddle {
    double q = 0;
    double y0 = 0;      // gamma(t~0(q)) = -i y0
    double t0q = 0;     // t~0(q)
    double s1sq = 0;    // 1/V1^2 + q^2
    double s2sq = 0;    // 1/V2^2 + q^2
    double k1 = 0;      // kappa_1 at the saddle
    double k2 = 0;      // kappa_2 at the saddle
    double r0 = 0;      // x - g(y0), what the saddle solve left over
};

Saddle saddle_at(const WavePair& pair, double q);

// Gamma branch with the excess e = t - t~0(q) > 0 supplied directly, which keeps
// full relative precision close to the saddle.
PathPoint gamma_from_excess(const WavePair& pair, const Saddle& sad, double e);

// Head-wave branch with the deficit d = t~0(q) - t > 0 supplied directly.
PathPoint v_from_deficit(const WavePair& pair, const Saddle& sad, double d);

// t~0(qb) - t~0(qa), where dQ = qb^2 - qa^2 is known to full precision.
double travel_time_difference(const WavePair& pair, double qa, double qb, double dQ);

}  // namespace porowave
