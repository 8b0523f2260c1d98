#pragma once

#include <Eigen/Core>
#include <array>

#include "porowave/kinematics.hpp"
#include "porowave/material.hpp"

namespace porowave {

struct SlownessPoint {
    cplx qx;
    double qy = 0.0;
};

using Matrix6c = Eigen::Matrix<cplx, 6, 6>;
using Vector6c = Eigen::Matrix<cplx, 6, 1>;

// Unknown ordering: R_Pf, R_Ps, R_S, T_Pf, T_Ps, T_S.
struct WaveCoefficients {
    std::array<cplx, 6> c{};
    Mode incidence = Mode::Pf;
    double condition = 0.0;  // 1-norm estimate on the equilibrated system, 0 if not computed

    cplx R(Mode out) const { return c[static_cast<int>(out)]; }
    cplx T(Mode out) const { return c[3 + static_cast<int>(out)]; }
};

struct SolveOptions {
    bool check_condition = true;
    double max_condition = 1e13;
};

// The interface matrix exactly as printed (rows 1 and 5 carry a factor q_x).
Matrix6c assemble_matrix(const SlownessPoint& q, const DerivedLayer& top, const DerivedLayer& bottom);

Vector6c assemble_rhs(const SlownessPoint& q, Mode incidence, const DerivedLayer& top);

// Same system with rows 1 and 5 divided by i*q_x, which removes the removable
// singularity at q_x = 0. This is the form that gets solved.
void assemble_reduced(const SlownessPoint& q, Mode incidence, const DerivedLayer& top,
                      const DerivedLayer& bottom, Matrix6c& A, Vector6c& b);

WaveCoefficients solve_coefficients(const SlownessPoint& q, Mode incidence, const DerivedLayer& top,
                                    const DerivedLayer& bottom, const SolveOptions& opt = {});

}  // namespace porowave
