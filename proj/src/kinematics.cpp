#include "porowave/kinematics.hpp"

#include <cmath>

#include "porowave/error.hpp"

namespace porowave {

double fictitious_velocity(double v, double qy) {
    if (!(v > 0.0)) throw DomainError("velocity must be positive");
    return v / std::sqrt(1.0 + v * v * qy * qy);
}

cplx kappa(double v, cplx qx, double qy) {
    if (!(v > 0.0)) throw DomainError("velocity must be positive");
    return kappa_s2(1.0 / (v * v) + qy * qy, qx);
}

}  // namespace porowave
