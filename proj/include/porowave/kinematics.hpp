#pragma once

#include <complex>

namespace porowave {

using cplx = std::complex<double>;

// Square root with Re >= 0. On the negative real axis the value is +i*sqrt(-a)
// regardless of the sign of the zero imaginary part.
inline cplx csqrt(cplx z) {
    if (z.imag() == 0.0 && z.real() < 0.0) return {0.0, std::sqrt(-z.real())};
    return std::sqrt(z);
}

// Velocity seen by the in-plane problem after the transverse slowness is fixed.
double fictitious_velocity(double v, double qy);

// Vertical slowness kappa = sqrt(1/V^2 + qx^2 + qy^2).
cplx kappa(double v, cplx qx, double qy);

// Same thing with s2 = 1/V^2 + qy^2 precomputed.
inline cplx kappa_s2(double s2, cplx qx) { return csqrt(s2 + qx * qx); }

}  // namespace porowave
