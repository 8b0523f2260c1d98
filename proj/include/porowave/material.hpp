#pragma once

#include <array>
#include <string>

namespace porowave {

// Body-wave families carried by a Biot layer.
enum class Mode { Pf, Ps, S };

std::string mode_name(Mode m);

// Row-major 2x2 real matrix.
struct Mat2 {
    double a11 = 0, a12 = 0, a21 = 0, a22 = 0;

    double det() const { return a11 * a22 - a12 * a21; }
    Mat2 inverse() const;
    Mat2 operator*(const Mat2& o) const;
};

// Raw physical inputs of one layer, SI units.
struct LayerProperties {
    double rho_s = 0;  // solid density
    double rho_f = 0;  // fluid density
    double phi = 0;    // porosity
    double a = 1;      // tortuosity
    double K_s = 0;    // grain bulk modulus
    double K_f = 0;    // fluid bulk modulus
    double K_b = 0;    // drained frame bulk modulus
    double mu = 0;     // frame shear modulus
};

struct DerivedLayer {
    LayerProperties props;

    double rho = 0;     // bulk density
    double rho_w = 0;   // apparent fluid density a*rho_f/phi
    double beta = 0;    // Biot-Willis coefficient
    double m = 0;       // Biot modulus
    double lambda = 0;  // drained Lame parameter
    double alpha = 0;   // lambda + 2mu + m beta^2

    Mat2 A;  // inertia matrix
    Mat2 B;  // stiffness matrix

    double v_pf = 0;
    double v_ps = 0;
    double v_s = 0;

    // Columns are the (solid, relative-fluid) polarisations of Pf and Ps.
    Mat2 P;
    Mat2 P_inv;

    double speed(Mode mode) const;
    double rho_f() const { return props.rho_f; }
    double mu() const { return props.mu; }
};

// Throws PhysicalError for non-physical input.
void validate_properties(const LayerProperties& p);

DerivedLayer derive_layer(const LayerProperties& p);

// Rescales the polarisation columns (c1 on Pf, c2 on Ps). Observables must not
// depend on this; used by the invariance audits.
DerivedLayer with_scaled_modes(const DerivedLayer& layer, double c1, double c2);

struct SourceAmplitudes {
    double f_u = 0;  // solid-gradient strength
    double f_w = 0;  // fluid-gradient strength
    double f_p = 0;  // pressure strength
};

struct ModalAmplitudes {
    double F_pf = 0;
    double F_ps = 0;

    double of(Mode mode) const;
};

ModalAmplitudes project_source(const DerivedLayer& top, const SourceAmplitudes& s);

double max_speed(const DerivedLayer& top, const DerivedLayer& bottom);

}  // namespace porowave
