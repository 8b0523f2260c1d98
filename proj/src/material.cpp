#include "porowave/material.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "porowave/error.hpp"

namespace porowave {

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::Pf: return "Pf";
        case Mode::Ps: return "Ps";
        case Mode::S: return "S";
    }
    return "?";
}

Mat2 Mat2::inverse() const {
    const double d = det();
    if (d == 0.0) throw NumericalError("singular 2x2 matrix");
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
}

double DerivedLayer::speed(Mode mode) const {
    switch (mode) {
        case Mode::Pf: return v_pf;
        case Mode::Ps: return v_ps;
        case Mode::S: return v_s;
    }
    return 0.0;
}

double ModalAmplitudes::of(Mode mode) const {
    if (mode == Mode::Pf) return F_pf;
    if (mode == Mode::Ps) return F_ps;
    throw ConfigError("no source amplitude for shear incidence");
}

namespace {

[[noreturn]] void unphysical(const std::string& what) {
    throw PhysicalError("unphysical material: " + what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

// Unit eigenvector of M for eigenvalue ev, first component made positive.
std::array<double, 2> eigenvector(const Mat2& M, double ev) {
    double u1 = M.a12, u2 = ev - M.a11;
    const double w1 = ev - M.a22, w2 = M.a21;
    if (std::hypot(w1, w2) > std::hypot(u1, u2)) {
        u1 = w1;
        u2 = w2;
    }
    const double n = std::hypot(u1, u2);
    if (n == 0.0) throw PhysicalError("degenerate P-modes: eigenvector undefined");
    u1 /= n;
    u2 /= n;
    if (u1 < 0.0 || (u1 == 0.0 && u2 < 0.0)) {
        u1 = -u1;
        u2 = -u2;
    }
    return {u1, u2};
}

}  // namespace

void validate_properties(const LayerProperties& p) {
    if (!finite_positive(p.rho_s)) unphysical("rho_s must be positive");
    if (!finite_positive(p.rho_f)) unphysical("rho_f must be positive");
    if (!(p.phi > 0.0 && p.phi < 1.0)) unphysical("porosity must lie in (0, 1)");
    if (!(std::isfinite(p.a) && p.a >= 1.0)) unphysical("tortuosity must be >= 1");
    if (!finite_positive(p.K_s)) unphysical("K_s must be positive");
    if (!finite_positive(p.K_f)) unphysical("K_f must be positive");
    if (!finite_positive(p.K_b)) unphysical("K_b must be positive");
    if (!finite_positive(p.mu)) unphysical("mu must be positive");
    if (p.K_b > p.K_s) unphysical("K_b exceeds K_s (negative Biot-Willis coefficient)");
}

DerivedLayer derive_layer(const LayerProperties& p) {
    validate_properties(p);
    DerivedLayer d;
    d.props = p;
    d.rho = p.phi * p.rho_f + (1.0 - p.phi) * p.rho_s;
    d.rho_w = p.a * p.rho_f / p.phi;
    d.beta = 1.0 - p.K_b / p.K_s;
    d.m = 1.0 / (p.phi / p.K_f + (d.beta - p.phi) / p.K_s);
    d.lambda = p.K_b - 2.0 * p.mu / 3.0;
    d.alpha = d.lambda + 2.0 * p.mu + d.m * d.beta * d.beta;

    if (!finite_positive(d.m)) unphysical("Biot modulus m is not positive");

    d.A = {d.rho, p.rho_f, p.rho_f, d.rho_w};
    d.B = {d.alpha, d.m * d.beta, d.m * d.beta, d.m};

    const double detA = d.A.det();
    if (!(detA > 0.0)) {
        std::ostringstream os;
        os << "inertia matrix not positive definite (rho*rho_w - rho_f^2 = " << detA << ")";
        unphysical(os.str());
    }
    // det B = m (lambda + 2 mu)
    if (!(d.lambda + 2.0 * p.mu > 0.0)) unphysical("stiffness matrix not positive definite");

    const Mat2 M = d.A.inverse() * d.B;
    const double tr = M.a11 + M.a22;
    const double dt = M.det();
    const double disc = tr * tr - 4.0 * dt;
    if (!(disc > 0.0)) throw PhysicalError("degenerate P-modes: fast and slow P speeds coincide");
    const double root = std::sqrt(disc);
    // Avoid cancellation in the smaller eigenvalue.
    const double ev_fast = 0.5 * (tr + root);
    const double ev_slow = dt / ev_fast;
    if (!(ev_slow > 0.0)) unphysical("slow P eigenvalue not positive");
    if (ev_fast == ev_slow) throw PhysicalError("degenerate P-modes");

    d.v_pf = std::sqrt(ev_fast);
    d.v_ps = std::sqrt(ev_slow);
    d.v_s = std::sqrt(p.mu * d.rho_w / detA);

    const auto e1 = eigenvector(M, ev_fast);
    const auto e2 = eigenvector(M, ev_slow);
    d.P = {e1[0], e2[0], e1[1], e2[1]};
    d.P_inv = d.P.inverse();
    return d;
}

DerivedLayer with_scaled_modes(const DerivedLayer& layer, double c1, double c2) {
    if (c1 == 0.0 || c2 == 0.0) throw ConfigError("mode scale factors must be nonzero");
    DerivedLayer d = layer;
    d.P.a11 *= c1;
    d.P.a21 *= c1;
    d.P.a12 *= c2;
    d.P.a22 *= c2;
    d.P_inv = d.P.inverse();
    return d;
}

ModalAmplitudes project_source(const DerivedLayer& top, const SourceAmplitudes& s) {
    // Pressure enters as an equivalent gradient source.
    const double g1 = s.f_u - top.beta * top.m * s.f_p;
    const double g2 = s.f_w - top.m * s.f_p;
    const Mat2 AP = top.A * top.P;
    const Mat2 inv = AP.inverse();
    return {inv.a11 * g1 + inv.a12 * g2, inv.a21 * g1 + inv.a22 * g2};
}

double max_speed(const DerivedLayer& top, const DerivedLayer& bottom) {
    return std::max({top.v_pf, top.v_ps, top.v_s, bottom.v_pf, bottom.v_ps, bottom.v_s});
}

}  // namespace porowave
