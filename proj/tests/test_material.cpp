#include <gtest/gtest.h>

#include <random>

#include "common.hpp"
#include "porowave/error.hpp"
#include "porowave/material.hpp"

using namespace porowave;
using namespace porowave::testing;

namespace {

// det(B - V^2 A) written out by hand, scaled by det B.
double dispersion(const DerivedLayer& d, double v) {
    const double s = v * v;
    const double a11 = d.alpha - s * d.rho, a12 = d.m * d.beta - s * d.rho_f(), a22 = d.m - s * d.rho_w;
    return (a11 * a22 - a12 * a12) / (d.alpha * d.m);
}

}  // namespace

TEST(Material, TopLayerSpeeds) {
    const DerivedLayer d = derive_layer(top_props());
    EXPECT_NEAR(d.v_pf, 2692, 1.0);
    EXPECT_NEAR(d.v_ps, 1186, 1.0);
    EXPECT_NEAR(d.v_s, 1409, 1.0);
}

TEST(Material, BottomLayerSpeeds) {
    const DerivedLayer d = derive_layer(bottom_props());
    EXPECT_NEAR(d.v_pf, 2535, 1.0);
    EXPECT_NEAR(d.v_ps, 744, 1.0);
    EXPECT_NEAR(d.v_s, 1415, 1.0);
}

TEST(Material, TopLayerDerivedQuantities) {
    const DerivedLayer d = derive_layer(top_props());
    EXPECT_NEAR(d.rho, 1700.0, 1e-9);
    EXPECT_NEAR(d.rho_w, 4750.0, 1e-9);
    EXPECT_NEAR(d.lambda, 4.7e9, 1e-3);
    // beta = 1 - 6.7/6.9, 1/m = 0.4/2 + (beta - 0.4)/6.9 (GPa)
    const double beta = 1.0 - 6.7 / 6.9;
    EXPECT_NEAR(d.beta, beta, 1e-15);
    EXPECT_NEAR(d.m, 1e9 / (0.2 + (beta - 0.4) / 6.9), 1.0);
}

TEST(Material, ShearSpeedClosedForm) {
    for (const auto& p : {top_props(), bottom_props()}) {
        const DerivedLayer d = derive_layer(p);
        const double rho = p.phi * p.rho_f + (1 - p.phi) * p.rho_s;
        const double rw = p.a * p.rho_f / p.phi;
        EXPECT_NEAR(d.v_s, std::sqrt(p.mu / (rho - p.rho_f * p.rho_f / rw)), 1e-9);
    }
}

TEST(Material, SpeedsSolveDispersionRelation) {
    for (const auto& p : {top_props(), bottom_props()}) {
        const DerivedLayer d = derive_layer(p);
        EXPECT_LT(std::abs(dispersion(d, d.v_pf)), 1e-12);
        EXPECT_LT(std::abs(dispersion(d, d.v_ps)), 1e-12);
        EXPECT_GT(d.v_pf, d.v_ps);
    }
}

TEST(Material, EigenvectorsReconstruct) {
    const DerivedLayer d = derive_layer(top_props());
    const Mat2 M = d.A.inverse() * d.B;
    const double ev[2] = {d.v_pf * d.v_pf, d.v_ps * d.v_ps};
    for (int c = 0; c < 2; ++c) {
        const double p1 = c == 0 ? d.P.a11 : d.P.a12, p2 = c == 0 ? d.P.a21 : d.P.a22;
        EXPECT_NEAR(std::hypot(p1, p2), 1.0, 1e-14);
        EXPECT_LT(std::abs(M.a11 * p1 + M.a12 * p2 - ev[c] * p1), 1e-9 * ev[c]);
        EXPECT_LT(std::abs(M.a21 * p1 + M.a22 * p2 - ev[c] * p2), 1e-9 * ev[c]);
    }
    const Mat2 I = d.P * d.P_inv;
    EXPECT_NEAR(I.a11, 1.0, 1e-14);
    EXPECT_NEAR(I.a12, 0.0, 1e-14);
    EXPECT_NEAR(I.a21, 0.0, 1e-14);
    EXPECT_NEAR(I.a22, 1.0, 1e-14);
}

TEST(Material, MaxSpeed) {
    EXPECT_DOUBLE_EQ(max_speed(derive_layer(top_props()), derive_layer(bottom_props())),
                     derive_layer(top_props()).v_pf);
}

TEST(Material, RejectsUnphysicalInput) {
    auto bad = top_props();
    bad.phi = 0.0;
    EXPECT_THROW(derive_layer(bad), PhysicalError);
    bad = top_props();
    bad.mu = -1.0;
    EXPECT_THROW(derive_layer(bad), PhysicalError);
    bad = top_props();
    bad.K_b = 8e9;  // above K_s
    EXPECT_THROW(derive_layer(bad), PhysicalError);
    bad = top_props();
    bad.a = 0.5;
    try {
        derive_layer(bad);
        FAIL() << "tortuosity below one accepted";
    } catch (const PhysicalError& e) {
        EXPECT_NE(std::string(e.what()).find("unphysical material"), std::string::npos);
    }
}

TEST(Material, ZeroSourceProjectsToZero) {
    const ModalAmplitudes F = project_source(derive_layer(top_props()), {0, 0, 0});
    EXPECT_EQ(F.F_pf, 0.0);
    EXPECT_EQ(F.F_ps, 0.0);
}

TEST(Material, BulkSourceRoundTrip) {
    const DerivedLayer d = derive_layer(top_props());
    const ModalAmplitudes F = project_source(d, bulk_source());
    const Mat2 AP = d.A * d.P;
    EXPECT_NEAR((AP.a11 * F.F_pf + AP.a12 * F.F_ps) / -1e10, 1.0, 1e-10);
    EXPECT_NEAR((AP.a21 * F.F_pf + AP.a22 * F.F_ps) / -1e10, 1.0, 1e-10);
}

TEST(Material, PressureSourceMatchesCramerSolve) {
    const DerivedLayer d = derive_layer(top_props());
    const ModalAmplitudes F = project_source(d, pressure_source());
    // Independent Cramer solve of (A P) F = (-beta m, -m).
    const double a = d.A.a11 * d.P.a11 + d.A.a12 * d.P.a21, b = d.A.a11 * d.P.a12 + d.A.a12 * d.P.a22;
    const double c = d.A.a21 * d.P.a11 + d.A.a22 * d.P.a21, e = d.A.a21 * d.P.a12 + d.A.a22 * d.P.a22;
    const double r1 = -d.beta * d.m, r2 = -d.m;
    const double det = a * e - b * c;
    EXPECT_LT(rel_diff(F.F_pf, (r1 * e - b * r2) / det), 1e-10);
    EXPECT_LT(rel_diff(F.F_ps, (a * r2 - c * r1) / det), 1e-10);
}

TEST(Material, RescaledModesScaleAmplitudesInversely) {
    const DerivedLayer d = derive_layer(top_props());
    const ModalAmplitudes F = project_source(d, bulk_source());
    for (double c : {-1.0, 0.5, 3.0}) {
        const ModalAmplitudes G = project_source(with_scaled_modes(d, c, 1.0), bulk_source());
        EXPECT_LT(rel_diff(G.F_pf * c, F.F_pf), 1e-13);
        EXPECT_LT(rel_diff(G.F_ps, F.F_ps), 1e-13);
    }
    EXPECT_THROW(with_scaled_modes(d, 0.0, 1.0), ConfigError);
}

// Random physically admissible layers: both P speeds solve the dispersion
// relation and the polarisation matrix is invertible.
TEST(MaterialProperty, RandomLayers) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        LayerProperties p;
        p.rho_s = 2000 + 1000 * U(rng);
        p.rho_f = 700 + 500 * U(rng);
        p.phi = 0.05 + 0.5 * U(rng);
        p.a = 1 + 2 * U(rng);
        p.K_s = (20 + 30 * U(rng)) * 1e9;
        p.K_f = (1 + 2 * U(rng)) * 1e9;
        p.K_b = p.K_s * (0.05 + 0.8 * U(rng));
        p.mu = (1 + 10 * U(rng)) * 1e9;
        const DerivedLayer d = derive_layer(p);
        EXPECT_LT(std::abs(dispersion(d, d.v_pf)), 1e-9) << i;
        EXPECT_LT(std::abs(dispersion(d, d.v_ps)), 1e-9) << i;
        EXPECT_GT(d.v_pf, d.v_ps);
        EXPECT_GT(std::abs(d.P.det()), 1e-6);
    }
}
