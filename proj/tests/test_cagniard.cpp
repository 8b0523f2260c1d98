#include <gtest/gtest.h>

#include <random>

#include "common.hpp"
#include "porowave/cagniard.hpp"
#include "porowave/error.hpp"
#include "porowave/validation.hpp"

using namespace porowave;
using namespace porowave::testing;

namespace {

const DerivedLayer& top() {
    static const DerivedLayer d = derive_layer(top_props());
    return d;
}
const DerivedLayer& bottom() {
    static const DerivedLayer d = derive_layer(bottom_props());
    return d;
}

WavePair pair(Mode in, Mode out, Side side, double x, double z) {
    return make_wave_pair({in, out, side}, top(), bottom(), kHeight, x, z);
}

std::vector<WavePair> all_pairs(const Receiver& r) {
    std::vector<WavePair> v;
    const Side s = r.z > 0 ? Side::reflected : Side::transmitted;
    for (Mode in : {Mode::Pf, Mode::Ps})
        for (Mode out : {Mode::Pf, Mode::Ps, Mode::S}) v.push_back(pair(in, out, s, r.x, r.z));
    return v;
}

// (1200, 0, 300) has reflected head waves of both kinds: PsPs (same speed)
// and PsS (mixed).
const Receiver kFar{1200, 0, 300};

}  // namespace

TEST(Cagniard, Labels) {
    EXPECT_EQ(Scattering({Mode::Pf, Mode::Ps, Side::reflected}).label(), "PfPs");
    EXPECT_EQ(Scattering({Mode::Ps, Mode::S, Side::transmitted}).label(), "PsS-");
}

TEST(Cagniard, MakePairRejectsWrongSide) {
    EXPECT_THROW(pair(Mode::Pf, Mode::Pf, Side::reflected, 400, -533), ConfigError);
    EXPECT_THROW(pair(Mode::Pf, Mode::Pf, Side::transmitted, 400, 533), ConfigError);
    EXPECT_THROW(pair(Mode::S, Mode::Pf, Side::reflected, 400, 533), ConfigError);
}

TEST(Cagniard, SameSpeedMirrorTime) {
    const WavePair w = pair(Mode::Pf, Mode::Pf, Side::reflected, 400, 533);
    EXPECT_NEAR(travel_time(w, 0.0), std::hypot(400.0, 1033.0) / top().v_pf, 1e-12);
    // with transverse slowness the fictitious speed enters
    const double q = 2e-4;
    EXPECT_NEAR(travel_time(w, q), std::hypot(400.0, 1033.0) / fictitious_velocity(top().v_pf, q), 1e-12);
}

TEST(Cagniard, VerticalRay) {
    const WavePair w = pair(Mode::Pf, Mode::Ps, Side::transmitted, 0.0, -533);
    for (double q : {0.0, 1e-4, 5e-4}) {
        const double expect = 500 / fictitious_velocity(top().v_pf, q) + 533 / fictitious_velocity(bottom().v_ps, q);
        EXPECT_NEAR(travel_time(w, q), expect, 1e-12);
    }
}

TEST(Cagniard, TransmittedPfPfMatchesFermat) {
    const WavePair w = pair(Mode::Pf, Mode::Pf, Side::transmitted, 400, -533);
    EXPECT_NEAR(arrival_time(w), fermat_two_leg(500, 533, 400, top().v_pf, bottom().v_pf), 1e-9);
}

TEST(Cagniard, MixedReflectedMatchesFermat) {
    const WavePair w = pair(Mode::Pf, Mode::Ps, Side::reflected, 400, 533);
    EXPECT_NEAR(arrival_time(w), fermat_two_leg(500, 533, 400, top().v_pf, top().v_ps), 1e-9);
}

TEST(Cagniard, IncidentArrivalAtReceiver1) {
    const Problem pb = section3();
    const auto terms = wave_terms(pb, r1());
    ASSERT_EQ(terms.front().label, "Pf");
    EXPECT_NEAR(terms.front().windows.t0, std::hypot(400.0, 33.0) / top().v_pf, 1e-12);
    EXPECT_NEAR(terms.front().windows.t0, 0.14910, 1e-4);  // quoted with V rounded to 2692
}

TEST(Cagniard, Q0Examples) {
    const WavePair w = pair(Mode::Pf, Mode::Pf, Side::reflected, 400, 533);
    const double t0 = arrival_time(w);
    EXPECT_EQ(q0_of_t(w, t0), 0.0);
    EXPECT_NEAR(q0_of_t(w, std::sqrt(2.0) * t0), 1.0 / top().v_pf, 1e-15);
    EXPECT_THROW(q0_of_t(w, 0.9 * t0), DomainError);
    const WavePair m = pair(Mode::Ps, Mode::S, Side::transmitted, 400, -533);
    EXPECT_EQ(q0_of_t(m, arrival_time(m)), 0.0);
    EXPECT_THROW(q0_of_t(m, 0.5 * arrival_time(m)), DomainError);
}

TEST(Cagniard, Q1Examples) {
    const WavePair w = pair(Mode::Ps, Mode::Ps, Side::reflected, kFar.x, kFar.z);
    const TimeWindows tw = head_window(w);
    ASSERT_TRUE(tw.head_exists);
    EXPECT_NEAR(q1_of_t(w, *tw.t_h1), 0.0, 1e-12);
    const double a = q1_of_t(w, *tw.t_h1 + 1e-3), b = q1_of_t(w, *tw.t_h1 + 2e-3);
    EXPECT_GT(a, 0.0);
    EXPECT_GT(b, a);
    EXPECT_THROW(q1_of_t(w, *tw.t_h1 - 1e-3), DomainError);
    EXPECT_THROW(q1_of_t(pair(Mode::Ps, Mode::Ps, Side::reflected, 0.0, 300), 2.0), DomainError);
}

TEST(Cagniard, Q1ReflectedPfSReceiver1) {
    const WavePair w = pair(Mode::Pf, Mode::S, Side::reflected, 400, 533);
    const double vm = w.v_max, vs = top().v_s;
    // Here the incident leg travels at the greatest speed, so only the
    // outgoing leg contributes a delay.
    const double c2 = std::sqrt(1 / (vs * vs) - 1 / (vm * vm));
    const double th1 = 533 * c2 + 400 / vm;
    EXPECT_NEAR(*head_window(w).t_h1, th1, 1e-12);
    EXPECT_NEAR(th1, 0.4709, 5e-4);
    const double t = 0.5;
    const double expect = std::sqrt(std::pow((t - 533 * c2) / 400, 2) - 1 / (vm * vm));
    EXPECT_NEAR(q1_of_t(w, t), expect, 1e-15);
}

TEST(Cagniard, NoHeadWaveWhenSlowerLegIsFastest) {
    // Reflected PfPf travels at V_max on both legs.
    for (double x : {100.0, 400.0, 3000.0})
        EXPECT_FALSE(head_window(pair(Mode::Pf, Mode::Pf, Side::reflected, x, 533)).head_exists);
}

TEST(Cagniard, OnAxisHasNoHeadWave) {
    for (const auto& w : all_pairs({0.0, 0.0, 300}))
        EXPECT_FALSE(head_window(w).head_exists) << w.kind.label();
}

TEST(Cagniard, HeadWindowOrderingAndFermat) {
    int seen = 0;
    for (const Receiver& r : {r1(), r2(), kFar, Receiver{2500, 0, -200}}) {
        for (const auto& w : all_pairs(r)) {
            const TimeWindows tw = head_window(w);
            if (!tw.head_exists) continue;
            ++seen;
            EXPECT_LE(*tw.t_h1, tw.t0) << w.kind.label();
            EXPECT_LE(tw.t0, *tw.t_h2) << w.kind.label();
            EXPECT_NEAR(*tw.t_h1, fermat_head_wave(w.h, w.zleg, w.x, w.v1, w.v2, w.v_max), 1e-6) << w.kind.label();
        }
    }
    EXPECT_GE(seen, 3);
}

TEST(Cagniard, Receiver2HasOnlyPsPsHead) {
    for (const auto& w : all_pairs(r2())) {
        const TimeWindows tw = head_window(w);
        EXPECT_EQ(tw.head_exists, w.kind.label() == "PsPs-") << w.kind.label();
    }
}

TEST(Cagniard, SameSpeedQ1MeetsQ0AtCutoff) {
    const WavePair w = pair(Mode::Ps, Mode::Ps, Side::reflected, kFar.x, kFar.z);
    const TimeWindows tw = head_window(w);
    ASSERT_TRUE(tw.head_exists);
    EXPECT_NEAR(q1_of_t(w, *tw.t_h2), q0_of_t(w, *tw.t_h2), 1e-9);
}

TEST(Cagniard, GammaClosedFormSameSpeed) {
    const WavePair w = pair(Mode::Ps, Mode::Ps, Side::reflected, kFar.x, kFar.z);
    const double r = w.mirror_distance(), zh = w.h + w.zleg;
    for (double q : {0.0, 1e-4, 3e-4}) {
        const double s2 = 1 / (w.v1 * w.v1) + q * q;
        for (double f : {1.01, 1.3, 2.0}) {
            const double t = f * travel_time(w, q);
            // lower half plane: conjugate of i x t / r^2 + ...
            const cplx cf(zh / r * std::sqrt(t * t / (r * r) - s2), -w.x * t / (r * r));
            const PathPoint g = gamma_point(w, t, q);
            EXPECT_LT(std::abs(g.value - cf), 1e-12 * std::abs(cf));
            EXPECT_LT(std::abs(path_function(w, cf, q, t)), 1e-12 * t);
        }
    }
    // at the saddle the radical vanishes and gamma is purely imaginary
    const double t0 = travel_time(w, 0.0);
    const PathPoint g = gamma_point(w, t0 * (1 + 1e-13), 0.0);
    EXPECT_NEAR(g.value.imag(), -w.x * t0 / (r * r), 1e-12 / w.v1);
    EXPECT_LT(g.value.real(), 1e-5 / w.v1);
}

TEST(Cagniard, VClosedFormSameSpeed) {
    const WavePair w = pair(Mode::Ps, Mode::Ps, Side::reflected, kFar.x, kFar.z);
    const TimeWindows tw = head_window(w);
    const double r = w.mirror_distance(), zh = w.h + w.zleg;
    for (double f : {0.1, 0.5, 0.9}) {
        const double t = *tw.t_h1 + f * (tw.t0 - *tw.t_h1);
        const double y = w.x * t / (r * r) - zh / r * std::sqrt(1 / (w.v1 * w.v1) - t * t / (r * r));
        const PathPoint v = v_point(w, t, 0.0);
        EXPECT_EQ(v.branch, Branch::v);
        EXPECT_NEAR(v.value.real(), 0.0, 1e-15);
        EXPECT_NEAR(-v.value.imag(), y, 1e-12 * y);
        EXPECT_GT(y, 1 / w.v_max);
        EXPECT_LT(y, 1 / w.v1);
        EXPECT_LT(v.dvalue_dt.imag(), 0.0);
    }
}

TEST(Cagniard, GammaPointDomain) {
    const WavePair w = pair(Mode::Pf, Mode::Ps, Side::reflected, 400, 533);
    EXPECT_THROW(gamma_point(w, 0.5 * arrival_time(w), 0.0), DomainError);
    EXPECT_THROW(v_point(w, 0.5 * arrival_time(w), 0.0), DomainError);
}

// Sampled properties on all twelve families at both receivers.
class CagniardProperty : public ::testing::TestWithParam<int> {};

TEST_P(CagniardProperty, MonotoneAndRoundTrip) {
    const Receiver r = GetParam() == 0 ? r1() : r2();
    std::mt19937_64 rng(99 + GetParam());
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (const auto& w : all_pairs(r)) {
        const double qmax = 1.0 / std::min(top().v_ps, bottom().v_ps);
        double prev = travel_time(w, 0.0);
        for (int i = 1; i <= 50; ++i) {
            const double t = travel_time(w, qmax * i / 50.0);
            EXPECT_GT(t, prev) << w.kind.label();
            prev = t;
        }
        for (int i = 0; i < 100; ++i) {
            const double q = qmax * (0.01 + U(rng));
            EXPECT_NEAR(q0_of_t(w, travel_time(w, q)), q, 1e-12 * q) << w.kind.label();
            const double t = arrival_time(w) * (1 + 2 * U(rng));
            EXPECT_NEAR(travel_time(w, q0_of_t(w, t)), t, 1e-9) << w.kind.label();
        }
    }
}

TEST_P(CagniardProperty, PathResidualsAndBranchSigns) {
    const Receiver r = GetParam() == 0 ? r1() : r2();
    std::mt19937_64 rng(7 + GetParam());
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (const auto& w : all_pairs(r)) {
        const double t0 = arrival_time(w);
        for (int i = 0; i < 200; ++i) {
            const double t = t0 * (1 + 1.5 * U(rng));
            const double q = q0_of_t(w, t) * U(rng);
            const PathPoint g = gamma_point(w, t, q);
            EXPECT_LE(std::abs(path_function(w, g.value, q, t)), 1e-9) << w.kind.label();
            EXPECT_GE(g.value.real(), 0.0);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Receivers, CagniardProperty, ::testing::Values(0, 1));
