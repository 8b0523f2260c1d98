#include "porowave/cagniard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "porowave/error.hpp"

namespace porowave {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 8-point Gauss-Legendre on [-1, 1], symmetric half.
constexpr double kGLx[4] = {0.183434642495649804939476142360184, 0.525532409916328985817739049189246,
                            0.796666477413626739591553936475830, 0.960289856497536231683560868569473};
constexpr double kGLw[4] = {0.362683783378361982965150449277196, 0.313706645877887287337962201986601,
                            0.222381034453374470544355994426241, 0.101228536290376259152531354309962};

// s^2 - y^2 without cancellation.
double radicand(double ssq, double y) {
    const double s = std::sqrt(ssq);
    return (s - y) * (s + y);
}

[[noreturn]] void tracking_failure(const WavePair& pair, double t, double q, cplx last) {
    std::ostringstream os;
    os.precision(17);
    os << "path tracking failure for " << pair.kind.label() << " at t = " << t << ", q = " << q
       << ", last iterate = (" << last.real() << ", " << last.imag() << ")";
    throw NumericalError(os.str());
}

struct SaddleRoot {
    double y = 0, k1 = 0, k2 = 0;
};

// Solves h y / sqrt(s1^2 - y^2) + z y / sqrt(s2^2 - y^2) = x for y. When one leg
// is close to grazing its vertical slowness is tiny and y is ill-conditioned, so
// that slowness is refined as the primary unknown.
SaddleRoot solve_saddle(const WavePair& w, double s1sq, double s2sq) {
    SaddleRoot r;
    if (w.same_speed()) {
        const double s = std::sqrt(s1sq), rr = w.mirror_distance();
        r.y = s * w.x / rr;
        r.k1 = r.k2 = s * (w.h + w.zleg) / rr;
        return r;
    }
    if (w.x == 0.0) {
        r.k1 = std::sqrt(s1sq);
        r.k2 = std::sqrt(s2sq);
        return r;
    }
    if (w.zleg == 0.0) {
        const double s = std::sqrt(s1sq), rr = std::hypot(w.x, w.h);
        r.y = s * w.x / rr;
        r.k1 = s * w.h / rr;
        r.k2 = std::sqrt(radicand(s2sq, r.y));
        return r;
    }

    const double ymax = std::min(std::sqrt(s1sq), std::sqrt(s2sq));
    double lo = 0.0, hi = ymax;
    double y = ymax * w.x / std::hypot(w.x, w.h + w.zleg);
    for (int it = 0; it < 200; ++it) {
        const double r1 = radicand(s1sq, y), r2 = radicand(s2sq, y);
        const double k1 = std::sqrt(r1), k2 = std::sqrt(r2);
        const double g = w.h * y / k1 + w.zleg * y / k2 - w.x;
        if (g > 0.0)
            hi = y;
        else
            lo = y;
        const double dg = w.h * s1sq / (r1 * k1) + w.zleg * s2sq / (r2 * k2);
        double yn = y - g / dg;
        if (!(yn > lo && yn < hi)) yn = 0.5 * (lo + hi);
        const bool done = std::abs(yn - y) <= 2.0 * kEps * ymax || hi - lo <= 2.0 * kEps * ymax;
        y = yn;
        if (done) break;
    }
    r.y = y;
    r.k1 = std::sqrt(radicand(s1sq, y));
    r.k2 = std::sqrt(radicand(s2sq, y));

    // s1^2 - s2^2 does not depend on q and is free of cancellation this way.
    const double d12 = 1.0 / (w.v1 * w.v1) - 1.0 / (w.v2 * w.v2);
    if (r.k2 < 1e-2 * std::sqrt(s2sq)) {
        double u = r.k2;
        for (int it = 0; it < 60; ++it) {
            const double yy = std::sqrt(s2sq - u * u);
            const double k1 = std::sqrt(d12 + u * u);
            const double un = w.zleg * yy / (w.x - w.h * yy / k1);
            if (!(un > 0.0)) break;
            const bool done = std::abs(un - u) <= 4.0 * kEps * un;
            u = un;
            r.y = std::sqrt(s2sq - u * u);
            r.k1 = std::sqrt(d12 + u * u);
            r.k2 = u;
            if (done) break;
        }
    } else if (r.k1 < 1e-2 * std::sqrt(s1sq)) {
        double u = r.k1;
        for (int it = 0; it < 60; ++it) {
            const double yy = std::sqrt(s1sq - u * u);
            const double k2 = std::sqrt(u * u - d12);
            const double un = w.h * yy / (w.x - w.zleg * yy / k2);
            if (!(un > 0.0)) break;
            const bool done = std::abs(un - u) <= 4.0 * kEps * un;
            u = un;
            r.y = std::sqrt(s1sq - u * u);
            r.k1 = u;
            r.k2 = std::sqrt(u * u - d12);
            if (done) break;
        }
    }
    return r;
}

// d t~0 / d(q^2)
double travel_time_slope(const WavePair& pair, double Q) {
    const double s1sq = 1.0 / (pair.v1 * pair.v1) + Q;
    const double s2sq = 1.0 / (pair.v2 * pair.v2) + Q;
    const SaddleRoot r = solve_saddle(pair, s1sq, s2sq);
    double d = pair.h / r.k1;
    if (pair.zleg > 0.0) d += pair.zleg / r.k2;
    return 0.5 * d;
}

// F(p_s + w) - F(p_s) = w^2 E(w) + i r0 w and F'(p_s + w) = w K(w) + i r0, with
// r0 = x - g(y0) the stationarity residual left by the saddle solve.
struct LocalTerms {
    cplx E, K;
};

LocalTerms local_terms(const WavePair& pair, const Saddle& sad, cplx w) {
    const cplx p(0.0, -sad.y0);
    LocalTerms out{0.0, 0.0};
    const double lens[2] = {pair.h, pair.zleg};
    const double ssq[2] = {sad.s1sq, sad.s2sq};
    const double k0[2] = {sad.k1, sad.k2};
    const cplx shift = w * (2.0 * p + w);
    for (int i = 0; i < 2; ++i) {
        if (lens[i] == 0.0) continue;
        const cplx kw = csqrt(k0[i] * k0[i] + shift);
        const cplx N = k0[i] * kw + ssq[i] + sad.y0 * sad.y0 - p * w;
        const cplx sum = kw + k0[i];
        out.E += lens[i] * N / (sum * sum * k0[i]);
        out.K += lens[i] * N / (sum * kw * k0[i]);
    }
    return out;
}

}  // namespace

std::string Scattering::label() const {
    std::string s = mode_name(incidence) + mode_name(outgoing);
    if (side == Side::transmitted) s += "-";
    return s;
}

double WavePair::mirror_distance() const { return std::hypot(x, h + zleg); }

WavePair make_wave_pair(const Scattering& kind, const DerivedLayer& top, const DerivedLayer& bottom, double h,
                        double x, double z) {
    if (kind.incidence == Mode::S) throw ConfigError("incident mode must be Pf or Ps");
    if (!(h > 0.0)) throw ConfigError("source height must be positive");
    if (!(x >= 0.0)) throw ConfigError("receiver offset must be non-negative");
    if (kind.side == Side::reflected && !(z > 0.0)) throw ConfigError("reflected waves need a receiver above the interface");
    if (kind.side == Side::transmitted && !(z < 0.0)) throw ConfigError("transmitted waves need a receiver below the interface");
    WavePair p;
    p.kind = kind;
    p.v1 = top.speed(kind.incidence);
    p.v2 = (kind.side == Side::reflected ? top : bottom).speed(kind.outgoing);
    p.h = h;
    p.x = x;
    p.zleg = std::abs(z);
    p.v_max = max_speed(top, bottom);
    return p;
}

cplx path_function(const WavePair& pair, cplx p, double q, double t) {
    const double s1sq = 1.0 / (pair.v1 * pair.v1) + q * q;
    const double s2sq = 1.0 / (pair.v2 * pair.v2) + q * q;
    return pair.h * kappa_s2(s1sq, p) + pair.zleg * kappa_s2(s2sq, p) + cplx(0.0, pair.x) * p - t;
}

cplx path_function_dp(const WavePair& pair, cplx p, double q) {
    const double s1sq = 1.0 / (pair.v1 * pair.v1) + q * q;
    const double s2sq = 1.0 / (pair.v2 * pair.v2) + q * q;
    cplx d = pair.h * p / kappa_s2(s1sq, p) + cplx(0.0, pair.x);
    if (pair.zleg > 0.0) d += pair.zleg * p / kappa_s2(s2sq, p);
    return d;
}

Saddle saddle_at(const WavePair& pair, double q) {
    Saddle s;
    s.q = q;
    s.s1sq = 1.0 / (pair.v1 * pair.v1) + q * q;
    s.s2sq = 1.0 / (pair.v2 * pair.v2) + q * q;
    const SaddleRoot r = solve_saddle(pair, s.s1sq, s.s2sq);
    s.y0 = r.y;
    s.k1 = r.k1;
    s.k2 = r.k2;
    if (pair.same_speed()) {
        s.t0q = pair.mirror_distance() * std::sqrt(s.s1sq);
    } else {
        s.t0q = pair.h * s.k1 + pair.zleg * s.k2 + s.y0 * pair.x;
        double g = pair.h * s.y0 / s.k1;
        if (pair.zleg > 0.0) g += pair.zleg * s.y0 / s.k2;
        s.r0 = pair.x - g;
    }
    return s;
}

double saddle_slowness(const WavePair& pair, double q) { return saddle_at(pair, q).y0; }

double travel_time(const WavePair& pair, double q) { return saddle_at(pair, q).t0q; }

double arrival_time(const WavePair& pair) { return travel_time(pair, 0.0); }

double travel_time_difference(const WavePair& pair, double qa, double qb, double dQ) {
    const double Qa = qa * qa;
    const double scale = 1.0 / (std::max(pair.v1, pair.v2) * std::max(pair.v1, pair.v2)) + std::min(Qa, qb * qb);
    if (std::abs(dQ) > 0.25 * scale) return travel_time(pair, qb) - travel_time(pair, qa);
    if (pair.same_speed()) {
        const double sa = std::sqrt(1.0 / (pair.v1 * pair.v1) + Qa);
        const double sb = std::sqrt(1.0 / (pair.v1 * pair.v1) + qb * qb);
        return pair.mirror_distance() * dQ / (sa + sb);
    }
    // Integrate the slope over [Qa, Qa + dQ].
    const double half = 0.5 * dQ, mid = Qa + half;
    double acc = 0.0;
    for (int i = 0; i < 4; ++i)
        acc += kGLw[i] * (travel_time_slope(pair, mid - half * kGLx[i]) + travel_time_slope(pair, mid + half * kGLx[i]));
    return acc * half;
}

double q0_of_t(const WavePair& pair, double t) {
    const double t0 = arrival_time(pair);
    if (t < t0) {
        if (t >= t0 * (1.0 - 8.0 * kEps)) return 0.0;
        std::ostringstream os;
        os.precision(17);
        os << "q0 undefined before the arrival time (t = " << t << " < t0 = " << t0 << ")";
        throw DomainError(os.str());
    }
    if (pair.same_speed()) {
        const double r = pair.mirror_distance();
        const double a = t / r, b = 1.0 / pair.v1;
        return std::sqrt(std::max(0.0, (a - b) * (a + b)));
    }
    // Newton on Q = q^2 with a bisection safeguard; t~0 is smooth and increasing in Q.
    double lo = 0.0, hi = 1.0 / (pair.v1 * pair.v1);
    while (travel_time(pair, std::sqrt(hi)) < t) {
        lo = hi;
        hi *= 4.0;
        if (!std::isfinite(hi)) throw NumericalError("q0 bracket diverged");
    }
    double Q = std::min(hi, std::max(lo, (t - t0) / travel_time_slope(pair, 0.0)));
    for (int it = 0; it < 200; ++it) {
        const double f = travel_time(pair, std::sqrt(Q)) - t;
        if (f == 0.0) return std::sqrt(Q);
        if (f > 0.0)
            hi = Q;
        else
            lo = Q;
        double Qn = Q - f / travel_time_slope(pair, Q);
        if (!(Qn > lo && Qn < hi)) Qn = 0.5 * (lo + hi);
        if (std::abs(Qn - Q) <= 4.0 * kEps * Qn || hi - lo <= 4.0 * kEps * hi) return std::sqrt(Qn);
        Q = Qn;
    }
    return std::sqrt(Q);
}

double q1_of_t(const WavePair& pair, double t) {
    if (pair.x < 1e-9) throw DomainError("q1 undefined on the source axis");
    const double im2 = 1.0 / (pair.v_max * pair.v_max);
    const double c1 = std::sqrt(std::max(0.0, 1.0 / (pair.v1 * pair.v1) - im2));
    const double c2 = std::sqrt(std::max(0.0, 1.0 / (pair.v2 * pair.v2) - im2));
    const double a = (t - pair.h * c1 - pair.zleg * c2) / pair.x;
    const double rad = a * a - im2;
    if (a < 0.0 || rad < 0.0) {
        if (a >= 0.0 && rad > -8.0 * kEps * im2) return 0.0;
        std::ostringstream os;
        os.precision(17);
        os << "q1 undefined at t = " << t << " (no head-wave segment)";
        throw DomainError(os.str());
    }
    return std::sqrt(rad);
}

TimeWindows head_window(const WavePair& pair) {
    TimeWindows tw;
    tw.t0 = arrival_time(pair);
    if (pair.x < 1e-9) return tw;
    const double im2 = 1.0 / (pair.v_max * pair.v_max);
    const double c1 = std::sqrt(std::max(0.0, 1.0 / (pair.v1 * pair.v1) - im2));
    const double c2 = std::sqrt(std::max(0.0, 1.0 / (pair.v2 * pair.v2) - im2));
    const double h = pair.h, z = pair.zleg, x = pair.x;
    tw.t_h1 = h * c1 + z * c2 + x / pair.v_max;
    if (c1 > 0.0 && z == 0.0)
        tw.t_h2 = (h * h + x * x) * c1 / h;
    else if (c1 > 0.0 && c2 > 0.0)
        tw.t_h2 = (h * h + z * z + h * z * (c2 / c1 + c1 / c2) + x * x) / (h / c1 + z / c2);
    tw.head_exists = tw.t_h2.has_value() && saddle_slowness(pair, 0.0) * pair.v_max > 1.0;
    return tw;
}

PathPoint gamma_from_excess(const WavePair& pair, const Saddle& sad, double e) {
    if (!(e > 0.0)) throw DomainError("gamma branch needs t > t~0(q)");
    PathPoint pt;
    pt.branch = Branch::gamma;
    const double t = sad.t0q + e;

    if (pair.same_speed()) {
        const double r = pair.mirror_distance(), H = pair.h + pair.zleg;
        const double s = std::sqrt(sad.s1sq);
        const double S = std::sqrt((e / r) * (2.0 * s + e / r));
        pt.value = cplx(H / r * S, -pair.x * t / (r * r));
        pt.dvalue_dt = cplx(H / r * (t / (r * r)) / S, -pair.x / (r * r));
        return pt;
    }

    const cplx ir0(0.0, sad.r0);
    auto residual = [&](cplx w) {
        const LocalTerms lt = local_terms(pair, sad, w);
        return w * w * lt.E + ir0 * w - e;
    };
    auto newton = [&](cplx w, double target, bool& ok) {
        ok = false;
        double res = std::abs(residual(w) + e - target);
        for (int it = 0; it < 100; ++it) {
            const LocalTerms lt = local_terms(pair, sad, w);
            const cplx H = w * w * lt.E + ir0 * w - target;
            const cplx dw = -H / (w * lt.K + ir0);
            double lam = 1.0;
            bool stepped = false;
            while (lam > 1e-6) {
                cplx wn = w + lam * dw;
                if (wn.real() < 0.0) wn = -std::conj(wn);
                const double rn = std::abs(residual(wn) + e - target);
                if (rn < res || std::abs(lam * dw) <= 4.0 * kEps * std::abs(w)) {
                    const bool tiny = std::abs(wn - w) <= 4.0 * kEps * std::abs(wn);
                    w = wn;
                    res = rn;
                    stepped = true;
                    if (tiny) {
                        ok = true;
                        return w;
                    }
                    break;
                }
                lam *= 0.5;
            }
            if (!stepped) {
                ok = res <= 64.0 * kEps * (sad.t0q + std::abs(target));
                return w;
            }
        }
        ok = res <= 64.0 * kEps * (sad.t0q + std::abs(target));
        return w;
    };

    const LocalTerms l0 = local_terms(pair, sad, cplx(0.0, 0.0));
    const cplx p_s(0.0, -sad.y0);
    cplx wa = std::sqrt(e / l0.E);
    if (wa.real() < 0.0) wa = -wa;
    cplx wb = t / cplx(pair.h + pair.zleg, pair.x) - p_s;
    if (wb.real() <= 0.0) wb = wa;
    cplx w = std::abs(residual(wa)) <= std::abs(residual(wb)) ? wa : wb;

    bool ok = false;
    w = newton(w, e, ok);
    if (!ok) {
        // Continuation in the excess from the quadratic regime.
        const int steps = 64;
        const double e_start = std::min(e, 1e-8 * sad.t0q);
        cplx wc = std::sqrt(e_start / l0.E);
        for (int k = 0; k <= steps; ++k) {
            const double ek = e_start * std::pow(e / e_start, static_cast<double>(k) / steps);
            bool okk = false;
            wc = newton(wc, ek, okk);
            if (!okk && k == steps) tracking_failure(pair, t, sad.q, p_s + wc);
        }
        w = wc;
    }
    if (w.real() < 0.0) tracking_failure(pair, t, sad.q, p_s + w);
    const LocalTerms lt = local_terms(pair, sad, w);
    pt.value = p_s + w;
    pt.dvalue_dt = 1.0 / (w * lt.K + ir0);
    return pt;
}

PathPoint v_from_deficit(const WavePair& pair, const Saddle& sad, double d) {
    if (!(d > 0.0)) throw DomainError("head-wave branch needs t < t~0(q)");
    PathPoint pt;
    pt.branch = Branch::v;
    const double t = sad.t0q - d;

    if (pair.same_speed()) {
        const double r = pair.mirror_distance(), H = pair.h + pair.zleg;
        const double s = std::sqrt(sad.s1sq);
        const double W = std::sqrt((d / r) * (2.0 * s - d / r));
        pt.value = cplx(0.0, -(pair.x * t / (r * r) - H / r * W));
        pt.dvalue_dt = cplx(0.0, -(pair.x / (r * r) + H / r * (t / (r * r)) / W));
        return pt;
    }

    // Real problem in delta = y0 - y: delta^2 E(i delta) = d.
    auto terms = [&](double delta) { return local_terms(pair, sad, cplx(0.0, delta)); };
    double lo = 0.0, hi = sad.y0;
    {
        const double full = hi * hi * terms(hi).E.real() + sad.r0 * hi;
        if (d > full) {
            std::ostringstream os;
            os.precision(17);
            os << "head-wave branch: deficit " << d << " beyond the cut segment at q = " << sad.q;
            throw DomainError(os.str());
        }
    }
    double delta = std::min(hi, std::sqrt(d / terms(0.0).E.real()));
    for (int it = 0; it < 200; ++it) {
        const LocalTerms lt = terms(delta);
        const double f = delta * delta * lt.E.real() + sad.r0 * delta - d;
        if (f > 0.0)
            hi = delta;
        else
            lo = delta;
        double dn = delta - f / (delta * lt.K.real() + sad.r0);
        if (!(dn > lo && dn < hi)) dn = 0.5 * (lo + hi);
        const bool done = std::abs(dn - delta) <= 4.0 * kEps * dn || hi - lo <= 4.0 * kEps * hi;
        delta = dn;
        if (done) break;
    }
    const LocalTerms lt = terms(delta);
    pt.value = cplx(0.0, -(sad.y0 - delta));
    pt.dvalue_dt = cplx(0.0, -1.0 / (delta * lt.K.real() + sad.r0));
    return pt;
}

PathPoint gamma_point(const WavePair& pair, double t, double q) {
    const Saddle sad = saddle_at(pair, q);
    const double e = t - sad.t0q;
    if (!(e > 0.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "gamma_point needs t > t~0(q) (t = " << t << ", t~0 = " << sad.t0q << ")";
        throw DomainError(os.str());
    }
    return gamma_from_excess(pair, sad, e);
}

PathPoint v_point(const WavePair& pair, double t, double q) {
    const Saddle sad = saddle_at(pair, q);
    const double d = sad.t0q - t;
    const double im2 = 1.0 / (pair.v_max * pair.v_max);
    const double c1 = std::sqrt(std::max(0.0, 1.0 / (pair.v1 * pair.v1) - im2));
    const double c2 = std::sqrt(std::max(0.0, 1.0 / (pair.v2 * pair.v2) - im2));
    const double th1q = pair.h * c1 + pair.zleg * c2 + pair.x * std::sqrt(im2 + q * q);
    if (!(d > 0.0) || !(t > th1q)) {
        std::ostringstream os;
        os.precision(17);
        os << "v_point outside the head-wave domain (t = " << t << ", q = " << q << ")";
        throw DomainError(os.str());
    }
    return v_from_deficit(pair, sad, d);
}

}  // namespace porowave
