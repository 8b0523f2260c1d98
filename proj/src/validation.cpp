#include "porowave/validation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "porowave/error.hpp"

namespace porowave {

namespace {

constexpr double kGolden = 0.6180339887498949;

// Minimum value of a unimodal f on [a, b]; stops when the bracket is below xtol.
double golden_min(const std::function<double(double)>& f, double a, double b, double xtol) {
    double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = f(d);
        }
    }
    return std::min({fc, fd, f(0.5 * (a + b))});
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

// Running maximum with the parameters that produced it.
struct Worst {
    double err = 0;
    std::string where;
    bool nan = false;

    void add(double e, const std::function<std::string()>& describe) {
        if (std::isnan(e)) {
            if (!nan) where = describe();
            nan = true;
            return;
        }
        if (!nan && e > err) {
            err = e;
            where = describe();
        }
    }

    OracleReport report(std::string name, double tol) const {
        OracleReport r;
        r.name = std::move(name);
        r.max_error = nan ? std::numeric_limits<double>::infinity() : err;
        r.tolerance = tol;
        r.pass = !nan && err <= tol;
        r.worst = where;
        return r;
    }
};

OracleReport failed(std::string name, double tol, const std::string& why) {
    OracleReport r;
    r.name = std::move(name);
    r.max_error = std::numeric_limits<double>::infinity();
    r.tolerance = tol;
    r.pass = false;
    r.worst = why;
    return r;
}

struct PairSite {
    WaveTerm term;
    Receiver rcv;
};

std::vector<PairSite> scattered_sites(const Problem& pb, const std::vector<Receiver>& rcvs) {
    std::vector<PairSite> out;
    for (const auto& r : rcvs)
        for (const auto& w : wave_terms(pb, r))
            if (!w.incident) out.push_back({w, r});
    return out;
}

std::string site_name(const PairSite& s) {
    return s.term.label + " at (" + fmt(s.rcv.x) + ", " + fmt(s.rcv.y) + ", " + fmt(s.rcv.z) + ")";
}

// Random points on the valid branches of a pair: gamma for t > t0,
// v inside the head-wave strip when one exists.
struct PathSample {
    double t, q;
    Branch branch;
};

std::vector<PathSample> path_samples(const PairSite& s, int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const WavePair& pair = s.term.pair;
    const TimeWindows& tw = s.term.windows;
    std::vector<PathSample> out;
    const int n_head = tw.head_exists ? n / 4 : 0;
    for (int i = 0; i < n - n_head; ++i) {
        const double t = tw.t0 * (1.0 + 1.5 * U(rng));
        const double q = q0_of_t(pair, t) * U(rng);
        out.push_back({t, q, Branch::gamma});
    }
    for (int i = 0; i < n_head; ++i) {
        const double t = *tw.t_h1 + (*tw.t_h2 - *tw.t_h1) * U(rng);
        const double lo = t > tw.t0 ? q0_of_t(pair, t) : 0.0;
        const double q = lo + (q1_of_t(pair, t) - lo) * U(rng);
        out.push_back({t, q, Branch::v});
    }
    return out;
}

// Time over which kappa^2 of either leg changes by its own size along the
// path. The path bends on this scale near a branch point, so difference
// steps must stay well below it.
double branch_time_scale(const WavePair& pair, const PathPoint& pt, double q) {
    const double rate = 2.0 * std::abs(pt.value) * std::abs(pt.dvalue_dt);
    // std::norm is the squared modulus, i.e. |kappa^2|
    double k2 = std::norm(kappa(pair.v1, pt.value, q));
    if (pair.zleg > 0.0) k2 = std::min(k2, std::norm(kappa(pair.v2, pt.value, q)));
    return k2 / rate;
}

// Central difference at steps d and d/2, extrapolated to fourth order.
cplx richardson(const std::function<cplx(double)>& f, double d) {
    const cplx D1 = (f(d) - f(-d)) / (2.0 * d);
    const cplx D2 = (f(0.5 * d) - f(-0.5 * d)) / d;
    return (4.0 * D2 - D1) / 3.0;
}

}  // namespace

double fermat_two_leg(double h, double z, double x, double V1, double V2) {
    if (!(V1 > 0.0) || !(V2 > 0.0)) throw DomainError("fermat_two_leg needs positive speeds");
    if (!(h > 0.0)) throw DomainError("fermat_two_leg needs h > 0");
    z = std::abs(z);
    const double span = h + z + std::abs(x);
    const double lo = std::min(0.0, x) - span, hi = std::max(0.0, x) + span;
    auto T = [&](double xi) { return std::hypot(xi, h) / V1 + std::hypot(x - xi, z) / V2; };
    return golden_min(T, lo, hi, 1e-10 * span);
}

double fermat_head_wave(double h, double z, double x, double V1, double V2, double Vmax) {
    if (!(V1 > 0.0) || !(V2 > 0.0)) throw DomainError("fermat_head_wave needs positive speeds");
    if (!(h > 0.0)) throw DomainError("fermat_head_wave needs h > 0");
    if (!(Vmax >= std::max(V1, V2))) throw DomainError("fermat_head_wave needs Vmax >= max(V1, V2)");
    z = std::abs(z);
    const double span = h + z + std::abs(x);
    const double lo = std::min(0.0, x) - span, hi = std::max(0.0, x) + span;
    const double tol = 1e-10 * span;
    auto outer = [&](double a) {
        auto inner = [&](double b) { return (b - a) / Vmax + std::hypot(x - b, z) / V2; };
        return std::hypot(a, h) / V1 + golden_min(inner, a, std::max(a, hi), tol);
    };
    return golden_min(outer, lo, hi, tol);
}

OracleReport check_eigen_reconstruction(const Problem& pb) {
    Worst w;
    for (const DerivedLayer* L : {&pb.top, &pb.bottom}) {
        const Mat2 M = L->A.inverse() * L->B;
        const Mat2 D = {L->v_pf * L->v_pf, 0.0, 0.0, L->v_ps * L->v_ps};
        const Mat2 R = L->P * D * L->P_inv;
        auto norm = [](const Mat2& m) { return std::max(std::abs(m.a11) + std::abs(m.a12), std::abs(m.a21) + std::abs(m.a22)); };
        const Mat2 diff = {M.a11 - R.a11, M.a12 - R.a12, M.a21 - R.a21, M.a22 - R.a22};
        const bool top = L == &pb.top;
        w.add(norm(diff) / norm(M), [&] { return top ? std::string("top layer") : std::string("bottom layer"); });
    }
    return w.report("eigen reconstruction", 1e-12);
}

OracleReport check_material_identities(const Problem& pb) {
    Worst w;
    for (const DerivedLayer* L : {&pb.top, &pb.bottom}) {
        const LayerProperties& p = L->props;
        const std::string where = L == &pb.top ? "top layer" : "bottom layer";
        auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); };
        const double rho = (1.0 - p.phi) * p.rho_s + p.phi * p.rho_f;
        const double rho_w = p.a * p.rho_f / p.phi;
        const double beta = 1.0 - p.K_b / p.K_s;
        const double m = 1.0 / ((beta - p.phi) / p.K_s + p.phi / p.K_f);
        const double lambda = p.K_b - 2.0 * p.mu / 3.0;
        const double vs = std::sqrt(p.mu * rho_w / (rho * rho_w - p.rho_f * p.rho_f));
        // A M = B on each eigenpair: the secular equation det(B - V^2 A) = 0.
        auto secular = [&](double v) {
            const double s = v * v;
            const double a11 = L->B.a11 - s * L->A.a11, a12 = L->B.a12 - s * L->A.a12;
            const double a22 = L->B.a22 - s * L->A.a22;
            return std::abs(a11 * a22 - a12 * a12) / (std::abs(L->B.a11 * L->B.a22) + std::abs(L->B.a12 * L->B.a12));
        };
        w.add(rel(rho, L->rho), [&] { return where + ": rho"; });
        w.add(rel(rho_w, L->rho_w), [&] { return where + ": rho_w"; });
        w.add(rel(beta, L->beta), [&] { return where + ": beta"; });
        w.add(rel(m, L->m), [&] { return where + ": m"; });
        w.add(rel(lambda, L->lambda), [&] { return where + ": lambda"; });
        w.add(rel(lambda + 2.0 * p.mu + m * beta * beta, L->alpha), [&] { return where + ": alpha"; });
        w.add(rel(vs, L->v_s), [&] { return where + ": V_S"; });
        w.add(secular(L->v_pf), [&] { return where + ": det(B - V_Pf^2 A)"; });
        w.add(secular(L->v_ps), [&] { return where + ": det(B - V_Ps^2 A)"; });
    }
    return w.report("material identities", 1e-12);
}

OracleReport check_path_residuals(const AuditContext& ctx) {
    const char* name = "path residuals |F| (s)";
    try {
        std::mt19937_64 rng(ctx.seed);
        Worst w;
        for (const auto& s : scattered_sites(ctx.problem, ctx.receivers)) {
            for (const auto& ps : path_samples(s, ctx.samples_per_pair, rng)) {
                const PathPoint pt = ps.branch == Branch::gamma ? gamma_point(s.term.pair, ps.t, ps.q)
                                                                 : v_point(s.term.pair, ps.t, ps.q);
                const double r = std::abs(path_function(s.term.pair, pt.value, ps.q, ps.t));
                w.add(r, [&] {
                    return site_name(s) + (ps.branch == Branch::gamma ? " gamma" : " v") + " t=" + fmt(ps.t) +
                           " q=" + fmt(ps.q);
                });
            }
        }
        return w.report(name, 1e-9);
    } catch (const std::exception& e) {
        return failed(name, 1e-9, e.what());
    }
}

OracleReport check_path_derivatives(const AuditContext& ctx) {
    const char* name = "path derivative vs finite difference (rel)";
    try {
        std::mt19937_64 rng(ctx.seed + 1);
        Worst w;
        for (const auto& s : scattered_sites(ctx.problem, ctx.receivers)) {
            const WavePair& pair = s.term.pair;
            for (const auto& ps : path_samples(s, ctx.samples_per_pair, rng)) {
                const Saddle sad = saddle_at(pair, ps.q);
                cplx fd, an;
                if (ps.branch == Branch::gamma) {
                    const double e = ps.t - sad.t0q;
                    const PathPoint pt = gamma_from_excess(pair, sad, e);
                    const double d = 1e-3 * std::min(e, branch_time_scale(pair, pt, ps.q));
                    an = pt.dvalue_dt;
                    fd = richardson([&](double x) { return gamma_from_excess(pair, sad, e + x).value; }, d);
                } else {
                    const double im2 = 1.0 / (pair.v_max * pair.v_max);
                    const double c1 = std::sqrt(std::max(0.0, 1.0 / (pair.v1 * pair.v1) - im2));
                    const double c2 = std::sqrt(std::max(0.0, 1.0 / (pair.v2 * pair.v2) - im2));
                    const double th1q = pair.h * c1 + pair.zleg * c2 + pair.x * std::sqrt(im2 + ps.q * ps.q);
                    const double def = sad.t0q - ps.t;
                    const PathPoint pt = v_from_deficit(pair, sad, def);
                    const double d = 1e-3 * std::min({def, ps.t - th1q, branch_time_scale(pair, pt, ps.q)});
                    an = pt.dvalue_dt;
                    fd = richardson([&](double x) { return v_from_deficit(pair, sad, def - x).value; }, d);
                }
                w.add(std::abs(fd - an) / std::abs(an), [&] {
                    return site_name(s) + (ps.branch == Branch::gamma ? " gamma" : " v") + " t=" + fmt(ps.t) +
                           " q=" + fmt(ps.q);
                });
            }
        }
        return w.report(name, 1e-6);
    } catch (const std::exception& e) {
        return failed(name, 1e-6, e.what());
    }
}

OracleReport check_inverse_consistency(const AuditContext& ctx) {
    const char* name = "inverse consistency |t~0(q0(t)) - t| (s)";
    try {
        std::mt19937_64 rng(ctx.seed + 2);
        std::uniform_real_distribution<double> U(0.0, 1.0);
        Worst w;
        for (const auto& s : scattered_sites(ctx.problem, ctx.receivers)) {
            for (int i = 0; i < ctx.samples_per_pair; ++i) {
                const double t = s.term.windows.t0 * (1.0 + 2.0 * U(rng));
                const double q = q0_of_t(s.term.pair, t);
                w.add(std::abs(travel_time(s.term.pair, q) - t), [&] { return site_name(s) + " t=" + fmt(t); });
            }
        }
        return w.report(name, 1e-9);
    } catch (const std::exception& e) {
        return failed(name, 1e-9, e.what());
    }
}

OracleReport check_arrival_oracle(const AuditContext& ctx) {
    const char* name = "arrival time t0 vs Fermat two-leg (s)";
    try {
        Worst w;
        for (const auto& s : scattered_sites(ctx.problem, ctx.receivers)) {
            const WavePair& p = s.term.pair;
            const double oracle = fermat_two_leg(p.h, p.zleg, p.x, p.v1, p.v2);
            w.add(std::abs(oracle - s.term.windows.t0), [&] { return site_name(s); });
        }
        return w.report(name, 1e-9);
    } catch (const std::exception& e) {
        return failed(name, 1e-9, e.what());
    }
}

OracleReport check_head_oracle(const AuditContext& ctx) {
    const char* name = "head-wave t_h1 vs Fermat refraction (s)";
    try {
        Worst w;
        int count = 0;
        for (const auto& s : scattered_sites(ctx.problem, ctx.receivers)) {
            if (!s.term.windows.head_exists) continue;
            ++count;
            const WavePair& p = s.term.pair;
            const double oracle = fermat_head_wave(p.h, p.zleg, p.x, p.v1, p.v2, p.v_max);
            w.add(std::abs(oracle - *s.term.windows.t_h1), [&] { return site_name(s); });
        }
        OracleReport r = w.report(name, 1e-6);
        if (count == 0) r.worst = "no head-wave pairs at these receivers";
        else r.worst += " (" + std::to_string(count) + " head-wave pairs)";
        return r;
    } catch (const std::exception& e) {
        return failed(name, 1e-6, e.what());
    }
}

OracleReport check_solve_residuals(const AuditContext& ctx) {
    const char* name = "interface solve backward error";
    try {
        std::mt19937_64 rng(ctx.seed + 3);
        Worst w;
        const Problem& pb = ctx.problem;
        const int n = std::max(1, ctx.samples_per_pair / 10);
        for (const auto& s : scattered_sites(pb, ctx.receivers)) {
            for (const auto& ps : path_samples(s, n, rng)) {
                const PathPoint pt = ps.branch == Branch::gamma ? gamma_point(s.term.pair, ps.t, ps.q)
                                                                 : v_point(s.term.pair, ps.t, ps.q);
                const SlownessPoint q{pt.value, ps.q};
                const Mode inc = s.term.kind.incidence;
                const WaveCoefficients c = solve_coefficients(q, inc, pb.top, pb.bottom, pb.solve);
                const Matrix6c A = assemble_matrix(q, pb.top, pb.bottom);
                const Vector6c b = assemble_rhs(q, inc, pb.top);
                Vector6c x;
                for (int i = 0; i < 6; ++i) x(i) = c.c[i];
                const double res = (A * x - b).lpNorm<Eigen::Infinity>();
                double anorm = 0.0;
                for (int i = 0; i < 6; ++i) anorm = std::max(anorm, A.row(i).lpNorm<1>());
                const double scale = anorm * x.lpNorm<Eigen::Infinity>() + b.lpNorm<Eigen::Infinity>();
                w.add(res / scale, [&] { return site_name(s) + " q_x=" + fmt(pt.value.real()) + (pt.value.imag() < 0 ? "" : "+") + fmt(pt.value.imag()) + "i q_y=" + fmt(ps.q); });
            }
        }
        return w.report(name, 1e-10);
    } catch (const std::exception& e) {
        return failed(name, 1e-10, e.what());
    }
}

OracleReport check_qy_symmetry(const AuditContext& ctx) {
    const char* name = "coefficient symmetry in q_y";
    try {
        std::mt19937_64 rng(ctx.seed + 4);
        Worst w;
        const Problem& pb = ctx.problem;
        const int n = std::max(1, ctx.samples_per_pair / 10);
        for (const auto& s : scattered_sites(pb, ctx.receivers)) {
            for (const auto& ps : path_samples(s, n, rng)) {
                const PathPoint pt = ps.branch == Branch::gamma ? gamma_point(s.term.pair, ps.t, ps.q)
                                                                 : v_point(s.term.pair, ps.t, ps.q);
                const Mode inc = s.term.kind.incidence;
                const auto a = solve_coefficients({pt.value, ps.q}, inc, pb.top, pb.bottom, pb.solve);
                const auto b = solve_coefficients({pt.value, -ps.q}, inc, pb.top, pb.bottom, pb.solve);
                double num = 0.0, den = 0.0;
                for (int i = 0; i < 6; ++i) {
                    num = std::max(num, std::abs(a.c[i] - b.c[i]));
                    den = std::max(den, std::abs(a.c[i]));
                }
                w.add(num / den, [&] { return site_name(s) + " t=" + fmt(ps.t) + " q=" + fmt(ps.q); });
            }
        }
        return w.report(name, 1e-12);
    } catch (const std::exception& e) {
        return failed(name, 1e-12, e.what());
    }
}

OracleReport check_null_interface(const AuditContext& ctx) {
    const char* name = "null interface max |R| (top material on both sides)";
    try {
        Problem twin = ctx.problem;
        twin.bottom = twin.top;
        twin.v_max = max_speed(twin.top, twin.bottom);
        std::vector<Receiver> rcvs;
        for (Receiver r : ctx.receivers) {
            r.z = std::abs(r.z);
            rcvs.push_back(r);
        }
        std::mt19937_64 rng(ctx.seed + 5);
        Worst w;
        const int n = std::max(1, ctx.samples_per_pair / 10);
        for (const auto& s : scattered_sites(twin, rcvs)) {
            for (const auto& ps : path_samples(s, n, rng)) {
                const PathPoint pt = ps.branch == Branch::gamma ? gamma_point(s.term.pair, ps.t, ps.q)
                                                                 : v_point(s.term.pair, ps.t, ps.q);
                const auto c = solve_coefficients({pt.value, ps.q}, s.term.kind.incidence, twin.top, twin.bottom,
                                                  twin.solve);
                double r = 0.0;
                for (Mode m : {Mode::Pf, Mode::Ps, Mode::S}) r = std::max(r, std::abs(c.R(m)));
                w.add(r, [&] { return site_name(s) + " t=" + fmt(ps.t) + " q=" + fmt(ps.q); });
            }
        }
        return w.report(name, 1e-8);
    } catch (const std::exception& e) {
        return failed(name, 1e-8, e.what());
    }
}

namespace {

// Times spread over the interesting part of the record at a receiver.
std::vector<double> probe_times(const Problem& pb, const Receiver& r, int n) {
    double first = 1e300, last = 0.0;
    for (const auto& w : wave_terms(pb, r)) {
        first = std::min(first, w.windows.head_exists ? *w.windows.t_h1 : w.windows.t0);
        last = std::max(last, w.windows.t0);
    }
    std::vector<double> ts;
    for (int i = 0; i < n; ++i) ts.push_back(first + (1.3 * last - first) * (i + 0.5) / n);
    return ts;
}

}  // namespace

OracleReport check_rescaling(const AuditContext& ctx) {
    const char* name = "eigenvector rescaling invariance (rel)";
    try {
        const Problem& base = ctx.problem;
        struct Probe {
            Receiver r;
            double t;
            Displacement2 u;
        };
        std::vector<Probe> probes;
        double peak = 0.0;
        for (const auto& r : ctx.receivers)
            for (double t : probe_times(base, r, 8)) {
                const Displacement2 u = total_green(base, r, t).total;
                probes.push_back({r, t, u});
            }
        Worst w;
        for (int layer = 0; layer < 2; ++layer)
            for (int col = 0; col < 2; ++col)
                for (double c : {-1.0, 0.5, 3.0}) {
                    Problem pb = base;
                    DerivedLayer& L = layer == 0 ? pb.top : pb.bottom;
                    L = with_scaled_modes(L, col == 0 ? c : 1.0, col == 1 ? c : 1.0);
                    pb.modal = project_source(pb.top, ctx.source);
                    for (const auto& p : probes) {
                        peak = 0.0;
                        for (const auto& q : probes)
                            if (q.r.x == p.r.x && q.r.y == p.r.y && q.r.z == p.r.z)
                                peak = std::max({peak, std::abs(q.u.ux), std::abs(q.u.uz)});
                        const Displacement2 u = total_green(pb, p.r, p.t).total;
                        const double err = std::max(std::abs(u.ux - p.u.ux), std::abs(u.uz - p.u.uz)) / peak;
                        w.add(err, [&] {
                            return std::string(layer == 0 ? "top" : "bottom") + " column " + std::to_string(col + 1) +
                                   " x" + fmt(c) + " at z=" + fmt(p.r.z) + " t=" + fmt(p.t);
                        });
                    }
                }
        return w.report(name, 1e-10);
    } catch (const std::exception& e) {
        return failed(name, 1e-10, e.what());
    }
}

OracleReport check_continuity(const AuditContext& ctx) {
    const char* name = "interface continuity at z = +/-0.1 m (fraction of peak)";
    try {
        Worst w;
        std::vector<double> offsets;
        for (const auto& r : ctx.receivers)
            if (std::find(offsets.begin(), offsets.end(), r.offset()) == offsets.end()) offsets.push_back(r.offset());
        for (double x : offsets) {
            const Receiver up{x, 0.0, 0.1}, down{x, 0.0, -0.1};
            double last = 0.0;
            for (const Receiver& r : {up, down})
                for (const auto& t : wave_terms(ctx.problem, r)) last = std::max(last, t.windows.t0);
            std::vector<Displacement2> a, b;
            std::vector<double> ts;
            for (int i = 0; i < 5; ++i) {
                const double t = last * (1.1 + 0.2 * i);
                ts.push_back(t);
                a.push_back(total_green(ctx.problem, up, t).total);
                b.push_back(total_green(ctx.problem, down, t).total);
            }
            double peak = 0.0;
            for (int i = 0; i < 5; ++i) peak = std::max({peak, std::abs(a[i].ux), std::abs(a[i].uz), std::abs(b[i].ux), std::abs(b[i].uz)});
            for (int i = 0; i < 5; ++i) {
                const double e = std::max(std::abs(a[i].ux - b[i].ux), std::abs(a[i].uz - b[i].uz)) / peak;
                w.add(e, [&] { return "x=" + fmt(x) + " t=" + fmt(ts[i]); });
            }
        }
        return w.report(name, 0.02);
    } catch (const std::exception& e) {
        return failed(name, 0.02, e.what());
    }
}

std::vector<OracleReport> audit(const AuditContext& ctx) {
    std::vector<OracleReport> out;
    out.push_back(check_eigen_reconstruction(ctx.problem));
    out.push_back(check_material_identities(ctx.problem));
    out.push_back(check_path_residuals(ctx));
    out.push_back(check_path_derivatives(ctx));
    out.push_back(check_inverse_consistency(ctx));
    out.push_back(check_arrival_oracle(ctx));
    out.push_back(check_head_oracle(ctx));
    out.push_back(check_solve_residuals(ctx));
    out.push_back(check_qy_symmetry(ctx));
    out.push_back(check_null_interface(ctx));
    if (ctx.field_checks) {
        out.push_back(check_rescaling(ctx));
        out.push_back(check_continuity(ctx));
    }
    return out;
}

void write_text(std::ostream& os, const std::vector<OracleReport>& reports) {
    std::size_t width = 5;
    for (const auto& r : reports) width = std::max(width, r.name.size());
    os << std::left << std::setw(static_cast<int>(width)) << "check" << "  " << std::setw(12) << "max error"
       << "  " << std::setw(10) << "tolerance" << "  result  worst case\n";
    for (const auto& r : reports) {
        std::ostringstream e, t;
        e << std::setprecision(3) << std::scientific << r.max_error;
        t << std::setprecision(1) << std::scientific << r.tolerance;
        os << std::left << std::setw(static_cast<int>(width)) << r.name << "  " << std::setw(12) << e.str() << "  "
           << std::setw(10) << t.str() << "  " << (r.pass ? "PASS  " : "FAIL  ") << "  " << r.worst << "\n";
    }
}

void write_csv(std::ostream& os, const std::vector<OracleReport>& reports) {
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    };
    os << "check,max_error,tolerance,pass,worst\n";
    for (const auto& r : reports)
        os << quote(r.name) << ',' << std::setprecision(17) << r.max_error << ',' << r.tolerance << ','
           << (r.pass ? "true" : "false") << ',' << quote(r.worst) << '\n';
}

}  // namespace porowave
