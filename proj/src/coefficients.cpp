#include "porowave/coefficients.hpp"

#include <Eigen/LU>
#include <cmath>
#include <sstream>

#include "porowave/error.hpp"

namespace porowave {

namespace {

const cplx I(0.0, 1.0);

// Vertical slownesses of one layer at q.
struct LayerKappas {
    cplx pf, ps, s;

    LayerKappas(const SlownessPoint& q, const DerivedLayer& L)
        : pf(kappa(L.v_pf, q.qx, q.qy)), ps(kappa(L.v_ps, q.qx, q.qy)), s(kappa(L.v_s, q.qx, q.qy)) {}
};

// Normal-stress factor ((lambda + m beta^2) P_1j + m beta P_2j) / V^2.
double stress_factor(const DerivedLayer& L, int j) {
    const double p1 = j == 0 ? L.P.a11 : L.P.a12;
    const double p2 = j == 0 ? L.P.a21 : L.P.a22;
    const double v = j == 0 ? L.v_pf : L.v_ps;
    return ((L.lambda + L.m * L.beta * L.beta) * p1 + L.m * L.beta * p2) / (v * v);
}

// Rows 2, 3, 4, 6, shared by the printed and reduced forms.
void fill_common_rows(Matrix6c& A, const cplx& q2, const DerivedLayer& T, const DerivedLayer& B,
                      const LayerKappas& kt, const LayerKappas& kb) {
    A(1, 0) = -kt.pf * T.P.a11;
    A(1, 1) = -kt.ps * T.P.a12;
    A(1, 2) = q2;
    A(1, 3) = -kb.pf * B.P.a11;
    A(1, 4) = -kb.ps * B.P.a12;
    A(1, 5) = -q2;

    A(2, 0) = -kt.pf * T.P.a21;
    A(2, 1) = -kt.ps * T.P.a22;
    A(2, 2) = -q2 * (T.rho_f() / T.rho_w);
    A(2, 3) = -kb.pf * B.P.a21;
    A(2, 4) = -kb.ps * B.P.a22;
    A(2, 5) = q2 * (B.rho_f() / B.rho_w);

    A(3, 0) = T.m / (T.v_pf * T.v_pf) * (T.beta * T.P.a11 + T.P.a21);
    A(3, 1) = T.m / (T.v_ps * T.v_ps) * (T.beta * T.P.a12 + T.P.a22);
    A(3, 2) = 0.0;
    A(3, 3) = -B.m / (B.v_pf * B.v_pf) * (B.beta * B.P.a11 + B.P.a21);
    A(3, 4) = -B.m / (B.v_ps * B.v_ps) * (B.beta * B.P.a12 + B.P.a22);
    A(3, 5) = 0.0;

    A(5, 0) = stress_factor(T, 0) + 2.0 * T.mu() * kt.pf * kt.pf * T.P.a11;
    A(5, 1) = stress_factor(T, 1) + 2.0 * T.mu() * kt.ps * kt.ps * T.P.a12;
    A(5, 2) = -2.0 * q2 * T.mu() * kt.s;
    A(5, 3) = -stress_factor(B, 0) - 2.0 * B.mu() * kb.pf * kb.pf * B.P.a11;
    A(5, 4) = -stress_factor(B, 1) - 2.0 * B.mu() * kb.ps * kb.ps * B.P.a12;
    A(5, 5) = -2.0 * q2 * B.mu() * kb.s;
}

struct IncidentColumn {
    cplx k;       // kappa of the incident mode
    double p1;    // P_1j
    double p2;    // P_2j
    double v;     // speed
    int j;
};

IncidentColumn incident_column(const SlownessPoint& q, Mode incidence, const DerivedLayer& T) {
    if (incidence == Mode::S) throw ConfigError("incidence must be Pf or Ps");
    const int j = incidence == Mode::Pf ? 0 : 1;
    IncidentColumn c;
    c.j = j;
    c.v = j == 0 ? T.v_pf : T.v_ps;
    c.p1 = j == 0 ? T.P.a11 : T.P.a12;
    c.p2 = j == 0 ? T.P.a21 : T.P.a22;
    c.k = kappa(c.v, q.qx, q.qy);
    if (c.k == cplx(0.0, 0.0)) throw NumericalError("grazing incidence singularity: kappa of incident mode vanishes");
    return c;
}

// Rows 2, 3, 4, 6 of the right-hand side, without the global prefactor.
void fill_common_rhs(Vector6c& b, const IncidentColumn& c, const DerivedLayer& T) {
    b(1) = -c.k * c.p1;
    b(2) = -c.k * c.p2;
    b(3) = -T.m / (c.v * c.v) * (T.beta * c.p1 + c.p2);
    b(5) = -stress_factor(T, c.j) - 2.0 * T.mu() * c.p1 * c.k * c.k;
}

double max_abs_row(const Matrix6c& A, int i) {
    double m = 0.0;
    for (int j = 0; j < 6; ++j) m = std::max(m, std::abs(A(i, j)));
    return m;
}

std::string describe(const SlownessPoint& q) {
    std::ostringstream os;
    os.precision(10);
    os << "q = (" << q.qx.real() << (q.qx.imag() < 0 ? " - " : " + ") << std::abs(q.qx.imag()) << "i, " << q.qy
       << ")";
    return os.str();
}

}  // namespace

Matrix6c assemble_matrix(const SlownessPoint& q, const DerivedLayer& T, const DerivedLayer& B) {
    const LayerKappas kt(q, T), kb(q, B);
    const cplx qx = q.qx;
    const cplx q2 = qx * qx + q.qy * q.qy;
    Matrix6c A;

    A(0, 0) = -I * qx * T.P.a11;
    A(0, 1) = -I * qx * T.P.a12;
    A(0, 2) = I * qx * kt.s;
    A(0, 3) = I * qx * B.P.a11;
    A(0, 4) = I * qx * B.P.a12;
    A(0, 5) = I * qx * kb.s;

    A(4, 0) = 2.0 * I * qx * T.mu() * kt.pf * T.P.a11;
    A(4, 1) = 2.0 * I * qx * T.mu() * kt.ps * T.P.a12;
    A(4, 2) = -I * T.mu() * qx * (kt.s * kt.s + q2);
    A(4, 3) = 2.0 * I * qx * B.mu() * kb.pf * B.P.a11;
    A(4, 4) = 2.0 * I * qx * B.mu() * kb.ps * B.P.a12;
    A(4, 5) = I * B.mu() * qx * (kb.s * kb.s + q2);

    fill_common_rows(A, q2, T, B, kt, kb);
    return A;
}

Vector6c assemble_rhs(const SlownessPoint& q, Mode incidence, const DerivedLayer& T) {
    const IncidentColumn c = incident_column(q, incidence, T);
    Vector6c b;
    b(0) = I * q.qx * c.p1;
    b(4) = 2.0 * I * q.qx * T.mu() * c.k * c.p1;
    fill_common_rhs(b, c, T);
    return b / (2.0 * c.k * c.v * c.v);
}

void assemble_reduced(const SlownessPoint& q, Mode incidence, const DerivedLayer& T, const DerivedLayer& B,
                      Matrix6c& A, Vector6c& b) {
    const LayerKappas kt(q, T), kb(q, B);
    const cplx q2 = q.qx * q.qx + q.qy * q.qy;

    A(0, 0) = -T.P.a11;
    A(0, 1) = -T.P.a12;
    A(0, 2) = kt.s;
    A(0, 3) = B.P.a11;
    A(0, 4) = B.P.a12;
    A(0, 5) = kb.s;

    A(4, 0) = 2.0 * T.mu() * kt.pf * T.P.a11;
    A(4, 1) = 2.0 * T.mu() * kt.ps * T.P.a12;
    A(4, 2) = -T.mu() * (kt.s * kt.s + q2);
    A(4, 3) = 2.0 * B.mu() * kb.pf * B.P.a11;
    A(4, 4) = 2.0 * B.mu() * kb.ps * B.P.a12;
    A(4, 5) = B.mu() * (kb.s * kb.s + q2);

    fill_common_rows(A, q2, T, B, kt, kb);

    const IncidentColumn c = incident_column(q, incidence, T);
    b(0) = c.p1;
    b(4) = 2.0 * T.mu() * c.k * c.p1;
    fill_common_rhs(b, c, T);
    b /= 2.0 * c.k * c.v * c.v;
}

WaveCoefficients solve_coefficients(const SlownessPoint& q, Mode incidence, const DerivedLayer& T,
                                    const DerivedLayer& B, const SolveOptions& opt) {
    Matrix6c A;
    Vector6c b;
    assemble_reduced(q, incidence, T, B, A, b);

    // Rows differ by many orders of magnitude (kinematic vs stress rows), and so
    // do the S and P unknowns. Equilibrate both before pivoting.
    Eigen::Matrix<double, 6, 1> rs, cs;
    Matrix6c S = A;
    for (int i = 0; i < 6; ++i) {
        const double m = max_abs_row(S, i);
        if (m == 0.0) throw NumericalError("near-singular interface system: zero row at " + describe(q));
        rs(i) = 1.0 / m;
        S.row(i) *= rs(i);
    }
    for (int j = 0; j < 6; ++j) {
        double m = 0.0;
        for (int i = 0; i < 6; ++i) m = std::max(m, std::abs(S(i, j)));
        if (m == 0.0) throw NumericalError("near-singular interface system: zero column at " + describe(q));
        cs(j) = 1.0 / m;
        S.col(j) *= cs(j);
    }

    Eigen::PartialPivLU<Matrix6c> lu(S);
    WaveCoefficients out;
    out.incidence = incidence;
    if (opt.check_condition) {
        const double rc = lu.rcond();
        out.condition = rc > 0.0 ? 1.0 / rc : INFINITY;
        if (!(out.condition <= opt.max_condition)) {
            std::ostringstream os;
            os << "near-singular interface system (condition estimate " << out.condition << ") at " << describe(q);
            throw NumericalError(os.str());
        }
    }
    const Vector6c y = lu.solve(rs.cast<cplx>().asDiagonal() * b);
    const Vector6c x = cs.cast<cplx>().asDiagonal() * y;
    for (int i = 0; i < 6; ++i) {
        if (!std::isfinite(x(i).real()) || !std::isfinite(x(i).imag()))
            throw NumericalError("non-finite interface coefficient at " + describe(q));
        out.c[i] = x(i);
    }
    return out;
}

}  // namespace porowave
