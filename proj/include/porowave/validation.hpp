#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "porowave/greens.hpp"

namespace porowave {

struct OracleReport {
    std::string name;
    double max_error = 0;
    double tolerance = 0;
    bool pass = false;
    std::string worst;  // parameters where max_error was reached
};

// Golden-section minimum over the interface crossing of
// sqrt(xi^2 + h^2)/V1 + sqrt((x - xi)^2 + z^2)/V2.
double fermat_two_leg(double h, double z, double x, double V1, double V2);

// Minimum over interface points A <= B of |SA|/V1 + |AB|/Vmax + |BR|/V2.
// Requires Vmax >= max(V1, V2).
double fermat_head_wave(double h, double z, double x, double V1, double V2, double Vmax);

struct AuditContext {
    Problem problem;
    SourceAmplitudes source;  // needed to re-project after rescaling the modes
    std::vector<Receiver> receivers;
    int samples_per_pair = 1000;
    std::uint64_t seed = 20240601;
    bool field_checks = true;  // rescaling, continuity: these evaluate Green functions
};

// Every invariant check, one report each. Failures are reported, not thrown.
std::vector<OracleReport> audit(const AuditContext& ctx);

// Individual suites, reused by the tests.
OracleReport check_eigen_reconstruction(const Problem& pb);
OracleReport check_material_identities(const Problem& pb);
OracleReport check_path_residuals(const AuditContext& ctx);
OracleReport check_path_derivatives(const AuditContext& ctx);
OracleReport check_inverse_consistency(const AuditContext& ctx);
OracleReport check_arrival_oracle(const AuditContext& ctx);
OracleReport check_head_oracle(const AuditContext& ctx);
OracleReport check_solve_residuals(const AuditContext& ctx);
OracleReport check_qy_symmetry(const AuditContext& ctx);
OracleReport check_null_interface(const AuditContext& ctx);
OracleReport check_rescaling(const AuditContext& ctx);
OracleReport check_continuity(const AuditContext& ctx);

void write_text(std::ostream& os, const std::vector<OracleReport>& reports);
void write_csv(std::ostream& os, const std::vector<OracleReport>& reports);

}  // namespace porowave
