#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "porowave/greens.hpp"
#include "porowave/material.hpp"
#include "porowave/timeseries.hpp"

namespace porowave {

struct NamedReceiver {
    std::string name;
    Receiver at;
};

enum class Quantity { displacement, velocity };

struct ProblemConfig {
    LayerProperties top;
    LayerProperties bottom;
    double h = 0;
    SourceAmplitudes source;
    Wavelet wavelet;
    std::vector<NamedReceiver> receivers;
    double t_start = 0;
    double t_end = 0;
    std::optional<double> dt;            // explicit step, else
    double samples_per_period = 200.0;   // dt = 1 / (samples_per_period f0)
    Quantity quantity = Quantity::displacement;
    QuadratureOptions quad;
    double max_condition = 1e13;

    double step() const { return dt ? *dt : 1.0 / (samples_per_period * wavelet.f0); }
};

// Parses the key/value format. Errors are ConfigError with the line number.
// Lines starting with "#@ " are read as config lines (so trace headers
// re-parse); other '#' lines are comments.
ProblemConfig parse_config(std::istream& in, const std::string& origin = "<config>");
ProblemConfig load_config(const std::string& path);

// Canonical text: every field, fixed order, 17 significant digits.
std::string canonical_config(const ProblemConfig& cfg);

// FNV-1a of the canonical text.
std::uint64_t config_hash(const ProblemConfig& cfg);
std::string hash_hex(std::uint64_t h);

void validate_config(const ProblemConfig& cfg);

Problem build_problem(const ProblemConfig& cfg);

bool operator==(const ProblemConfig& a, const ProblemConfig& b);

}  // namespace porowave
