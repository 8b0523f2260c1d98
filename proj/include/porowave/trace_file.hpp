#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "porowave/config.hpp"
#include "porowave/greens.hpp"

namespace porowave {

struct TraceColumns {
    std::vector<std::string> names;      // "t", then <wave>_ux, <wave>_uy, <wave>_uz ..., total_*
    std::vector<std::vector<double>> rows;
};

struct TraceHeader {
    std::string kind;  // "green" or "seismogram"
    const ProblemConfig* config = nullptr;
    const NamedReceiver* receiver = nullptr;
    std::vector<std::string> waves;
    std::vector<TimeWindows> windows;
    std::vector<std::string> notes;  // extra "# key value" lines
};

// Header: '#' lines with provenance, then the canonical config as "#@" lines.
// Body: whitespace-separated columns, 17 significant digits.
void write_trace(std::ostream& os, const TraceHeader& head, const TraceColumns& cols);

// Reads the numeric body and the column names.
TraceColumns read_trace(std::istream& is);

// Re-parses the config block embedded in a trace header.
ProblemConfig config_from_trace(std::istream& is, const std::string& origin = "<trace>");

}  // namespace porowave
