#include "porowave/trace_file.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "porowave/error.hpp"

namespace porowave {

namespace {

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string opt(const std::optional<double>& v) { return v ? sci(*v) : std::string("-"); }

}  // namespace

void write_trace(std::ostream& os, const TraceHeader& head, const TraceColumns& cols) {
    const ProblemConfig& cfg = *head.config;
    os << "# porowave " << head.kind << " trace\n";
    os << "# config_hash " << hash_hex(config_hash(cfg)) << "\n";
    os << "# receiver " << head.receiver->name << " " << sci(head.receiver->at.x) << " "
       << sci(head.receiver->at.y) << " " << sci(head.receiver->at.z) << " m\n";
    for (const auto& n : head.notes) os << "# " << n << "\n";
    os << "# waves";
    for (const auto& w : head.waves) os << " " << w;
    os << "\n# arrivals: wave t0 t_h1 t_h2 head_exists (s)\n";
    for (std::size_t i = 0; i < head.waves.size(); ++i) {
        const TimeWindows& tw = head.windows[i];
        os << "#   " << head.waves[i] << " " << sci(tw.t0) << " " << (tw.head_exists ? opt(tw.t_h1) : "-") << " "
           << (tw.head_exists ? opt(tw.t_h2) : "-") << " " << (tw.head_exists ? "yes" : "no") << "\n";
    }
    std::istringstream canon(canonical_config(cfg));
    for (std::string line; std::getline(canon, line);) os << "#@ " << line << "\n";
    os << "# columns";
    for (const auto& n : cols.names) os << " " << n;
    os << "\n";
    std::string line;
    for (const auto& row : cols.rows) {
        line.clear();
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) line += ' ';
            line += sci(row[j]);
        }
        line += '\n';
        os << line;
    }
}

TraceColumns read_trace(std::istream& is) {
    TraceColumns out;
    int lineno = 0;
    for (std::string line; std::getline(is, line);) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line.rfind("# columns", 0) == 0) {
                std::istringstream ss(line.substr(9));
                for (std::string n; ss >> n;) out.names.push_back(n);
            }
            continue;
        }
        std::istringstream ss(line);
        std::vector<double> row;
        for (double v; ss >> v;) row.push_back(v);
        if (!ss.eof() || (!out.names.empty() && row.size() != out.names.size()))
            throw ConfigError("trace line " + std::to_string(lineno) + ": malformed row");
        out.rows.push_back(std::move(row));
    }
    return out;
}

ProblemConfig config_from_trace(std::istream& is, const std::string& origin) {
    std::ostringstream block;
    for (std::string line; std::getline(is, line);) {
        if (line.empty() || line[0] != '#') break;
        if (line.rfind("#@", 0) == 0) block << line << "\n";
    }
    std::istringstream in(block.str());
    return parse_config(in, origin);
}

}  // namespace porowave
