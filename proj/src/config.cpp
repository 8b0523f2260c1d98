#include "porowave/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "porowave/error.hpp"

namespace porowave {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

bool parse_double(const std::string& tok, double& v) {
    const char* b = tok.data();
    const char* e = b + tok.size();
    if (b != e && *b == '+') ++b;
    const auto r = std::from_chars(b, e, v);
    return r.ec == std::errc() && r.ptr == e && std::isfinite(v);
}

// Unit name -> factor to SI.
const std::map<std::string, double>& unit_table() {
    static const std::map<std::string, double> t = {
        {"GPa", 1e9}, {"kg/m3", 1.0}, {"m", 1.0}, {"s", 1.0}, {"Hz", 1.0}};
    return t;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Prints v / scale so that parsing it back and multiplying by scale returns v.
// %.17g round-trips exactly, so only the division needs a nearby candidate.
std::string exact_scaled(double v, double scale) {
    const double g = v / scale;
    double up = g, down = g;
    for (int k = 0; k < 8; ++k) {
        if (up * scale == v) return num(up);
        if (down * scale == v) return num(down);
        up = std::nextafter(up, INFINITY);
        down = std::nextafter(down, -INFINITY);
    }
    return num(g);
}

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

class Document {
public:
    Document(std::istream& in, std::string origin) : origin_(std::move(origin)) {
        std::string raw, section;
        int line = 0;
        while (std::getline(in, raw)) {
            ++line;
            std::string s = trim(raw);
            if (s.rfind("#@", 0) == 0)
                s = trim(s.substr(2));
            else if (!s.empty() && s[0] == '#')
                continue;
            const auto hash = s.find('#');
            if (hash != std::string::npos) s = trim(s.substr(0, hash));
            if (s.empty()) continue;
            if (s.front() == '[') {
                if (s.back() != ']') fail(line, "unterminated section header");
                section = trim(s.substr(1, s.size() - 2));
                if (section.empty()) fail(line, "empty section name");
                if (!sections_.insert(section).second) fail(line, "duplicate section [" + section + "]");
                order_[section];
                continue;
            }
            const auto eq = s.find('=');
            if (eq == std::string::npos) fail(line, "expected 'key = value'");
            if (section.empty()) fail(line, "key outside of any [section]");
            const std::string key = trim(s.substr(0, eq));
            const std::string val = trim(s.substr(eq + 1));
            if (key.empty()) fail(line, "missing key");
            if (val.empty()) fail(line, "missing value for '" + key + "'");
            auto& sec = entries_[section];
            if (sec.count(key)) fail(line, "duplicate key '" + key + "' in [" + section + "]");
            sec[key] = {val, line, false};
            order_[section].push_back(key);
        }
    }

    [[noreturn]] void fail(int line, const std::string& msg) const {
        throw ConfigError(origin_ + ":" + std::to_string(line) + ": " + msg);
    }
    [[noreturn]] void fail_missing(const std::string& sec, const std::string& key) const {
        throw ConfigError(origin_ + ": missing required key '" + key + "' in [" + sec + "]");
    }

    bool has_section(const std::string& s) const { return sections_.count(s) > 0; }

    Entry* find(const std::string& sec, const std::string& key) {
        auto it = entries_.find(sec);
        if (it == entries_.end()) return nullptr;
        auto jt = it->second.find(key);
        if (jt == it->second.end()) return nullptr;
        jt->second.used = true;
        return &jt->second;
    }

    // Number with a mandatory unit (or none when unit is empty).
    std::optional<double> quantity(const std::string& sec, const std::string& key, const std::string& unit) {
        Entry* e = find(sec, key);
        if (!e) return std::nullopt;
        const auto toks = split_ws(e->value);
        const std::string where = "[" + sec + "] " + key;
        if (unit.empty()) {
            if (toks.size() != 1) fail(e->line, where + ": expected a dimensionless number");
        } else {
            if (toks.size() == 1) fail(e->line, where + ": missing unit, expected '" + unit + "'");
            if (toks.size() != 2) fail(e->line, where + ": expected '<number> " + unit + "'");
            if (toks[1] != unit) fail(e->line, where + ": unit '" + toks[1] + "' not accepted, expected '" + unit + "'");
        }
        double v = 0;
        if (!parse_double(toks[0], v)) fail(e->line, where + ": '" + toks[0] + "' is not a finite number");
        return unit.empty() ? v : v * unit_table().at(unit);
    }

    double required(const std::string& sec, const std::string& key, const std::string& unit) {
        if (auto v = quantity(sec, key, unit)) return *v;
        fail_missing(sec, key);
    }

    std::vector<std::pair<std::string, Entry*>> all(const std::string& sec) {
        std::vector<std::pair<std::string, Entry*>> out;
        for (const auto& k : order_[sec]) out.emplace_back(k, find(sec, k));
        return out;
    }

    void reject_unused() const {
        for (const auto& [sec, keys] : entries_)
            for (const auto& [k, e] : keys)
                if (!e.used) fail(e.line, "unknown key '" + k + "' in [" + sec + "]");
    }

    void reject_unknown_sections(const std::set<std::string>& known) const {
        for (const auto& s : sections_)
            if (!known.count(s)) throw ConfigError(origin_ + ": unknown section [" + s + "]");
    }

    const std::string& origin() const { return origin_; }

private:
    std::string origin_;
    std::set<std::string> sections_;
    std::map<std::string, std::map<std::string, Entry>> entries_;
    std::map<std::string, std::vector<std::string>> order_;
};

LayerProperties read_layer(Document& d, const std::string& sec) {
    if (!d.has_section(sec)) throw ConfigError(d.origin() + ": missing section [" + sec + "]");
    LayerProperties p;
    p.rho_s = d.required(sec, "rho_s", "kg/m3");
    p.rho_f = d.required(sec, "rho_f", "kg/m3");
    p.phi = d.required(sec, "porosity", "");
    p.a = d.required(sec, "tortuosity", "");
    p.K_s = d.required(sec, "K_s", "GPa");
    p.K_f = d.required(sec, "K_f", "GPa");
    p.K_b = d.required(sec, "K_b", "GPa");
    p.mu = d.required(sec, "mu", "GPa");
    return p;
}

void write_layer(std::ostream& os, const std::string& sec, const LayerProperties& p) {
    os << "[" << sec << "]\n"
       << "rho_s = " << num(p.rho_s) << " kg/m3\n"
       << "rho_f = " << num(p.rho_f) << " kg/m3\n"
       << "porosity = " << num(p.phi) << "\n"
       << "tortuosity = " << num(p.a) << "\n"
       << "K_s = " << exact_scaled(p.K_s, 1e9) << " GPa\n"
       << "K_f = " << exact_scaled(p.K_f, 1e9) << " GPa\n"
       << "K_b = " << exact_scaled(p.K_b, 1e9) << " GPa\n"
       << "mu = " << exact_scaled(p.mu, 1e9) << " GPa\n";
}

bool same_layer(const LayerProperties& a, const LayerProperties& b) {
    return a.rho_s == b.rho_s && a.rho_f == b.rho_f && a.phi == b.phi && a.a == b.a && a.K_s == b.K_s &&
           a.K_f == b.K_f && a.K_b == b.K_b && a.mu == b.mu;
}

}  // namespace

ProblemConfig parse_config(std::istream& in, const std::string& origin) {
    Document d(in, origin);
    d.reject_unknown_sections({"top", "bottom", "source", "wavelet", "receivers", "time", "output", "numerics"});
    ProblemConfig c;
    c.top = read_layer(d, "top");
    c.bottom = read_layer(d, "bottom");

    if (!d.has_section("source")) throw ConfigError(origin + ": missing section [source]");
    c.h = d.required("source", "height", "m");
    c.source.f_u = d.quantity("source", "f_u", "").value_or(0.0);
    c.source.f_w = d.quantity("source", "f_w", "").value_or(0.0);
    c.source.f_p = d.quantity("source", "f_p", "").value_or(0.0);

    if (!d.has_section("wavelet")) throw ConfigError(origin + ": missing section [wavelet]");
    c.wavelet.f0 = d.required("wavelet", "f0", "Hz");
    if (Entry* e = d.find("wavelet", "kind"))
        if (e->value != "gaussian_d4") d.fail(e->line, "[wavelet] kind: only 'gaussian_d4' is available");

    for (auto& [name, e] : d.all("receivers")) {
        const auto toks = split_ws(e->value);
        if (toks.size() != 4 || toks[3] != "m")
            d.fail(e->line, "[receivers] " + name + ": expected '<x> <y> <z> m'");
        double v[3];
        for (int i = 0; i < 3; ++i)
            if (!parse_double(toks[i], v[i]))
                d.fail(e->line, "[receivers] " + name + ": '" + toks[i] + "' is not a finite number");
        if (v[2] == 0.0) d.fail(e->line, "[receivers] " + name + ": receiver lies on the interface (z = 0)");
        c.receivers.push_back({name, {v[0], v[1], v[2]}});
    }

    if (!d.has_section("time")) throw ConfigError(origin + ": missing section [time]");
    c.t_start = d.quantity("time", "t_start", "s").value_or(0.0);
    c.t_end = d.required("time", "t_end", "s");
    c.dt = d.quantity("time", "dt", "s");
    if (auto spp = d.quantity("time", "samples_per_period", "")) {
        if (c.dt) d.fail(d.find("time", "samples_per_period")->line, "[time]: give dt or samples_per_period, not both");
        c.samples_per_period = *spp;
    }

    if (Entry* e = d.find("output", "quantity")) {
        if (e->value == "displacement")
            c.quantity = Quantity::displacement;
        else if (e->value == "velocity")
            c.quantity = Quantity::velocity;
        else
            d.fail(e->line, "[output] quantity: expected 'displacement' or 'velocity'");
    }

    c.quad.rel_tol = d.quantity("numerics", "rel_tol", "").value_or(c.quad.rel_tol);
    c.quad.abs_tol = d.quantity("numerics", "abs_tol", "m").value_or(c.quad.abs_tol);
    c.quad.ref_tol = d.quantity("numerics", "ref_tol", "").value_or(c.quad.ref_tol);
    if (auto mi = d.quantity("numerics", "max_intervals", "")) {
        if (!(*mi >= 1.0) || *mi != std::floor(*mi) || *mi > 1e7)
            d.fail(d.find("numerics", "max_intervals")->line, "[numerics] max_intervals: expected a positive integer");
        c.quad.max_intervals = static_cast<int>(*mi);
    }
    c.max_condition = d.quantity("numerics", "max_condition", "").value_or(c.max_condition);

    d.reject_unused();
    validate_config(c);
    return c;
}

ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

void validate_config(const ProblemConfig& c) {
    if (!(c.h > 0.0)) throw ConfigError("[source] height must be positive");
    validate_wavelet(c.wavelet);
    if (c.receivers.empty()) throw ConfigError("[receivers] needs at least one receiver");
    std::set<std::string> names;
    for (const auto& r : c.receivers) {
        if (r.at.z == 0.0) throw ConfigError("receiver '" + r.name + "' lies on the interface (z = 0)");
        if (r.at.x == 0.0 && r.at.y == 0.0 && r.at.z == c.h)
            throw ConfigError("receiver '" + r.name + "' coincides with the source");
        if (!names.insert(r.name).second) throw ConfigError("duplicate receiver name '" + r.name + "'");
    }
    if (!(c.t_end > c.t_start)) throw ConfigError("[time] t_end must exceed t_start");
    if (c.dt && !(*c.dt > 0.0)) throw ConfigError("[time] dt must be positive");
    if (!c.dt && !(c.samples_per_period > 0.0)) throw ConfigError("[time] samples_per_period must be positive");
    if (!(c.quad.rel_tol > 0.0) && !(c.quad.abs_tol > 0.0))
        throw ConfigError("[numerics] need a positive rel_tol or abs_tol");
    if (c.quad.rel_tol < 0.0 || c.quad.abs_tol < 0.0 || c.quad.ref_tol < 0.0)
        throw ConfigError("[numerics] tolerances must be >= 0");
    if (!(c.max_condition > 1.0)) throw ConfigError("[numerics] max_condition must exceed 1");
}

std::string canonical_config(const ProblemConfig& c) {
    std::ostringstream os;
    write_layer(os, "top", c.top);
    write_layer(os, "bottom", c.bottom);
    os << "[source]\n"
       << "height = " << num(c.h) << " m\n"
       << "f_u = " << num(c.source.f_u) << "\n"
       << "f_w = " << num(c.source.f_w) << "\n"
       << "f_p = " << num(c.source.f_p) << "\n"
       << "[wavelet]\n"
       << "kind = gaussian_d4\n"
       << "f0 = " << num(c.wavelet.f0) << " Hz\n"
       << "[receivers]\n";
    for (const auto& r : c.receivers)
        os << r.name << " = " << num(r.at.x) << " " << num(r.at.y) << " " << num(r.at.z) << " m\n";
    os << "[time]\n"
       << "t_start = " << num(c.t_start) << " s\n"
       << "t_end = " << num(c.t_end) << " s\n";
    if (c.dt)
        os << "dt = " << num(*c.dt) << " s\n";
    else
        os << "samples_per_period = " << num(c.samples_per_period) << "\n";
    os << "[output]\n"
       << "quantity = " << (c.quantity == Quantity::velocity ? "velocity" : "displacement") << "\n"
       << "[numerics]\n"
       << "rel_tol = " << num(c.quad.rel_tol) << "\n"
       << "abs_tol = " << num(c.quad.abs_tol) << " m\n"
       << "ref_tol = " << num(c.quad.ref_tol) << "\n"
       << "max_intervals = " << c.quad.max_intervals << "\n"
       << "max_condition = " << num(c.max_condition) << "\n";
    return os.str();
}

std::uint64_t config_hash(const ProblemConfig& cfg) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : canonical_config(cfg)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Problem build_problem(const ProblemConfig& cfg) {
    Problem pb = make_problem(derive_layer(cfg.top), derive_layer(cfg.bottom), cfg.h, cfg.source);
    pb.quad = cfg.quad;
    pb.solve.max_condition = cfg.max_condition;
    return pb;
}

bool operator==(const ProblemConfig& a, const ProblemConfig& b) {
    if (!same_layer(a.top, b.top) || !same_layer(a.bottom, b.bottom)) return false;
    if (a.h != b.h || a.source.f_u != b.source.f_u || a.source.f_w != b.source.f_w || a.source.f_p != b.source.f_p)
        return false;
    if (a.wavelet.f0 != b.wavelet.f0 || a.wavelet.kind != b.wavelet.kind) return false;
    if (a.receivers.size() != b.receivers.size()) return false;
    for (std::size_t i = 0; i < a.receivers.size(); ++i) {
        const auto &p = a.receivers[i], &q = b.receivers[i];
        if (p.name != q.name || p.at.x != q.at.x || p.at.y != q.at.y || p.at.z != q.at.z) return false;
    }
    if (a.t_start != b.t_start || a.t_end != b.t_end || a.dt != b.dt) return false;
    if (!a.dt && a.samples_per_period != b.samples_per_period) return false;
    return a.quantity == b.quantity && a.quad.rel_tol == b.quad.rel_tol && a.quad.abs_tol == b.quad.abs_tol &&
           a.quad.ref_tol == b.quad.ref_tol &&
           a.quad.max_intervals == b.quad.max_intervals && a.max_condition == b.max_condition;
}

}  // namespace porowave
