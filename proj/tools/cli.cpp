#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "porowave/config.hpp"
#include "porowave/error.hpp"
#include "porowave/records.hpp"
#include "porowave/trace_file.hpp"
#include "porowave/validation.hpp"

namespace porowave::cli {

namespace {

std::string g10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string e10(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10e", v);
    return buf;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

void apply_thread_env() {
    const char* env = std::getenv("PORO_THREADS");
    if (!env || !*env) return;
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096)
        throw ConfigError(std::string("PORO_THREADS must be a positive integer, got '") + env + "'");
    omp_set_num_threads(static_cast<int>(n));
}

void cmd_material(const ProblemConfig& cfg, std::ostream& out) {
    const DerivedLayer top = derive_layer(cfg.top), bot = derive_layer(cfg.bottom);
    const ModalAmplitudes F = project_source(top, cfg.source);
    struct Row {
        const char* name;
        double a, b;
    };
    const Row rows[] = {
        {"rho (kg/m3)", top.rho, bot.rho},
        {"rho_w (kg/m3)", top.rho_w, bot.rho_w},
        {"beta", top.beta, bot.beta},
        {"m (GPa)", top.m / 1e9, bot.m / 1e9},
        {"lambda (GPa)", top.lambda / 1e9, bot.lambda / 1e9},
        {"alpha (GPa)", top.alpha / 1e9, bot.alpha / 1e9},
        {"P11", top.P.a11, bot.P.a11},
        {"P21", top.P.a21, bot.P.a21},
        {"P12", top.P.a12, bot.P.a12},
        {"P22", top.P.a22, bot.P.a22},
        {"V_Pf (m/s)", top.v_pf, bot.v_pf},
        {"V_Ps (m/s)", top.v_ps, bot.v_ps},
        {"V_S (m/s)", top.v_s, bot.v_s},
    };
    out << pad("quantity", 16) << pad("top", 20) << "bottom\n";
    for (const auto& r : rows) out << pad(r.name, 16) << pad(g10(r.a), 20) << g10(r.b) << "\n";
    out << "\nsource modal amplitudes (top layer)\n";
    out << pad("F_Pf", 16) << e10(F.F_pf) << "\n";
    out << pad("F_Ps", 16) << e10(F.F_ps) << "\n";
}

Mode parse_incidence(const std::string& s) {
    if (s == "Pf") return Mode::Pf;
    if (s == "Ps") return Mode::Ps;
    throw ConfigError("incidence must be Pf or Ps, got '" + s + "'");
}

void cmd_coeffs(const ProblemConfig& cfg, double qre, double qim, double qy, const std::string& inc,
                std::ostream& out) {
    const Problem pb = build_problem(cfg);
    const Mode m = parse_incidence(inc);
    const WaveCoefficients c = solve_coefficients({cplx(qre, qim), qy}, m, pb.top, pb.bottom, pb.solve);
    out << "incidence " << inc << ", q = (" << g10(qre) << (qim < 0 ? " - " : " + ") << g10(std::abs(qim))
        << "i, " << g10(qy) << ") s/m\n";
    out << pad("coefficient", 14) << pad("real", 22) << pad("imag", 22) << "abs\n";
    const char* names[6] = {"R_Pf", "R_Ps", "R_S", "T_Pf", "T_Ps", "T_S"};
    for (int i = 0; i < 6; ++i)
        out << pad(names[i], 14) << pad(e10(c.c[i].real()), 22) << pad(e10(c.c[i].imag()), 22) << e10(std::abs(c.c[i]))
            << "\n";
    out << "condition estimate " << e10(c.condition) << "\n";
}

void cmd_times(const ProblemConfig& cfg, std::ostream& out) {
    const Problem pb = build_problem(cfg);
    for (const auto& r : cfg.receivers) {
        out << "receiver " << r.name << " (" << g10(r.at.x) << ", " << g10(r.at.y) << ", " << g10(r.at.z) << ") m\n";
        out << "  " << pad("wave", 8) << pad("t0 (s)", 20) << pad("t_h1 (s)", 20) << pad("t_h2 (s)", 20)
            << "head_exists\n";
        for (const auto& w : wave_terms(pb, r.at)) {
            const auto& tw = w.windows;
            out << "  " << pad(w.label, 8) << pad(g10(tw.t0), 20)
                << pad(tw.head_exists ? g10(*tw.t_h1) : "-", 20) << pad(tw.head_exists ? g10(*tw.t_h2) : "-", 20)
                << (tw.head_exists ? "yes" : "no") << "\n";
        }
    }
}

void cmd_traces(const ProblemConfig& cfg, bool seismogram, const std::string& dir, bool serial, std::ostream& out) {
    const Problem pb = build_problem(cfg);
    const Engine eng = serial ? Engine::serial : Engine::parallel;
    std::filesystem::create_directories(dir);
    const char* kind = seismogram ? "seismogram" : "green";
    for (const auto& r : cfg.receivers) {
        const ReceiverRecord rec = seismogram ? seismogram_record(cfg, pb, r, eng) : green_record(cfg, pb, r, eng);
        TraceHeader head;
        head.kind = kind;
        head.config = &cfg;
        head.receiver = &r;
        head.waves = rec.labels;
        head.windows = rec.windows;
        head.notes.push_back("version " + std::string(kVersion));
        head.notes.push_back(std::string("quantity ") +
                             (seismogram ? (cfg.quantity == Quantity::velocity ? "velocity" : "displacement")
                                         : "displacement green function"));
        head.notes.push_back("grid t_start " + e10(rec.grid.t_start) + " dt " + e10(rec.grid.dt) + " n " +
                             std::to_string(rec.grid.n));
        const std::string path = (std::filesystem::path(dir) / (std::string(kind) + "_" + r.name + ".txt")).string();
        std::ofstream f(path);
        if (!f) throw ConfigError("cannot write '" + path + "'");
        write_trace(f, head, to_columns(rec));
        if (!f) throw ConfigError("write failed for '" + path + "'");
        out << path << ": " << rec.labels.size() << " waves, " << rec.grid.n << " samples\n";
    }
}

int cmd_validate(const ProblemConfig& cfg, int samples, bool fast, const std::string& csv, std::ostream& out) {
    AuditContext ctx;
    ctx.problem = build_problem(cfg);
    ctx.source = cfg.source;
    for (const auto& r : cfg.receivers) ctx.receivers.push_back(r.at);
    ctx.samples_per_pair = samples;
    ctx.field_checks = !fast;
    const auto reports = audit(ctx);
    write_text(out, reports);
    if (!csv.empty()) {
        std::ofstream f(csv);
        if (!f) throw ConfigError("cannot write '" + csv + "'");
        write_csv(f, reports);
    }
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.pass;
    out << (ok ? "all checks passed\n" : "validation FAILED\n");
    return ok ? kOk : kValidationFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"porowave: transient Green functions and seismograms for two bonded poroelastic half-spaces"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string config;
    std::string outdir = ".";
    bool serial = false;
    double qre = 0, qim = 0, qy = 0;
    std::string incidence = "Pf";
    int samples = 1000;
    bool fast = false;
    std::string csv;

    auto add_config = [&](CLI::App* sub) { sub->add_option("config", config, "problem config file")->required(); };

    auto* material = app.add_subcommand("material", "derived layer quantities and wave speeds");
    add_config(material);
    auto* coeffs = app.add_subcommand("coeffs", "reflection/transmission coefficients at one slowness");
    add_config(coeffs);
    coeffs->add_option("--qx-re", qre, "real part of q_x (s/m)")->required();
    coeffs->add_option("--qx-im", qim, "imaginary part of q_x (s/m)")->default_val(0.0);
    coeffs->add_option("--qy", qy, "transverse slowness q_y (s/m)")->default_val(0.0);
    coeffs->add_option("--incidence", incidence, "incident mode, Pf or Ps")->default_val("Pf");
    auto* times = app.add_subcommand("times", "arrival and head-wave times per receiver");
    add_config(times);
    auto* green = app.add_subcommand("green", "per-wave and total Green traces");
    add_config(green);
    auto* seis = app.add_subcommand("seismogram", "Green traces convolved with the source wavelet");
    add_config(seis);
    for (auto* s : {green, seis}) {
        s->add_option("-o,--output-dir", outdir, "directory for trace files")->default_val(".");
        s->add_flag("--serial", serial, "use the single-threaded reference kernel");
    }
    auto* validate = app.add_subcommand("validate", "run the oracle audit");
    add_config(validate);
    validate->add_option("--samples", samples, "random samples per wave pair")->default_val(1000)->check(
        CLI::PositiveNumber);
    validate->add_flag("--fast", fast, "skip the checks that evaluate Green functions");
    validate->add_option("--csv", csv, "also write the report as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        apply_thread_env();
        const ProblemConfig cfg = load_config(config);
        if (material->parsed()) cmd_material(cfg, out);
        if (coeffs->parsed()) cmd_coeffs(cfg, qre, qim, qy, incidence, out);
        if (times->parsed()) cmd_times(cfg, out);
        if (green->parsed()) cmd_traces(cfg, false, outdir, serial, out);
        if (seis->parsed()) cmd_traces(cfg, true, outdir, serial, out);
        if (validate->parsed()) return cmd_validate(cfg, samples, fast, csv, out);
        return kOk;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
}

}  // namespace porowave::cli
