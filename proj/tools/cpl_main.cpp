// Command-line front end. Talks to the solver library exclusively through the
// C API in cpl/cpl.h.

#include <cpl/cpl.h>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

// Exit codes, also listed in the README:
//   0 success, 1 validation failure, 2 parse/read error, 3 inconclusive
//   outcome, 4 enumeration unsupported (n > 2).
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitParse = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitUnsupported = 4;

struct SystemDeleter {
    void operator()(cpl_system_t* p) const { cpl_system_free(p); }
};
struct AnalysisDeleter {
    void operator()(cpl_analysis_t* p) const { cpl_analysis_free(p); }
};
using SystemHandle = std::unique_ptr<cpl_system_t, SystemDeleter>;
using AnalysisHandle = std::unique_ptr<cpl_analysis_t, AnalysisDeleter>;

struct StringDeleter {
    void operator()(char* p) const { cpl_string_free(p); }
};
using ApiString = std::unique_ptr<char, StringDeleter>;

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return static_cast<bool>(out);
}

// nullptr on failure, with the exit code stored in `code`.
SystemHandle load_input(const std::string& path, int& code) {
    std::string text;
    if (!read_file(path, text)) {
        std::cerr << "error: cannot read " << path << "\n";
        code = kExitParse;
        return nullptr;
    }
    cpl_system_t* raw = nullptr;
    const cpl_status status = cpl_system_from_json(text.c_str(), &raw);
    if (status != CPL_OK) {
        std::cerr << "error: " << cpl_last_error() << "\n";
        code = kExitParse;
        return nullptr;
    }
    code = kExitOk;
    return SystemHandle(raw);
}

int run_validate(const std::string& input) {
    int code = 0;
    SystemHandle sys = load_input(input, code);
    if (!sys) return code;
    char* json = nullptr;
    if (cpl_system_validation_json(sys.get(), &json) != CPL_OK) {
        std::cerr << "error: " << cpl_last_error() << "\n";
        return kExitParse;
    }
    ApiString guard(json);
    std::cout << json << "\n";
    return cpl_system_passed_validation(sys.get()) ? kExitOk : kExitValidation;
}

struct AnalyzeArgs {
    std::string input;
    cpl_analysis_options opts = cpl_analysis_options_default();
    std::string traj_out;
    bool as_json = false;
    bool no_timings = false;
};

int run_analyze(const AnalyzeArgs& args) {
    int code = 0;
    SystemHandle sys = load_input(args.input, code);
    if (!sys) return code;
    if (!cpl_system_passed_validation(sys.get())) {
        char* json = nullptr;
        if (cpl_system_validation_json(sys.get(), &json) == CPL_OK) {
            ApiString guard(json);
            std::cerr << json << "\n";
        }
        std::cerr << "error: system failed validation\n";
        return kExitValidation;
    }

    cpl_analysis_t* raw = nullptr;
    if (cpl_analyze(sys.get(), &args.opts, &raw) != CPL_OK) {
        std::cerr << "error: " << cpl_last_error() << "\n";
        return kExitParse;
    }
    AnalysisHandle analysis(raw);

    bool wrote_traj = false;
    if (!args.traj_out.empty()) {
        char* csv = nullptr;
        if (cpl_analysis_trajectory_csv(analysis.get(), &csv) != CPL_OK) {
            std::cerr << "error: " << cpl_last_error() << "\n";
            return kExitParse;
        }
        ApiString guard(csv);
        if (!write_file(args.traj_out, csv)) {
            std::cerr << "error: cannot write " << args.traj_out << "\n";
            return kExitParse;
        }
        wrote_traj = true;
    }

    char* report = nullptr;
    if (cpl_analysis_report_json(analysis.get(), args.no_timings ? 0 : 1,
                                 wrote_traj ? args.traj_out.c_str() : nullptr, &report) != CPL_OK) {
        std::cerr << "error: " << cpl_last_error() << "\n";
        return kExitParse;
    }
    ApiString report_guard(report);

    const cpl_outcome_kind kind = cpl_analysis_outcome(analysis.get());
    if (args.as_json) {
        std::cout << report << "\n";
    } else {
        const int n = cpl_system_dim(sys.get());
        switch (kind) {
            case CPL_OUTCOME_DOMINANT: {
                std::vector<double> x(static_cast<std::size_t>(n));
                cpl_analysis_x_max(analysis.get(), x.data(), n);
                std::cout << "outcome: dominant equilibrium\nx_max:";
                for (double v : x) std::cout << ' ' << v;
                std::cout << "\n";
                break;
            }
            case CPL_OUTCOME_NO_EQUILIBRIUM:
                std::cout << "outcome: no equilibria (finite-time voltage collapse)\n";
                break;
            case CPL_OUTCOME_INCONCLUSIVE:
                std::cout << "outcome: inconclusive\n";
                break;
        }
        std::cout << "(run with --json for the full report)\n";
    }
    return kind == CPL_OUTCOME_INCONCLUSIVE ? kExitInconclusive : kExitOk;
}

int run_oracle(const std::string& input, int grid_density) {
    int code = 0;
    SystemHandle sys = load_input(input, code);
    if (!sys) return code;
    if (!cpl_system_passed_validation(sys.get())) {
        std::cerr << "error: system failed validation\n";
        return kExitValidation;
    }
    char* json = nullptr;
    const cpl_status status = cpl_oracle_json(sys.get(), grid_density, &json);
    if (status == CPL_ERROR_UNSUPPORTED) {
        std::cerr << "error: " << cpl_last_error() << "\n";
        return kExitUnsupported;
    }
    if (status != CPL_OK) {
        std::cerr << "error: " << cpl_last_error() << "\n";
        return kExitParse;
    }
    ApiString guard(json);
    std::cout << json << "\n";
    return kExitOk;
}

struct SweepArgs {
    std::string input;
    cpl_sweep_options sweep = cpl_sweep_options_default();
    cpl_analysis_options opts = cpl_analysis_options_default();
    std::string out;
    std::string refine_out;
};

int run_sweep(const SweepArgs& args) {
    int code = 0;
    SystemHandle sys = load_input(args.input, code);
    if (!sys) return code;
    if (!cpl_system_passed_validation(sys.get())) {
        std::cerr << "error: system failed validation\n";
        return kExitValidation;
    }
    cpl_sweep_options sweep = args.sweep;
    sweep.refine_boundary = args.refine_out.empty() ? 0 : 1;

    char* csv = nullptr;
    char* boundary = nullptr;
    if (cpl_sweep_csv(sys.get(), &sweep, &args.opts, &csv, &boundary) != CPL_OK) {
        std::cerr << "error: " << cpl_last_error() << "\n";
        return kExitParse;
    }
    ApiString csv_guard(csv);
    ApiString boundary_guard(boundary);

    if (args.out.empty()) {
        std::cout << csv;
    } else if (!write_file(args.out, csv)) {
        std::cerr << "error: cannot write " << args.out << "\n";
        return kExitParse;
    }
    if (!args.refine_out.empty() && boundary != nullptr) {
        if (!write_file(args.refine_out, boundary)) {
            std::cerr << "error: cannot write " << args.refine_out << "\n";
            return kExitParse;
        }
    }
    return kExitOk;
}

int workers_from_env() {
    const char* env = std::getenv("CPL_WORKERS");
    if (env == nullptr) return 1;
    const int v = std::atoi(env);
    return v >= 1 ? v : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Voltage equilibria for power systems with constant power loads"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(cpl_version()));

    std::string input;

    auto* validate = app.add_subcommand("validate", "Check a system against the model assumptions");
    validate->add_option("input", input, "JSON input file")->required();

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "Decide existence and compute the dominant equilibrium");
    analyze->add_option("input", analyze_args.input, "JSON input file")->required();
    analyze->add_option("--safety", analyze_args.opts.seed_safety, "Seed scaling headroom (> 1)");
    analyze->add_option("--rel-tol", analyze_args.opts.rel_tol, "Integrator relative tolerance");
    analyze->add_option("--abs-tol", analyze_args.opts.abs_tol, "Integrator absolute tolerance");
    analyze->add_option("--converge-tol", analyze_args.opts.converge_tol,
                        "Convergence threshold on |f(x)| (relative)");
    analyze->add_option("--max-time", analyze_args.opts.max_time, "Integration horizon");
    analyze->add_option("--traj-out", analyze_args.traj_out, "Write the trajectory CSV here");
    analyze->add_flag("--json", analyze_args.as_json, "Print the full JSON report");
    analyze->add_flag("--no-timings", analyze_args.no_timings,
                      "Omit timings (reports become byte-reproducible)");

    SweepArgs sweep_args;
    std::vector<double> range;
    std::vector<int> steps;
    int workers = workers_from_env();
    auto* sweep = app.add_subcommand("sweep", "Map outcomes over a 2-axis slice of b");
    sweep->add_option("input", sweep_args.input, "JSON input file")->required();
    sweep->add_option("--axis-i", sweep_args.sweep.axis_i, "First b index (1-based)")->required();
    sweep->add_option("--axis-j", sweep_args.sweep.axis_j, "Second b index (1-based)")->required();
    sweep->add_option("--range", range, "lo_i hi_i lo_j hi_j")->expected(4)->required();
    sweep->add_option("--steps", steps, "steps_i steps_j")->expected(2)->required();
    sweep->add_option("--workers", workers, "Parallel cell workers (default: CPL_WORKERS or 1)");
    sweep->add_option("--out", sweep_args.out, "Write the region CSV here (default: stdout)");
    sweep->add_option("--refine-out", sweep_args.refine_out,
                      "Also bisect the feasibility boundary and write it here");
    sweep->add_option("--max-time", sweep_args.opts.max_time, "Integration horizon per cell");

    int grid_density = 0;
    auto* oracle = app.add_subcommand("oracle", "Enumerate equilibria independently (n <= 2)");
    oracle->add_option("input", input, "JSON input file")->required();
    oracle->add_option("--grid-density", grid_density, "Scan density per axis (default 400)");

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return run_validate(input);
    if (analyze->parsed()) return run_analyze(analyze_args);
    if (oracle->parsed()) return run_oracle(input, grid_density);
    if (sweep->parsed()) {
        sweep_args.sweep.lo_i = range[0];
        sweep_args.sweep.hi_i = range[1];
        sweep_args.sweep.lo_j = range[2];
        sweep_args.sweep.hi_j = range[3];
        sweep_args.sweep.steps_i = steps[0];
        sweep_args.sweep.steps_j = steps[1];
        sweep_args.sweep.workers = workers;
        return run_sweep(sweep_args);
    }
    return kExitOk;
}
