#include "cpl/cpl.h"

#include "classify.hpp"
#include "json_io.hpp"
#include "oracle.hpp"
#include "sweep.hpp"
#include "system.hpp"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

struct cpl_system_t {
    cpl::LoadedSystem loaded;
};

struct cpl_analysis_t {
    cpl::LoadedSystem input;  // echoed into the report
    cpl::Analysis analysis;
    cpl::ReportTimings timings;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

cpl::IntegrationOptions to_core(const cpl_analysis_options& opts) {
    cpl::IntegrationOptions core;
    core.seed_safety = opts.seed_safety;
    core.rel_tol = opts.rel_tol;
    core.abs_tol = opts.abs_tol;
    core.collapse_threshold = opts.collapse_threshold;
    core.converge_tol = opts.converge_tol;
    core.max_time = opts.max_time;
    core.max_steps = opts.max_steps;
    core.record_trajectory = opts.record_trajectory != 0;
    return core;
}

template <typename Fn>
cpl_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const cpl::ParseError& err) {
        set_error(err.what());
        return CPL_ERROR_PARSE;
    } catch (const std::invalid_argument& err) {
        set_error(err.what());
        return CPL_ERROR_ARGUMENT;
    } catch (const std::domain_error& err) {
        set_error(err.what());
        return CPL_ERROR_ARGUMENT;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return CPL_ERROR_INTERNAL;
    } catch (const std::exception& err) {
        set_error(err.what());
        return CPL_ERROR_NUMERIC;
    }
}

cpl_status emit_string(const std::string& text, char** out) {
    *out = dup_string(text);
    if (*out == nullptr) {
        set_error("out of memory");
        return CPL_ERROR_INTERNAL;
    }
    return CPL_OK;
}

}  // namespace

extern "C" {

const char* cpl_version(void) { return "0.1.0"; }

const char* cpl_last_error(void) { return g_last_error.c_str(); }

void cpl_string_free(char* s) { std::free(s); }

cpl_status cpl_system_from_json(const char* text, cpl_system_t** out) {
    if (text == nullptr || out == nullptr) {
        set_error("null argument");
        return CPL_ERROR_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&] {
        auto loaded = cpl::load_system_json(text);
        *out = new cpl_system_t{std::move(loaded)};
        return CPL_OK;
    });
}

void cpl_system_free(cpl_system_t* sys) { delete sys; }

int cpl_system_dim(const cpl_system_t* sys) { return sys == nullptr ? 0 : sys->loaded.sys.n(); }

const char* cpl_system_model(const cpl_system_t* sys) {
    return sys == nullptr ? "" : sys->loaded.model.c_str();
}

int cpl_system_passed_validation(const cpl_system_t* sys) {
    return sys != nullptr && sys->loaded.validation.passed ? 1 : 0;
}

cpl_status cpl_system_validation_json(const cpl_system_t* sys, char** out_json) {
    if (sys == nullptr || out_json == nullptr) {
        set_error("null argument");
        return CPL_ERROR_ARGUMENT;
    }
    return guarded([&] { return emit_string(cpl::validation_json(sys->loaded.validation), out_json); });
}

cpl_status cpl_system_canonical_json(const cpl_system_t* sys, char** out_json) {
    if (sys == nullptr || out_json == nullptr) {
        set_error("null argument");
        return CPL_ERROR_ARGUMENT;
    }
    return guarded([&] { return emit_string(cpl::system_json(sys->loaded.sys), out_json); });
}

cpl_analysis_options cpl_analysis_options_default(void) {
    const cpl::IntegrationOptions core;
    cpl_analysis_options opts;
    opts.seed_safety = core.seed_safety;
    opts.rel_tol = core.rel_tol;
    opts.abs_tol = core.abs_tol;
    opts.collapse_threshold = core.collapse_threshold;
    opts.converge_tol = core.converge_tol;
    opts.max_time = core.max_time;
    opts.max_steps = core.max_steps;
    opts.record_trajectory = 1;
    return opts;
}

cpl_status cpl_analyze(const cpl_system_t* sys, const cpl_analysis_options* opts,
                       cpl_analysis_t** out) {
    if (sys == nullptr || out == nullptr) {
        set_error("null argument");
        return CPL_ERROR_ARGUMENT;
    }
    *out = nullptr;
    if (!sys->loaded.validation.passed) {
        set_error("system failed validation; see the validation report");
        return CPL_ERROR_VALIDATION;
    }
    const cpl_analysis_options defaults = cpl_analysis_options_default();
    return guarded([&] {
        const auto start = std::chrono::steady_clock::now();
        auto handle = std::make_unique<cpl_analysis_t>();
        handle->input = sys->loaded;
        handle->analysis = cpl::classify(sys->loaded.sys, to_core(opts ? *opts : defaults));
        const auto stop = std::chrono::steady_clock::now();
        handle->timings.analysis_ms =
            std::chrono::duration<double, std::milli>(stop - start).count();
        handle->timings.total_ms = handle->timings.analysis_ms;
        *out = handle.release();
        return CPL_OK;
    });
}

void cpl_analysis_free(cpl_analysis_t* analysis) { delete analysis; }

cpl_outcome_kind cpl_analysis_outcome(const cpl_analysis_t* analysis) {
    if (analysis == nullptr) return CPL_OUTCOME_INCONCLUSIVE;
    switch (analysis->analysis.outcome.kind) {
        case cpl::OutcomeKind::Dominant: return CPL_OUTCOME_DOMINANT;
        case cpl::OutcomeKind::NoEquilibrium: return CPL_OUTCOME_NO_EQUILIBRIUM;
        case cpl::OutcomeKind::Inconclusive: return CPL_OUTCOME_INCONCLUSIVE;
    }
    return CPL_OUTCOME_INCONCLUSIVE;
}

cpl_status cpl_analysis_x_max(const cpl_analysis_t* analysis, double* buf, int len) {
    if (analysis == nullptr || buf == nullptr) {
        set_error("null argument");
        return CPL_ERROR_ARGUMENT;
    }
    const cpl::Outcome& out = analysis->analysis.outcome;
    if (out.kind != cpl::OutcomeKind::Dominant) {
        set_error("outcome is not dominant");
        return CPL_ERROR_UNSUPPORTED;
    }
    if (len < static_cast<int>(out.x_max.size())) {
        set_error("buffer too small");
        return CPL_ERROR_ARGUMENT;
    }
    for (int i = 0; i < static_cast<int>(out.x_max.size()); ++i) buf[i] = out.x_max[i];
    return CPL_OK;
}

cpl_status cpl_analysis_report_json(const cpl_analysis_t* analysis, int with_timings,
                                    const char* trajectory_file, char** out_json) {
    if (analysis == nullptr || out_json == nullptr) {
        set_error("null argument");
        return CPL_ERROR_ARGUMENT;
    }
    return guarded([&] {
        std::optional<std::string> traj;
        if (trajectory_file != nullptr) traj = std::string(trajectory_file);
        std::optional<cpl::ReportTimings> timings;
        if (with_timings != 0) timings = analysis->timings;
        return emit_string(
            cpl::analysis_report_json(analysis->input, analysis->analysis, traj, timings),
            out_json);
    });
}

cpl_status cpl_analysis_trajectory_csv(const cpl_analysis_t* analysis, char** out_csv) {
    if (analysis == nullptr || out_csv == nullptr) {
        set_error("null argument");
        return CPL_ERROR_ARGUMENT;
    }
    return guarded([&] {
        return emit_string(
            cpl::trajectory_csv(analysis->analysis.trajectory, analysis->input.sys.n()), out_csv);
    });
}

cpl_status cpl_oracle_json(const cpl_system_t* sys, int grid_density, char** out_json) {
    if (sys == nullptr || out_json == nullptr) {
        set_error("null argument");
        return CPL_ERROR_ARGUMENT;
    }
    if (!sys->loaded.validation.passed) {
        set_error("system failed validation; see the validation report");
        return CPL_ERROR_VALIDATION;
    }
    const int n = sys->loaded.sys.n();
    if (n > 2) {
        set_error("equilibrium enumeration supports n <= 2 only");
        return CPL_ERROR_UNSUPPORTED;
    }
    return guarded([&] {
        cpl::EquilibriumList list;
        if (n == 1) {
            list = cpl::solve_scalar(sys->loaded.sys.A(0, 0), sys->loaded.sys.b[0],
                                     sys->loaded.sys.w[0]);
        } else {
            list = cpl::enumerate_equilibria_2d(sys->loaded.sys,
                                                grid_density > 0 ? grid_density : 400);
        }
        return emit_string(cpl::oracle_json(list), out_json);
    });
}

cpl_sweep_options cpl_sweep_options_default(void) {
    cpl_sweep_options opts;
    opts.axis_i = 1;
    opts.axis_j = 2;
    opts.lo_i = 0.0;
    opts.hi_i = 1.0;
    opts.steps_i = 2;
    opts.lo_j = 0.0;
    opts.hi_j = 1.0;
    opts.steps_j = 2;
    opts.workers = 1;
    opts.refine_boundary = 0;
    return opts;
}

cpl_status cpl_sweep_csv(const cpl_system_t* sys, const cpl_sweep_options* sweep_opts,
                         const cpl_analysis_options* opts, char** out_csv,
                         char** out_boundary_csv) {
    if (sys == nullptr || sweep_opts == nullptr || out_csv == nullptr) {
        set_error("null argument");
        return CPL_ERROR_ARGUMENT;
    }
    if (!sys->loaded.validation.passed) {
        set_error("system failed validation; see the validation report");
        return CPL_ERROR_VALIDATION;
    }
    const cpl_analysis_options defaults = cpl_analysis_options_default();
    return guarded([&] {
        cpl::SweepSpec spec;
        spec.base = sys->loaded.sys;
        spec.axis_i = sweep_opts->axis_i - 1;  // 1-based at the boundary
        spec.axis_j = sweep_opts->axis_j - 1;
        spec.lo_i = sweep_opts->lo_i;
        spec.hi_i = sweep_opts->hi_i;
        spec.steps_i = sweep_opts->steps_i;
        spec.lo_j = sweep_opts->lo_j;
        spec.hi_j = sweep_opts->hi_j;
        spec.steps_j = sweep_opts->steps_j;
        const auto core = to_core(opts ? *opts : defaults);
        const cpl::RegionMap map = cpl::sweep(spec, core, sweep_opts->workers);
        const cpl_status status = emit_string(cpl::region_csv(map, spec.base.n()), out_csv);
        if (status != CPL_OK) return status;
        if (sweep_opts->refine_boundary != 0 && out_boundary_csv != nullptr) {
            const auto points = cpl::refine_boundary(spec, map, core);
            return emit_string(cpl::boundary_csv(points), out_boundary_csv);
        }
        if (out_boundary_csv != nullptr) *out_boundary_csv = nullptr;
        return CPL_OK;
    });
}

}  // extern "C"
