#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "hawkes/kernels.hpp"

namespace hawkes {

// Flat, JSON-backed experiment description.  Optional numeric fields default
// to NaN; mu0, T and seed are never defaulted.
struct ExperimentConfig {
    std::string experiment;  // resolvent | functional | flln | fclt |
                             // weakly-critical | strongly-critical | rates
    std::string kernel;      // exponential | zero | mittag-leffler |
                             // mixed-mittag-leffler | scaled-stable | tabulated

    double m = 0.0;
    double beta = 0.0;
    double alpha = 0.0;
    double alpha2 = 0.0;
    double beta2 = 0.0;
    bool has_m = false, has_beta = false, has_alpha = false, has_alpha2 = false,
         has_beta2 = false;

    std::string xi;  // constant | two-point | pareto
    double xi_value = 0.0, xi_lo = 0.0, xi_hi = 0.0, xi_p_hi = 0.0;
    double xi_xm = 0.0, xi_tail_beta = 0.0;

    std::string tabulated_csv;
    double tabulated_m = 0.0;
    bool has_tabulated_m = false;

    double mu0 = 0.0, T = 0.0, h = 0.0;  // h == 0 means per-experiment default
    bool has_mu0 = false, has_T = false;
    std::vector<double> scales;
    std::int64_t replicas = 0;
    std::uint64_t seed = 0;
    bool has_seed = false;
    double u = 0.5;  // Fourier argument of the functional experiment
    std::string out = ".";

    std::vector<std::string> parse_diagnostics;  // unknown keys, bad value types
};

// Reads either a plain config or a meta.json (whose "config" object is then
// taken), collecting key-level problems as diagnostics.
ExperimentConfig load_config(const std::string& path);

// All violations, none fatal here; run_experiment refuses when any remain.
std::vector<std::string> validate_config(const ExperimentConfig& c);

KernelSpec kernel_from_config(const ExperimentConfig& c);

struct RunArtifacts {
    std::string report_csv;
    std::string meta_json;
    std::vector<std::string> plots;
};

// Executes the experiment, writing report.csv (schema comment + the columns
// n,t,statistic,estimate,target,stderr,pass), meta.json, and one SVG per
// statistic unless plots are disabled.  Deterministic for a fixed seed.
RunArtifacts run_experiment(const ExperimentConfig& c, int threads, bool make_plots);

}
