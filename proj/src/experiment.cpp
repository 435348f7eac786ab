#include "hawkes/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include "json.hpp"

#include "hawkes/csvio.hpp"
#include "hawkes/errors.hpp"
#include "hawkes/limits.hpp"
#include "hawkes/rng.hpp"
#include "hawkes/simulate.hpp"
#include "hawkes/stats.hpp"
#include "hawkes/svgplot.hpp"
#include "hawkes/threads.hpp"
#include "hawkes/version.hpp"
#include "hawkes/volterra.hpp"

namespace hawkes {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::set<std::string> kExperiments = {"resolvent",       "functional",        "flln", "fclt",
                                            "weakly-critical", "strongly-critical", "rates"};
const std::set<std::string> kKernels = {"exponential",          "zero",
                                        "mittag-leffler",       "mixed-mittag-leffler",
                                        "scaled-stable",        "tabulated"};
const std::set<std::string> kKeys = {
    "experiment", "kernel", "m",     "beta",  "alpha",         "alpha2",      "beta2",
    "xi",         "xi_value", "xi_lo", "xi_hi", "xi_p_hi",     "xi_xm",       "xi_tail_beta",
    "tabulated_csv", "tabulated_m", "mu0", "T", "h",           "scales",      "replicas",
    "seed",       "u",      "out"};

struct Row {
    double n = 0.0;
    double t = 0.0;
    std::string stat;
    double est = 0.0;
    double target = kNaN;  // NaN renders as an empty cell
    double se = 0.0;
    bool pass = true;
};

bool within_rel(double est, double target, double rel) {
    return std::abs(est - target) <= rel * std::abs(target);
}

double get_num(const json& v, const std::string& key, std::vector<std::string>& diags) {
    if (v.is_number()) return v.get<double>();
    diags.push_back("field '" + key + "' must be a number");
    return kNaN;
}

void write_report(const std::string& path, const std::vector<Row>& rows) {
    CsvWriter w(path);
    w.comment("schema=" + std::to_string(report_schema));
    w.header({"n", "t", "statistic", "estimate", "target", "stderr", "pass"});
    for (const Row& r : rows) {
        w.row({format_double(r.n), format_double(r.t), r.stat, format_double(r.est),
               std::isnan(r.target) ? std::string() : format_double(r.target),
               format_double(r.se), r.pass ? "1" : "0"});
    }
}

std::string sanitize(const std::string& s) {
    std::string o;
    for (char c : s) o += (std::isalnum(static_cast<unsigned char>(c)) || c == '-') ? c : '_';
    return o;
}

// ---- experiment runners ----------------------------------------------------

std::vector<Row> run_resolvent(const ExperimentConfig& c, const KernelSpec& k) {
    const double h = c.h > 0.0 ? c.h : c.T / 1024.0;
    const Grid grid = Grid::make(c.T, h);
    const ResolventTable table = solve_resolvent(k, grid, c.mu0);

    std::vector<double> times;
    for (int j = 1; j <= 16; ++j) times.push_back(c.T * j / 16.0);
    if (c.T >= 1.0) times.push_back(1.0);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    const bool ml = k.family() == KernelFamily::MittagLeffler;
    const bool expo = k.family() == KernelFamily::Exponential;
    const double m = k.branching_ratio(), beta = k.beta(), alpha = k.alpha();

    std::vector<Row> rows;
    for (double t : times) {
        double tir = kNaN, ti2 = kNaN;
        if (ml) {
            tir = beta * std::pow(t, alpha) / std::tgamma(alpha + 1.0);
            ti2 = beta * std::pow(t, alpha + 1.0) / std::tgamma(alpha + 2.0);
        } else if (expo && m < 1.0 && m > 0.0) {
            const double q = (1.0 - m) * beta;
            tir = m / (1.0 - m) * (1.0 - std::exp(-q * t));
            ti2 = m / (1.0 - m) * (t - (1.0 - std::exp(-q * t)) / q);
        } else if (expo && m == 1.0) {
            tir = beta * t;
            ti2 = beta * t * t / 2.0;
        } else if (expo && m == 0.0) {
            tir = 0.0;
            ti2 = 0.0;
        }
        Row r1{1.0, t, "I_R", table.ir_at(t), tir, 0.0, true};
        if (!std::isnan(tir)) r1.pass = std::abs(r1.est - tir) <= std::max(1e-3 * std::abs(tir), 1e-6);
        Row r2{1.0, t, "I2_R", table.i2r_at(t), ti2, 0.0, true};
        if (!std::isnan(ti2)) r2.pass = std::abs(r2.est - ti2) <= std::max(1e-3 * std::abs(ti2), 1e-6);
        rows.push_back(r1);
        rows.push_back(r2);
    }
    return rows;
}

std::vector<Row> run_functional(const ExperimentConfig& c, const KernelSpec& k, int threads) {
    const double h = c.h > 0.0 ? c.h : c.T / 2048.0;
    const Grid grid = Grid::make(c.T, h);
    const double u = c.u;

    FunctionalSpec spec;
    spec.T = c.T;
    spec.f = [u](double) { return cplx(0.0, u); };

    const ComplexVolterraSolution sol = solve_fourier_laplace(k, spec, grid, VolterraForm::Phi);
    const ComplexVolterraSolution solR =
        solve_fourier_laplace(k, spec, grid, VolterraForm::Resolvent);
    const ResolventTable table = solve_resolvent(k, grid, c.mu0);
    const cplx ch = char_functional(sol, table, c.mu0, c.T);

    double gap = 0.0;
    for (std::size_t j = 0; j < sol.V.size(); ++j) gap = std::max(gap, std::abs(sol.V[j] - solR.V[j]));

    std::vector<Row> rows;
    rows.push_back({1.0, c.T, "char_re", ch.real(), kNaN, 0.0, true});
    rows.push_back({1.0, c.T, "char_im", ch.imag(), kNaN, 0.0, true});
    rows.push_back({1.0, c.T, "char_abs", std::abs(ch), kNaN, 0.0, std::abs(ch) <= 1.0 + 1e-9});
    rows.push_back({1.0, c.T, "two_form_sup_gap", gap, 0.0, 0.0, gap <= 1e-8});

    if (c.replicas > 1) {
        const std::size_t R = static_cast<std::size_t>(c.replicas);
        std::vector<double> re(R), im(R);
        for_each_replica(R, threads, [&](std::size_t r) {
            RngStream rng(c.seed, r);
            const EventPath p = simulate_cluster(k, c.mu0, c.T, rng);
            const double phase = u * static_cast<double>(p.times.size());
            re[r] = std::cos(phase);
            im[r] = std::sin(phase);
        });
        const SampleMoments mre = sample_moments(re), mim = sample_moments(im);
        const cplx mc(mre.mean, mim.mean);
        const double se = std::sqrt((mre.variance + mim.variance) / static_cast<double>(R));
        Row r{1.0, c.T, "mc_abs_error", std::abs(ch - mc), kNaN, se, false};
        r.pass = r.est <= 3.0 * se;
        rows.push_back(r);
    }
    return rows;
}

std::vector<Row> run_flln(const ExperimentConfig& c, const KernelSpec& k, int threads) {
    const FLLNReport rep = flln_report(k, c.mu0, c.scales, static_cast<std::size_t>(c.replicas),
                                       c.T, c.seed, threads);
    std::vector<Row> rows;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const FLLNRow& f = rep.rows[i];
        Row r{f.n, c.T, "sup_deviation", f.mean_sup_deviation, 0.0, f.std_error, true};
        if (i > 0) r.pass = f.mean_sup_deviation <= 1.1 * rep.rows[i - 1].mean_sup_deviation;
        rows.push_back(r);
    }
    return rows;
}

std::vector<Row> run_fclt(const ExperimentConfig& c, const KernelSpec& k, int threads) {
    const RegimeLabel lab = classify_regime(k);
    std::vector<Row> rows;
    for (double n : c.scales) {
        const EmpiricalSample s = fclt_sample(k, c.mu0, n, c.T,
                                              static_cast<std::size_t>(c.replicas), c.seed,
                                              threads);
        const SampleMoments m = sample_moments(s.values);
        double vtarget = kNaN;
        if (lab.cls == RegimeClass::Subcritical) {
            vtarget = c.mu0 * c.T / std::pow(1.0 - lab.m, 3.0);
        } else if (lab.cls == RegimeClass::StronglyCritical) {
            const double a = lab.alpha;
            vtarget = c.mu0 * (a + 1.0) * std::pow(c.T, 3.0 * a + 1.0) *
                      std::tgamma(2.0 * a + 1.0) * std::tgamma(a + 1.0) /
                      std::tgamma(3.0 * a + 2.0);
        }
        const double vse = m.variance * std::sqrt(2.0 / static_cast<double>(m.n - 1));
        Row rv{n, c.T, "variance", m.variance, vtarget, vse, true};
        if (!std::isnan(vtarget)) rv.pass = within_rel(m.variance, vtarget, 0.15);
        rows.push_back(rv);
        if (s.values.size() >= 8) {
            const ADResult ad = anderson_darling_normal(s.values);
            rows.push_back({n, c.T, "ad_statistic", ad.statistic, 1.035, 0.0, !ad.reject_1pct});
        }
    }
    return rows;
}

std::vector<Row> run_weakly(const ExperimentConfig& c, const KernelSpec& k, int threads) {
    const WeaklyCriticalReport rep = weakly_critical_report(
        k, c.mu0, c.scales, static_cast<std::size_t>(c.replicas), c.T, c.seed, threads);
    std::vector<Row> rows;
    const double R = static_cast<double>(c.replicas);
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        const WeaklyCriticalRow& w = rep.rows[i];
        const double se_lm = std::sqrt(w.lambda_var / R);
        const double se_cm = std::sqrt(w.count_var / R);
        rows.push_back({w.n, c.T, "lambda_mean", w.lambda_mean, rep.target_lambda_mean, se_lm,
                        within_rel(w.lambda_mean, rep.target_lambda_mean, 0.10)});
        rows.push_back({w.n, c.T, "lambda_var", w.lambda_var, rep.target_lambda_var,
                        w.lambda_var * std::sqrt(2.0 / (R - 1.0)),
                        within_rel(w.lambda_var, rep.target_lambda_var, 0.15)});
        rows.push_back({w.n, c.T, "count_mean", w.count_mean, rep.target_count_mean, se_cm,
                        within_rel(w.count_mean, rep.target_count_mean, 0.10)});
        Row rw{w.n, c.T, "w1_count", w.w1_count, kNaN, 0.0, true};
        if (i > 0) rw.pass = w.w1_count <= 1.1 * rep.rows[i - 1].w1_count;
        rows.push_back(rw);
        Row rl{w.n, c.T, "w1_lambda", w.w1_lambda, kNaN, 0.0, true};
        if (i > 0) rl.pass = w.w1_lambda <= 1.1 * rep.rows[i - 1].w1_lambda;
        rows.push_back(rl);
    }
    return rows;
}

std::vector<Row> run_strongly(const ExperimentConfig& c, const KernelSpec& k, int threads) {
    const RegimeLabel lab = classify_regime(k);
    if (lab.cls != RegimeClass::StronglyCritical)
        throw RegimeError("the strongly-critical experiment requires m = 1 with infinite "
                          "dispersion; got " +
                          lab.describe());
    const double a = lab.alpha;
    const double nmax = *std::max_element(c.scales.begin(), c.scales.end());
    const Grid tg = Grid::make(nmax * std::max(1.0, c.T), nmax * std::max(1.0, c.T) / 8192.0);
    const ResolventTable table = solve_resolvent(k, tg, c.mu0);

    std::vector<Row> rows;
    double prev = kNaN;
    for (double n : c.scales) {
        const double i2 = table.i2r_at(n);
        double sup = 0.0;
        for (int j = 0; j <= 128; ++j) {
            const double t = c.T * j / 128.0;
            const double dev = std::abs(mean_count(table, c.mu0, n * t) / i2 -
                                        c.mu0 * std::pow(t, a + 1.0));
            sup = std::max(sup, dev);
        }
        Row r{n, c.T, "mean_level_sup", sup, 0.0, 0.0, true};
        r.pass = (std::isnan(prev) || sup <= 1.1 * prev) && (n < 100.0 || sup < 0.05);
        prev = sup;
        rows.push_back(r);
    }

    if (c.replicas > 1 && k.family() != KernelFamily::Tabulated) {
        const ScalingSpec spec = make_scaling_spec(k);
        for (double n : c.scales) {
            const EmpiricalSample s =
                second_order_fclt_sample(k, c.mu0, spec, n, c.T,
                                         static_cast<std::size_t>(c.replicas), c.seed, threads);
            const SampleMoments m = sample_moments(s.values);
            const double mt = spec.target_mean(c.mu0, c.T);
            const double vt = spec.target_variance(c.mu0, c.T);
            const double se = std::sqrt(m.variance / static_cast<double>(m.n));
            Row rm{n, c.T, "refined_mean", m.mean, mt, se, true};
            rm.pass = std::abs(m.mean - mt) <= std::max(0.25 * std::abs(mt), 3.0 * se + 0.05);
            rows.push_back(rm);
            if (vt > 0.0) {
                Row rv{n, c.T, "refined_variance", m.variance, vt,
                       m.variance * std::sqrt(2.0 / static_cast<double>(m.n - 1)), true};
                rv.pass = within_rel(m.variance, vt, 0.30);
                rows.push_back(rv);
            }
        }
    }
    return rows;
}

std::vector<Row> run_rates(const ExperimentConfig& c, const KernelSpec& k, int threads) {
    const double h = c.h > 0.0 ? c.h : c.T / 512.0;
    const Grid grid = Grid::make(c.T, h);
    std::vector<Row> rows;
    double prev_sup = kNaN, prev_l2 = kNaN;
    for (double n : c.scales) {
        const GapResult g = resolvent_gap(k, n, c.T, grid);
        Row rs{n, c.T, "resolvent_sup_gap", g.sup_gap, 0.0, 0.0, true};
        if (!std::isnan(prev_sup)) rs.pass = g.sup_gap <= 1.1 * prev_sup + 1e-12;
        Row rl{n, c.T, "resolvent_l2_gap", g.l2_gap, 0.0, 0.0, true};
        if (!std::isnan(prev_l2)) rl.pass = g.l2_gap <= 1.1 * prev_l2 + 1e-12;
        prev_sup = g.sup_gap;
        prev_l2 = g.l2_gap;
        rows.push_back(rs);
        rows.push_back(rl);
    }
    if (c.replicas > 1) {
        const WeaklyCriticalReport rep = weakly_critical_report(
            k, c.mu0, c.scales, static_cast<std::size_t>(c.replicas), c.T, c.seed, threads);
        double prev = kNaN;
        for (const WeaklyCriticalRow& w : rep.rows) {
            Row r{w.n, c.T, "w1_lambda", w.w1_lambda, kNaN, 0.0, true};
            if (!std::isnan(prev)) r.pass = w.w1_lambda <= 1.1 * prev;
            prev = w.w1_lambda;
            rows.push_back(r);
        }
    }
    return rows;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in, nullptr, true, true);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    if (j.contains("config") && j["config"].is_object()) j = j["config"];  // meta.json round trip

    ExperimentConfig c;
    auto& diags = c.parse_diagnostics;
    for (const auto& item : j.items()) {
        if (!kKeys.count(item.key())) diags.push_back("unknown key '" + item.key() + "'");
    }
    auto str = [&](const char* key, std::string& dst) {
        if (!j.contains(key)) return;
        if (j[key].is_string())
            dst = j[key].get<std::string>();
        else
            diags.push_back(std::string("field '") + key + "' must be a string");
    };
    auto num = [&](const char* key, double& dst, bool* flag = nullptr) {
        if (!j.contains(key)) return;
        dst = get_num(j[key], key, diags);
        if (flag && !std::isnan(dst)) *flag = true;
    };
    str("experiment", c.experiment);
    str("kernel", c.kernel);
    num("m", c.m, &c.has_m);
    num("beta", c.beta, &c.has_beta);
    num("alpha", c.alpha, &c.has_alpha);
    num("alpha2", c.alpha2, &c.has_alpha2);
    num("beta2", c.beta2, &c.has_beta2);
    str("xi", c.xi);
    num("xi_value", c.xi_value);
    num("xi_lo", c.xi_lo);
    num("xi_hi", c.xi_hi);
    num("xi_p_hi", c.xi_p_hi);
    num("xi_xm", c.xi_xm);
    num("xi_tail_beta", c.xi_tail_beta);
    str("tabulated_csv", c.tabulated_csv);
    num("tabulated_m", c.tabulated_m, &c.has_tabulated_m);
    num("mu0", c.mu0, &c.has_mu0);
    num("T", c.T, &c.has_T);
    num("h", c.h);
    num("u", c.u);
    str("out", c.out);
    if (j.contains("scales")) {
        if (j["scales"].is_array()) {
            for (const auto& v : j["scales"]) {
                if (v.is_number())
                    c.scales.push_back(v.get<double>());
                else
                    diags.push_back("field 'scales' must contain numbers only");
            }
        } else {
            diags.push_back("field 'scales' must be an array of numbers");
        }
    }
    if (j.contains("replicas")) {
        if (j["replicas"].is_number_integer())
            c.replicas = j["replicas"].get<std::int64_t>();
        else
            diags.push_back("field 'replicas' must be an integer");
    }
    if (j.contains("seed")) {
        if (j["seed"].is_number_unsigned() || (j["seed"].is_number_integer() &&
                                               j["seed"].get<std::int64_t>() >= 0)) {
            c.seed = j["seed"].get<std::uint64_t>();
            c.has_seed = true;
        } else {
            diags.push_back("field 'seed' must be a nonnegative integer");
        }
    }
    return c;
}

KernelSpec kernel_from_config(const ExperimentConfig& c) {
    auto need = [&](bool have, const char* field) {
        if (!have)
            throw ValidationError("kernel '" + c.kernel + "' requires field '" + field + "'");
    };
    if (c.kernel == "exponential") {
        need(c.has_m, "m");
        need(c.has_beta, "beta");
        return KernelSpec::exponential(c.m, c.beta);
    }
    if (c.kernel == "zero") return KernelSpec::zero();
    if (c.kernel == "mittag-leffler") {
        need(c.has_alpha, "alpha");
        need(c.has_beta, "beta");
        return KernelSpec::mittag_leffler(c.alpha, c.beta);
    }
    if (c.kernel == "mixed-mittag-leffler") {
        need(c.has_alpha, "alpha");
        need(c.has_beta, "beta");
        need(c.has_alpha2, "alpha2");
        need(c.has_beta2, "beta2");
        return KernelSpec::mixed_mittag_leffler(c.alpha, c.beta, c.alpha2, c.beta2);
    }
    if (c.kernel == "scaled-stable") {
        need(c.has_alpha, "alpha");
        XiDistribution xi;
        if (c.xi == "constant" || c.xi.empty()) {
            xi = XiDistribution::constant(c.xi_value > 0.0 ? c.xi_value : 1.0);
        } else if (c.xi == "two-point") {
            xi = XiDistribution::two_point(c.xi_lo, c.xi_hi, c.xi_p_hi);
        } else if (c.xi == "pareto") {
            xi = XiDistribution::pareto(c.xi_xm, c.xi_tail_beta);
        } else {
            throw ValidationError("unknown xi distribution '" + c.xi + "'");
        }
        return KernelSpec::scaled_stable(c.alpha, xi);
    }
    if (c.kernel == "tabulated") {
        need(!c.tabulated_csv.empty(), "tabulated_csv");
        need(c.has_tabulated_m, "tabulated_m");
        return KernelSpec::tabulated_from_csv(c.tabulated_csv, c.tabulated_m, true);
    }
    throw ValidationError("unknown kernel '" + c.kernel + "'");
}

std::vector<std::string> validate_config(const ExperimentConfig& c) {
    std::vector<std::string> out = c.parse_diagnostics;
    if (!kExperiments.count(c.experiment))
        out.push_back("unknown experiment '" + c.experiment + "'");
    if (!kKernels.count(c.kernel)) out.push_back("unknown kernel '" + c.kernel + "'");
    if (!c.has_mu0 || !(c.mu0 > 0.0))
        out.push_back("mu0 is required and must be positive (defaults are never invented for "
                      "mu0, T, or seed)");
    if (!c.has_T || !(c.T > 0.0))
        out.push_back("T is required and must be positive (defaults are never invented for mu0, "
                      "T, or seed)");
    if (!c.has_seed)
        out.push_back("seed is required (defaults are never invented for mu0, T, or seed)");
    if (c.h < 0.0) out.push_back("h must be positive when given");
    if (c.h > 0.0 && c.has_T && c.h > c.T) out.push_back("step exceeds horizon");
    if (c.replicas < 0) out.push_back("replicas must be nonnegative");
    for (double n : c.scales)
        if (!(n > 0.0) || !std::isfinite(n)) {
            out.push_back("scales must be positive numbers");
            break;
        }

    const bool needs_scales = c.experiment == "flln" || c.experiment == "fclt" ||
                              c.experiment == "weakly-critical" ||
                              c.experiment == "strongly-critical" || c.experiment == "rates";
    if (needs_scales && c.scales.empty())
        out.push_back("experiment '" + c.experiment + "' requires a non-empty 'scales' array");
    const bool needs_mc = c.experiment == "flln" || c.experiment == "fclt" ||
                          c.experiment == "weakly-critical";
    if (needs_mc && c.replicas < 2)
        out.push_back("experiment '" + c.experiment + "' requires replicas >= 2");

    if (kKernels.count(c.kernel)) {
        try {
            const KernelSpec k = kernel_from_config(c);
            try {
                const RegimeLabel lab = classify_regime(k);
                const bool wc = lab.cls == RegimeClass::WeaklyCritical;
                const bool sc = lab.cls == RegimeClass::StronglyCritical;
                if ((c.experiment == "weakly-critical" || c.experiment == "rates") && !wc)
                    out.push_back("regime mismatch: experiment '" + c.experiment +
                                  "' requires a weakly critical kernel, got " + lab.describe());
                if (c.experiment == "strongly-critical" && !sc)
                    out.push_back("regime mismatch: experiment 'strongly-critical' requires a "
                                  "strongly critical kernel, got " +
                                  lab.describe());
                if ((c.experiment == "flln" || c.experiment == "fclt") && wc)
                    out.push_back("regime mismatch: the weakly critical limit is random, not a "
                                  "deterministic curve or Gaussian statistic; use the "
                                  "weakly-critical experiment");
            } catch (const std::exception& e) {
                out.push_back(std::string("regime: ") + e.what());
            }
        } catch (const std::exception& e) {
            out.push_back(std::string("kernel: ") + e.what());
        }
    }
    return out;
}

RunArtifacts run_experiment(const ExperimentConfig& c, int threads, bool make_plots) {
    const std::vector<std::string> diags = validate_config(c);
    if (!diags.empty()) {
        bool regime_only = true;
        std::string msg = "invalid config:";
        for (const auto& d : diags) {
            if (d.rfind("regime", 0) != 0) regime_only = false;
            msg += "\n  - " + d;
        }
        if (regime_only) throw RegimeError(msg);
        throw ValidationError(msg);
    }
    const KernelSpec k = kernel_from_config(c);

    std::vector<Row> rows;
    if (c.experiment == "resolvent")
        rows = run_resolvent(c, k);
    else if (c.experiment == "functional")
        rows = run_functional(c, k, threads);
    else if (c.experiment == "flln")
        rows = run_flln(c, k, threads);
    else if (c.experiment == "fclt")
        rows = run_fclt(c, k, threads);
    else if (c.experiment == "weakly-critical")
        rows = run_weakly(c, k, threads);
    else if (c.experiment == "strongly-critical")
        rows = run_strongly(c, k, threads);
    else
        rows = run_rates(c, k, threads);

    fs::create_directories(c.out);
    RunArtifacts art;
    art.report_csv = (fs::path(c.out) / "report.csv").string();
    art.meta_json = (fs::path(c.out) / "meta.json").string();
    write_report(art.report_csv, rows);

    ordered_json meta;
    meta["schema"] = report_schema;
    meta["version"] = version_string;
    meta["seed"] = c.seed;
    ordered_json cfg;
    cfg["experiment"] = c.experiment;
    cfg["kernel"] = c.kernel;
    if (c.has_m) cfg["m"] = c.m;
    if (c.has_beta) cfg["beta"] = c.beta;
    if (c.has_alpha) cfg["alpha"] = c.alpha;
    if (c.has_alpha2) cfg["alpha2"] = c.alpha2;
    if (c.has_beta2) cfg["beta2"] = c.beta2;
    if (!c.xi.empty()) {
        cfg["xi"] = c.xi;
        if (c.xi == "constant") cfg["xi_value"] = c.xi_value;
        if (c.xi == "two-point") {
            cfg["xi_lo"] = c.xi_lo;
            cfg["xi_hi"] = c.xi_hi;
            cfg["xi_p_hi"] = c.xi_p_hi;
        }
        if (c.xi == "pareto") {
            cfg["xi_xm"] = c.xi_xm;
            cfg["xi_tail_beta"] = c.xi_tail_beta;
        }
    }
    if (!c.tabulated_csv.empty()) {
        cfg["tabulated_csv"] = c.tabulated_csv;
        cfg["tabulated_m"] = c.tabulated_m;
    }
    cfg["mu0"] = c.mu0;
    cfg["T"] = c.T;
    if (c.h > 0.0) cfg["h"] = c.h;
    if (!c.scales.empty()) cfg["scales"] = c.scales;
    if (c.replicas > 0) cfg["replicas"] = c.replicas;
    cfg["seed"] = c.seed;
    if (c.experiment == "functional") cfg["u"] = c.u;
    cfg["out"] = c.out;
    meta["config"] = cfg;
    {
        std::ofstream mf(art.meta_json, std::ios::binary);
        if (!mf) throw ValidationError("cannot write " + art.meta_json);
        mf << meta.dump(2) << "\n";
    }

    if (make_plots) {
        std::map<std::string, std::vector<const Row*>> by_stat;
        for (const Row& r : rows) by_stat[r.stat].push_back(&r);
        const bool x_is_t = c.experiment == "resolvent" || c.experiment == "functional";
        for (const auto& [stat, rs] : by_stat) {
            SvgSeries est{"estimate", {}, {}}, tgt{"target", {}, {}};
            for (const Row* r : rs) {
                const double x = x_is_t ? r->t : r->n;
                est.x.push_back(x);
                est.y.push_back(r->est);
                if (!std::isnan(r->target)) {
                    tgt.x.push_back(x);
                    tgt.y.push_back(r->target);
                }
            }
            std::vector<SvgSeries> series{est};
            if (!tgt.x.empty()) series.push_back(tgt);
            const std::string p =
                (fs::path(c.out) / ("plot-" + sanitize(stat) + ".svg")).string();
            write_svg_lines(p, stat + "  (" + c.experiment + ")", x_is_t ? "t" : "n", series);
            art.plots.push_back(p);
        }
    }
    return art;
}

}
