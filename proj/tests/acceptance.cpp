// Acceptance gate: eleven fixed criteria, one [PASS]/[FAIL] line each, exit
// code = number of failures.  Tolerances are pinned here, not configurable.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "hawkes/kernels.hpp"
#include "hawkes/limits.hpp"
#include "hawkes/metrics.hpp"
#include "hawkes/rng.hpp"
#include "hawkes/simulate.hpp"
#include "hawkes/stats.hpp"
#include "hawkes/volterra.hpp"

using namespace hawkes;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return std::string(buf);
}

double ml_ir(double a, double b, double t) { return b * std::pow(t, a) / std::tgamma(a + 1.0); }
double ml_i2r(double a, double b, double t) {
    return b * std::pow(t, a + 1.0) / std::tgamma(a + 2.0);
}

// Var N(t) = mu0 int (1 + I_R(t-s))^2 (1 + I_R(s)) ds
double exact_count_variance(const ResolventTable& tab, double mu0, double t) {
    const int M = 8192;
    double acc = 0.0;
    for (int j = 0; j <= M; ++j) {
        const double s = t * j / M;
        const double v =
            (1.0 + tab.ir_at(t - s)) * (1.0 + tab.ir_at(t - s)) * (1.0 + tab.ir_at(s));
        acc += (j == 0 || j == M) ? 0.5 * v : v;
    }
    return mu0 * acc * t / M;
}

KernelSpec mixture_kernel() {
    // 0.5 Exp(2) + 0.5 Exp(1/2) delay mixture: critical with dispersion 1.25
    std::vector<double> ts;
    for (double t = 0.0; t <= 10.0 + 1e-12; t += 0.005) ts.push_back(t);
    double t = 10.0;
    while (t < 200.0) {
        t = std::min(200.0, t * 1.01);
        ts.push_back(t);
    }
    std::vector<double> ps(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        ps[i] = std::exp(-2.0 * ts[i]) + 0.25 * std::exp(-0.5 * ts[i]);
    return KernelSpec::tabulated(std::move(ts), std::move(ps), 1.0, true);
}

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const KernelSpec k = KernelSpec::mittag_leffler(0.5, 1.0);
    const Grid g = Grid::make(10.0, 1e-3);
    const ResolventTable tab = solve_resolvent(k, g, 1.0);
    double worst = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double t = 0.1 * i;
        worst = std::max(worst, std::abs(tab.ir_at(t) / ml_ir(0.5, 1.0, t) - 1.0));
        worst = std::max(worst, std::abs(tab.i2r_at(t) / ml_i2r(0.5, 1.0, t) - 1.0));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(1, worst < 1e-3 && secs < 30.0,
           fmt("heavy-tail resolvent integrals on [0.1, 10]: max rel err %.2e (tol 1e-3), "
               "%.1f s (budget 30 s)",
               worst, secs));
}

void criterion_2() {
    const KernelSpec k = KernelSpec::exponential(0.5, 1.0);
    const ResolventTable tab = solve_resolvent(k, Grid::make(40.0, 4e-3), 1.0);
    const double v = tab.ir_at(40.0);
    report(2, std::abs(v - 1.0) <= 1e-3,
           fmt("subcritical total impact I_R(40) = %.6f (target 1 +- 1e-3)", v));
}

void criterion_3() {
    const KernelSpec k = KernelSpec::exponential(0.9, 1.0);
    const double mu0 = 1.0, u = 0.5, T = 5.0;
    const Grid g = Grid::make(T, T / 2048.0);
    FunctionalSpec spec;
    spec.T = T;
    spec.f = [u](double) { return cplx(0.0, u); };
    const auto sa = solve_fourier_laplace(k, spec, g, VolterraForm::Phi);
    const auto sb = solve_fourier_laplace(k, spec, g, VolterraForm::Resolvent);
    double gap = 0.0;
    for (std::size_t j = 0; j < sa.V.size(); ++j) gap = std::max(gap, std::abs(sa.V[j] - sb.V[j]));
    const ResolventTable tab = solve_resolvent(k, g, mu0);
    const cplx ch = char_functional(sa, tab, mu0, T);

    const std::size_t R = 100000;
    double sre = 0.0, sim = 0.0, sre2 = 0.0, sim2 = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
        RngStream rng(881, r);
        const EventPath p = simulate_cluster(k, mu0, T, rng);
        const double ph = u * static_cast<double>(p.times.size());
        sre += std::cos(ph);
        sim += std::sin(ph);
        sre2 += std::cos(ph) * std::cos(ph);
        sim2 += std::sin(ph) * std::sin(ph);
    }
    const cplx mc(sre / R, sim / R);
    const double vre = sre2 / R - mc.real() * mc.real();
    const double vim = sim2 / R - mc.imag() * mc.imag();
    const double se = std::sqrt((vre + vim) / static_cast<double>(R));
    const double err = std::abs(ch - mc);
    report(3, err < 3.0 * se && gap <= 1e-8,
           fmt("transform functional vs 1e5-path Monte Carlo: |diff| %.2e < 3 se %.2e; "
               "two solver forms sup gap %.2e (tol 1e-8)",
               err, 3.0 * se, gap));
}

void criterion_4() {
    const KernelSpec k = KernelSpec::exponential(0.5, 1.0);
    const EmpiricalSample s = fclt_sample(k, 1.0, 200.0, 1.0, 10000, 20240814, 1);
    const SampleMoments m = sample_moments(s.values);
    const bool var_ok = std::abs(m.variance - 8.0) <= 0.10 * 8.0;
    const ADResult ad = anderson_darling_normal(s.values);
    const bool ad_ok = !ad.reject_1pct;
    report(4, var_ok && ad_ok,
           fmt("diffusive fluctuation scale: variance %.3f (target 8 +- 10%%) %s; "
               "normality A*2 = %.2f vs 1.035 at 1%% %s (count skewness ~ 0.18 at this scale "
               "is resolvable with 1e4 replicas)",
               m.variance, var_ok ? "ok" : "off", ad.statistic, ad_ok ? "ok" : "rejected"));
}

void criterion_5() {
    const KernelSpec k = KernelSpec::exponential(1.0, 1.0);
    const WeaklyCriticalReport rep =
        weakly_critical_report(k, 1.0, {100.0}, 10000, 1.0, 424242, 1);
    const auto& row = rep.rows.front();
    const bool mean_ok = std::abs(row.lambda_mean - 1.0) <= 0.10;
    const bool var_ok = std::abs(row.lambda_var - 0.5) <= 0.075;
    report(5, mean_ok && var_ok,
           fmt("critical intensity moments at n = 100: mean %.3f (1 +- 10%%), variance %.3f "
               "(0.5 +- 15%%)",
               row.lambda_mean, row.lambda_var));
}

void criterion_6() {
    const Grid g = Grid::make(1.0, 1.0 / 4096.0);
    FunctionalSpec w;
    w.T = 1.0;
    w.nu_density = [](double) { return cplx(-0.5, 0.0); };
    const CIRRiccatiSolution sol = solve_cir_riccati(w, nullptr, 1.0, g);
    const double verr = std::abs(sol.V_star.back() - cplx(-std::tanh(0.5), 0.0));
    const double exact = 1.0 / (std::cosh(0.5) * std::cosh(0.5));
    const cplx chv = cir_functional(sol, 1.0, 1.0);

    const std::size_t R = 50000;
    double acc = 0.0, acc2 = 0.0;
    for (std::size_t r = 0; r < R; ++r) {
        RngStream rng(661, r);
        const double v = std::exp(-0.5 * simulate_cir_endpoint(1.0, 1.0, 1.0, 4096, rng).integral);
        acc += v;
        acc2 += v * v;
    }
    const double mc = acc / R;
    const double se = std::sqrt((acc2 / R - mc * mc) / static_cast<double>(R));
    const bool ric_ok = verr <= 1e-8 && std::abs(chv.real() - exact) <= 1e-8;
    const bool mc_ok = std::abs(mc - exact) < 3.0 * se;
    report(6, ric_ok && mc_ok,
           fmt("square-root-diffusion Riccati: |V*(1) + tanh(0.5)| = %.1e (tol 1e-8); "
               "functional %.6f vs diffusion Monte Carlo %.6f +- %.1e",
               verr, exact, mc, se));
}

void criterion_7() {
    const KernelSpec k = KernelSpec::mittag_leffler(0.5, 4.0);
    const double nmax = 256.0;
    const ResolventTable tab = solve_resolvent(k, Grid::make(nmax, nmax / 16384.0), 1.0);
    auto sup_dev = [&](double n) {
        const double i2 = tab.i2r_at(n);
        double sup = 0.0;
        for (int j = 0; j <= 128; ++j) {
            const double t = j / 128.0;
            sup = std::max(sup, std::abs(mean_count(tab, 1.0, n * t) / i2 -
                                         std::pow(t, 1.5)));
        }
        return sup;
    };
    bool decreasing = true;
    double prev = -1.0;
    for (double n : {16.0, 32.0, 64.0, 128.0, 256.0}) {
        const double d = sup_dev(n);
        if (prev >= 0.0 && d >= prev) decreasing = false;
        prev = d;
    }
    const double d100 = sup_dev(100.0);
    report(7, d100 < 0.05 && decreasing,
           fmt("deterministic mean-level law: sup deviation %.4f at n = 100 (tol 0.05), "
               "strictly decreasing over n = 16..256: %s",
               d100, decreasing ? "yes" : "no"));
}

void criterion_8() {
    const KernelSpec k = KernelSpec::mittag_leffler(0.5, 1.0);
    const double n = 100.0;
    const EmpiricalSample s = fclt_sample(k, 1.0, n, 1.0, 10000, 7777, 1);
    const SampleMoments m = sample_moments(s.values);
    // stated target: mu0 (a+1) int_0^1 (1-s)^{2a} s^a ds = 1.5 B(2, 3/2) = 0.4
    const double stated = 1.5 * std::tgamma(2.0) * std::tgamma(1.5) / std::tgamma(3.5);
    const bool pass = std::abs(m.variance - stated) <= 0.15 * stated;
    // exact finite-horizon value of the same statistic, for the record
    const ResolventTable tab = solve_resolvent(k, Grid::make(n, n / 8192.0), 1.0);
    const double i2 = tab.i2r_at(n);
    const double exact = n * n / (i2 * i2 * i2) * exact_count_variance(tab, 1.0, n);
    report(8, pass,
           fmt("heavy-tail fluctuation variance: measured %.3f vs stated target %.3f +- 15%%; "
               "exact finite-n quadrature value of this statistic is %.4f (asymptote %.3f = "
               "(a+1)^2 x stated), so the stated constant omits the (a+1)^2 factor",
               m.variance, stated, exact, (1.5 * 1.5) * stated));
}

void criterion_9() {
    const Grid g = Grid::make(1.0, 1.0 / 512.0);
    const GapResult exact = resolvent_gap(KernelSpec::exponential(1.0, 1.7), 16.0, 1.0, g);
    const bool exact_ok = exact.sup_gap < 1e-9;

    const KernelSpec mix = mixture_kernel();
    const std::vector<double> ns = {8.0, 16.0, 32.0, 64.0};
    bool gaps_ok = true;
    double prev = -1.0;
    std::string gap_str;
    for (double n : ns) {
        const GapResult gr = resolvent_gap(mix, n, 1.0, g);
        if (prev >= 0.0 && gr.sup_gap > 1.1 * prev) gaps_ok = false;
        prev = gr.sup_gap;
        gap_str += fmt(" %.3f", gr.sup_gap);
    }

    const WeaklyCriticalReport rep = weakly_critical_report(mix, 1.0, ns, 6000, 1.0, 98765, 1);
    bool w1_ok = true;
    std::string w1_str;
    for (std::size_t i = 0; i < rep.rows.size(); ++i) {
        if (i > 0 && rep.rows[i].w1_lambda > 1.1 * rep.rows[i - 1].w1_lambda) w1_ok = false;
        w1_str += fmt(" %.4f", rep.rows[i].w1_lambda);
    }
    report(9, exact_ok && gaps_ok && w1_ok,
           fmt("convergence-rate shape: exact critical-exponential gap %.1e (tol 1e-9); "
               "mixture sup gaps%s and intensity distances%s non-increasing over n = 8..64 "
               "(10%% slack)",
               exact.sup_gap, gap_str.c_str(), w1_str.c_str()));
}

void criterion_10() {
    RngStream rng(31415, 0);
    bool w_ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a(8), b(8);
        for (auto& x : a) x = rng.uniform(-5.0, 5.0);
        for (auto& x : b) x = rng.uniform(-5.0, 5.0);
        std::vector<std::size_t> idx = {0, 1, 2, 3, 4, 5, 6, 7};
        double best = 1e300;
        do {
            double cost = 0.0;
            for (std::size_t i = 0; i < 8; ++i) cost += std::abs(a[i] - b[idx[i]]);
            best = std::min(best, cost);
        } while (std::next_permutation(idx.begin(), idx.end()));
        const double d = std::abs(wasserstein1(a, b) - best / 8.0);
        worst = std::max(worst, d);
        if (d > 1e-12) w_ok = false;
    }
    const bool ks_ok = kolmogorov_distance({1.0, 2.0}, {1.0, 2.0}) == 0.0 &&
                       std::abs(kolmogorov_distance({0.0}, {1.0}) - 1.0) < 1e-15 &&
                       std::abs(kolmogorov_distance({0.0, 1.0}, {0.0, 2.0}) - 0.5) < 1e-15;
    report(10, w_ok && ks_ok,
           fmt("distance estimators: transport distance equals exhaustive optimal matching "
               "on 50 instances (worst gap %.1e); sup-distance hand examples exact",
               worst));
}

void criterion_11() {
    const KernelSpec k = KernelSpec::mittag_leffler(0.5, 1.0);
    const ResolventTable tab = solve_resolvent(k, Grid::make(1000.0, 1000.0 / 16384.0), 1.0);
    std::vector<double> probes;
    for (int i = 0; i <= 9; ++i) probes.push_back(100.0 * std::pow(10.0, i / 9.0));
    const RVProfile p = estimate_rv_index([&](double t) { return tab.i2r_at(t); }, probes);
    report(11, std::abs(p.index - 1.5) <= 0.02,
           fmt("regular-variation probe on the solved resolvent integral: index %.4f "
               "(target 1.5 +- 0.02)",
               p.index));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    std::printf("%d of 11 criteria failed\n", failures);
    return failures;
}
