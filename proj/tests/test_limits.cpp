#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "hawkes/errors.hpp"
#include "hawkes/kernels.hpp"
#include "hawkes/limits.hpp"
#include "hawkes/simulate.hpp"
#include "hawkes/stats.hpp"
#include "hawkes/volterra.hpp"

using namespace hawkes;

namespace {

KernelSpec tabulate_fn(const std::function<double(double)>& phi, double tmax,
                       double declared_m, bool sampler = false) {
    // dense near zero, geometric afterwards, so heavy tails stay resolved
    std::vector<double> ts;
    for (double t = 0.0; t <= 10.0 + 1e-12; t += 0.01) ts.push_back(t);
    double t = 10.0;
    while (t < tmax) {
        t = std::min(tmax, t * 1.02);
        ts.push_back(t);
    }
    std::vector<double> ps(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) ps[i] = phi(ts[i]);
    return KernelSpec::tabulated(std::move(ts), std::move(ps), declared_m, sampler);
}

// Var N(t) = mu0 int_0^t (1 + I_R(t-s))^2 (1 + I_R(s)) ds
double exact_count_variance(const ResolventTable& tab, double mu0, double t) {
    const int M = 8192;
    double acc = 0.0;
    for (int j = 0; j <= M; ++j) {
        const double s = t * j / M;
        const double v = (1.0 + tab.ir_at(t - s)) * (1.0 + tab.ir_at(t - s)) *
                         (1.0 + tab.ir_at(s));
        acc += (j == 0 || j == M) ? 0.5 * v : v;
    }
    return mu0 * acc * t / M;
}

}  // namespace

TEST_CASE("regimes classify by branching ratio and delay dispersion") {
    const RegimeLabel sub = classify_regime(KernelSpec::exponential(0.5, 1.0));
    CHECK(sub.cls == RegimeClass::Subcritical);
    CHECK(sub.psi_class == PsiStarClass::Zero);

    const RegimeLabel weak = classify_regime(KernelSpec::exponential(1.0, 1.0));
    CHECK(weak.cls == RegimeClass::WeaklyCritical);
    CHECK(weak.sigma == doctest::Approx(1.0).epsilon(1e-9));

    const RegimeLabel strong = classify_regime(KernelSpec::mittag_leffler(0.5, 1.0));
    CHECK(strong.cls == RegimeClass::StronglyCritical);
    CHECK(strong.alpha == doctest::Approx(0.5).epsilon(1e-9));

    const RegimeLabel mixed = classify_regime(KernelSpec::mixed_mittag_leffler(0.3, 1.0, 0.5, 1.0));
    CHECK(mixed.cls == RegimeClass::StronglyCritical);
    CHECK(mixed.alpha == doctest::Approx(0.3).epsilon(1e-9));

    const RegimeLabel stab =
        classify_regime(KernelSpec::scaled_stable(0.4, XiDistribution::pareto(1.0, 1.5)));
    CHECK(stab.cls == RegimeClass::StronglyCritical);
    CHECK(stab.alpha == doctest::Approx(0.4).epsilon(1e-9));

    CHECK_THROWS_AS(classify_regime(KernelSpec::exponential(1.2, 1.0)), RegimeError);
    CHECK_FALSE(classify_regime(KernelSpec::exponential(0.5, 1.0)).describe().empty());
}

TEST_CASE("classification is stable under time rescaling of the kernel") {
    // c phi(c t) keeps the mass and the criticality class
    auto base = [](double t) { return 0.5 * 2.0 * std::exp(-2.0 * t) +
                                      0.5 * 0.5 * std::exp(-0.5 * t); };
    auto scaled = [&](double t) { return 3.0 * base(3.0 * t); };
    const KernelSpec k1 = tabulate_fn(base, 300.0, 1.0);
    const KernelSpec k2 = tabulate_fn(scaled, 100.0, 1.0);
    const RegimeLabel a = classify_regime(k1), b = classify_regime(k2);
    CHECK(a.cls == b.cls);
    CHECK(a.cls == RegimeClass::WeaklyCritical);
    CHECK(a.sigma == doctest::Approx(1.25).epsilon(2e-2));
    CHECK(b.sigma == doctest::Approx(1.25 / 3.0).epsilon(2e-2));
}

TEST_CASE("tabulated subcritical kernels split by the sqrt-time dispersion trend") {
    // light tail: psi* = 0
    auto light = [](double t) { return 0.5 * std::exp(-t); };
    const RegimeLabel lz = classify_regime(tabulate_fn(light, 200.0, 0.5));
    CHECK(lz.cls == RegimeClass::Subcritical);
    CHECK(lz.psi_class == PsiStarClass::Zero);

    // boundary tail phi ~ (m/2)(1+t)^{-3/2}: psi* finite and positive.
    // declare the mass actually covered by the grid, not the full-line mass
    auto boundary = [](double t) { return 0.25 * std::pow(1.0 + t, -1.5); };
    const KernelSpec kb = tabulate_fn(boundary, 4000.0, 0.5 * (1.0 - 1.0 / std::sqrt(4001.0)));
    const RegimeLabel lf = classify_regime(kb);
    CHECK(lf.cls == RegimeClass::Subcritical);
    CHECK(lf.psi_class == PsiStarClass::Finite);
    CHECK(lf.psi_star == doctest::Approx(0.5).epsilon(0.15));

    // heavier tail phi ~ c (1+t)^{-1.3}: psi* infinite with tail index ~ 0.3
    auto heavy = [](double t) { return 0.3 * 0.5 * std::pow(1.0 + t, -1.3); };
    const RegimeLabel li =
        classify_regime(tabulate_fn(heavy, 4000.0, 0.5 * (1.0 - std::pow(4001.0, -0.3))));
    CHECK(li.cls == RegimeClass::Subcritical);
    CHECK(li.psi_class == PsiStarClass::Infinite);
    CHECK(li.alpha == doctest::Approx(0.3).epsilon(0.35));
}

TEST_CASE("rescaling with n = 1 is the identity on critical paths") {
    const KernelSpec k = KernelSpec::exponential(1.0, 1.0);
    const double mu0 = 1.0, T = 3.0;
    RngStream rng(21, 0);
    const EventPath p = simulate_cluster(k, mu0, T, rng);
    const Grid g = Grid::make(T, T / 64.0);
    const ResolventTable tab = solve_resolvent(k, g, mu0);
    const RegimeLabel lab = classify_regime(k);
    const RescaledPath rp = rescale(p, k, tab, 1.0, lab, g);
    REQUIRE(rp.N.size() == static_cast<std::size_t>(g.n) + 1);
    for (std::int64_t j = 0; j <= g.n; j += 16) {
        const PathStats st = path_statistics(p, k, mu0, g.t(j));
        CHECK(rp.N[static_cast<std::size_t>(j)] == doctest::Approx(st.N).epsilon(1e-12));
        CHECK(rp.I_Lambda[static_cast<std::size_t>(j)] ==
              doctest::Approx(st.I_Lambda).epsilon(1e-9));
        CHECK(rp.Ntilde[static_cast<std::size_t>(j)] ==
              doctest::Approx(st.Ntilde).epsilon(1e-9));
    }
}

TEST_CASE("critical rescaling divides counts by n^2 and intensity by n") {
    const KernelSpec k = KernelSpec::exponential(1.0, 1.0);
    EventPath p;
    p.T = 4.0;
    p.times = {1.0};
    const Grid g = Grid::make(2.0, 0.1);
    const ResolventTable tab = solve_resolvent(k, Grid::make(4.0, 0.01), 1.0);
    const RegimeLabel lab = classify_regime(k);
    const RescaledPath rp = rescale(p, k, tab, 2.0, lab, g);
    // t = 0.4 -> N(0.8) = 0;   t = 0.6 -> N(1.2) = 1, scaled by 1/n^2
    CHECK(rp.N[4] == 0.0);
    CHECK(rp.N[6] == doctest::Approx(0.25).epsilon(1e-12));
    const PathStats st = path_statistics(p, k, 1.0, 1.2);
    CHECK(rp.I_Lambda[6] == doctest::Approx(st.I_Lambda / 4.0).epsilon(1e-12));
}

TEST_CASE("strongly critical rescaling normalizes by the resolvent growth") {
    const KernelSpec k = KernelSpec::mittag_leffler(0.5, 1.0);
    const ResolventTable tab = solve_resolvent(k, Grid::make(100.0, 100.0 / 8192.0), 1.0);
    // I2R(100) = 100^{3/2} / Gamma(5/2)
    const double want = std::pow(100.0, 1.5) / std::tgamma(2.5);
    CHECK(tab.i2r_at(100.0) == doctest::Approx(want).epsilon(2e-3));

    EventPath p;
    p.T = 100.0;
    p.times = {50.0};
    const Grid g = Grid::make(1.0, 0.125);
    const RescaledPath rp = rescale(p, k, tab, 100.0, classify_regime(k), g);
    CHECK(rp.N.back() == doctest::Approx(1.0 / tab.i2r_at(100.0)).epsilon(1e-12));
}

TEST_CASE("law-of-large-numbers deviation shrinks with the time scale") {
    const KernelSpec k = KernelSpec::exponential(0.5, 1.0);
    const FLLNReport rep = flln_report(k, 1.0, {8.0, 64.0}, 300, 1.0, 424242, 2);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.label.cls == RegimeClass::Subcritical);
    CHECK_FALSE(rep.statistic.empty());
    CHECK(rep.rows[0].mean_sup_deviation > 0.0);
    // expected decay ~ n^{-1/2}: an 8x scale step should come close to halving it
    CHECK(rep.rows[1].mean_sup_deviation < 0.6 * rep.rows[0].mean_sup_deviation);
}

TEST_CASE("law-of-large-numbers report is independent of the thread count") {
    const KernelSpec k = KernelSpec::exponential(0.5, 1.0);
    const FLLNReport a = flln_report(k, 1.0, {8.0, 16.0}, 60, 1.0, 7, 1);
    const FLLNReport b = flln_report(k, 1.0, {8.0, 16.0}, 60, 1.0, 7, 3);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        CHECK(a.rows[i].mean_sup_deviation == b.rows[i].mean_sup_deviation);
}

TEST_CASE("weakly critical kernels have no deterministic first-order curve") {
    const KernelSpec k = KernelSpec::exponential(1.0, 1.0);
    CHECK_THROWS_WITH_AS(flln_report(k, 1.0, {8.0}, 10, 1.0, 1, 1),
                         doctest::Contains("weakly_critical_report"), RegimeError);
}

TEST_CASE("heavy-tailed subcritical deviation also trends down") {
    auto heavy = [](double t) { return 0.3 * 0.5 * std::pow(1.0 + t, -1.3); };
    const KernelSpec k =
        tabulate_fn(heavy, 2000.0, 0.5 * (1.0 - std::pow(2001.0, -0.3)), /*sampler=*/true);
    const FLLNReport rep = flln_report(k, 1.0, {16.0, 64.0}, 300, 1.0, 11, 2);
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[1].mean_sup_deviation < 1.1 * rep.rows[0].mean_sup_deviation);
}

TEST_CASE("normalized count fluctuations carry the exact finite-horizon variance") {
    const KernelSpec k = KernelSpec::exponential(0.5, 1.0);
    const double n = 120.0;
    const EmpiricalSample s = fclt_sample(k, 1.0, n, 1.0, 3000, 20240555, 2);
    REQUIRE(s.values.size() == 3000);
    const SampleMoments m = sample_moments(s.values);
    CHECK(std::abs(m.mean) < 4.0 * std::sqrt(m.variance / 3000.0));

    const ResolventTable tab = solve_resolvent(k, Grid::make(n, n / 8192.0), 1.0);
    const double want = exact_count_variance(tab, 1.0, n) / n;
    CHECK(m.variance == doctest::Approx(want).epsilon(0.12));
    // and the exact value is already close to the stationary limit mu0/(1-m)^3
    CHECK(want == doctest::Approx(8.0).epsilon(0.10));
}

TEST_CASE("normalized count fluctuations look gaussian at moderate scale") {
    const KernelSpec k = KernelSpec::exponential(0.5, 1.0);
    const EmpiricalSample s = fclt_sample(k, 1.0, 400.0, 1.0, 800, 909090, 2);
    const ADResult ad = anderson_darling_normal(s.values);
    CHECK_FALSE(ad.reject_1pct);
    CHECK(ad.statistic < 1.035);
}

TEST_CASE("strongly critical fluctuation variance matches the exact quadrature") {
    const KernelSpec k = KernelSpec::mittag_leffler(0.5, 1.0);
    const double n = 60.0;
    const EmpiricalSample s = fclt_sample(k, 1.0, n, 1.0, 2500, 313131, 2);
    const SampleMoments m = sample_moments(s.values);
    const ResolventTable tab = solve_resolvent(k, Grid::make(n, n / 8192.0), 1.0);
    const double i2 = tab.i2r_at(n);
    const double want = n * n / (i2 * i2 * i2) * exact_count_variance(tab, 1.0, n);
    CHECK(m.variance == doctest::Approx(want).epsilon(0.15));
}

TEST_CASE("weakly critical moments approach the diffusion targets") {
    const KernelSpec k = KernelSpec::exponential(1.0, 1.0);
    // replicas sized so the O(1/n) mean offset dominates the W1 sampling noise
    const WeaklyCriticalReport rep =
        weakly_critical_report(k, 1.0, {25.0, 64.0}, 6000, 1.0, 515151, 2);
    CHECK(rep.sigma == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.target_lambda_mean == doctest::Approx(1.0));
    CHECK(rep.target_lambda_var == doctest::Approx(0.5));
    CHECK(rep.target_count_mean == doctest::Approx(0.5));
    REQUIRE(rep.rows.size() == 2);
    for (const auto& row : rep.rows) {
        CHECK(row.lambda_mean == doctest::Approx(1.0).epsilon(0.10));
        CHECK(row.lambda_var == doctest::Approx(0.5).epsilon(0.20));
        CHECK(row.count_mean == doctest::Approx(0.5 + 1.0 / row.n).epsilon(0.05));
        CHECK(row.w1_lambda > 0.0);
        CHECK(row.w1_count > 0.0);
    }
    // distances to the diffusion limit should not grow with n (noise allowance)
    CHECK(rep.rows[1].w1_lambda < rep.rows[0].w1_lambda + 0.02);
    CHECK(rep.rows[1].w1_count < rep.rows[0].w1_count + 0.02);
}

TEST_CASE("refined scaling data: exact-power heavy-tail family") {
    const ScalingSpec s = make_scaling_spec(KernelSpec::mittag_leffler(0.5, 1.0));
    CHECK(s.alpha == doctest::Approx(0.5));
    CHECK(s.c_i2r == doctest::Approx(1.0 / std::tgamma(2.5)).epsilon(1e-12));
    CHECK(std::isinf(s.rho));
    CHECK(s.gamma_exponent == doctest::Approx(0.25));
    CHECK(s.gamma1 == 0.0);
    CHECK(s.gamma2 == 0.0);
    CHECK(s.gamma3 == doctest::Approx(std::sqrt(1.0 / std::tgamma(2.5))).epsilon(1e-12));

    const ScalingSpec f = make_scaling_spec(KernelSpec::mittag_leffler(0.25, 2.0));
    CHECK(f.gamma_exponent == doctest::Approx(0.25));
    CHECK(f.gamma1 == doctest::Approx(std::tgamma(2.25) / 2.0).epsilon(1e-12));
    CHECK(f.gamma3 == 0.0);

    const ScalingSpec b = make_scaling_spec(KernelSpec::mittag_leffler(1.0 / 3.0, 1.0));
    CHECK(b.gamma1 == doctest::Approx(std::tgamma(7.0 / 3.0)).epsilon(1e-10));
    CHECK(b.gamma3 == doctest::Approx(std::sqrt(1.0 / std::tgamma(7.0 / 3.0))).epsilon(1e-10));

    CHECK_THROWS_AS(make_scaling_spec(KernelSpec::exponential(0.5, 1.0)), UnsupportedError);
}

TEST_CASE("refined scaling data: two-component and randomized heavy tails") {
    const ScalingSpec eq = make_scaling_spec(KernelSpec::mixed_mittag_leffler(0.4, 1.0, 0.4, 2.0));
    CHECK(eq.c_i2r == doctest::Approx(1.0 / (1.5 * std::tgamma(2.4))).epsilon(1e-12));
    CHECK(eq.rho == doctest::Approx(-0.4));
    CHECK(eq.gamma_exponent == doctest::Approx(0.3));
    CHECK(eq.gamma1 == 0.0);
    CHECK(eq.gamma2 == 0.0);
    CHECK(eq.gamma3 == doctest::Approx(std::sqrt(eq.c_i2r)).epsilon(1e-12));

    const ScalingSpec un = make_scaling_spec(KernelSpec::mixed_mittag_leffler(0.3, 1.0, 0.5, 1.0));
    CHECK(un.c_i2r == doctest::Approx(1.0 / std::tgamma(2.3)).epsilon(1e-12));
    CHECK(un.rho == doctest::Approx(-0.2));
    CHECK(un.gamma_exponent == doctest::Approx(0.2));
    CHECK(un.gamma1 == 0.0);
    CHECK(un.gamma3 == 0.0);
    const double want_aux = 0.2 * std::tgamma(2.3) / std::tgamma(2.1);
    CHECK(un.gamma2 == doctest::Approx(want_aux).epsilon(1e-10));

    const ScalingSpec cs =
        make_scaling_spec(KernelSpec::scaled_stable(0.5, XiDistribution::constant(2.0)));
    CHECK(cs.c_i2r == doctest::Approx(1.0 / (2.0 * std::tgamma(2.5))).epsilon(1e-12));
    CHECK(cs.gamma2 == 0.0);
    CHECK(cs.gamma3 == doctest::Approx(std::sqrt(cs.c_i2r)).epsilon(1e-12));

    const ScalingSpec tp = make_scaling_spec(
        KernelSpec::scaled_stable(0.25, XiDistribution::two_point(1.0, 3.0, 0.25)));
    CHECK(tp.c_i2r == doctest::Approx(1.0 / (1.5 * std::tgamma(2.25))).epsilon(1e-12));
    CHECK(tp.rho == doctest::Approx(-0.25));
    CHECK(tp.gamma_exponent == doctest::Approx(0.25));
    CHECK(tp.gamma1 == doctest::Approx(1.0 / tp.c_i2r).epsilon(1e-10));
    // A = rho * B where I2R = c t^{1+a}(1 + B t^{-a}); the Laplace expansion of
    // the xi mixture gives B = (E[xi^2]/(2 m^2) - 1) m Gamma(2+a)
    const double caux_tp = 0.25 * (1.0 - 3.0 / 4.5) * 1.5 * std::tgamma(2.25);
    CHECK(tp.gamma2 == doctest::Approx(caux_tp).epsilon(1e-10));
    CHECK(tp.gamma3 == 0.0);

    const ScalingSpec pa = make_scaling_spec(
        KernelSpec::scaled_stable(0.4, XiDistribution::pareto(1.0, 1.5)));
    CHECK(pa.rho == doctest::Approx(-0.2));
    CHECK(pa.gamma_exponent == doctest::Approx(0.2));
    CHECK(pa.gamma1 == 0.0);
    CHECK(pa.gamma3 == 0.0);
    const double mxi = 3.0;
    const double caux_pa = (mxi * 0.4 * 0.5 * std::tgamma(2.4) / (1.0 + 0.4 * 0.5)) *
                           std::tgamma(-0.5) * 1.0 /
                           (mxi * mxi * std::tgamma(1.2));
    CHECK(pa.gamma2 == doctest::Approx(caux_pa).epsilon(1e-10));
}

TEST_CASE("second-order expansion of the resolvent integral holds numerically") {
    // I2R(t) = c t^{1+a} (1 + A(t)/rho + o(A)); check the correction term on
    // the two-point randomized kernel.  The resolvent on [0, T] only sees phi
    // on [0, T], so a dense tabulation of phi is a faithful stand-in and
    // avoids re-running the stable quadrature inside the solver loop.
    const KernelSpec k =
        KernelSpec::scaled_stable(0.25, XiDistribution::two_point(1.0, 3.0, 0.25));
    const ScalingSpec s = make_scaling_spec(k);

    const double T = 400.0;
    std::vector<double> ts{0.0}, ps{0.0};  // stable density vanishes at the origin
    for (double t = 1e-4; t < T; t *= 1.05) {
        ts.push_back(t);
        ps.push_back(k.phi(t));
    }
    ts.push_back(T);
    ps.push_back(k.phi(T));
    double mass = 0.0;
    for (std::size_t i = 1; i < ts.size(); ++i)
        mass += 0.5 * (ps[i - 1] + ps[i]) * (ts[i] - ts[i - 1]);
    const KernelSpec proxy = KernelSpec::tabulated(std::move(ts), std::move(ps), mass);

    const ResolventTable tab = solve_resolvent(proxy, Grid::make(T, 0.05), 1.0);
    for (double t : {100.0, 400.0}) {
        const double lead = s.c_i2r * std::pow(t, 1.0 + s.alpha);
        const double rel = tab.i2r_at(t) / lead - 1.0;
        const double want = s.gamma2 / s.rho * std::pow(t, s.rho);
        CHECK(rel == doctest::Approx(want).epsilon(0.25));
    }
}

TEST_CASE("refined fluctuation sample is degenerate at t = 0 and centered correctly") {
    const KernelSpec k = KernelSpec::mittag_leffler(0.5, 1.0);
    const ScalingSpec spec = make_scaling_spec(k);
    const EmpiricalSample z = second_order_fclt_sample(k, 1.0, spec, 50.0, 0.0, 50, 1, 1);
    for (double v : z.values) CHECK(v == 0.0);

    const double n = 50.0;
    const EmpiricalSample s = second_order_fclt_sample(k, 1.0, spec, n, 1.0, 2000, 272727, 2);
    const SampleMoments m = sample_moments(s.values);
    // exact mean gamma(n) mu0 n / I2R(n) with the exact power-law integral
    const double i2 = std::pow(n, 1.5) / std::tgamma(2.5);
    const double exact_mean = spec.gamma(n) * 1.0 * n / i2;
    CHECK(std::abs(m.mean - exact_mean) < 4.0 * std::sqrt(m.variance / 2000.0));

    const ResolventTable tab = solve_resolvent(k, Grid::make(n, n / 8192.0), 1.0);
    const double want_var = spec.gamma(n) * spec.gamma(n) / (tab.i2r_at(n) * tab.i2r_at(n)) *
                            exact_count_variance(tab, 1.0, n);
    CHECK(m.variance == doctest::Approx(want_var).epsilon(0.15));
}

TEST_CASE("regular-variation probe recovers exact and perturbed power laws") {
    std::vector<double> probes;
    for (int i = 0; i < 10; ++i) probes.push_back(10.0 * std::pow(10.0, 0.3 * i));

    const RVProfile exact = estimate_rv_index(
        [](double t) { return 3.0 * std::pow(t, 1.5); }, probes);
    CHECK(exact.index == doctest::Approx(1.5).epsilon(1e-8));
    CHECK_FALSE(exact.has_auxiliary);

    std::vector<double> wide;
    for (int i = 0; i < 12; ++i) wide.push_back(100.0 * std::pow(10.0, i / 3.0));
    const RVProfile pert = estimate_rv_index(
        [](double t) { return std::pow(t, 0.5) * (1.0 + 2.0 * std::pow(t, -0.25)); }, wide);
    CHECK(pert.index == doctest::Approx(0.5).epsilon(0.04));
    CHECK(pert.has_auxiliary);
    CHECK(pert.second_order_rho == doctest::Approx(-0.25).epsilon(0.2));
}
