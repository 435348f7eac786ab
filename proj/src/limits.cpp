#include "hawkes/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hawkes/errors.hpp"
#include "hawkes/metrics.hpp"
#include "hawkes/special.hpp"
#include "hawkes/stats.hpp"
#include "hawkes/threads.hpp"

namespace hawkes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double critical_tolerance(const KernelSpec& k) {
    return k.family() == KernelFamily::Tabulated ? 1e-3 : 1e-9;
}

// default resolution for internally solved resolvent tables
ResolventTable internal_table(const KernelSpec& k, double horizon, double mu0,
                              std::int64_t steps = 8192) {
    const Grid g = Grid::make(horizon, horizon / static_cast<double>(steps));
    return solve_resolvent(k, g, mu0);
}

// sup_{t in [0,T]} |S(t) - c(t)| for a right-continuous step path S jumping by
// `jump` at the (sorted, rescaled) event times and a nondecreasing curve c;
// between jumps the extrema sit at the interval ends.
double sup_step_vs_monotone(const std::vector<double>& events, double scale, double jump, double T,
                            const std::function<double(double)>& curve) {
    double sup = 0.0;
    double level = 0.0;
    double prev = 0.0;
    for (double tau : events) {
        const double u = tau / scale;
        if (u > T) break;
        // just before the jump: level held since prev, curve at its largest
        sup = std::max(sup, std::abs(level - curve(u)));
        level += jump;
        sup = std::max(sup, std::abs(level - curve(u)));
        prev = u;
    }
    (void)prev;
    sup = std::max(sup, std::abs(level - curve(T)));
    return sup;
}

// sup over a dense grid plus both one-sided limits at events, for deviation
// curves that are not monotone between jumps
double sup_step_vs_curve(const std::vector<double>& events, double scale, double jump, double T,
                         const std::function<double(double)>& curve, int dense = 512) {
    double sup = std::abs(curve(0.0));
    double level = 0.0;
    std::size_t next_ev = 0;
    for (int j = 0; j <= dense; ++j) {
        const double t = T * static_cast<double>(j) / dense;
        while (next_ev < events.size() && events[next_ev] / scale <= t) {
            const double u = events[next_ev] / scale;
            sup = std::max(sup, std::abs(level - curve(u)));
            level += jump;
            sup = std::max(sup, std::abs(level - curve(u)));
            ++next_ev;
        }
        sup = std::max(sup, std::abs(level - curve(t)));
    }
    return sup;
}

double count_up_to(const std::vector<double>& times, double t) {
    return static_cast<double>(std::upper_bound(times.begin(), times.end(), t) - times.begin());
}

struct MeanVar {
    double mean = 0.0, var = 0.0, stderr_mean = 0.0;
};

MeanVar mean_var(const std::vector<double>& xs) {
    const SampleMoments m = sample_moments(xs);
    MeanVar r;
    r.mean = m.mean;
    r.var = m.variance;
    r.stderr_mean = std::sqrt(m.variance / static_cast<double>(m.n));
    return r;
}

}  // namespace

std::string RegimeLabel::describe() const {
    char buf[160];
    switch (cls) {
        case RegimeClass::Subcritical:
            if (psi_class == PsiStarClass::Zero)
                std::snprintf(buf, sizeof buf, "subcritical (m=%g, psi*=0)", m);
            else if (psi_class == PsiStarClass::Finite)
                std::snprintf(buf, sizeof buf, "subcritical (m=%g, psi*=%g)", m, psi_star);
            else
                std::snprintf(buf, sizeof buf, "subcritical (m=%g, psi*=inf, tail index %g)", m,
                              alpha);
            break;
        case RegimeClass::WeaklyCritical:
            std::snprintf(buf, sizeof buf, "weakly critical (sigma=%g)", sigma);
            break;
        case RegimeClass::StronglyCritical:
            std::snprintf(buf, sizeof buf, "strongly critical (alpha=%g)", alpha);
            break;
    }
    return buf;
}

RegimeLabel classify_regime(const KernelSpec& k) {
    RegimeLabel lab;
    lab.m = k.branching_ratio();
    const double tol = critical_tolerance(k);

    if (lab.m > 1.0 + tol)
        throw RegimeError("supercritical kernel (m > 1): expected event counts explode "
                          "exponentially and no limit law applies; reduce the branching ratio");

    if (std::abs(lab.m - 1.0) <= tol) {
        const double sigma = k.dispersion_sigma();
        if (std::isfinite(sigma)) {
            lab.cls = RegimeClass::WeaklyCritical;
            lab.sigma = sigma;
            return lab;
        }
        lab.cls = RegimeClass::StronglyCritical;
        lab.sigma = kInf;
        switch (k.family()) {
            case KernelFamily::MittagLeffler:
            case KernelFamily::ScaledStable:
                lab.alpha = k.alpha();
                break;
            case KernelFamily::MixedMittagLeffler:
                lab.alpha = std::min(k.alpha(), k.alpha2());
                break;
            case KernelFamily::Tabulated: {
                // tail index from the log-log slope of the integrated tail
                const double t2 = k.tab_tmax();
                const double t1 = t2 / 16.0;
                const double p1 = k.big_phi(t1), p2 = k.big_phi(t2);
                if (!(p1 > 0.0) || !(p2 > 0.0))
                    throw NumericError("tabulated tail vanishes before the grid end; the tail "
                                       "index is indeterminate");
                lab.alpha = std::clamp(-(std::log(p2) - std::log(p1)) /
                                           (std::log(t2) - std::log(t1)),
                                       0.0, 1.0);
                break;
            }
            default:
                throw RegimeError("kernel family cannot be strongly critical");
        }
        return lab;
    }

    // subcritical: trichotomy of Psi_1(t)/sqrt(t)
    lab.cls = RegimeClass::Subcritical;
    if (lab.m == 0.0) {
        lab.psi_class = PsiStarClass::Zero;
        return lab;
    }
    switch (k.family()) {
        case KernelFamily::Exponential:
            lab.psi_class = PsiStarClass::Zero;  // light tail: Psi_1(inf) < inf
            lab.sigma = k.psi(kInf, 1);
            return lab;
        case KernelFamily::Tabulated: {
            const double t2 = k.tab_tmax();
            const double t1 = t2 / 16.0;
            const double q1 = k.psi(t1, 1) / std::sqrt(t1);
            const double q2 = k.psi(t2, 1) / std::sqrt(t2);
            if (!(q1 > 0.0)) {
                lab.psi_class = PsiStarClass::Zero;
                return lab;
            }
            const double r = q2 / q1;
            if (r < 0.8) {
                lab.psi_class = PsiStarClass::Zero;
            } else if (r > 1.25) {
                lab.psi_class = PsiStarClass::Infinite;
                const double slope = (std::log(k.psi(t2, 1)) - std::log(k.psi(t1, 1))) /
                                     (std::log(t2) - std::log(t1));
                lab.alpha = std::clamp(1.0 - slope, 0.0, 0.5);
            } else {
                lab.psi_class = PsiStarClass::Finite;
                lab.psi_star = q2;
            }
            return lab;
        }
        default:
            // remaining analytic families have m = 1 by construction
            throw RegimeError("kernel family cannot be subcritical");
    }
}

RescaledPath rescale(const EventPath& p, const KernelSpec& k, const ResolventTable& table,
                     double n, const RegimeLabel& label, const Grid& grid) {
    if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("scale n must be finite, positive");
    if (p.T + 1e-9 < n * grid.T)
        throw ValidationError("path horizon is shorter than n*T; simulate on horizon >= n*T");

    RescaledPath out;
    out.n = n;
    out.mode = label.cls;
    out.grid = grid;
    const std::size_t np = static_cast<std::size_t>(grid.n) + 1;

    switch (label.cls) {
        case RegimeClass::Subcritical: {
            out.N.resize(np);
            for (std::size_t j = 0; j < np; ++j)
                out.N[j] = count_up_to(p.times, n * grid.t(static_cast<std::int64_t>(j))) / n;
            break;
        }
        case RegimeClass::WeaklyCritical: {
            out.N.resize(np);
            out.Lambda.resize(np);
            out.I_Lambda.resize(np);
            out.Ntilde.resize(np);
            const double mu0 = table.mu0;
            for (std::size_t j = 0; j < np; ++j) {
                const double t = n * grid.t(static_cast<std::int64_t>(j));
                const PathStats s = path_statistics(p, k, mu0, t);
                out.N[j] = s.N / (n * n);
                out.I_Lambda[j] = s.I_Lambda / (n * n);
                out.Ntilde[j] = s.Ntilde / n;
                out.Lambda[j] = intensity_at(p, k, mu0, t) / n;
            }
            break;
        }
        case RegimeClass::StronglyCritical: {
            const double norm = table.i2r_at(n);
            if (!(norm > 0.0))
                throw ValidationError("resolvent table does not cover the scale n");
            out.N.resize(np);
            out.Ntilde.resize(np);
            const double mu0 = table.mu0;
            for (std::size_t j = 0; j < np; ++j) {
                const double t = n * grid.t(static_cast<std::int64_t>(j));
                const PathStats s = path_statistics(p, k, mu0, t);
                out.N[j] = s.N / norm;
                out.Ntilde[j] = s.Ntilde / std::sqrt(norm);
            }
            break;
        }
    }
    return out;
}

FLLNReport flln_report(const KernelSpec& k, double mu0, const std::vector<double>& ns,
                       std::size_t replicas, double T, std::uint64_t seed, int threads) {
    if (ns.empty()) throw ValidationError("need at least one scale n");
    for (double n : ns)
        if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("scales must be positive");
    if (replicas < 2) throw ValidationError("need at least two replicas");
    if (!(T > 0.0)) throw ValidationError("T must be positive");

    FLLNReport rep;
    rep.label = classify_regime(k);
    const double m = rep.label.m;

    if (rep.label.cls == RegimeClass::WeaklyCritical)
        throw RegimeError(
            "weakly critical kernels have no deterministic law-of-large-numbers curve: the "
            "rescaled count converges to the random integral of a squared-Bessel-type intensity; "
            "use weakly_critical_report instead");

    const bool heavy_sub = rep.label.cls == RegimeClass::Subcritical &&
                           rep.label.psi_class == PsiStarClass::Infinite;

    // strongly critical: one table covering the largest scale for I2R(n)
    ResolventTable table;
    if (rep.label.cls == RegimeClass::StronglyCritical) {
        const double nmax = *std::max_element(ns.begin(), ns.end());
        table = internal_table(k, nmax * std::max(1.0, T), mu0);
    }

    if (rep.label.cls == RegimeClass::Subcritical) {
        rep.statistic = heavy_sub ? "sup_t |(N(nt)/n - mu0 t/(1-m)) / Phi(n) + mu0 t^{1-a} / "
                                    "((1-a)(1-m)^2)|"
                                  : "sup_t |N(nt)/n - mu0 t/(1-m)|";
    } else {
        rep.statistic = "sup_t |N(nt)/I2R(n) - mu0 t^{a+1}|";
    }

    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
        const double n = ns[ni];
        if (k.family() == KernelFamily::Tabulated && heavy_sub && n > k.tab_tmax())
            throw ValidationError("scale n exceeds the tabulated grid; the integrated tail at n "
                                  "is unavailable");
        std::vector<double> sups(replicas, 0.0);
        for_each_replica(replicas, threads, [&](std::size_t r) {
            RngStream rng(seed, (static_cast<std::uint64_t>(ni) << 40) | r);
            const EventPath p = simulate_cluster(k, mu0, n * T, rng);
            double sup = 0.0;
            if (rep.label.cls == RegimeClass::StronglyCritical) {
                const double norm = table.i2r_at(n);
                const double a = rep.label.alpha;
                sup = sup_step_vs_monotone(p.times, n, 1.0 / norm, T, [&](double t) {
                    return mu0 * std::pow(t, a + 1.0);
                });
            } else if (!heavy_sub) {
                sup = sup_step_vs_monotone(p.times, n, 1.0 / n, T, [&](double t) {
                    return mu0 * t / (1.0 - m);
                });
            } else {
                const double phin = k.big_phi(n);
                const double a = rep.label.alpha;
                const double om = 1.0 - m;
                // deviation of the centered, tail-normalized count from the
                // degenerate second-order curve
                sup = sup_step_vs_curve(p.times, n, 1.0 / (n * phin), T, [&](double t) {
                    return mu0 * t / (om * phin) -
                           mu0 * std::pow(t, 1.0 - a) / ((1.0 - a) * om * om);
                });
            }
            sups[r] = sup;
        });
        const MeanVar mv = mean_var(sups);
        rep.rows.push_back({n, mv.mean, mv.stderr_mean, replicas});
    }
    return rep;
}

EmpiricalSample fclt_sample(const KernelSpec& k, double mu0, double n, double t,
                            std::size_t replicas, std::uint64_t seed, int threads) {
    if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("scale n must be finite, positive");
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("t must be finite, nonnegative");
    if (replicas == 0) throw ValidationError("need at least one replica");

    const RegimeLabel lab = classify_regime(k);
    if (lab.cls == RegimeClass::WeaklyCritical)
        throw RegimeError("weakly critical kernels normalize to a random (not Gaussian) limit; "
                          "use weakly_critical_report instead");

    EmpiricalSample out;
    out.values.assign(replicas, 0.0);
    if (t == 0.0) return out;  // the statistic is identically zero at t = 0

    const ResolventTable table = internal_table(k, n * std::max(1.0, t), mu0);
    const double mean = mean_count(table, mu0, n * t);
    double norm = 0.0;
    if (lab.cls == RegimeClass::Subcritical) {
        norm = 1.0 / std::sqrt(n);
    } else {
        const double i2 = table.i2r_at(n);
        norm = n / std::pow(i2, 1.5);
    }

    for_each_replica(replicas, threads, [&](std::size_t r) {
        RngStream rng(seed, r);
        const EventPath p = simulate_cluster(k, mu0, n * t, rng);
        out.values[r] = norm * (static_cast<double>(p.times.size()) - mean);
    });
    std::sort(out.values.begin(), out.values.end());
    return out;
}

WeaklyCriticalReport weakly_critical_report(const KernelSpec& k, double mu0,
                                            const std::vector<double>& ns, std::size_t replicas,
                                            double T, std::uint64_t seed, int threads,
                                            double window_delta) {
    if (ns.empty()) throw ValidationError("need at least one scale n");
    if (replicas < 2) throw ValidationError("need at least two replicas");
    if (!(T > 0.0)) throw ValidationError("T must be positive");
    if (!(window_delta > 0.0 && window_delta < T))
        throw ValidationError("window_delta must lie in (0, T)");

    const RegimeLabel lab = classify_regime(k);
    if (lab.cls != RegimeClass::WeaklyCritical)
        throw RegimeError("the square-root-diffusion limit requires a weakly critical kernel "
                          "(m = 1 with finite dispersion); got " +
                          lab.describe());

    WeaklyCriticalReport rep;
    rep.sigma = lab.sigma;
    rep.target_lambda_mean = mu0 * T / rep.sigma;
    rep.target_lambda_var = mu0 * T * T / (2.0 * std::pow(rep.sigma, 3.0));
    rep.target_count_mean = mu0 * T * T / (2.0 * rep.sigma);
    rep.window_delta = window_delta;

    // one shared reference batch of the limiting diffusion (endpoint, integral)
    std::vector<double> ref_end(replicas), ref_int(replicas);
    for_each_replica(replicas, threads, [&](std::size_t r) {
        RngStream rng(seed, 0xC18ull ^ (0x9E3779B97F4A7C15ull + r));
        const CIREndpoint e = simulate_cir_endpoint(mu0, rep.sigma, T, 400, rng);
        ref_end[r] = e.value;
        ref_int[r] = e.integral;
    });

    for (std::size_t ni = 0; ni < ns.size(); ++ni) {
        const double n = ns[ni];
        std::vector<double> lam(replicas), cnt(replicas);
        for_each_replica(replicas, threads, [&](std::size_t r) {
            RngStream rng(seed, ((ni + 1ull) << 40) | r);
            const EventPath p = simulate_cluster(k, mu0, n * T, rng);
            const PathStats hi = path_statistics(p, k, mu0, n * T);
            const PathStats lo = path_statistics(p, k, mu0, n * (T - window_delta));
            // time-average of the rescaled intensity Lambda(n s)/n over the
            // window [T - delta, T]: the substitution brings one n from the
            // normalization and one from the window length
            lam[r] = (hi.I_Lambda - lo.I_Lambda) / (n * n * window_delta);
            cnt[r] = hi.N / (n * n);
        });
        const MeanVar ml = mean_var(lam);
        const MeanVar mc = mean_var(cnt);
        WeaklyCriticalRow row;
        row.n = n;
        row.lambda_mean = ml.mean;
        row.lambda_var = ml.var;
        row.count_mean = mc.mean;
        row.count_var = mc.var;
        row.w1_lambda = wasserstein1(lam, ref_end);
        row.w1_count = wasserstein1(cnt, ref_int);
        rep.rows.push_back(row);
    }
    return rep;
}

double ScalingSpec::gamma(double n) const { return std::pow(n, gamma_exponent); }

double ScalingSpec::aux(double n) const {
    if (!std::isfinite(rho)) return 0.0;
    return c_aux * std::pow(n, rho);
}

double ScalingSpec::target_mean(double mu0, double t) const {
    double v = gamma1 * t;
    if (gamma2 != 0.0 && std::isfinite(rho) && t > 0.0)
        v += gamma2 * std::pow(t, alpha + 1.0) * (std::pow(t, rho) - 1.0) / rho;
    return mu0 * v;
}

double ScalingSpec::target_variance(double mu0, double t) const {
    if (gamma3 == 0.0 || t == 0.0) return 0.0;
    // int_0^t (t-s)^{2a} s^a ds = t^{3a+1} B(2a+1, a+1)
    const double beta_val = std::tgamma(2.0 * alpha + 1.0) * std::tgamma(alpha + 1.0) /
                            std::tgamma(3.0 * alpha + 2.0);
    return gamma3 * gamma3 * mu0 * (alpha + 1.0) * std::pow(t, 3.0 * alpha + 1.0) * beta_val;
}

ScalingSpec make_scaling_spec(const KernelSpec& k) {
    ScalingSpec s;
    switch (k.family()) {
        case KernelFamily::MittagLeffler: {
            s.alpha = k.alpha();
            s.c_i2r = k.beta() / std::tgamma(s.alpha + 2.0);
            s.rho = -kInf;  // the power law is exact; no second-order term
            s.c_aux = 0.0;
            break;
        }
        case KernelFamily::MixedMittagLeffler: {
            const double a1 = k.alpha(), a2 = k.alpha2();
            const double b1 = k.beta(), b2 = k.beta2();
            s.alpha = a1;
            const double cb = 1.0 / b1 + (a1 == a2 ? 1.0 / b2 : 0.0);
            s.c_i2r = 1.0 / (cb * std::tgamma(a1 + 2.0));
            if (a1 == a2) {
                s.rho = -a1;
                s.c_aux = a1 * std::tgamma(2.0 + a1) / (b1 + b2);
            } else {
                s.rho = a1 - a2;
                s.c_aux = b1 * (a2 - a1) * std::tgamma(2.0 + a1) /
                          (b2 * std::tgamma(2.0 + 2.0 * a1 - a2));
            }
            break;
        }
        case KernelFamily::ScaledStable: {
            const double a = k.alpha();
            const XiDistribution& xi = k.xi();
            const double mxi = xi.mean();
            s.alpha = a;
            s.c_i2r = 1.0 / (mxi * std::tgamma(2.0 + a));
            if (xi.kind == XiDistribution::Kind::Pareto) {
                const double bt = xi.tail_beta;
                s.rho = a * (1.0 - bt);
                // A(t) ~ [m a (bt-1) G(2+a) / (1+a(2-bt))] * G(1-bt) xm^bt /
                //         (m^2 G(1+2a-a bt)) * t^{a(1-bt)}
                const double c3 = std::tgamma(1.0 - bt) * std::pow(xi.xm, bt) /
                                  (mxi * mxi * std::tgamma(1.0 + 2.0 * a - a * bt));
                s.c_aux = mxi * a * (bt - 1.0) * std::tgamma(2.0 + a) /
                          (1.0 + a * (2.0 - bt)) * c3;
            } else {
                const double var = xi.second_moment() - mxi * mxi;
                if (var == mxi * mxi) {
                    s.rho = -kInf;
                    s.c_aux = 0.0;
                } else {
                    s.rho = -a;
                    s.c_aux = (1.0 + a) * (-a) * std::tgamma(1.0 + a) * (var - mxi * mxi) /
                              (2.0 * mxi);
                }
            }
            break;
        }
        default:
            throw UnsupportedError(
                "refined scaling data exists in closed form only for the heavy-tailed analytic "
                "kernel families");
    }

    double e = std::min((1.0 - s.alpha) / 2.0, s.alpha);
    if (std::isfinite(s.rho) && s.c_aux != 0.0) e = std::min(e, -s.rho);
    s.gamma_exponent = e;
    const double eps = 1e-12;
    s.gamma1 = std::abs(e - s.alpha) < eps ? 1.0 / s.c_i2r : 0.0;
    s.gamma2 = (std::isfinite(s.rho) && std::abs(e + s.rho) < eps) ? s.c_aux : 0.0;
    s.gamma3 = std::abs(e - (1.0 - s.alpha) / 2.0) < eps ? std::sqrt(s.c_i2r) : 0.0;
    return s;
}

EmpiricalSample second_order_fclt_sample(const KernelSpec& k, double mu0, const ScalingSpec& spec,
                                         double n, double t, std::size_t replicas,
                                         std::uint64_t seed, int threads) {
    if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("scale n must be finite, positive");
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("t must be finite, nonnegative");
    if (replicas == 0) throw ValidationError("need at least one replica");
    const RegimeLabel lab = classify_regime(k);
    if (lab.cls != RegimeClass::StronglyCritical)
        throw RegimeError("refined scaling limits require a strongly critical kernel; got " +
                          lab.describe());

    EmpiricalSample out;
    out.values.assign(replicas, 0.0);
    if (t == 0.0) return out;

    const ResolventTable table = internal_table(k, n * std::max(1.0, t), mu0);
    const double i2 = table.i2r_at(n);
    const double g = spec.gamma(n);

    for_each_replica(replicas, threads, [&](std::size_t r) {
        RngStream rng(seed, 0x5ECull ^ ((0x51ull << 40) | r));
        const EventPath p = simulate_cluster(k, mu0, n * t, rng);
        const double count = static_cast<double>(p.times.size());
        out.values[r] = g * (count / i2 - mu0 * std::pow(t, spec.alpha + 1.0));
    });
    std::sort(out.values.begin(), out.values.end());
    return out;
}

RVProfile estimate_rv_index(const std::function<double(double)>& F,
                            const std::vector<double>& probes) {
    if (!F) throw ValidationError("F must be callable");
    if (probes.size() < 2) throw ValidationError("need at least two probe scales");
    std::vector<double> ps = probes;
    std::sort(ps.begin(), ps.end());
    std::vector<double> xs, ys;
    for (double p : ps) {
        if (!(p > 0.0) || !std::isfinite(p)) throw ValidationError("probes must be positive");
        const double v = F(p);
        if (!(v > 0.0) || !std::isfinite(v))
            throw ValidationError("F must be positive and finite at every probe");
        xs.push_back(std::log(p));
        ys.push_back(std::log(v));
    }

    RVProfile prof;
    const LinearFit fit = linear_fit(xs, ys);
    prof.index = fit.slope;
    prof.second_order_rho = -kInf;
    prof.has_auxiliary = false;

    if (ps.size() < 5) return prof;

    // successive slope differences cancel the first-order power and leave the
    // second-order correction ~ c rho (rho-1) t^rho (up to log-spacing factors)
    std::vector<double> dx, dy;
    for (std::size_t i = 0; i + 2 < xs.size(); ++i) {
        const double s1 = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
        const double s2 = (ys[i + 2] - ys[i + 1]) / (xs[i + 2] - xs[i + 1]);
        const double d = s2 - s1;
        if (std::abs(d) < 1e-11 * (1.0 + std::abs(fit.slope))) continue;
        dx.push_back(0.5 * (xs[i] + xs[i + 2]));
        dy.push_back(std::log(std::abs(d)));
    }
    if (dx.size() < 3) return prof;  // residuals at noise level: pure power law

    const LinearFit dfit = linear_fit(dx, dy);
    if (dfit.r2 < 0.9 || !(dfit.slope < -0.01) || dfit.slope < -5.0) return prof;
    const double rho = dfit.slope;

    // refine with the three-parameter model y = a + b x + c e^{rho x}
    // (linear least squares in a, b, c)
    double S[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double rhs[3] = {0, 0, 0};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double z[3] = {1.0, xs[i], std::exp(rho * xs[i])};
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) S[a][b] += z[a] * z[b];
            rhs[a] += z[a] * ys[i];
        }
    }
    // Gaussian elimination on the 3x3 normal equations
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(S[r][col]) > std::abs(S[piv][col])) piv = r;
        if (std::abs(S[piv][col]) < 1e-30) return prof;
        std::swap(S[piv], S[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = S[r][col] / S[col][col];
            for (int c2 = col; c2 < 3; ++c2) S[r][c2] -= f * S[col][c2];
            rhs[r] -= f * rhs[col];
        }
    }
    const double b_ref = rhs[1] / S[1][1];
    const double c_ref = rhs[2] / S[2][2];

    prof.index = b_ref;
    prof.second_order_rho = rho;
    prof.has_auxiliary = true;
    prof.auxiliary_const = c_ref;
    return prof;
}

}
