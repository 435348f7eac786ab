#include "hawkes/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hawkes/csvio.hpp"
#include "hawkes/errors.hpp"
#include "hawkes/special.hpp"

namespace hawkes {

namespace {
constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}
}

// ---------------------------------------------------------------- XiDistribution

XiDistribution XiDistribution::constant(double v) {
    require(v > 0.0 && std::isfinite(v), "xi constant: value must be positive");
    XiDistribution d;
    d.kind = Kind::Constant;
    d.value = v;
    return d;
}

XiDistribution XiDistribution::two_point(double lo, double hi, double p_hi) {
    require(lo > 0.0 && hi >= lo && std::isfinite(hi), "xi two-point: need 0 < lo <= hi");
    require(p_hi >= 0.0 && p_hi <= 1.0, "xi two-point: p_hi must lie in [0,1]");
    XiDistribution d;
    d.kind = Kind::TwoPoint;
    d.lo = lo;
    d.hi = hi;
    d.p_hi = p_hi;
    return d;
}

XiDistribution XiDistribution::pareto(double xm, double tail_beta) {
    require(xm > 0.0 && std::isfinite(xm), "xi pareto: xm must be positive");
    require(tail_beta > 1.0 && tail_beta < 2.0, "xi pareto: tail index must lie in (1,2)");
    XiDistribution d;
    d.kind = Kind::Pareto;
    d.xm = xm;
    d.tail_beta = tail_beta;
    return d;
}

double XiDistribution::mean() const {
    switch (kind) {
        case Kind::Constant: return value;
        case Kind::TwoPoint: return (1.0 - p_hi) * lo + p_hi * hi;
        case Kind::Pareto: return tail_beta * xm / (tail_beta - 1.0);
    }
    return 0.0;
}

double XiDistribution::second_moment() const {
    switch (kind) {
        case Kind::Constant: return value * value;
        case Kind::TwoPoint: return (1.0 - p_hi) * lo * lo + p_hi * hi * hi;
        case Kind::Pareto: return kInf;  // tail index < 2
    }
    return 0.0;
}

double XiDistribution::sample(RngStream& rng) const {
    switch (kind) {
        case Kind::Constant: return value;
        case Kind::TwoPoint: return rng.uniform() < p_hi ? hi : lo;
        case Kind::Pareto: return xm * std::pow(rng.uniform(), -1.0 / tail_beta);
    }
    return 0.0;
}

double XiDistribution::laplace(double c) const {
    if (c == 0.0) return 1.0;
    switch (kind) {
        case Kind::Constant: return std::exp(-c * value);
        case Kind::TwoPoint:
            return (1.0 - p_hi) * std::exp(-c * lo) + p_hi * std::exp(-c * hi);
        case Kind::Pareto: {
            // substitute v = (xm/xi)^beta ~ U(0,1)
            auto f = [&](double v) {
                if (v <= 0.0) return 0.0;
                return std::exp(-c * xm * std::pow(v, -1.0 / tail_beta));
            };
            return adaptive_simpson(f, 0.0, 1.0, 1e-12);
        }
    }
    return 0.0;
}

// --------------------------------------------------------------------- factories

KernelSpec KernelSpec::exponential(double m, double beta) {
    require(m >= 0.0 && std::isfinite(m), "exponential kernel: m must be >= 0");
    require(beta > 0.0 && std::isfinite(beta), "exponential kernel: beta must be > 0");
    KernelSpec k;
    k.family_ = KernelFamily::Exponential;
    k.m_ = m;
    k.beta_ = beta;
    return k;
}

KernelSpec KernelSpec::zero() { return exponential(0.0, 1.0); }

KernelSpec KernelSpec::mittag_leffler(double alpha, double beta) {
    require(alpha > 0.0 && alpha < 1.0, "ML kernel: alpha must lie in (0,1)");
    require(beta > 0.0 && std::isfinite(beta), "ML kernel: beta must be > 0");
    KernelSpec k;
    k.family_ = KernelFamily::MittagLeffler;
    k.m_ = 1.0;
    k.alpha_ = alpha;
    k.beta_ = beta;
    return k;
}

KernelSpec KernelSpec::mixed_mittag_leffler(double alpha1, double beta1, double alpha2,
                                            double beta2) {
    require(alpha1 > 0.0 && alpha1 < 1.0 && alpha2 > 0.0 && alpha2 < 1.0,
            "mixed ML kernel: alphas must lie in (0,1)");
    require(alpha1 <= alpha2, "mixed ML kernel: requires alpha1 <= alpha2");
    require(beta1 > 0.0 && beta2 > 0.0, "mixed ML kernel: betas must be > 0");
    KernelSpec k;
    k.family_ = KernelFamily::MixedMittagLeffler;
    k.m_ = 1.0;
    k.alpha_ = alpha1;
    k.beta_ = beta1;
    k.alpha2_ = alpha2;
    k.beta2_ = beta2;
    return k;
}

KernelSpec KernelSpec::scaled_stable(double alpha, XiDistribution xi) {
    require(alpha > 0.0 && alpha < 1.0, "scaled-stable kernel: alpha must lie in (0,1)");
    KernelSpec k;
    k.family_ = KernelFamily::ScaledStable;
    k.m_ = 1.0;
    k.alpha_ = alpha;
    k.xi_ = xi;
    return k;
}

KernelSpec KernelSpec::tabulated(std::vector<double> ts, std::vector<double> phis,
                                 double declared_m, bool build_sampler) {
    require(ts.size() == phis.size(), "tabulated kernel: t and phi lengths differ");
    require(ts.size() >= 2, "tabulated kernel: need at least two nodes");
    require(ts.front() == 0.0, "tabulated kernel: grid must start at t = 0");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        require(std::isfinite(ts[i]) && std::isfinite(phis[i]),
                "tabulated kernel: values must be finite");
        require(phis[i] >= 0.0, "tabulated kernel: phi must be non-negative");
        if (i) require(ts[i] > ts[i - 1], "tabulated kernel: t must be strictly increasing");
    }
    auto tab = std::make_shared<TabData>();
    tab->t = std::move(ts);
    tab->phi = std::move(phis);
    const std::size_t n = tab->t.size();
    tab->cum_mass.assign(n, 0.0);
    tab->cum_tmass.assign(n, 0.0);
    tab->nonincreasing = true;
    for (std::size_t i = 1; i < n; ++i) {
        const double dt = tab->t[i] - tab->t[i - 1];
        const double p0 = tab->phi[i - 1], p1 = tab->phi[i];
        tab->cum_mass[i] = tab->cum_mass[i - 1] + 0.5 * dt * (p0 + p1);
        // int s*phi(s) over the cell, phi linear
        const double a = tab->t[i - 1], b = tab->t[i];
        const double slope = (p1 - p0) / dt;
        auto anti = [&](double s) {
            const double c0 = p0 - slope * a;
            return c0 * s * s / 2.0 + slope * s * s * s / 3.0;
        };
        tab->cum_tmass[i] = tab->cum_tmass[i - 1] + anti(b) - anti(a);
        if (p1 > p0 + 1e-12 * std::max(1.0, p0)) tab->nonincreasing = false;
    }
    const double mass = tab->cum_mass.back();
    require(declared_m > 0.0 && std::isfinite(declared_m),
            "tabulated kernel: declared mass must be positive");
    if (std::abs(mass - declared_m) > 5e-3 * std::max(1.0, declared_m))
        throw ValidationError("tabulated kernel: interpolant mass " + std::to_string(mass) +
                              " disagrees with declared m " + std::to_string(declared_m));
    if (build_sampler) {
        tab->sampler = true;
        tab->sample_cdf.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) tab->sample_cdf[i] = tab->cum_mass[i] / mass;
    }
    KernelSpec k;
    k.family_ = KernelFamily::Tabulated;
    k.m_ = mass;  // internally consistent mass of the interpolant
    k.tab_ = std::move(tab);
    return k;
}

KernelSpec KernelSpec::tabulated_from_csv(const std::string& path, double declared_m,
                                          bool build_sampler) {
    auto cols = read_csv_columns(path, {"t", "phi"});
    return tabulated(std::move(cols[0]), std::move(cols[1]), declared_m, build_sampler);
}

// -------------------------------------------------------------------- accessors

double KernelSpec::phi_at_zero() const {
    switch (family_) {
        case KernelFamily::Exponential: return m_ * beta_;
        case KernelFamily::MittagLeffler: return kInf;  // t^{alpha-1} blow-up
        case KernelFamily::MixedMittagLeffler:
            return (alpha_ + alpha2_ < 1.0) ? kInf : (alpha_ + alpha2_ == 1.0 ? phi(1e-12) : 0.0);
        case KernelFamily::ScaledStable: return 0.0;  // essential decay at 0
        case KernelFamily::Tabulated: return tab_->phi.front();
    }
    return 0.0;
}

double KernelSpec::phi(double t) const {
    if (t < 0.0) return 0.0;
    switch (family_) {
        case KernelFamily::Exponential:
            return m_ * beta_ * std::exp(-beta_ * t);
        case KernelFamily::MittagLeffler: {
            if (t == 0.0) return kInf;
            const double x = -beta_ * std::pow(t, alpha_);
            return beta_ * std::pow(t, alpha_ - 1.0) * ml_function(alpha_, alpha_, x);
        }
        case KernelFamily::MixedMittagLeffler: {
            if (t == 0.0) return phi_at_zero();
            // f = f1 * f2; split the convolution at t/2 and absorb each endpoint
            // singularity with the substitution s = v^{1/alpha}
            auto f1 = [&](double s) {
                return beta_ * std::pow(s, alpha_ - 1.0) *
                       ml_function(alpha_, alpha_, -beta_ * std::pow(s, alpha_));
            };
            auto f2 = [&](double s) {
                return beta2_ * std::pow(s, alpha2_ - 1.0) *
                       ml_function(alpha2_, alpha2_, -beta2_ * std::pow(s, alpha2_));
            };
            auto left = [&](double v) {  // s = v^{1/alpha2} near 0, weight f2
                const double s = std::pow(v, 1.0 / alpha2_);
                return (beta2_ / alpha2_) * ml_function(alpha2_, alpha2_, -beta2_ * v) *
                       f1(t - s);
            };
            auto right = [&](double v) {  // u = v^{1/alpha1} near 0, weight f1
                const double u = std::pow(v, 1.0 / alpha_);
                return (beta_ / alpha_) * ml_function(alpha_, alpha_, -beta_ * v) *
                       f2(t - u);
            };
            const double vl = std::pow(0.5 * t, alpha2_);
            const double vr = std::pow(0.5 * t, alpha_);
            return adaptive_simpson(left, 0.0, vl, 1e-11) +
                   adaptive_simpson(right, 0.0, vr, 1e-11);
        }
        case KernelFamily::ScaledStable: {
            if (t == 0.0) return 0.0;
            auto one = [&](double xi) {
                const double s = std::pow(xi, 1.0 / alpha_);
                return one_sided_stable_pdf(alpha_, t / s) / s;
            };
            switch (xi_.kind) {
                case XiDistribution::Kind::Constant: return one(xi_.value);
                case XiDistribution::Kind::TwoPoint:
                    return (1.0 - xi_.p_hi) * one(xi_.lo) + xi_.p_hi * one(xi_.hi);
                case XiDistribution::Kind::Pareto: {
                    auto f = [&](double v) {
                        if (v <= 0.0) return 0.0;
                        return one(xi_.xm * std::pow(v, -1.0 / xi_.tail_beta));
                    };
                    return adaptive_simpson(f, 0.0, 1.0, 1e-11);
                }
            }
            return 0.0;
        }
        case KernelFamily::Tabulated:
            return tab_phi(t);
    }
    return 0.0;
}

double KernelSpec::tab_phi(double t) const {
    const auto& ts = tab_->t;
    if (t > ts.back())
        throw ValidationError("tabulated kernel: phi query beyond the grid end");
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    if (it == ts.begin()) return tab_->phi.front();
    std::size_t i = static_cast<std::size_t>(it - ts.begin());
    if (i >= ts.size()) i = ts.size() - 1;
    const double t0 = ts[i - 1], t1 = ts[i];
    const double w = (t - t0) / (t1 - t0);
    return tab_->phi[i - 1] * (1.0 - w) + tab_->phi[i] * w;
}

double KernelSpec::big_phi(double t) const {
    if (t < 0.0) throw ValidationError("big_phi: t must be >= 0");
    if (std::isinf(t)) return 0.0;
    switch (family_) {
        case KernelFamily::Exponential:
            return m_ * std::exp(-beta_ * t);
        case KernelFamily::MittagLeffler:
            return ml_function(alpha_, 1.0, -beta_ * std::pow(t, alpha_));
        case KernelFamily::MixedMittagLeffler:
            return mixed_big_phi(t);
        case KernelFamily::ScaledStable:
            return stable_big_phi(t);
        case KernelFamily::Tabulated:
            return tab_big_phi(t);
    }
    return 0.0;
}

double KernelSpec::mixed_big_phi(double t) const {
    if (t == 0.0) return 1.0;
    // P(tau1 + tau2 > t) = 1 - int_0^t F1(t-s) f2(s) ds
    auto bigF1 = [&](double u) {
        return 1.0 - ml_function(alpha_, 1.0, -beta_ * std::pow(u, alpha_));
    };
    auto f2 = [&](double s) {
        return beta2_ * std::pow(s, alpha2_ - 1.0) *
               ml_function(alpha2_, alpha2_, -beta2_ * std::pow(s, alpha2_));
    };
    // left half: substitution s = v^{1/alpha2} removes the f2 singularity
    auto left = [&](double v) {
        const double s = std::pow(v, 1.0 / alpha2_);
        return (beta2_ / alpha2_) * ml_function(alpha2_, alpha2_, -beta2_ * v) *
               bigF1(t - s);
    };
    // right half: u = t - s in [0, t/2]; soften the F1 ~ u^{alpha1} corner
    auto right = [&](double w) {
        const double u = w * w;
        return 2.0 * w * bigF1(u) * f2(t - u);
    };
    const double cdf = adaptive_simpson(left, 0.0, std::pow(0.5 * t, alpha2_), 1e-11) +
                       adaptive_simpson(right, 0.0, std::sqrt(0.5 * t), 1e-11);
    return std::min(1.0, std::max(0.0, 1.0 - cdf));
}

double KernelSpec::stable_big_phi(double t) const {
    if (t == 0.0) return 1.0;
    auto one = [&](double xi) {
        return 1.0 - one_sided_stable_cdf(alpha_, t / std::pow(xi, 1.0 / alpha_));
    };
    switch (xi_.kind) {
        case XiDistribution::Kind::Constant: return one(xi_.value);
        case XiDistribution::Kind::TwoPoint:
            return (1.0 - xi_.p_hi) * one(xi_.lo) + xi_.p_hi * one(xi_.hi);
        case XiDistribution::Kind::Pareto: {
            auto f = [&](double v) {
                if (v <= 0.0) return 1.0;  // xi -> infinity: survival -> 1
                return one(xi_.xm * std::pow(v, -1.0 / xi_.tail_beta));
            };
            return adaptive_simpson(f, 0.0, 1.0, 1e-10);
        }
    }
    return 0.0;
}

double KernelSpec::tab_big_phi(double t) const {
    const auto& ts = tab_->t;
    if (t >= ts.back()) return 0.0;  // interpolant vanishes beyond the grid
    const double total = tab_->cum_mass.back();
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    std::size_t i = static_cast<std::size_t>(it - ts.begin());
    if (i == 0) return total;
    const double t0 = ts[i - 1], t1 = ts[i];
    const double p0 = tab_->phi[i - 1], p1 = tab_->phi[i];
    const double w = (t - t0) / (t1 - t0);
    const double pt = p0 * (1.0 - w) + p1 * w;
    const double prefix = tab_->cum_mass[i - 1] + 0.5 * (t - t0) * (p0 + pt);
    return total - prefix;
}

double KernelSpec::psi(double t, int order) const {
    if (order < 0) throw ValidationError("psi: order must be >= 0");
    if (!(t >= 0.0)) throw ValidationError("psi: t must be >= 0");
    if (order == 0) return m_ - big_phi(std::isinf(t) ? kInf : t);
    if (std::isinf(t)) {
        switch (family_) {
            case KernelFamily::Exponential: {
                double v = m_;
                for (int j = 1; j <= order; ++j) v *= static_cast<double>(j) / beta_;
                return v;
            }
            case KernelFamily::Tabulated:
                return psi(tab_->t.back(), order);
            default:
                return kInf;  // Phi ~ t^{-alpha} tails: all moments k >= 1 diverge
        }
    }
    if (t == 0.0) return 0.0;
    if (family_ == KernelFamily::Tabulated) {
        // exact per-cell integral of s^k * (linear phi)
        const auto& ts = tab_->t;
        const double tq = std::min(t, ts.back());
        double acc = 0.0;
        for (std::size_t i = 1; i < ts.size() && ts[i - 1] < tq; ++i) {
            const double a = ts[i - 1], b = std::min(ts[i], tq);
            const double slope = (tab_->phi[i] - tab_->phi[i - 1]) / (ts[i] - ts[i - 1]);
            const double c0 = tab_->phi[i - 1] - slope * a;
            const double k1 = order + 1, k2 = order + 2;
            acc += c0 * (std::pow(b, k1) - std::pow(a, k1)) / k1 +
                   slope * (std::pow(b, k2) - std::pow(a, k2)) / k2;
        }
        return acc;
    }
    // integration by parts avoids quadrature against the phi singularity:
    // Psi_k(t) = -t^k Phi(t) + k int_0^t s^{k-1} Phi(s) ds
    auto g = [&](double s) {
        return (s <= 0.0) ? 0.0 : std::pow(s, order - 1) * big_phi(s);
    };
    const double integral = adaptive_simpson(g, 0.0, t, 1e-10 * std::pow(t, order));
    return -std::pow(t, order) * big_phi(t) + order * integral;
}

double KernelSpec::dispersion_sigma() const {
    switch (family_) {
        case KernelFamily::Exponential:
            return m_ / beta_;
        case KernelFamily::MittagLeffler:
        case KernelFamily::MixedMittagLeffler:
        case KernelFamily::ScaledStable:
            return kInf;
        case KernelFamily::Tabulated: {
            // decide finiteness from the last decade of the grid: clear growth
            // means divergence; negligible growth plus an exhausted tail mass
            // means the integral has converged; anything else is undecidable
            const double tmax = tab_->t.back();
            const double t0 = tmax / 10.0;
            const double full = psi(tmax, 1);
            const double grow = full - psi(t0, 1);
            if (full <= 0.0)
                throw NumericError("dispersion: tabulated kernel has no mass");
            if (grow > 0.01 * full) return kInf;
            if (big_phi(t0) <= 1e-4 * m_) return full;
            throw NumericError(
                "dispersion: tabulated grid too short to decide convergence "
                "(tail mass not exhausted); extend the grid");
        }
    }
    return kInf;
}

double KernelSpec::laplace_big_phi(double lambda) const {
    if (!(lambda > 0.0)) throw ValidationError("laplace_big_phi: lambda must be > 0");
    switch (family_) {
        case KernelFamily::Exponential:
            return m_ * lambda / (beta_ + lambda);
        case KernelFamily::MittagLeffler:
            return std::pow(lambda, alpha_) / (beta_ + std::pow(lambda, alpha_));
        case KernelFamily::MixedMittagLeffler: {
            const double f1 = beta_ / (beta_ + std::pow(lambda, alpha_));
            const double f2 = beta2_ / (beta2_ + std::pow(lambda, alpha2_));
            return 1.0 - f1 * f2;
        }
        case KernelFamily::ScaledStable:
            return 1.0 - xi_.laplace(std::pow(lambda, alpha_));
        case KernelFamily::Tabulated:
            return tab_laplace(lambda);
    }
    return 0.0;
}

double KernelSpec::tab_laplace(double lambda) const {
    // exact per cell: int (1 - e^{-lambda s}) (p0 + slope (s-a)) ds
    const auto& ts = tab_->t;
    double acc = 0.0;
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const double a = ts[i - 1], b = ts[i];
        const double slope = (tab_->phi[i] - tab_->phi[i - 1]) / (b - a);
        const double c0 = tab_->phi[i - 1] - slope * a;
        auto lin = [&](double s) { return c0 * s + slope * s * s / 2.0; };
        // antiderivative of e^{-ls}(c0 + slope s)
        auto expo = [&](double s) {
            return -std::exp(-lambda * s) *
                   ((c0 + slope * s) / lambda + slope / (lambda * lambda));
        };
        acc += (lin(b) - lin(a)) - (expo(b) - expo(a));
    }
    return acc;
}

// ---------------------------------------------------------------------- sampling

namespace {
double ml_delay(double alpha, double beta, RngStream& rng) {
    // delay with survival function E_alpha(-beta t^alpha):
    // beta^{-1/alpha} * Z * E^{1/alpha}, Z one-sided stable, E ~ Exp(1)
    const double z = sample_one_sided_stable(alpha, rng);
    const double e = rng.exponential(1.0);
    return std::pow(beta, -1.0 / alpha) * z * std::pow(e, 1.0 / alpha);
}
}

double KernelSpec::sample_offspring_delay(RngStream& rng) const {
    if (!(m_ > 0.0))
        throw ValidationError("sample_offspring_delay: kernel has zero mass");
    switch (family_) {
        case KernelFamily::Exponential:
            return rng.exponential(beta_);
        case KernelFamily::MittagLeffler:
            return ml_delay(alpha_, beta_, rng);
        case KernelFamily::MixedMittagLeffler:
            return ml_delay(alpha_, beta_, rng) + ml_delay(alpha2_, beta2_, rng);
        case KernelFamily::ScaledStable: {
            const double z = sample_one_sided_stable(alpha_, rng);
            return z * std::pow(xi_.sample(rng), 1.0 / alpha_);
        }
        case KernelFamily::Tabulated:
            return tab_sample(rng);
    }
    return 0.0;
}

double KernelSpec::tab_sample(RngStream& rng) const {
    if (!tab_->sampler)
        throw UnsupportedError(
            "tabulated kernel: sampling requires the CDF inversion table "
            "(construct with build_sampler = true)");
    const double u = rng.uniform();
    const auto& cdf = tab_->sample_cdf;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t i = static_cast<std::size_t>(it - cdf.begin());
    if (i == 0) i = 1;
    if (i >= cdf.size()) i = cdf.size() - 1;
    const double a = tab_->t[i - 1], b = tab_->t[i];
    const double p0 = tab_->phi[i - 1], p1 = tab_->phi[i];
    const double total = tab_->cum_mass.back();
    const double need = u * total - tab_->cum_mass[i - 1];  // mass inside the cell
    const double slope = (p1 - p0) / (b - a);
    // solve p0 x + slope x^2/2 = need for x in [0, b-a]
    double x;
    if (std::abs(slope) < 1e-14 * std::max(1.0, p0)) {
        x = (p0 > 0.0) ? need / p0 : 0.0;
    } else {
        const double disc = p0 * p0 + 2.0 * slope * need;
        x = (-p0 + std::sqrt(std::max(0.0, disc))) / slope;
    }
    x = std::min(std::max(x, 0.0), b - a);
    return a + x;
}

// ------------------------------------------------------------------------- misc

bool KernelSpec::monotone_bounded() const {
    switch (family_) {
        case KernelFamily::Exponential: return true;
        case KernelFamily::Tabulated: return tab_->nonincreasing;
        default: return false;
    }
}

RVProfile KernelSpec::rv_profile() const {
    RVProfile p;
    switch (family_) {
        case KernelFamily::Exponential:
            p.index = -kInf;  // lighter than any power
            return p;
        case KernelFamily::MittagLeffler: {
            // Phi(t) = E_alpha(-beta t^alpha) ~ t^{-alpha}/(beta Gamma(1-alpha));
            // next nonvanishing series term supplies the second order
            p.index = -alpha_;
            for (int k = 2; k <= 3; ++k) {
                const double rg = rgamma(1.0 - k * alpha_);
                if (rg != 0.0) {
                    p.second_order_rho = -(k - 1) * alpha_;
                    p.auxiliary_const = -rg * std::tgamma(1.0 - alpha_) *
                                        std::pow(beta_, -(k - 1.0)) *
                                        ((k % 2 == 0) ? 1.0 : -1.0);
                    p.has_auxiliary = true;
                    break;
                }
            }
            return p;
        }
        case KernelFamily::MixedMittagLeffler: {
            p.index = -alpha_;
            if (alpha_ < alpha2_) {
                // Phi ~ C1 t^{-a1} + C2 t^{-a2}: relative correction t^{a1-a2}
                p.second_order_rho = alpha_ - alpha2_;
                const double c1 = rgamma(1.0 - alpha_) / beta_;
                const double c2 = rgamma(1.0 - alpha2_) / beta2_;
                p.auxiliary_const = c2 / c1;
                p.has_auxiliary = true;
            }
            return p;
        }
        case KernelFamily::ScaledStable: {
            p.index = -alpha_;
            if (xi_.kind == XiDistribution::Kind::Pareto) {
                // heavy xi: correction index alpha(1 - tail_beta)
                p.second_order_rho = alpha_ * (1.0 - xi_.tail_beta);
                p.has_auxiliary = false;  // constant not assembled here
            }
            return p;
        }
        case KernelFamily::Tabulated:
            throw UnsupportedError("rv_profile: no analytic tail for tabulated kernels");
    }
    return p;
}

double KernelSpec::tab_tmax() const {
    if (family_ != KernelFamily::Tabulated)
        throw ValidationError("tab_tmax: kernel is not tabulated");
    return tab_->t.back();
}

std::string KernelSpec::describe() const {
    std::ostringstream os;
    switch (family_) {
        case KernelFamily::Exponential:
            os << "exponential(m=" << m_ << ", beta=" << beta_ << ")";
            break;
        case KernelFamily::MittagLeffler:
            os << "mittag-leffler(alpha=" << alpha_ << ", beta=" << beta_ << ")";
            break;
        case KernelFamily::MixedMittagLeffler:
            os << "mixed-mittag-leffler(alpha1=" << alpha_ << ", beta1=" << beta_
               << ", alpha2=" << alpha2_ << ", beta2=" << beta2_ << ")";
            break;
        case KernelFamily::ScaledStable:
            os << "scaled-stable(alpha=" << alpha_ << ")";
            break;
        case KernelFamily::Tabulated:
            os << "tabulated(" << tab_->t.size() << " nodes, m=" << m_ << ")";
            break;
    }
    return os.str();
}

double one_sided_stable_pdf(double alpha, double x) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw ValidationError("one-sided stable: alpha must lie in (0, 1)");
    if (!(x > 0.0)) return 0.0;
    const double q = alpha / (1.0 - alpha);
    const double c = std::pow(x, -q);
    auto f = [&](double u) -> double {
        if (u <= 0.0) {
            const double a0 = std::pow(alpha, q) * (1.0 - alpha);
            return a0 * std::exp(-a0 * c);
        }
        if (u >= kPi) return 0.0;
        const double a = kanter_a(u, alpha);
        const double w = a * c;
        return (w > 700.0) ? 0.0 : a * std::exp(-w);
    };
    const double integral = adaptive_simpson(f, 0.0, kPi, 1e-13);
    return integral / kPi * q / x * c;
}

}
