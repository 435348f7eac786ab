#pragma once
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hawkes/rng.hpp"

namespace hawkes {

enum class KernelFamily {
    Exponential,         // phi(t) = m * beta * exp(-beta t)
    MittagLeffler,       // phi(t) = beta t^{a-1} E_{a,a}(-beta t^a), mass 1
    MixedMittagLeffler,  // density of the sum of two independent ML delays, mass 1
    ScaledStable,        // density of xi^{1/a} Z with Z one-sided stable(a), mass 1
    Tabulated,           // piecewise-linear phi from (t, phi) samples
};

// Law of the positive scale factor xi in the ScaledStable family.
struct XiDistribution {
    enum class Kind { Constant, TwoPoint, Pareto };
    Kind kind = Kind::Constant;
    double value = 1.0;                        // Constant
    double lo = 0.0, hi = 0.0, p_hi = 0.0;     // TwoPoint: P(xi=hi)=p_hi
    double xm = 0.0, tail_beta = 0.0;          // Pareto: P(xi>x) = (xm/x)^beta, x >= xm

    static XiDistribution constant(double v);
    static XiDistribution two_point(double lo, double hi, double p_hi);
    static XiDistribution pareto(double xm, double tail_beta);  // tail_beta in (1,2)

    double mean() const;
    // E[xi^2]; infinity for Pareto with tail_beta <= 2
    double second_moment() const;
    double sample(RngStream& rng) const;
    // E[exp(-c xi)], c >= 0
    double laplace(double c) const;
};

// First- and second-order regular-variation profile of a tail function,
// F(t) ~ C t^index (1 + A(t)), A(t) ~ a_const t^rho.
struct RVProfile {
    double index = 0.0;
    double second_order_rho = -std::numeric_limits<double>::infinity();
    bool has_auxiliary = false;
    double auxiliary_const = 0.0;  // A(t) = auxiliary_const * t^second_order_rho
    double auxiliary(double t) const {
        return has_auxiliary ? auxiliary_const * std::pow(t, second_order_rho) : 0.0;
    }
};

class KernelSpec {
  public:
    static KernelSpec exponential(double m, double beta);
    static KernelSpec mittag_leffler(double alpha, double beta);
    // convention alpha1 <= alpha2
    static KernelSpec mixed_mittag_leffler(double alpha1, double beta1, double alpha2,
                                           double beta2);
    static KernelSpec scaled_stable(double alpha, XiDistribution xi);
    static KernelSpec tabulated(std::vector<double> ts, std::vector<double> phis,
                                double declared_m, bool build_sampler = false);
    static KernelSpec tabulated_from_csv(const std::string& path, double declared_m,
                                         bool build_sampler = false);
    // phi == 0 (pure Poisson); modeled as Exponential with m = 0
    static KernelSpec zero();

    KernelFamily family() const { return family_; }
    double branching_ratio() const { return m_; }

    // parameter accessors (valid per family; see fields)
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double alpha2() const { return alpha2_; }
    double beta2() const { return beta2_; }
    const XiDistribution& xi() const { return xi_; }

    double phi(double t) const;       // density value; 0 for t < 0
    double phi_at_zero() const;       // phi(0+), may be +infinity
    double big_phi(double t) const;   // integrated tail, Phi(t) = int_t^inf phi
    double psi(double t, int order) const;  // Psi_k(t) = int_0^t s^k phi(s) ds; t may be inf
    double dispersion_sigma() const;  // Psi_1(inf), may be +infinity
    double laplace_big_phi(double lambda) const;  // int (1 - e^{-lambda t}) phi dt
    double sample_offspring_delay(RngStream& rng) const;

    // true when phi is non-increasing with a finite value at 0 (thinning support)
    bool monotone_bounded() const;
    // tail profile of Phi where known analytically
    RVProfile rv_profile() const;

    double tab_tmax() const;  // Tabulated grid end (error for other families)
    std::string describe() const;

  private:
    KernelSpec() = default;

    KernelFamily family_ = KernelFamily::Exponential;
    double m_ = 0.0;
    double alpha_ = 0.0, beta_ = 0.0;
    double alpha2_ = 0.0, beta2_ = 0.0;
    XiDistribution xi_;

    // Tabulated data; cum_* are per-node prefix integrals of the interpolant
    struct TabData {
        std::vector<double> t, phi;
        std::vector<double> cum_mass;    // int_0^{t_i} phi
        std::vector<double> cum_tmass;   // int_0^{t_i} s phi(s) ds
        std::vector<double> sample_cdf;  // normalized cum_mass when sampler enabled
        bool sampler = false;
        bool nonincreasing = false;
    };
    std::shared_ptr<const TabData> tab_;

    double tab_phi(double t) const;
    double tab_big_phi(double t) const;
    double tab_laplace(double lambda) const;
    double tab_sample(RngStream& rng) const;
    double mixed_big_phi(double t) const;
    double stable_big_phi(double t) const;
};

// density of the one-sided stable(alpha) law with Laplace transform e^{-lambda^alpha}
double one_sided_stable_pdf(double alpha, double x);

}
