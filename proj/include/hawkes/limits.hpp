#pragma once
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hawkes/grid.hpp"
#include "hawkes/kernels.hpp"
#include "hawkes/simulate.hpp"
#include "hawkes/volterra.hpp"

namespace hawkes {

enum class RegimeClass { Subcritical, WeaklyCritical, StronglyCritical };

enum class PsiStarClass { Zero, Finite, Infinite };

struct RegimeLabel {
    RegimeClass cls = RegimeClass::Subcritical;
    double m = 0.0;

    // subcritical: limit of Psi_1(t)/sqrt(t)
    PsiStarClass psi_class = PsiStarClass::Zero;
    double psi_star = 0.0;  // finite case only

    double sigma = 0.0;  // weakly critical: Psi_1(inf)
    double alpha = 0.0;  // tail index: strongly critical, or subcritical with psi* = inf

    std::string describe() const;
};

// Analytic classification where closed forms exist; tabulated kernels are
// probed on their grid (dispersion first, then the Psi_1(t)/sqrt(t) trend).
RegimeLabel classify_regime(const KernelSpec& k);

struct RescaledPath {
    double n = 1.0;
    RegimeClass mode = RegimeClass::Subcritical;
    Grid grid;  // rescaled time
    // subcritical: N(nt)/n.  critical: N(nt)/n^2.  strongly critical: N(nt)/I2R(n).
    std::vector<double> N;
    std::vector<double> Lambda;    // critical: Lambda(nt)/n
    std::vector<double> I_Lambda;  // critical: I_Lambda(nt)/n^2
    std::vector<double> Ntilde;    // critical: Ntilde(nt)/n; strongly critical: /sqrt(I2R(n))
};

RescaledPath rescale(const EventPath& p, const KernelSpec& k, const ResolventTable& table,
                     double n, const RegimeLabel& label, const Grid& grid);

struct FLLNRow {
    double n = 0.0;
    double mean_sup_deviation = 0.0;
    double std_error = 0.0;
    std::size_t replicas = 0;
};

struct FLLNReport {
    RegimeLabel label;
    std::string statistic;  // human-readable description of the deviation measured
    std::vector<FLLNRow> rows;
};

// Monte Carlo E[sup_{t<=T} |rescaled path - limit curve|] per scale n.
FLLNReport flln_report(const KernelSpec& k, double mu0, const std::vector<double>& ns,
                       std::size_t replicas, double T, std::uint64_t seed, int threads);

struct EmpiricalSample {
    std::vector<double> values;  // sorted ascending
};

// Replicas of the regime-appropriate normalized statistic at rescaled time t:
// subcritical (N(nt) - E[N(nt)])/sqrt(n); strongly critical
// n |I2R(n)|^{-3/2} (N(nt) - E[N(nt)]).  E[N(nt)] is always the deterministic
// first-moment value, never a Monte Carlo estimate.
EmpiricalSample fclt_sample(const KernelSpec& k, double mu0, double n, double t,
                            std::size_t replicas, std::uint64_t seed, int threads);

struct WeaklyCriticalRow {
    double n = 0.0;
    double lambda_mean = 0.0;  // windowed estimate of Lambda^{(n)}(T)
    double lambda_var = 0.0;
    double count_mean = 0.0;  // N^{(n)}(T) = N(nT)/n^2
    double count_var = 0.0;
    double w1_lambda = 0.0;  // W1( Lambda^{(n)}(T), Lambda*(T) )
    double w1_count = 0.0;   // W1( N^{(n)}(T), int_0^T Lambda* )
};

struct WeaklyCriticalReport {
    double sigma = 0.0;
    double target_lambda_mean = 0.0;  // mu0 T / sigma
    double target_lambda_var = 0.0;   // mu0 T^2 / (2 sigma^3)
    double target_count_mean = 0.0;   // mu0 T^2 / (2 sigma)
    double window_delta = 0.0;
    std::vector<WeaklyCriticalRow> rows;
};

// Moment and distance table against the square-root-diffusion limit; the
// reference samples are drawn once and shared across scales so the distance
// trend is not masked by reference noise.
WeaklyCriticalReport weakly_critical_report(const KernelSpec& k, double mu0,
                                            const std::vector<double>& ns, std::size_t replicas,
                                            double T, std::uint64_t seed, int threads,
                                            double window_delta = 0.01);

struct ScalingSpec {
    double alpha = 0.0;  // I2R grows like c_i2r * t^{alpha+1}
    double c_i2r = 0.0;
    double rho = 0.0;    // second-order index (-inf when the power law is exact)
    double c_aux = 0.0;  // auxiliary function A(t) = c_aux * t^rho
    double gamma_exponent = 0.0;
    double gamma1 = 0.0, gamma2 = 0.0, gamma3 = 0.0;

    double gamma(double n) const;
    double aux(double n) const;
    // limit mean mu0 (gamma1 t + gamma2 t^{alpha+1} (t^rho - 1)/rho)
    double target_mean(double mu0, double t) const;
    // limit variance gamma3^2 mu0 (alpha+1) int_0^t (t-s)^{2 alpha} s^alpha ds
    double target_variance(double mu0, double t) const;
};

// Assembles the refined scaling data from closed forms (Mittag-Leffler,
// mixed Mittag-Leffler, scaled-stable).  Other kernels: unsupported.
ScalingSpec make_scaling_spec(const KernelSpec& k);

// Replicas of gamma(n) (N(nt)/I2R(n) - mu0 t^{alpha+1}).
EmpiricalSample second_order_fclt_sample(const KernelSpec& k, double mu0, const ScalingSpec& spec,
                                         double n, double t, std::size_t replicas,
                                         std::uint64_t seed, int threads);

// Least-squares log-log slope over the probe scales; a second-order residual
// fit fills the rho/auxiliary fields when the residual trend is clean.
RVProfile estimate_rv_index(const std::function<double(double)>& F,
                            const std::vector<double>& probes);

}
