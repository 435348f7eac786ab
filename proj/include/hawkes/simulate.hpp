#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "hawkes/grid.hpp"
#include "hawkes/kernels.hpp"
#include "hawkes/rng.hpp"

namespace hawkes {

struct EventPath {
    double T = 0.0;
    std::vector<double> times;  // sorted, in (0, T]
    bool truncated = false;
};

// Poisson cluster construction: immigrants ~ Poisson(mu0 T) uniform on (0,T],
// every event spawns Poisson(m) children with delays ~ phi/m.  Expansion is
// breadth-first in birth time (a min-heap), so the returned times are sorted
// and the draw sequence is reproducible.  Children past T are discarded only
// after being generated.  When event_cap fires the path is returned with
// truncated = true.
EventPath simulate_cluster(const KernelSpec& k, double mu0, double T, RngStream& rng,
                           std::int64_t event_cap = 10'000'000);

// Ogata thinning; requires a bounded non-increasing phi so that the intensity
// just after an event dominates the future intensity.
EventPath simulate_thinning(const KernelSpec& k, double mu0, double T, RngStream& rng);

struct PathStats {
    double N = 0.0;
    double I_Lambda = 0.0;
    double Ntilde = 0.0;
};

// N(t), the closed-form compensator mu0 t + sum_{tau <= t} (m - Phi(t - tau)),
// and the martingale N - I_Lambda.
PathStats path_statistics(const EventPath& p, const KernelSpec& k, double mu0, double t);

// intensity mu0 + sum_{tau < t} phi(t - tau) (left limit)
double intensity_at(const EventPath& p, const KernelSpec& k, double mu0, double t);

struct CIRPath {
    Grid grid;
    std::vector<double> values;  // Lambda*(t_j) >= 0
};

// dLambda* = (mu0/sigma) dt + (1/sigma) sqrt(Lambda*) dB by full-truncation
// Euler with steps_per_unit steps per unit time.
CIRPath simulate_cir(double mu0, double sigma, double T, std::int64_t steps_per_unit,
                     RngStream& rng);

struct CIREndpoint {
    double value = 0.0;     // Lambda*(T)
    double integral = 0.0;  // int_0^T Lambda* (left-point sum)
};

// same scheme without storing the path (for Monte Carlo loops)
CIREndpoint simulate_cir_endpoint(double mu0, double sigma, double T,
                                  std::int64_t steps_per_unit, RngStream& rng);

struct GaussianLimitKind {
    enum class Class { Subcritical, StronglyCritical };
    Class cls = Class::Subcritical;
    double m = 0.0;         // subcritical
    double psi_star = 0.0;  // subcritical
    double alpha = 0.0;     // strongly critical

    static GaussianLimitKind subcritical(double m, double psi_star);
    static GaussianLimitKind strongly_critical(double alpha);
};

struct GaussianLimitPath {
    Grid grid;
    std::vector<double> values;
};

// Subcritical: sqrt(mu0 (1-m)^{-3}) B(t) - mu0 psi* (1-m)^{-2} sqrt(t).
// Strongly critical: sqrt(mu0 (alpha+1)) int_0^t (t-s)^alpha s^{alpha/2} dB(s),
// discretized by left-point Riemann sums on the grid.
GaussianLimitPath simulate_limit_gaussian(const GaussianLimitKind& kind, double mu0,
                                          const Grid& grid, RngStream& rng);

void write_events_csv(const EventPath& p, const std::string& path);  // index,time

void write_batch_stats_csv(const std::vector<EventPath>& paths, const KernelSpec& k,
                           double mu0, const std::vector<double>& ts,
                           const std::string& path);  // replica,t,N,I_Lambda,Ntilde

}
