#include "hawkes/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "hawkes/csvio.hpp"
#include "hawkes/errors.hpp"

namespace hawkes {

namespace {

void check_sim_args(double mu0, double T) {
    if (!(mu0 >= 0.0) || !std::isfinite(mu0))
        throw ValidationError("mu0 must be finite and nonnegative");
    if (!(T > 0.0) || !std::isfinite(T)) throw ValidationError("T must be finite and positive");
}

}  // namespace

EventPath simulate_cluster(const KernelSpec& k, double mu0, double T, RngStream& rng,
                           std::int64_t event_cap) {
    check_sim_args(mu0, T);
    if (event_cap <= 0) throw ValidationError("event_cap must be positive");
    const double m = k.branching_ratio();

    EventPath out;
    out.T = T;

    // min-heap on birth time so output is chronological and reproducible
    std::priority_queue<double, std::vector<double>, std::greater<double>> frontier;

    const std::int64_t n_imm = rng.poisson(mu0 * T);
    for (std::int64_t i = 0; i < n_imm; ++i) frontier.push(T * (1.0 - rng.uniform()));

    std::int64_t produced = n_imm;
    while (!frontier.empty()) {
        const double t = frontier.top();
        frontier.pop();
        out.times.push_back(t);
        if (m > 0.0) {
            const std::int64_t kids = rng.poisson(m);
            for (std::int64_t c = 0; c < kids; ++c) {
                ++produced;
                const double birth = t + k.sample_offspring_delay(rng);
                if (birth <= T) frontier.push(birth);
            }
            if (produced > event_cap) {
                out.truncated = true;
                // drain what was already scheduled inside [0,T]
                while (!frontier.empty()) {
                    out.times.push_back(frontier.top());
                    frontier.pop();
                }
                std::sort(out.times.begin(), out.times.end());
                return out;
            }
        }
    }
    return out;
}

EventPath simulate_thinning(const KernelSpec& k, double mu0, double T, RngStream& rng) {
    check_sim_args(mu0, T);
    if (!k.monotone_bounded())
        throw UnsupportedError(
            "thinning requires a bounded non-increasing kernel; use simulate_cluster");
    if (k.family() == KernelFamily::Tabulated && T > k.tab_tmax())
        throw UnsupportedError("tabulated kernel is undefined past its grid; shorten T");

    EventPath out;
    out.T = T;
    std::vector<double>& ev = out.times;

    if (mu0 == 0.0) return out;  // no immigrants, no events

    double t = 0.0;
    // dominating rate: intensity value just after the most recent accept/reject
    double M = mu0;
    while (true) {
        t += rng.exponential(M);
        if (t > T) break;
        double lam = mu0;
        for (auto it = ev.rbegin(); it != ev.rend(); ++it) lam += k.phi(t - *it);
        if (rng.uniform() * M <= lam) {
            ev.push_back(t);
            lam += k.phi_at_zero();
        }
        // phi non-increasing => future intensity <= current accepted/rejected one
        M = lam;
    }
    return out;
}

PathStats path_statistics(const EventPath& p, const KernelSpec& k, double mu0, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("t must be finite and nonnegative");
    const double m = k.branching_ratio();
    PathStats s;
    s.I_Lambda = mu0 * t;
    for (double tau : p.times) {
        if (tau > t) break;  // times sorted
        s.N += 1.0;
        s.I_Lambda += m - k.big_phi(t - tau);
    }
    s.Ntilde = s.N - s.I_Lambda;
    return s;
}

double intensity_at(const EventPath& p, const KernelSpec& k, double mu0, double t) {
    double lam = mu0;
    for (double tau : p.times) {
        if (tau >= t) break;
        lam += k.phi(t - tau);
    }
    return lam;
}

CIRPath simulate_cir(double mu0, double sigma, double T, std::int64_t steps_per_unit,
                     RngStream& rng) {
    check_sim_args(mu0, T);
    if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");
    if (steps_per_unit <= 0) throw ValidationError("steps_per_unit must be positive");

    CIRPath out;
    out.grid = Grid::make(T, 1.0 / static_cast<double>(steps_per_unit));
    const double h = out.grid.h;
    const double sh = std::sqrt(h);
    out.values.resize(static_cast<std::size_t>(out.grid.n) + 1);

    double x = 0.0;  // raw iterate, may dip below zero; the stored path is x+
    out.values[0] = 0.0;
    for (std::int64_t j = 0; j < out.grid.n; ++j) {
        const double xp = std::max(x, 0.0);
        x += (mu0 / sigma) * h + std::sqrt(xp) / sigma * sh * rng.normal();
        out.values[static_cast<std::size_t>(j) + 1] = std::max(x, 0.0);
    }
    return out;
}

CIREndpoint simulate_cir_endpoint(double mu0, double sigma, double T,
                                  std::int64_t steps_per_unit, RngStream& rng) {
    check_sim_args(mu0, T);
    if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");
    if (steps_per_unit <= 0) throw ValidationError("steps_per_unit must be positive");

    const Grid g = Grid::make(T, 1.0 / static_cast<double>(steps_per_unit));
    const double h = g.h;
    const double sh = std::sqrt(h);
    double x = 0.0;
    CIREndpoint out;
    for (std::int64_t j = 0; j < g.n; ++j) {
        const double xp = std::max(x, 0.0);
        out.integral += xp * h;  // left-point rule
        x += (mu0 / sigma) * h + std::sqrt(xp) / sigma * sh * rng.normal();
    }
    out.value = std::max(x, 0.0);
    return out;
}

GaussianLimitKind GaussianLimitKind::subcritical(double m, double psi_star) {
    if (!(m >= 0.0 && m < 1.0)) throw ValidationError("subcritical limit needs m in [0,1)");
    if (!(psi_star >= 0.0) || !std::isfinite(psi_star))
        throw ValidationError("psi_star must be finite and nonnegative");
    GaussianLimitKind kind;
    kind.cls = Class::Subcritical;
    kind.m = m;
    kind.psi_star = psi_star;
    return kind;
}

GaussianLimitKind GaussianLimitKind::strongly_critical(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw ValidationError("strongly critical limit needs alpha in (0, 1]");
    GaussianLimitKind kind;
    kind.cls = Class::StronglyCritical;
    kind.alpha = alpha;
    return kind;
}

GaussianLimitPath simulate_limit_gaussian(const GaussianLimitKind& kind, double mu0,
                                          const Grid& grid, RngStream& rng) {
    if (!(mu0 >= 0.0) || !std::isfinite(mu0))
        throw ValidationError("mu0 must be finite and nonnegative");
    GaussianLimitPath out;
    out.grid = grid;
    const std::size_t np = static_cast<std::size_t>(grid.n) + 1;
    out.values.assign(np, 0.0);
    const double h = grid.h;
    const double sh = std::sqrt(h);

    if (kind.cls == GaussianLimitKind::Class::Subcritical) {
        const double om = 1.0 - kind.m;
        const double c1 = std::sqrt(mu0 / (om * om * om));
        const double c2 = mu0 * kind.psi_star / (om * om);
        double b = 0.0;
        for (std::size_t j = 1; j < np; ++j) {
            b += sh * rng.normal();
            out.values[j] = c1 * b - c2 * std::sqrt(grid.t(static_cast<std::int64_t>(j)));
        }
        return out;
    }

    // strongly critical: left-point Riemann sum of (t-s)^alpha s^{alpha/2} dB(s)
    const double a = kind.alpha;
    const double c = std::sqrt(mu0 * (a + 1.0));
    std::vector<double> db(np, 0.0), sa(np, 0.0);
    for (std::size_t kk = 0; kk + 1 < np; ++kk) {
        db[kk] = sh * rng.normal();
        sa[kk] = std::pow(grid.t(static_cast<std::int64_t>(kk)), a / 2.0);
    }
    for (std::size_t j = 1; j < np; ++j) {
        const double tj = grid.t(static_cast<std::int64_t>(j));
        double acc = 0.0;
        for (std::size_t kk = 0; kk < j; ++kk)
            acc += std::pow(tj - grid.t(static_cast<std::int64_t>(kk)), a) * sa[kk] * db[kk];
        out.values[j] = c * acc;
    }
    return out;
}

void write_events_csv(const EventPath& p, const std::string& path) {
    CsvWriter w(path);
    w.header({"index", "time"});
    for (std::size_t i = 0; i < p.times.size(); ++i)
        w.row({std::to_string(i), format_double(p.times[i])});
}

void write_batch_stats_csv(const std::vector<EventPath>& paths, const KernelSpec& k, double mu0,
                           const std::vector<double>& ts, const std::string& path) {
    CsvWriter w(path);
    w.header({"replica", "t", "N", "I_Lambda", "Ntilde"});
    for (std::size_t r = 0; r < paths.size(); ++r) {
        for (double t : ts) {
            const PathStats s = path_statistics(paths[r], k, mu0, t);
            w.row({std::to_string(r), format_double(t), format_double(s.N),
                   format_double(s.I_Lambda), format_double(s.Ntilde)});
        }
    }
}

}
