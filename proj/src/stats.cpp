#include "hawkes/stats.hpp"

#include <algorithm>
#include <cmath>

#include "hawkes/errors.hpp"
#include "hawkes/metrics.hpp"

namespace hawkes {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

SampleMoments sample_moments(const std::vector<double>& xs) {
    if (xs.size() < 2) throw ValidationError("need at least two observations");
    SampleMoments m;
    m.n = xs.size();
    for (double x : xs) m.mean += x;
    m.mean /= static_cast<double>(m.n);
    for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
    m.variance /= static_cast<double>(m.n - 1);
    return m;
}

ADResult anderson_darling_normal(std::vector<double> xs) {
    if (xs.size() < 8) throw ValidationError("Anderson-Darling needs at least 8 observations");
    const SampleMoments m = sample_moments(xs);
    if (!(m.variance > 0.0)) throw ValidationError("sample is degenerate");
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    const double sd = std::sqrt(m.variance);

    double a2 = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double zi = (xs[i] - m.mean) / sd;
        const double zr = (xs[xs.size() - 1 - i] - m.mean) / sd;
        double Fi = normal_cdf(zi);
        double Fr = normal_cdf(zr);
        Fi = std::clamp(Fi, 1e-300, 1.0 - 1e-16);
        Fr = std::clamp(Fr, 1e-300, 1.0 - 1e-16);
        a2 += (2.0 * static_cast<double>(i) + 1.0) * (std::log(Fi) + std::log1p(-Fr));
    }
    a2 = -n - a2 / n;

    ADResult r;
    r.statistic = a2 * (1.0 + 0.75 / n + 2.25 / (n * n));
    r.reject_1pct = r.statistic > 1.035;
    return r;
}

double dkw_band(std::size_t n, double delta) {
    if (n == 0) throw ValidationError("n must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0,1)");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

KSTest ks_two_sample(const std::vector<double>& a, const std::vector<double>& b, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ValidationError("alpha must lie in (0,1)");
    KSTest t;
    t.statistic = kolmogorov_distance(a, b);
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    t.critical = c * std::sqrt((na + nb) / (na * nb));
    t.reject = t.statistic > t.critical;
    return t;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ValidationError("linear_fit needs two equally sized samples of length >= 2");
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw ValidationError("x values are all equal");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return f;
}

}
