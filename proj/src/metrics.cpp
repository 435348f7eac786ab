#include "hawkes/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "hawkes/errors.hpp"

namespace hawkes {

namespace {

void require_nonempty_finite(const std::vector<double>& v, const char* name) {
    if (v.empty()) throw ValidationError(std::string(name) + " must be nonempty");
    for (double x : v)
        if (!std::isfinite(x)) throw ValidationError(std::string(name) + " contains non-finite values");
}

}  // namespace

double kolmogorov_distance(std::vector<double> a, std::vector<double> b) {
    require_nonempty_finite(a, "sample a");
    require_nonempty_finite(b, "sample b");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double kolmogorov_distance(std::vector<double> a, const std::function<double(double)>& cdf) {
    require_nonempty_finite(a, "sample");
    if (!cdf) throw ValidationError("reference cdf must be callable");
    std::sort(a.begin(), a.end());
    const double n = static_cast<double>(a.size());
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double F = cdf(a[i]);
        if (!(F >= -1e-12 && F <= 1.0 + 1e-12) || !std::isfinite(F))
            throw ValidationError("reference cdf returned a value outside [0,1]");
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - F));
        d = std::max(d, std::abs(static_cast<double>(i) / n - F));
    }
    return d;
}

double wasserstein1(std::vector<double> a, std::vector<double> b) {
    require_nonempty_finite(a, "sample a");
    require_nonempty_finite(b, "sample b");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    if (a.size() == b.size()) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
        return s / static_cast<double>(a.size());
    }

    // integrate |Q_a(u) - Q_b(u)| du over the union of the rank breakpoints
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double s = 0.0;
    double u = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double ua = static_cast<double>(i + 1) / na;
        const double ub = static_cast<double>(j + 1) / nb;
        const double next = std::min(ua, ub);
        s += (next - u) * std::abs(a[i] - b[j]);
        u = next;
        if (ua <= next) ++i;
        if (ub <= next) ++j;
    }
    return s;
}

}
