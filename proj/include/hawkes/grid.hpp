#pragma once
#include <cmath>
#include <cstdint>
#include <vector>

#include "hawkes/errors.hpp"

namespace hawkes {

// Uniform grid on [0, T].  The requested step is rounded so that the grid
// lands exactly on T: n = round(T/h_req), h = T/n.  Nodes are t_j = j*h,
// j = 0..n.
struct Grid {
    double T = 0.0;
    double h = 0.0;
    std::int64_t n = 0;

    static Grid make(double T, double h_req) {
        if (!(T > 0.0) || !std::isfinite(T))
            throw ValidationError("grid: horizon T must be positive and finite");
        if (!(h_req > 0.0) || !std::isfinite(h_req))
            throw ValidationError("grid: step h must be positive and finite");
        if (h_req > T)
            throw ValidationError("grid: step h must not exceed horizon T");
        std::int64_t n = std::llround(T / h_req);
        if (n < 1) n = 1;
        if (n > (std::int64_t(1) << 26))
            throw ValidationError("grid: too many nodes (T/h > 2^26)");
        Grid g;
        g.T = T;
        g.n = n;
        g.h = T / static_cast<double>(n);
        return g;
    }

    double t(std::int64_t j) const { return (j == n) ? T : h * static_cast<double>(j); }

    std::vector<double> nodes() const {
        std::vector<double> ts(static_cast<std::size_t>(n) + 1);
        for (std::int64_t j = 0; j <= n; ++j) ts[static_cast<std::size_t>(j)] = t(j);
        return ts;
    }
};

}
