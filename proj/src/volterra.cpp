#include "hawkes/volterra.hpp"

#include <algorithm>
#include <cmath>

#include "hawkes/csvio.hpp"
#include "hawkes/errors.hpp"
#include "hawkes/special.hpp"

namespace hawkes {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

// small-t power exponent e with phi(t) ~ c t^e, for the singular families
double small_t_exponent(const KernelSpec& k) {
    switch (k.family()) {
        case KernelFamily::MittagLeffler: return k.alpha() - 1.0;
        case KernelFamily::MixedMittagLeffler: return k.alpha() + k.alpha2() - 1.0;
        default: return 0.0;
    }
}

double interp_nodes(const Grid& g, const std::vector<double>& v, double t,
                    const char* what) {
    if (t < -1e-12 || t > g.T * (1.0 + 1e-12) + 1e-12)
        throw ValidationError(std::string(what) + ": query beyond the table horizon");
    t = std::min(std::max(t, 0.0), g.T);
    const double x = t / g.h;
    std::int64_t j = static_cast<std::int64_t>(x);
    if (j >= g.n) j = g.n - 1;
    const double w = x - static_cast<double>(j);
    const std::size_t uj = static_cast<std::size_t>(j);
    return v[uj] * (1.0 - w) + v[uj + 1] * w;
}
}

KernelWeights make_kernel_weights(const KernelSpec& k, const Grid& grid) {
    KernelWeights w;
    w.grid = grid;
    w.m = k.branching_ratio();
    const std::size_t n = static_cast<std::size_t>(grid.n);
    w.singular = !std::isfinite(k.phi_at_zero());

    std::vector<double> big(n + 1);
    for (std::size_t j = 0; j <= n; ++j) big[j] = k.big_phi(grid.t(static_cast<std::int64_t>(j)));

    w.iphi.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) w.iphi[j] = w.m - big[j];

    w.phi_nodes.resize(n + 1);
    w.phi_nodes[0] = k.phi_at_zero();
    for (std::size_t j = 1; j <= n; ++j) w.phi_nodes[j] = k.phi(grid.t(static_cast<std::int64_t>(j)));

    w.a.resize(n);
    w.b.resize(n);
    const double h = grid.h;
    for (std::size_t kk = 0; kk < n; ++kk) {
        const double t0 = grid.t(static_cast<std::int64_t>(kk));
        const double t1 = grid.t(static_cast<std::int64_t>(kk) + 1);
        const double w0 = big[kk] - big[kk + 1];  // exact cell mass of phi
        // first moment via parts: int (u-t0) phi du = int_cell Phi - h Phi(t1)
        const double cell_big = gauss_legendre_8([&](double u) { return k.big_phi(u); }, t0, t1);
        double w1 = cell_big - h * big[kk + 1];
        // clamp round-off; both weights are non-negative in exact arithmetic
        w1 = std::min(std::max(w1, 0.0), w0 * h);
        double a = w0 - w1 / h;
        double b = w1 / h;
        if (a < 0.0 && a > -1e-12 * std::max(1.0, w.m)) a = 0.0;
        if (b < 0.0 && b > -1e-12 * std::max(1.0, w.m)) b = 0.0;
        w.a[kk] = a;
        w.b[kk] = b;
    }
    if (!(w.a[0] < 1.0))
        throw NumericError(
            "volterra weights: implicit weight a_0 >= 1; the step h is too large "
            "for this kernel (reduce h)");
    return w;
}

std::vector<double> apply_conv(const KernelWeights& w, const std::vector<double>& x) {
    const std::size_t n = w.a.size();
    std::vector<double> out(n + 1, 0.0);
    for (std::size_t j = 1; j <= n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < j; ++k)
            s += w.a[k] * x[j - k] + w.b[k] * x[j - k - 1];
        out[j] = s;
    }
    return out;
}

// ------------------------------------------------------------- resolvent solve

namespace {
// (phi * phi)(h) for a kernel with phi ~ c t^e near 0, e in (-1, 0): the
// substitution s = v^{1/(1+e)} flattens both endpoint singularities of
// 2 int_0^{h/2} phi(s) phi(h-s) ds
double phi_self_convolution(const KernelSpec& k, double h, double e) {
    const double p = 1.0 / (1.0 + e);
    auto g = [&](double v) -> double {
        if (v <= 0.0) return 0.0;
        const double s = std::pow(v, p);
        return k.phi(s) * k.phi(h - s) * p * std::pow(v, p - 1.0);
    };
    const double vmax = std::pow(0.5 * h, 1.0 + e);
    const double coarse = std::abs(gauss_legendre_8(g, 0.0, vmax)) + 1e-300;
    return 2.0 * adaptive_simpson(g, 0.0, vmax, 1e-9 * coarse);
}
}

ResolventTable solve_resolvent(const KernelSpec& k, const Grid& grid, double mu0) {
    if (!(mu0 >= 0.0) || !std::isfinite(mu0))
        throw ValidationError("solve_resolvent: mu0 must be finite and >= 0");
    const KernelWeights w = make_kernel_weights(k, grid);
    const std::size_t n = static_cast<std::size_t>(grid.n);
    const double h = grid.h;
    const double inv = 1.0 / (1.0 - w.a[0]);

    ResolventTable tab;
    tab.grid = grid;
    tab.mu0 = mu0;
    tab.m = w.m;

    // I_R = I_phi + A I_R, marched; forcing I_phi = m - Phi is exact
    std::vector<double>& ir = tab.I_R;
    ir.assign(n + 1, 0.0);
    for (std::size_t j = 1; j <= n; ++j) {
        double s = w.iphi[j] + w.b[0] * ir[j - 1];
        for (std::size_t kk = 1; kk < j; ++kk)
            s += w.a[kk] * ir[j - kk] + w.b[kk] * ir[j - kk - 1];
        ir[j] = s * inv;
    }

    // R = phi + A R marched; for singular kernels the cell with R-arguments
    // in (0, h] is integrated as linear-phi times the exact first-cell mass
    // of R (= I_R(h)), and R(0) becomes a pseudo-node that makes the first
    // trapezoid cell reproduce I_R(h)
    std::vector<double>& r = tab.R;
    r.assign(n + 1, 0.0);
    if (!w.singular) {
        r[0] = w.phi_nodes[0];
        for (std::size_t j = 1; j <= n; ++j) {
            double s = w.phi_nodes[j] + w.b[0] * r[j - 1];
            for (std::size_t kk = 1; kk < j; ++kk)
                s += w.a[kk] * r[j - kk] + w.b[kk] * r[j - kk - 1];
            r[j] = s * inv;
        }
    } else {
        const double ir1 = ir[1];
        if (n >= 1)
            r[1] = w.phi_nodes[1] + phi_self_convolution(k, h, small_t_exponent(k));
        for (std::size_t j = 2; j <= n; ++j) {
            double s = w.phi_nodes[j] + w.b[0] * r[j - 1] +
                       0.5 * ir1 * (w.phi_nodes[j] + w.phi_nodes[j - 1]);
            for (std::size_t kk = 1; kk + 1 < j; ++kk)
                s += w.a[kk] * r[j - kk] + w.b[kk] * r[j - kk - 1];
            r[j] = s * inv;
        }
        r[0] = std::max(0.0, 2.0 * ir1 / h - r[1]);
    }

    tab.I2_R.assign(n + 1, 0.0);
    for (std::size_t j = 1; j <= n; ++j)
        tab.I2_R[j] = tab.I2_R[j - 1] + 0.5 * h * (ir[j] + ir[j - 1]);

    tab.H_mu.assign(n + 1, 0.0);
    for (std::size_t j = 0; j <= n; ++j) tab.H_mu[j] = mu0 * (1.0 + ir[j]);
    return tab;
}

double ResolventTable::r_at(double t) const { return interp_nodes(grid, R, t, "R"); }
double ResolventTable::ir_at(double t) const { return interp_nodes(grid, I_R, t, "I_R"); }
double ResolventTable::i2r_at(double t) const { return interp_nodes(grid, I2_R, t, "I2_R"); }
double ResolventTable::h_at(double t) const { return interp_nodes(grid, H_mu, t, "H_mu"); }

void ResolventTable::to_csv(const std::string& path) const {
    CsvWriter csv(path);
    csv.comment("schema=1");
    csv.header({"t", "R", "I_R", "I2_R"});
    for (std::size_t j = 0; j < R.size(); ++j)
        csv.row_doubles({grid.t(static_cast<std::int64_t>(j)), R[j], I_R[j], I2_R[j]});
}

double mean_count(const ResolventTable& table, double mu0, double t) {
    if (t > table.grid.T * (1.0 + 1e-12))
        throw ValidationError("mean_count: t exceeds the table horizon");
    return mu0 * (t + table.i2r_at(t));
}

double laplace_IR(const KernelSpec& k, double lambda) {
    if (!(lambda > 0.0)) throw ValidationError("laplace_IR: lambda must be > 0");
    const double lb = k.laplace_big_phi(lambda);
    const double denom = 1.0 - k.branching_ratio() + lb;
    if (!(denom > 0.0))
        throw NumericError("laplace_IR: transform undefined at this lambda "
                           "(denominator 1 - m + transform is not positive)");
    return (k.branching_ratio() - lb) / denom;
}

// --------------------------------------------------------- functional specs

void FunctionalSpec::validate(const Grid& grid) const {
    if (std::abs(T - grid.T) > 1e-9 * std::max(1.0, grid.T))
        throw ValidationError("functional spec: horizon T differs from the grid horizon");
    for (const auto& a : atoms) {
        if (a.loc < 0.0 || a.loc > T * (1.0 + 1e-12))
            throw ValidationError("functional spec: atom location outside [0, T]");
        if (a.weight.real() > 1e-12)
            throw ValidationError("functional spec: atom weight must have Re <= 0");
    }
    for (std::int64_t j = 0; j <= grid.n; ++j) {
        const double t = grid.t(j);
        if (nu_density) {
            const cplx v = nu_density(t);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || v.real() > 1e-9)
                throw ValidationError("functional spec: nu density must be finite with Re <= 0");
        }
        if (f) {
            const cplx v = f(t);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || v.real() > 1e-9)
                throw ValidationError("functional spec: f must be finite with Re <= 0");
        }
    }
}

namespace {

// forcing (phi * d nu)(t_j): atoms enter exactly; an atom that sits on a node
// of a singular kernel would multiply phi(0+) = inf, so there the exact
// first-cell average (m - Phi(h))/h stands in
std::vector<cplx> build_forcing(const KernelSpec& k, const KernelWeights& w,
                                const FunctionalSpec& spec, const Grid& grid,
                                const std::vector<cplx>& nu_nodes) {
    const std::size_t n = static_cast<std::size_t>(grid.n);
    std::vector<cplx> F(n + 1, cplx(0.0, 0.0));
    const double diag = w.singular ? (w.m - k.big_phi(grid.h)) / grid.h : k.phi_at_zero();
    for (const auto& atom : spec.atoms) {
        for (std::size_t j = 0; j <= n; ++j) {
            const double dt = grid.t(static_cast<std::int64_t>(j)) - atom.loc;
            if (dt < -1e-12 * std::max(1.0, grid.T)) continue;
            const double mag = (std::abs(dt) <= 1e-12 * std::max(1.0, grid.T))
                                   ? diag
                                   : k.phi(dt);
            F[j] += atom.weight * mag;
        }
    }
    if (spec.nu_density) {
        for (std::size_t j = 1; j <= n; ++j) {
            cplx s = w.a[0] * nu_nodes[j] + w.b[0] * nu_nodes[j - 1];
            for (std::size_t kk = 1; kk < j; ++kk)
                s += w.a[kk] * nu_nodes[j - kk] + w.b[kk] * nu_nodes[j - kk - 1];
            F[j] += s;
        }
        F[0] += cplx(0.0, 0.0);  // empty convolution at t = 0
    }
    return F;
}

cplx picard_solve(const std::function<cplx(cplx)>& step, cplx x0, const char* what) {
    cplx x = x0;
    for (int it = 0; it < 200; ++it) {
        cplx xn = step(x);
        if (it >= 20) xn = 0.5 * (xn + x);  // damp slow cycles
        if (std::abs(xn - x) <= 1e-12 * (1.0 + std::abs(xn))) return xn;
        x = xn;
    }
    throw NumericError(std::string(what) + ": Picard iteration did not converge "
                       "within 200 steps (reduce h)");
}

}  // namespace

ComplexVolterraSolution solve_fourier_laplace(const KernelSpec& k,
                                              const FunctionalSpec& spec,
                                              const Grid& grid, VolterraForm form) {
    spec.validate(grid);
    const KernelWeights w = make_kernel_weights(k, grid);
    const std::size_t n = static_cast<std::size_t>(grid.n);
    const double inv = 1.0 / (1.0 - w.a[0]);

    std::vector<cplx> nu_nodes(n + 1, cplx(0.0, 0.0));
    std::vector<cplx> f_nodes(n + 1, cplx(0.0, 0.0));
    for (std::size_t j = 0; j <= n; ++j) {
        const double t = grid.t(static_cast<std::int64_t>(j));
        if (spec.nu_density) nu_nodes[j] = spec.nu_density(t);
        if (spec.f) f_nodes[j] = spec.f(t);
    }
    const std::vector<cplx> F = build_forcing(k, w, spec, grid, nu_nodes);

    ComplexVolterraSolution sol;
    sol.grid = grid;
    sol.forcing = F;
    sol.nu_nodes = nu_nodes;
    sol.atoms = spec.atoms;
    sol.V.assign(n + 1, cplx(0.0, 0.0));
    sol.W.assign(n + 1, cplx(0.0, 0.0));

    if (form == VolterraForm::Phi) {
        // V = F + A (e^{V+f} - 1), implicit in the newest node
        std::vector<cplx> ew(n + 1);  // e^{V+f} - 1
        sol.V[0] = F[0];
        ew[0] = std::exp(sol.V[0] + f_nodes[0]) - 1.0;
        for (std::size_t j = 1; j <= n; ++j) {
            cplx base = F[j] + w.b[0] * ew[j - 1];
            for (std::size_t kk = 1; kk < j; ++kk)
                base += w.a[kk] * ew[j - kk] + w.b[kk] * ew[j - kk - 1];
            const cplx fj = f_nodes[j];
            const double a0 = w.a[0];
            sol.V[j] = picard_solve(
                [&](cplx x) { return base + a0 * (std::exp(x + fj) - 1.0); },
                sol.V[j - 1], "solve_fourier_laplace");
            ew[j] = std::exp(sol.V[j] + fj) - 1.0;
        }
    } else {
        // V = F_R + B W with B = A (I - A)^{-1}: F_R solves (I-A) F_R = F,
        // and y = (I-A)^{-1} W marches jointly with V
        std::vector<cplx> fr(n + 1);
        fr[0] = F[0];
        for (std::size_t j = 1; j <= n; ++j) {
            cplx s = F[j] + w.b[0] * fr[j - 1];
            for (std::size_t kk = 1; kk < j; ++kk)
                s += w.a[kk] * fr[j - kk] + w.b[kk] * fr[j - kk - 1];
            fr[j] = s * inv;
        }
        std::vector<cplx> y(n + 1);
        sol.V[0] = fr[0];
        y[0] = std::exp(sol.V[0] + f_nodes[0]) - 1.0 - sol.V[0];
        for (std::size_t j = 1; j <= n; ++j) {
            cplx c = w.b[0] * y[j - 1];
            for (std::size_t kk = 1; kk < j; ++kk)
                c += w.a[kk] * y[j - kk] + w.b[kk] * y[j - kk - 1];
            const cplx fj = f_nodes[j];
            const double a0 = w.a[0];
            const cplx frj = fr[j];
            sol.V[j] = picard_solve(
                [&](cplx x) {
                    const cplx wx = std::exp(x + fj) - 1.0 - x;
                    return frj + c + a0 * (wx + c) * inv;
                },
                sol.V[j - 1], "solve_fourier_laplace");
            y[j] = (std::exp(sol.V[j] + fj) - 1.0 - sol.V[j] + c) * inv;
        }
    }

    for (std::size_t j = 0; j <= n; ++j)
        sol.W[j] = std::exp(sol.V[j] + f_nodes[j]) - 1.0 - sol.V[j];
    return sol;
}

void ComplexVolterraSolution::to_csv(const std::string& path) const {
    CsvWriter csv(path);
    csv.comment("schema=1");
    csv.header({"t", "ReV", "ImV", "ReW", "ImW"});
    for (std::size_t j = 0; j < V.size(); ++j)
        csv.row_doubles({grid.t(static_cast<std::int64_t>(j)), V[j].real(), V[j].imag(),
                         W[j].real(), W[j].imag()});
}

cplx char_functional(const ComplexVolterraSolution& sol, const ResolventTable& table,
                     double mu0, double T) {
    const Grid& g = sol.grid;
    if (std::abs(T - g.T) > 1e-9 * std::max(1.0, g.T) || table.grid.n != g.n ||
        std::abs(table.grid.T - g.T) > 1e-9 * std::max(1.0, g.T))
        throw ValidationError("char_functional: solution and table must share the grid");
    const std::size_t n = static_cast<std::size_t>(g.n);
    auto hmu = [&](double t) { return table.h_at(t); };

    cplx expo(0.0, 0.0);
    for (const auto& atom : sol.atoms) expo += atom.weight * hmu(T - atom.loc);
    // trapezoid of H(T-s) against nu density and W
    cplx acc(0.0, 0.0);
    for (std::size_t j = 0; j <= n; ++j) {
        const double wgt = (j == 0 || j == n) ? 0.5 : 1.0;
        const double hv = table.H_mu[n - j];
        acc += wgt * hv * (sol.nu_nodes[j] + sol.W[j]);
    }
    expo += acc * g.h;
    // guard against exploding exponents from invalid input
    if (expo.real() > 1e-9)
        throw NumericError("char_functional: exponent has positive real part");
    return std::exp(expo);
}

// ------------------------------------------------------------- CIR Riccati

CIRRiccatiSolution solve_cir_riccati(const FunctionalSpec& w,
                                     const std::function<cplx(double)>& g, double sigma,
                                     const Grid& grid) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw ValidationError("solve_cir_riccati: sigma must be positive and finite");
    w.validate(grid);
    auto gv = [&](double t) -> cplx { return g ? g(t) : cplx(0.0, 0.0); };
    for (std::int64_t j = 0; j <= grid.n; ++j) {
        const cplx v = gv(grid.t(j));
        if (std::abs(v.real()) > 1e-9 || !std::isfinite(v.imag()))
            throw ValidationError("solve_cir_riccati: g must be purely imaginary");
    }
    auto wd = [&](double t) -> cplx {
        return w.nu_density ? w.nu_density(t) : cplx(0.0, 0.0);
    };
    auto rhs = [&](double t, cplx v) -> cplx {
        const cplx u = v + gv(t);
        return wd(t) / sigma + u * u / (2.0 * sigma);
    };

    std::vector<FunctionalSpec::Atom> atoms = w.atoms;
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& x, const auto& y) { return x.loc < y.loc; });

    const std::size_t n = static_cast<std::size_t>(grid.n);
    CIRRiccatiSolution sol;
    sol.grid = grid;
    sol.sigma = sigma;
    sol.V_star.assign(n + 1, cplx(0.0, 0.0));
    sol.I_V.assign(n + 1, cplx(0.0, 0.0));

    cplx v(0.0, 0.0), iv(0.0, 0.0);
    std::size_t next_atom = 0;
    const double eps = 1e-12 * std::max(1.0, grid.T);
    while (next_atom < atoms.size() && atoms[next_atom].loc <= eps) {
        v += atoms[next_atom].weight / sigma;  // jump at t = 0
        ++next_atom;
    }
    sol.V_star[0] = v;

    auto rk4 = [&](double t0, double t1) {
        // augmented state (v, iv) with iv' = v
        const double hh = t1 - t0;
        if (hh <= 0.0) return;
        const cplx k1 = rhs(t0, v);
        const cplx k2 = rhs(t0 + 0.5 * hh, v + 0.5 * hh * k1);
        const cplx k3 = rhs(t0 + 0.5 * hh, v + 0.5 * hh * k2);
        const cplx k4 = rhs(t1, v + hh * k3);
        const cplx i1 = v;
        const cplx i2 = v + 0.5 * hh * k1;
        const cplx i3 = v + 0.5 * hh * k2;
        const cplx i4 = v + hh * k3;
        v += hh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        iv += hh / 6.0 * (i1 + 2.0 * i2 + 2.0 * i3 + i4);
    };

    for (std::size_t j = 0; j < n; ++j) {
        double t = grid.t(static_cast<std::int64_t>(j));
        const double tend = grid.t(static_cast<std::int64_t>(j) + 1);
        while (next_atom < atoms.size() && atoms[next_atom].loc <= tend + eps) {
            const double loc = std::min(atoms[next_atom].loc, tend);
            rk4(t, loc);
            v += atoms[next_atom].weight / sigma;
            t = loc;
            ++next_atom;
        }
        rk4(t, tend);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > 1e10)
            throw NumericError("solve_cir_riccati: solution blow-up detected");
        sol.V_star[j + 1] = v;
        sol.I_V[j + 1] = iv;
    }
    return sol;
}

cplx cir_functional(const CIRRiccatiSolution& sol, double mu0, double T) {
    const Grid& g = sol.grid;
    if (T > g.T * (1.0 + 1e-12))
        throw ValidationError("cir_functional: T exceeds the solution horizon");
    const double x = std::min(std::max(T / g.h, 0.0), static_cast<double>(g.n));
    std::int64_t j = static_cast<std::int64_t>(x);
    if (j >= g.n) j = g.n - 1;
    const double frac = x - static_cast<double>(j);
    const cplx iv = sol.I_V[static_cast<std::size_t>(j)] * (1.0 - frac) +
                    sol.I_V[static_cast<std::size_t>(j) + 1] * frac;
    return std::exp(mu0 * iv);
}

// ------------------------------------------------------------ resolvent gap

GapResult resolvent_gap(const KernelSpec& k, double n, double T, const Grid& grid) {
    if (!(n >= 1.0)) throw ValidationError("resolvent_gap: scale n must be >= 1");
    const double m = k.branching_ratio();
    const double sigma = k.dispersion_sigma();
    if (std::abs(m - 1.0) > 1e-3 || !std::isfinite(sigma))
        throw RegimeError(
            "resolvent_gap: requires a weakly critical kernel (unit branching "
            "ratio with finite dispersion); the flat resolvent limit 1/sigma "
            "does not exist otherwise");
    // R(nt) on t in [0, T] needs only resolution h in rescaled time
    const Grid coarse = Grid::make(n * T, grid.h * n);
    const ResolventTable tab = solve_resolvent(k, coarse, 1.0);
    const std::size_t nn = static_cast<std::size_t>(coarse.n);
    GapResult out;
    out.sigma = sigma;
    const double rstar = 1.0 / sigma;
    double l2 = 0.0;
    for (std::size_t j = 0; j <= nn; ++j) {
        const double t = grid.h * static_cast<double>(j);  // rescaled time
        const double ig = std::abs(tab.I_R[j] / n - t * rstar);
        out.sup_gap = std::max(out.sup_gap, ig);
        const double dr = tab.R[j] - rstar;
        const double wgt = (j == 0 || j == nn) ? 0.5 : 1.0;
        l2 += wgt * dr * dr;
    }
    out.l2_gap = std::sqrt(l2 * grid.h);
    return out;
}

}
