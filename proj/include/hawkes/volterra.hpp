#pragma once
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "hawkes/grid.hpp"
#include "hawkes/kernels.hpp"

namespace hawkes {

using cplx = std::complex<double>;

// Product-integration weights of the kernel on a uniform grid: the discrete
// convolution (A g)_j = sum_{k<j} (a_k g_{j-k} + b_k g_{j-k-1}) is the exact
// integral of phi against the linear interpolant of g, cell by cell.  Exact
// cell masses w0_k = Phi(t_k) - Phi(t_{k+1}) keep the t^{alpha-1} singularity
// harmless.
struct KernelWeights {
    Grid grid;
    std::vector<double> a, b;    // per cell, size n
    std::vector<double> iphi;    // m - Phi(t_j), size n+1
    std::vector<double> phi_nodes;  // phi(t_j); phi_nodes[0] may be +inf
    double m = 0.0;
    bool singular = false;  // phi(0+) = +inf
};

KernelWeights make_kernel_weights(const KernelSpec& k, const Grid& grid);

// discrete convolution A x (sizes n+1 -> n+1), x[0] ignored iff weight b of
// the last cell multiplies it; provided for tests and the Neumann check
std::vector<double> apply_conv(const KernelWeights& w, const std::vector<double>& x);

struct ResolventTable {
    Grid grid;
    double mu0 = 0.0;
    double m = 0.0;
    std::vector<double> R;     // resolvent node values; R[0] may be a pseudo-node
    std::vector<double> I_R;   // int_0^t R
    std::vector<double> I2_R;  // int_0^t I_R
    std::vector<double> H_mu;  // mu0 (1 + I_R)

    double r_at(double t) const;
    double ir_at(double t) const;
    double i2r_at(double t) const;
    double h_at(double t) const;
    void to_csv(const std::string& path) const;  // t,R,I_R,I2_R
};

// Solves R = phi + R * phi by product-integration marching; I_R marches on
// the integrated equation I_R = I_phi + A I_R (exact forcing I_phi = m - Phi),
// I2_R by cumulative trapezoid.
ResolventTable solve_resolvent(const KernelSpec& k, const Grid& grid, double mu0);

// E[N(t)] = mu0 (t + I2_R(t))
double mean_count(const ResolventTable& table, double mu0, double t);

// (m - Phi^(lambda)) / (1 - m + Phi^(lambda))
double laplace_IR(const KernelSpec& k, double lambda);

// Complex measure nu(dt) = sum_i z_i delta_{loc_i}(dt) + nu_d(t) dt plus a
// bounded multiplier f, both with non-positive real parts.
struct FunctionalSpec {
    struct Atom {
        double loc = 0.0;
        cplx weight{0.0, 0.0};
    };
    double T = 0.0;
    std::vector<Atom> atoms;
    std::function<cplx(double)> nu_density;  // null means 0
    std::function<cplx(double)> f;           // null means 0

    void validate(const Grid& grid) const;
};

enum class VolterraForm { Phi, Resolvent };

struct ComplexVolterraSolution {
    Grid grid;
    std::vector<cplx> V;
    std::vector<cplx> W;        // e^{V+f} - 1 - V
    std::vector<cplx> forcing;  // (phi * d nu)(t_j)
    std::vector<cplx> nu_nodes;  // density part sampled at nodes
    std::vector<FunctionalSpec::Atom> atoms;
    void to_csv(const std::string& path) const;  // t,ReV,ImV,ReW,ImW
};

// Marches V = phi*dnu + phi*(e^{V+f}-1) node by node with per-node Picard
// iteration; VolterraForm::Resolvent instead marches the equivalent
// V = R*dnu + R*(e^{V+f}-1-V) built from the same discrete operator.
ComplexVolterraSolution solve_fourier_laplace(const KernelSpec& k,
                                              const FunctionalSpec& spec,
                                              const Grid& grid,
                                              VolterraForm form = VolterraForm::Phi);

// exp{ (H_mu * dnu)(T) + (H_mu * W)(T) }
cplx char_functional(const ComplexVolterraSolution& sol, const ResolventTable& table,
                     double mu0, double T);

struct CIRRiccatiSolution {
    Grid grid;
    double sigma = 0.0;
    std::vector<cplx> V_star;
    std::vector<cplx> I_V;  // int_0^t V*
};

// V*(t) = I_w(t)/sigma + (1/(2 sigma)) int_0^t (V* + g)^2 ds, stepped by RK4
// between atom locations; atoms add weight/sigma as jumps.
CIRRiccatiSolution solve_cir_riccati(const FunctionalSpec& w,
                                     const std::function<cplx(double)>& g, double sigma,
                                     const Grid& grid);

cplx cir_functional(const CIRRiccatiSolution& sol, double mu0, double T);

struct GapResult {
    double sup_gap = 0.0;  // || I_{R^(n)} - I_{R*} ||_sup on [0, T]
    double l2_gap = 0.0;   // || R^(n) - 1/sigma ||_L2 on [0, T]
    double sigma = 0.0;
};

// Weakly critical kernels only: R^(n)(t) = R(nt) against the flat limit
// R* = 1/sigma, computed from a resolvent solve on [0, nT] with step h*n.
GapResult resolvent_gap(const KernelSpec& k, double n, double T, const Grid& grid);

}
