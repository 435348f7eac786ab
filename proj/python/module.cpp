// Python bindings for the core operations: kernels, resolvent solves,
// characteristic functionals, simulation, and the distance metrics.
#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hawkes/grid.hpp"
#include "hawkes/kernels.hpp"
#include "hawkes/limits.hpp"
#include "hawkes/metrics.hpp"
#include "hawkes/rng.hpp"
#include "hawkes/simulate.hpp"
#include "hawkes/special.hpp"
#include "hawkes/version.hpp"
#include "hawkes/volterra.hpp"

namespace py = pybind11;
using namespace hawkes;

PYBIND11_MODULE(hawkespy, m) {
    m.doc() = "Hawkes process simulation, Volterra solvers, and limit diagnostics";
    m.attr("__version__") = version_string;

    py::class_<XiDistribution>(m, "XiDistribution")
        .def_static("constant", &XiDistribution::constant, py::arg("value"))
        .def_static("two_point", &XiDistribution::two_point, py::arg("lo"), py::arg("hi"),
                    py::arg("p_hi"))
        .def_static("pareto", &XiDistribution::pareto, py::arg("xm"), py::arg("tail_beta"))
        .def("mean", &XiDistribution::mean)
        .def("second_moment", &XiDistribution::second_moment)
        .def("laplace", &XiDistribution::laplace, py::arg("c"));

    py::class_<KernelSpec>(m, "Kernel")
        .def_static("exponential", &KernelSpec::exponential, py::arg("m"), py::arg("beta"))
        .def_static("mittag_leffler", &KernelSpec::mittag_leffler, py::arg("alpha"),
                    py::arg("beta"))
        .def_static("mixed_mittag_leffler", &KernelSpec::mixed_mittag_leffler, py::arg("alpha1"),
                    py::arg("beta1"), py::arg("alpha2"), py::arg("beta2"))
        .def_static("scaled_stable", &KernelSpec::scaled_stable, py::arg("alpha"), py::arg("xi"))
        .def_static(
            "tabulated",
            [](std::vector<double> ts, std::vector<double> phis, double m, bool sampler) {
                return KernelSpec::tabulated(std::move(ts), std::move(phis), m, sampler);
            },
            py::arg("ts"), py::arg("phis"), py::arg("m"), py::arg("build_sampler") = false)
        .def_static("zero", &KernelSpec::zero)
        .def("branching_ratio", &KernelSpec::branching_ratio)
        .def("phi", &KernelSpec::phi, py::arg("t"))
        .def("big_phi", &KernelSpec::big_phi, py::arg("t"))
        .def("psi", &KernelSpec::psi, py::arg("t"), py::arg("order"))
        .def("dispersion_sigma", &KernelSpec::dispersion_sigma)
        .def("laplace_big_phi", &KernelSpec::laplace_big_phi, py::arg("lam"))
        .def("regime", [](const KernelSpec& k) { return classify_regime(k).describe(); });

    py::class_<ResolventTable>(m, "ResolventTable")
        .def("r_at", &ResolventTable::r_at, py::arg("t"))
        .def("ir_at", &ResolventTable::ir_at, py::arg("t"))
        .def("i2r_at", &ResolventTable::i2r_at, py::arg("t"));

    m.def(
        "solve_resolvent",
        [](const KernelSpec& k, double T, double h, double mu0) {
            return solve_resolvent(k, Grid::make(T, h), mu0);
        },
        py::arg("kernel"), py::arg("T"), py::arg("h"), py::arg("mu0") = 1.0,
        py::call_guard<py::gil_scoped_release>());
    m.def("mean_count", &mean_count, py::arg("table"), py::arg("mu0"), py::arg("t"));
    m.def("laplace_ir", &laplace_IR, py::arg("kernel"), py::arg("lam"));
    m.def("ml_function", &ml_function, py::arg("alpha"), py::arg("kappa"), py::arg("x"));

    m.def(
        "count_char_function",
        [](const KernelSpec& k, double mu0, double u, double T, std::int64_t steps) {
            const Grid g = Grid::make(T, T / static_cast<double>(steps));
            FunctionalSpec spec;
            spec.T = T;
            spec.f = [u](double) { return cplx(0.0, u); };
            const auto sol = solve_fourier_laplace(k, spec, g, VolterraForm::Phi);
            return char_functional(sol, solve_resolvent(k, g, mu0), mu0, T);
        },
        py::arg("kernel"), py::arg("mu0"), py::arg("u"), py::arg("T"), py::arg("steps") = 2048,
        py::call_guard<py::gil_scoped_release>(),
        "E[exp(i u N(T))] via the Fourier-Laplace Volterra equation");

    m.def(
        "cir_exp_functional",
        [](double theta, double sigma, double mu0, double T, std::int64_t steps) {
            FunctionalSpec w;
            w.T = T;
            w.nu_density = [theta](double) { return cplx(-theta, 0.0); };
            const Grid g = Grid::make(T, T / static_cast<double>(steps));
            return cir_functional(solve_cir_riccati(w, nullptr, sigma, g), mu0, T);
        },
        py::arg("theta"), py::arg("sigma"), py::arg("mu0"), py::arg("T"),
        py::arg("steps") = 4096,
        "E[exp(-theta int_0^T X)] for the square-root diffusion limit via Riccati");

    m.def(
        "simulate_cluster",
        [](const KernelSpec& k, double mu0, double T, std::uint64_t seed, std::uint64_t stream) {
            RngStream rng(seed, stream);
            return simulate_cluster(k, mu0, T, rng).times;
        },
        py::arg("kernel"), py::arg("mu0"), py::arg("T"), py::arg("seed"), py::arg("stream") = 0,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "simulate_thinning",
        [](const KernelSpec& k, double mu0, double T, std::uint64_t seed, std::uint64_t stream) {
            RngStream rng(seed, stream);
            return simulate_thinning(k, mu0, T, rng).times;
        },
        py::arg("kernel"), py::arg("mu0"), py::arg("T"), py::arg("seed"), py::arg("stream") = 0,
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "simulate_cir",
        [](double mu0, double sigma, double T, std::int64_t steps_per_unit, std::uint64_t seed,
           std::uint64_t stream) {
            RngStream rng(seed, stream);
            return simulate_cir(mu0, sigma, T, steps_per_unit, rng).values;
        },
        py::arg("mu0"), py::arg("sigma"), py::arg("T"), py::arg("steps_per_unit"),
        py::arg("seed"), py::arg("stream") = 0, py::call_guard<py::gil_scoped_release>());

    m.def(
        "fclt_sample",
        [](const KernelSpec& k, double mu0, double n, double t, std::size_t replicas,
           std::uint64_t seed, int threads) {
            return fclt_sample(k, mu0, n, t, replicas, seed, threads).values;
        },
        py::arg("kernel"), py::arg("mu0"), py::arg("n"), py::arg("t"), py::arg("replicas"),
        py::arg("seed"), py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());

    m.def(
        "kolmogorov_distance",
        [](std::vector<double> a, std::vector<double> b) {
            return kolmogorov_distance(std::move(a), std::move(b));
        },
        py::arg("a"), py::arg("b"));
    m.def("wasserstein1", &wasserstein1, py::arg("a"), py::arg("b"));
    m.def(
        "estimate_rv_index",
        [](const std::function<double(double)>& F, const std::vector<double>& probes) {
            const RVProfile p = estimate_rv_index(F, probes);
            py::dict d;
            d["index"] = p.index;
            d["rho"] = p.second_order_rho;
            d["has_auxiliary"] = p.has_auxiliary;
            d["auxiliary_const"] = p.auxiliary_const;
            return d;
        },
        py::arg("F"), py::arg("probes"));

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
    py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);
}
