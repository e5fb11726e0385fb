#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "adm/config.hpp"
#include "adm/diagnostics.hpp"
#include "adm/fields.hpp"
#include "adm/integrator.hpp"
#include "adm/runner.hpp"
#include "adm/spectral_ops.hpp"
#include "adm/squeezing.hpp"
#include "adm/transform.hpp"
#include "adm/verify.hpp"
#include "adm/version.hpp"

namespace py = pybind11;
using namespace adm;

namespace {

py::array_t<double> real_to_numpy(const RealField& r) {
    const int M = r.grid().M();
    py::array_t<double> a({M, M});
    std::memcpy(a.mutable_data(), r.data(), sizeof(double) * r.size());
    return a;
}

Scheme scheme_from(const std::string& s) {
    if (s == "if_rk2") return Scheme::if_rk2;
    if (s == "if_euler") return Scheme::if_euler;
    throw ConfigError("scheme must be if_rk2 or if_euler, got '" + s + "'");
}

SystemKind system_from(const std::string& s) {
    if (s == "full") return SystemKind::full;
    if (s == "prepared") return SystemKind::prepared;
    throw ConfigError("system must be full or prepared, got '" + s + "'");
}

py::dict norms_dict(const NormDiagnostics& n) {
    py::dict d;
    d["y"] = n.y;
    d["z"] = n.z;
    d["Y"] = n.Y;
    d["Z"] = n.Z;
    return d;
}

py::dict radii_dict(const AbsorbingRadii& r) {
    py::dict d;
    d["r1sq"] = r.r1sq;
    d["r2sq"] = r.r2sq;
    d["s1sq"] = r.s1sq;
    d["s2sq"] = r.s2sq;
    d["beta"] = r.beta;
    d["r"] = r.r;
    d["s"] = r.s;
    return d;
}

py::list checks_list(const std::vector<CheckResult>& checks) {
    py::list out;
    for (const CheckResult& c : checks) {
        py::dict d;
        d["name"] = c.name;
        d["pass"] = c.pass;
        d["observed"] = c.observed;
        d["tolerance"] = c.tolerance;
        d["detail"] = c.detail;
        out.append(d);
    }
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "pseudo-spectral laboratory for a deconvolved Boussinesq system";
    m.attr("__version__") = kVersion;

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<NumericalError>(m, "NumericalError");

    py::class_<TorusGrid>(m, "TorusGrid")
        .def(py::init<double, int>(), py::arg("L"), py::arg("M"))
        .def_property_readonly("L", &TorusGrid::L)
        .def_property_readonly("M", &TorusGrid::M)
        .def_property_readonly("lambda1", &TorusGrid::lambda1)
        .def_property_readonly("dealias_cutoff", &TorusGrid::dealias_cutoff)
        .def_property_readonly("max_band_ksq", &TorusGrid::max_band_ksq)
        .def("__repr__", [](const TorusGrid& g) {
            return "TorusGrid(L=" + std::to_string(g.L()) +
                   ", M=" + std::to_string(g.M()) + ")";
        });
    m.def("make_grid", &make_grid, py::arg("L"), py::arg("M"));

    py::class_<SpectralScalar>(m, "SpectralScalar")
        .def(py::init<const TorusGrid&>())
        .def_property_readonly("grid", &SpectralScalar::grid)
        .def("coeff",
             [](const SpectralScalar& f, int kx, int ky) { return f.coeff(kx, ky); })
        .def("set_coeff", &SpectralScalar::set_coeff)
        .def("norm",
             [](const SpectralScalar& f, double s) { return sobolev_norm(f, s); },
             py::arg("s") = 0.0)
        .def("to_real", [](const SpectralScalar& f) {
            return real_to_numpy(transform_inverse(f));
        });

    py::class_<SpectralVector>(m, "SpectralVector")
        .def(py::init<const TorusGrid&>())
        .def_readwrite("x", &SpectralVector::x)
        .def_readwrite("y", &SpectralVector::y)
        .def("norm",
             [](const SpectralVector& f, double s) { return sobolev_norm(f, s); },
             py::arg("s") = 0.0);

    py::class_<State>(m, "State")
        .def(py::init<const TorusGrid&>())
        .def(py::init([](const SpectralVector& v, const SpectralScalar& theta) {
                 State V(theta.grid());
                 V.v = v;
                 V.theta = theta;
                 return V;
             }),
             py::arg("v"), py::arg("theta"))
        .def_readwrite("v", &State::v)
        .def_readwrite("theta", &State::theta)
        .def("dn_norm", [](const State& V, const ModelParams& p) {
            return state_dn_norm(V, p);
        });

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<const TorusGrid&>())
        .def_readwrite("nu", &ModelParams::nu)
        .def_readwrite("kappa", &ModelParams::kappa)
        .def_readwrite("alpha", &ModelParams::alpha)
        .def_readwrite("N", &ModelParams::N)
        .def_readwrite("rho_tilde", &ModelParams::rho_tilde)
        .def_readwrite("gamma", &ModelParams::gamma)
        .def_readwrite("lipschitz_c", &ModelParams::lipschitz_c)
        .def_readwrite("c4", &ModelParams::c4)
        .def_readwrite("forcing_f", &ModelParams::forcing_f)
        .def_property(
            "eta_reduction",
            [](const ModelParams& p) {
                return p.eta_reduction == EtaReduction::min_coefficient
                           ? "min"
                           : "euclidean";
            },
            [](ModelParams& p, const std::string& s) {
                if (s == "min")
                    p.eta_reduction = EtaReduction::min_coefficient;
                else if (s == "euclidean")
                    p.eta_reduction = EtaReduction::euclidean;
                else
                    throw ConfigError("eta_reduction must be min or euclidean");
            })
        .def_property_readonly("eta", &ModelParams::eta)
        .def("validate", &ModelParams::validate)
        .def("lipschitz_constant", [](const ModelParams& p) {
            return lipschitz_constant(p, p.grid());
        });

    m.def("cosine_mode", &cosine_mode, py::arg("grid"), py::arg("kx"),
          py::arg("ky"), py::arg("amplitude"));
    m.def("sine_mode", &sine_mode, py::arg("grid"), py::arg("kx"), py::arg("ky"),
          py::arg("amplitude"));
    m.def("taylor_green", &taylor_green, py::arg("grid"), py::arg("m"),
          py::arg("amplitude"));
    m.def("random_scalar", &random_scalar, py::arg("grid"), py::arg("seed"),
          py::arg("slope"), py::arg("max_ksq"), py::arg("norm"));
    m.def("random_solenoidal", &random_solenoidal, py::arg("grid"),
          py::arg("seed"), py::arg("slope"), py::arg("max_ksq"), py::arg("norm"));

    m.def("deconvolution_value", &deconvolution_value, py::arg("alpha"),
          py::arg("N"), py::arg("ksq"));
    m.def("dealias_product", &dealias_product);
    m.def("leray_project", &leray_project);

    m.def("norm_diagnostics", [](const State& V, const ModelParams& p) {
        return norms_dict(norm_diagnostics(V, p));
    });
    m.def("absorbing_radii",
          [](const ModelParams& p) { return radii_dict(absorbing_radii(p)); });
    m.def("bound_R1sq", &bound_R1sq, py::arg("t"), py::arg("y0"), py::arg("params"));
    m.def("bound_R2sq", &bound_R2sq, py::arg("t"), py::arg("y0"), py::arg("z0"),
          py::arg("params"));
    m.def("detect_entry_time", &detect_entry_time, py::arg("times"),
          py::arg("values"), py::arg("radius"));

    m.def(
        "simulate",
        [](const State& V0, const ModelParams& p, double t_end, double dt,
           long stride, const std::string& scheme, const std::string& system) {
            SimulateOptions opt;
            opt.t_end = t_end;
            opt.dt = dt;
            opt.sample_stride = stride;
            opt.scheme = scheme_from(scheme);
            opt.system = system_from(system);

            std::vector<double> times, ys, zs, Ys, Zs;
            const SimulationResult res = [&] {
                py::gil_scoped_release release;
                return simulate(V0, p, opt, [&](long, double t, const State& V) {
                    const NormDiagnostics n = norm_diagnostics(V, p);
                    times.push_back(t);
                    ys.push_back(n.y);
                    zs.push_back(n.z);
                    Ys.push_back(n.Y);
                    Zs.push_back(n.Z);
                });
            }();
            py::dict d;
            d["t"] = times;
            d["y"] = ys;
            d["z"] = zs;
            d["Y"] = Ys;
            d["Z"] = Zs;
            d["steps"] = res.steps;
            d["final"] = res.final_state;
            return d;
        },
        py::arg("V0"), py::arg("params"), py::arg("t_end"), py::arg("dt") = 1e-3,
        py::arg("stride") = 1, py::arg("scheme") = "if_rk2",
        py::arg("system") = "full");

    py::class_<ConeSpec>(m, "ConeSpec")
        .def_readwrite("lambda_n", &ConeSpec::lambda_n)
        .def_readwrite("lambda_np1", &ConeSpec::lambda_np1)
        .def_readwrite("modes_per_family", &ConeSpec::modes_per_family)
        .def_readwrite("mode_count", &ConeSpec::mode_count)
        .def_readwrite("gamma", &ConeSpec::gamma);

    m.def("enumerate_eigenvalues", [](const TorusGrid& g, double lambda_max) {
        py::list out;
        for (const EigenvalueEntry& e : enumerate_eigenvalues(g, lambda_max))
            out.append(py::make_tuple(e.lambda, e.multiplicity));
        return out;
    });
    m.def("find_min_gap_cutoff", &find_min_gap_cutoff, py::arg("grid"),
          py::arg("L_lip"), py::arg("gamma"), py::arg("eta"));
    m.def("beta_n", &beta_n, py::arg("cone"), py::arg("L_lip"), py::arg("eta"));
    m.def("project_low", &project_low);
    m.def("project_high", &project_high);
    m.def("cone_test", [](const State& a, const State& b, const ModelParams& p,
                          const ConeSpec& cone) {
        const ConeObservation o = cone_test(a, b, p, cone);
        py::dict d;
        d["p_norm"] = o.p_norm;
        d["q_norm"] = o.q_norm;
        d["margin"] = o.margin;
        d["inside"] = o.margin >= 0.0;
        return d;
    });
    m.def("calibrate_lipschitz", [](const ModelParams& p, int samples,
                                    uint64_t seed) {
        const CalibrationResult r = [&] {
            py::gil_scoped_release release;
            return calibrate_lipschitz(p, samples, seed);
        }();
        py::dict d;
        d["max_ratio"] = r.max_ratio;
        d["samples"] = r.samples;
        return d;
    });
    m.def(
        "run_pair_experiment",
        [](const State& a0, const State& b0, const ModelParams& p,
           const ConeSpec& cone, double t_end, double dt, long stride,
           double beta) {
            PairExperimentOptions opt;
            opt.t_end = t_end;
            opt.dt = dt;
            opt.sample_stride = stride;
            opt.beta_n = beta;
            PairExperimentResult r;
            {
                py::gil_scoped_release release;
                r = run_pair_experiment(a0, b0, p, cone, opt);
            }
            py::dict d;
            d["t"] = r.times;
            d["p_norm"] = r.p_norms;
            d["q_norm"] = r.q_norms;
            d["margin"] = r.margins;
            d["invariance_ok"] = r.invariance_ok;
            d["decay_ok"] = r.decay_ok;
            d["entry_time"] = r.entry_time;
            d["fitted_exponent"] = r.fitted_exponent;
            d["beta_n"] = r.beta_n_used;
            return d;
        },
        py::arg("a0"), py::arg("b0"), py::arg("params"), py::arg("cone"),
        py::arg("t_end") = 1.0, py::arg("dt") = 1e-3, py::arg("stride") = 5,
        py::arg("beta_n") = 0.0);

    m.def("verify_deconvolution", [](const TorusGrid& g, double alpha, int n_max,
                                     uint64_t seed) {
        return checks_list(verify_deconvolution(g, alpha, n_max, seed));
    });
    m.def("verify_model_identities", [](const ModelParams& p, uint64_t seed) {
        return checks_list(verify_model_identities(p, seed));
    });

    m.def("run_config_text",
          [](const std::string& text, const std::string& out_dir) {
              const RunConfig cfg = parse_config_text(text);
              py::gil_scoped_release release;
              return run_config(cfg, out_dir);
          },
          py::arg("config_text"), py::arg("out_dir"));
}
