// SPDX-License-Identifier: Apache-2.0
//
// Python bindings for the main operations: channel construction, subproblem
// builders, the FP-SS / FP-CSS / joint optimizers, baselines, and sweeps.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sicb/harness.hpp"
#include "sicb/selfcheck.hpp"

#include <sstream>

namespace py = pybind11;
using namespace sicb;

namespace {

using carray = py::array_t<std::complex<double>, py::array::f_style | py::array::forcecast>;

arma::cx_mat to_mat(const carray& a) {
    const auto buf = a.request();
    if (buf.ndim != 2) throw DimensionMismatch("expected a 2-D complex array");
    arma::cx_mat m(static_cast<const cx*>(buf.ptr), buf.shape[0], buf.shape[1]);
    return m;
}

arma::cx_vec to_vec(const carray& a) {
    const auto buf = a.request();
    if (buf.ndim != 1) throw DimensionMismatch("expected a 1-D complex array");
    return arma::cx_vec(static_cast<const cx*>(buf.ptr), buf.shape[0]);
}

py::array from_vec(const arma::cx_vec& v) {
    py::array_t<std::complex<double>> out(v.n_elem);
    std::memcpy(out.mutable_data(), v.memptr(), v.n_elem * sizeof(cx));
    return out;
}

py::array from_mat(const arma::cx_mat& m) {
    py::array_t<std::complex<double>, py::array::f_style> out({m.n_rows, m.n_cols});
    std::memcpy(out.mutable_data(), m.memptr(), m.n_elem * sizeof(cx));
    return out;
}

Codeword codeword_from(const std::vector<int>& indices, int bits) {
    Codeword c;
    c.grid = PhaseGrid::make(bits);
    c.indices = indices;
    if (c.indices.empty() || c.indices.back() != 0)
        throw ValidationError("codeword indices must end with a pinned 0");
    for (int i : c.indices)
        if (i < 0 || i >= c.grid.size) throw ValidationError("codeword index out of range");
    return c;
}

py::dict trace_dict(const FpTrace& tr) {
    py::dict d;
    d["rho_values"] = tr.rho_values;
    d["converged"] = tr.converged;
    d["iterations"] = tr.iterations;
    return d;
}

py::dict row_dict(const SweepRow& r) {
    py::dict d;
    d["theta_deg"] = r.theta_deg;
    d["method"] = r.method;
    d["sinr_db"] = r.sinr_db;
    d["iterations"] = r.iterations;
    d["flops"] = r.flops;
    d["feasible"] = r.feasible;
    return d;
}

} // namespace

PYBIND11_MODULE(_sicb, m) {
    m.doc() = "Discrete RX/TX beamforming codeword synthesis for self-interference suppression";

    py::register_exception<Error>(m, "SicbError");

    py::class_<PhaseGrid>(m, "PhaseGrid")
        .def(py::init(&PhaseGrid::make), py::arg("bits"))
        .def_readonly("bits", &PhaseGrid::bits)
        .def_readonly("size", &PhaseGrid::size)
        .def_readonly("step", &PhaseGrid::step)
        .def("phase", &PhaseGrid::phase, py::arg("k"));

    py::class_<Codeword>(m, "Codeword")
        .def(py::init(&codeword_from), py::arg("indices"), py::arg("bits"))
        .def_property_readonly("indices", [](const Codeword& c) { return c.indices; })
        .def_property_readonly("bits", [](const Codeword& c) { return c.grid.bits; })
        .def("to_complex", [](const Codeword& c) { return from_vec(to_complex(c)); })
        .def("__repr__", [](const Codeword& c) {
            std::ostringstream os;
            os << "Codeword(bits=" << c.grid.bits << ", indices=[";
            for (std::size_t i = 0; i < c.indices.size(); ++i)
                os << (i ? "," : "") << c.indices[i];
            os << "])";
            return os.str();
        });

    py::class_<Scenario>(m, "Scenario")
        .def_static("load", &load_scenario, py::arg("path_or_preset"))
        .def_readonly("name", &Scenario::name)
        .def_readonly("bits", &Scenario::bits)
        .def_readonly("comm_direction_deg", &Scenario::comm_direction_deg)
        .def_readonly("comm_threshold", &Scenario::comm_threshold)
        .def_property_readonly("rx_count", [](const Scenario& s) { return s.rx_count(); })
        .def_property_readonly("tx_count", [](const Scenario& s) { return s.tx_count(); })
        .def("to_json", &scenario_to_json)
        .def("si_channel", [](const Scenario& s) { return from_mat(si_channel(s.geometry, s.radio)); })
        .def("worst_case_alpha",
             [](const Scenario& s) { return worst_case_path_gain(s.target, s.radio); });

    m.def("steering", [](double theta, arma::uword n) { return from_vec(steering(theta, n)); },
          py::arg("theta"), py::arg("n"), "ULA steering vector, half-wavelength spacing");

    m.def("quantize", [](const carray& v, int bits) {
              return quantize_to_codeword(to_vec(v), PhaseGrid::make(bits));
          },
          py::arg("vector"), py::arg("bits"),
          "nearest codeword, phases taken relative to the last entry");

    m.def("rayleigh", [](const Codeword& x, const carray& num, const carray& den) {
              return rayleigh(x, to_mat(num), to_mat(den));
          },
          py::arg("codeword"), py::arg("numerator"), py::arg("denominator"));

    m.def("fp_ss",
          [](const carray& num, const carray& den, const Codeword& w_init, double eps, int t_max) {
              RxSubproblem p;
              p.numerator = to_mat(num);
              p.denominator = to_mat(den);
              p.grid = w_init.grid;
              auto [w, tr] = fp_ss(p, w_init, FpOptions{eps, t_max});
              return py::make_tuple(w, trace_dict(tr));
          },
          py::arg("numerator"), py::arg("denominator"), py::arg("w_init"), py::arg("eps") = 1e-6,
          py::arg("t_max") = 30, "Dinkelbach + sphere search for the RX subproblem");

    m.def("fp_css",
          [](const carray& num, const carray& den, double theta_c, double c,
             const Codeword& v_init, double eps, int t_max) {
              TxSubproblem p;
              p.numerator = to_mat(num);
              p.denominator = to_mat(den);
              p.grid = v_init.grid;
              const CommConstraint cc = build_comm_constraint(theta_c, c, p.dim(), p.grid);
              auto [v, tr] = fp_css(p, cc, v_init, FpOptions{eps, t_max});
              return py::make_tuple(v, trace_dict(tr));
          },
          py::arg("numerator"), py::arg("denominator"), py::arg("theta_c"), py::arg("c"),
          py::arg("v_init"), py::arg("eps") = 1e-6, py::arg("t_max") = 30,
          "Dinkelbach + constrained sphere search for the TX subproblem");

    m.def("exhaustive",
          [](const carray& num, const carray& den, int bits, std::optional<double> theta_c,
             std::optional<double> c, std::uint64_t cap) {
              const arma::cx_mat nm = to_mat(num);
              const PhaseGrid g = PhaseGrid::make(bits);
              if (theta_c && c) {
                  const CommConstraint cc = build_comm_constraint(*theta_c, *c, nm.n_rows, g);
                  return exhaustive(nm, to_mat(den), g, &cc, cap);
              }
              return exhaustive(nm, to_mat(den), g, nullptr, cap);
          },
          py::arg("numerator"), py::arg("denominator"), py::arg("bits"),
          py::arg("theta_c") = std::nullopt, py::arg("c") = std::nullopt,
          py::arg("cap") = kDefaultEnumerationCap);

    m.def("build_rx",
          [](const Scenario& s, double theta, const Codeword& v0) {
              const RxSubproblem p =
                  build_rx(theta, v0, si_channel(s.geometry, s.radio), s.radio, s.grid());
              return py::make_tuple(from_mat(p.numerator), from_mat(p.denominator));
          },
          py::arg("scenario"), py::arg("theta"), py::arg("v0"));

    m.def("build_tx",
          [](const Scenario& s, double theta, const Codeword& w0) {
              const TxSubproblem p =
                  build_tx(theta, w0, si_channel(s.geometry, s.radio), s.radio, s.grid());
              return py::make_tuple(from_mat(p.numerator), from_mat(p.denominator));
          },
          py::arg("scenario"), py::arg("theta"), py::arg("w0"));

    m.def("mvdr_cm_hq",
          [](const Scenario& s, double theta, const Codeword& v0) {
              return mvdr_cm_hq(build_rx(theta, v0, si_channel(s.geometry, s.radio), s.radio, s.grid()));
          },
          py::arg("scenario"), py::arg("theta"), py::arg("v0"));

    m.def("effective_mvdr_bound",
          [](const Scenario& s, double theta) {
              return effective_mvdr_bound(theta, si_channel(s.geometry, s.radio), s.radio);
          },
          py::arg("scenario"), py::arg("theta"));

    m.def("sinr_db",
          [](const Scenario& s, const Codeword& w, const Codeword& v, double theta) {
              return sinr_db(w, v, worst_case_path_gain(s.target, s.radio), theta,
                             si_channel(s.geometry, s.radio), s.radio);
          },
          py::arg("scenario"), py::arg("rx"), py::arg("tx"), py::arg("theta"));

    m.def("joint_solve",
          [](const Scenario& s, double theta_deg, const std::string& order) {
              JointInputs in;
              in.theta = theta_deg * M_PI / 180.0;
              in.theta_c = s.comm_direction_deg * M_PI / 180.0;
              in.c = s.comm_threshold;
              in.h_si = si_channel(s.geometry, s.radio);
              in.radio = s.radio;
              in.grid = s.grid();
              in.alpha_theta = worst_case_path_gain(s.target, s.radio);
              JointOptions jo;
              if (order == "tx-first") jo.order = JointOrder::tx_first;
              else if (order == "rx-first") jo.order = JointOrder::rx_first;
              else if (order != "best") throw ValidationError("unknown joint order: " + order);
              const JointResult r = joint(in, jo);
              py::dict d;
              d["rx"] = r.rx;
              d["tx"] = r.tx;
              d["sinr_db"] = r.sinr_db;
              d["outer_rounds"] = r.outer_rounds;
              d["per_round_sinr_db"] = r.per_round_sinr_db;
              return d;
          },
          py::arg("scenario"), py::arg("theta_deg"), py::arg("order") = "best");

    m.def("run_sweep",
          [](const Scenario& s, const std::vector<std::string>& methods) {
              std::vector<Method> ms;
              for (const auto& name : methods) ms.push_back(method_from_name(name));
              py::list out;
              for (const auto& r : run_sweep(s, ms)) out.append(row_dict(r));
              return out;
          },
          py::arg("scenario"), py::arg("methods"));

    m.def("self_check", [](std::uint64_t seed) {
              std::ostringstream os;
              const bool ok = run_self_checks(seed, os);
              return py::make_tuple(ok, os.str());
          },
          py::arg("seed") = 42);
}
