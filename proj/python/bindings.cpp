#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qkit/channels.hpp"
#include "qkit/cv_joint.hpp"
#include "qkit/measurements.hpp"
#include "qkit/scenarios.hpp"
#include "qkit/states.hpp"
#include "qkit/tensor.hpp"

namespace py = pybind11;
using namespace qkit;

namespace {

SystemDims dims_or_single(const CMatrix& m, const std::optional<std::vector<std::size_t>>& dims) {
  return dims ? SystemDims(*dims) : SystemDims::single(static_cast<std::size_t>(m.rows()));
}

DensityOperator state(const CMatrix& m, const std::optional<std::vector<std::size_t>>& dims) {
  return DensityOperator::from(m, dims_or_single(m, dims));
}

LogBase log_base(const std::string& base) {
  if (base == "e") return LogBase::Natural;
  if (base == "2") return LogBase::Two;
  throw Error(ErrorKind::InvalidArgument, "log base must be 'e' or '2'");
}

py::dict violations(const Diagnostic& d) {
  py::dict out;
  for (const auto& v : d.violations) out[py::str(v.condition)] = v.magnitude;
  return out;
}

}  // namespace

PYBIND11_MODULE(_qkit, m) {
  m.doc() = "Finite-dimensional quantum toolkit: states, measurements, channels and joint measurements.";

  static py::exception<Error> error(m, "QkitError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  m.def("kron", py::overload_cast<const CMatrix&, const CMatrix&>(&kron), py::arg("a"), py::arg("b"));
  m.def(
      "partial_trace",
      [](const CMatrix& mat, std::vector<std::size_t> dims, std::vector<std::size_t> keep) {
        return partial_trace(mat, SystemDims(std::move(dims)), keep);
      },
      py::arg("m"), py::arg("dims"), py::arg("keep"));
  m.def(
      "partial_transpose",
      [](const CMatrix& mat, std::vector<std::size_t> dims, std::size_t which) {
        return partial_transpose(mat, SystemDims(std::move(dims)), which);
      },
      py::arg("m"), py::arg("dims"), py::arg("which"));
  m.def(
      "hermitian_eig",
      [](const CMatrix& mat) {
        auto s = hermitian_eig(mat);
        return py::make_tuple(s.eigenvalues, s.eigenvectors);
      },
      py::arg("m"), "Eigenvalues (descending) and eigenvectors as columns.");

  m.def(
      "validate_density",
      [](const CMatrix& mat) {
        auto v = assert_density(mat);
        return py::make_tuple(v.ok(), violations(v.diagnostic()));
      },
      py::arg("m"), "(ok, {condition: magnitude}) for a candidate density matrix.");
  m.def(
      "purity_and_entropy",
      [](const CMatrix& rho, const std::string& base) {
        auto pe = purity_and_entropy(state(rho, std::nullopt), log_base(base));
        return py::make_tuple(pe.purity, pe.entropy);
      },
      py::arg("rho"), py::arg("base") = "e");
  m.def(
      "purify",
      [](const CMatrix& rho) {
        auto p = purify(state(rho, std::nullopt));
        return py::make_tuple(p.vector, p.dims.values());
      },
      py::arg("rho"));
  m.def(
      "reduce",
      [](const CMatrix& rho, std::vector<std::size_t> dims, std::vector<std::size_t> keep) {
        return reduce(state(rho, dims), keep).matrix();
      },
      py::arg("rho"), py::arg("dims"), py::arg("keep"));
  m.def(
      "bloch_vector",
      [](const CMatrix& rho) {
        auto b = bloch_vector(state(rho, std::nullopt));
        return std::vector<double>{b.r1, b.r2, b.r3};
      },
      py::arg("rho"));

  m.def(
      "born_rule", [](const CMatrix& rho, std::vector<CMatrix> povm) {
        return born_rule(state(rho, std::nullopt), assert_povm(std::move(povm)).value());
      },
      py::arg("rho"), py::arg("povm"));
  m.def("trine_povm", [] { return trine_povm().elements; });
  m.def(
      "measure",
      [](const CMatrix& rho, std::vector<CMatrix> ops) {
        auto res = measure(state(rho, std::nullopt), assert_instrument(std::move(ops)).value());
        py::list states;
        for (const auto& r : res.records) states.append(py::make_tuple(r.outcome, r.state.matrix()));
        return py::make_tuple(res.probabilities, states);
      },
      py::arg("rho"), py::arg("ops"), "Probabilities and (outcome, post-state) pairs.");
  m.def(
      "canonical_naimark",
      [](std::vector<CMatrix> ops) {
        auto ext = canonical_naimark(assert_instrument(std::move(ops)).value());
        py::dict out;
        out["unitary"] = ext.unitary;
        out["ancilla_dim"] = ext.ancilla_dim;
        out["ancilla_state"] = ext.ancilla_state;
        out["recovered_povm"] = recovered_povm(ext).elements;
        return out;
      },
      py::arg("ops"));
  m.def(
      "sample",
      [](const CMatrix& rho, std::vector<CMatrix> ops, std::uint64_t shots, std::uint64_t seed) {
        auto r = sample_outcomes(state(rho, std::nullopt), assert_instrument(std::move(ops)).value(), shots, seed);
        return py::make_tuple(r.counts, r.max_sigma);
      },
      py::arg("rho"), py::arg("ops"), py::arg("shots"), py::arg("seed"));

  m.def("depolarizing", [](double g) { return depolarizing(g).kraus_ops; }, py::arg("gamma"));
  m.def(
      "apply_channel",
      [](std::vector<CMatrix> ops, const CMatrix& x) { return act(make_channel(std::move(ops)), x); },
      py::arg("ops"), py::arg("x"));
  m.def(
      "choi", [](std::vector<CMatrix> ops) { return choi(make_channel(std::move(ops))).mat; }, py::arg("ops"));
  m.def(
      "choi_of_superoperator",
      [](const CMatrix& s) { return choi(LinearMap::from_superoperator(s)).mat; }, py::arg("superop"));
  m.def(
      "kraus_from_choi",
      [](const CMatrix& c) {
        return kraus_from_choi({c, static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(c.rows()))))})
            .kraus_ops;
      },
      py::arg("choi"));
  m.def(
      "is_completely_positive",
      [](const CMatrix& superop) {
        auto v = is_completely_positive(LinearMap::from_superoperator(superop));
        return py::make_tuple(v.completely_positive, v.min_eigenvalue);
      },
      py::arg("superop"));
  m.def("transposition_superoperator", [](std::size_t d) { return transposition_map(d).superoperator(); },
        py::arg("d"));
  m.def(
      "stinespring",
      [](std::vector<CMatrix> ops) {
        auto dil = stinespring(make_channel(std::move(ops)));
        return py::make_tuple(dil.unitary, dil.ancilla_dim);
      },
      py::arg("ops"));
  m.def(
      "same_channel",
      [](std::vector<CMatrix> a, std::vector<CMatrix> b) {
        return same_channel(make_channel(std::move(a)), make_channel(std::move(b)));
      },
      py::arg("a"), py::arg("b"));
  m.def(
      "ppt_check",
      [](const CMatrix& rho, std::vector<std::size_t> dims) {
        auto r = ppt_check(state(rho, dims));
        return py::make_tuple(r.min_eigenvalue, r.negative);
      },
      py::arg("rho"), py::arg("dims"));

  m.def(
      "coherent_state", [](Complex alpha, std::size_t cutoff) { return coherent_state(alpha, build_fock(cutoff)); },
      py::arg("alpha"), py::arg("cutoff") = kDefaultCutoff);
  m.def(
      "joint_statistics",
      [](Complex alpha, std::size_t cutoff) {
        const auto space = build_fock(cutoff);
        const auto r = joint_statistics(joint_pair(space), DensityOperator::pure(coherent_state(alpha, space)),
                                        DensityOperator::pure(space.number_state(0)));
        py::dict out;
        out["varX"] = r.var_x;
        out["varY"] = r.var_y;
        out["product"] = r.product;
        out["bound"] = r.single_bound;
        out["added_noise_terms"] = std::vector<double>{r.added_noise[0], r.added_noise[1], r.added_noise[2]};
        return out;
      },
      py::arg("alpha"), py::arg("cutoff") = kDefaultCutoff,
      "Coherent input with a vacuum replica.");

  m.def("scenario_names", &scenario_names);
  m.def(
      "run_scenario_json",
      [](const std::string& name, std::uint64_t seed, std::optional<double> tol, const std::string& base,
         std::size_t cutoff, std::optional<std::string> state_path, std::optional<std::string> instrument,
         std::optional<std::string> channel, double gamma, std::uint64_t shots) {
        ScenarioOptions o;
        o.seed = seed;
        o.tol = tol;
        o.log_base = log_base(base);
        o.cutoff = cutoff;
        o.state = std::move(state_path);
        o.instrument = std::move(instrument);
        o.channel = std::move(channel);
        o.gamma = gamma;
        o.shots = shots;
        return run_scenario(name, o).to_json().dump();
      },
      py::arg("name"), py::arg("seed") = 0, py::arg("tol") = py::none(), py::arg("log_base") = "e",
      py::arg("cutoff") = kDefaultCutoff, py::arg("state") = py::none(), py::arg("instrument") = py::none(),
      py::arg("channel") = py::none(), py::arg("gamma") = 0.75, py::arg("shots") = 100000);
}
