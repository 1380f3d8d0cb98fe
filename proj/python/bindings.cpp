#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "rmenum/estimator.hpp"
#include "rmenum/exact.hpp"
#include "rmenum/gibbs.hpp"
#include "rmenum/rm_code.hpp"
#include "rmenum/spectrum.hpp"

namespace py = pybind11;
using namespace rmenum;

namespace {

using Bits = std::vector<int>;

BitVec to_bitvec(const Bits& bits) {
  BitVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw std::invalid_argument("bits must be 0 or 1");
    if (bits[i]) v.set(i);
  }
  return v;
}

Bits to_bits(const BitVec& v) {
  Bits out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v.get(i);
  return out;
}

py::list to_pyints(const WeightDistribution& wd) {
  py::list out;
  const py::object as_int = py::module_::import("builtins").attr("int");
  for (const auto& c : wd.counts()) out.append(as_int(c.str()));
  return out;
}

WeightDistribution from_pyints(const py::sequence& counts) {
  std::vector<BigInt> parsed;
  for (const auto& c : counts) parsed.emplace_back(py::str(c).cast<std::string>());
  return WeightDistribution(std::move(parsed));
}

py::dict to_dict(const LogEstimate& e) {
  py::dict d;
  d["log2_z"] = e.log2_z;
  d["rate"] = e.rate;
  d["ell_used"] = e.ell_used;
  d["beta_star"] = e.beta_star;
  d["converged"] = e.converged;
  d["dimension"] = e.dimension;
  return d;
}

py::object from_json(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_rmenum, mod) {
  mod.doc() = "Reed-Muller weight enumeration core";

  static py::exception<ResourceCapExceeded> resource_cap(mod, "ResourceCapExceeded", PyExc_RuntimeError);
  static py::exception<NotACodewordError> not_a_codeword(mod, "NotACodewordError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ResourceCapExceeded& e) {
      resource_cap(e.what());
    } catch (const NotACodewordError& e) {
      not_a_codeword(e.what());
    }
  });

  mod.def("rm_dimension", &rm_dimension, py::arg("m"), py::arg("r"));

  py::class_<RmCode>(mod, "RmCode")
      .def(py::init<int, int>(), py::arg("m"), py::arg("r"))
      .def_property_readonly("m", &RmCode::m)
      .def_property_readonly("r", &RmCode::r)
      .def_property_readonly("n", &RmCode::n)
      .def_property_readonly("k", &RmCode::k)
      .def_property_readonly("min_distance", &RmCode::min_distance)
      .def("generator",
           [](const RmCode& c) {
             std::vector<Bits> rows;
             for (std::size_t i = 0; i < c.k(); ++i) rows.push_back(to_bits(c.generator().row(i)));
             return rows;
           })
      .def("info_set", [](const RmCode& c) { return c.info_set().columns; })
      .def("encode", [](const RmCode& c, const Bits& u) { return to_bits(encode(c, to_bitvec(u))); },
           py::arg("message"))
      .def("contains", [](const RmCode& c, const Bits& x) { return contains(c, to_bitvec(x)); }, py::arg("word"))
      .def("recover_message",
           [](const RmCode& c, const Bits& x) { return to_bits(recover_message(c, to_bitvec(x))); },
           py::arg("codeword"))
      .def(
          "sample_min_weight",
          [](const RmCode& c, std::uint64_t seed) {
            RngStream rng(seed);
            return to_bits(sample_min_weight(c, rng));
          },
          py::arg("seed") = 0)
      .def("__repr__", [](const RmCode& c) {
        return "RmCode(m=" + std::to_string(c.m()) + ", r=" + std::to_string(c.r()) + ")";
      });

  mod.def(
      "sample",
      [](const RmCode& code, std::size_t omega, double beta, std::uint64_t tau, std::uint64_t seed,
         std::optional<Bits> c0) {
        RngStream rng(seed);
        const BitVec start = c0 ? to_bitvec(*c0) : BitVec(code.n());
        py::gil_scoped_release release;
        return to_bits(sample(code, start, beta, EnergyFn(omega), tau, rng));
      },
      py::arg("code"), py::arg("omega"), py::arg("beta"), py::arg("tau"), py::arg("seed") = 0,
      py::arg("c0") = py::none());

  mod.def(
      "estimate_fixed",
      [](const RmCode& code, std::size_t omega, double beta_star, std::size_t t, std::uint64_t tau,
         std::uint64_t seed, double step, unsigned threads) {
        RngStream rng(seed);
        SamplingOptions opts;
        opts.step = step;
        opts.threads = threads;
        LogEstimate e;
        {
          py::gil_scoped_release release;
          e = estimate_fixed(code, omega, beta_star, t, tau, rng, opts);
        }
        return to_dict(e);
      },
      py::arg("code"), py::arg("omega"), py::arg("beta_star"), py::arg("t"), py::arg("tau"), py::arg("seed") = 0,
      py::arg("step") = 0.0, py::arg("threads") = 1);

  mod.def(
      "estimate_adaptive",
      [](const RmCode& code, std::size_t omega, std::size_t t, std::uint64_t tau, double delta,
         std::uint64_t seed, const std::string& rule, std::size_t window, std::size_t max_rounds,
         unsigned threads) {
        RngStream rng(seed);
        AdaptiveOptions opts;
        if (rule == "linear") opts.rule = StopRule::Linear;
        else if (rule == "rate") opts.rule = StopRule::Rate;
        else throw std::invalid_argument("rule must be 'linear' or 'rate'");
        opts.window = window;
        opts.max_rounds = max_rounds;
        opts.sampling.threads = threads;
        LogEstimate e;
        {
          py::gil_scoped_release release;
          e = estimate_adaptive(code, omega, t, tau, delta, rng, opts);
        }
        return to_dict(e);
      },
      py::arg("code"), py::arg("omega"), py::arg("t") = 10, py::arg("tau") = 1'000'000, py::arg("delta") = 0.001,
      py::arg("seed") = 0, py::arg("rule") = "linear", py::arg("window") = 3, py::arg("max_rounds") = 0,
      py::arg("threads") = 1);

  mod.def("sample_size_bound", &sample_size_bound, py::arg("eps"), py::arg("ell"));

  mod.def(
      "brute_force_distribution",
      [](const RmCode& code, std::size_t k_max, unsigned threads) {
        WeightDistribution wd;
        {
          py::gil_scoped_release release;
          wd = brute_force_distribution(code, {k_max, threads});
        }
        return to_pyints(wd);
      },
      py::arg("code"), py::arg("k_max") = 26, py::arg("threads") = 1);

  mod.def(
      "macwilliams_transform",
      [](const py::sequence& counts, std::size_t k) { return to_pyints(macwilliams_transform(from_pyints(counts), k)); },
      py::arg("counts"), py::arg("k"));

  mod.def(
      "coset_recursion_distribution",
      [](int m, int r) {
        WeightDistribution wd;
        {
          py::gil_scoped_release release;
          wd = coset_recursion_distribution(m, r);
        }
        return to_pyints(wd);
      },
      py::arg("m"), py::arg("r"));

  mod.def(
      "candidate_weights",
      [](int m, int r, bool self_dual_filter, bool full_range) {
        return candidate_weights(m, r, self_dual_filter, full_range).weights;
      },
      py::arg("m"), py::arg("r"), py::arg("self_dual_filter") = false, py::arg("full_range") = false);

  mod.def(
      "estimate_spectrum",
      [](const RmCode& code, const std::vector<std::size_t>& candidates, double beta_star, std::uint64_t tau,
         std::size_t trials, std::uint64_t seed, unsigned threads) {
        SpectrumParams params{beta_star, tau, trials, threads};
        RngStream rng(seed);
        nlohmann::json j;
        {
          py::gil_scoped_release release;
          j = estimate_spectrum(code, CandidateSet{code.m(), code.r(), candidates}, params, rng).to_json();
        }
        return from_json(j);
      },
      py::arg("code"), py::arg("candidates"), py::arg("beta_star") = 50.0, py::arg("tau") = 1'000'000,
      py::arg("trials") = 32, py::arg("seed") = 0, py::arg("threads") = 1);
}
