#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "masstransport/birkhoff.hpp"
#include "masstransport/cli.hpp"
#include "masstransport/errors.hpp"
#include "masstransport/spec_json.hpp"
#include "masstransport/transport.hpp"
#include "masstransport/verify.hpp"

namespace py = pybind11;
using namespace mtp;

namespace {

// Rationals cross the boundary as "p/q" strings; the Python layer turns them
// into fractions.Fraction.
std::string rat(const Rational& r) { return to_string(r); }

McOptions mc(std::uint64_t seed, std::uint64_t trials, unsigned threads) {
  McOptions o;
  o.seed = seed;
  o.trials = trials;
  o.threads = threads;
  return o;
}

py::dict estimate(const EstimateCI& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["std_error"] = e.std_error;
  d["trials"] = e.trials;
  d["ci_low"] = e.ci_low;
  d["ci_high"] = e.ci_high;
  return d;
}

PathWindow window(Index lo, const std::vector<double>& increments) {
  return PathWindow(lo, lo + static_cast<Index>(increments.size()), increments);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mass transport checks for stationary increment processes";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::class_<Process>(m, "Process")
      .def_static(
          "from_json", [](const std::string& text) { return Process::make(spec_from_json(nlohmann::json::parse(text))); },
          py::arg("text"))
      .def_static(
          "from_file", [](const std::string& path) { return Process::make(parse_spec(path)); }, py::arg("path"))
      .def_property_readonly("kind", [](const Process& p) { return std::string(to_string(p.kind())); })
      .def_property_readonly("mean", &Process::mean)
      .def_property_readonly("exact_mean",
                             [](const Process& p) -> std::optional<std::string> {
                               if (!p.exact_mean()) return std::nullopt;
                               return rat(*p.exact_mean());
                             })
      .def_property_readonly("exact_capable", &Process::exact_capable)
      .def("to_json", [](const Process& p) { return spec_to_json(p.spec()).dump(); });

  m.def(
      "sample_window",
      [](const Process& p, Index lo, Index hi, std::uint64_t seed, std::uint64_t trial) {
        const auto w = sample_window(p, lo, hi, seed, trial);
        return std::vector<double>(w.increments().begin(), w.increments().end());
      },
      py::arg("process"), py::arg("lo"), py::arg("hi"), py::arg("seed") = 0, py::arg("trial") = 0);

  m.def(
      "mass_row",
      [](Index lo, const std::vector<double>& xs, Index sender) {
        std::map<Index, double> out;
        const auto row = mass_row(window(lo, xs), sender);
        for (const auto& [k, v] : row.entries) out[k] = v;
        return out;
      },
      py::arg("lo"), py::arg("increments"), py::arg("sender"));
  m.def(
      "total_sent", [](Index lo, const std::vector<double>& xs, Index sender) { return total_sent(window(lo, xs), sender); },
      py::arg("lo"), py::arg("increments"), py::arg("sender"));
  m.def(
      "mass_received_at_zero", [](Index lo, const std::vector<double>& xs) { return mass_received_at_zero(window(lo, xs)); },
      py::arg("lo"), py::arg("increments"));

  m.def(
      "exact_identity",
      [](const Process& p, Index n) {
        const auto pair = exact_identity(p, n);
        return std::make_pair(rat(pair.lhs), rat(pair.rhs));
      },
      py::arg("process"), py::arg("n"));
  m.def(
      "mc_identity",
      [](const Process& p, Index horizon, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
        py::list rows;
        for (const auto& e : mc_identity(p, horizon, mc(seed, trials, threads)).entries) {
          py::dict d;
          d["n"] = e.n;
          d["lhs"] = estimate(*e.mc_lhs);
          d["rhs"] = estimate(*e.mc_rhs);
          d["pass"] = e.pass;
          rows.append(d);
        }
        return rows;
      },
      py::arg("process"), py::arg("horizon"), py::arg("trials") = 100000, py::arg("seed") = 0, py::arg("threads") = 0);
  m.def(
      "exact_maximal_ergodic", [](const Process& p, Index horizon) { return rat(exact_maximal_ergodic(p, horizon)); },
      py::arg("process"), py::arg("horizon"));
  m.def(
      "mc_maximal_ergodic",
      [](const Process& p, Index horizon, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
        return estimate(mc_maximal_ergodic(p, horizon, mc(seed, trials, threads)));
      },
      py::arg("process"), py::arg("horizon"), py::arg("trials") = 100000, py::arg("seed") = 0, py::arg("threads") = 0);
  m.def(
      "exact_survival", [](const Process& p, Index horizon) { return rat(exact_survival(p, horizon)); },
      py::arg("process"), py::arg("horizon"));
  m.def(
      "mc_survival",
      [](const Process& p, Index horizon, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
        return estimate(mc_survival(p, horizon, mc(seed, trials, threads)));
      },
      py::arg("process"), py::arg("horizon"), py::arg("trials") = 100000, py::arg("seed") = 0, py::arg("threads") = 0);
  m.def("survival_tail_bound", &survival_tail_bound, py::arg("process"), py::arg("horizon"));

  m.def(
      "estimate_a_epsilon",
      [](const Process& p, double epsilon, Index n_max, std::optional<Index> cutoff, std::uint64_t trials,
         std::uint64_t seed, unsigned threads) {
        return estimate(estimate_a_epsilon(p, {epsilon, n_max, cutoff, Tail::Lower}, mc(seed, trials, threads)));
      },
      py::arg("process"), py::arg("epsilon") = 0.1, py::arg("n_max") = Index{1} << 14, py::arg("cutoff") = py::none(),
      py::arg("trials") = 10000, py::arg("seed") = 0, py::arg("threads") = 0);

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "masstransport");
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
