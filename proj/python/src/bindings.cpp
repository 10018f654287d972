// Thin pybind11 layer. Structured results cross as JSON text; the Python
// package decodes them and turns exact rationals into fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hexperc/cli.hpp"
#include "hexperc/errors.hpp"
#include "hexperc/exact.hpp"
#include "hexperc/montecarlo.hpp"
#include "hexperc/pathsum.hpp"
#include "hexperc/rational.hpp"
#include "hexperc/stats.hpp"

namespace py = pybind11;
using namespace hexperc;
using nlohmann::json;

namespace {

CellGraph graph_from(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return json::parse(arg).get<CellGraph>();
  return builtin_graph(arg);
}

std::pair<std::string, std::string> fraction_parts(const Rational& r) {
  return {numerator(r).str(), denominator(r).str()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multi-fluid hexagonal percolation core";
  static py::exception<Refusal> refusal(m, "Refusal", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Refusal& e) {
      py::set_error(refusal, e.what());
    } catch (const ParameterError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  m.def("version", &cli::version_string);
  m.def("hex_distance", [](int q1, int r1, int q2, int r2) { return hex_distance({q1, r1}, {q2, r2}); });

  py::class_<Lattice>(m, "Lattice")
      .def_property_readonly("s", &Lattice::s)
      .def_property_readonly("m", &Lattice::m)
      .def_property_readonly("cells",
                             [](const Lattice& l) {
                               std::vector<std::pair<int, int>> out;
                               for (const auto& c : l.cells()) out.emplace_back(c.q, c.r);
                               return out;
                             })
      .def("neighbors",
           [](const Lattice& l, CellId id) {
             if (id < 0 || id >= l.m()) throw py::index_error("cell out of range");
             const auto nb = l.neighbors(id);
             return std::vector<CellId>(nb.begin(), nb.end());
           })
      .def("index_of", [](const Lattice& l, int q, int r) { return l.index_of({q, r}); })
      .def_property_readonly("boundary_cells", &Lattice::boundary_cells)
      .def_property_readonly("center_adjacent",
                             [](const Lattice& l) {
                               const auto ca = l.center_adjacent();
                               return std::vector<CellId>(ca.begin(), ca.end());
                             })
      .def("__repr__", [](const Lattice& l) {
        return "Lattice(s=" + std::to_string(l.s()) + ", m=" + std::to_string(l.m()) + ")";
      });
  m.def("build_lattice", &build_lattice, py::arg("s"));

  m.def(
      "run_json",
      [](int s, int n, std::uint64_t samples, std::uint64_t seed, int workers) {
        const auto lat = build_lattice(s);
        Tally t;
        {
          py::gil_scoped_release release;
          t = run(lat, RunConfig{s, n, samples, seed, workers});
        }
        return tally_to_json(t).dump();
      },
      py::arg("s"), py::arg("n"), py::arg("samples"), py::arg("seed") = 0, py::arg("workers") = 1);
  m.def(
      "estimate_json",
      [](const std::string& tally, double z) {
        const auto e = estimate(tally_from_json(json::parse(tally)), z);
        json b = json::array();
        for (std::size_t k = 0; k < e.b_hat.size(); ++k) {
          b.push_back({{"k", k}, {"p", e.b_hat[k]}, {"lo", e.b_ci[k].lo}, {"hi", e.b_ci[k].hi}});
        }
        json out = {{"p_hat", e.p_hat}, {"p_se", e.p_se}, {"p_lo", e.p_ci.lo}, {"p_hi", e.p_ci.hi},
                    {"B", b},           {"all_hat", e.all_hat}, {"ratio", nullptr}};
        if (e.ratio) out["ratio"] = *e.ratio, out["ratio_lo"] = e.ratio_ci.lo, out["ratio_hi"] = e.ratio_ci.hi;
        return out.dump();
      },
      py::arg("tally"), py::arg("z") = kZ95);

  m.def(
      "exact_json",
      [](int s, int n, int budget) { return exact_report_json(exact_distribution(build_lattice(s), n, budget)).dump(); },
      py::arg("s"), py::arg("n"), py::arg("budget") = kDefaultEnumerationBudget);

  m.def("builtin_graph_names", &builtin_graph_names);
  m.def(
      "count_paths", [](const std::string& g, std::uint64_t cap) { return count_paths(graph_from(g), cap); },
      py::arg("graph"), py::arg("cap") = kDefaultPathCap);
  m.def(
      "enumerate_paths",
      [](const std::string& g, std::uint64_t cap) {
        std::vector<std::vector<int>> out;
        for (auto& p : enumerate_paths(graph_from(g), cap)) out.push_back(std::move(p.cells));
        return out;
      },
      py::arg("graph"), py::arg("cap") = kDefaultPathCap);
  m.def(
      "single_fluid_sum_parts",
      [](const std::string& g, std::uint64_t cap) { return fraction_parts(single_fluid_sum(graph_from(g), cap)); },
      py::arg("graph"), py::arg("subset_cap") = kDefaultSubsetCap);
  m.def(
      "triple_fluid_sum_parts",
      [](const std::string& g, std::uint64_t cap) { return fraction_parts(triple_fluid_sum(graph_from(g), cap)); },
      py::arg("graph"), py::arg("subset_cap") = kDefaultSubsetCap);
  m.def(
      "brute_force_parts",
      [](const std::string& g, int n, bool all_fluids, int budget) {
        return fraction_parts(
            brute_force_prob(graph_from(g), n, all_fluids ? FluidEvent::AllFluids : FluidEvent::OneFluid, budget));
      },
      py::arg("graph"), py::arg("n"), py::arg("all_fluids"), py::arg("budget") = 30);

  m.def("normal_cdf", &normal_cdf, py::arg("x"));
  m.def("berry_esseen_bound", &berry_esseen_bound, py::arg("p"), py::arg("n"));
  m.def("binomial_ks_reference", &binomial_ks_reference, py::arg("n"), py::arg("p"));
  m.def(
      "ks_distance_pmf",
      [](int n, const std::vector<double>& pmf, double p) {
        return ks_distance(standardized_cdf_from_pmf(n, pmf, p));
      },
      py::arg("n"), py::arg("pmf"), py::arg("p"));
  m.def(
      "fraction_gap",
      [](const std::string& tally) {
        const auto t = tally_from_json(json::parse(tally));
        const auto g = fraction_gap(ksample_from_tally(t), zsample_from_tally(t), estimate(t).p_hat);
        return py::dict(py::arg("sup_gap") = g.sup_gap, py::arg("bound") = g.bound,
                        py::arg("tolerance") = g.tolerance, py::arg("holds") = g.holds);
      },
      py::arg("tally"));

  m.def(
      "cli_json",
      [](const std::vector<std::string>& argv) {
        const auto cmd = cli::parse_invocation(argv);
        cli::CommandResult r;
        {
          py::gil_scoped_release release;
          r = cli::execute(cmd);
        }
        return std::make_tuple(r.exit_code, r.summary.dump(), r.files);
      },
      py::arg("argv"));
}
