#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "hypercount/conditions.hpp"
#include "hypercount/distance.hpp"
#include "hypercount/hoeffding.hpp"
#include "hypercount/moments.hpp"
#include "hypercount/sim.hpp"
#include "hypercount/sweep.hpp"

namespace py = pybind11;
using namespace hypercount;

namespace {

ProbabilitySpec spec_from_dict(const std::map<int, std::string>& schedules) {
  return ProbabilitySpec::from_strings(schedules);
}

py::dict exact_moments_py(const Pattern& p, int n,
                          const std::map<int, std::string>& schedules,
                          const std::string& mode) {
  Pattern pat = remove_isolated_vertices(p).first;
  Probabilities probs = spec_from_dict(schedules).evaluate(n);
  py::dict out;
  out["mean"] = mean_exact(pat, n, probs);
  FourthMomentTally t(pat, n);
  double var = t.variance(probs);
  double m4 = t.fourth_central(probs);
  out["variance"] = var;
  out["fourth_central"] = m4;
  out["excess_kurtosis"] = m4 / (var * var) - 3.0;
  if (mode == "rational") {
    out["mean_exact"] = rational_to_string(mean_exact_rat(pat, n, probs));
    out["variance_exact"] = rational_to_string(t.variance_exact(probs));
    out["fourth_central_exact"] =
        rational_to_string(t.fourth_central_exact(probs));
  }
  return out;
}

py::dict bounds_py(const Pattern& p, long long n,
                   const std::map<int, std::string>& schedules) {
  Probabilities probs = spec_from_dict(schedules).evaluate(n);
  py::dict out;
  out["wasserstein"] = bound_wasserstein(p, n, probs);
  out["kolmogorov"] = bound_kolmogorov(p, n, probs);
  out["bounded_p"] = bound_bounded_p(p, n, probs);
  auto [s1, s2] = bound_sufficient(p, n, probs);
  out["sufficient_weighted"] = s1;
  out["sufficient_plain"] = s2;
  out["jlr"] = bound_jlr(p, n, probs);
  return out;
}

py::dict pmf_py(const Pattern& p, int n,
                const std::map<int, std::string>& schedules) {
  Probabilities probs = spec_from_dict(schedules).evaluate(n);
  py::dict out;
  for (const auto& [z, pr] : pmf_oracle(p, n, probs))
    out[py::int_(z)] = pr;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "copy-count statistics for inhomogeneous random hypergraphs";

  py::register_exception<GuardExceeded>(m, "GuardExceededError");

  py::class_<Pattern>(m, "Pattern")
      .def(py::init([](int vertices, const std::vector<std::vector<int>>& edges) {
             std::vector<Edge> es;
             for (auto e : edges) {
               for (auto& v : e) --v;  // 1-based in, 0-based stored
               es.push_back(std::move(e));
             }
             return Pattern(vertices, std::move(es));
           }),
           py::arg("vertices"), py::arg("edges"))
      .def_static("parse", &Pattern::parse)
      .def_static("from_file",
                  [](const std::string& path) { return Pattern::from_file(path); })
      .def_property_readonly("vertex_count", &Pattern::vertex_count)
      .def_property_readonly("edge_count", &Pattern::edge_count)
      .def_property_readonly("edges",
                             [](const Pattern& p) {
                               std::vector<std::vector<int>> out;
                               for (auto e : p.edges()) {
                                 for (auto& v : e) ++v;
                                 out.push_back(std::move(e));
                               }
                               return out;
                             })
      .def("signature", &Pattern::signature)
      .def("to_text", &Pattern::to_text)
      .def("__repr__", [](const Pattern& p) {
        return "Pattern(" + p.signature() + ")";
      });

  m.def("remove_isolated_vertices", [](const Pattern& p) {
    auto [trimmed, k] = remove_isolated_vertices(p);
    return py::make_tuple(trimmed, k);
  });
  m.def("are_isomorphic", &are_isomorphic);
  m.def("automorphism_count",
        [](const Pattern& p) { return automorphism_count(p); });
  m.def("count_copies", [](const Pattern& p, int n) {
    return count_copies_total(remove_isolated_vertices(p).first, n);
  });
  m.def("enumerate_copies", [](const Pattern& p, int n) {
    std::vector<std::vector<std::vector<int>>> out;
    for (const auto& c :
         enumerate_copies(remove_isolated_vertices(p).first, n)) {
      std::vector<std::vector<int>> edges;
      for (auto e : c.edges) {
        for (auto& v : e) ++v;
        edges.push_back(std::move(e));
      }
      out.push_back(std::move(edges));
    }
    return out;
  });
  m.def("is_edgewise_separable",
        [](const std::vector<std::vector<std::vector<int>>>& families) {
          std::vector<PlacedCopy> copies;
          for (const auto& f : families) {
            PlacedCopy c;
            for (auto e : f) {
              for (auto& v : e) --v;
              std::sort(e.begin(), e.end());
              c.edges.push_back(std::move(e));
            }
            copies.push_back(std::move(c));
          }
          return is_edgewise_separable(copies);
        });

  m.def("exact_moments", &exact_moments_py, py::arg("pattern"), py::arg("n"),
        py::arg("spec"), py::arg("mode") = "float");
  m.def("pmf_oracle", &pmf_py, py::arg("pattern"), py::arg("n"), py::arg("spec"));
  m.def("bounds", &bounds_py, py::arg("pattern"), py::arg("n"), py::arg("spec"));
  m.def("kurtosis_surrogate", [](const Pattern& p, long long n, double ph) {
    KurtosisSurrogate s = kurtosis_surrogate(p, n, ph);
    py::dict out;
    out["value"] = s.value;
    out["companion"] = s.companion;
    out["witness"] = s.witness;
    return out;
  });

  m.def(
      "simulate",
      [](const Pattern& p, int n, const std::map<int, std::string>& schedules,
         std::uint64_t reps, std::uint64_t seed, int workers) {
        return simulate_copy_counts(p, n, spec_from_dict(schedules), reps,
                                    seed, workers)
            .values;
      },
      py::arg("pattern"), py::arg("n"), py::arg("spec"), py::arg("reps"),
      py::arg("seed") = 1, py::arg("workers") = 1);
  m.def("standardize", &standardize);

  m.def("dk_empirical", &dk_empirical);
  m.def("dw_empirical", &dw_empirical);
  m.def("dkw_radius", &dkw_radius);

  m.def("hoeffding_check",
        [](const Pattern& p, int n, const std::map<int, std::string>& schedules,
           std::uint64_t reps, std::uint64_t seed) {
          Pattern pat = remove_isolated_vertices(p).first;
          Probabilities probs = spec_from_dict(schedules).evaluate(n);
          ProjectionReport rep = projection_report(pat, n, probs);
          double mean = mean_exact(pat, n, probs);
          double sd = std::sqrt(rep.var_z);
          double worst = 0;
          for (std::uint64_t r = 0; r < reps; ++r) {
            auto realized =
                sample_relevant_edges(n, probs, pat.sizes(), seed, r);
            auto [zt, sum] =
                hoeffding_reconstruct(pat, n, probs, realized, mean, sd);
            worst = std::max(worst, std::abs(zt - sum));
          }
          py::dict out;
          out["projection_sum"] = rep.total;
          out["reconstruction_worst_dev"] = worst;
          return out;
        },
        py::arg("pattern"), py::arg("n"), py::arg("spec"), py::arg("reps") = 200,
        py::arg("seed") = 1);

  m.def("run_sweep", [](const std::string& config_path) {
    ExperimentConfig c = load_config(config_path);
    auto rows = run_sweep(c);
    if (!c.out_dir.empty()) emit_plot_data(rows, c.out_dir);
    py::list out;
    for (const auto& r : rows) {
      py::dict d;
      d["n"] = r.n;
      d["quantity"] = r.quantity;
      d["value"] = r.value;
      d["witness"] = r.witness;
      d["status"] = r.status;
      out.append(d);
    }
    return out;
  });
}
