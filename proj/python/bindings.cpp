#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "khcube/corpus.hpp"
#include "khcube/errors.hpp"
#include "khcube/filtration.hpp"
#include "khcube/invariants.hpp"
#include "khcube/khovanov.hpp"

namespace py = pybind11;
using namespace khcube;

namespace {

py::int_ to_py(const Integer& x) {
  const std::string s = x.str();
  return py::reinterpret_steal<py::int_>(PyLong_FromString(s.c_str(), nullptr, 10));
}

py::dict table_dict(const HomologyTable& t) {
  py::dict out;
  for (const auto& [k, g] : t.groups) {
    py::list torsion;
    for (const auto& d : g.torsion) torsion.append(to_py(d));
    out[py::make_tuple(k.first, k.second)] = py::make_tuple(g.free_rank, torsion);
  }
  return out;
}

KhOptions options(bool reduced, std::optional<int> shift, bool trust_pseudo) {
  if (shift && !reduced) throw Error(ErrorCode::InvalidArgument, "reduced_shift needs reduced=True");
  KhOptions o;
  o.reduced = reduced;
  o.reduced_shift = shift.value_or(1);
  o.trust_pseudo = trust_pseudo;
  return o;
}

RankTable rank_table(const std::map<std::pair<int, int>, int>& ranks) { return ranks; }

}  // namespace

PYBIND11_MODULE(_khcube, m) {
  m.doc() = "Khovanov cube complexes, spectral sequences and rank deductions";

  static py::exception<std::runtime_error> error(m, "KhcubeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      PyErr_SetObject(exc.ptr(), py::make_tuple(std::string(error_name(e.code())), e.what()).ptr());
    }
  });

  py::class_<PlanarDiagram>(m, "Diagram")
      .def_property_readonly("num_crossings", &PlanarDiagram::num_crossings)
      .def_property_readonly("num_components", &PlanarDiagram::num_components)
      .def_property_readonly("oriented", &PlanarDiagram::oriented)
      .def_property_readonly("marked", &PlanarDiagram::marked)
      .def_property_readonly("signs", &PlanarDiagram::signs)
      .def_property_readonly("writhe", &PlanarDiagram::writhe)
      .def("mirror", &PlanarDiagram::mirror)
      .def("is_planar", [](const PlanarDiagram& d) { return is_planar(d); })
      .def("to_pd", &PlanarDiagram::to_pd_string)
      .def("__repr__", [](const PlanarDiagram& d) { return "Diagram(" + d.to_pd_string() + ")"; });

  m.def("parse_pd", &parse_pd, py::arg("text"));
  m.def("corpus_names", [] {
    std::vector<std::string> names;
    for (const auto& e : corpus()) names.push_back(e.name);
    return names;
  });
  m.def("corpus_diagram", &corpus_diagram, py::arg("name"));
  m.def("torus_4_5", &torus_4_5);
  m.def("braid_closure", &braid_closure, py::arg("strands"), py::arg("word"));

  m.def(
      "khovanov_homology",
      [](const PlanarDiagram& d, bool reduced, std::optional<int> shift, bool trust_pseudo) {
        const auto o = options(reduced, shift, trust_pseudo);
        HomologyTable t;
        {
          py::gil_scoped_release release;
          t = khovanov_homology(d, o);
        }
        return table_dict(t);
      },
      py::arg("diagram"), py::arg("reduced") = false, py::arg("reduced_shift") = py::none(),
      py::arg("trust_pseudo") = false);
  m.def(
      "rational_ranks",
      [](const PlanarDiagram& d, bool reduced, std::optional<int> shift) {
        return rational_ranks(khovanov_homology(d, options(reduced, shift, false)));
      },
      py::arg("diagram"), py::arg("reduced") = false, py::arg("reduced_shift") = py::none(),
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "spectral_sequence_json",
      [](const PlanarDiagram& d, int a, int b, std::optional<uint64_t> seed, bool reduced) {
        if (a < 0 || b < 0 || (a == 0 && b == 0))
          throw Error(ErrorCode::InvalidArgument, "weight must be nonnegative and not both zero");
        BigradedComplex c = build_khovanov(d, options(reduced, std::nullopt, false)).assemble();
        if (seed) c.d = sandbox_perturb(c, *seed).d_sharp;
        return spectral_sequence(make_filtered(std::move(c), Weight{a, b})).to_json();
      },
      py::arg("diagram"), py::arg("a") = 1, py::arg("b") = 0, py::arg("seed") = py::none(),
      py::arg("reduced") = false, py::call_guard<py::gil_scoped_release>());

  m.def("alexander", [](const PlanarDiagram& d) {
    const auto p = alexander(d);
    py::dict coeffs;
    for (const auto& [e, c] : p.terms()) coeffs[py::int_(e)] = to_py(c);
    return py::make_tuple(p.to_string(), coeffs);
  });
  m.def("rank_lower_bound", [](const PlanarDiagram& d) { return rank_lower_bound(alexander(d)); });
  m.def("mod4_betti", [](const std::map<std::pair<int, int>, int>& ranks) { return mod4_betti(rank_table(ranks)).betti; });
  m.def(
      "feasibility_json",
      [](const std::map<std::pair<int, int>, int>& ranks, int target, const std::string& filtration,
         std::optional<PlanarDiagram> alexander_of) {
        FeasibilityOptions o;
        if (filtration == "q")
          o.mode = FiltrationCase::Q;
        else if (filtration != "h")
          throw Error(ErrorCode::InvalidArgument, "filtration must be h or q");
        if (alexander_of) o.alexander = alexander(*alexander_of);
        return differential_feasibility(rank_table(ranks), target, o).to_json();
      },
      py::arg("ranks"), py::arg("target_rank"), py::arg("filtration") = "h", py::arg("alexander_of") = py::none());
}
