#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <tuple>

#include "polysg/errors.hpp"
#include "polysg/gapdecomp.hpp"
#include "polysg/io.hpp"
#include "polysg/ringprops.hpp"
#include "polysg/semigroup.hpp"

namespace py = pybind11;
using namespace polysg;

namespace {

using Triple = std::tuple<std::int64_t, std::int64_t, std::int64_t>;

py::object fraction(const Rat& r) {
  static py::object Fraction = py::module_::import("fractions").attr("Fraction");
  return Fraction(to_string(r));
}

py::tuple rational_point(const Point3& p) { return py::make_tuple(fraction(p.x), fraction(p.y), fraction(p.z)); }

Triple triple(const LatticePoint& p) { return {p.x, p.y, p.z}; }

std::vector<Triple> triples(const std::vector<LatticePoint>& ps) {
  std::vector<Triple> out;
  for (const auto& p : ps) out.push_back(triple(p));
  return out;
}

LatticePoint lattice(const Triple& t) { return {std::get<0>(t), std::get<1>(t), std::get<2>(t)}; }

// Coordinates may be int, str ("33/16", "2.2") or fractions.Fraction; str() covers all three.
std::vector<Point3> vertices_from(const py::iterable& rows) {
  std::vector<Point3> out;
  for (const auto& row : rows) {
    std::vector<Rat> c;
    for (const auto& x : row.cast<py::iterable>()) c.push_back(parse_rat(py::str(x).cast<std::string>()));
    if (c.size() != 3) throw Error(ErrorKind::ParseError, "each vertex needs three coordinates");
    out.push_back({c[0], c[1], c[2]});
  }
  return out;
}

py::dict verdict_dict(const PropertyVerdict& v) {
  py::dict d;
  d["property"] = v.property;
  d["verdict"] = std::string(verdict_name(v.verdict));
  d["case_used"] = v.case_used;
  if (v.witness) {
    py::dict w;
    w["p"] = triple(v.witness->p);
    w["i"] = v.witness->i;
    w["j"] = v.witness->j;
    w["g_i"] = triple(v.witness->g_i);
    w["g_j"] = triple(v.witness->g_j);
    d["witness"] = w;
  } else {
    d["witness"] = py::none();
  }
  d["maximal_elements"] = triples(v.maximal_elements);
  d["diagnostics"] = v.diagnostics;
  return d;
}

DecideOptions decide(std::int64_t budget) {
  DecideOptions o;
  o.search.budget_layers = budget;
  return o;
}

}  // namespace

PYBIND11_MODULE(_polysg, m) {
  m.doc() = "Exact computations on convex polyhedron semigroups in three dimensions";

  static py::exception<Error> exc(m, "PolysgError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc, e.what());
    }
  });

  py::class_<SemigroupHandle>(m, "Semigroup")
      .def(py::init([](const py::iterable& vertices) { return build(vertices_from(vertices)); }), py::arg("vertices"))
      .def_static("from_text", [](const std::string& text) { return build(io::parse_vertices(text)); })
      .def_property_readonly("simplicial", [](const SemigroupHandle& h) { return h.simplicial; })
      .def_property_readonly("vertices",
                             [](const SemigroupHandle& h) {
                               py::list out;
                               for (const auto& v : h.body.vertices) out.append(rational_point(v));
                               return out;
                             })
      .def_property_readonly("rays",
                             [](const SemigroupHandle& h) {
                               std::vector<Triple> out;
                               for (const auto& r : h.rays) out.push_back(triple(to_lattice(r)));
                               return out;
                             })
      .def_property_readonly("ray_generators",
                             [](const SemigroupHandle& h) {
                               std::vector<Triple> out;
                               for (const auto& g : h.ray_generators) out.push_back(triple(to_lattice(g)));
                               return out;
                             })
      .def("__contains__", [](const SemigroupHandle& h, const Triple& p) { return h.in_semigroup(lattice(p)); })
      .def(
          "member",
          [](const SemigroupHandle& h, const Triple& p) {
            auto r = member(h, lattice(p));
            return std::make_tuple(r.in, r.witness_k);
          },
          "Returns (in, least k with p in kP); raises for points outside the cone.")
      .def(
          "generators",
          [](const SemigroupHandle& h, std::int64_t budget) {
            SearchOptions o;
            o.budget_layers = budget;
            return triples(minimal_generators(h, o).generators);
          },
          py::arg("budget_layers") = 400)
      .def("kappa0", [](const SemigroupHandle& h) { return kappa0(h, classify(h)); })
      .def("k3", [](const SemigroupHandle& h) { return k3(h, classify(h)); })
      .def("period", [](const SemigroupHandle& h) { return period_length(h); })
      .def("classification",
           [](const SemigroupHandle& h) {
             auto c = classify(h);
             py::dict d;
             for (std::size_t i = 0; i < h.body.vertices.size(); ++i)
               d[rational_point(h.body.vertices[i])] = std::string(class_name(c.of_vertex[i]));
             return d;
           })
      .def(
          "gaps",
          [](const SemigroupHandle& h, std::int64_t extra_periods) {
            auto c = classify(h);
            return triples(gap_points(h, c, gap_region(h, c), extra_periods));
          },
          py::arg("extra_periods") = 2)
      .def(
          "is_cohen_macaulay",
          [](const SemigroupHandle& h, std::int64_t b) { return verdict_dict(is_cohen_macaulay(h, decide(b))); },
          py::arg("budget_layers") = 400)
      .def(
          "is_gorenstein",
          [](const SemigroupHandle& h, std::int64_t b) { return verdict_dict(is_gorenstein(h, decide(b))); },
          py::arg("budget_layers") = 400)
      .def(
          "is_buchsbaum",
          [](const SemigroupHandle& h, std::int64_t b) { return verdict_dict(is_buchsbaum(h, decide(b))); },
          py::arg("budget_layers") = 400);

  m.def("parse_vertices", [](const std::string& text) {
    py::list out;
    for (const auto& v : io::parse_vertices(text)) out.append(rational_point(v));
    return out;
  });
  m.def("gorenstein_family", [](std::int64_t k) {
    py::list out;
    for (const auto& v : gorenstein_family(k)) out.append(rational_point(v));
    return out;
  });
  m.def("apery_table", [](std::int64_t k) {
    std::vector<std::vector<Triple>> out;
    for (const auto& row : apery_table(k)) out.push_back(triples(row));
    return out;
  });
}
