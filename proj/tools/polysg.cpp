#include <iostream>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "polysg/errors.hpp"
#include "polysg/gapdecomp.hpp"
#include "polysg/io.hpp"
#include "polysg/oracle.hpp"
#include "polysg/ringprops.hpp"
#include "polysg/semigroup.hpp"

using namespace polysg;

namespace {

struct Options {
  std::string input = "-";
  std::int64_t budget_layers = 400;
  std::int64_t extra_periods = 2;
  int threads = 1;
  std::string format = "text";
  bool oracle = false;
  std::int64_t k = -1;
  bool gorenstein = false;
  std::int64_t box = 0;
};

constexpr int kOk = 0, kInputError = 1, kUndecided = 2;

void print(const io::Json& j) { std::cout << j.dump(2) << "\n"; }

bool structured(const Options& o) { return o.format != "text"; }

SemigroupHandle load(const Options& o, std::vector<Point3>* vertices = nullptr) {
  auto v = io::parse_vertices(io::read_input(o.input));
  if (vertices) *vertices = v;
  return build(v);
}

SearchOptions search(const Options& o) {
  SearchOptions s;
  s.budget_layers = o.budget_layers;
  return s;
}

std::int64_t oracle_box(const std::vector<LatticePoint>& pts, std::int64_t requested) {
  if (requested > 0) return requested;
  std::int64_t m = 10;
  for (const auto& p : pts) m = std::max({m, p.x + 2, p.y + 2, p.z + 2});
  return m;
}

// Oracle cross-check of generators inside a box; returns true on agreement.
bool check_generators(const std::vector<Point3>& v, const GeneratorSet& g, std::int64_t box, std::ostream& os) {
  oracle::Polytope op(v);
  auto naive = oracle::naive_msg(op, oracle::Box{box, 0});
  std::set<LatticePoint> mine;
  for (const auto& p : g.generators)
    if (p.x <= box && p.y <= box && p.z <= box) mine.insert(p);
  bool ok = naive == mine;
  os << "oracle msg on [0," << box << "]^3: " << (ok ? "agree" : "DISAGREE") << "\n";
  for (const auto& p : naive)
    if (!mine.count(p)) os << "  oracle only " << p << "\n";
  for (const auto& p : mine)
    if (!naive.count(p)) os << "  main only " << p << "\n";
  return ok;
}

bool check_gaps(const SemigroupHandle& h, const std::vector<Point3>& v, std::int64_t box, std::ostream& os) {
  oracle::Polytope op(v);
  auto naive = oracle::scan_gaps(op, oracle::Box{box, 0});
  std::set<LatticePoint> mine;
  for (std::int64_t x = 0; x <= box; ++x)
    for (std::int64_t y = 0; y <= box; ++y)
      for (std::int64_t z = 0; z <= box; ++z)
        if (h.locate({x, y, z}) == PointStatus::Gap) mine.insert({x, y, z});
  bool ok = naive == mine;
  os << "oracle gaps on [0," << box << "]^3: " << (ok ? "agree" : "DISAGREE") << " (" << naive.size() << " gaps)\n";
  return ok;
}

int cmd_msg(const Options& o) {
  std::vector<Point3> v;
  auto h = load(o, &v);
  auto g = minimal_generators(h, search(o));
  if (structured(o)) {
    print(io::generators(g));
  } else {
    for (const auto& p : g.generators) std::cout << p << "\n";
  }
  if (o.oracle && !check_generators(v, g, oracle_box(g.generators, o.box), std::cerr)) return kUndecided;
  return kOk;
}

int cmd_verdict(const Options& o, PropertyVerdict (*fn)(const SemigroupHandle&, const DecideOptions&)) {
  auto h = load(o);
  DecideOptions d;
  d.search = search(o);
  PropertyVerdict v = fn(h, d);
  if (structured(o)) {
    print(io::verdict(v));
  } else {
    std::cout << verdict_name(v.verdict);
    if (v.witness)
      std::cout << " witness p=" << v.witness->p << " i=" << v.witness->i << " j=" << v.witness->j
                << " g_i=" << v.witness->g_i << " g_j=" << v.witness->g_j;
    std::cout << "\ncase: " << v.case_used << "\n";
    for (const auto& d : v.diagnostics) std::cout << "  " << d << "\n";
  }
  if (o.oracle && v.witness) {
    MonoidPredicate in = [&h](const LatticePoint& p) { return h.in_semigroup(p); };
    if (v.property != "buchsbaum")
      std::cerr << "witness replay: " << (witness_holds(in, v.witness.value()) ? "holds" : "FAILS") << "\n";
  }
  return v.verdict == Verdict::Yes || v.verdict == Verdict::No ? kOk : kUndecided;
}

int cmd_gaps(const Options& o) {
  std::vector<Point3> v;
  auto h = load(o, &v);
  auto cls = classify(h);
  GapRegion r = gap_region(h, cls);
  auto gaps = gap_points(h, cls, r, o.extra_periods);
  if (structured(o)) {
    io::Json j;
    j["kappa0"] = r.kappa0;
    j["k3"] = r.k3;
    j["hull_level"] = r.hull_level;
    j["period"] = r.period;
    j["extra_periods"] = o.extra_periods;
    j["count"] = gaps.size();
    j["gaps"] = io::points(gaps);
    print(j);
  } else {
    for (const auto& p : gaps) std::cout << p << "\n";
  }
  if (o.oracle) {
    std::int64_t box = o.box > 0 ? o.box : 12;
    std::set<LatticePoint> mine;
    for (const auto& p : gaps)
      if (p.x <= box && p.y <= box && p.z <= box) mine.insert(p);
    oracle::Polytope op(v);
    std::set<LatticePoint> naive;
    // Only gaps below the enumerated levels are comparable.
    std::int64_t top = r.hull_level + o.extra_periods * r.period;
    for (const auto& p : oracle::scan_gaps(op, oracle::Box{box, 0}))
      if (h.below_level(p, top)) naive.insert(p);
    bool ok = naive == mine;
    std::cerr << "oracle gaps on [0," << box << "]^3: " << (ok ? "agree" : "DISAGREE") << "\n";
    if (!ok) return kUndecided;
  }
  return kOk;
}

int cmd_decompose(const Options& o) {
  auto h = load(o);
  auto cls = classify(h);
  std::int64_t k0 = kappa0(h, cls);
  std::int64_t k = o.k >= 0 ? o.k : k0;
  SlabSet s = slabs(h, cls, k);
  if (structured(o)) {
    io::Json j;
    j["kappa0"] = k0;
    j["k"] = k;
    j["classification"] = io::classification(h, cls);
    j["slabs"] = io::slab_set(s, o.format == "mesh");
    j["gap_points"] = io::points(slab_gap_points(h, s, k));
    print(j);
    return kOk;
  }
  std::cout << "kappa0 " << k0 << "\n";
  for (std::size_t i = 0; i < h.rays.size(); ++i)
    std::cout << "ray " << i << " " << h.rays[i] << " "
              << (h.ray_data[i].kind == RayHit::Kind::Point ? "point" : "segment") << " generator "
              << h.ray_generators[i] << "\n";
  for (std::size_t vi = 0; vi < h.body.vertices.size(); ++vi)
    std::cout << "vertex " << h.body.vertices[vi] << " " << class_name(cls.of_vertex[vi]) << "\n";
  for (const auto& c : s.corner) {
    std::cout << "corner ray " << c.ray << " level " << k << " fan";
    for (const auto& q : c.fan) std::cout << " " << q;
    std::cout << " (" << c.tetrahedra.size() << " tetrahedra)\n";
  }
  for (const auto& b : s.bridge) std::cout << "bridge rays " << b.ray_a << "," << b.ray_b << " level " << k << "\n";
  auto pts = slab_gap_points(h, s, k);
  std::cout << "gap points at level " << k << ": " << pts.size() << "\n";
  return kOk;
}

int cmd_family(const Options& o) {
  if (!o.gorenstein) throw Error(ErrorKind::BadParameter, "family needs --gorenstein");
  if (o.k < 0) throw Error(ErrorKind::BadParameter, "family needs --k");
  print(io::vertices_document(gorenstein_family(o.k)));
  return kOk;
}

int cmd_export(const Options& o) {
  auto h = load(o);
  io::Json j = io::mesh(h.body);
  if (o.k >= 1) {
    j["dilates"] = io::Json::array();
    for (std::int64_t k : {o.k, o.k + 1}) {
      io::Json d = io::mesh(dilate(h.body, Rat(k)));
      d["k"] = k;
      j["dilates"].push_back(d);
    }
    auto cls = classify(h);
    if (o.k >= kappa0(h, cls)) j["slabs"] = io::slab_set(slabs(h, cls, o.k), true);
  }
  print(j);
  return kOk;
}

int cmd_oracle_check(const Options& o) {
  std::vector<Point3> v;
  auto h = load(o, &v);
  auto g = minimal_generators(h, search(o));
  std::int64_t box = oracle_box(g.generators, o.box);
  bool ok = check_generators(v, g, box, std::cout);
  ok = check_gaps(h, v, box, std::cout) && ok;
  return ok ? kOk : kUndecided;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine convex polyhedron semigroups: generators, gaps and ring properties"};
  app.require_subcommand(1);
  Options o;
  auto add = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", o.input, "Polyhedron description (default: standard input)");
    sub->add_option("--budget-layers", o.budget_layers, "Layer cap for enumerations")->check(CLI::PositiveNumber);
    sub->add_option("--extra-periods", o.extra_periods, "Slab periods listed after the hull part")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--threads", o.threads, "Worker cap")->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "structured", "mesh"}));
    sub->add_flag("--oracle", o.oracle, "Cross-check against the brute-force oracle");
    sub->add_option("--k", o.k, "Level or family parameter");
    sub->add_option("--box", o.box, "Oracle box size (default: sized from the generators)");
    return sub;
  };
  add("msg", "Minimal generating set");
  add("is-cm", "Cohen-Macaulay test");
  add("is-gorenstein", "Gorenstein test");
  add("is-buchsbaum", "Buchsbaum test");
  add("gaps", "Gap points: hull part plus slab periods");
  add("decompose", "Vertex classification and slabs at level k");
  add("family", "Vertices of a Gorenstein family member")->add_flag("--gorenstein", o.gorenstein, "Use the Gorenstein family");
  add("oracle-check", "Compare generators and gaps with the oracle");
  add("export", "Mesh of P (and kP, (k+1)P, slabs with --k)");
  CLI11_PARSE(app, argc, argv);

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "msg") return cmd_msg(o);
    if (cmd == "is-cm") return cmd_verdict(o, is_cohen_macaulay);
    if (cmd == "is-gorenstein") return cmd_verdict(o, is_gorenstein);
    if (cmd == "is-buchsbaum") return cmd_verdict(o, is_buchsbaum);
    if (cmd == "gaps") return cmd_gaps(o);
    if (cmd == "decompose") return cmd_decompose(o);
    if (cmd == "family") return cmd_family(o);
    if (cmd == "oracle-check") return cmd_oracle_check(o);
    if (cmd == "export") return cmd_export(o);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::BudgetExceeded:
      case ErrorKind::UnsupportedCase:
      case ErrorKind::AssumptionViolated:
      case ErrorKind::NotSimplicial: return kUndecided;
      default: return kInputError;
    }
  }
  return kInputError;
}
