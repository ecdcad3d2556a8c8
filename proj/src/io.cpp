#include "polysg/io.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "polysg/errors.hpp"

namespace polysg::io {

namespace {

struct Node {
  enum class Kind { Object, Array, Scalar } kind = Kind::Scalar;
  std::string text;
  std::vector<Node> items;
  std::vector<std::pair<std::string, Node>> members;
  int line = 1, col = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Node document() {
    skip();
    Node root;
    if (peek() == '{') {
      root = value();
    } else if (peek() == '[') {
      Node arr = value();
      root.kind = Node::Kind::Object;
      root.members.emplace_back("vertices", std::move(arr));
    } else {
      root.kind = Node::Kind::Object;
      root.line = line_;
      root.col = col_;
      members_until(root, '\0');
    }
    skip();
    if (pos_ < s_.size()) fail("unexpected trailing input");
    return root;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail_at(line_, col_, msg); }

  [[noreturn]] static void fail_at(int line, int col, const std::string& msg) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#' || (c == '/' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '/')) {
        while (pos_ < s_.size() && s_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  static bool scalar_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '/' || c == '-' || c == '+' || c == '_';
  }

  std::string key() {
    if (peek() == '"') return quoted();
    std::string out;
    while (scalar_char(peek())) {
      out += peek();
      advance();
    }
    if (out.empty()) fail("expected a key");
    return out;
  }

  std::string quoted() {
    advance();
    std::string out;
    while (peek() != '"') {
      if (pos_ >= s_.size() || peek() == '\n') fail("unterminated string");
      out += peek();
      advance();
    }
    advance();
    return out;
  }

  void members_until(Node& obj, char close) {
    while (true) {
      skip();
      if (peek() == close) break;
      if (close != '\0' && pos_ >= s_.size()) fail("unterminated object");
      std::string k = key();
      skip();
      if (peek() != ':' && peek() != '=') fail("expected ':' after key '" + k + "'");
      advance();
      skip();
      obj.members.emplace_back(k, value());
      skip();
      if (peek() == ',' || peek() == ';') advance();
    }
  }

  Node value() {
    skip();
    Node n;
    n.line = line_;
    n.col = col_;
    char c = peek();
    if (c == '{') {
      advance();
      n.kind = Node::Kind::Object;
      members_until(n, '}');
      advance();
    } else if (c == '[') {
      advance();
      n.kind = Node::Kind::Array;
      while (true) {
        skip();
        if (peek() == ']') break;
        if (pos_ >= s_.size()) fail("unterminated list");
        n.items.push_back(value());
        skip();
        if (peek() == ',') {
          advance();
        } else if (peek() != ']') {
          fail("expected ',' or ']'");
        }
      }
      advance();
    } else if (c == '"') {
      n.text = quoted();
    } else if (scalar_char(c)) {
      while (scalar_char(peek())) {
        n.text += peek();
        advance();
      }
    } else if (c == '\0') {
      fail("unexpected end of input");
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    return n;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

}  // namespace

std::vector<Point3> parse_vertices(std::string_view text) {
  Parser parser(text);
  Node root = parser.document();
  const Node* list = nullptr;
  for (const auto& [k, v] : root.members)
    if (k == "vertices") list = &v;
  if (!list) Parser::fail_at(root.line, root.col, "missing 'vertices' list");
  if (list->kind != Node::Kind::Array) Parser::fail_at(list->line, list->col, "'vertices' must be a list");
  std::vector<Point3> out;
  for (const auto& item : list->items) {
    if (item.kind != Node::Kind::Array || item.items.size() != 3)
      Parser::fail_at(item.line, item.col, "each vertex must be a list of three coordinates");
    Point3 p;
    for (int c = 0; c < 3; ++c) {
      const Node& x = item.items[c];
      if (x.kind != Node::Kind::Scalar) Parser::fail_at(x.line, x.col, "coordinate must be a number");
      try {
        p[c] = parse_rat(x.text);
      } catch (const Error&) {
        Parser::fail_at(x.line, x.col, "bad coordinate '" + x.text + "'");
      }
    }
    out.push_back(p);
  }
  if (out.empty()) Parser::fail_at(list->line, list->col, "'vertices' is empty");
  return out;
}

std::string read_input(const std::string& path) {
  std::ostringstream os;
  if (path.empty() || path == "-") {
    os << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    os << in.rdbuf();
  }
  return os.str();
}

Json rational(const Rat& r) { return r.get_str(); }

Json point(const Point3& p) { return Json::array({rational(p.x), rational(p.y), rational(p.z)}); }

Json point(const LatticePoint& p) { return Json::array({p.x, p.y, p.z}); }

Json points(const std::vector<LatticePoint>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(point(p));
  return out;
}

Json vertices_document(const std::vector<Point3>& vertices) {
  Json doc;
  doc["vertices"] = Json::array();
  for (const auto& v : vertices) doc["vertices"].push_back(point(v));
  return doc;
}

namespace {

Json decimals(const std::vector<Point3>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(Json::array({v.x.get_d(), v.y.get_d(), v.z.get_d()}));
  return out;
}

}  // namespace

Json mesh(const Polyhedron& poly) {
  Json m = vertices_document(poly.vertices);
  m["vertices_decimal"] = decimals(poly.vertices);
  m["faces"] = Json::array();
  for (const auto& f : poly.facet_vertices) m["faces"].push_back(f);
  return m;
}

Json mesh(const ConvexBody& body) {
  if (body.dimension() == 3) return mesh(convex_hull(body.points()));
  Json m = vertices_document(body.points());
  m["vertices_decimal"] = decimals(body.points());
  m["dimension"] = body.dimension();
  m["faces"] = Json::array();
  return m;
}

Json verdict(const PropertyVerdict& v) {
  Json j;
  j["property"] = v.property;
  j["verdict"] = verdict_name(v.verdict);
  j["case_used"] = v.case_used;
  if (v.witness) {
    j["witness"] = {{"p", point(v.witness->p)},
                    {"i", v.witness->i},
                    {"j", v.witness->j},
                    {"g_i", point(v.witness->g_i)},
                    {"g_j", point(v.witness->g_j)}};
  } else {
    j["witness"] = nullptr;
  }
  if (!v.maximal_elements.empty()) j["maximal_elements"] = points(v.maximal_elements);
  j["diagnostics"] = v.diagnostics;
  return j;
}

Json generators(const GeneratorSet& g) {
  Json j;
  j["count"] = g.generators.size();
  j["generators"] = points(g.generators);
  j["layer_index"] = g.layer_index;
  j["certified"] = g.certified;
  j["layers_scanned"] = g.layers_scanned;
  return j;
}

Json classification(const SemigroupHandle& h, const VertexClassification& cls) {
  Json j;
  j["simplicial"] = h.simplicial;
  j["rays"] = Json::array();
  for (std::size_t i = 0; i < h.rays.size(); ++i) {
    const RayHit& r = h.ray_data[i];
    j["rays"].push_back({{"direction", point(h.rays[i])},
                         {"kind", r.kind == RayHit::Kind::Point ? "point" : "segment"},
                         {"lambda", Json::array({rational(r.lambda_lo), rational(r.lambda_hi)})},
                         {"generator", point(h.ray_generators[i])}});
  }
  j["vertices"] = Json::array();
  for (std::size_t v = 0; v < h.body.vertices.size(); ++v)
    j["vertices"].push_back({{"point", point(h.body.vertices[v])},
                             {"class", class_name(cls.of_vertex[v])},
                             {"paired", point(cls.paired_point[v])}});
  return j;
}

Json slab_set(const SlabSet& s, bool with_mesh) {
  Json j;
  j["corner"] = Json::array();
  for (const auto& c : s.corner) {
    Json cj;
    cj["ray"] = c.ray;
    cj["k"] = c.k;
    cj["apex"] = Json::array({point(c.apex_lo), point(c.apex_hi)});
    cj["fan"] = Json::array();
    for (const auto& q : c.fan) cj["fan"].push_back(point(q));
    if (with_mesh) {
      cj["tetrahedra"] = Json::array();
      for (const auto& t : c.tetrahedra) cj["tetrahedra"].push_back(mesh(t));
    }
    j["corner"].push_back(cj);
  }
  j["bridge"] = Json::array();
  for (const auto& b : s.bridge) {
    Json bj;
    bj["rays"] = Json::array({b.ray_a, b.ray_b});
    bj["k"] = b.k;
    bj["triangle_a"] = Json::array();
    for (const auto& q : b.triangle_a) bj["triangle_a"].push_back(point(q));
    bj["triangle_b"] = Json::array();
    for (const auto& q : b.triangle_b) bj["triangle_b"].push_back(point(q));
    if (with_mesh) bj["body"] = mesh(b.body);
    j["bridge"].push_back(bj);
  }
  return j;
}

}  // namespace polysg::io
