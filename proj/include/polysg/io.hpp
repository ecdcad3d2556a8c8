#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "polysg/gapdecomp.hpp"
#include "polysg/geometry.hpp"
#include "polysg/ringprops.hpp"
#include "polysg/semigroup.hpp"

namespace polysg::io {

using Json = nlohmann::ordered_json;

/// Reads the `vertices` list from a polyhedron description. Accepts JSON and a relaxed
/// form with bare keys, bare fractions (33/16), decimals (2.2) and # comments.
/// Errors carry line and column.
std::vector<Point3> parse_vertices(std::string_view text);

/// Reads a file, or standard input for "-" or an empty path.
std::string read_input(const std::string& path);

Json rational(const Rat& r);
Json point(const Point3& p);
Json point(const LatticePoint& p);
Json points(const std::vector<LatticePoint>& ps);

/// A document that parse_vertices reads back to the same vertex list.
Json vertices_document(const std::vector<Point3>& vertices);

/// Vertices (exact and decimal) and faces with counter-clockwise vertex indices.
Json mesh(const Polyhedron& poly);
Json mesh(const ConvexBody& body);

Json verdict(const PropertyVerdict& v);
Json generators(const GeneratorSet& g);
Json classification(const SemigroupHandle& h, const VertexClassification& cls);
Json slab_set(const SlabSet& s, bool with_mesh);

}  // namespace polysg::io
