#include "dcpose/geom/mesh.hpp"

#include "dcpose/errors.hpp"

namespace dcpose {

BBox3 TriMesh::bbox() const {
  if (vertices.empty()) throw EmptyInput("mesh has no vertices");
  BBox3 box;
  for (const auto& v : vertices) box.extend(v);
  return box;
}

double TriMesh::diameter() const {
  if (vertices.empty()) throw EmptyInput("mesh has no vertices");
  double best = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      best = std::max(best, (vertices[i] - vertices[j]).norm());
    }
  }
  return best;
}

Vec3 TriMesh::centroid() const {
  if (vertices.empty()) throw EmptyInput("mesh has no vertices");
  Vec3 c = Vec3::Zero();
  for (const auto& v : vertices) c += v;
  return c / static_cast<double>(vertices.size());
}

}  // namespace dcpose
