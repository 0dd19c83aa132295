#pragma once

#include <array>
#include <vector>

#include "dcpose/types.hpp"

namespace dcpose {

// Triangle mesh. Vertices in model units (meters), indices into `vertices`.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;

  BBox3 bbox() const;

  // Largest pairwise vertex distance. O(n^2); meshes here stay small.
  double diameter() const;

  Vec3 centroid() const;
};

}  // namespace dcpose
