#include "dcpose/label/regions.hpp"

#include <limits>

#include "dcpose/errors.hpp"

namespace dcpose {

RegionPartition farthest_point_regions(const TriMesh& mesh, int count) {
  const auto n = mesh.vertices.size();
  if (count < 1 || static_cast<std::size_t>(count) > n) {
    throw TooManyRegions("region count must be in [1, vertex count]");
  }

  RegionPartition part;
  part.count = count;

  const Vec3 c = mesh.centroid();
  std::uint32_t first = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = (mesh.vertices[i] - c).squaredNorm();
    if (d > best) {
      best = d;
      first = static_cast<std::uint32_t>(i);
    }
  }
  part.seeds.push_back(first);

  // min_dist[i] tracks the distance from vertex i to the closest chosen seed.
  std::vector<double> min_dist(n, std::numeric_limits<double>::infinity());
  auto absorb = [&](std::uint32_t seed) {
    for (std::size_t i = 0; i < n; ++i) {
      min_dist[i] = std::min(
          min_dist[i], (mesh.vertices[i] - mesh.vertices[seed]).squaredNorm());
    }
  };
  absorb(first);

  while (static_cast<int>(part.seeds.size()) < count) {
    std::uint32_t next = 0;
    double far = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (min_dist[i] > far) {
        far = min_dist[i];
        next = static_cast<std::uint32_t>(i);
      }
    }
    part.seeds.push_back(next);
    absorb(next);
  }

  part.vertex_region.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    int region = 0;
    double nearest = std::numeric_limits<double>::infinity();
    for (int s = 0; s < count; ++s) {
      const double d =
          (mesh.vertices[i] - mesh.vertices[part.seeds[s]]).squaredNorm();
      if (d < nearest) {
        nearest = d;
        region = s;
      }
    }
    part.vertex_region[i] = region;
  }
  return part;
}

}  // namespace dcpose
