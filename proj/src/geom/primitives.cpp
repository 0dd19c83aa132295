#include "dcpose/geom/primitives.hpp"

#include <cmath>
#include <map>

#include "dcpose/errors.hpp"

namespace dcpose {

TriMesh make_box(const Vec3& extents) {
  const Vec3 h = extents / 2.0;
  TriMesh m;
  for (int i = 0; i < 8; ++i) {
    m.vertices.emplace_back((i & 1) ? h.x() : -h.x(),
                            (i & 2) ? h.y() : -h.y(),
                            (i & 4) ? h.z() : -h.z());
  }
  // Two triangles per face, outward winding.
  const std::array<std::array<std::uint32_t, 4>, 6> faces = {{
      {0, 2, 3, 1},  // -z
      {4, 5, 7, 6},  // +z
      {0, 1, 5, 4},  // -y
      {2, 6, 7, 3},  // +y
      {0, 4, 6, 2},  // -x
      {1, 3, 7, 5},  // +x
  }};
  for (const auto& f : faces) {
    m.triangles.push_back({f[0], f[1], f[2]});
    m.triangles.push_back({f[0], f[2], f[3]});
  }
  return m;
}

TriMesh make_icosphere(double radius, int subdivisions) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  TriMesh m;
  const double a = 1.0, b = phi;
  const std::array<Vec3, 12> base = {{
      {-a, b, 0}, {a, b, 0}, {-a, -b, 0}, {a, -b, 0},
      {0, -a, b}, {0, a, b}, {0, -a, -b}, {0, a, -b},
      {b, 0, -a}, {b, 0, a}, {-b, 0, -a}, {-b, 0, a},
  }};
  for (const auto& v : base) m.vertices.push_back(v.normalized());
  m.triangles = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1},
  };

  for (int step = 0; step < subdivisions; ++step) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> midpoint;
    auto mid = [&](std::uint32_t i, std::uint32_t j) {
      const auto key = std::minmax(i, j);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const Vec3 v = (m.vertices[i] + m.vertices[j]).normalized();
      const auto idx = static_cast<std::uint32_t>(m.vertices.size());
      m.vertices.push_back(v);
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<std::uint32_t, 3>> next;
    next.reserve(m.triangles.size() * 4);
    for (const auto& t : m.triangles) {
      const std::uint32_t ab = mid(t[0], t[1]);
      const std::uint32_t bc = mid(t[1], t[2]);
      const std::uint32_t ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    m.triangles = std::move(next);
  }

  for (auto& v : m.vertices) v *= radius;
  return m;
}

TriMesh merge(const TriMesh& a, const TriMesh& b) {
  TriMesh m = a;
  const auto offset = static_cast<std::uint32_t>(a.vertices.size());
  m.vertices.insert(m.vertices.end(), b.vertices.begin(), b.vertices.end());
  for (const auto& t : b.triangles) {
    m.triangles.push_back({t[0] + offset, t[1] + offset, t[2] + offset});
  }
  return m;
}

TriMesh taper(const TriMesh& mesh, double strength) {
  if (mesh.vertices.empty()) throw EmptyInput("mesh has no vertices");
  const BBox3 box = mesh.bbox();
  const double z0 = box.min().z(), z1 = box.max().z();
  const double span = z1 - z0;
  if (span < 1e-12) throw DegenerateBBox("mesh is flat along z");
  TriMesh out = mesh;
  for (auto& v : out.vertices) {
    const double u = (v.z() - z0) / span;
    const double s = 1.0 - strength * u;
    v.x() *= s;
    v.y() *= s;
  }
  return out;
}

double mean_nn_distance(const TriMesh& a, const TriMesh& b) {
  if (a.vertices.empty() || b.vertices.empty()) {
    throw EmptyInput("mesh has no vertices");
  }
  double total = 0.0;
  for (const auto& va : a.vertices) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& vb : b.vertices) {
      best = std::min(best, (va - vb).squaredNorm());
    }
    total += std::sqrt(best);
  }
  return total / static_cast<double>(a.vertices.size());
}

}  // namespace dcpose
