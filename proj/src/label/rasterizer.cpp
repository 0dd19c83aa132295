#include "dcpose/label/rasterizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dcpose/errors.hpp"
#include "dcpose/label/normalize.hpp"

namespace dcpose {

namespace {

struct ScreenVertex {
  Vec2 uv;
  double inv_z;
  Vec3 model;  // model-frame position, interpolated perspective-correct
};

// Visits every covered pixel of every triangle; emit(y, x, depth, model_pt)
// is called only when the pixel wins the z-test at call time, so the caller
// sees each surviving surface point once per overwrite.
template <typename Emit>
bool raster_core(const TriMesh& mesh, const Pose& pose,
                 const CameraIntrinsics& K, Image<double>& zbuf, Emit emit) {
  bool any = false;
  std::vector<Vec3> cam(mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    cam[i] = pose.apply(mesh.vertices[i]);
  }

  for (const auto& tri : mesh.triangles) {
    ScreenVertex sv[3];
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
      const Vec3& p = cam[tri[k]];
      if (p.z() <= 1e-9) {
        ok = false;  // no near-plane clipping; synthetic scenes stay in front
        break;
      }
      sv[k].uv = Vec2(K.fx * p.x() / p.z() + K.cx, K.fy * p.y() / p.z() + K.cy);
      sv[k].inv_z = 1.0 / p.z();
      sv[k].model = mesh.vertices[tri[k]];
    }
    if (!ok) continue;

    const Vec2 e01 = sv[1].uv - sv[0].uv;
    const Vec2 e02 = sv[2].uv - sv[0].uv;
    const double area = e01.x() * e02.y() - e01.y() * e02.x();
    if (std::abs(area) < 1e-14) continue;

    const double min_x = std::min({sv[0].uv.x(), sv[1].uv.x(), sv[2].uv.x()});
    const double max_x = std::max({sv[0].uv.x(), sv[1].uv.x(), sv[2].uv.x()});
    const double min_y = std::min({sv[0].uv.y(), sv[1].uv.y(), sv[2].uv.y()});
    const double max_y = std::max({sv[0].uv.y(), sv[1].uv.y(), sv[2].uv.y()});
    const int x0 = std::max(0, static_cast<int>(std::ceil(min_x)));
    const int x1 = std::min(K.width - 1, static_cast<int>(std::floor(max_x)));
    const int y0 = std::max(0, static_cast<int>(std::ceil(min_y)));
    const int y1 = std::min(K.height - 1, static_cast<int>(std::floor(max_y)));

    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        const Vec2 p(static_cast<double>(x), static_cast<double>(y));
        const Vec2 d = p - sv[0].uv;
        double l1 = (d.x() * e02.y() - d.y() * e02.x()) / area;
        double l2 = (e01.x() * d.y() - e01.y() * d.x()) / area;
        double l0 = 1.0 - l1 - l2;
        if (l0 < -1e-12 || l1 < -1e-12 || l2 < -1e-12) continue;
        const double inv_z =
            l0 * sv[0].inv_z + l1 * sv[1].inv_z + l2 * sv[2].inv_z;
        const double depth = 1.0 / inv_z;
        if (depth >= zbuf.at(y, x)) continue;
        zbuf.at(y, x) = depth;
        const Vec3 model = (l0 * sv[0].inv_z * sv[0].model +
                            l1 * sv[1].inv_z * sv[1].model +
                            l2 * sv[2].inv_z * sv[2].model) *
                           depth;
        emit(y, x, depth, model);
        any = true;
      }
    }
  }
  return any;
}

}  // namespace

LabelMaps rasterize(const TriMesh& mesh, const Pose& pose,
                    const CameraIntrinsics& K, const BBox3& bbox,
                    const RegionPartition* partition) {
  LabelMaps maps;
  maps.coords = Image<double>(K.height, K.width, 3, 0.0);
  maps.regions = Image<std::int32_t>(K.height, K.width, 1, -1);
  maps.mask = Image<std::uint8_t>(K.height, K.width, 1, 0);
  maps.depth = Image<double>(K.height, K.width, 1, 0.0);

  Image<double> zbuf(K.height, K.width, 1,
                     std::numeric_limits<double>::infinity());
  const bool any = raster_core(
      mesh, pose, K, zbuf, [&](int y, int x, double depth, const Vec3& model) {
        maps.mask.at(y, x) = 1;
        maps.depth.at(y, x) = depth;
        const Vec3 c = normalize_coords(model, bbox);
        for (int ch = 0; ch < 3; ++ch) maps.coords.at(y, x, ch) = c[ch];
        if (partition != nullptr) {
          int region = 0;
          double nearest = std::numeric_limits<double>::infinity();
          for (int s = 0; s < partition->count; ++s) {
            const double d2 =
                (model - mesh.vertices[partition->seeds[s]]).squaredNorm();
            if (d2 < nearest) {
              nearest = d2;
              region = s;
            }
          }
          maps.regions.at(y, x) = region;
        }
      });
  if (!any) throw EmptyRender("object projects to no pixel");
  return maps;
}

void rasterize_mask(const TriMesh& mesh, const Pose& pose,
                    const CameraIntrinsics& K, Image<std::uint8_t>& mask,
                    Image<double>& depth) {
  mask = Image<std::uint8_t>(K.height, K.width, 1, 0);
  depth = Image<double>(K.height, K.width, 1, 0.0);
  Image<double> zbuf(K.height, K.width, 1,
                     std::numeric_limits<double>::infinity());
  raster_core(mesh, pose, K, zbuf, [&](int y, int x, double d, const Vec3&) {
    mask.at(y, x) = 1;
    depth.at(y, x) = d;
  });
}

}  // namespace dcpose
