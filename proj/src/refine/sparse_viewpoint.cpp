#include "dcpose/refine/sparse_viewpoint.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>

#include "dcpose/errors.hpp"
#include "dcpose/geom/primitives.hpp"
#include "dcpose/label/rasterizer.hpp"

namespace dcpose {

namespace {

int subdivisions_for(int n_views) {
  switch (n_views) {
    case 12: return 0;
    case 42: return 1;
    case 162: return 2;
    case 642: return 3;
    default: throw ParseError("view count must be one of 12, 42, 162, 642");
  }
}

Pose look_at(const Vec3& target, const Vec3& direction, double distance) {
  const Vec3 center = target + distance * direction;
  const Vec3 z = -direction;
  Vec3 up(0.0, 0.0, 1.0);
  if (std::abs(up.dot(z)) > 0.999) up = Vec3(1.0, 0.0, 0.0);
  const Vec3 x = up.cross(z).normalized();
  const Vec3 y = z.cross(x);
  Mat3 R;
  R.row(0) = x;
  R.row(1) = y;
  R.row(2) = z;
  return Pose(R, -(R * center));
}

// Closed iso-0.5 contours of a binary mask via marching squares. Cell
// corners sit on pixel centers; crossings land on cell-edge midpoints, so
// doubling a coordinate gives an exact integer key for linking segments.
struct Segment {
  Vec2 a, b;
};

std::int64_t point_key(const Vec2& p) {
  const auto x = static_cast<std::int64_t>(std::llround(2.0 * p.x()));
  const auto y = static_cast<std::int64_t>(std::llround(2.0 * p.y()));
  return (x << 24) | y;
}

std::vector<std::vector<Vec2>> trace_contours(const Image<std::uint8_t>& mask) {
  const int w = mask.width, h = mask.height;
  std::vector<Segment> segs;
  for (int j = 0; j + 1 < h; ++j) {
    for (int i = 0; i + 1 < w; ++i) {
      const int code = (mask.at(j, i) ? 1 : 0) | (mask.at(j, i + 1) ? 2 : 0) |
                       (mask.at(j + 1, i + 1) ? 4 : 0) | (mask.at(j + 1, i) ? 8 : 0);
      const Vec2 top(i + 0.5, j), right(i + 1, j + 0.5);
      const Vec2 bottom(i + 0.5, j + 1), left(i, j + 0.5);
      switch (code) {
        case 1: case 14: segs.push_back({left, top}); break;
        case 2: case 13: segs.push_back({top, right}); break;
        case 3: case 12: segs.push_back({left, right}); break;
        case 4: case 11: segs.push_back({right, bottom}); break;
        case 6: case 9: segs.push_back({top, bottom}); break;
        case 7: case 8: segs.push_back({left, bottom}); break;
        case 5: segs.push_back({left, top}); segs.push_back({right, bottom}); break;
        case 10: segs.push_back({top, right}); segs.push_back({bottom, left}); break;
        default: break;
      }
    }
  }

  std::unordered_map<std::int64_t, std::array<int, 2>> links;
  links.reserve(2 * segs.size());
  for (int s = 0; s < static_cast<int>(segs.size()); ++s) {
    for (const Vec2* p : {&segs[s].a, &segs[s].b}) {
      auto& slot =
          links.try_emplace(point_key(*p), std::array<int, 2>{-1, -1}).first->second;
      (slot[0] < 0 ? slot[0] : slot[1]) = s;
    }
  }

  std::vector<std::vector<Vec2>> loops;
  std::vector<bool> used(segs.size(), false);
  for (int s0 = 0; s0 < static_cast<int>(segs.size()); ++s0) {
    if (used[s0]) continue;
    std::vector<Vec2> loop;
    int s = s0;
    Vec2 entry = segs[s0].a;
    bool closed = false;
    while (true) {
      used[s] = true;
      loop.push_back(entry);
      const Vec2 exit = (point_key(entry) == point_key(segs[s].a)) ? segs[s].b : segs[s].a;
      const auto it = links.find(point_key(exit));
      int next = -1;
      if (it != links.end()) {
        for (int cand : it->second)
          if (cand >= 0 && cand != s && !used[cand]) next = cand;
      }
      if (next < 0) {
        closed = point_key(exit) == point_key(segs[s0].a);
        break;
      }
      s = next;
      entry = exit;
    }
    if (closed && loop.size() >= 3) loops.push_back(std::move(loop));
  }
  return loops;
}

double polyline_length(const std::vector<Vec2>& loop) {
  double len = 0.0;
  for (std::size_t k = 0; k < loop.size(); ++k)
    len += (loop[(k + 1) % loop.size()] - loop[k]).norm();
  return len;
}

std::vector<Vec2> resample_closed(const std::vector<Vec2>& loop, int n) {
  const double total = polyline_length(loop);
  std::vector<Vec2> out;
  out.reserve(n);
  double target = 0.0;
  const double step = total / n;
  double walked = 0.0;
  std::size_t k = 0;
  Vec2 a = loop[0], b = loop[1 % loop.size()];
  double seg = (b - a).norm();
  for (int i = 0; i < n; ++i, target += step) {
    while (walked + seg < target && k + 1 < loop.size() * 2) {
      walked += seg;
      ++k;
      a = loop[k % loop.size()];
      b = loop[(k + 1) % loop.size()];
      seg = (b - a).norm();
    }
    const double f = seg > 0.0 ? (target - walked) / seg : 0.0;
    out.push_back(a + f * (b - a));
  }
  return out;
}

bool mask_at(const Image<std::uint8_t>& mask, const Vec2& p) {
  const int x = static_cast<int>(std::lround(p.x()));
  const int y = static_cast<int>(std::lround(p.y()));
  if (x < 0 || y < 0 || x >= mask.width || y >= mask.height) return false;
  return mask.at(y, x) != 0;
}

// Bilinear inverse depth where all four stencil pixels are covered; inverse
// depth is linear in image coordinates on a planar facet, so interpolating
// and extrapolating it is exact away from silhouette-edge kinks.
bool inv_depth_at(const Image<double>& depth, const Image<std::uint8_t>& mask,
                  const Vec2& p, double& w_out) {
  const int x0 = static_cast<int>(std::floor(p.x()));
  const int y0 = static_cast<int>(std::floor(p.y()));
  if (x0 < 0 || y0 < 0 || x0 + 1 >= mask.width || y0 + 1 >= mask.height) return false;
  for (int dy = 0; dy < 2; ++dy)
    for (int dx = 0; dx < 2; ++dx)
      if (!mask.at(y0 + dy, x0 + dx)) return false;
  const double fx = p.x() - x0, fy = p.y() - y0;
  auto w = [&](int dx, int dy) { return 1.0 / depth.at(y0 + dy, x0 + dx); };
  const double top = w(0, 0) + (w(1, 0) - w(0, 0)) * fx;
  const double bot = w(0, 1) + (w(1, 1) - w(0, 1)) * fx;
  w_out = top + (bot - top) * fy;
  return w_out > 0.0;
}

// Least-squares fit of z against a basis value b(x); returns the sum of
// squared residuals and the intercept z(b = 0).
double basis_fit(const std::vector<double>& bs, const std::vector<double>& zs,
                 double& intercept) {
  const int n = static_cast<int>(bs.size());
  double mb = 0.0, mz = 0.0;
  for (int i = 0; i < n; ++i) {
    mb += bs[i];
    mz += zs[i];
  }
  mb /= n;
  mz /= n;
  double cbb = 0.0, cbz = 0.0, czz = 0.0;
  for (int i = 0; i < n; ++i) {
    cbb += (bs[i] - mb) * (bs[i] - mb);
    cbz += (bs[i] - mb) * (zs[i] - mz);
    czz += (zs[i] - mz) * (zs[i] - mz);
  }
  const double slope = cbb > 0.0 ? cbz / cbb : 0.0;
  intercept = mz - slope * mb;
  return czz - (cbb > 0.0 ? cbz * cbz / cbb : 0.0);
}

// Depth at the contour, extrapolated from interior samples along the inward
// normal. Near a smooth convex rim the surface depth follows the square-root
// law z(x) = c0 - c1 * sqrt(x); across a planar facet it is linear in x. Both
// models are fitted and the better one extrapolates to the edge.
double contour_depth(const Image<double>& depth, const Image<std::uint8_t>& mask,
                     const Vec2& p, const Vec2& outward) {
  std::vector<double> xs, zs;
  for (double x = 1.5; x < 12.0 && xs.size() < 8; x += 0.5) {
    double w = 0.0;
    if (inv_depth_at(depth, mask, p - x * outward, w)) {
      xs.push_back(x);
      zs.push_back(1.0 / w);
      x += 0.5;
    }
  }
  if (xs.size() >= 3) {
    std::vector<double> roots(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) roots[i] = std::sqrt(xs[i]);
    double z_sqrt = 0.0, z_lin = 0.0;
    const double sse_sqrt = basis_fit(roots, zs, z_sqrt);
    const double sse_lin = basis_fit(xs, zs, z_lin);
    const double z0 = sse_sqrt <= sse_lin ? z_sqrt : z_lin;
    return z0 > 0.0 ? z0 : zs.front();
  }
  if (xs.size() == 2) {
    const double c1 = (zs.front() - zs.back()) /
                      (std::sqrt(xs.back()) - std::sqrt(xs.front()));
    const double z0 = zs.front() + c1 * std::sqrt(xs.front());
    return z0 > 0.0 ? z0 : zs.front();
  }
  if (xs.size() == 1) return zs.front();
  for (double step = 0.0; step < 24.0; step += 0.5) {
    const Vec2 q = p - step * outward;
    if (mask_at(mask, q))
      return depth.at(static_cast<int>(std::lround(q.y())),
                      static_cast<int>(std::lround(q.x())));
  }
  return 0.0;
}

// One pass of circular binomial smoothing; damps the half-pixel staircase of
// the traced contour while moving points on a curved silhouette by far less
// than the staircase amplitude.
std::vector<Vec2> smooth_closed(const std::vector<Vec2>& loop) {
  const int n = static_cast<int>(loop.size());
  if (n < 5) return loop;
  std::vector<Vec2> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = (loop[(i + n - 2) % n] + 4.0 * loop[(i + n - 1) % n] +
              6.0 * loop[i] + 4.0 * loop[(i + 1) % n] + loop[(i + 2) % n]) /
             16.0;
  return out;
}

}  // namespace

SparseViewpointModel build_svm(const TriMesh& mesh, int n_views, int n_points,
                               const CameraIntrinsics& K, double distance) {
  const int subdiv = subdivisions_for(n_views);
  if (n_points < 3) throw EmptyInput("need at least 3 contour points per view");
  if (distance <= 0.0) distance = 4.0 * mesh.diameter();
  const TriMesh sphere = make_icosphere(1.0, subdiv);
  const Vec3 target = mesh.centroid();

  SparseViewpointModel svm;
  svm.points_per_view = n_points;
  svm.views.reserve(sphere.vertices.size());

  // Silhouettes are rasterized at double resolution; everything stored in a
  // view (model-frame points, unit normals) is resolution independent, so the
  // finer grid only tightens contour and depth accuracy.
  constexpr double kSuper = 2.0;
  CameraIntrinsics K2;
  K2.fx = kSuper * K.fx;
  K2.fy = kSuper * K.fy;
  K2.cx = kSuper * K.cx + 0.5 * (kSuper - 1.0);
  K2.cy = kSuper * K.cy + 0.5 * (kSuper - 1.0);
  K2.width = static_cast<int>(kSuper) * K.width;
  K2.height = static_cast<int>(kSuper) * K.height;

  for (const Vec3& dir : sphere.vertices) {
    SilhouetteView view;
    view.direction = dir.normalized();
    view.camera = look_at(target, view.direction, distance);

    Image<std::uint8_t> mask;
    Image<double> depth;
    rasterize_mask(mesh, view.camera, K2, mask, depth);

    auto loops = trace_contours(mask);
    if (loops.empty()) throw EmptyRender("no silhouette from a viewpoint");
    const auto longest = std::max_element(
        loops.begin(), loops.end(), [](const auto& a, const auto& b) {
          return polyline_length(a) < polyline_length(b);
        });
    const std::vector<Vec2> contour =
        resample_closed(smooth_closed(*longest), n_points);

    std::vector<Vec2> normals(contour.size());
    int outward_votes = 0;
    for (int k = 0; k < n_points; ++k) {
      const Vec2 tangent =
          contour[(k + 1) % n_points] - contour[(k + n_points - 1) % n_points];
      Vec2 nrm(tangent.y(), -tangent.x());
      const double len = nrm.norm();
      normals[k] = len > 0.0 ? Vec2(nrm / len) : Vec2(1.0, 0.0);
      if (!mask_at(mask, contour[k] + 2.0 * normals[k]) &&
          mask_at(mask, contour[k] - 2.0 * normals[k]))
        ++outward_votes;
      else if (mask_at(mask, contour[k] + 2.0 * normals[k]) &&
               !mask_at(mask, contour[k] - 2.0 * normals[k]))
        --outward_votes;
    }
    if (outward_votes < 0)
      for (Vec2& n : normals) n = -n;

    const Pose cam_inv = view.camera.inverse();
    view.points.reserve(n_points);
    view.normals.reserve(n_points);
    for (int k = 0; k < n_points; ++k) {
      const double z = contour_depth(depth, mask, contour[k], normals[k]);
      if (z <= 0.0) throw EmptyRender("contour point without depth support");
      const Vec3 q_cam = backproject(K2, contour[k]) * z;
      view.points.push_back(cam_inv.apply(q_cam));
      view.normals.push_back(normals[k]);
    }
    svm.views.push_back(std::move(view));
  }
  return svm;
}

int nearest_view(const SparseViewpointModel& svm, const Pose& pose) {
  if (svm.views.empty()) throw EmptyInput("sparse viewpoint model has no views");
  const Vec3 dir = (-(pose.R.transpose() * pose.t)).normalized();
  int best = 0;
  double best_dot = svm.views[0].direction.dot(dir);
  for (int i = 1; i < static_cast<int>(svm.views.size()); ++i) {
    const double d = svm.views[i].direction.dot(dir);
    if (d > best_dot) {
      best_dot = d;
      best = i;
    }
  }
  return best;
}

std::vector<int> nearest_views(const SparseViewpointModel& svm,
                               const Pose& pose, int k) {
  if (svm.views.empty()) throw EmptyInput("sparse viewpoint model has no views");
  const Vec3 dir = (-(pose.R.transpose() * pose.t)).normalized();
  std::vector<int> idx(svm.views.size());
  std::iota(idx.begin(), idx.end(), 0);
  const int n = std::min<int>(k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + n, idx.end(),
                    [&](int a, int b) {
                      return svm.views[a].direction.dot(dir) >
                             svm.views[b].direction.dot(dir);
                    });
  idx.resize(n);
  return idx;
}

}  // namespace dcpose
