#pragma once

#include <vector>

#include "dcpose/geom/camera.hpp"
#include "dcpose/geom/mesh.hpp"
#include "dcpose/geom/pose.hpp"

namespace dcpose {

// Precomputed silhouette geometry for one viewing direction. `direction`
// points from the object toward the camera, in the model frame. Contour
// points are model-frame meters; contour normals are outward unit 2-vectors
// in this view's image plane. `camera` is the model-to-camera pose the view
// was rendered with, kept to lift 2D normals into the model frame.
struct SilhouetteView {
  Vec3 direction = Vec3::UnitZ();
  Pose camera;
  std::vector<Vec3> points;
  std::vector<Vec2> normals;
};

struct SparseViewpointModel {
  std::vector<SilhouetteView> views;
  int points_per_view = 0;
};

// Renders the mesh from n_views icosphere directions (12, 42, 162, or 642),
// traces each silhouette with sub-pixel marching squares, resamples n_points
// equally spaced contour points, and back-projects them to the model frame
// with inverse depth extrapolated linearly to the contour (exact on planar
// facets). `distance` is the camera distance from the mesh centroid; values
// <= 0 choose 4x the mesh diameter. Throws EmptyRender if a view shows
// nothing, ParseError on an unsupported view count.
SparseViewpointModel build_svm(const TriMesh& mesh, int n_views, int n_points,
                               const CameraIntrinsics& K, double distance = 0.0);

// Index of the view whose direction best matches the camera direction of
// `pose` (argmax dot product).
int nearest_view(const SparseViewpointModel& svm, const Pose& pose);

// Indices of the k views nearest the camera direction of `pose`, best first.
// Returns fewer if the model has fewer views.
std::vector<int> nearest_views(const SparseViewpointModel& svm,
                               const Pose& pose, int k);

}  // namespace dcpose
