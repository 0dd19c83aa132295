#include "dcpose/label/normalize.hpp"

#include "dcpose/errors.hpp"

namespace dcpose {

namespace {

Vec3 checked_extent(const BBox3& bbox) {
  const Vec3 ext = bbox.max() - bbox.min();
  if (ext.minCoeff() < 1e-12) {
    throw DegenerateBBox("bounding box extent below 1e-12");
  }
  return ext;
}

}  // namespace

Vec3 normalize_coords(const Vec3& p, const BBox3& bbox) {
  return (p - bbox.min()).cwiseQuotient(checked_extent(bbox));
}

Vec3 denormalize_coords(const Vec3& c, const BBox3& bbox) {
  return bbox.min() + c.cwiseProduct(checked_extent(bbox));
}

}  // namespace dcpose
