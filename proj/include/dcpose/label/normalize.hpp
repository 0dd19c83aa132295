#pragma once

#include "dcpose/types.hpp"

namespace dcpose {

// Maps a model-frame point into [0,1]^3 via the object's bounding box.
// Throws DegenerateBBox if any box extent is below 1e-12.
Vec3 normalize_coords(const Vec3& p, const BBox3& bbox);

// Inverse of normalize_coords.
Vec3 denormalize_coords(const Vec3& c, const BBox3& bbox);

}  // namespace dcpose
