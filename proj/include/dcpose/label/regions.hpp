#pragma once

#include "dcpose/geom/mesh.hpp"
#include "dcpose/label/maps.hpp"

namespace dcpose {

// Farthest-point sampling of `count` seed vertices, then a nearest-seed
// assignment of every vertex. Deterministic: the first seed is the
// lowest-index vertex among those farthest from the centroid; later seeds
// maximize the distance to the chosen set, ties to the lowest index.
// Throws TooManyRegions if count < 1 or count > vertex count.
RegionPartition farthest_point_regions(const TriMesh& mesh, int count);

}  // namespace dcpose
