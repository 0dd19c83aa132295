#pragma once

#include "dcpose/geom/mesh.hpp"

namespace dcpose {

// Axis-aligned box centered at the origin with the given full extents.
TriMesh make_box(const Vec3& extents);

// Icosphere of the given radius. subdivisions 0 -> 12 vertices, 1 -> 42,
// 2 -> 162, 3 -> 642.
TriMesh make_icosphere(double radius, int subdivisions);

// Vertex/triangle union; no welding.
TriMesh merge(const TriMesh& a, const TriMesh& b);

// Linearly scales x and y by lerp(1, 1 - strength, (z - z_min)/(z_max - z_min)),
// shrinking the +z end. Simulates a mildly wrong model of the same object.
TriMesh taper(const TriMesh& mesh, double strength);

// Mean distance from each vertex of `a` to its nearest vertex of `b`.
double mean_nn_distance(const TriMesh& a, const TriMesh& b);

}  // namespace dcpose
