#pragma once

#include <array>
#include <vector>

#include "dcpose/geom/pose.hpp"
#include "dcpose/types.hpp"

namespace dcpose {

// Minimal three-point pose: every returned pose maps the model points onto
// the given unit bearing rays with positive depths. Zero to four solutions;
// degenerate inputs yield an empty set.
std::vector<Pose> solve_p3p(const std::array<Vec3, 3>& model,
                            const std::array<Vec3, 3>& rays);

// Real roots of c[0] + c[1] x + ... + c[n] x^n via the companion matrix.
std::vector<double> real_roots(const std::vector<double>& coeffs);

}  // namespace dcpose
