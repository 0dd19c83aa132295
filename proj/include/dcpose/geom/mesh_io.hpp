#pragma once

#include <string>

#include "dcpose/geom/mesh.hpp"

namespace dcpose {

// Loads ASCII PLY or Wavefront OBJ, chosen by file extension (.ply / .obj,
// case-insensitive). Polygonal faces are fan-triangulated. Throws IoError on
// missing files and ParseError on malformed content.
TriMesh load_mesh(const std::string& path);

// Writes ASCII PLY (.ply) or OBJ (.obj) by extension.
void save_mesh(const std::string& path, const TriMesh& mesh);

}  // namespace dcpose
