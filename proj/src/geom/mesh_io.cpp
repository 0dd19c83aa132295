#include "dcpose/geom/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "dcpose/errors.hpp"

namespace dcpose {

namespace {

std::string lower_ext(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos) return "";
  std::string ext = path.substr(dot + 1);
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

void fan_triangulate(const std::vector<std::uint32_t>& face, TriMesh& mesh) {
  if (face.size() < 3) throw ParseError("face with fewer than 3 vertices");
  for (std::size_t k = 1; k + 1 < face.size(); ++k) {
    mesh.triangles.push_back({face[0], face[k], face[k + 1]});
  }
}

TriMesh load_ply(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("ply", 0) != 0) {
    throw ParseError("missing ply magic");
  }
  std::size_t n_verts = 0, n_faces = 0;
  int x_idx = -1, y_idx = -1, z_idx = -1;
  int prop_count = 0;
  bool in_vertex_element = false;
  bool ascii = false;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "format") {
      std::string fmt;
      ls >> fmt;
      ascii = (fmt == "ascii");
    } else if (tok == "element") {
      std::string name;
      std::size_t count = 0;
      ls >> name >> count;
      in_vertex_element = (name == "vertex");
      if (in_vertex_element) {
        n_verts = count;
      } else if (name == "face") {
        n_faces = count;
      }
    } else if (tok == "property" && in_vertex_element) {
      std::string type, name;
      ls >> type >> name;
      if (name == "x") x_idx = prop_count;
      if (name == "y") y_idx = prop_count;
      if (name == "z") z_idx = prop_count;
      ++prop_count;
    } else if (tok == "end_header") {
      break;
    }
  }
  if (!ascii) throw ParseError("only ascii ply is supported");
  if (x_idx < 0 || y_idx < 0 || z_idx < 0) {
    throw ParseError("vertex element lacks x/y/z properties");
  }

  TriMesh mesh;
  mesh.vertices.reserve(n_verts);
  for (std::size_t i = 0; i < n_verts; ++i) {
    if (!std::getline(in, line)) throw ParseError("truncated vertex list");
    std::istringstream ls(line);
    std::vector<double> vals;
    double v;
    while (ls >> v) vals.push_back(v);
    const int need = std::max({x_idx, y_idx, z_idx});
    if (static_cast<int>(vals.size()) <= need) {
      throw ParseError("vertex line too short");
    }
    mesh.vertices.emplace_back(vals[x_idx], vals[y_idx], vals[z_idx]);
  }
  for (std::size_t i = 0; i < n_faces; ++i) {
    if (!std::getline(in, line)) throw ParseError("truncated face list");
    std::istringstream ls(line);
    std::size_t n = 0;
    if (!(ls >> n)) throw ParseError("bad face line");
    std::vector<std::uint32_t> face(n);
    for (auto& id : face) {
      if (!(ls >> id)) throw ParseError("bad face index");
      if (id >= mesh.vertices.size()) throw ParseError("face index out of range");
    }
    fan_triangulate(face, mesh);
  }
  return mesh;
}

TriMesh load_obj(std::istream& in) {
  TriMesh mesh;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "v") {
      double x, y, z;
      if (!(ls >> x >> y >> z)) {
        throw ParseError("bad vertex at line " + std::to_string(line_no));
      }
      mesh.vertices.emplace_back(x, y, z);
    } else if (tok == "f") {
      std::vector<std::uint32_t> face;
      std::string ref;
      while (ls >> ref) {
        // "i", "i/t", "i/t/n", "i//n": the vertex index is the first field.
        const auto slash = ref.find('/');
        const std::string first = slash == std::string::npos
                                      ? ref
                                      : ref.substr(0, slash);
        long idx = 0;
        try {
          idx = std::stol(first);
        } catch (const std::exception&) {
          throw ParseError("bad face reference at line " +
                           std::to_string(line_no));
        }
        if (idx < 0) idx = static_cast<long>(mesh.vertices.size()) + idx + 1;
        if (idx < 1 || idx > static_cast<long>(mesh.vertices.size())) {
          throw ParseError("face index out of range at line " +
                           std::to_string(line_no));
        }
        face.push_back(static_cast<std::uint32_t>(idx - 1));
      }
      fan_triangulate(face, mesh);
    }
  }
  return mesh;
}

}  // namespace

TriMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file: " + path);
  const std::string ext = lower_ext(path);
  if (ext == "ply") return load_ply(in);
  if (ext == "obj") return load_obj(in);
  throw IoError("unsupported mesh extension: " + path);
}

void save_mesh(const std::string& path, const TriMesh& mesh) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write mesh file: " + path);
  out.precision(17);
  const std::string ext = lower_ext(path);
  if (ext == "ply") {
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << mesh.vertices.size() << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    out << "element face " << mesh.triangles.size() << "\n";
    out << "property list uchar uint vertex_indices\nend_header\n";
    for (const auto& v : mesh.vertices) {
      out << v.x() << " " << v.y() << " " << v.z() << "\n";
    }
    for (const auto& t : mesh.triangles) {
      out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
    }
  } else if (ext == "obj") {
    for (const auto& v : mesh.vertices) {
      out << "v " << v.x() << " " << v.y() << " " << v.z() << "\n";
    }
    for (const auto& t : mesh.triangles) {
      out << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
    }
  } else {
    throw IoError("unsupported mesh extension: " + path);
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace dcpose
