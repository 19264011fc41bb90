#include "greenlab/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace greenlab {

std::string to_string(NodeClass c) {
  switch (c) {
    case NodeClass::INTERIOR: return "INTERIOR";
    case NodeClass::ADMISSIBLE: return "ADMISSIBLE";
    case NodeClass::FREE_BOUNDARY: return "FREE_BOUNDARY";
    case NodeClass::HOLE: return "HOLE";
  }
  return "?";
}

NodeClass node_class_from_string(const std::string& s) {
  if (s == "INTERIOR") return NodeClass::INTERIOR;
  if (s == "ADMISSIBLE") return NodeClass::ADMISSIBLE;
  if (s == "FREE_BOUNDARY") return NodeClass::FREE_BOUNDARY;
  if (s == "HOLE") return NodeClass::HOLE;
  throw std::invalid_argument("unknown node class '" + s + "'");
}

std::array<int, 3> Mesh::multi_index(std::size_t p) const {
  std::array<int, 3> m{0, 0, 0};
  m[0] = static_cast<int>(p % static_cast<std::size_t>(n[0]));
  p /= static_cast<std::size_t>(n[0]);
  m[1] = static_cast<int>(p % static_cast<std::size_t>(n[1]));
  m[2] = static_cast<int>(p / static_cast<std::size_t>(n[1]));
  return m;
}

Point Mesh::coord(std::size_t p) const {
  const auto m = multi_index(p);
  Point x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) x[a] = origin[a] + m[a] * h[a];
  return x;
}

bool Mesh::on_box_boundary(std::size_t p) const {
  const auto m = multi_index(p);
  for (int a = 0; a < dim; ++a)
    if (m[a] == 0 || m[a] == n[a] - 1) return true;
  return false;
}

double Mesh::cell_volume(std::size_t p) const {
  if (node_class[p] == NodeClass::HOLE) return 0.0;
  const auto m = multi_index(p);
  double v = 1.0;
  for (int a = 0; a < dim; ++a) {
    v *= h[a];
    if (m[a] == 0 || m[a] == n[a] - 1) v *= 0.5;
  }
  return v;
}

double Mesh::box_volume() const {
  double v = 1.0;
  for (int a = 0; a < dim; ++a) v *= extent[a];
  return v;
}

double Mesh::domain_volume() const {
  double v = 0.0;
  for (std::size_t p = 0; p < size(); ++p) v += cell_volume(p);
  return v;
}

double Mesh::boundary_distance(const Point& x) const {
  double d = std::numeric_limits<double>::infinity();
  for (int a = 0; a < dim; ++a) {
    d = std::min(d, x[a] - origin[a]);
    d = std::min(d, origin[a] + extent[a] - x[a]);
  }
  return std::max(d, 0.0);
}

std::size_t Mesh::count(NodeClass c) const {
  return static_cast<std::size_t>(std::count(node_class.begin(), node_class.end(), c));
}

std::size_t Mesh::boundary_count() const {
  std::size_t c = 0;
  for (std::size_t p = 0; p < size(); ++p) c += on_box_boundary(p) ? 1 : 0;
  return c;
}

std::size_t Mesh::nearest_node(const Point& x) const {
  std::array<int, 3> m{0, 0, 0};
  for (int a = 0; a < dim; ++a) {
    const long r = std::lround((x[a] - origin[a]) / h[a]);
    m[a] = static_cast<int>(std::clamp<long>(r, 0, n[a] - 1));
  }
  return index(m[0], m[1], m[2]);
}

namespace {

void reset_classes(Mesh& mesh) {
  for (std::size_t p = 0; p < mesh.size(); ++p)
    mesh.node_class[p] = mesh.on_box_boundary(p) ? NodeClass::FREE_BOUNDARY : NodeClass::INTERIOR;
}

}  // namespace

Mesh build_mesh(int dim, const std::vector<int>& n, const std::vector<double>& extent,
                const std::vector<double>& origin) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("build_mesh: dim must be 2 or 3");
  if (static_cast<int>(n.size()) != dim || static_cast<int>(extent.size()) != dim)
    throw std::invalid_argument("build_mesh: n and extent need one entry per axis");
  if (!origin.empty() && static_cast<int>(origin.size()) != dim)
    throw std::invalid_argument("build_mesh: origin needs one entry per axis");
  Mesh mesh;
  mesh.dim = dim;
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) {
    if (n[a] < 5) throw std::invalid_argument("build_mesh: need at least 5 nodes per axis");
    if (!(extent[a] > 0.0)) throw std::invalid_argument("build_mesh: extent must be positive");
    mesh.n[a] = n[a];
    mesh.extent[a] = extent[a];
    mesh.origin[a] = origin.empty() ? 0.0 : origin[a];
    mesh.h[a] = extent[a] / (n[a] - 1);
    total *= static_cast<std::size_t>(n[a]);
  }
  mesh.node_class.assign(total, NodeClass::INTERIOR);
  reset_classes(mesh);
  return mesh;
}

AdmissiblePreset AdmissiblePreset::full_boundary() { return {}; }

AdmissiblePreset AdmissiblePreset::annulus_inner(const Point& center, double s) {
  AdmissiblePreset p;
  p.kind = Kind::ANNULUS_INNER;
  p.center = center;
  p.s = s;
  return p;
}

AdmissiblePreset AdmissiblePreset::cube_face_complement() {
  AdmissiblePreset p;
  p.kind = Kind::CUBE_FACE_COMPLEMENT;
  return p;
}

AdmissiblePreset AdmissiblePreset::custom(std::function<bool(const Point&)> pred) {
  AdmissiblePreset p;
  p.kind = Kind::CUSTOM_PREDICATE;
  p.predicate = std::move(pred);
  return p;
}

std::string to_string(AdmissiblePreset::Kind k) {
  switch (k) {
    case AdmissiblePreset::Kind::FULL_BOUNDARY: return "FULL_BOUNDARY";
    case AdmissiblePreset::Kind::ANNULUS_INNER: return "ANNULUS_INNER";
    case AdmissiblePreset::Kind::CUBE_FACE_COMPLEMENT: return "CUBE_FACE_COMPLEMENT";
    case AdmissiblePreset::Kind::CUSTOM_PREDICATE: return "CUSTOM_PREDICATE";
  }
  return "?";
}

AdmissiblePreset::Kind preset_kind_from_string(const std::string& s) {
  if (s == "FULL_BOUNDARY") return AdmissiblePreset::Kind::FULL_BOUNDARY;
  if (s == "ANNULUS_INNER") return AdmissiblePreset::Kind::ANNULUS_INNER;
  if (s == "CUBE_FACE_COMPLEMENT") return AdmissiblePreset::Kind::CUBE_FACE_COMPLEMENT;
  if (s == "CUSTOM_PREDICATE") return AdmissiblePreset::Kind::CUSTOM_PREDICATE;
  throw std::invalid_argument("unknown admissible preset '" + s + "'");
}

Mesh mark_admissible(const Mesh& in, const AdmissiblePreset& preset) {
  Mesh mesh = in;
  reset_classes(mesh);
  const std::size_t np = mesh.size();

  switch (preset.kind) {
    case AdmissiblePreset::Kind::FULL_BOUNDARY:
      for (std::size_t p = 0; p < np; ++p)
        if (mesh.on_box_boundary(p)) mesh.node_class[p] = NodeClass::ADMISSIBLE;
      break;

    case AdmissiblePreset::Kind::CUBE_FACE_COMPLEMENT:
      // the open face x1 = 0 stays free; its edges and corners belong to other faces
      for (std::size_t p = 0; p < np; ++p) {
        if (!mesh.on_box_boundary(p)) continue;
        const auto m = mesh.multi_index(p);
        bool other_face = m[0] == mesh.n[0] - 1;
        for (int a = 1; a < mesh.dim; ++a) other_face = other_face || m[a] == 0 || m[a] == mesh.n[a] - 1;
        mesh.node_class[p] = (m[0] == 0 && !other_face) ? NodeClass::FREE_BOUNDARY : NodeClass::ADMISSIBLE;
      }
      break;

    case AdmissiblePreset::Kind::CUSTOM_PREDICATE:
      if (!preset.predicate) throw std::invalid_argument("mark_admissible: custom preset without predicate");
      for (std::size_t p = 0; p < np; ++p)
        if (mesh.on_box_boundary(p) && preset.predicate(mesh.coord(p)))
          mesh.node_class[p] = NodeClass::ADMISSIBLE;
      break;

    case AdmissiblePreset::Kind::ANNULUS_INNER: {
      const double radius = 2.0 * preset.s;
      if (!(preset.s > 0.0)) throw std::invalid_argument("mark_admissible: annulus needs s > 0");
      for (int a = 0; a < mesh.dim; ++a) {
        if (preset.center[a] - radius <= mesh.origin[a] || preset.center[a] + radius >= mesh.origin[a] + mesh.extent[a])
          throw std::invalid_argument("mark_admissible: hole B(z, 2s) must lie inside the box");
      }
      for (std::size_t p = 0; p < np; ++p) {
        const Point x = mesh.coord(p);
        double r2 = 0.0;
        for (int a = 0; a < mesh.dim; ++a) r2 += (x[a] - preset.center[a]) * (x[a] - preset.center[a]);
        if (r2 < radius * radius) mesh.node_class[p] = NodeClass::HOLE;
      }
      for (std::size_t p = 0; p < np; ++p) {
        if (mesh.node_class[p] == NodeClass::HOLE) continue;
        const auto m = mesh.multi_index(p);
        for (int a = 0; a < mesh.dim; ++a) {
          for (int d : {-1, 1}) {
            auto q = m;
            q[a] += d;
            if (q[a] < 0 || q[a] >= mesh.n[a]) continue;
            if (mesh.node_class[mesh.index(q[0], q[1], q[2])] == NodeClass::HOLE)
              mesh.node_class[p] = NodeClass::ADMISSIBLE;
          }
        }
      }
      break;
    }
  }

  if (mesh.count(NodeClass::ADMISSIBLE) == 0)
    throw std::invalid_argument("mark_admissible: preset produces an empty admissible set");
  return mesh;
}

nlohmann::json mesh_to_json(const Mesh& mesh) {
  nlohmann::json j;
  j["dim"] = mesh.dim;
  j["n"] = std::vector<int>(mesh.n.begin(), mesh.n.begin() + mesh.dim);
  j["extent"] = std::vector<double>(mesh.extent.begin(), mesh.extent.begin() + mesh.dim);
  j["origin"] = std::vector<double>(mesh.origin.begin(), mesh.origin.begin() + mesh.dim);
  nlohmann::json rle = nlohmann::json::array();
  std::size_t p = 0;
  while (p < mesh.size()) {
    std::size_t q = p;
    while (q < mesh.size() && mesh.node_class[q] == mesh.node_class[p]) ++q;
    rle.push_back({to_string(mesh.node_class[p]), q - p});
    p = q;
  }
  j["node_class_rle"] = rle;
  return j;
}

Mesh mesh_from_json(const nlohmann::json& j) {
  Mesh mesh = build_mesh(j.at("dim").get<int>(), j.at("n").get<std::vector<int>>(),
                         j.at("extent").get<std::vector<double>>(),
                         j.value("origin", std::vector<double>{}));
  if (j.contains("node_class_rle")) {
    std::size_t p = 0;
    for (const auto& run : j.at("node_class_rle")) {
      const NodeClass c = node_class_from_string(run.at(0).get<std::string>());
      const auto len = run.at(1).get<std::size_t>();
      if (p + len > mesh.size()) throw std::invalid_argument("mesh_from_json: node_class runs exceed node count");
      std::fill_n(mesh.node_class.begin() + static_cast<std::ptrdiff_t>(p), len, c);
      p += len;
    }
    if (p != mesh.size()) throw std::invalid_argument("mesh_from_json: node_class runs do not cover the mesh");
  }
  return mesh;
}

}  // namespace greenlab
