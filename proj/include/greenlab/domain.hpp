#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "greenlab/types.hpp"

namespace greenlab {

// HOLE marks nodes removed from the domain by an interior spherical cut.
enum class NodeClass : std::uint8_t { INTERIOR = 0, ADMISSIBLE = 1, FREE_BOUNDARY = 2, HOLE = 3 };

std::string to_string(NodeClass c);
NodeClass node_class_from_string(const std::string& s);

// Structured grid over the box [origin, origin + extent]. Node index is
// i + n0*(j + n1*k); unused axes have n = 1.
struct Mesh {
  int dim = 2;
  std::array<int, 3> n{1, 1, 1};
  Point extent{0.0, 0.0, 0.0};
  Point origin{0.0, 0.0, 0.0};
  Point h{0.0, 0.0, 0.0};
  std::vector<NodeClass> node_class;

  std::size_t size() const { return node_class.size(); }
  std::size_t index(int i, int j, int k = 0) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(n[0]) * (static_cast<std::size_t>(j) + static_cast<std::size_t>(n[1]) * static_cast<std::size_t>(k));
  }
  std::array<int, 3> multi_index(std::size_t p) const;
  Point coord(std::size_t p) const;

  bool on_box_boundary(std::size_t p) const;
  // true for nodes carrying a homogeneous Dirichlet value (A or hole)
  bool constrained(std::size_t p) const {
    return node_class[p] == NodeClass::ADMISSIBLE || node_class[p] == NodeClass::HOLE;
  }
  // lumped (trapezoidal) cell volume; zero for hole nodes
  double cell_volume(std::size_t p) const;
  double box_volume() const;
  double domain_volume() const;
  // Euclidean distance to the box boundary
  double boundary_distance(const Point& x) const;

  std::size_t count(NodeClass c) const;
  std::size_t boundary_count() const;
  // nearest node to an arbitrary point (clamped into the box)
  std::size_t nearest_node(const Point& x) const;
};

Mesh build_mesh(int dim, const std::vector<int>& n, const std::vector<double>& extent,
                const std::vector<double>& origin = {});

struct AdmissiblePreset {
  enum class Kind { FULL_BOUNDARY, ANNULUS_INNER, CUBE_FACE_COMPLEMENT, CUSTOM_PREDICATE };
  Kind kind = Kind::FULL_BOUNDARY;
  // ANNULUS_INNER: hole B(center, 2*s)
  Point center{0.0, 0.0, 0.0};
  double s = 0.0;
  // CUSTOM_PREDICATE: boundary nodes where predicate(x) holds become ADMISSIBLE
  std::function<bool(const Point&)> predicate;

  static AdmissiblePreset full_boundary();
  static AdmissiblePreset annulus_inner(const Point& center, double s);
  static AdmissiblePreset cube_face_complement();
  static AdmissiblePreset custom(std::function<bool(const Point&)> pred);
};

std::string to_string(AdmissiblePreset::Kind k);
AdmissiblePreset::Kind preset_kind_from_string(const std::string& s);

Mesh mark_admissible(const Mesh& mesh, const AdmissiblePreset& preset);

nlohmann::json mesh_to_json(const Mesh& mesh);
Mesh mesh_from_json(const nlohmann::json& j);

}  // namespace greenlab
