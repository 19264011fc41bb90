#include <doctest.h>

#include "greenlab/domain.hpp"

using namespace greenlab;

TEST_CASE("box node and boundary counts") {
  const Mesh m2 = build_mesh(2, {5, 5}, {1, 1});
  CHECK(m2.size() == 25);
  CHECK(m2.boundary_count() == 16);
  CHECK(m2.h[0] == doctest::Approx(0.25));
  const Mesh m3 = build_mesh(3, {5, 5, 5}, {1, 1, 1});
  CHECK(m3.size() == 125);
  CHECK(m3.boundary_count() == 98);
  CHECK(m3.count(NodeClass::INTERIOR) == 27);
}

TEST_CASE("mesh preconditions") {
  CHECK_THROWS_AS(build_mesh(2, {4, 5}, {1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(4, {5, 5, 5, 5}, {1, 1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(2, {5, 5}, {1, -1}), std::invalid_argument);
}

TEST_CASE("full boundary preset") {
  const Mesh m = mark_admissible(build_mesh(2, {5, 5}, {1, 1}), AdmissiblePreset::full_boundary());
  CHECK(m.count(NodeClass::ADMISSIBLE) == 16);
  CHECK(m.count(NodeClass::FREE_BOUNDARY) == 0);
  CHECK(m.count(NodeClass::INTERIOR) == 9);
}

TEST_CASE("cube face complement leaves the open face x1 = 0 free") {
  const Mesh m = mark_admissible(build_mesh(2, {5, 5}, {1, 1}), AdmissiblePreset::cube_face_complement());
  CHECK(m.count(NodeClass::ADMISSIBLE) == 13);
  CHECK(m.count(NodeClass::FREE_BOUNDARY) == 3);
  for (int j = 1; j < 4; ++j) CHECK(m.node_class[m.index(0, j)] == NodeClass::FREE_BOUNDARY);
  CHECK(m.node_class[m.index(0, 0)] == NodeClass::ADMISSIBLE);
  CHECK(m.node_class[m.index(0, 4)] == NodeClass::ADMISSIBLE);

  const Mesh c = mark_admissible(build_mesh(3, {5, 5, 5}, {1, 1, 1}), AdmissiblePreset::cube_face_complement());
  CHECK(c.count(NodeClass::FREE_BOUNDARY) == 9);
  CHECK(c.count(NodeClass::ADMISSIBLE) == 89);
}

TEST_CASE("empty admissible set is rejected") {
  const Mesh m = build_mesh(2, {5, 5}, {1, 1});
  CHECK_THROWS_AS(mark_admissible(m, AdmissiblePreset::custom([](const Point&) { return false; })), std::invalid_argument);
}

TEST_CASE("marking partitions and is idempotent") {
  const Mesh box = build_mesh(2, {9, 9}, {1, 1});
  for (const auto& p : {AdmissiblePreset::full_boundary(), AdmissiblePreset::cube_face_complement(),
                        AdmissiblePreset::custom([](const Point& x) { return x[1] < 0.5; })}) {
    const Mesh a = mark_admissible(box, p);
    const Mesh b = mark_admissible(a, p);
    CHECK(a.node_class == b.node_class);
    for (std::size_t q = 0; q < a.size(); ++q)
      CHECK((a.on_box_boundary(q) ? a.node_class[q] != NodeClass::INTERIOR : a.node_class[q] == NodeClass::INTERIOR));
  }
}

TEST_CASE("annulus preset removes a ball and pins its rim") {
  const Mesh box = build_mesh(2, {33, 33}, {1, 1});
  const Mesh m = mark_admissible(box, AdmissiblePreset::annulus_inner({0.5, 0.5, 0.0}, 0.1));
  CHECK(m.count(NodeClass::HOLE) > 0);
  for (std::size_t p = 0; p < m.size(); ++p) {
    const Point x = m.coord(p);
    const double r = std::hypot(x[0] - 0.5, x[1] - 0.5);
    if (r < 0.2 - 1e-12) CHECK(m.node_class[p] == NodeClass::HOLE);
    if (m.node_class[p] == NodeClass::HOLE) CHECK(m.cell_volume(p) == 0.0);
  }
  CHECK(m.domain_volume() < m.box_volume());
  CHECK(m.count(NodeClass::ADMISSIBLE) > 0);
  for (std::size_t p = 0; p < m.size(); ++p)
    if (m.on_box_boundary(p)) CHECK(m.node_class[p] == NodeClass::FREE_BOUNDARY);
}

TEST_CASE("lumped volumes sum to the box volume") {
  const Mesh m = build_mesh(3, {7, 6, 5}, {1.0, 2.0, 0.5});
  double s = 0.0;
  for (std::size_t p = 0; p < m.size(); ++p) s += m.cell_volume(p);
  CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("json descriptor round trip") {
  const Mesh m = mark_admissible(build_mesh(2, {9, 7}, {1, 2}), AdmissiblePreset::cube_face_complement());
  const Mesh r = mesh_from_json(mesh_to_json(m));
  CHECK(r.node_class == m.node_class);
  CHECK(r.n == m.n);
  CHECK(r.extent == m.extent);
}
