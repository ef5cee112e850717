#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"
#include "latpack/error.hpp"
#include "latpack/io.hpp"
#include "latpack/polytope.hpp"

using namespace latpack;

namespace {

std::vector<Vec3> cube_points(double s = 1.0) {
  std::vector<Vec3> v;
  for (int i = 0; i < 8; ++i) v.push_back({(i & 1 ? s : -s), (i & 2 ? s : -s), (i & 4 ? s : -s)});
  return v;
}

std::vector<Halfspace> cube_halfspaces(double s = 1.0) {
  return {{{1, 0, 0}, s}, {{-1, 0, 0}, s}, {{0, 1, 0}, s}, {{0, -1, 0}, s}, {{0, 0, 1}, s}, {{0, 0, -1}, s}};
}

std::vector<Halfspace> tetrahedron_halfspaces() {
  return {{{1, 1, 1}, 1}, {{-1, -1, 1}, 1}, {{-1, 1, -1}, 1}, {{1, -1, -1}, 1}};
}

void check_valid(const Polytope& p) {
  const auto f = p.f_vector();
  CHECK(static_cast<long>(f[0]) - static_cast<long>(f[1]) + static_cast<long>(f[2]) == 2);
  const double tol = 1e-9 * std::max(1.0, p.circumradius());
  for (std::size_t i = 0; i < p.facets.size(); ++i) {
    for (int v : p.facets[i].vertices) {
      const Vec3& x = p.vertices[static_cast<std::size_t>(v)];
      CHECK(std::fabs(dot(p.halfspaces[i].normal, x) - p.halfspaces[i].offset) <= tol);
      for (std::size_t j = 0; j < p.halfspaces.size(); ++j) CHECK(dot(p.halfspaces[j].normal, x) - p.halfspaces[j].offset <= tol);
    }
    for (int j : p.neighbors[i]) {
      const auto& nb = p.neighbors[static_cast<std::size_t>(j)];
      CHECK(std::find(nb.begin(), nb.end(), static_cast<int>(i)) != nb.end());
    }
  }
}

}  // namespace

TEST_CASE("convex_hull: f-vectors of simple solids") {
  const Polytope tet = convex_hull({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}});
  CHECK(tet.f_vector() == std::array<std::size_t, 3>{4, 6, 4});
  check_valid(tet);
  const Polytope cube = convex_hull(cube_points());
  CHECK(cube.f_vector() == std::array<std::size_t, 3>{8, 12, 6});
  CHECK(cube.symmetric);
  check_valid(cube);
  const Polytope oct = convex_hull({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
  CHECK(oct.f_vector() == std::array<std::size_t, 3>{6, 12, 8});
  check_valid(oct);
}

TEST_CASE("convex_hull: interior, edge and face points are discarded") {
  auto pts = cube_points();
  pts.push_back({0, 0, 0});
  pts.push_back({1, 0, 0});
  pts.push_back({1, 1, 0});
  pts.push_back({0.5, -1, 0.25});
  const Polytope cube = convex_hull(pts);
  CHECK(cube.f_vector() == std::array<std::size_t, 3>{8, 12, 6});
}

TEST_CASE("convex_hull: flat input is rejected") {
  CHECK_THROWS_AS(convex_hull({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}), DegenerateInput);
  CHECK_THROWS_AS(convex_hull({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}}), DegenerateInput);
}

TEST_CASE("from_halfspaces: cube, tetrahedron, redundant plane") {
  const Polytope cube = from_halfspaces(cube_halfspaces());
  CHECK(cube.f_vector() == std::array<std::size_t, 3>{8, 12, 6});
  check_valid(cube);
  const Polytope tet = from_halfspaces(tetrahedron_halfspaces());
  CHECK(tet.f_vector() == std::array<std::size_t, 3>{4, 6, 4});
  CHECK(tet.volume() == doctest::Approx(8.0 / 3.0));
  auto hs = cube_halfspaces();
  hs.push_back({{1, 0, 0}, 5});
  const Polytope same = from_halfspaces(hs);
  CHECK(same.num_facets() == 6);
  CHECK(same.volume() == doctest::Approx(8.0));
}

TEST_CASE("from_halfspaces: unbounded and empty inputs") {
  auto hs = cube_halfspaces();
  hs.erase(hs.begin());
  CHECK_THROWS_AS(from_halfspaces(hs), Unbounded);
  auto empty = cube_halfspaces();
  empty.push_back({{1, 0, 0}, -2});
  CHECK_THROWS_AS(from_halfspaces(empty), EmptyInterior);
  auto flat = cube_halfspaces();
  flat.push_back({{-1, 0, 0}, -1});  // forces x = 1
  CHECK_THROWS_AS(from_halfspaces(flat), EmptyInterior);
}

TEST_CASE("round trip: hull halfspaces reproduce the vertex set") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec3> pts;
    for (int i = 0; i < 30; ++i) pts.push_back({u(rng), u(rng), u(rng)});
    const Polytope a = convex_hull(pts);
    check_valid(a);
    const Polytope b = from_halfspaces(a.halfspaces);
    REQUIRE(a.vertices.size() == b.vertices.size());
    for (const Vec3& v : a.vertices) {
      double best = 1e9;
      for (const Vec3& w : b.vertices) best = std::min(best, (v - w).norm());
      CHECK(best <= 1e-9);
    }
  }
}

TEST_CASE("difference_body: tetrahedron gives a cuboctahedron") {
  const Polytope tet = from_halfspaces(tetrahedron_halfspaces());
  const Polytope d = difference_body(tet);
  CHECK(d.f_vector() == std::array<std::size_t, 3>{12, 24, 14});
  CHECK(d.symmetric);
  check_valid(d);
  for (std::size_t i = 0; i < d.halfspaces.size(); ++i) {
    const int j = d.antipode[i];
    REQUIRE(j >= 0);
    CHECK((d.halfspaces[i].normal + d.halfspaces[static_cast<std::size_t>(j)].normal).norm() == 0.0);
    CHECK(d.halfspaces[i].offset == d.halfspaces[static_cast<std::size_t>(j)].offset);
  }
  CHECK(d.volume() > 8 * tet.volume());
  for (const Vec3& v : tet.vertices)
    for (const Vec3& w : tet.vertices) CHECK(classify_point(d, v - w, 1e-9) != PointClass::Exterior);
}

TEST_CASE("difference_body: symmetric bodies double") {
  const Polytope cube = convex_hull(cube_points());
  const Polytope d = difference_body(cube);
  CHECK(d.f_vector() == std::array<std::size_t, 3>{8, 12, 6});
  CHECK(d.volume() == doctest::Approx(8 * cube.volume()));
  for (const Halfspace& h : d.halfspaces) CHECK(h.offset == doctest::Approx(2.0));
}

TEST_CASE("difference_body: random polytopes satisfy the volume inequality") {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Vec3> pts;
    for (int i = 0; i < 12; ++i) pts.push_back({u(rng), u(rng), 0.5 * u(rng)});
    const Polytope p = convex_hull(pts);
    const Polytope d = difference_body(p);
    check_valid(d);
    CHECK(d.symmetric);
    CHECK(d.volume() >= 8 * p.volume() * (1 - 1e-12));
    for (const Vec3& v : p.vertices)
      for (const Vec3& w : p.vertices) CHECK(classify_point(d, v - w, 1e-9) != PointClass::Exterior);
  }
}

TEST_CASE("classify_point on the cube") {
  const Polytope cube = from_halfspaces(cube_halfspaces());
  const double tol = 1e-9;
  CHECK(classify_point(cube, {0, 0, 0}, tol) == PointClass::Interior);
  CHECK(classify_point(cube, {1, 0, 0}, tol) == PointClass::Boundary);
  CHECK(classify_point(cube, {1 + 10 * tol, 0, 0}, tol) == PointClass::Exterior);
}

TEST_CASE("facet boxes") {
  const Polytope cube = from_halfspaces(cube_halfspaces());
  const Box b = facet_box(cube, 0);
  CHECK(b.lo.x == 1);
  CHECK(b.hi.x == 1);
  CHECK(b.lo.y == -1);
  CHECK(b.hi.z == 1);
  const Polytope oct = from_halfspaces({{{1, 1, 1}, 1}, {{1, 1, -1}, 1}, {{1, -1, 1}, 1}, {{1, -1, -1}, 1},
                                        {{-1, 1, 1}, 1}, {{-1, 1, -1}, 1}, {{-1, -1, 1}, 1}, {{-1, -1, -1}, 1}});
  const Box c = facet_box(oct, 0);
  CHECK(c.lo.x == doctest::Approx(0).epsilon(1e-12));
  CHECK(c.hi.x == doctest::Approx(1));
  CHECK(c.hi.y == doctest::Approx(1));
  CHECK(c.hi.z == doctest::Approx(1));
  for (std::size_t f = 0; f < oct.facets.size(); ++f) {
    const Box bb = facet_box(oct, static_cast<int>(f));
    for (std::size_t k = 0; k < 3; ++k) CHECK(bb.hi[k] - bb.lo[k] > 0.5);
  }
}

TEST_CASE("box intersection and Minkowski boxes") {
  const Box unit{{0, 0, 0}, {1, 1, 1}};
  CHECK(boxes_intersect(unit, Box{{1, 1, 1}, {2, 2, 2}}));
  CHECK_FALSE(boxes_intersect(unit, Box{{2, 0, 0}, {3, 1, 1}}));
  CHECK(boxes_intersect(unit, unit));
  const Box s = minkowski_box(unit, unit, 1);
  CHECK(s.lo.x == 0);
  CHECK(s.hi.z == 2);
  const Box d = minkowski_box(unit, unit, -1);
  CHECK(d.lo.y == -1);
  CHECK(d.hi.y == 1);
  const Box pt{{1, 1, 1}, {1, 1, 1}};
  const Box p2 = minkowski_box(pt, pt, 1);
  CHECK(p2.lo.x == 2);
  CHECK(p2.hi.x == 2);
}

TEST_CASE("OFF and H-rep text round trip") {
  const Polytope cube = from_halfspaces(cube_halfspaces());
  std::stringstream off;
  write_off(off, to_mesh(cube));
  const OffMesh m = read_off(off);
  CHECK(m.vertices.size() == 8);
  CHECK(m.faces.size() == 6);
  CHECK(convex_hull(m.vertices).f_vector() == cube.f_vector());

  std::stringstream h("# cube\n1 0 0 1\n-1 0 0 1 # left\n0 1 0 1\n0 -1 0 1\n\n0 0 1 1\n0 0 -1 1\n");
  const auto hs = read_hrep(h);
  CHECK(hs.size() == 6);
  std::stringstream bad("1 0 0\n");
  CHECK_THROWS_AS(read_hrep(bad), ParseError);
  std::stringstream badoff("OFF\n3 1 0\n0 0 0\n1 0 0\n");
  CHECK_THROWS_AS(read_off(badoff), ParseError);
}
