#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "latpack/catalog.hpp"
#include "latpack/error.hpp"
#include "latpack/search.hpp"

using namespace latpack;

namespace {

void check_valid(const Polytope& p) {
  const auto f = p.f_vector();
  CHECK(static_cast<long>(f[0]) - static_cast<long>(f[1]) + static_cast<long>(f[2]) == 2);
  const double tol = 1e-9 * p.circumradius();
  for (std::size_t i = 0; i < p.facets.size(); ++i)
    for (int v : p.facets[i].vertices) {
      const Vec3& x = p.vertices[static_cast<std::size_t>(v)];
      CHECK(std::fabs(dot(p.halfspaces[i].normal, x) - p.halfspaces[i].offset) <= tol);
      CHECK(p.max_violation(x) <= tol);
    }
}

bool same_vertex_sets(const Polytope& a, const Polytope& b, double tol) {
  if (a.vertices.size() != b.vertices.size()) return false;
  for (const Vec3& v : a.vertices)
    if (std::none_of(b.vertices.begin(), b.vertices.end(), [&](const Vec3& w) { return (v - w).norm() <= tol; }))
      return false;
  return true;
}

}  // namespace

TEST_CASE("catalog: eighteen solids with their f-vectors") {
  CHECK(solid_names().size() == 18);
  for (const std::string& n : solid_names()) {
    CAPTURE(n);
    const Polytope p = make_solid(n);
    CHECK(p.f_vector() == reference_f_vector(n));
    check_valid(p);
  }
}

TEST_CASE("catalog: worked examples") {
  const Polytope o = make_solid("octahedron");
  CHECK(o.f_vector() == std::array<std::size_t, 3>{6, 12, 8});
  for (const Halfspace& h : o.halfspaces) {
    CHECK(std::fabs(std::fabs(h.normal.x) - 1 / std::sqrt(3.0)) < 1e-12);
    CHECK(std::fabs(h.offset - 1 / std::sqrt(3.0)) < 1e-12);
  }
  // The icosidodecahedron is the intersection of the icosahedron and the dodecahedron.
  const Polytope id = make_solid("icosidodecahedron");
  CHECK(id.f_vector() == std::array<std::size_t, 3>{30, 60, 32});
  const Polytope ico = make_solid("icosahedron"), dod = make_solid("dodecahedron");
  for (const Vec3& v : id.vertices) {
    CHECK(ico.max_violation(v) <= 1e-12);
    CHECK(dod.max_violation(v) <= 1e-12);
  }
  const Polytope tro = make_solid("truncated_octahedron");
  CHECK(tro.f_vector() == std::array<std::size_t, 3>{24, 36, 14});
  for (const Vec3& v : tro.vertices) {
    CHECK(std::max({std::fabs(v.x), std::fabs(v.y), std::fabs(v.z)}) <= 1 + 1e-12);
    CHECK(std::fabs(v.x) + std::fabs(v.y) + std::fabs(v.z) <= 1.5 + 1e-12);
  }
}

TEST_CASE("catalog: reference densities") {
  CHECK(reference_density("truncated_tetrahedron").value == doctest::Approx(207.0 / 304).epsilon(1e-15));
  CHECK(std::fabs(reference_density("truncated_tetrahedron").value - 0.680921053) < 5e-10);
  CHECK(std::fabs(reference_density("rhombic_cubeoctahedron").value - 0.875805666) < 5e-10);
  CHECK(std::fabs(reference_density("icosahedron").value - 0.836357445) < 5e-10);
  CHECK(std::fabs(reference_density("truncated_cube").value - 0.973747688) < 5e-10);
  CHECK(std::fabs(reference_density("dodecahedron").value - 0.904508497) < 5e-10);
  CHECK(std::fabs(reference_density("icosidodecahedron").value - 0.864720371) < 5e-10);
  CHECK(std::fabs(reference_density("rhombic_icosidodecahedron").value - 0.804708487) < 5e-10);
  CHECK(std::fabs(reference_density("truncated_dodecahedron").value - 0.897787626) < 5e-10);
  CHECK(std::fabs(reference_density("truncated_cubeoctahedron").value - 0.849373252) < 5e-10);
  CHECK(std::fabs(reference_density("truncated_icosidodecahedron").value - 0.827213595) < 5e-10);
  for (const std::string& n : solid_names()) {
    const double d = reference_density(n).value;
    CHECK(d > 0.0);
    CHECK(d <= 1.0);
  }
}

TEST_CASE("catalog: snub cube parameter") {
  const double y = snub_cube_y();
  CHECK(std::fabs(y * y * y + y * y + y - 1) < 1e-15);
  CHECK(y == doctest::Approx(0.5436890126920764).epsilon(1e-15));
  // The square facets lie in x_i = ±1.
  const Polytope sc = make_solid("snub_cube");
  int squares = 0;
  for (std::size_t i = 0; i < sc.facets.size(); ++i)
    if (sc.facets[i].vertices.size() == 4) {
      ++squares;
      const Vec3& n = sc.halfspaces[i].normal;
      CHECK(std::max({std::fabs(n.x), std::fabs(n.y), std::fabs(n.z)}) == doctest::Approx(1.0));
      CHECK(sc.halfspaces[i].offset == doctest::Approx(1.0));
    }
  CHECK(squares == 6);
}

TEST_CASE("catalog: snub dodecahedron pentagons lie in the planes of (1+tau)P_d") {
  const Polytope sd = make_solid("snub_dodecahedron");
  const Polytope dod = transformed(make_solid("dodecahedron"), Mat3::identity() * (1 + kTau));
  int pentagons = 0;
  for (std::size_t i = 0; i < sd.facets.size(); ++i) {
    if (sd.facets[i].vertices.size() != 5) continue;
    ++pentagons;
    bool found = false;
    for (const Halfspace& h : dod.halfspaces)
      if (dot(h.normal, sd.halfspaces[i].normal) > 1 - 1e-12 && std::fabs(h.offset - sd.halfspaces[i].offset) < 1e-9) found = true;
    CHECK(found);
  }
  CHECK(pentagons == 12);
  // All edges have the same length.
  const auto len = [&](const Edge& e) {
    return (sd.vertices[static_cast<std::size_t>(e.v0)] - sd.vertices[static_cast<std::size_t>(e.v1)]).norm();
  };
  for (const Edge& e : sd.edges) CHECK(len(e) == doctest::Approx(len(sd.edges[0])).epsilon(1e-9));
  CHECK(sd.volume() / 16 == doctest::Approx(0.788640117).epsilon(1e-8));
}

TEST_CASE("catalog: published bases are packing lattices with the published density") {
  for (const std::string& n : solid_names()) {
    CAPTURE(n);
    const Polytope p = make_solid(n);
    const Mat3 b = reference_basis(n);
    CHECK(verify_admissible_bruteforce(difference_body(p), b));
    CHECK(p.volume() / std::fabs(b.det()) == doctest::Approx(reference_density(n).value).epsilon(1e-8));
  }
}

TEST_CASE("catalog: difference body of a symmetric solid is twice the solid") {
  for (const std::string& n : solid_names()) {
    const Polytope p = make_solid(n);
    const Polytope d = difference_body(p);
    if (p.symmetric) {
      CAPTURE(n);
      CHECK(same_vertex_sets(d, transformed(p, Mat3::identity() * 2.0), 1e-9 * d.circumradius()));
      CHECK(d.volume() == doctest::Approx(8 * p.volume()).epsilon(1e-9));
    } else {
      CHECK(d.volume() > 8 * p.volume() * (1 + 1e-6));
    }
  }
}

TEST_CASE("catalog: unknown names") {
  CHECK_THROWS_AS(make_solid("dodecahedron2"), UnknownSolid);
  CHECK_THROWS_AS(reference_density("torus"), UnknownSolid);
  CHECK_FALSE(is_catalog_solid("sphere"));
  CHECK(is_catalog_solid("snub_cube"));
}
