#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "latpack/catalog.hpp"
#include "latpack/error.hpp"
#include "latpack/search.hpp"

using namespace latpack;

namespace {

int facet_with_normal(const Polytope& p, const Vec3& n) {
  const Vec3 u = normalized(n);
  for (std::size_t i = 0; i < p.num_facets(); ++i)
    if (dot(p.halfspaces[i].normal, u) > 1 - 1e-12) return static_cast<int>(i);
  return -1;
}

// A facet containing x, preferring the smallest index.
int facet_containing(const Polytope& p, const Vec3& x) {
  for (std::size_t i = 0; i < p.num_facets(); ++i)
    if (std::fabs(dot(p.halfspaces[i].normal, x) - p.halfspaces[i].offset) < 1e-9) return static_cast<int>(i);
  return -1;
}

bool same_triples(const TripleSet& a, const TripleSet& b) {
  return a.sigma == b.sigma && a.n == b.n && a.partners == b.partners && a.thirds == b.thirds;
}

Mat3 random_affine(std::mt19937& rng, double max_cond) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    Mat3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = (r == c ? 1.5 : 0.0) + u(rng);
    if (std::fabs(m.det()) < 1e-3) continue;
    // Frobenius condition number bounds the spectral one from above.
    auto frob = [](const Mat3& a) {
      double s = 0.0;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) s += a(r, c) * a(r, c);
      return std::sqrt(s);
    };
    if (frob(m) * frob(m.inverse()) <= max_cond) return m;
  }
}

Polytope random_polytope(std::mt19937& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Vec3> pts;
  for (int i = 0; i < n; ++i) pts.push_back({g(rng), g(rng), g(rng)});
  return convex_hull(pts);
}

SearchOptions serial() {
  SearchOptions o;
  o.parallel = false;
  return o;
}

void check_result(const Polytope& p, const PackingResult& r) {
  const Polytope d = difference_body(p);
  CHECK(verify_admissible_bruteforce(d, r.basis));
  CHECK(r.critical_determinant == doctest::Approx(std::fabs(r.basis.det())).epsilon(1e-12));
  CHECK(r.density == doctest::Approx(p.volume() / r.critical_determinant).epsilon(1e-12));
  CHECK(r.density <= 1 + 1e-9);
  const auto us = test_set_vectors(test_set_kind(r.winning_case));
  REQUIRE(r.contact_points.size() == us.size());
  for (std::size_t i = 0; i < us.size(); ++i) {
    CHECK((r.contact_points[i] - lattice_point(r.basis, us[i])).norm() < 1e-12);
    CHECK(std::fabs(d.max_violation(r.contact_points[i])) < 1e-8 * d.circumradius());
  }
  CHECK(r.selection.size() == us.size());
}

}  // namespace

TEST_CASE("test sets: sizes and linear relations") {
  for (int kind : {1, 2, 3}) {
    const auto u = test_set_vectors(kind);
    const int s = test_set_sigma(kind);
    REQUIRE(u.size() == (kind == 3 ? 7u : 6u));
    auto add = [](const IVec3& a, const IVec3& b, int k) { return IVec3{a[0] + k * b[0], a[1] + k * b[1], a[2] + k * b[2]}; };
    CHECK(u[3] == add(u[1], u[2], s));
    CHECK(u[5] == add(u[0], u[1], s));
    if (kind == 1)
      CHECK(u[4] == add(u[2], u[0], -1));
    else
      CHECK(u[4] == add(u[0], u[2], 1));
    if (kind == 3) CHECK(u[6] == add(u[0], u[3], 1));
  }
  CHECK(test_set_sigma(1) == -1);
  CHECK(test_set_sigma(2) == 1);
  CHECK(test_set_kind(SearchCase::IV) == 3);
  CHECK_THROWS_AS(test_set_vectors(4), PreconditionViolated);
  CHECK(parse_case("III") == SearchCase::III);
  CHECK_FALSE(parse_case("V").has_value());
}

TEST_CASE("triple set: cube worked examples") {
  const Polytope p0 = difference_body(make_solid("cube"));  // [-2, 2]^3
  const int xp = facet_with_normal(p0, {1, 0, 0}), xm = facet_with_normal(p0, {-1, 0, 0});
  const int yp = facet_with_normal(p0, {0, 1, 0});
  REQUIRE(xp >= 0);
  REQUIRE(xm >= 0);
  REQUIRE(yp >= 0);
  CHECK(triple_feasible(p0, xp, xm, yp, 1));
  for (int k = 0; k < 6; ++k) CHECK_FALSE(triple_feasible(p0, xp, xp, k, 1));
  CHECK(triple_feasible(p0, xp, xp, yp, -1));
  const TripleSet ts = build_triple_set(p0, 1);
  CHECK(ts.contains(xp, xm, yp));
  CHECK_FALSE(ts.partner(xp, xp));
  CHECK(ts.third(xp, xp).empty());
  // F_x + F_-x = {0} x [-4,4]^2 meets every facet but the two x facets.
  CHECK(ts.third(xp, xm).size() == 4);
}

TEST_CASE("triple set: seeded construction equals brute force") {
  for (const char* n : {"cube", "octahedron", "tetrahedron", "truncated_tetrahedron", "dodecahedron"}) {
    CAPTURE(n);
    const Polytope p0 = difference_body(make_solid(n));
    const TripleSet plus = build_triple_set(p0, 1);
    CHECK(same_triples(plus, triple_set_bruteforce(p0, 1)));
    const TripleSet minus = build_triple_set(p0, -1);
    CHECK(same_triples(minus, triple_set_bruteforce(p0, -1)));
    CHECK(same_triples(minus, mirrored_triple_set(plus, p0)));
  }
}

TEST_CASE("triple set: partner relation is symmetric") {
  for (const std::string& n : solid_names()) {
    const Polytope p0 = difference_body(make_solid(n));
    if (p0.num_facets() > 40) continue;
    CAPTURE(n);
    const TripleSet ts = build_triple_set(p0, 1);
    for (int i = 0; i < ts.n; ++i)
      for (int j : ts.partners[static_cast<std::size_t>(i)]) CHECK(ts.partner(j, i));
  }
}

TEST_CASE("triple set: property checks on random polytopes") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 3; ++trial) {
    const Polytope p0 = difference_body(random_polytope(rng, 6));
    CAPTURE(trial);
    const TripleSet plus = build_triple_set(p0, 1);
    CHECK(same_triples(plus, triple_set_bruteforce(p0, 1)));
    CHECK(same_triples(mirrored_triple_set(plus, p0), triple_set_bruteforce(p0, -1)));
    for (int i = 0; i < plus.n; ++i) {
      const int seed = find_seed_facet(p0, i, 1);
      if (seed >= 0) CHECK(plus.partner(i, seed));
      // Some partner always exists: the antipodal facet.
      CHECK(plus.partner(i, p0.antipode[static_cast<std::size_t>(i)]));
    }
  }
}

TEST_CASE("selection: W = 2I on the cube") {
  const Polytope p0 = difference_body(make_solid("cube"));
  const Mat3 w = Mat3::identity() * 2.0;
  for (SearchCase c : kAllCases) {
    CAPTURE(case_name(c));
    Selection sel;
    for (const IVec3& u : test_set_vectors(test_set_kind(c))) sel.push_back(facet_containing(p0, lattice_point(w, u)));
    CHECK(selection_feasible(p0, sel, c));
  }
  Selection bad;
  for (const IVec3& u : test_set_vectors(2)) bad.push_back(facet_containing(p0, lattice_point(w, u)));
  bad[5] = facet_with_normal(p0, {-1, 0, 0});
  bad[0] = facet_with_normal(p0, {1, 0, 0});
  bad[1] = facet_with_normal(p0, {0, 1, 0});
  // With W e1 on x = 2, W(e1 + e2) has x ≥ 0 and cannot lie on x = -2.
  CHECK_FALSE(selection_feasible(p0, bad, SearchCase::II));
}

TEST_CASE("selection: parameterisation and determinant polynomial") {
  const Polytope p0 = difference_body(make_solid("cube"));
  const Mat3 w = Mat3::identity() * 2.0;
  Selection sel;
  for (const IVec3& u : test_set_vectors(2)) sel.push_back(facet_containing(p0, lattice_point(w, u)));
  const auto fam = parameterize(selection_planes(p0, sel), 2);
  REQUIRE(fam.has_value());
  CHECK(fam->dim() == 3);
  // Every member places the test set on the six planes.
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  const SlotPlanes planes = selection_planes(p0, sel);
  const auto us = test_set_vectors(2);
  for (int t = 0; t < 20; ++t) {
    const Mat3 m = fam->at({u(rng), u(rng), u(rng)});
    for (std::size_t i = 0; i < us.size(); ++i)
      CHECK(dot(planes.normal[i], lattice_point(m, us[i])) == doctest::Approx(planes.offset[i]).epsilon(1e-12));
  }
  // det_polynomial agrees with det at random parameters.
  const Poly d = det_polynomial(*fam);
  for (int t = 0; t < 20; ++t) {
    const std::array<double, 3> x{u(rng), u(rng), u(rng)};
    CHECK(d.eval(x) == doctest::Approx(fam->at({x[0], x[1], x[2]}).det()).epsilon(1e-10));
  }
}

TEST_CASE("det_polynomial: worked examples") {
  MatrixFamily f;
  f.c = Mat3::identity();
  Mat3 e00;
  e00(0, 0) = 1;
  f.m = {e00};
  const Poly p = det_polynomial(f);
  CHECK(p.coeff(0) == doctest::Approx(1));
  CHECK(p.coeff(1) == doctest::Approx(1));
  CHECK(p.total_degree() == 1);
  Mat3 e11, e22;
  e11(1, 1) = 1;
  e22(2, 2) = 1;
  f.m = {e00, e11, e22};
  const Poly q = det_polynomial(f);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) CHECK(q.coeff(i, j, k) == doctest::Approx(1));
  CHECK(q.total_degree() == 3);
}

TEST_CASE("case4_adjust: worked examples") {
  // P0 of the tetrahedron is a cuboctahedron with vertices (±2, ±2, 0) permuted.
  const Polytope p0 = difference_body(make_solid("tetrahedron"));
  const int x = facet_with_normal(p0, {1, 0, 0}), y = facet_with_normal(p0, {0, 1, 0}), z = facet_with_normal(p0, {0, 0, 1});
  const int t = facet_with_normal(p0, {1, 1, -1});
  REQUIRE(std::min({x, y, z, t}) >= 0);
  // (1,1,-1)/√3 = (e1 + e2 - e3)/√3: λ1, λ2 > 0.
  const Selection sel{x, y, z, x, y, t, z};
  const auto adj = case4_adjust(p0, sel);
  REQUIRE(adj.has_value());
  CHECK((adj->normal[5] - normalized({1, 1, 0})).norm() < 1e-12);
  CHECK(adj->offset[5] == doctest::Approx(2 * std::sqrt(2.0)));
  for (std::size_t i = 0; i < 7; ++i)
    if (i != 5) CHECK((adj->normal[i] - p0.halfspaces[static_cast<std::size_t>(sel[i])].normal).norm() == 0.0);
  // (-1,1,1)/√3 has λ1 < 0.
  const int neg = facet_with_normal(p0, {-1, 1, 1});
  CHECK_FALSE(case4_adjust(p0, Selection{x, y, z, x, y, neg, z}).has_value());
  // Linearly dependent first three normals.
  CHECK_FALSE(case4_adjust(p0, Selection{x, x, z, x, y, t, z}).has_value());
  CHECK_THROWS_AS(case4_adjust(p0, Selection{x, y, z, x, y, t}), PreconditionViolated);
}

TEST_CASE("admissibility: worked examples") {
  const Polytope cube0 = difference_body(make_solid("cube"));
  CHECK(check_admissible(cube0, Mat3::identity() * 2.0, SearchCase::II));
  CHECK(verify_admissible_bruteforce(cube0, Mat3::identity() * 2.0));
  CHECK_FALSE(check_admissible(cube0, Mat3::identity(), SearchCase::II));
  CHECK_FALSE(verify_admissible_bruteforce(cube0, Mat3::identity()));
  CHECK(deepest_lattice_point(cube0, Mat3::identity()) == doctest::Approx(1.0).epsilon(1e-12));
  const Polytope oct0 = difference_body(make_solid("octahedron"));
  CHECK(verify_admissible_bruteforce(oct0, reference_basis("octahedron")));
  CHECK_FALSE(verify_admissible_bruteforce(oct0, reference_basis("octahedron") * 0.99));
  const Polytope tet0 = difference_body(make_solid("tetrahedron"));
  CHECK(verify_admissible_bruteforce(tet0, reference_basis("tetrahedron")));
  CHECK_FALSE(verify_admissible_bruteforce(tet0, reference_basis("tetrahedron") * 0.99));
}

TEST_CASE("admissibility: check_admissible agrees with brute force on the search results") {
  for (const char* n : {"cube", "octahedron", "truncated_octahedron"}) {
    CAPTURE(n);
    const Polytope p = make_solid(n);
    const PackingResult r = densest_packing(p, serial());
    CHECK(check_admissible(difference_body(p), r.basis, r.winning_case, 1e-8));
    CHECK(verify_admissible_bruteforce(difference_body(p), r.basis));
    CHECK_FALSE(verify_admissible_bruteforce(difference_body(p), r.basis * 0.999));
  }
}

TEST_CASE("symmetry group of simple bodies") {
  CHECK(facet_symmetries(difference_body(make_solid("cube"))).size() == 48);
  CHECK(facet_symmetries(difference_body(make_solid("octahedron"))).size() == 48);
  CHECK(facet_symmetries(difference_body(make_solid("dodecahedron"))).size() == 120);
  // Linear symmetries survive an affine change of coordinates.
  std::mt19937 rng(11);
  const Polytope skew = transformed(difference_body(make_solid("cube")), random_affine(rng, 10));
  CHECK(facet_symmetries(skew).size() == 48);
  const auto g = facet_symmetries(difference_body(make_solid("cube")));
  CHECK(canonical_selection({0, 0, 0}, g));
  CHECK_FALSE(canonical_selection({5, 4, 3}, g));
  // The identity alone accepts everything.
  CHECK(canonical_selection({5, 4, 3}, {g.front()}));
}

TEST_CASE("densest_packing: tetrahedron, cube and octahedron") {
  const PackingResult cube = densest_packing(make_solid("cube"), serial());
  CHECK(cube.density == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cube.critical_determinant == doctest::Approx(8.0).epsilon(1e-9));
  check_result(make_solid("cube"), cube);
  CHECK_FALSE(cube.partial_cases);
  CHECK_FALSE(cube.marginal);

  const PackingResult oct = densest_packing(make_solid("octahedron"), serial());
  CHECK(oct.density == doctest::Approx(18.0 / 19).epsilon(1e-9));
  CHECK(oct.critical_determinant == doctest::Approx(std::fabs(reference_basis("octahedron").det())).epsilon(1e-9));
  check_result(make_solid("octahedron"), oct);

  const PackingResult tet = densest_packing(make_solid("tetrahedron"), serial());
  CHECK(tet.density == doctest::Approx(18.0 / 49).epsilon(1e-9));
  CHECK(tet.critical_determinant == doctest::Approx(std::fabs(reference_basis("tetrahedron").det())).epsilon(1e-9));
  check_result(make_solid("tetrahedron"), tet);
}

TEST_CASE("densest_packing: counts are consistent") {
  const PackingResult r = densest_packing(make_solid("octahedron"), serial());
  const SearchCounts& c = r.counts;
  CHECK(c.selections_enumerated > 0);
  CHECK(c.pruned_by_symmetry + c.pruned_by_S0 + c.rank_skipped + c.case4_skipped <= c.selections_enumerated);
  // 8 facets, 4 first slots: cases I and II choose 5 more facets, III and IV choose 6.
  const std::uint64_t raw = 2ull * 4 * 32768 + 2ull * 4 * 262144;
  CHECK(c.pruned_by_G + c.selections_enumerated == raw);
}

TEST_CASE("densest_packing: symmetry reduction and threading do not change the optimum") {
  for (const char* n : {"cube", "octahedron"}) {
    CAPTURE(n);
    const Polytope p = make_solid(n);
    const PackingResult a = densest_packing(p, serial());
    SearchOptions full = serial();
    full.use_symmetry = false;
    const PackingResult b = densest_packing(p, full);
    CHECK(b.critical_determinant == doctest::Approx(a.critical_determinant).epsilon(1e-9));
    CHECK(b.counts.pruned_by_symmetry == 0);
    CHECK(b.counts.selections_enumerated == a.counts.selections_enumerated);
    SearchOptions par;
    par.threads = 4;
    const PackingResult c = densest_packing(p, par);
    CHECK(c.critical_determinant == doctest::Approx(a.critical_determinant).epsilon(1e-9));
  }
}

TEST_CASE("densest_packing: serial runs are deterministic") {
  const Polytope p = make_solid("truncated_octahedron");
  const PackingResult a = densest_packing(p, serial());
  const PackingResult b = densest_packing(p, serial());
  CHECK(a.selection == b.selection);
  CHECK(a.winning_case == b.winning_case);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(a.basis(r, c) == b.basis(r, c));
}

TEST_CASE("densest_packing: case filter") {
  SearchOptions o = serial();
  o.cases = {SearchCase::III};
  const PackingResult r = densest_packing(make_solid("cube"), o);
  CHECK(r.partial_cases);
  CHECK(r.winning_case == SearchCase::III);
  CHECK(r.density <= 1 + 1e-9);
  check_result(make_solid("cube"), r);
}

TEST_CASE("densest_packing: invariance under scaling, translation and linear maps") {
  std::mt19937 rng(2024);
  const Polytope cube = make_solid("cube");
  for (int t = 0; t < 4; ++t) {
    const Mat3 m = random_affine(rng, 10);
    std::uniform_real_distribution<double> u(-3, 3);
    const Polytope q = transformed(cube, m, {u(rng), u(rng), u(rng)});
    const PackingResult r = densest_packing(q, serial());
    CHECK(r.density == doctest::Approx(1.0).epsilon(1e-7));
    check_result(q, r);
  }
  const Polytope oct = transformed(make_solid("octahedron"), Mat3::identity() * 3.7, {1, -2, 0.5});
  CHECK(densest_packing(oct, serial()).density == doctest::Approx(18.0 / 19).epsilon(1e-9));
  const Mat3 m = random_affine(rng, 10);
  const Polytope tet = transformed(make_solid("tetrahedron"), m, {0.3, 0.1, -0.2});
  CHECK(densest_packing(tet, serial()).density == doctest::Approx(18.0 / 49).epsilon(1e-7));
}

TEST_CASE("pruning: triple filter plus selection LP loses nothing") {
  const Polytope cube0 = difference_body(make_solid("cube"));
  for (SearchCase c : kAllCases) {
    CAPTURE(case_name(c));
    auto a = surviving_selections(cube0, c);
    auto b = surviving_selections_bruteforce(cube0, c);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    CHECK_FALSE(a.empty());
  }
  const Polytope oct0 = difference_body(make_solid("octahedron"));
  auto a = surviving_selections(oct0, SearchCase::II);
  auto b = surviving_selections_bruteforce(oct0, SearchCase::II);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
}

TEST_CASE("densest_packing: errors") {
  SearchOptions o = serial();
  o.cases = {};
  CHECK_THROWS_AS(densest_packing(make_solid("cube"), o), NoLatticeFound);
}
