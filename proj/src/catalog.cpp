#include "latpack/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "latpack/error.hpp"
#include "latpack/linalg.hpp"
#include "latpack/polysolve.hpp"

namespace latpack {
namespace {

using Planes = std::vector<Halfspace>;

// All sign patterns of ±c₀x₀ ± c₁x₁ ± c₂x₂ ≤ rhs.
void add_signed(Planes& out, const Vec3& c, double rhs) {
  for (int s = 0; s < 8; ++s) {
    const Vec3 n{(s & 1) ? -c.x : c.x, (s & 2) ? -c.y : c.y, (s & 4) ? -c.z : c.z};
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Halfspace& h) {
      return (h.normal - n).norm() < 1e-15 && h.offset == rhs;
    });
    if (!dup) out.push_back({n, rhs});
  }
}

// c, then its two cyclic shifts (c₂, c₀, c₁) and (c₁, c₂, c₀).
void add_signed_cyclic(Planes& out, const Vec3& c, double rhs) {
  add_signed(out, c, rhs);
  add_signed(out, {c.z, c.x, c.y}, rhs);
  add_signed(out, {c.y, c.z, c.x}, rhs);
}

Planes scaled(Planes p, double s) {
  for (Halfspace& h : p) h.offset *= s;
  return p;
}

Planes joined(std::initializer_list<Planes> parts) {
  Planes out;
  for (const Planes& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Planes tetrahedron() {
  return {{{1, 1, 1}, 1}, {{-1, -1, 1}, 1}, {{-1, 1, -1}, 1}, {{1, -1, -1}, 1}};
}

Planes cube() {
  Planes p;
  add_signed_cyclic(p, {1, 0, 0}, 1);
  return p;
}

Planes octahedron() {
  Planes p;
  add_signed(p, {1, 1, 1}, 1);
  return p;
}

Planes dodecahedron() {
  Planes p;
  add_signed_cyclic(p, {kTau, 1, 0}, 1);
  return p;
}

Planes icosahedron() {
  Planes p = octahedron();
  // |τx₁| + |x₃/τ| ≤ 1 and its cyclic shifts.
  add_signed_cyclic(p, {kTau, 0, 1 / kTau}, 1);
  return p;
}

Planes rhombic_triacontahedron() {
  Planes p;
  add_signed_cyclic(p, {kTau, 0, 0}, 1);
  add_signed_cyclic(p, {0.5, kTau / 2, (kTau + 1) / 2}, 1);
  return p;
}

Planes pair_sums(double rhs) {
  Planes p;
  add_signed_cyclic(p, {1, 1, 0}, rhs);
  return p;
}

Planes negated(Planes p) {
  for (Halfspace& h : p) h.normal = h.normal * -1.0;
  return p;
}

// Snub cube with the square facets in x_i = ±1: permutations of (±y, ±y², ±1)
// where the parity of the permutation and of the number of minus signs differ.
std::vector<Vec3> snub_cube_points() {
  const double y = snub_cube_y();
  const std::array<double, 3> base{y, y * y, 1.0};
  const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}}};
  std::vector<Vec3> out;
  for (std::size_t k = 0; k < perms.size(); ++k) {
    const int odd_perm = k < 3 ? 0 : 1;
    for (int s = 0; s < 8; ++s) {
      const int minus = (s & 1) + ((s >> 1) & 1) + ((s >> 2) & 1);
      if ((odd_perm + minus) % 2 == 0) continue;
      std::array<double, 3> v{};
      for (int i = 0; i < 3; ++i) v[static_cast<std::size_t>(i)] = base[static_cast<std::size_t>(perms[k][static_cast<std::size_t>(i)])] * ((s >> i) & 1 ? -1.0 : 1.0);
      out.push_back({v[0], v[1], v[2]});
    }
  }
  return out;
}

Mat3 rotation(const Vec3& axis, double angle) {
  const Vec3 k = normalized(axis);
  const Mat3 kx = Mat3::from_columns({0, k.z, -k.y}, {-k.z, 0, k.x}, {k.y, -k.x, 0});
  return Mat3::identity() + kx * std::sin(angle) + kx * kx * (1.0 - std::cos(angle));
}

double max_diff(const Mat3& a, const Mat3& b) {
  double d = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) d = std::max(d, std::fabs(a(r, c) - b(r, c)));
  return d;
}

// Rotation group of the dodecahedron P_d (order 60).
std::vector<Mat3> icosahedral_rotations() {
  const Mat3 cyc = Mat3::from_columns({0, 0, 1}, {1, 0, 0}, {0, 1, 0});
  Mat3 flip = Mat3::identity();
  flip(0, 0) = flip(1, 1) = -1.0;
  const Mat3 r5 = rotation({kTau, 1, 0}, 2 * M_PI / 5);
  std::vector<Mat3> group{Mat3::identity()};
  for (std::size_t i = 0; i < group.size(); ++i)
    for (const Mat3& g : {cyc, flip, r5}) {
      const Mat3 m = g * group[i];
      if (std::none_of(group.begin(), group.end(), [&](const Mat3& h) { return max_diff(h, m) < 1e-9; }))
        group.push_back(m);
    }
  if (group.size() != 60) throw Error("icosahedral rotation group has the wrong order");
  return group;
}

Vec3 rotation_axis(const Mat3& r) {
  const Vec3 a{r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1)};
  if (a.norm() > 1e-6) return normalized(a);
  // Half turn: any nonzero column of R + I.
  const Mat3 s = r + Mat3::identity();
  Vec3 best = s.col(0);
  for (int c = 1; c < 3; ++c)
    if (s.col(c).norm() > best.norm()) best = s.col(c);
  return normalized(best);
}

std::vector<Vec3> orbit(const std::vector<Mat3>& group, const Vec3& v) {
  std::vector<Vec3> out;
  for (const Mat3& g : group) out.push_back(g * v);
  return out;
}

bool regular_snub(const std::vector<Vec3>& pts, const Vec3& n5, double h) {
  Polytope p;
  try {
    p = convex_hull(pts);
  } catch (const Error&) {
    return false;
  }
  if (p.f_vector() != std::array<std::size_t, 3>{60, 150, 92}) return false;
  const double e0 = (p.vertices[static_cast<std::size_t>(p.edges[0].v0)] - p.vertices[static_cast<std::size_t>(p.edges[0].v1)]).norm();
  for (const Edge& e : p.edges) {
    const double len = (p.vertices[static_cast<std::size_t>(e.v0)] - p.vertices[static_cast<std::size_t>(e.v1)]).norm();
    if (std::fabs(len - e0) > 1e-9 * e0) return false;
  }
  for (const Halfspace& hs : p.halfspaces)
    if (dot(hs.normal, n5) > 1 - 1e-12) return std::fabs(hs.offset - h) < 1e-9 * h;
  return false;
}

// Snub dodecahedron with its pentagons in the facet planes of (1+τ)P_d: the
// orbit of a point v on the plane n₅·x = h that is equidistant from its images
// under a fifth turn about n₅ and under a nearby third turn and half turn.
std::vector<Vec3> snub_dodecahedron_points() {
  const std::vector<Mat3> group = icosahedral_rotations();
  const Vec3 n5 = normalized({kTau, 1, 0});
  const double h = (1 + kTau) / std::sqrt(kTau * kTau + 1);
  const Mat3 r5 = rotation(n5, 2 * M_PI / 5);
  std::vector<Mat3> near3, near2;
  for (const Mat3& g : group) {
    const double tr = g(0, 0) + g(1, 1) + g(2, 2);
    if (std::fabs(tr) < 1e-9 && std::fabs(dot(rotation_axis(g), n5)) > 0.75) near3.push_back(g);
    if (std::fabs(tr + 1) < 1e-9 && std::fabs(dot(rotation_axis(g), n5)) > 0.75) near2.push_back(g);
  }
  auto gram = [](const Mat3& r) {
    const Mat3 d = Mat3::identity() - r;
    return d.transposed() * d;
  };
  const Mat3 m5 = gram(r5);
  const Vec3 e1 = normalized(cross(n5, {0, 0, 1}));
  const Vec3 e2 = cross(n5, e1);
  for (const Mat3& g3 : near3)
    for (const Mat3& g2 : near2) {
      const Mat3 m3 = gram(g3), m2 = gram(g2);
      for (double rad : {0.2, 0.4, 0.6})
        for (int k = 0; k < 12; ++k) {
          const double a = 2 * M_PI * k / 12;
          Vec3 v = n5 * h + (e1 * std::cos(a) + e2 * std::sin(a)) * (rad * h);
          bool ok = false;
          for (int it = 0; it < 60; ++it) {
            const double q5 = dot(v, m5 * v), q3 = dot(v, m3 * v), q2 = dot(v, m2 * v);
            const Vec3 f{q5 - q3, q5 - q2, dot(n5, v) - h};
            if (f.norm() < 1e-15 * h * h) {
              ok = true;
              break;
            }
            const Vec3 g5 = m5 * v * 2.0, g3v = m3 * v * 2.0, g2v = m2 * v * 2.0;
            const Mat3 jt = Mat3::from_columns(g5 - g3v, g5 - g2v, n5);
            const Mat3 j = jt.transposed();
            if (std::fabs(j.det()) < 1e-14) break;
            v = v - j.inverse() * f;
          }
          if (!ok || dot(v, m5 * v) < 1e-6 * h * h) continue;
          const std::vector<Vec3> pts = orbit(group, v);
          if (regular_snub(pts, n5, h)) return pts;
        }
    }
  throw Error("snub dodecahedron construction did not converge");
}

Mat3 d3() { return Mat3::from_columns({1, 1, 0}, {1, 0, 1}, {0, 1, 1}); }

Mat3 icosahedron_w_at(double x) {
  const double s = kSqrt5, x2 = x * x;
  const Vec3 w1{(-33.0 / 8 - 39.0 / 8 * s) * x2 + (39.0 / 4 + 33.0 / 4 * s) * x - 11.0 / 4 - 1.5 * s,
                (-0.25 - 0.25 * s) * x + 1 + 0.5 * s,
                (33.0 / 8 + 39.0 / 8 * s) * x2 + (-9.5 - 8 * s) * x + 13.0 / 4 + 1.5 * s};
  const Vec3 w2{(-33.0 / 40 * s - 39.0 / 8) * x2 + (41.0 / 20 * s + 35.0 / 4) * x - 2.5 - 23.0 / 20 * s,
                (1.25 + 0.25 * s) * x - 1 - 0.5 * s,
                (-33.0 / 40 * s - 39.0 / 8) * x2 + (9.0 / 5 * s + 7.5) * x - 3.0 / 20 * s};
  const Vec3 w3{(0.5 * s + 1.5) * x - 2 - s, x, 0};
  return Mat3::from_columns(w1, w2, w3);
}

// Optimal lattice basis of (1+τ)P_i, columns w¹, w², w³ at the critical
// point x̄ ∈ (1, 2) of det w(x). det w is a quintic, recovered exactly by
// interpolation at six nodes.
Mat3 icosahedron_w() {
  std::vector<double> a(36), b(6);
  for (int i = 0; i < 6; ++i) {
    const double x = i;
    for (int j = 0; j < 6; ++j) a[static_cast<std::size_t>(6 * i + j)] = std::pow(x, j);
    b[static_cast<std::size_t>(i)] = icosahedron_w_at(x).det();
  }
  DenseMatrix m(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) m(i, j) = a[static_cast<std::size_t>(6 * i + j)];
  const auto c = solve_square(m, b);
  if (!c) throw Error("icosahedron determinant interpolation failed");
  std::vector<double> d;
  for (std::size_t j = 1; j < c->size(); ++j) d.push_back(static_cast<double>(j) * (*c)[j]);
  double x = 0.0;
  for (double r : real_roots(d))
    if (r > 1 && r < 2) x = r;
  if (x == 0.0) throw Error("icosahedron lattice parameter not found");
  return icosahedron_w_at(x);
}

struct Entry {
  std::function<Polytope()> make;
  std::array<std::size_t, 3> f;
  std::function<ReferenceDensity()> density;
  std::function<Mat3()> basis;
  bool fast = false;
};

Polytope from_planes(const Planes& p) { return from_halfspaces(p); }

const std::map<std::string, Entry>& entries() {
  static const std::map<std::string, Entry> table = [] {
    const double t = kTau, s2 = kSqrt2;
    std::map<std::string, Entry> m;
    m["tetrahedron"] = {[] { return from_planes(tetrahedron()); }, {4, 6, 4},
                        [] { return ReferenceDensity{18.0 / 49, "18/49"}; },
                        [] { return Mat3::from_columns({1, -1.0 / 6, -1.0 / 6}, {-1.0 / 6, 1, -1.0 / 6}, {-1.0 / 6, -1.0 / 6, 1}) * 2.0; },
                        true};
    m["cube"] = {[] { return from_planes(cube()); }, {8, 12, 6}, [] { return ReferenceDensity{1.0, "1"}; },
                 [] { return Mat3::identity() * 2.0; }, true};
    m["octahedron"] = {[] { return from_planes(octahedron()); }, {6, 12, 8},
                       [] { return ReferenceDensity{18.0 / 19, "18/19"}; },
                       [] {
                         return Mat3::from_columns({1.0 / 3, 0.5, 1.0 / 6}, {-1.0 / 6, -1.0 / 3, 0.5}, {-0.5, 1.0 / 6, -1.0 / 3}) * 2.0;
                       },
                       true};
    m["dodecahedron"] = {[] { return from_planes(dodecahedron()); }, {20, 30, 12},
                         [t] { return ReferenceDensity{(2 + t) / 4, "(2+τ)/4"}; },
                         [t] { return d3() * (2.0 / (1 + t)); }};
    m["icosahedron"] = {[] { return from_planes(icosahedron()); }, {12, 30, 20},
                        [] { return ReferenceDensity{0.836357445, "≈0.836357445"}; },
                        [t] { return icosahedron_w() * (2.0 / (1 + t)); }};
    m["cubeoctahedron"] = {[] { return from_planes(joined({cube(), scaled(octahedron(), 2)})); }, {12, 24, 14},
                           [] { return ReferenceDensity{45.0 / 49, "45/49"}; },
                           [] { return reference_basis("tetrahedron"); }, true};
    m["icosidodecahedron"] = {[] { return from_planes(joined({icosahedron(), dodecahedron()})); }, {30, 60, 32},
                              [t] { return ReferenceDensity{(14 + 17 * t) / 48, "(14+17τ)/48"}; },
                              [t] { return d3() * (2.0 / (1 + t)); }};
    m["rhombic_cubeoctahedron"] = {
        [s2] { return from_planes(joined({pair_sums(2), scaled(cube(), s2), scaled(octahedron(), 4 - s2)})); }, {24, 48, 26},
        [s2] { return ReferenceDensity{(16 * s2 - 20) / 3, "(16√2−20)/3"}; }, [] { return d3() * 2.0; }};
    m["rhombic_icosidodecahedron"] = {
        [t] {
          return from_planes(joined({scaled(rhombic_triacontahedron(), 3 * t + 2), scaled(icosahedron(), 4 * t + 1),
                                     scaled(dodecahedron(), 3 * (1 + t))}));
        },
        {60, 120, 62}, [t] { return ReferenceDensity{(8 * t + 46) / (36 * t + 15), "(8τ+46)/(36τ+15)"}; },
        [t] {
          const double a = (t - 1) / (4 * t + 2), b = (9 * t + 4) / (4 * t + 2);
          return Mat3::from_columns({a, 3.5, b}, {b, a, 3.5}, {3.5, b, a}) * 2.0;
        }};
    m["truncated_cube"] = {[s2] { return from_planes(joined({cube(), scaled(octahedron(), 1 + s2)})); }, {24, 36, 14},
                           [s2] { return ReferenceDensity{9 / (5 + 3 * s2), "9/(5+3√2)"}; },
                           [s2] {
                             const double a = (2 - s2) / 3;
                             return Mat3::from_columns({1, -a, 0}, {0, 1, -a}, {-a, 0, 1}) * 2.0;
                           }};
    m["truncated_octahedron"] = {[] { return from_planes(joined({cube(), scaled(octahedron(), 1.5)})); }, {24, 36, 14},
                                 [] { return ReferenceDensity{1.0, "1"}; },
                                 [] { return Mat3::from_columns({1, 0, 0}, {1, 1, 0}, {0.5, 0.5, -0.5}) * 2.0; }, true};
    m["truncated_dodecahedron"] = {
        [t] { return from_planes(joined({scaled(dodecahedron(), 1 + t), scaled(icosahedron(), (7 + 12 * t) / (3 + 4 * t))})); },
        {60, 90, 32}, [t] { return ReferenceDensity{(5 * t + 16) / (4 * (6 * t - 3)), "(5τ+16)/(4(6τ−3))"}; },
        [] { return d3() * 2.0; }};
    m["truncated_icosahedron"] = {
        [t] { return from_planes(joined({scaled(icosahedron(), 1 + t), scaled(dodecahedron(), 4.0 / 3 + t)})); }, {60, 90, 32},
        [] { return ReferenceDensity{0.7849877759, "≈0.7849877759"}; },
        [] { return icosahedron_w() * 2.0; }};
    m["truncated_cubeoctahedron"] = {
        [s2] {
          return from_planes(joined({pair_sums(2 + 3 * s2), scaled(cube(), 2 * s2 + 1), scaled(octahedron(), 3 * s2 + 3)}));
        },
        {48, 72, 26},
        [s2] {
          const double v = 99.0 / 992 * std::sqrt(66.0) - 231.0 / 1984 * std::sqrt(33.0) + 2835.0 / 992 * s2 - 6615.0 / 1984;
          return ReferenceDensity{v, "99√66/992 − 231√33/1984 + 2835√2/992 − 6615/1984"};
        },
        [s2] {
          const double a = std::sqrt(33.0) * (s2 + 1) / 6;
          return Mat3::from_columns({2 * s2 + 1, -2 * s2 - 0.5 + a, 2 * s2 + 0.5 - a},
                                    {s2 / 4 - 0.75 + a / 2, -0.75 * s2 + 0.25 + a / 2, 2 * s2 + 1},
                                    {1.75 + 1.75 * s2 - a / 2, 0.5 + a, 1.25 * s2 + 0.75 - a / 2}) *
                 2.0;
        }};
    m["truncated_icosidodecahedron"] = {
        [t] {
          return from_planes(joined({scaled(rhombic_triacontahedron(), 5 * t + 4), scaled(icosahedron(), 6 * t + 3),
                                     scaled(dodecahedron(), 5 * (1 + t))}));
        },
        {120, 180, 62}, [t] { return ReferenceDensity{0.4 * t + 0.18, "2τ/5 + 9/50"}; }, [] { return d3() * 10.0; }};
    m["truncated_tetrahedron"] = {[] { return from_planes(joined({scaled(tetrahedron(), 5), scaled(negated(tetrahedron()), 3)})); },
                                  {12, 18, 8}, [] { return ReferenceDensity{207.0 / 304, "207/304"}; },
                                  [] {
                                    return Mat3::from_columns({2.0 / 3, 2, 4.0 / 3}, {2, -4.0 / 3, -2.0 / 3}, {-4.0 / 3, 2.0 / 3, -2}) * 2.0;
                                  }};
    m["snub_cube"] = {[] { return convex_hull(snub_cube_points()); }, {24, 60, 38},
                      [] {
                        const double y = snub_cube_y();
                        return ReferenceDensity{0.5 + y / 6 + 2 * y * y / 3, "1/2 + y/6 + 2y²/3, y³+y²+y = 1"};
                      },
                      [] {
                        const double y = snub_cube_y();
                        return Mat3::from_columns({1, 0, 0}, {0, 0, 1}, {0.5, 1 / y - 1, -0.5}) * 2.0;
                      }};
    m["snub_dodecahedron"] = {[] { return convex_hull(snub_dodecahedron_points()); }, {60, 150, 92},
                              [] { return ReferenceDensity{0.788640117, "≈0.788640117"}; }, [] { return d3() * 2.0; }};
    return m;
  }();
  return table;
}

const Entry& entry(const std::string& name) {
  const auto& t = entries();
  const auto it = t.find(name);
  if (it == t.end()) throw UnknownSolid("unknown solid: " + name);
  return it->second;
}

}  // namespace

const std::vector<std::string>& solid_names() {
  static const std::vector<std::string> names{
      "tetrahedron",          "cube",
      "octahedron",           "dodecahedron",
      "icosahedron",          "cubeoctahedron",
      "icosidodecahedron",    "rhombic_cubeoctahedron",
      "rhombic_icosidodecahedron", "truncated_cube",
      "truncated_octahedron", "truncated_dodecahedron",
      "truncated_icosahedron", "truncated_cubeoctahedron",
      "truncated_icosidodecahedron", "truncated_tetrahedron",
      "snub_cube",            "snub_dodecahedron"};
  return names;
}

bool is_catalog_solid(const std::string& name) { return entries().count(name) > 0; }

Polytope make_solid(const std::string& name) {
  const Entry& e = entry(name);
  Polytope p = e.make();
  if (p.f_vector() != e.f) throw Error("catalog construction of " + name + " has the wrong f-vector");
  return p;
}

ReferenceDensity reference_density(const std::string& name) { return entry(name).density(); }

std::array<std::size_t, 3> reference_f_vector(const std::string& name) { return entry(name).f; }

Mat3 reference_basis(const std::string& name) { return entry(name).basis(); }

bool fast_tier(const std::string& name) { return entry(name).fast; }

double snub_cube_y() {
  static const double y = [] {
    const std::vector<double> r = real_roots(std::vector<double>{-1, 1, 1, 1});
    if (r.size() != 1) throw Error("y³ + y² + y = 1 must have one real root");
    long double v = r[0];
    for (int i = 0; i < 3; ++i) v -= (v * v * v + v * v + v - 1) / (3 * v * v + 2 * v + 1);
    return static_cast<double>(v);
  }();
  return y;
}

}  // namespace latpack
