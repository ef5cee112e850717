#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

#include "latpack/error.hpp"
#include "latpack/polytope.hpp"
#include "polytope_internal.hpp"

namespace latpack {

namespace {

struct Tri {
  std::array<int, 3> v;
  Vec3 n;  // unit outer normal
  double d = 0.0;
  bool alive = true;
};

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

class IncrementalHull {
 public:
  IncrementalHull(const std::vector<Vec3>& pts, double eps) : p_(pts), eps_(eps) {}

  void build() {
    init_simplex();
    std::vector<int> order(p_.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937 rng(20240611u);
    std::shuffle(order.begin(), order.end(), rng);
    for (int i : order) {
      if (std::find(seed_.begin(), seed_.end(), i) != seed_.end()) continue;
      add_point(i);
    }
  }

  std::vector<Tri>& faces() { return f_; }
  int owner(int a, int b) const {
    auto it = edges_.find(edge_key(a, b));
    return it == edges_.end() ? -1 : it->second;
  }

 private:
  const std::vector<Vec3>& p_;
  double eps_;
  std::vector<Tri> f_;
  std::unordered_map<std::uint64_t, int> edges_;
  std::array<int, 4> seed_{};
  Vec3 inside_;

  int make_face(int a, int b, int c) {
    Tri t;
    t.v = {a, b, c};
    Vec3 n = cross(p_[static_cast<std::size_t>(b)] - p_[static_cast<std::size_t>(a)],
                   p_[static_cast<std::size_t>(c)] - p_[static_cast<std::size_t>(a)]);
    const double len = n.norm();
    t.n = len > 0 ? n / len : n;
    t.d = dot(t.n, p_[static_cast<std::size_t>(a)]);
    f_.push_back(t);
    const int id = static_cast<int>(f_.size()) - 1;
    edges_[edge_key(a, b)] = id;
    edges_[edge_key(b, c)] = id;
    edges_[edge_key(c, a)] = id;
    return id;
  }

  void init_simplex() {
    const auto& p = p_;
    const std::size_t n = p.size();
    std::size_t i0 = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (p[i].x < p[i0].x || (p[i].x == p[i0].x && (p[i].y < p[i0].y || (p[i].y == p[i0].y && p[i].z < p[i0].z))))
        i0 = i;
    std::size_t i1 = i0;
    double best = -1;
    for (std::size_t i = 0; i < n; ++i)
      if ((p[i] - p[i0]).norm2() > best) {
        best = (p[i] - p[i0]).norm2();
        i1 = i;
      }
    if (std::sqrt(best) <= eps_) throw DegenerateInput("convex_hull: all points coincide");
    const Vec3 dir = normalized(p[i1] - p[i0]);
    std::size_t i2 = i0;
    best = -1;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = cross(p[i] - p[i0], dir).norm();
      if (d > best) {
        best = d;
        i2 = i;
      }
    }
    if (best <= eps_) throw DegenerateInput("convex_hull: points are collinear");
    const Vec3 nrm = normalized(cross(p[i1] - p[i0], p[i2] - p[i0]));
    std::size_t i3 = i0;
    best = -1;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = std::fabs(dot(p[i] - p[i0], nrm));
      if (d > best) {
        best = d;
        i3 = i;
      }
    }
    if (best <= eps_) throw DegenerateInput("convex_hull: points are coplanar");
    seed_ = {static_cast<int>(i0), static_cast<int>(i1), static_cast<int>(i2), static_cast<int>(i3)};
    inside_ = (p[i0] + p[i1] + p[i2] + p[i3]) / 4.0;
    const int a = seed_[0], b = seed_[1], c = seed_[2], d = seed_[3];
    if (dot(p[static_cast<std::size_t>(d)] - p[static_cast<std::size_t>(a)], nrm) > 0) {
      make_face(a, c, b);
      make_face(a, b, d);
      make_face(b, c, d);
      make_face(c, a, d);
    } else {
      make_face(a, b, c);
      make_face(a, d, b);
      make_face(b, d, c);
      make_face(c, d, a);
    }
  }

  void add_point(int pi) {
    const Vec3& q = p_[static_cast<std::size_t>(pi)];
    int start = -1;
    double best = eps_;
    for (std::size_t i = 0; i < f_.size(); ++i) {
      if (!f_[i].alive) continue;
      const double d = dot(f_[i].n, q) - f_[i].d;
      if (d > best) {
        best = d;
        start = static_cast<int>(i);
      }
    }
    if (start < 0) return;

    // Connected visible region grown from the most visible face.
    std::vector<int> visible{start};
    std::vector<char> mark(f_.size(), 0);
    mark[static_cast<std::size_t>(start)] = 1;
    for (std::size_t k = 0; k < visible.size(); ++k) {
      const Tri& t = f_[static_cast<std::size_t>(visible[k])];
      for (int e = 0; e < 3; ++e) {
        const int g = owner(t.v[static_cast<std::size_t>((e + 1) % 3)], t.v[static_cast<std::size_t>(e)]);
        if (g < 0 || mark[static_cast<std::size_t>(g)]) continue;
        const Tri& u = f_[static_cast<std::size_t>(g)];
        if (dot(u.n, q) - u.d > eps_) {
          mark[static_cast<std::size_t>(g)] = 1;
          visible.push_back(g);
        }
      }
    }
    std::vector<std::pair<int, int>> horizon;
    for (int fi : visible) {
      const Tri& t = f_[static_cast<std::size_t>(fi)];
      for (int e = 0; e < 3; ++e) {
        const int a = t.v[static_cast<std::size_t>(e)], b = t.v[static_cast<std::size_t>((e + 1) % 3)];
        const int g = owner(b, a);
        if (g < 0 || !mark[static_cast<std::size_t>(g)]) horizon.emplace_back(a, b);
      }
    }
    for (int fi : visible) {
      Tri& t = f_[static_cast<std::size_t>(fi)];
      t.alive = false;
      for (int e = 0; e < 3; ++e) {
        const std::uint64_t k = edge_key(t.v[static_cast<std::size_t>(e)], t.v[static_cast<std::size_t>((e + 1) % 3)]);
        auto it = edges_.find(k);
        if (it != edges_.end() && it->second == fi) edges_.erase(it);
      }
    }
    for (const auto& [a, b] : horizon) make_face(a, b, pi);
  }
};

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

std::vector<Vec3> dedupe(const std::vector<Vec3>& pts, double eps) {
  std::vector<std::size_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pts[a].x < pts[b].x; });
  std::vector<char> dead(pts.size(), 0);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (dead[idx[i]]) continue;
    for (std::size_t j = i + 1; j < idx.size() && pts[idx[j]].x - pts[idx[i]].x <= eps; ++j)
      if (!dead[idx[j]] && (pts[idx[j]] - pts[idx[i]]).norm() <= eps) dead[std::max(idx[i], idx[j])] = 1;
  }
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (!dead[i]) out.push_back(pts[i]);
  return out;
}

double point_scale(const std::vector<Vec3>& pts) {
  Vec3 c;
  for (const Vec3& p : pts) c += p;
  c = c / static_cast<double>(pts.size());
  double r = 0;
  for (const Vec3& p : pts) r = std::max(r, (p - c).norm());
  return std::max(r, 1e-300);
}

}  // namespace

namespace detail {

Polytope assemble(std::vector<Vec3> points, std::vector<Halfspace> planes, double eps) {
  for (Halfspace& h : planes) {
    const double n = h.normal.norm();
    h.normal = h.normal / n;
    h.offset /= n;
  }

  std::vector<char> keep_plane(planes.size(), 1);
  std::vector<char> keep_point(points.size(), 1);
  auto on_plane = [&](std::size_t pi, std::size_t hi) {
    return std::fabs(dot(planes[hi].normal, points[pi]) - planes[hi].offset) <= eps;
  };
  // Alternate pruning until every point lies on ≥ 3 spanning planes and every plane holds ≥ 3 points.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
      if (!keep_point[pi]) continue;
      std::vector<Vec3> ns;
      for (std::size_t hi = 0; hi < planes.size(); ++hi)
        if (keep_plane[hi] && on_plane(pi, hi)) ns.push_back(planes[hi].normal);
      bool spans = false;
      for (std::size_t a = 0; a < ns.size() && !spans; ++a)
        for (std::size_t b = a + 1; b < ns.size() && !spans; ++b)
          for (std::size_t c = b + 1; c < ns.size() && !spans; ++c)
            if (std::fabs(dot(ns[a], cross(ns[b], ns[c]))) > 1e-10) spans = true;
      if (!spans) {
        keep_point[pi] = 0;
        changed = true;
      }
    }
    for (std::size_t hi = 0; hi < planes.size(); ++hi) {
      if (!keep_plane[hi]) continue;
      int cnt = 0;
      for (std::size_t pi = 0; pi < points.size(); ++pi)
        if (keep_point[pi] && on_plane(pi, hi)) ++cnt;
      if (cnt < 3) {
        keep_plane[hi] = 0;
        changed = true;
      }
    }
  }

  Polytope poly;
  for (std::size_t pi = 0; pi < points.size(); ++pi)
    if (keep_point[pi]) poly.vertices.push_back(points[pi]);
  for (std::size_t hi = 0; hi < planes.size(); ++hi)
    if (keep_plane[hi]) poly.halfspaces.push_back(planes[hi]);
  if (poly.halfspaces.size() < 4 || poly.vertices.size() < 4) throw DegenerateInput("polytope has fewer than 4 facets");

  const std::size_t nf = poly.halfspaces.size();
  poly.facets.resize(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    const Halfspace& h = poly.halfspaces[f];
    std::vector<int> on;
    Vec3 c;
    for (std::size_t v = 0; v < poly.vertices.size(); ++v)
      if (std::fabs(dot(h.normal, poly.vertices[v]) - h.offset) <= eps) {
        on.push_back(static_cast<int>(v));
        c += poly.vertices[v];
      }
    c = c / static_cast<double>(on.size());
    const Vec3 e1 = normalized(poly.vertices[static_cast<std::size_t>(on[0])] - c);
    const Vec3 e2 = cross(h.normal, e1);
    std::vector<std::pair<double, int>> ang;
    for (int v : on) {
      const Vec3 d = poly.vertices[static_cast<std::size_t>(v)] - c;
      ang.emplace_back(std::atan2(dot(d, e2), dot(d, e1)), v);
    }
    std::sort(ang.begin(), ang.end());
    for (const auto& [a, v] : ang) poly.facets[f].vertices.push_back(v);
  }

  std::map<std::pair<int, int>, std::vector<int>> edge_facets;
  for (std::size_t f = 0; f < nf; ++f) {
    const auto& cyc = poly.facets[f].vertices;
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      const int a = cyc[k], b = cyc[(k + 1) % cyc.size()];
      edge_facets[{std::min(a, b), std::max(a, b)}].push_back(static_cast<int>(f));
    }
  }
  poly.neighbors.assign(nf, {});
  for (const auto& [vv, fs] : edge_facets) {
    if (fs.size() != 2) throw DegenerateInput("inconsistent face lattice (edge shared by " + std::to_string(fs.size()) + " facets)");
    poly.edges.push_back({vv.first, vv.second, fs[0], fs[1]});
    poly.neighbors[static_cast<std::size_t>(fs[0])].push_back(fs[1]);
    poly.neighbors[static_cast<std::size_t>(fs[1])].push_back(fs[0]);
  }
  for (auto& nb : poly.neighbors) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  const auto fv = poly.f_vector();
  if (static_cast<long>(fv[0]) - static_cast<long>(fv[1]) + static_cast<long>(fv[2]) != 2)
    throw DegenerateInput("face lattice violates Euler's relation");

  // Antipodal pairing; symmetric bodies get exactly opposite normals and equal offsets.
  poly.antipode.assign(nf, -1);
  const double scale = poly.circumradius();
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = 0; j < nf; ++j)
      if (j != i && (poly.halfspaces[i].normal + poly.halfspaces[j].normal).norm() <= 1e-8 &&
          std::fabs(poly.halfspaces[i].offset - poly.halfspaces[j].offset) <= 1e-8 * std::max(scale, 1.0)) {
        poly.antipode[i] = static_cast<int>(j);
        break;
      }
  poly.symmetric = std::all_of(poly.antipode.begin(), poly.antipode.end(), [](int a) { return a >= 0; });
  if (poly.symmetric) {
    for (std::size_t i = 0; i < nf; ++i) {
      const std::size_t j = static_cast<std::size_t>(poly.antipode[i]);
      if (j < i) continue;
      const Vec3 n = normalized(poly.halfspaces[i].normal - poly.halfspaces[j].normal);
      const double b = 0.5 * (poly.halfspaces[i].offset + poly.halfspaces[j].offset);
      poly.halfspaces[i] = {n, b};
      poly.halfspaces[j] = {-n, b};
    }
  } else {
    std::fill(poly.antipode.begin(), poly.antipode.end(), -1);
  }
  return poly;
}

}  // namespace detail

Polytope convex_hull(const std::vector<Vec3>& input) {
  if (input.size() < 4) throw DegenerateInput("convex_hull needs at least 4 points");
  for (const Vec3& p : input)
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) throw DegenerateInput("non-finite coordinate");
  const double scale = point_scale(input);
  const double eps = kGeoTolerance * scale;
  const std::vector<Vec3> pts = dedupe(input, eps);
  if (pts.size() < 4) throw DegenerateInput("convex_hull needs at least 4 distinct points");

  IncrementalHull hull(pts, eps);
  hull.build();
  auto& tris = hull.faces();

  // Merge edge-adjacent triangles whose opposite vertices lie on each other's plane.
  DisjointSets ds(tris.size());
  for (std::size_t i = 0; i < tris.size(); ++i) {
    if (!tris[i].alive) continue;
    for (int e = 0; e < 3; ++e) {
      const int a = tris[i].v[static_cast<std::size_t>(e)], b = tris[i].v[static_cast<std::size_t>((e + 1) % 3)];
      const int g = hull.owner(b, a);
      if (g < 0 || static_cast<std::size_t>(g) <= i) continue;
      const Tri& u = tris[static_cast<std::size_t>(g)];
      const int ci = tris[i].v[static_cast<std::size_t>((e + 2) % 3)];
      int cg = -1;
      for (int k = 0; k < 3; ++k)
        if (u.v[static_cast<std::size_t>(k)] != a && u.v[static_cast<std::size_t>(k)] != b) cg = u.v[static_cast<std::size_t>(k)];
      const double d1 = std::fabs(dot(tris[i].n, pts[static_cast<std::size_t>(cg)]) - tris[i].d);
      const double d2 = std::fabs(dot(u.n, pts[static_cast<std::size_t>(ci)]) - u.d);
      if (d1 <= eps && d2 <= eps) ds.unite(static_cast<int>(i), g);
    }
  }
  std::map<int, Vec3> normal_sum;
  std::map<int, std::vector<int>> members;
  for (std::size_t i = 0; i < tris.size(); ++i) {
    if (!tris[i].alive) continue;
    const int r = ds.find(static_cast<int>(i));
    const Vec3& a = pts[static_cast<std::size_t>(tris[i].v[0])];
    normal_sum[r] += cross(pts[static_cast<std::size_t>(tris[i].v[1])] - a, pts[static_cast<std::size_t>(tris[i].v[2])] - a);
    for (int v : tris[i].v) members[r].push_back(v);
  }
  std::vector<Halfspace> planes;
  for (auto& [r, ns] : normal_sum) {
    const Vec3 n = normalized(ns);
    double b = -1e300;
    for (int v : members[r]) b = std::max(b, dot(n, pts[static_cast<std::size_t>(v)]));
    planes.push_back({n, b});
  }
  // Distinct clusters on a common plane (possible after tolerance decisions) collapse here.
  std::vector<Halfspace> unique_planes;
  for (const Halfspace& h : planes) {
    bool dup = false;
    for (const Halfspace& u : unique_planes)
      if (std::acos(std::clamp(dot(u.normal, h.normal), -1.0, 1.0)) <= 1e-9 && std::fabs(u.offset - h.offset) <= eps) dup = true;
    if (!dup) unique_planes.push_back(h);
  }
  return detail::assemble(pts, unique_planes, 10 * eps);
}

}  // namespace latpack
