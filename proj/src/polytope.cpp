#include "latpack/polytope.hpp"

#include <algorithm>
#include <cmath>

#include "latpack/error.hpp"
#include "latpack/lp.hpp"
#include "polytope_internal.hpp"

namespace latpack {

double Polytope::circumradius() const {
  double r = 0.0;
  for (const Vec3& v : vertices) r = std::max(r, v.norm());
  return r;
}

Vec3 Polytope::vertex_centroid() const {
  Vec3 c;
  for (const Vec3& v : vertices) c += v;
  return c / static_cast<double>(vertices.size());
}

double Polytope::volume() const {
  const Vec3 o = vertex_centroid();
  double vol = 0.0;
  for (std::size_t f = 0; f < facets.size(); ++f) {
    const auto& cyc = facets[f].vertices;
    const Vec3& a = vertices[static_cast<std::size_t>(cyc[0])];
    for (std::size_t k = 1; k + 1 < cyc.size(); ++k) {
      const Vec3& b = vertices[static_cast<std::size_t>(cyc[k])];
      const Vec3& c = vertices[static_cast<std::size_t>(cyc[k + 1])];
      vol += dot(a - o, cross(b - o, c - o)) / 6.0;
    }
  }
  return vol;
}

double Polytope::max_violation(const Vec3& x) const {
  double m = -1e300;
  for (const Halfspace& h : halfspaces) m = std::max(m, dot(h.normal, x) - h.offset);
  return m;
}

double Polytope::support(const Vec3& a) const {
  double m = -1e300;
  for (const Vec3& v : vertices) m = std::max(m, dot(a, v));
  return m;
}

double volume(const Polytope& p) { return p.volume(); }

Polytope from_halfspaces(const std::vector<Halfspace>& input) {
  std::vector<Halfspace> hs;
  for (const Halfspace& h : input) {
    const double n = h.normal.norm();
    if (!(n > 0.0) || !std::isfinite(h.offset)) {
      if (n == 0.0 && h.offset >= 0.0) continue;
      if (n == 0.0) throw EmptyInterior("halfspace 0·x ≤ b with b < 0");
      throw DegenerateInput("non-finite halfspace");
    }
    hs.push_back({h.normal / n, h.offset / n});
  }
  if (hs.size() < 4) throw Unbounded("fewer than 4 halfspaces cannot bound a 3-polytope");

  LPProblem lp(3);
  for (const Halfspace& h : hs) lp.add_le({h.normal.x, h.normal.y, h.normal.z}, h.offset);
  if (!lp_feasible(lp)) throw EmptyInterior("halfspace system is infeasible");
  double extent = 0.0;
  for (int axis = 0; axis < 3; ++axis)
    for (double s : {1.0, -1.0}) {
      std::vector<double> obj(3, 0.0);
      obj[static_cast<std::size_t>(axis)] = s;
      const auto x = lp_maximize(lp, obj);
      if (!x) throw Unbounded("halfspace intersection is unbounded");
      extent = std::max(extent, std::fabs((*x)[static_cast<std::size_t>(axis)]));
    }
  extent = std::max(extent, 1e-300);

  // Chebyshev ball certifies a nonempty interior.
  LPProblem cheb(4);
  for (const Halfspace& h : hs) cheb.add_le({h.normal.x, h.normal.y, h.normal.z, 1.0}, h.offset);
  cheb.add_le({0, 0, 0, 1.0}, 2.0 * extent);
  const auto c = lp_maximize(cheb, {0, 0, 0, 1.0});
  if (!c || (*c)[3] <= kGeoTolerance * extent) throw EmptyInterior("halfspace intersection has empty interior");

  const double eps = kGeoTolerance * extent;
  std::vector<Vec3> pts;
  const std::size_t n = hs.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec3 nij = cross(hs[i].normal, hs[j].normal);
      if (nij.norm() < 1e-12) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        const Mat3 m = Mat3::from_columns(hs[i].normal, hs[j].normal, hs[k].normal).transposed();
        const double d = m.det();
        if (std::fabs(d) < 1e-12) continue;
        const Vec3 x = m.inverse() * Vec3{hs[i].offset, hs[j].offset, hs[k].offset};
        bool inside = true;
        for (const Halfspace& h : hs)
          if (dot(h.normal, x) - h.offset > eps) {
            inside = false;
            break;
          }
        if (inside) pts.push_back(x);
      }
    }
  Polytope hull = convex_hull(pts);

  // Keep the caller's plane data where a hull plane coincides with an input halfspace.
  for (Halfspace& h : hull.halfspaces)
    for (const Halfspace& g : hs)
      if ((h.normal - g.normal).norm() <= 1e-7 && std::fabs(h.offset - g.offset) <= 1e-7 * extent) {
        h = g;
        break;
      }
  return hull;
}

Polytope difference_body(const Polytope& p) {
  std::vector<Vec3> pts;
  pts.reserve(p.vertices.size() * p.vertices.size());
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    for (std::size_t j = 0; j < p.vertices.size(); ++j)
      if (i != j) pts.push_back(p.vertices[i] - p.vertices[j]);
  Polytope d = convex_hull(pts);
  if (!d.symmetric) throw DegenerateInput("difference body failed the symmetry check");
  return d;
}

Polytope transformed(const Polytope& p, const Mat3& m, const Vec3& shift) {
  if (std::fabs(m.det()) <= 1e-300) throw DegenerateInput("singular transformation");
  std::vector<Vec3> pts;
  pts.reserve(p.vertices.size());
  for (const Vec3& v : p.vertices) pts.push_back(m * v + shift);
  return convex_hull(pts);
}

PointClass classify_point(const Polytope& p, const Vec3& x, double tol) {
  const double m = p.max_violation(x);
  if (m < -tol) return PointClass::Interior;
  if (m <= tol) return PointClass::Boundary;
  return PointClass::Exterior;
}

Box facet_box(const Polytope& p, int facet) {
  const auto& cyc = p.facets[static_cast<std::size_t>(facet)].vertices;
  Box b{p.vertices[static_cast<std::size_t>(cyc[0])], p.vertices[static_cast<std::size_t>(cyc[0])]};
  for (int v : cyc) {
    const Vec3& x = p.vertices[static_cast<std::size_t>(v)];
    for (std::size_t k = 0; k < 3; ++k) {
      b.lo[k] = std::min(b.lo[k], x[k]);
      b.hi[k] = std::max(b.hi[k], x[k]);
    }
  }
  return b;
}

bool boxes_intersect(const Box& a, const Box& b) {
  for (std::size_t k = 0; k < 3; ++k)
    if (a.lo[k] > b.hi[k] || b.lo[k] > a.hi[k]) return false;
  return true;
}

Box minkowski_box(const Box& a, const Box& b, int sigma) {
  if (sigma > 0) return {a.lo + b.lo, a.hi + b.hi};
  return {a.lo - b.hi, a.hi - b.lo};
}

}  // namespace latpack
