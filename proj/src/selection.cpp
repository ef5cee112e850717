#include <algorithm>
#include <cmath>

#include "latpack/error.hpp"
#include "latpack/linalg.hpp"
#include "latpack/lp.hpp"
#include "latpack/polysolve.hpp"
#include "latpack/search.hpp"

namespace latpack {
namespace {

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Rows of "W u ∈ F_f" over the 9 column entries of W.
std::vector<double> row_for(const Vec3& a, const IVec3& u) {
  std::vector<double> r(9, 0.0);
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t d = 0; d < 3; ++d) r[3 * c + d] = u[c] * a[d];
  return r;
}

}  // namespace

std::vector<int> first_slot_facets(const Polytope& p0) {
  std::vector<int> out;
  for (std::size_t i = 0; i < p0.num_facets(); ++i) {
    const int a = p0.symmetric ? p0.antipode[i] : -1;
    if (a < 0 || static_cast<int>(i) < a) out.push_back(static_cast<int>(i));
  }
  return out;
}

void enumerate_selections_from(SearchCase c, const TripleSet& ts, const Polytope& p0, int l1,
                               const std::function<void(const Selection&)>& visit) {
  (void)p0;
  const int kind = test_set_kind(c);
  if (ts.sigma != test_set_sigma(kind)) throw PreconditionViolated("triple set built for the other sign");
  const std::size_t k = kind == 3 ? 7 : 6;
  Selection sel(k);
  sel[0] = l1;
  const auto& g1 = ts.partners[static_cast<std::size_t>(l1)];
  for (int l2 : g1) {
    sel[1] = l2;
    const std::vector<int> g12 = intersect(g1, ts.partners[static_cast<std::size_t>(l2)]);
    for (int l3 : g12) {
      sel[2] = l3;
      // u⁴ = u² + σu³; u⁵ = u¹ + u³ (kind ≥ 2) or u³ − u¹ (kind 1); u⁶ = u¹ + σu².
      const auto& k4 = ts.third(l2, l3);
      const auto& k5 = kind == 1 ? ts.third(l3, l1) : ts.third(l1, l3);
      const auto& k6 = ts.third(l1, l2);
      if (k4.empty() || k5.empty() || k6.empty()) continue;
      for (int l4 : k4) {
        sel[3] = l4;
        for (int l5 : k5) {
          sel[4] = l5;
          for (int l6 : k6) {
            sel[5] = l6;
            if (k == 6) {
              visit(sel);
              continue;
            }
            // u⁷ = u¹ + u⁴ = u² + u⁵ = u³ + u⁶.
            const std::vector<int> k7 =
                intersect(intersect(ts.third(l1, l4), ts.third(l2, l5)), ts.third(l3, l6));
            for (int l7 : k7) {
              sel[6] = l7;
              visit(sel);
            }
          }
        }
      }
    }
  }
}

void enumerate_selections(SearchCase c, const TripleSet& ts, const Polytope& p0,
                          const std::function<void(const Selection&)>& visit) {
  for (int l1 : first_slot_facets(p0)) enumerate_selections_from(c, ts, p0, l1, visit);
}

SlotPlanes selection_planes(const Polytope& p0, const Selection& sel) {
  SlotPlanes sp;
  for (int f : sel) {
    sp.normal.push_back(p0.halfspaces[static_cast<std::size_t>(f)].normal);
    sp.offset.push_back(p0.halfspaces[static_cast<std::size_t>(f)].offset);
  }
  return sp;
}

bool selection_feasible(const Polytope& p0, const Selection& sel, const SlotPlanes& planes, SearchCase c) {
  const auto us = test_set_vectors(test_set_kind(c));
  if (sel.size() != us.size() || planes.normal.size() != us.size())
    throw PreconditionViolated("selection size does not match the test set");
  LPProblem lp(9);
  for (std::size_t i = 0; i < us.size(); ++i) {
    const int f = sel[i];
    const Halfspace& h = p0.halfspaces[static_cast<std::size_t>(f)];
    lp.add_eq(row_for(h.normal, us[i]), h.offset);
    if (planes.normal[i].x != h.normal.x || planes.normal[i].y != h.normal.y || planes.normal[i].z != h.normal.z)
      lp.add_eq(row_for(planes.normal[i], us[i]), planes.offset[i]);
    for (int m : p0.neighbors[static_cast<std::size_t>(f)]) {
      const Halfspace& g = p0.halfspaces[static_cast<std::size_t>(m)];
      lp.add_le(row_for(g.normal, us[i]), g.offset);
    }
  }
  return lp_feasible(lp).has_value();
}

bool selection_feasible(const Polytope& p0, const Selection& sel, SearchCase c) {
  return selection_feasible(p0, sel, selection_planes(p0, sel), c);
}

std::optional<SlotPlanes> case4_adjust(const Polytope& p0, const Selection& sel) {
  if (sel.size() != 7) throw PreconditionViolated("case IV needs seven facets");
  const Vec3& v1 = p0.halfspaces[static_cast<std::size_t>(sel[0])].normal;
  const Vec3& v2 = p0.halfspaces[static_cast<std::size_t>(sel[1])].normal;
  const Vec3& v3 = p0.halfspaces[static_cast<std::size_t>(sel[2])].normal;
  const Vec3& v6 = p0.halfspaces[static_cast<std::size_t>(sel[5])].normal;
  const Mat3 v = Mat3::from_columns(v1, v2, v3);
  if (std::fabs(v.det()) <= 1e-9) return std::nullopt;
  const Vec3 lambda = v.inverse() * v6;
  if (lambda.x <= 1e-9 || lambda.y <= 1e-9) return std::nullopt;
  const Vec3 a = normalized(v1 * lambda.x + v2 * lambda.y);
  const double h = p0.support(a);
  // The new plane must touch F_{l₆}, where u⁶ stays.
  double reach = -1e300;
  for (int idx : p0.facets[static_cast<std::size_t>(sel[5])].vertices)
    reach = std::max(reach, dot(a, p0.vertices[static_cast<std::size_t>(idx)]));
  if (reach < h - kGeoTolerance * p0.circumradius()) return std::nullopt;
  SlotPlanes sp = selection_planes(p0, sel);
  sp.normal[5] = a;
  sp.offset[5] = h;
  return sp;
}

Mat3 MatrixFamily::at(const std::vector<double>& lambda) const {
  Mat3 w = c;
  for (std::size_t j = 0; j < m.size() && j < lambda.size(); ++j) w = w + m[j] * lambda[j];
  return w;
}

std::optional<MatrixFamily> parameterize(const SlotPlanes& planes, int kind) {
  const auto us = test_set_vectors(kind);
  const int k = static_cast<int>(us.size());
  LinSystem sys{DenseMatrix(k, 9), std::vector<double>(static_cast<std::size_t>(k))};
  for (int i = 0; i < k; ++i) {
    const std::vector<double> r = row_for(planes.normal[static_cast<std::size_t>(i)], us[static_cast<std::size_t>(i)]);
    for (int j = 0; j < 9; ++j) sys.a(i, j) = r[static_cast<std::size_t>(j)];
    sys.b[static_cast<std::size_t>(i)] = planes.offset[static_cast<std::size_t>(i)];
  }
  const auto sol = solve_affine(sys);
  if (!sol || sol->rank < k) return std::nullopt;
  auto to_mat = [](const std::vector<double>& x) {
    return Mat3::from_columns({x[0], x[1], x[2]}, {x[3], x[4], x[5]}, {x[6], x[7], x[8]});
  };
  MatrixFamily fam;
  fam.c = to_mat(sol->base);
  for (const auto& d : sol->directions) fam.m.push_back(to_mat(d));
  return fam;
}

Poly det_polynomial(const MatrixFamily& fam) {
  if (fam.m.size() > 3) throw PreconditionViolated("det_polynomial supports at most three parameters");
  Poly e[3][3];
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      Poly p = Poly::constant(fam.c(r, c));
      for (std::size_t j = 0; j < fam.m.size(); ++j)
        if (fam.m[j](r, c) != 0.0) p += Poly::variable(static_cast<int>(j)) * fam.m[j](r, c);
      e[r][c] = p;
    }
  return e[0][0] * (e[1][1] * e[2][2] - e[1][2] * e[2][1]) - e[0][1] * (e[1][0] * e[2][2] - e[1][2] * e[2][0]) +
         e[0][2] * (e[1][0] * e[2][1] - e[1][1] * e[2][0]);
}

std::vector<MatrixFamily> critical_subspaces(const MatrixFamily& fam) {
  const int r = fam.dim();
  if (r == 0) return {fam};
  const Poly p = det_polynomial(fam);
  const CriticalSet cs = gradient_critical_subspaces(p, r);
  if (cs.whole_space) return {fam};
  std::vector<MatrixFamily> out;
  for (const AffineSubspace& s : cs.subspaces) {
    MatrixFamily sub;
    std::vector<double> base(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) base[static_cast<std::size_t>(j)] = s.base[static_cast<std::size_t>(j)];
    sub.c = fam.at(base);
    for (const Vec3& d : s.dirs) {
      Mat3 m;
      for (int j = 0; j < r; ++j) m = m + fam.m[static_cast<std::size_t>(j)] * d[static_cast<std::size_t>(j)];
      sub.m.push_back(m);
    }
    out.push_back(sub);
  }
  return out;
}

}  // namespace latpack
