#include <algorithm>
#include <cmath>

#include "latpack/search.hpp"

namespace latpack {
namespace {

// Index of the vertex at x, or -1.
int find_vertex(const Polytope& p, const Vec3& x, double tol) {
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    if ((p.vertices[i] - x).norm() <= tol) return static_cast<int>(i);
  return -1;
}

std::optional<std::vector<int>> facet_permutation(const Polytope& p, const Mat3& a, double tol) {
  for (const Vec3& v : p.vertices)
    if (find_vertex(p, a * v, tol) < 0) return std::nullopt;
  const Mat3 nt = a.inverse().transposed();
  std::vector<int> perm(p.num_facets(), -1);
  for (std::size_t f = 0; f < p.num_facets(); ++f) {
    const Vec3 n = normalized(nt * p.halfspaces[f].normal);
    for (std::size_t g = 0; g < p.num_facets(); ++g)
      if (dot(n, p.halfspaces[g].normal) > 1.0 - 1e-9) {
        perm[f] = static_cast<int>(g);
        break;
      }
    if (perm[f] < 0) return std::nullopt;
  }
  return perm;
}

}  // namespace

std::vector<std::vector<int>> facet_symmetries(const Polytope& p0) {
  const double tol = 1e-8 * p0.circumradius();
  const auto& f0 = p0.facets[0].vertices;
  const std::size_t m = f0.size();
  const Mat3 src = Mat3::from_columns(p0.vertices[static_cast<std::size_t>(f0[0])], p0.vertices[static_cast<std::size_t>(f0[1])],
                                      p0.vertices[static_cast<std::size_t>(f0[2])]);
  const Mat3 src_inv = src.inverse();
  std::vector<std::vector<int>> out;
  for (const Facet& g : p0.facets) {
    if (g.vertices.size() != m) continue;
    for (std::size_t r = 0; r < m; ++r)
      for (int dir : {1, -1}) {
        auto at = [&](std::size_t s) {
          return p0.vertices[static_cast<std::size_t>(g.vertices[(dir > 0 ? r + s : r + m * 3 - s) % m])];
        };
        const Mat3 dst = Mat3::from_columns(at(0), at(1), at(2));
        const auto perm = facet_permutation(p0, dst * src_inv, tol);
        if (perm && std::find(out.begin(), out.end(), *perm) == out.end()) out.push_back(*perm);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool canonical_selection(const Selection& sel, const std::vector<std::vector<int>>& group) {
  for (const auto& g : group) {
    for (std::size_t i = 0; i < sel.size(); ++i) {
      const int a = g[static_cast<std::size_t>(sel[i])];
      if (a < sel[i]) return false;
      if (a > sel[i]) break;
    }
  }
  return true;
}

}  // namespace latpack
