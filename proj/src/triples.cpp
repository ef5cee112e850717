#include <algorithm>
#include <cmath>
#include <deque>

#include "latpack/error.hpp"
#include "latpack/lp.hpp"
#include "latpack/search.hpp"

namespace latpack {
namespace {

// Box slack relative to the circumradius; boxes of touching facets meet exactly.
constexpr double kBoxSlack = 1e-7;

Box inflated(const Box& b, double t) { return {b.lo - Vec3{t, t, t}, b.hi + Vec3{t, t, t}}; }

std::vector<Box> facet_boxes(const Polytope& p0) {
  const double t = kBoxSlack * p0.circumradius();
  std::vector<Box> out;
  for (std::size_t i = 0; i < p0.num_facets(); ++i) out.push_back(inflated(facet_box(p0, static_cast<int>(i)), t));
  return out;
}

// Rows a·x ≤ b (and a·x = b for the facet itself) of facet f acting on the
// combination Σ coef[c]·w^c of 3-blocks of the variable vector.
void add_facet_rows(LPProblem& lp, const Polytope& p0, int f, const std::vector<double>& coef) {
  auto row_for = [&](const Vec3& a) {
    std::vector<double> r(static_cast<std::size_t>(lp.num_vars), 0.0);
    for (std::size_t c = 0; c < coef.size(); ++c)
      for (std::size_t d = 0; d < 3; ++d) r[3 * c + d] = coef[c] * a[d];
    return r;
  };
  const Halfspace& h = p0.halfspaces[static_cast<std::size_t>(f)];
  lp.add_eq(row_for(h.normal), h.offset);
  for (int m : p0.neighbors[static_cast<std::size_t>(f)]) {
    const Halfspace& g = p0.halfspaces[static_cast<std::size_t>(m)];
    lp.add_le(row_for(g.normal), g.offset);
  }
}

// All k with (i, j, k) ∈ 𝒢, checking only box-compatible k.
std::vector<int> thirds_of(const Polytope& p0, const std::vector<Box>& boxes, int i, int j, int sigma) {
  std::vector<int> out;
  const Box s = minkowski_box(boxes[static_cast<std::size_t>(i)], boxes[static_cast<std::size_t>(j)], sigma);
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    if (!boxes_intersect(s, boxes[k])) continue;
    if (triple_feasible(p0, i, j, static_cast<int>(k), sigma)) out.push_back(static_cast<int>(k));
  }
  return out;
}

TripleSet empty_set(const Polytope& p0, int sigma) {
  TripleSet ts;
  ts.sigma = sigma;
  ts.n = static_cast<int>(p0.num_facets());
  ts.partners.assign(static_cast<std::size_t>(ts.n), {});
  ts.thirds.assign(static_cast<std::size_t>(ts.n * ts.n), {});
  return ts;
}

}  // namespace

int test_set_kind(SearchCase c) { return c == SearchCase::IV ? 3 : static_cast<int>(c); }

int test_set_sigma(int kind) { return kind == 1 ? -1 : 1; }

const char* case_name(SearchCase c) {
  switch (c) {
    case SearchCase::I: return "I";
    case SearchCase::II: return "II";
    case SearchCase::III: return "III";
    case SearchCase::IV: return "IV";
  }
  return "?";
}

std::optional<SearchCase> parse_case(const std::string& s) {
  for (SearchCase c : kAllCases)
    if (s == case_name(c)) return c;
  return std::nullopt;
}

std::vector<IVec3> test_set_vectors(int kind) {
  switch (kind) {
    case 1: return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};
    case 2: return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    case 3: return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}, {1, 1, 1}};
    default: throw PreconditionViolated("test-set kind must be 1, 2 or 3");
  }
}

Vec3 lattice_point(const Mat3& w, const IVec3& u) {
  return w.col(0) * u[0] + w.col(1) * u[1] + w.col(2) * u[2];
}

bool TripleSet::contains(int i, int j, int k) const {
  const auto& t = third(i, j);
  return std::binary_search(t.begin(), t.end(), k);
}

bool TripleSet::partner(int i, int j) const {
  const auto& p = partners[static_cast<std::size_t>(i)];
  return std::binary_search(p.begin(), p.end(), j);
}

std::size_t TripleSet::size() const {
  std::size_t s = 0;
  for (const auto& t : thirds) s += t.size();
  return s;
}

bool triple_feasible(const Polytope& p0, int i, int j, int k, int sigma) {
  LPProblem lp(6);
  add_facet_rows(lp, p0, i, {1.0, 0.0});
  add_facet_rows(lp, p0, j, {0.0, 1.0});
  add_facet_rows(lp, p0, k, {1.0, static_cast<double>(sigma)});
  return lp_feasible(lp).has_value();
}

int find_seed_facet(const Polytope& p0, int i, int sigma) {
  const auto& cyc = p0.facets[static_cast<std::size_t>(i)].vertices;
  Vec3 v;
  for (int idx : cyc) v += p0.vertices[static_cast<std::size_t>(idx)];
  v = v / static_cast<double>(cyc.size());
  // Plane through 0 and v: normal perpendicular to v.
  Vec3 n = cross(v, Vec3{1, 0, 0});
  if (n.norm() < 0.5 * v.norm()) n = cross(v, Vec3{0, 1, 0});
  n = normalized(n);
  const double tol = kGeoTolerance * p0.circumradius();
  const std::vector<Box> boxes = facet_boxes(p0);
  for (std::size_t j = 0; j < p0.num_facets(); ++j) {
    double lo = 1e300, hi = -1e300;
    for (int idx : p0.facets[j].vertices) {
      const double s = dot(n, p0.vertices[static_cast<std::size_t>(idx)]);
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (lo > tol || hi < -tol) continue;
    if (!thirds_of(p0, boxes, i, static_cast<int>(j), sigma).empty()) return static_cast<int>(j);
  }
  return -1;
}

TripleSet build_triple_set(const Polytope& p0, int sigma) {
  TripleSet ts = empty_set(p0, sigma);
  const std::vector<Box> boxes = facet_boxes(p0);
  for (int i = 0; i < ts.n; ++i) {
    int seed = find_seed_facet(p0, i, sigma);
    if (seed < 0) {
      for (int j = 0; j < ts.n && seed < 0; ++j)
        if (!thirds_of(p0, boxes, i, j, sigma).empty()) seed = j;
      if (seed < 0) continue;
    }
    std::vector<char> seen(static_cast<std::size_t>(ts.n), 0);
    std::deque<int> queue{seed};
    seen[static_cast<std::size_t>(seed)] = 1;
    while (!queue.empty()) {
      const int j = queue.front();
      queue.pop_front();
      std::vector<int> t = thirds_of(p0, boxes, i, j, sigma);
      if (t.empty()) continue;
      ts.thirds[static_cast<std::size_t>(i * ts.n + j)] = std::move(t);
      ts.partners[static_cast<std::size_t>(i)].push_back(j);
      for (int m : p0.neighbors[static_cast<std::size_t>(j)])
        if (!seen[static_cast<std::size_t>(m)]) {
          seen[static_cast<std::size_t>(m)] = 1;
          queue.push_back(m);
        }
    }
    std::sort(ts.partners[static_cast<std::size_t>(i)].begin(), ts.partners[static_cast<std::size_t>(i)].end());
  }
  return ts;
}

TripleSet triple_set_bruteforce(const Polytope& p0, int sigma) {
  TripleSet ts = empty_set(p0, sigma);
  const std::vector<Box> boxes = facet_boxes(p0);
  for (int i = 0; i < ts.n; ++i)
    for (int j = 0; j < ts.n; ++j) {
      std::vector<int> t = thirds_of(p0, boxes, i, j, sigma);
      if (t.empty()) continue;
      ts.thirds[static_cast<std::size_t>(i * ts.n + j)] = std::move(t);
      ts.partners[static_cast<std::size_t>(i)].push_back(j);
    }
  return ts;
}

TripleSet mirrored_triple_set(const TripleSet& plus, const Polytope& p0) {
  if (!p0.symmetric) throw PreconditionViolated("mirrored_triple_set needs a symmetric body");
  TripleSet ts = empty_set(p0, -plus.sigma);
  // F_i − F_j = F_i + F_{anti(j)}.
  for (int i = 0; i < ts.n; ++i) {
    for (int j : plus.partners[static_cast<std::size_t>(i)]) {
      const int aj = p0.antipode[static_cast<std::size_t>(j)];
      ts.partners[static_cast<std::size_t>(i)].push_back(aj);
      ts.thirds[static_cast<std::size_t>(i * ts.n + aj)] = plus.third(i, j);
    }
    std::sort(ts.partners[static_cast<std::size_t>(i)].begin(), ts.partners[static_cast<std::size_t>(i)].end());
  }
  return ts;
}

}  // namespace latpack
