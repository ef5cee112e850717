#include <algorithm>
#include <cmath>

#include "latpack/error.hpp"
#include "latpack/polysolve.hpp"
#include "poly_internal.hpp"

namespace latpack {
namespace {

using detail::abs_eval;
using detail::polish_root;

// A polynomial counts as identically zero on a candidate when all coefficients
// are below this fraction of its magnitude scale.
constexpr double kVanish = 1e-8;
// Coefficients below this fraction of the scale are rounding noise.
constexpr double kNoise = 1e-12;
// Accepted gradient size on a reported subspace, relative to the scale.
constexpr double kAccept = 1e-8;
constexpr int kMaxDepth = 10;

struct SysPoly {
  Poly p;
  double ref = 1.0;  // magnitude of the expression the polynomial came from
};

// Local coordinates t ∈ R^d map to base + Σ t_i·dirs[i] in the ambient space.
struct Frame {
  Vec3 base;
  std::vector<Vec3> dirs;

  int dim() const { return static_cast<int>(dirs.size()); }
  Vec3 to_ambient(const Vec3& t) const {
    Vec3 p = base;
    for (std::size_t i = 0; i < dirs.size(); ++i) p += dirs[i] * t[i];
    return p;
  }
  Vec3 dir_to_ambient(const Vec3& t) const {
    Vec3 p;
    for (std::size_t i = 0; i < dirs.size(); ++i) p += dirs[i] * t[i];
    return p;
  }
  // Sub-frame t = b + Σ s_j e_j given in local coordinates.
  Frame sub(const Vec3& b, const std::vector<Vec3>& e) const {
    Frame f;
    f.base = to_ambient(b);
    for (const Vec3& v : e) f.dirs.push_back(dir_to_ambient(v));
    return f;
  }
  AffineSubspace subspace(int ambient) const {
    AffineSubspace s;
    s.ambient = ambient;
    s.base = base;
    s.dirs = dirs;
    orthonormalize(s.dirs, 1e-10);
    return s;
  }
};

// Polynomials in local variables s_j after t = b + Σ s_j e_j.
SysPoly restrict_poly(const SysPoly& f, const Vec3& b, const std::vector<Vec3>& e) {
  std::array<Poly, 3> vals, avals;
  for (std::size_t i = 0; i < 3; ++i) {
    vals[i] = Poly::constant(b[i]);
    avals[i] = Poly::constant(std::fabs(b[i]));
    for (std::size_t j = 0; j < e.size(); ++j) {
      vals[i] += Poly::variable(static_cast<int>(j)) * e[j][i];
      avals[i] += Poly::variable(static_cast<int>(j)) * std::fabs(e[j][i]);
    }
  }
  SysPoly r;
  r.p = f.p.compose(vals);
  const double mag = f.p.abs_coeffs().compose(avals).max_abs();
  r.ref = std::max(mag / std::max(f.p.max_abs(), 1e-300) * f.ref, 1e-300);
  return r;
}

// Local subspace (points/lines of the (y,z)-plane in vars 1,2) from a 2-D result.
struct LocalSub {
  Vec3 base;
  std::vector<Vec3> dirs;
};

class Engine {
 public:
  explicit Engine(int ambient) : ambient_(ambient) {}
  std::vector<AffineSubspace> solve(std::vector<SysPoly> sys, const Frame& fr, int depth);

 private:
  int ambient_;

  void emit(std::vector<AffineSubspace>& out, const Frame& fr) const { out.push_back(fr.subspace(ambient_)); }
  std::vector<AffineSubspace> solve_on(const std::vector<SysPoly>& sys, const Frame& fr, const Vec3& b,
                                       const std::vector<Vec3>& e, int depth) {
    std::vector<SysPoly> r;
    for (const SysPoly& f : sys) r.push_back(restrict_poly(f, b, e));
    return solve(std::move(r), fr.sub(b, e), depth + 1);
  }
  std::vector<AffineSubspace> univariate(const std::vector<SysPoly>& sys, const Frame& fr);
  std::vector<AffineSubspace> plane_case(const std::vector<SysPoly>& sys, const Frame& fr, int depth);
  std::vector<AffineSubspace> space_case(std::vector<SysPoly> sys, const Frame& fr, int depth);
};

// Cleans the system: drops vanishing members, detects nonzero constants.
bool clean(std::vector<SysPoly>& sys) {
  std::vector<SysPoly> out;
  for (SysPoly f : sys) {
    f.p = f.p.trimmed_abs(kNoise * f.ref);
    if (f.p.max_abs() <= kVanish * f.ref) continue;
    if (f.p.is_constant()) return false;
    const double s = f.p.max_abs();
    f.p = f.p * (1.0 / s);
    f.ref /= s;
    out.push_back(f);
  }
  sys = std::move(out);
  return true;
}

// Gaussian elimination on coefficient vectors with the monomial `first` ordered first.
std::vector<SysPoly> reduce_independent(const std::vector<SysPoly>& sys, const Poly::Exp& first) {
  std::vector<Poly::Exp> monos{first};
  for (const SysPoly& f : sys)
    for (int i = 0; i <= std::max(f.p.degree(0), 0); ++i)
      for (int j = 0; j <= std::max(f.p.degree(1), 0); ++j)
        for (int k = 0; k <= std::max(f.p.degree(2), 0); ++k) {
          const Poly::Exp e{i, j, k};
          if (f.p.coeff(e) != 0.0 && std::find(monos.begin(), monos.end(), e) == monos.end()) monos.push_back(e);
        }
  std::vector<std::vector<double>> rows;
  std::vector<double> refs;
  for (const SysPoly& f : sys) {
    std::vector<double> r;
    for (const auto& e : monos) r.push_back(f.p.coeff(e));
    rows.push_back(r);
    refs.push_back(f.ref);
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < monos.size() && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (std::fabs(rows[r][c]) > std::fabs(rows[piv][c])) piv = r;
    if (std::fabs(rows[piv][c]) <= 1e-10) continue;
    std::swap(rows[piv], rows[rank]);
    std::swap(refs[piv], refs[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0.0) continue;
      const double m = rows[r][c] / rows[rank][c];
      for (std::size_t k = 0; k < monos.size(); ++k) rows[r][k] -= m * rows[rank][k];
      rows[r][c] = 0.0;
      refs[r] = std::max(refs[r], std::fabs(m) * refs[rank]);
    }
    ++rank;
  }
  std::vector<SysPoly> out;
  for (std::size_t r = 0; r < rank; ++r) {
    SysPoly f;
    for (std::size_t k = 0; k < monos.size(); ++k)
      if (std::fabs(rows[r][k]) > 1e-14) f.p.add_term(monos[k], rows[r][k]);
    f.ref = refs[r];
    out.push_back(f);
  }
  return out;
}

std::vector<AffineSubspace> Engine::solve(std::vector<SysPoly> sys, const Frame& fr, int depth) {
  std::vector<AffineSubspace> out;
  if (depth > kMaxDepth) return out;
  if (!clean(sys)) return out;
  if (sys.empty()) {
    emit(out, fr);
    return out;
  }
  const int d = fr.dim();

  // Variables that no polynomial uses stay free.
  std::vector<int> used, unused;
  for (int v = 0; v < d; ++v) {
    bool u = false;
    for (const SysPoly& f : sys) u = u || f.p.uses(v);
    (u ? used : unused).push_back(v);
  }
  if (!unused.empty()) {
    std::array<int, 3> perm{0, 1, 2};
    Frame inner;
    inner.base = fr.base;
    for (std::size_t k = 0; k < used.size(); ++k) {
      perm[static_cast<std::size_t>(used[k])] = static_cast<int>(k);
      inner.dirs.push_back(fr.dirs[static_cast<std::size_t>(used[k])]);
    }
    std::size_t next = used.size();
    for (int v : unused) perm[static_cast<std::size_t>(v)] = static_cast<int>(next++);
    std::vector<SysPoly> renamed;
    for (const SysPoly& f : sys) renamed.push_back({f.p.renamed(perm), f.ref});
    for (AffineSubspace s : solve(renamed, inner, depth + 1)) {
      for (int v : unused) s.dirs.push_back(fr.dirs[static_cast<std::size_t>(v)]);
      orthonormalize(s.dirs, 1e-10);
      out.push_back(s);
    }
    return out;
  }
  if (d == 1) return univariate(sys, fr);

  // Common linear factors give hyperplanes; divide them out.
  for (int round = 0; round < 4; ++round) {
    std::vector<Poly> ps;
    for (const SysPoly& f : sys) ps.push_back(f.p);
    const std::vector<LinearPoly> cl = common_linear_factors(ps);
    if (cl.empty()) break;
    for (const LinearPoly& l : cl) {
      const AffineSubspace h = detail::hyperplane(l, d);
      out.push_back(fr.sub(h.base, h.dirs).subspace(ambient_));
      for (SysPoly& f : sys)
        if (auto q = divide_by_linear(f.p, l)) {
          const double s = q->max_abs() / std::max(f.p.max_abs(), 1e-300);
          f.p = *q;
          f.ref *= s;
        }
    }
    if (!clean(sys)) return out;
    if (sys.empty()) return out;
  }

  // A linear member restricts everything to its hyperplane.
  for (std::size_t i = 0; i < sys.size(); ++i) {
    if (sys[i].p.total_degree() != 1) continue;
    LinearPoly l;
    l.c0 = sys[i].p.coeff(0, 0, 0);
    for (int v = 0; v < d; ++v) {
      Poly::Exp e{0, 0, 0};
      e[static_cast<std::size_t>(v)] = 1;
      l.a[static_cast<std::size_t>(v)] = sys[i].p.coeff(e);
    }
    const AffineSubspace h = detail::hyperplane(l, d);
    std::vector<SysPoly> rest;
    for (std::size_t j = 0; j < sys.size(); ++j)
      if (j != i) rest.push_back(sys[j]);
    for (const AffineSubspace& s : solve_on(rest, fr, h.base, h.dirs, depth)) out.push_back(s);
    return out;
  }

  if (d == 2) {
    for (const AffineSubspace& s : plane_case(sys, fr, depth)) out.push_back(s);
  } else {
    for (const AffineSubspace& s : space_case(sys, fr, depth)) out.push_back(s);
  }
  return out;
}

std::vector<AffineSubspace> Engine::univariate(const std::vector<SysPoly>& sys, const Frame& fr) {
  std::vector<AffineSubspace> out;
  const SysPoly* lowest = &sys.front();
  for (const SysPoly& f : sys)
    if (f.p.degree(0) < lowest->p.degree(0)) lowest = &f;
  std::vector<Poly> eqs;
  for (const SysPoly& f : sys) eqs.push_back(f.p);
  for (double r : real_roots(lowest->p, 0)) {
    const Vec3 t = polish_root(eqs, Vec3{r, 0, 0}, 1);
    bool ok = true;
    for (const SysPoly& f : sys) ok = ok && std::fabs(f.p.eval(t)) <= kVanish * std::max(abs_eval(f.p, t), f.ref);
    if (ok) emit(out, fr.sub(t, {}));
  }
  return out;
}

std::vector<AffineSubspace> Engine::plane_case(const std::vector<SysPoly>& input, const Frame& fr, int depth) {
  std::vector<AffineSubspace> out;
  std::vector<SysPoly> sys = reduce_independent(input, Poly::Exp{2, 0, 0});
  if (!clean(sys)) return out;
  if (sys.empty()) {
    emit(out, fr);
    return out;
  }
  std::sort(sys.begin(), sys.end(),
            [](const SysPoly& a, const SysPoly& b) { return a.p.total_degree() > b.p.total_degree(); });
  std::vector<AffineSubspace> cands;
  std::vector<SysPoly> rest;
  if (sys.size() == 1) {
    if (sys[0].p.total_degree() > 4) throw DegreeTooHigh("bivariate member of degree > 4");
    cands = bivariate_isolated(sys[0].p);
  } else {
    cands = bivariate_pair_isolated(sys[0].p, sys[1].p);
    rest.assign(sys.begin() + 2, sys.end());
  }
  for (const AffineSubspace& c : cands) {
    if (rest.empty()) {
      emit(out, fr.sub(c.base, c.dirs));
    } else {
      for (const AffineSubspace& s : solve_on(rest, fr, c.base, c.dirs, depth)) out.push_back(s);
    }
  }
  return out;
}

std::vector<AffineSubspace> Engine::space_case(std::vector<SysPoly> input, const Frame& fr, int depth) {
  std::vector<AffineSubspace> out;

  // Pick x so that some member is linear in x with a nonzero coefficient after
  // eliminating x² from all but one member.
  int x = -1;
  std::vector<SysPoly> sys;
  for (int v = 0; v < 3 && x < 0; ++v) {
    Poly::Exp sq{0, 0, 0};
    sq[static_cast<std::size_t>(v)] = 2;
    std::vector<SysPoly> red = reduce_independent(input, sq);
    if (!clean(red)) return out;
    if (red.empty()) {
      emit(out, fr);
      return out;
    }
    if (red.size() == 1) {
      sys = red;
      Poly::Exp e{0, 0, 0};
      e[static_cast<std::size_t>(v)] = 2;
      if (std::fabs(red[0].p.coeff(e)) > 1e-10 || v == 2) x = v;
      continue;
    }
    for (const SysPoly& f : red)
      if (f.p.degree(v) == 1) {
        sys = red;
        x = v;
        break;
      }
  }
  if (x < 0) return out;

  // Rename so that x is variable 0; frame directions follow.
  std::array<int, 3> perm{};
  std::array<int, 3> inv{};
  {
    int next = 1;
    for (int v = 0; v < 3; ++v) {
      perm[static_cast<std::size_t>(v)] = v == x ? 0 : next++;
      inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(v)])] = v;
    }
  }
  Frame pf;
  pf.base = fr.base;
  for (int k = 0; k < 3; ++k) pf.dirs.push_back(fr.dirs[static_cast<std::size_t>(inv[static_cast<std::size_t>(k)])]);
  for (SysPoly& f : sys) f.p = f.p.renamed(perm);

  const std::array<int, 3> to_plane{2, 0, 1};  // (y, z) = vars 1, 2 → 0, 1

  if (sys.size() == 1) {
    // Single quadric: complete the square in x when x² occurs.
    const Poly& f = sys[0].p;
    const double kappa = f.coeff(2, 0, 0);
    if (f.total_degree() > 2) throw DegreeTooHigh("trivariate member of degree > 2");
    if (std::fabs(kappa) <= 1e-10) return out;
    const std::vector<Poly> c = f.coefficients_in(0);
    const Poly l = c.size() > 1 ? c[1] * (1.0 / kappa) : Poly();
    const Poly q = c[0] * (1.0 / kappa);
    const Poly qt = (l * l * 0.25 - q).trimmed(1e-12).renamed(to_plane);
    const Poly lh = l.renamed(to_plane);
    if (qt.is_zero()) return out;
    for (const AffineSubspace& cc : conic_components(qt)) {
      Vec3 b{-0.5 * lh.eval(cc.base), cc.base.x, cc.base.y};
      std::vector<Vec3> e;
      for (const Vec3& u : cc.dirs) {
        const double slope = -0.5 * (lh.eval(cc.base + u) - lh.eval(cc.base));
        e.push_back(normalized(Vec3{slope, u.x, u.y}));
      }
      emit(out, pf.sub(b, e));
    }
    return out;
  }

  // p2: linear in x; p1: the other member of lowest x-degree; p3: the rest.
  std::size_t i2 = sys.size();
  for (std::size_t i = 0; i < sys.size(); ++i)
    if (sys[i].p.degree(0) == 1 && (i2 == sys.size() || sys[i].p.coeff(2, 0, 0) == 0.0)) i2 = i;
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < sys.size(); ++i)
    if (i != i2) others.push_back(i);
  std::stable_sort(others.begin(), others.end(),
                   [&](std::size_t a, std::size_t b) { return sys[a].p.degree(0) < sys[b].p.degree(0); });
  const SysPoly& p2 = sys[i2];
  const SysPoly& p1 = sys[others[0]];

  // Splits V(a, b, rest) along the common linear factors of members a and b.
  auto split_on_common = [&](std::size_t a, std::size_t b, std::vector<AffineSubspace>& acc) {
    const std::vector<LinearPoly> cl = common_linear_factors({sys[a].p, sys[b].p});
    for (const LinearPoly& l : cl) {
      std::vector<SysPoly> first{{l.to_poly(), 1.0}};
      std::vector<SysPoly> second;
      for (std::size_t i = 0; i < sys.size(); ++i) {
        if (i == a || i == b) {
          SysPoly g = sys[i];
          if (auto q = divide_by_linear(g.p, l)) g.p = *q;
          second.push_back(g);
        } else {
          first.push_back(sys[i]);
          second.push_back(sys[i]);
        }
      }
      for (const AffineSubspace& s : solve(first, pf, depth + 1)) acc.push_back(s);
      for (const AffineSubspace& s : solve(second, pf, depth + 1)) acc.push_back(s);
    }
    return !cl.empty();
  };

  auto isolated = [](const Poly& r) {
    return r.is_constant() ? std::vector<AffineSubspace>{} : bivariate_isolated(r);
  };

  const Poly res12 = resultant(p1.p, p2.p, 0).trimmed(1e-12);
  const bool z12 = res12.is_zero() || (p1.p.uses(0) && resultant_vanishes(res12, p1.p, p2.p, 0));
  std::vector<AffineSubspace> cands;
  if (others.size() == 1) {
    if (z12 && split_on_common(others[0], i2, out)) return out;
    if (res12.is_constant()) return out;
    cands = isolated(res12.renamed(to_plane));
  } else {
    const SysPoly& p3 = sys[others[1]];
    if (z12 && split_on_common(others[0], i2, out)) return out;
    const Poly res23 = resultant(p2.p, p3.p, 0).trimmed(1e-12);
    const bool z23 = res23.is_zero() || (p3.p.uses(0) && resultant_vanishes(res23, p2.p, p3.p, 0));
    if (z23 && split_on_common(i2, others[1], out)) return out;
    const Poly r12 = res12.renamed(to_plane);
    const Poly r23 = res23.renamed(to_plane);
    if (z12 && z23) return out;
    if (z12) {
      cands = isolated(r23);
    } else if (z23) {
      cands = isolated(r12);
    } else if (r12.is_constant() || r23.is_constant()) {
      return out;
    } else {
      cands = bivariate_pair_isolated(r23, r12);
    }
  }
  for (const AffineSubspace& c : cands) {
    Vec3 b{0.0, c.base.x, c.base.y};
    std::vector<Vec3> e{{1.0, 0.0, 0.0}};
    for (const Vec3& u : c.dirs) e.push_back({0.0, u.x, u.y});
    for (const AffineSubspace& s : solve_on(sys, pf, b, e, depth)) out.push_back(s);
  }
  return out;
}

}  // namespace

CriticalSet gradient_critical_subspaces(const Poly& input, int nvars) {
  CriticalSet cs;
  const Poly p = input.trimmed();
  if (p.total_degree() > 3) throw DegreeTooHigh("gradient_critical_subspaces expects total degree ≤ 3");
  for (int v = nvars; v < 3; ++v)
    if (p.uses(v)) throw PreconditionViolated("polynomial uses more variables than declared");
  const double scale = std::max(p.max_abs(), 1e-300);

  std::vector<SysPoly> grad;
  for (int v = 0; v < nvars; ++v) {
    Poly g = p.derivative(v).trimmed_abs(kNoise * scale);
    if (!g.is_zero()) grad.push_back({g, scale});
  }
  if (grad.empty()) {
    cs.whole_space = true;
    return cs;
  }

  Frame fr;
  for (int v = 0; v < nvars; ++v) {
    Vec3 e;
    e[static_cast<std::size_t>(v)] = 1.0;
    fr.dirs.push_back(e);
  }
  Engine engine(nvars);
  std::vector<AffineSubspace> raw = engine.solve(grad, fr, 0);

  // Keep only subspaces on which the gradient really vanishes; refine the rest.
  std::vector<Poly> eqs;
  for (const SysPoly& g : grad) eqs.push_back(g.p);
  std::vector<AffineSubspace> todo = raw;
  for (int pass = 0; pass < 4 && !todo.empty(); ++pass) {
    std::vector<AffineSubspace> next;
    for (AffineSubspace s : todo) {
      if (s.dim() == 0) s.base = polish_root(eqs, s.base, nvars);
      bool ok = true;
      std::vector<SysPoly> restricted;
      for (const SysPoly& g : grad) {
        SysPoly r = restrict_poly(g, s.base, s.dirs);
        ok = ok && r.p.max_abs() <= kAccept * r.ref;
        restricted.push_back(r);
      }
      if (ok) {
        cs.subspaces.push_back(s);
      } else if (s.dim() > 0) {
        Frame f;
        f.base = s.base;
        f.dirs = s.dirs;
        std::vector<SysPoly> local;
        for (const SysPoly& r : restricted) local.push_back({r.p, r.ref});
        for (const AffineSubspace& t : engine.solve(local, f, 0)) next.push_back(t);
      }
    }
    todo = std::move(next);
  }
  detail::prune_contained(cs.subspaces, 1e-7);
  return cs;
}

}  // namespace latpack
