// Acceptance run: one PASS/FAIL line per criterion, details indented below it.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "latpack/catalog.hpp"
#include "latpack/polysolve.hpp"
#include "latpack/search.hpp"

using namespace latpack;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Run {
  PackingResult result;
  double seconds = 0.0;
};

std::map<std::string, Run> g_runs;

const Run& solve(const std::string& name, bool parallel) {
  auto it = g_runs.find(name);
  if (it != g_runs.end()) return it->second;
  SearchOptions o;
  o.parallel = parallel;
  const auto t0 = Clock::now();
  Run r{densest_packing(make_solid(name), o), 0.0};
  r.seconds = seconds_since(t0);
  return g_runs.emplace(name, r).first->second;
}

int g_failures = 0;

void verdict(int n, bool ok, const std::string& summary) {
  std::printf("criterion %d: %s  %s\n", n, ok ? "PASS" : "FAIL", summary.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

struct Expected {
  const char* name;
  double value;
};

bool density_tier(const std::vector<Expected>& tier, bool parallel, double per_run_budget, double total_budget,
                  std::string& summary) {
  bool ok = true;
  double total = 0.0, worst = 0.0;
  for (const Expected& e : tier) {
    const Run& r = solve(e.name, parallel);
    const double diff = std::fabs(r.result.density - e.value);
    const bool good = diff <= 1e-6 && r.seconds <= per_run_budget;
    std::printf("  %-24s %.10f  expected %.10f  |diff| %.2e  %.1f s  %s\n", e.name, r.result.density, e.value, diff,
                r.seconds, good ? "ok" : "MISMATCH");
    ok = ok && good;
    total += r.seconds;
    worst = std::max(worst, diff);
  }
  ok = ok && total <= total_budget;
  char buf[128];
  std::snprintf(buf, sizeof buf, "max |diff| %.2e, total %.1f s", worst, total);
  summary = buf;
  return ok;
}

void criterion1() {
  const std::vector<Expected> tier{{"tetrahedron", 18.0 / 49},   {"cube", 1.0},
                                   {"octahedron", 18.0 / 19},    {"cubeoctahedron", 45.0 / 49},
                                   {"truncated_octahedron", 1.0}};
  std::string summary;
  const bool ok = density_tier(tier, false, 300.0, 1e300, summary);
  verdict(1, ok, "fast tier, single-threaded: " + summary);
}

void criterion2() {
  const std::vector<Expected> tier{{"dodecahedron", (2 + kTau) / 4},
                                   {"icosahedron", 0.836357445},
                                   {"icosidodecahedron", 0.864720371},
                                   {"truncated_cube", 0.973747688},
                                   {"truncated_tetrahedron", 207.0 / 304},
                                   {"rhombic_cubeoctahedron", 0.875805666},
                                   {"snub_cube", 0.78769996}};
  std::string summary;
  const bool ok = density_tier(tier, true, 1e300, 7200.0, summary);
  // The printed snub cube decimal disagrees with its own closed form; show both.
  const Run& snub = solve("snub_cube", true);
  const ReferenceDensity ref = reference_density("snub_cube");
  std::printf("  snub_cube closed form %s = %.10f  |diff| %.2e\n", ref.closed_form.c_str(), ref.value,
              std::fabs(snub.result.density - ref.value));
  verdict(2, ok, "extended tier, multi-threaded: " + summary);
}

void criterion3() {
  bool ok = true;
  for (const char* name : {"cube", "octahedron", "tetrahedron"}) {
    const Polytope p = make_solid(name);
    const Polytope p0 = difference_body(p);
    const Run& r = solve(name, false);
    const double want = std::fabs(reference_basis(name).det());
    const double got = std::fabs(r.result.basis.det());
    const bool adm = verify_admissible_bruteforce(p0, r.result.basis);
    const bool ref_adm = verify_admissible_bruteforce(p0, reference_basis(name));
    const double rel = std::fabs(got - want) / want;
    std::printf("  %-12s det %.12f  reference %.12f  rel %.2e  admissible %d  reference admissible %d\n", name, got,
                want, rel, adm, ref_adm);
    ok = ok && adm && ref_adm && rel <= 1e-9;
  }
  verdict(3, ok, "bases of cube, octahedron, tetrahedron");
}

// Coefficients (c0, a0, a1) scaled to unit norm; sign left free.
std::array<double, 3> unit_line(double c0, double a0, double a1) {
  const double n = std::sqrt(c0 * c0 + a0 * a0 + a1 * a1);
  return {c0 / n, a0 / n, a1 / n};
}

double line_distance(const std::array<double, 3>& u, const std::array<double, 3>& v) {
  double dm = 0.0, dp = 0.0;
  for (int i = 0; i < 3; ++i) {
    dm = std::max(dm, std::fabs(u[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(i)]));
    dp = std::max(dp, std::fabs(u[static_cast<std::size_t>(i)] + v[static_cast<std::size_t>(i)]));
  }
  return std::min(dm, dp);
}

void criterion4() {
  const auto t0 = Clock::now();
  const Poly x = Poly::variable(0), y = Poly::variable(1), z = Poly::variable(2);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> nlin(1, 4);
  int bi_ok = 0, planted_total = 0, planted_found = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int lines = nlin(rng);
    const bool quad = lines <= 2 && trial % 2 == 0;
    Poly p = Poly::constant(1.0);
    std::vector<std::array<double, 3>> planted;
    for (int i = 0; i < lines; ++i) {
      const double c0 = u(rng), a0 = u(rng), a1 = u(rng);
      planted.push_back(unit_line(c0, a0, a1));
      p = p * (Poly::constant(c0) + x * a0 + y * a1);
    }
    if (quad) {
      // (x-a)^2 + (y-b)^2 + c with c > 0 has no real linear factor.
      const double a = u(rng), b = u(rng), c = 0.1 + std::fabs(u(rng));
      p = p * ((x - Poly::constant(a)) * (x - Poly::constant(a)) + (y - Poly::constant(b)) * (y - Poly::constant(b)) +
               Poly::constant(c));
    }
    const LinearFactorization f = linear_factors(p);
    bool all = true;
    for (const auto& l : planted) {
      ++planted_total;
      double best = 1e300;
      for (const LinearPoly& g : f.factors) best = std::min(best, line_distance(l, unit_line(g.c0, g.a[0], g.a[1])));
      if (best <= 1e-6)
        ++planted_found;
      else
        all = false;
    }
    if (all) ++bi_ok;
  }
  std::printf("  bivariate: %d/500 polynomials, %d/%d planted linear factors recovered\n", bi_ok, planted_found,
              planted_total);

  int tri_ok = 0;
  for (int trial = 0; trial < 200; ++trial) {
    // (x-c)^T (B+I)^T (B+I) (x-c) plus a small cubic keeps c a nondegenerate minimum.
    const Vec3 c{u(rng), u(rng), u(rng)};
    const std::array<Poly, 3> d{x - Poly::constant(c.x), y - Poly::constant(c.y), z - Poly::constant(c.z)};
    Poly p;
    for (int i = 0; i < 3; ++i) {
      Poly row = d[static_cast<std::size_t>(i)];
      for (int j = 0; j < 3; ++j) row += d[static_cast<std::size_t>(j)] * u(rng);
      p += row * row;
    }
    p += d[0] * d[1] * d[2] * (0.05 * u(rng)) + d[1] * d[1] * d[2] * (0.05 * u(rng));
    const CriticalSet cs = gradient_critical_subspaces(p);
    if (std::any_of(cs.subspaces.begin(), cs.subspaces.end(), [&](const AffineSubspace& a) { return a.distance(c) <= 1e-6; }))
      ++tri_ok;
  }
  const double secs = seconds_since(t0);
  std::printf("  trivariate: %d/200 planted minima covered; %.1f s\n", tri_ok, secs);
  verdict(4, bi_ok == 500 && tri_ok == 200 && secs <= 120.0, "polynomial solver oracles");
}

Poly random_poly2(std::mt19937& rng, int deg) {
  std::uniform_real_distribution<double> u(-2, 2);
  Poly p;
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; j <= deg - i; ++j) p.add_term({i, j, 0}, u(rng));
  return p;
}

void criterion5() {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_int_distribution<int> dfg(1, 2), dh(1, 2);
  int shared_ok = 0, shared_total = 0, planted_ok = 0, planted_total = 0;
  double worst_shared = 0.0, worst_planted = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    Poly f = random_poly2(rng, dfg(rng)), g = random_poly2(rng, dfg(rng)), h = random_poly2(rng, dh(rng));
    if (h.degree(0) < 1) h += Poly::variable(0);
    const Poly fh = f * h, gh = g * h;
    if (fh.degree(0) >= 1 && gh.degree(0) >= 1) {
      ++shared_total;
      const Poly r = resultant(fh, gh, 0);
      const double scale = std::pow(fh.max_abs(), gh.degree(0)) * std::pow(gh.max_abs(), fh.degree(0));
      worst_shared = std::max(worst_shared, r.max_abs() / scale);
      if (resultant_vanishes(r, fh, gh, 0, 1e-6)) ++shared_ok;
    }
    // Planted common root (a, b): res(f, g, x) vanishes at y = b.
    const double a = u(rng), b = u(rng);
    f -= Poly::constant(f.eval(Vec3{a, b, 0}));
    g -= Poly::constant(g.eval(Vec3{a, b, 0}));
    if (f.degree(0) < 1 || g.degree(0) < 1) continue;
    ++planted_total;
    const Poly r = resultant(f, g, 0);
    const std::vector<double> coeffs = r.as_univariate(1);
    double mag = 0.0, pw = 1.0;
    for (double c : coeffs) {
      mag += std::fabs(c) * pw;
      pw *= std::fabs(b);
    }
    const double rel = mag > 0 ? std::fabs(r.eval(Vec3{0, b, 0})) / mag : 0.0;
    worst_planted = std::max(worst_planted, rel);
    if (rel <= 1e-6) ++planted_ok;
  }
  std::printf("  shared factor: %d/%d vanish (worst relative %.2e)\n", shared_ok, shared_total, worst_shared);
  std::printf("  planted roots: %d/%d specialise to zero (worst relative %.2e)\n", planted_ok, planted_total, worst_planted);
  verdict(5, shared_ok == shared_total && planted_ok == planted_total && shared_total >= 450, "resultant identities");
}

void criterion6() {
  bool ok = true;
  for (const char* name : {"cube", "octahedron"}) {
    const Polytope p0 = difference_body(make_solid(name));
    const Run& best = solve(name, false);
    for (SearchCase c : kAllCases) {
      const auto t0 = Clock::now();
      auto a = surviving_selections(p0, c);
      auto b = surviving_selections_bruteforce(p0, c);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      bool keeps_best = true;
      if (c == best.result.winning_case) keeps_best = std::binary_search(a.begin(), a.end(), best.result.selection);
      std::printf("  %-10s case %-3s filtered %zu  brute force %zu  equal %d  optimum kept %d  %.1f s\n", name,
                  case_name(c), a.size(), b.size(), a == b, keeps_best, seconds_since(t0));
      ok = ok && a == b && keeps_best;
    }
  }
  verdict(6, ok, "triple filter plus selection LP equals brute force on cube and octahedron");
}

Mat3 random_affine(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto frob = [](const Mat3& a) {
    double s = 0.0;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) s += a(r, c) * a(r, c);
    return std::sqrt(s);
  };
  for (;;) {
    Mat3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = (r == c ? 1.5 : 0.0) + u(rng);
    if (std::fabs(m.det()) < 1e-3) continue;
    // The Frobenius product bounds the spectral condition number from above.
    if (frob(m) * frob(m.inverse()) <= 10.0) return m;
  }
}

void criterion7() {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> shift(-2, 2);
  const Polytope tet = make_solid("tetrahedron");
  bool ok = true;
  for (int t = 0; t < 5; ++t) {
    const Mat3 m = random_affine(rng);
    const Polytope q = transformed(tet, m, {shift(rng), shift(rng), shift(rng)});
    const double d = densest_packing(q).density;
    const double diff = std::fabs(d - 18.0 / 49);
    std::printf("  map %d: det %.4f  density %.10f  |diff| %.2e\n", t, m.det(), d, diff);
    ok = ok && diff <= 1e-5;
  }
  verdict(7, ok, "affine images of the tetrahedron");
}

void criterion8() {
  bool ok = true;
  int checked = 0;
  for (const std::string& name : solid_names()) {
    const Polytope p = make_solid(name);
    const Polytope p0 = difference_body(p);
    const Run& r = solve(name, true);
    const Mat3& w = r.result.basis;
    const double tol = 1e-9 * p0.circumradius();
    // Translates W m, W m' with |m_i|, |m'_i| ≤ 2 overlap iff W (m - m') ∈ int(P - P).
    double deepest = -1e300;
    for (int a = -4; a <= 4; ++a)
      for (int b = -4; b <= 4; ++b)
        for (int c = -4; c <= 4; ++c) {
          if (a == 0 && b == 0 && c == 0) continue;
          deepest = std::max(deepest, -p0.max_violation(lattice_point(w, {a, b, c})));
        }
    const bool disjoint = deepest <= tol;
    const auto us = test_set_vectors(test_set_kind(r.result.winning_case));
    bool full = r.result.contact_points.size() == us.size();
    for (std::size_t i = 0; full && i < us.size(); ++i) {
      const Vec3 x = lattice_point(w, us[i]);
      full = std::fabs(p0.max_violation(x)) <= 1e-8 * p0.circumradius() && (x - r.result.contact_points[i]).norm() <= tol;
    }
    std::printf("  %-28s density %.10f  case %-3s disjoint %d (deepest %.1e)  full test set %d\n", name.c_str(),
                r.result.density, case_name(r.result.winning_case), disjoint, deepest, full);
    ok = ok && disjoint && full;
    ++checked;
  }
  verdict(8, ok, "packing validity on all " + std::to_string(checked) + " catalog solids");
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  std::printf("%d failing criteria; %.1f s\n", g_failures, seconds_since(t0));
  return g_failures == 0 ? 0 : 1;
}
