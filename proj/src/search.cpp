#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "latpack/error.hpp"
#include "latpack/exact.hpp"
#include "latpack/search.hpp"

namespace latpack {
namespace {

// Relative determinant window in which candidates count as equal.
constexpr double kTieWindow = 1e-9;
// Interior depth above rounding noise but inside the geometric tolerance.
constexpr double kMarginalDepth = 1e-12;

struct Candidate {
  double det = std::numeric_limits<double>::infinity();
  Mat3 w;
  SearchCase c = SearchCase::I;
  Selection sel;
  SlotPlanes planes;

  bool valid() const { return std::isfinite(det); }
};

// Keeps `best` unless `cand` is smaller beyond the tie window; callers feed
// candidates in case order and lexicographic selection order.
void offer(Candidate& best, Candidate&& cand) {
  if (!best.valid() || cand.det < best.det * (1.0 - kTieWindow)) best = std::move(cand);
}

struct Worker {
  const Polytope& p0;
  SearchCase c;
  bool exhaustive;
  const std::vector<std::vector<int>>* group;
  Candidate best;
  SearchCounts counts;

  void visit(const Selection& sel) {
    ++counts.selections_enumerated;
    if (group && !canonical_selection(sel, *group)) {
      ++counts.pruned_by_symmetry;
      return;
    }
    if (!selection_feasible(p0, sel, c)) {
      ++counts.pruned_by_S0;
      return;
    }
    SlotPlanes planes = selection_planes(p0, sel);
    if (c == SearchCase::IV) {
      auto adj = case4_adjust(p0, sel);
      if (!adj) {
        ++counts.case4_skipped;
        return;
      }
      planes = std::move(*adj);
    }
    const auto fam = parameterize(planes, test_set_kind(c));
    if (!fam) {
      ++counts.rank_skipped;
      return;
    }
    for (const MatrixFamily& sub : critical_subspaces(*fam)) {
      ++counts.subspaces_checked;
      const double d = std::fabs(sub.c.det());
      if (d <= 1e-12) continue;
      if (best.valid() && d > best.det * (1.0 + 2 * kTieWindow)) continue;
      const SubspaceVerdict v = admissible_in_subspace(p0, sel, planes, sub, c, exhaustive);
      if (v.deferred) ++counts.deferred;
      if (!v.basis) continue;
      const double dw = std::fabs(v.basis->det());
      if (best.valid() && !(dw < best.det * (1.0 - kTieWindow))) continue;
      if (!verify_admissible_bruteforce(p0, *v.basis)) continue;
      offer(best, Candidate{dw, *v.basis, c, sel, planes});
    }
  }
};

std::uint64_t raw_selection_count(const Polytope& p0, SearchCase c) {
  const double n = static_cast<double>(p0.num_facets());
  const double first = static_cast<double>(first_slot_facets(p0).size());
  const int k = test_set_kind(c) == 3 ? 7 : 6;
  const double raw = first * std::pow(n, k - 1);
  return raw >= 1.8e19 ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(raw);
}

}  // namespace

SearchCounts& SearchCounts::operator+=(const SearchCounts& o) {
  selections_enumerated += o.selections_enumerated;
  pruned_by_G += o.pruned_by_G;
  pruned_by_symmetry += o.pruned_by_symmetry;
  pruned_by_S0 += o.pruned_by_S0;
  rank_skipped += o.rank_skipped;
  subspaces_checked += o.subspaces_checked;
  deferred += o.deferred;
  case4_skipped += o.case4_skipped;
  return *this;
}

PackingResult densest_packing(const Polytope& p, const SearchOptions& opts) {
  const Polytope d = difference_body(p);
  const double radius = d.circumradius();
  const Polytope p0 = transformed(d, Mat3::identity() * (1.0 / radius));

  bool need_plus = false, need_minus = false;
  for (SearchCase c : opts.cases) (test_set_sigma(test_set_kind(c)) > 0 ? need_plus : need_minus) = true;
  TripleSet plus;
  if (need_plus || need_minus) plus = build_triple_set(p0, +1);
  TripleSet minus;
  if (need_minus) minus = mirrored_triple_set(plus, p0);

  const std::vector<int> firsts = first_slot_facets(p0);
  std::vector<std::vector<int>> group;
  if (opts.use_symmetry) group = facet_symmetries(p0);
  int threads = 1;
#ifdef _OPENMP
  threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#endif
  const bool parallel = opts.parallel && threads > 1;

  Candidate best;
  SearchCounts total;
  std::vector<SearchCase> cases = opts.cases;
  std::sort(cases.begin(), cases.end());
  cases.erase(std::unique(cases.begin(), cases.end()), cases.end());
  for (SearchCase c : cases) {
    const TripleSet& ts = test_set_sigma(test_set_kind(c)) > 0 ? plus : minus;
    std::vector<Worker> workers;
    for (std::size_t i = 0; i < firsts.size(); ++i) workers.push_back(Worker{p0, c, opts.exhaustive_exclusions, opts.use_symmetry ? &group : nullptr, {}, {}});
    std::vector<std::exception_ptr> errors(firsts.size());
    SearchProgress progress{c, 0, firsts.size(), {}};

    auto run_one = [&](std::size_t i) {
      try {
        enumerate_selections_from(c, ts, p0, firsts[i], [&](const Selection& s) { workers[i].visit(s); });
      } catch (...) {
        errors[i] = std::current_exception();
      }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
      for (std::size_t i = 0; i < firsts.size(); ++i) {
        run_one(i);
        if (opts.progress) {
#pragma omp critical(latpack_progress)
          {
            ++progress.first_slots_done;
            progress.counts += workers[i].counts;
            opts.progress(progress);
          }
        }
      }
    } else {
      for (std::size_t i = 0; i < firsts.size(); ++i) {
        // The serial path shares the running optimum across first slots.
        if (best.valid() && (!workers[i].best.valid() || best.det < workers[i].best.det)) workers[i].best = best;
        run_one(i);
        if (workers[i].best.valid() && (!best.valid() || workers[i].best.det < best.det * (1.0 - kTieWindow)))
          best = workers[i].best;
        if (opts.progress) {
          ++progress.first_slots_done;
          progress.counts += workers[i].counts;
          opts.progress(progress);
        }
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    SearchCounts case_counts;
    for (Worker& w : workers) {
      case_counts += w.counts;
      if (parallel && w.best.valid()) offer(best, std::move(w.best));
    }
    const std::uint64_t raw = raw_selection_count(p0, c);
    case_counts.pruned_by_G = raw - std::min(raw, case_counts.selections_enumerated);
    total += case_counts;
  }

  if (!best.valid()) throw NoLatticeFound("no admissible lattice found in the searched cases");

  PackingResult r;
  r.basis = best.w * radius;
  r.critical_determinant = std::fabs(r.basis.det());
  r.density = p.volume() / r.critical_determinant;
  r.winning_case = best.c;
  r.selection = best.sel;
  for (std::size_t i = 0; i < best.sel.size(); ++i) {
    const Halfspace& h = p0.halfspaces[static_cast<std::size_t>(best.sel[i])];
    r.selection_planes.push_back({h.normal, h.offset * radius});
  }
  for (const IVec3& u : test_set_vectors(test_set_kind(best.c))) r.contact_points.push_back(lattice_point(r.basis, u));
  const double depth = deepest_lattice_point(p0, best.w);
  r.marginal = depth > kMarginalDepth;
  r.partial_cases = cases.size() < kAllCases.size();
  r.counts = total;
  if (opts.verify_exact) {
    const ExactReport ex = verify_exact(p, r);
    r.exact_verified = ex.verified;
    r.exact_density = ex.density;
  }
  return r;
}

std::vector<Selection> surviving_selections(const Polytope& p0, SearchCase c) {
  const int sigma = test_set_sigma(test_set_kind(c));
  const TripleSet ts = build_triple_set(p0, sigma);
  std::vector<Selection> out;
  enumerate_selections(c, ts, p0, [&](const Selection& s) {
    if (selection_feasible(p0, s, c)) out.push_back(s);
  });
  return out;
}

std::vector<Selection> surviving_selections_bruteforce(const Polytope& p0, SearchCase c) {
  const int kind = test_set_kind(c);
  const int n = static_cast<int>(p0.num_facets());
  std::vector<Selection> out;
  // Six-slot tuples first; for kind 3 the prefix test set is the kind-2 set,
  // so a seventh slot only extends feasible prefixes.
  const SearchCase prefix_case = kind == 1 ? SearchCase::I : SearchCase::II;
  Selection s(6);
  for (int l1 : first_slot_facets(p0)) {
    s[0] = l1;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int e = 0; e < n; ++e)
          for (int f = 0; f < n; ++f)
            for (int g = 0; g < n; ++g) {
              s[1] = a;
              s[2] = b;
              s[3] = e;
              s[4] = f;
              s[5] = g;
              if (!selection_feasible(p0, s, prefix_case)) continue;
              if (kind != 3) {
                out.push_back(s);
                continue;
              }
              Selection t = s;
              t.push_back(0);
              for (int h = 0; h < n; ++h) {
                t[6] = h;
                if (selection_feasible(p0, t, c)) out.push_back(t);
              }
            }
  }
  return out;
}

}  // namespace latpack
