#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "latpack/poly.hpp"
#include "latpack/polytope.hpp"

namespace latpack {

/// The four critical-lattice configurations. I uses test-set kind 1, II kind 2,
/// III and IV kind 3.
enum class SearchCase { I = 1, II = 2, III = 3, IV = 4 };

inline constexpr std::array<SearchCase, 4> kAllCases{SearchCase::I, SearchCase::II, SearchCase::III, SearchCase::IV};

int test_set_kind(SearchCase c);
/// −1 for kind 1, +1 otherwise.
int test_set_sigma(int kind);
const char* case_name(SearchCase c);
std::optional<SearchCase> parse_case(const std::string& s);

using IVec3 = std::array<int, 3>;

/// Integer coefficient vectors u¹..u^k of the test set; k = 6, 6, 7.
std::vector<IVec3> test_set_vectors(int kind);

/// W·u for integer u.
Vec3 lattice_point(const Mat3& w, const IVec3& u);

/// Facet triples (i, j, k) with (F_i + σF_j) ∩ F_k ≠ ∅.
struct TripleSet {
  int sigma = 1;
  int n = 0;
  std::vector<std::vector<int>> partners;  // G(F_i), ascending
  std::vector<std::vector<int>> thirds;    // index i·n + j, ascending

  const std::vector<int>& third(int i, int j) const { return thirds[static_cast<std::size_t>(i * n + j)]; }
  bool contains(int i, int j, int k) const;
  bool partner(int i, int j) const;
  std::size_t size() const;
};

/// LP certificate for (i, j, k) ∈ 𝒢 over the facet polygons of p0.
bool triple_feasible(const Polytope& p0, int i, int j, int k, int sigma);

/// Some j ∈ G(F_i) found by slicing bd(p0) with a plane through 0 and the
/// centroid of F_i; −1 if the slice yields none.
int find_seed_facet(const Polytope& p0, int i, int sigma);

/// Seeded breadth-first construction over edge-neighbours with box pruning.
TripleSet build_triple_set(const Polytope& p0, int sigma);
/// Same set from all n³ LPs with box pruning only (test oracle).
TripleSet triple_set_bruteforce(const Polytope& p0, int sigma);
/// The σ = −1 set obtained from the σ = +1 set through the antipodal map.
TripleSet mirrored_triple_set(const TripleSet& plus, const Polytope& p0);

/// Facet indices l₁..l_k of p0, one per test vector.
using Selection = std::vector<int>;

/// Calls visit for every selection passing the three triple conditions, in
/// lexicographic order, with l₁ restricted to one facet per antipodal pair.
/// For kind 3 the seventh slot is restricted by u⁷ = u¹+u⁴ = u²+u⁵ = u³+u⁶.
void enumerate_selections(SearchCase c, const TripleSet& ts, const Polytope& p0,
                          const std::function<void(const Selection&)>& visit);
/// The same stream restricted to a fixed l₁.
void enumerate_selections_from(SearchCase c, const TripleSet& ts, const Polytope& p0, int l1,
                               const std::function<void(const Selection&)>& visit);
/// First-slot facets: the smaller index of every antipodal pair.
std::vector<int> first_slot_facets(const Polytope& p0);

/// Facet permutations induced by the linear symmetries of p0, identity included.
std::vector<std::vector<int>> facet_symmetries(const Polytope& p0);
/// Whether sel is lexicographically smallest among its images under the group.
bool canonical_selection(const Selection& sel, const std::vector<std::vector<int>>& group);

/// One hyperplane a·(W u^i) = b per test vector.
struct SlotPlanes {
  std::vector<Vec3> normal;
  std::vector<double> offset;
};

SlotPlanes selection_planes(const Polytope& p0, const Selection& sel);

/// Whether some W puts every W u^i into facet F_{l_i}.
bool selection_feasible(const Polytope& p0, const Selection& sel, SearchCase c);
/// Same with the sixth row replaced by an adjusted supporting plane.
bool selection_feasible(const Polytope& p0, const Selection& sel, const SlotPlanes& planes, SearchCase c);

/// Case IV: the sixth plane replaced by the supporting plane with normal
/// λ₁a¹ + λ₂a² where λ₁a¹ + λ₂a² + λ₃a³ = a⁶, λ₁, λ₂ > 0. nullopt when not applicable.
std::optional<SlotPlanes> case4_adjust(const Polytope& p0, const Selection& sel);

/// W(λ) = C + Σ λ_j M^j.
struct MatrixFamily {
  Mat3 c;
  std::vector<Mat3> m;

  Mat3 at(const std::vector<double>& lambda) const;
  int dim() const { return static_cast<int>(m.size()); }
};

/// Solution set of the k×9 system placing W u^i on plane i; nullopt when its
/// rank is below k or it is inconsistent.
std::optional<MatrixFamily> parameterize(const SlotPlanes& planes, int kind);

/// det(C + x M¹ + y M² + z M³), zero matrices padding missing directions.
Poly det_polynomial(const MatrixFamily& fam);

/// Affine subfamilies covering every local extremum of det on the family.
std::vector<MatrixFamily> critical_subspaces(const MatrixFamily& fam);

/// Minkowski's admissibility criterion for a basis whose test set lies on bd(p0).
bool check_admissible(const Polytope& p0, const Mat3& w, SearchCase c, double tol = kGeoTolerance);

struct SubspaceVerdict {
  std::optional<Mat3> basis;
  bool deferred = false;  // case I/II point violating the exclusions; left to case III
};

/// A basis in the family with every W u^i in F_{l_i} and satisfying the
/// admissibility criterion of the case.
SubspaceVerdict admissible_in_subspace(const Polytope& p0, const Selection& sel, const SlotPlanes& planes,
                                       const MatrixFamily& fam, SearchCase c, bool exhaustive_exclusions);

/// No nonzero lattice point of W·ℤ³ lies in int(p0), by enumeration over the
/// integer box bounding the circumscribed ball.
bool verify_admissible_bruteforce(const Polytope& p0, const Mat3& w, double tol = kGeoTolerance);
/// Largest interior depth −max_violation over nonzero lattice points in the circumscribed ball.
double deepest_lattice_point(const Polytope& p0, const Mat3& w);

struct SearchCounts {
  std::uint64_t selections_enumerated = 0;
  std::uint64_t pruned_by_G = 0;
  std::uint64_t pruned_by_symmetry = 0;
  std::uint64_t pruned_by_S0 = 0;
  std::uint64_t rank_skipped = 0;
  std::uint64_t subspaces_checked = 0;
  std::uint64_t deferred = 0;
  std::uint64_t case4_skipped = 0;

  SearchCounts& operator+=(const SearchCounts& o);
};

struct SearchProgress {
  SearchCase current_case;
  std::uint64_t first_slots_done = 0;
  std::uint64_t first_slots_total = 0;
  SearchCounts counts;
};

struct SearchOptions {
  std::vector<SearchCase> cases{kAllCases.begin(), kAllCases.end()};
  int threads = 0;  // 0: available parallelism
  bool parallel = true;
  bool exhaustive_exclusions = false;
  bool use_symmetry = true;  // skip selections equivalent under a symmetry of P − P
  bool verify_exact = false;
  std::function<void(const SearchProgress&)> progress;
};

struct PackingResult {
  double density = 0.0;
  double critical_determinant = 0.0;  // of P − P
  Mat3 basis;                         // densest packing lattice of P, basis vectors in columns
  SearchCase winning_case = SearchCase::I;
  Selection selection;                // facet indices of P − P
  std::vector<Halfspace> selection_planes;
  std::vector<Vec3> contact_points;   // test-set points W u^i on bd(P − P)
  bool marginal = false;
  bool partial_cases = false;
  SearchCounts counts;
  std::optional<std::string> exact_density;
  bool exact_verified = false;
};

/// Densest lattice packing of a 3-polytope. Throws NoLatticeFound if no case
/// produced an admissible lattice.
PackingResult densest_packing(const Polytope& p, const SearchOptions& opts = {});

/// Candidate selections surviving the triple filter and the selection LP, for
/// cross-checks against brute force over all facet k-tuples.
std::vector<Selection> surviving_selections(const Polytope& p0, SearchCase c);
std::vector<Selection> surviving_selections_bruteforce(const Polytope& p0, SearchCase c);

}  // namespace latpack
