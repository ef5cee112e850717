#include <cmath>
#include <unordered_map>

#include "latpack/error.hpp"
#include "latpack/polysolve.hpp"

namespace latpack {
namespace {

struct Sylvester {
  int n = 0;
  std::vector<Poly> entries;
  std::unordered_map<unsigned, Poly> memo;

  const Poly& at(int r, int c) const { return entries[static_cast<std::size_t>(r * n + c)]; }

  // Determinant of the rows n - popcount(cols) .. n-1 restricted to `cols`.
  Poly minor(unsigned cols) {
    if (cols == 0) return Poly::constant(1.0);
    if (auto it = memo.find(cols); it != memo.end()) return it->second;
    const int row = n - __builtin_popcount(cols);
    Poly sum;
    int position = 0;
    for (int c = 0; c < n; ++c) {
      if (!(cols & (1u << c))) continue;
      const Poly& e = at(row, c);
      if (!e.is_zero()) {
        const Poly sub = minor(cols & ~(1u << c));
        if (!sub.is_zero()) {
          const Poly term = e * sub;
          sum = (position % 2 == 0) ? sum + term : sum - term;
        }
      }
      ++position;
    }
    memo.emplace(cols, sum);
    return sum;
  }
};

}  // namespace

Poly resultant(const Poly& f, const Poly& g, int var) {
  const int m = std::max(f.degree(var), 0);
  const int k = std::max(g.degree(var), 0);
  if (m == 0 && k == 0) throw BothConstantInVar("resultant: neither polynomial depends on the variable");
  if (m == 0) return f;
  if (k == 0) return g;

  const std::vector<Poly> fc = f.coefficients_in(var);
  const std::vector<Poly> gc = g.coefficients_in(var);
  Sylvester s;
  s.n = m + k;
  s.entries.assign(static_cast<std::size_t>(s.n * s.n), Poly());
  // Rows 0..k-1 carry shifted copies of f (highest coefficient first), rows k.. of g.
  for (int r = 0; r < k; ++r)
    for (int i = 0; i <= m; ++i) s.entries[static_cast<std::size_t>(r * s.n + r + i)] = fc[static_cast<std::size_t>(m - i)];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= k; ++i)
      s.entries[static_cast<std::size_t>((k + r) * s.n + r + i)] = gc[static_cast<std::size_t>(k - i)];
  return s.minor((1u << s.n) - 1u);
}

bool resultant_vanishes(const Poly& res, const Poly& f, const Poly& g, int var, double rel) {
  const int m = std::max(f.degree(var), 0);
  const int k = std::max(g.degree(var), 0);
  if (m == 0 || k == 0) return res.is_zero();
  const double scale = std::pow(f.max_abs(), k) * std::pow(g.max_abs(), m);
  return res.max_abs() <= rel * scale;
}

}  // namespace latpack
