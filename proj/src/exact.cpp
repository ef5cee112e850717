#include "latpack/exact.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <sstream>

namespace latpack {
namespace {

using Q = boost::multiprecision::cpp_rational;

constexpr long long kMaxDen = 10000;
constexpr double kCoordTol = 1e-12;
constexpr double kBasisTol = 1e-9;

struct QVec {
  Q x, y, z;
  QVec operator+(const QVec& o) const { return {x + o.x, y + o.y, z + o.z}; }
  QVec operator-(const QVec& o) const { return {x - o.x, y - o.y, z - o.z}; }
  QVec operator*(const Q& s) const { return {x * s, y * s, z * s}; }
};

Q qdot(const QVec& a, const QVec& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
QVec qcross(const QVec& a, const QVec& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
bool is_zero(const QVec& v) { return v.x == 0 && v.y == 0 && v.z == 0; }

std::optional<Q> to_q(double x, double tol) {
  const auto r = rationalize(x, kMaxDen, tol);
  if (!r) return std::nullopt;
  return Q(r->first, r->second);
}

std::optional<QVec> to_qvec(const Vec3& v, double tol) {
  const auto a = to_q(v.x, tol), b = to_q(v.y, tol), c = to_q(v.z, tol);
  if (!a || !b || !c) return std::nullopt;
  return QVec{*a, *b, *c};
}

struct QPlane {
  QVec n;
  Q off;
};

// Exact outward facet planes, or nullopt if a facet is not exactly planar.
std::optional<std::vector<QPlane>> exact_planes(const Polytope& p, const std::vector<QVec>& v) {
  std::vector<QPlane> out;
  for (std::size_t f = 0; f < p.facets.size(); ++f) {
    const auto& cyc = p.facets[f].vertices;
    QVec n;
    for (std::size_t a = 1; a + 1 < cyc.size() && is_zero(n); ++a)
      n = qcross(v[static_cast<std::size_t>(cyc[a])] - v[static_cast<std::size_t>(cyc[0])],
                 v[static_cast<std::size_t>(cyc[a + 1])] - v[static_cast<std::size_t>(cyc[0])]);
    if (is_zero(n)) return std::nullopt;
    Q off = qdot(n, v[static_cast<std::size_t>(cyc[0])]);
    // Orient outward with the floating-point normal.
    const Vec3& fl = p.halfspaces[f].normal;
    const double s = n.x.convert_to<double>() * fl.x + n.y.convert_to<double>() * fl.y + n.z.convert_to<double>() * fl.z;
    if (s < 0) {
      n = n * Q(-1);
      off = -off;
    }
    for (int idx : cyc)
      if (qdot(n, v[static_cast<std::size_t>(idx)]) != off) return std::nullopt;
    out.push_back({n, off});
  }
  return out;
}

std::string to_string(const Q& q) {
  std::ostringstream os;
  os << numerator(q);
  if (denominator(q) != 1) os << '/' << denominator(q);
  return os.str();
}

}  // namespace

std::optional<std::pair<long long, long long>> rationalize(double x, long long max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  const long double target = x;
  const long double eps = static_cast<long double>(tol) * std::max<long double>(1.0L, std::fabs(target));
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  long double r = target;
  for (int it = 0; it < 64; ++it) {
    const long double a = std::floor(r);
    if (std::fabs(a) > 9e15L) break;
    const long long ai = static_cast<long long>(a);
    const long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::fabs(target - static_cast<long double>(p1) / q1) <= eps) return std::make_pair(p1, q1);
    const long double frac = r - a;
    if (frac == 0) break;
    r = 1.0L / frac;
  }
  return std::nullopt;
}

std::optional<std::string> closed_form(double x) {
  if (const auto r = rationalize(x, 1000, 1e-12)) {
    std::ostringstream os;
    os << r->first;
    if (r->second != 1) os << '/' << r->second;
    return os.str();
  }
  for (int d : {2, 3, 5}) {
    const double s = std::sqrt(static_cast<double>(d));
    for (int c = 1; c <= 24; ++c)
      for (int b = -8 * c; b <= 8 * c; ++b) {
        if (b == 0) continue;
        // x = (a + b√d)/c with integer a.
        const double a = x * c - b * s;
        const double ar = std::round(a);
        if (std::fabs(a - ar) > 1e-11 * c) continue;
        if (std::fabs((ar + b * s) / c - x) > 1e-12) continue;
        std::ostringstream os;
        os << '(' << static_cast<long long>(ar) << (b < 0 ? " - " : " + ");
        if (std::abs(b) != 1) os << std::abs(b);
        os << "√" << d << ')';
        if (c != 1) os << '/' << c;
        return os.str();
      }
  }
  return std::nullopt;
}

ExactReport verify_exact(const Polytope& p, const PackingResult& r) {
  ExactReport rep;
  auto fallback = [&](const std::string& why) {
    rep.note = why;
    rep.density = closed_form(r.density);
    return rep;
  };

  std::vector<QVec> pv;
  for (const Vec3& v : p.vertices) {
    const auto q = to_qvec(v, kCoordTol);
    if (!q) return fallback("vertex coordinates are not small rationals");
    pv.push_back(*q);
  }
  const auto pplanes = exact_planes(p, pv);
  if (!pplanes) return fallback("facets are not exactly planar after reconstruction");

  // Exact volume by fans over the facets, apex at the first vertex.
  Q vol = 0;
  for (const Facet& f : p.facets)
    for (std::size_t a = 1; a + 1 < f.vertices.size(); ++a) {
      const QVec& x0 = pv[static_cast<std::size_t>(f.vertices[0])];
      const QVec& x1 = pv[static_cast<std::size_t>(f.vertices[a])];
      const QVec& x2 = pv[static_cast<std::size_t>(f.vertices[a + 1])];
      vol += qdot(x0 - pv[0], qcross(x1 - pv[0], x2 - pv[0]));
    }
  vol /= 6;
  if (vol < 0) vol = -vol;

  const Polytope d = difference_body(p);
  std::vector<QVec> dv;
  for (const Vec3& v : d.vertices) {
    const auto q = to_qvec(v, kCoordTol);
    if (!q) return fallback("difference body vertices are not small rationals");
    dv.push_back(*q);
  }
  const auto dplanes = exact_planes(d, dv);
  if (!dplanes) return fallback("difference body facets are not exactly planar");

  QVec cols[3];
  for (int c = 0; c < 3; ++c) {
    const auto q = to_qvec(r.basis.col(c), kBasisTol);
    if (!q) return fallback("basis entries are not small rationals");
    cols[c] = *q;
  }
  auto point = [&](long long a, long long b, long long c) { return cols[0] * Q(a) + cols[1] * Q(b) + cols[2] * Q(c); };
  // max_f (n_f·z − off_f): 0 on the boundary, negative inside.
  auto sign_of = [&](const QVec& z) {
    int best = -1;
    for (const QPlane& h : *dplanes) {
      const Q s = qdot(h.n, z) - h.off;
      if (s > 0) return 1;
      if (s == 0) best = 0;
    }
    return best;
  };
  for (const IVec3& u : test_set_vectors(test_set_kind(r.winning_case)))
    if (sign_of(point(u[0], u[1], u[2])) != 0) return fallback("a test-set point is off the boundary in exact arithmetic");

  const Mat3 inv = r.basis.inverse();
  const double radius = d.circumradius();
  long long bound[3];
  for (int i = 0; i < 3; ++i) bound[i] = static_cast<long long>(std::floor(radius * inv.row(i).norm() + 1e-9));
  for (long long a = -bound[0]; a <= bound[0]; ++a)
    for (long long b = -bound[1]; b <= bound[1]; ++b)
      for (long long c = -bound[2]; c <= bound[2]; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        if (sign_of(point(a, b, c)) < 0) return fallback("a nonzero lattice point is interior in exact arithmetic");
      }

  const Q det = qdot(cols[0], qcross(cols[1], cols[2]));
  const Q density = vol / (det < 0 ? Q(-det) : det);
  if (std::fabs(density.convert_to<double>() - r.density) > 1e-12 * std::max(1.0, r.density))
    return fallback("exact density disagrees with the floating-point value");
  rep.verified = true;
  rep.density = to_string(density);
  rep.note = "exact";
  return rep;
}

}  // namespace latpack
