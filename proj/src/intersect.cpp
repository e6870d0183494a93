#include "cremona/intersect.hpp"

#include <sstream>

namespace cremona {

void SurfaceInvariants::validate() const {
  std::ostringstream why;
  if (12 * chi != k2 + c2)
    why << "12*chi = " << 12 * chi << " but k2 + c2 = " << (k2 + c2) << "; ";
  if (2 * g - 2 != d + kc)
    why << "2g - 2 = " << (2 * g - 2) << " but d + kc = " << (d + kc) << "; ";
  if (d < 1) why << "d = " << d << " < 1; ";
  if (delta < 0) why << "delta = " << delta << " < 0; ";
  if (m < 1) why << "m = " << m << " < 1; ";
  if (n < 2) why << "n = " << n << " < 2; ";
  std::string s = why.str();
  if (!s.empty()) throw Error("SurfaceInvariants: " + s);
}

bigint exact_div(const bigint& a, const bigint& b) {
  if (b == 0) throw Error("exact_div: division by zero");
  if (a % b != 0)
    throw Error("exact_div: " + a.str() + " is not divisible by " + b.str());
  return a / b;
}

std::array<bigint, 5> exceptional_numbers() { return {0, -4, 2, 0, -1}; }

TwoWayValue e4_both(const SurfaceInvariants& s) {
  TwoWayValue v;
  v.via_chern = -(15 * s.d + 5 * s.kc + s.c2 - 6 * s.delta);
  v.via_double_point = s.d * s.d - 25 * s.d - 10 * s.kc - s.k2 + 4 * s.delta;
  return v;
}

std::array<bigint, 4> le_numbers(const SurfaceInvariants& s) {
  if (s.d < 1) throw Error("le_numbers: requires d >= 1, got d = " + s.d.str());
  TwoWayValue e4 = e4_both(s);
  if (!e4.agree())
    throw Error("le_numbers: the two E^4 evaluations disagree (" + e4.via_chern.str() +
                " vs " + e4.via_double_point.str() + "); input data is inconsistent");
  return {0, -s.d, -(5 * s.d + s.kc), e4.via_chern};
}

bigint xi_formula(const SurfaceInvariants& s) {
  return s.n * s.n * s.n - 3 * s.n * s.m * s.m * s.d +
         s.m * s.m * s.m * (s.kc + 5 * s.d);
}

TwoWayValue m4_both(const SurfaceInvariants& s) {
  bigint m3 = s.m * s.m * s.m, m4 = m3 * s.m;
  bigint head = s.n * s.n * s.n * s.n - 6 * s.n * s.n * s.m * s.m * s.d +
                4 * s.n * m3 * (s.kc + 5 * s.d);
  TwoWayValue e4 = e4_both(s);
  TwoWayValue v;
  v.via_chern = head + m4 * e4.via_chern;
  v.via_double_point = head + m4 * e4.via_double_point;
  return v;
}

bigint m4_formula(const SurfaceInvariants& s) {
  TwoWayValue v = m4_both(s);
  if (!v.agree())
    throw Error("m4_formula: the two M^4 evaluations disagree (" + v.via_chern.str() +
                " vs " + v.via_double_point.str() + "); input data is inconsistent");
  return v.via_chern;
}

std::array<bigint, 4> mixed_numbers(const SurfaceInvariants& s) {
  return {s.n, s.n * s.n - s.m * s.m * s.d, xi_formula(s), m4_formula(s)};
}

DoublePointClass double_point_class(const SurfaceInvariants& s) {
  DoublePointClass r;
  r.dd = s.d * s.d - (10 * s.d + 5 * s.kc + (s.k2 - s.c2));
  if (r.dd % 2 != 0)
    throw Error("double_point_class: class " + r.dd.str() +
                " is odd; the node count must be integral");
  r.delta = r.dd / 2;
  return r;
}

PLocusNumbers plocus_numbers(const SurfaceInvariants& s) {
  return plocus_numbers(s, 5 * (s.n - 1));
}

PLocusNumbers plocus_numbers(const SurfaceInvariants& s, const bigint& theta_degree) {
  bigint lm3 = xi_formula(s);
  bigint m4 = m4_formula(s);
  bigint l2m2 = s.n * s.n - s.m * s.m * s.d;
  if (s.n != lm3)
    throw Error("plocus_numbers: requires a self-dual map degree n = xi, got n = " +
                s.n.str() + ", xi = " + lm3.str());
  // multiplicity along the base surface: 0 = M^3(theta_degree*L - mult*E_X)
  // with M^3 E_X = (n*xi - M^4)/m
  bigint m3ex = exact_div(s.n * lm3 - m4, s.m);
  if (m3ex == 0) throw Error("plocus_numbers: degenerate M^3 E_X = 0");
  PLocusNumbers r;
  r.theta_mult = exact_div(theta_degree * lm3, m3ex);
  // degree of the secant-line family swept inside the critical hypersurface,
  // and the number of base-surface points on one member
  r.secant_degree = exact_div(s.n * lm3 - l2m2, s.d);
  r.secant_hits = exact_div(s.n * s.n * lm3 - s.n * l2m2 - s.n * m4 + lm3, s.d);
  return r;
}

IntersectionTable intersection_table(const SurfaceInvariants& s) {
  IntersectionTable t;
  t.exceptional = exceptional_numbers();
  t.le = le_numbers(s);
  t.mixed = mixed_numbers(s);
  return t;
}

}  // namespace cremona
