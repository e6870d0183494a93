#pragma once

#include <array>

#include "cremona/bigint.hpp"
#include "cremona/ffpoly.hpp"

namespace cremona {

// Numerical invariants of a quartic Cremona transformation of P^4 whose base
// locus is a surface S of degree d with delta ordinary double points, carried
// by a smooth model Sigma: n is the degree of the forms, m the base-locus
// multiplicity, xi the degree of the inverse, kc = K_Sigma.C, k2 = K_Sigma^2,
// c2 = c_2(Sigma), chi = chi(O_Sigma), g the sectional genus.
struct SurfaceInvariants {
  bigint n = 0, m = 0, xi = 0, d = 0, delta = 0;
  bigint kc = 0, k2 = 0, c2 = 0, chi = 0, g = 0;

  // Throws unless 12*chi = k2 + c2, 2g - 2 = d + kc, d >= 1, delta >= 0,
  // m >= 1, n >= 2. Formula entry points stay callable on relaxed data so the
  // degenerate edge cases (linear maps, deliberately broken inputs) remain
  // expressible; callers gate on validate() where full consistency matters.
  void validate() const;
};

// Intersection numbers on the blowup of P^4 along the smooth model of S,
// where L is the hyperplane pullback, E the exceptional divisor over the
// smooth model and Ei' the divisors over the delta double points.
struct IntersectionTable {
  std::array<bigint, 5> exceptional;  // (L.Ei', E^3Ei', E^2Ei'^2, E.Ei'^3, Ei'^4)
  std::array<bigint, 4> le;           // (L^3E, L^2E^2, L.E^3, E^4)
  std::array<bigint, 4> mixed;        // (L^3M, L^2M^2, L.M^3, M^4)
};

// The five constants involving one exceptional divisor over a double point.
std::array<bigint, 5> exceptional_numbers();

// E^4 admits two independent evaluations: through Chern numbers of the smooth
// model, and through the self-intersection/double-point rearrangement. They
// coincide exactly when delta equals half the double-point class.
struct TwoWayValue {
  bigint via_chern = 0;
  bigint via_double_point = 0;
  bool agree() const { return via_chern == via_double_point; }
};

TwoWayValue e4_both(const SurfaceInvariants& s);
TwoWayValue m4_both(const SurfaceInvariants& s);

// (L^3E, L^2E^2, L.E^3, E^4); throws when the two E^4 evaluations disagree
// (certifies inconsistent input data) or d < 1.
std::array<bigint, 4> le_numbers(const SurfaceInvariants& s);

// Degree of the inverse map: n^3 - 3nm^2 d + m^3 (kc + 5d).
bigint xi_formula(const SurfaceInvariants& s);

// Top self-intersection of the strict-transform class M = nL - mE_X; throws
// when the two evaluations disagree. Value 1 certifies birationality.
bigint m4_formula(const SurfaceInvariants& s);

// (L^3M, L^2M^2, L.M^3, M^4) = (n, n^2 - m^2 d, xi_formula, m4_formula).
std::array<bigint, 4> mixed_numbers(const SurfaceInvariants& s);

// Degree-0 part of the double-point class of the map smooth-model -> P^4:
// dd = d^2 - (10d + 5kc + (k2 - c2)); the node count is delta = dd/2.
struct DoublePointClass {
  bigint dd = 0;
  bigint delta = 0;
};
DoublePointClass double_point_class(const SurfaceInvariants& s);  // throws on odd dd

// Numerics of the degree-15 critical hypersurface of the quartic map: its
// multiplicity along the base surface, and the degree/count of the 4-secant
// line family. Requires the self-dual shape n = xi; theta_degree defaults to
// 5(n-1). All divisions are checked exact.
struct PLocusNumbers {
  bigint theta_mult = 0;
  bigint secant_degree = 0;
  bigint secant_hits = 0;
};
PLocusNumbers plocus_numbers(const SurfaceInvariants& s);
PLocusNumbers plocus_numbers(const SurfaceInvariants& s, const bigint& theta_degree);

// Full table for validated input; throws on any internal disagreement.
IntersectionTable intersection_table(const SurfaceInvariants& s);

// a/b for exact division only; throws Error when b = 0 or b does not divide a.
bigint exact_div(const bigint& a, const bigint& b);

}  // namespace cremona
