#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cremona/bigint.hpp"
#include "cremona/ffpoly.hpp"

namespace cremona {

using IntMatrix = std::vector<std::vector<bigint>>;

// Fraction-free (Bareiss) determinant of a square integer matrix.
bigint det_exact(const IntMatrix& a);

struct GramLattice {
  IntMatrix gram;
  std::vector<std::string> basis_labels;

  void validate() const;  // square, symmetric, nondegenerate, labels align
};

// The rank-8 lattice of algebraic middle-cohomology classes on the resolved
// graph fourfold: basis (h2, pol, exc1..3, node1..3) = (square of the
// hyperplane pullback, strict transform of the K3 polarization, the three
// exceptional-curve classes, the three double-point quadric classes), with
// Gram matrix diag(1, -12, 1, 1, 1, 1, 1, 1).
GramLattice algebraic_gram();

// U*A*V = D with U, V unimodular and D diagonal, entries >= 0, each dividing
// the next. Uinv is maintained alongside (U * Uinv = identity).
struct SmithDecomposition {
  IntMatrix U, D, V, Uinv;
};
SmithDecomposition smith_normal_form(const IntMatrix& a);

struct DiscriminantGroup {
  // invariant factors > 1, ascending; empty for a unimodular lattice
  std::vector<bigint> invariant_factors;
  // generator of the largest cyclic factor as rational coordinates in the
  // lattice basis, sign-normalized so its first nonzero coordinate is
  // negative (the -pol/12 convention); empty when the group is trivial
  std::vector<Rational> generator_expr;
};
DiscriminantGroup discriminant_group(const GramLattice& L);  // throws if det = 0

// A middle-cohomology class in the basis of algebraic_gram():
// (a, b, f1, f2, f3, g1, g2, g3).
struct ClassVector {
  std::array<bigint, 8> c{};

  bool operator==(const ClassVector& o) const { return c == o.c; }
  std::string str() const;
};

bigint gram_pairing(const GramLattice& L, const ClassVector& x, const ClassVector& y);

// The product of the two hyperplane classes expressed on the left-hand basis:
// 4*h2 - pol + exc1 + exc2 + exc3.
ClassVector hyperplane_product_class();

// A linear pairing condition <x, with> = target. The solver requires `with`
// to have equal exc-components and equal node-components.
struct PairingConstraint {
  ClassVector with;
  bigint target;
};

// Diophantine decomposition problem for a class x = (a, b, f1..f3, g1..g3):
// first coordinate fixed to a, self-pairing fixed to norm, node components
// either fixed (fixed_g) with exactly one pairing constraint, or free with
// exactly two pairing constraints.
struct DecompositionProblem {
  std::string name;
  bigint a = 0;
  bigint norm = 0;
  std::optional<std::array<bigint, 3>> fixed_g;
  std::vector<PairingConstraint> pairings;
};

struct DecompositionSolution {
  ClassVector vec;
  // integer window for b derived from the Cauchy-Schwarz inequality; the
  // search runs over [window_lo - 3, window_hi + 3] and candidates collects
  // every solution found there (must be exactly one)
  bigint window_lo = 0, window_hi = 0;
  std::vector<ClassVector> candidates;
};

// Exhaustive search; throws unless the solution is unique in the widened
// window and sits in the Cauchy-Schwarz equality case f1=f2=f3, g1=g2=g3.
DecompositionSolution solve_class_decomposition(const DecompositionProblem& p);

// The square of the second map's hyperplane class: a = L2M2, pairing with
// hyperplane_product_class() = LM3, norm = M4, node components fixed to the
// value forced by the exceptional constants.
DecompositionProblem m_square_problem(const bigint& l2m2, const bigint& lm3,
                                      const bigint& m4);

// The strict transform of the second K3 polarization, constrained against the
// solved m_square class; every target is derived by Gram arithmetic.
DecompositionProblem h_m_problem(const ClassVector& m_square);

// The 8x8 change of basis from the left-hand basis to the right-hand one;
// throws unless it is an isometry of algebraic_gram().
IntMatrix full_base_change();

// Multiplier kappa in [0, order) with image(-pol_M/order) = kappa * (-pol_L/order)
// in the discriminant group; throws when the image is not in the dual lattice.
bigint discriminant_action(const IntMatrix& T);

}  // namespace cremona
