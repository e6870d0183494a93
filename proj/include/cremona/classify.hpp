#pragma once

#include <string>
#include <vector>

#include "cremona/bigint.hpp"
#include "cremona/ffpoly.hpp"
#include "cremona/intersect.hpp"

namespace cremona {

// One row of the Diophantine case table for quartic-type Cremona maps: the
// forms degree n, the base-locus multiplicity m and the inverse degree xi.
struct CremonaCase {
  char label = '?';  // 'a'..'g'
  bigint n, m, xi;

  bool operator==(const CremonaCase&) const = default;
};

// The seven possible (n, m, xi) rows, replayed from the external elimination
// they are quoted from; each row is checked to admit a rational solution of
// the degree equation before being returned.
std::vector<CremonaCase> case_table();
CremonaCase case_by_label(char label);

// Integer-coefficient polynomial c0 + cd*d + cdd*d^2 + cdelta*delta with
// rational coefficients (sectional genus formulas can be half-integral).
struct DeltaPoly {
  Rational c0, cd, cdd, cdelta;

  Rational eval(const bigint& d, const bigint& delta) const;
  std::string str() const;
  bool operator==(const DeltaPoly&) const = default;

  DeltaPoly operator+(const DeltaPoly& o) const;
  DeltaPoly operator-(const DeltaPoly& o) const;
  DeltaPoly scaled(const Rational& r) const;
};

// Surface invariants of the base locus as polynomials in its degree d and
// node count delta, derived by solving the degree and top-power equations.
struct CaseInvariants {
  char label = '?';
  bigint d_max = 0;  // cited bound d < (n/m)^2
  DeltaPoly kc, k2, c2, twelve_chi, g;
  // vanishes exactly on the (d, delta) allowed by the section count = 5
  DeltaPoly constraint;
};
CaseInvariants derive_case_invariants(const CremonaCase& c);  // cases a, b only

enum class StepKind { recomputed, cited };

// One replayable step: the claim in words, the exact integers involved, and
// whether the re-evaluated arithmetic confirms it (cited steps record
// external theory and always hold).
struct CertStep {
  StepKind kind = StepKind::recomputed;
  std::string claim;
  std::string values;
  bool holds = false;

  bool operator==(const CertStep&) const = default;
};

struct SurvivorRow {
  bigint d, delta, kc, k2, c2, chi, g;
  bool operator==(const SurvivorRow&) const = default;
};

struct ExclusionCertificate {
  std::string case_label;
  std::vector<CertStep> steps;
  bool excluded = false;
  std::vector<SurvivorRow> survivors;  // nonempty only when not excluded

  // throws unless every step holds and the verdict is consistent
  void verify() const;
  bool operator==(const ExclusionCertificate&) const = default;
};

// Cases (c) and (e): reduce the degree and top-power equations to a single
// displayed identity and certify the parity / divisibility contradiction.
ExclusionCertificate exclude_parity_divisibility(const CremonaCase& c);

// Cases (d), (f), (g): section counting against the five-member linear
// system, with the structural steps recorded as cited assumptions.
ExclusionCertificate exclude_section_counts(const CremonaCase& c);

// Case (b) enumeration: g >= 0, the cited degree bound, the section-count
// constraint and delta > 0 leave exactly (8,7) and (9,3).
std::vector<SurvivorRow> survivors_case_b();
ExclusionCertificate survivors_certificate();

// The (d, delta) = (8, 7) sub-case: ruled-surface Euler characteristic
// arithmetic ends in 11 not divisible by 3.
ExclusionCertificate exclude_87();

// Case (a): the cited degree forces d = 5, whence delta = 0 < 1.
ExclusionCertificate exclude_case_a();

// The surviving tuple plus the arithmetic of its minimal model: blowdown
// count k, and degree / K^2 / c2 / chi of the blown-down surface.
struct FinalSurvivor {
  bigint n, m, xi, d, delta;
  SurvivorRow row;
  bigint k = 0, minimal_degree = 0, minimal_k2 = 0, minimal_c2 = 0, minimal_chi = 0;
};

struct ClassificationReport {
  std::vector<ExclusionCertificate> certificates;
  FinalSurvivor survivor;
};

// Composes every certificate, asserts the unique survivor and cross-checks
// it against the intersection-theory formulas; throws on any replay failure.
ClassificationReport final_classification();

// The survivor as a full surface-invariant datum.
SurfaceInvariants survivor_surface();

}  // namespace cremona
