#pragma once

#include <string>
#include <vector>

#include "cremona/bigint.hpp"
#include "cremona/ffpoly.hpp"

namespace cremona {

// A homogeneous ideal given by generators. Generators are stored in canonical
// degrevlex form; zero generators are dropped at construction.
struct Ideal {
  Ring ring;
  std::vector<Poly> gens;

  Ideal() = default;
  Ideal(Ring r, std::vector<Poly> g, bool require_homogeneous = true);

  bool is_zero() const { return gens.empty(); }
};

// ideal generated by all the variables (the irrelevant ideal)
Ideal irrelevant_ideal(const Ring& ring);

struct GroebnerBasis {
  Ring ring;
  MonomialOrder order;
  std::vector<Poly> elems;  // reduced, monic, sorted ascending by leading monomial
};

// Buchberger with normal pair selection (minimal lcm degree first), the
// coprime-lead and chain criteria, top-reduction while the basis grows and a
// full interreduction at the end. Output is the reduced monic basis, which is
// uniquely determined by (ideal, order); the computation is deterministic.
GroebnerBasis buchberger(const Ideal& I, MonomialOrder order = MonomialOrder::drl());

// Fully reduced normal form of f against G (remainder of multivariate
// division; unique representative of f modulo the ideal).
Poly normal_form(const Poly& f, const GroebnerBasis& G);

bool ideal_contains(const GroebnerBasis& G, const Poly& f);
bool ideals_equal(const Ideal& A, const Ideal& B);

// Elimination ideal I  intersect  F_p[keep]: Groebner basis under a block
// order with the dropped variables in the leading block, restricted to basis
// elements supported on `keep`. The result lives in the subring spanned by
// the kept variables (original names, original relative order).
Ideal eliminate(const Ideal& I, const std::vector<int>& keep);

// Ideal quotient (I : h) and (I : J), via the tag-variable intersection
// I \cap <h> (eliminate t from t*I + (1-t)*h) followed by exact division.
Ideal quotient(const Ideal& I, const Poly& h);
Ideal quotient(const Ideal& I, const Ideal& J);

// Saturation (I : J^inf): iterate quotients until the ideal stabilizes.
Ideal saturate(const Ideal& I, const Ideal& J);

// ---------------------------------------------------------------------------
// Hilbert data of the quotient ring R/I for homogeneous I.

struct HilbertData {
  // numerator N with HS_{R/I}(t) = N(t) / (1-t)^nvars
  std::vector<bigint> numerator;
  // reduced numerator N1 (N1(1) != 0) with HS = N1(t) / (1-t)^krull_dim
  std::vector<bigint> reduced_numerator;
  int krull_dim = 0;        // Krull dimension of R/I
  int dimension = -1;       // projective dimension (= krull_dim - 1; -1 for <1>)
  bigint degree = 0;        // projective degree (0 for <1>)
  std::vector<Rational> hilbert_polynomial;  // coefficient of t^k at index k

  Rational hp_at(const bigint& t) const;
  std::string hp_str() const;  // e.g. "6*t^2 + 2"
};

HilbertData hilbert_data(const Ideal& I);
HilbertData hilbert_data(const GroebnerBasis& G);

// Dimension over F_p of the degree-t graded piece of the ideal spanned by
// {monomial * generator} products: independent linear-algebra route, no
// Groebner machinery involved.
int graded_piece_dimension(const Ideal& I, int t);

// All monomials of total degree t in nvars variables, descending degrevlex.
std::vector<Monomial> monomials_of_degree(int nvars, int t);

// ---------------------------------------------------------------------------
// Ideal text files: a `ring p=<p> vars=<v0,v1,...> order=<name>` header line
// followed by one polynomial per line in canonical text form.

void write_ideal(const Ideal& I, const std::string& path);
Ideal read_ideal(const std::string& path);

// Rename the variables of an ideal (same prime, same arity).
Ideal rename_variables(const Ideal& I, const Ring& target);

}  // namespace cremona
