#pragma once

#include "cremona/ffpoly.hpp"
#include "cremona/fpmatrix.hpp"
#include "cremona/groebner.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cremona::k3 {

// An 8x16 matrix over F_p whose row span is the P^7 slice of the spinor
// variety OG(5,10) in P^15.  The last three rows must themselves lie on the
// variety: they are the points the slice gets projected away from.
struct SectionInput {
  uint32_t prime = 0;
  std::vector<std::vector<uint32_t>> matrix;  // 8 rows x 16 canonical residues

  // Throws Error naming the defect: wrong shape, rank < 8, or a point row
  // (index 5, 6, 7) that misses one of the ten quadrics.
  void validate() const;
};

// JSON file with fields "prime" and "matrix"; entries are reduced mod prime.
SectionInput load_section_input(const std::string& path);

// Point of P^{n-1}(F_p), stored with the first nonzero coordinate scaled to 1
// so equal points have identical vectors.
struct ProjectivePoint {
  std::vector<uint32_t> coords;

  static ProjectivePoint normalized(const PrimeField& field, std::vector<uint32_t> v);

  bool operator==(const ProjectivePoint& o) const { return coords == o.coords; }
  bool operator<(const ProjectivePoint& o) const { return coords < o.coords; }
  std::string str() const;  // "(1:3:0:2:5)"
};

// A rational self-map of P^4 given by five forms of one degree.
struct CremonaMap {
  std::vector<Poly> forms;

  const Ring& ring() const;
  int degree() const;
  // Five nonzero forms of equal homogeneous degree, linearly independent.
  // (Common-factor freeness is certified separately through the dimension of
  // the base locus.)
  void validate() const;
};

// The ten quadrics cutting the orthogonal Grassmannian OG(5,10) out of P^15,
// over F_p in variables x0..x15.
Ideal og_ideal(uint32_t p);

// Pull the ten quadrics back to the P^7 slice: variables z0..z7, x = z * H.
Ideal k3_section(const SectionInput& in);

// Image of the slice surface under (z0..z7) -> (z0..z4): eliminate z5..z7,
// rename the result to x0..x4.
Ideal project_to_p4(const Ideal& section_ideal);

// All F_p-points of V(I) in the projective space of I's ring, in canonical
// enumeration order (leading coordinate 1, remaining digits ascending).
std::vector<ProjectivePoint> rational_points(const Ideal& I);

// Rank over F_p of the Jacobian of I's generators at the point.
int jacobian_rank_at(const Ideal& I, const ProjectivePoint& pt);

// Points of V(I) where the Jacobian of the generating set has rank <= 1,
// i.e. fails the rank-2 criterion a smooth surface cone satisfies.
std::vector<ProjectivePoint> singular_points(const Ideal& I);

// Points of V(I) whose first five coordinates vanish (the plane the
// projection is centered on).  I lives in the 8-variable slice ring.
std::vector<ProjectivePoint> center_plane_points(const Ideal& I);

// Points of the slice surface lying over a (a point of P^4), excluding the
// center plane itself: the fiber of the projection.
std::vector<ProjectivePoint> fiber_points(const ProjectivePoint& a, const SectionInput& in);
std::vector<ProjectivePoint> fiber_points(const ProjectivePoint& a, const Ideal& section_ideal);

// The five-dimensional degree-4 graded piece of the surface ideal as a map
// P^4 -> P^4, in deterministic reduced-row-echelon basis order.  Throws Error
// carrying the dimension when the piece is not five-dimensional.
CremonaMap cremona_from_ideal(const Ideal& surface_ideal);

// All products f_0^a0 * ... * f_4^a4 over exponent vectors of total degree
// `degree`, in the order of monomials_of_degree(5, degree).
std::vector<Poly> power_products(const std::vector<Poly>& forms, int degree);

// Substitute the map's forms for the variables of a homogeneous form c,
// i.e. c(f_0, ..., f_4).
Poly compose_with(const Poly& c, const CremonaMap& f);

// Coefficient matrix of the linear system "sum_i x_i * c_i(f(x)) = 0" over
// quintuples (c_0..c_4) of degree-`degree` forms: rows are the monomials of
// degree n*degree + 1 (n = deg f), columns are slot-major coefficient
// vectors in monomials_of_degree order.  The kernel is exactly the space of
// degree-`degree` syzygies of the inverse forms, so its dimension is a
// stable invariant of the map.
FpMatrix inversion_system(const CremonaMap& f, int degree);

struct InversionResult {
  CremonaMap inverse;        // forms in y0..y4
  Poly scale;                // monic D with inverse_i(forward(x)) = x_i * D(x)
  int kernel_dimension = 0;  // kernel of inversion_system at the found degree
};

// Invert a birational self-map by linear algebra.  For each slot i, the
// forms c of degree xi with c(f(x)) divisible by x_i make up a linear
// system; when f maps the hyperplane {x_i = 0} onto a degree-xi
// hypersurface, that system pins c = g_i up to scale.  The five slot
// solutions are normalized to share one monic scale factor D through the
// exact identities g_i(f(x)) = x_i * D(x), and D is checked proportional to
// det(Df).  inverse_degree 0 scans xi = 1..4 and keeps the first degree
// that extracts; a positive value pins xi.  Throws Error carrying the
// per-slot solution-space dimensions when no degree admits an extraction.
InversionResult invert_cremona(const CremonaMap& f, int inverse_degree = 0);

// If outer_i(inner(x)) = x_i * D(x) for a single form D, return D (not
// normalized); otherwise nullopt.
std::optional<Poly> composition_factor(const CremonaMap& outer, const CremonaMap& inner);

// Determinant of the 5x5 Jacobian matrix of the map's forms.
Poly jacobian_determinant(const CremonaMap& f);

// Ideal of the map's base locus: the forms, saturated by the irrelevant
// ideal.
Ideal base_locus(const CremonaMap& f);

// Local analysis of a surface point expected to be an ordinary double point:
// Jacobian rank at the point, number of P^3(F_p)-points of the projectivized
// tangent cone (the degree-2 parts of the generators in a local chart), and
// whether those points form two disjoint lines (two transverse sheets).
struct NodeCertificate {
  ProjectivePoint point;
  int jacobian_rank = -1;
  bool local_parts_vanish = false;  // constant and linear parts of all gens
  int tangent_point_count = -1;
  bool two_disjoint_lines = false;

  bool ordinary_double_point() const {
    return jacobian_rank <= 1 && local_parts_vanish && two_disjoint_lines;
  }
};

NodeCertificate certify_node(const Ideal& I, const ProjectivePoint& pt);

// True when all partial derivatives of f of order <= `order` vanish at pt
// (multiplicity > order; valid here since order + 1 < p).
bool vanishes_to_order(const Poly& f, const ProjectivePoint& pt, int order);

// Terms of f of total degree exactly d.
Poly degree_part(const Poly& f, int d);

// One end-to-end run: section -> projection -> quartic map -> inverse ->
// base locus, with point counts, node certificates and the identities the
// construction promises.  Booleans report check outcomes; operations that
// cannot proceed at all still throw.
struct PipelineSummary {
  SectionInput input;

  Ideal section_ideal;          // z0..z7
  Ideal surface_ideal;          // x0..x4
  Ideal inverse_surface_ideal;  // y0..y4, saturated

  CremonaMap forward;           // five quartics in x
  CremonaMap inverse;           // five quartics in y
  Poly forward_scale;           // D : inverse o forward = x * D
  Poly inverse_scale;           // D': forward o inverse = y * D'
  int kernel_dimension = 0;

  HilbertData section_hilbert, surface_hilbert, inverse_surface_hilbert;

  long long section_points = 0, surface_points = 0, inverse_surface_points = 0;
  std::vector<ProjectivePoint> center_points;
  std::vector<ProjectivePoint> surface_nodes, inverse_nodes;
  std::vector<std::vector<ProjectivePoint>> node_fibers;  // per surface node
  std::vector<NodeCertificate> surface_node_certificates, inverse_node_certificates;

  std::vector<int> surface_piece_dims, inverse_piece_dims;  // degrees 1..4

  bool scheme_cut = false;         // <forward forms> saturates to the surface ideal
  bool forms_vanish_on_surface = false;
  bool scissor_count = false;      // surface = section + 3p - 3
  bool counts_match = false;       // inverse surface count = surface count
  bool fiber_accounting = false;   // section = centers + sum of fiber sizes
  bool multiplicity_four = false;  // D vanishes to order 3 along the surface
  bool smoothness_spot = false;    // slice smooth at node fibers + sample
};

PipelineSummary run_pipeline(const SectionInput& in);

}  // namespace cremona::k3
