#include "cremona/lattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cremona/intersect.hpp"

namespace cremona {

namespace {

IntMatrix identity_matrix(size_t n) {
  IntMatrix m(n, std::vector<bigint>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

bigint floor_div(const bigint& a, const bigint& b) {
  bigint q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

}  // namespace

bigint det_exact(const IntMatrix& a) {
  size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw Error("det_exact: matrix is not square");
  if (n == 0) return 1;
  IntMatrix m = a;
  bigint prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

void GramLattice::validate() const {
  size_t n = gram.size();
  if (basis_labels.size() != n)
    throw Error("GramLattice: label count does not match rank");
  for (const auto& row : gram)
    if (row.size() != n) throw Error("GramLattice: matrix is not square");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (gram[i][j] != gram[j][i]) throw Error("GramLattice: matrix is not symmetric");
  if (det_exact(gram) == 0) throw Error("GramLattice: degenerate form");
}

GramLattice algebraic_gram() {
  GramLattice L;
  L.basis_labels = {"h2", "pol", "exc1", "exc2", "exc3", "node1", "node2", "node3"};
  L.gram = identity_matrix(8);
  L.gram[1][1] = -12;
  L.validate();
  return L;
}

// ---------------------------------------------------------------------------
// Smith normal form with full transform tracking.

namespace {

struct SnfState {
  IntMatrix d, u, uinv, v;

  void row_swap(size_t i, size_t j) {
    std::swap(d[i], d[j]);
    std::swap(u[i], u[j]);
    for (auto& row : uinv) std::swap(row[i], row[j]);
  }
  void col_swap(size_t i, size_t j) {
    for (auto& row : d) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  }
  // row i += k * row j
  void row_add(size_t i, size_t j, const bigint& k) {
    for (size_t c = 0; c < d[i].size(); ++c) d[i][c] += k * d[j][c];
    for (size_t c = 0; c < u[i].size(); ++c) u[i][c] += k * u[j][c];
    for (auto& row : uinv) row[j] -= k * row[i];
  }
  // col j += k * col i
  void col_add(size_t j, size_t i, const bigint& k) {
    for (auto& row : d) row[j] += k * row[i];
    for (auto& row : v) row[j] += k * row[i];
  }
  void row_negate(size_t i) {
    for (auto& x : d[i]) x = -x;
    for (auto& x : u[i]) x = -x;
    for (auto& row : uinv) row[i] = -row[i];
  }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  for (const auto& row : a)
    if (row.size() != cols) throw Error("smith_normal_form: ragged matrix");

  SnfState s;
  s.d = a;
  s.u = identity_matrix(rows);
  s.uinv = identity_matrix(rows);
  s.v = identity_matrix(cols);

  size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero entry of the trailing submatrix into the pivot slot
    size_t pi = rows, pj = cols;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j) {
        if (s.d[i][j] == 0) continue;
        if (pi == rows || big_abs(s.d[i][j]) < big_abs(s.d[pi][pj])) {
          pi = i;
          pj = j;
        }
      }
    if (pi == rows) break;  // trailing block is zero
    if (pi != t) s.row_swap(t, pi);
    if (pj != t) s.col_swap(t, pj);

    bool dirty = false;
    for (size_t i = t + 1; i < rows; ++i) {
      if (s.d[i][t] == 0) continue;
      s.row_add(i, t, -floor_div(s.d[i][t], s.d[t][t]));
      if (s.d[i][t] != 0) dirty = true;  // remainder survives: re-pivot
    }
    for (size_t j = t + 1; j < cols; ++j) {
      if (s.d[t][j] == 0) continue;
      s.col_add(j, t, -floor_div(s.d[t][j], s.d[t][t]));
      if (s.d[t][j] != 0) dirty = true;
    }
    if (dirty) continue;

    // pivot must divide the whole trailing block for the invariant chain
    bool divides_all = true;
    for (size_t i = t + 1; i < rows && divides_all; ++i)
      for (size_t j = t + 1; j < cols && divides_all; ++j)
        if (s.d[i][j] % s.d[t][t] != 0) {
          s.row_add(t, i, 1);  // drag the offending row into the pivot row
          divides_all = false;
        }
    if (!divides_all) continue;
    ++t;
  }
  for (size_t i = 0; i < rows && i < cols; ++i)
    if (s.d[i][i] < 0) s.row_negate(i);

  return {s.u, s.d, s.v, s.uinv};
}

// ---------------------------------------------------------------------------
// Discriminant groups.

namespace {

// Solve G x = y exactly over the rationals (G nonsingular).
std::vector<Rational> solve_rational(const IntMatrix& g, const std::vector<bigint>& y) {
  size_t n = g.size();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) m[i][j] = Rational(g[i][j]);
    m[i][n] = Rational(y[i]);
  }
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) throw Error("solve_rational: singular matrix");
    std::swap(m[c], m[p]);
    Rational inv = Rational(1) / m[c][c];
    for (size_t j = c; j <= n; ++j) m[c][j] = m[c][j] * inv;
    for (size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (size_t j = c; j <= n; ++j) m[i][j] = m[i][j] - f * m[c][j];
    }
  }
  std::vector<Rational> x(n);
  for (size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return x;
}

}  // namespace

DiscriminantGroup discriminant_group(const GramLattice& L) {
  L.validate();
  size_t n = L.gram.size();
  SmithDecomposition s = smith_normal_form(L.gram);

  DiscriminantGroup d;
  bigint product = 1;
  for (size_t i = 0; i < n; ++i) {
    product *= s.D[i][i];
    if (s.D[i][i] > 1) d.invariant_factors.push_back(s.D[i][i]);
  }
  if (product != big_abs(det_exact(L.gram)))
    throw Error("discriminant_group: invariant factors do not multiply to |det|");
  if (d.invariant_factors.empty()) return d;  // unimodular

  // generator of the largest cyclic factor: the class of Uinv * e_last in
  // lattice/dual coordinates, i.e. G^{-1} (Uinv column last)
  std::vector<bigint> y(n);
  for (size_t i = 0; i < n; ++i) y[i] = s.Uinv[i][n - 1];
  std::vector<Rational> gen = solve_rational(L.gram, y);
  for (const Rational& c : gen) {
    if (c.is_zero()) continue;
    if (c.num > 0)
      for (Rational& x : gen) x = -x;
    break;
  }
  d.generator_expr = gen;
  return d;
}

// ---------------------------------------------------------------------------
// Class decompositions.

std::string ClassVector::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i];
  os << ")";
  return os.str();
}

bigint gram_pairing(const GramLattice& L, const ClassVector& x, const ClassVector& y) {
  if (L.gram.size() != 8) throw Error("gram_pairing: rank-8 lattice expected");
  bigint acc = 0;
  for (size_t i = 0; i < 8; ++i)
    for (size_t j = 0; j < 8; ++j) acc += x.c[i] * L.gram[i][j] * y.c[j];
  return acc;
}

ClassVector hyperplane_product_class() { return {{4, -1, 1, 1, 1, 0, 0, 0}}; }

namespace {

struct LinearForm {
  bigint p, q;  // value at b is p + q*b
  bigint eval(const bigint& b) const { return p + q * b; }
};

// pairing vector shape: first two coordinates w0, w1, equal exc-part wf,
// equal node-part wg
struct ConstraintShape {
  bigint w0, w1, wf, wg, target;
};

ConstraintShape shape_of(const PairingConstraint& pc) {
  const auto& w = pc.with.c;
  if (w[2] != w[3] || w[3] != w[4] || w[5] != w[6] || w[6] != w[7])
    throw Error("solve_class_decomposition: pairing vector must have equal "
                "exc-components and equal node-components");
  return {w[0], w[1], w[2], w[5], pc.target};
}

bigint isqrt_floor(const bigint& v) {
  if (v < 0) throw Error("isqrt_floor: negative argument");
  return boost::multiprecision::sqrt(v);
}

std::vector<std::array<long long, 3>> triples_with(long long sum, long long sq) {
  std::vector<std::array<long long, 3>> out;
  if (sq < 0) return out;
  long long r = static_cast<long long>(to_int64(isqrt_floor(bigint(sq))));
  for (long long f1 = -r; f1 <= r; ++f1)
    for (long long f2 = f1; f2 <= r; ++f2) {
      long long f3 = sum - f1 - f2;
      if (f3 < f2) continue;
      if (f1 * f1 + f2 * f2 + f3 * f3 == sq) out.push_back({f1, f2, f3});
    }
  return out;
}

}  // namespace

DecompositionSolution solve_class_decomposition(const DecompositionProblem& prob) {
  GramLattice L = algebraic_gram();
  const bigint& a = prob.a;

  // Linear data: the exc-sum as a function of b from the first constraint
  // (which must not involve the node components unless they are fixed), and
  // the node-sum either fixed or solved from the second constraint.
  if (prob.fixed_g.has_value() ? prob.pairings.size() != 1 : prob.pairings.size() != 2)
    throw Error("solve_class_decomposition: " + prob.name +
                ": expected one pairing with fixed node components or two without");

  ConstraintShape c1 = shape_of(prob.pairings[0]);
  if (c1.wf != 1)
    throw Error("solve_class_decomposition: first pairing must have unit exc-component");
  if (!prob.fixed_g && c1.wg != 0)
    throw Error("solve_class_decomposition: with free node components the first "
                "pairing must not see them");

  bigint fixed_gsum = 0, fixed_gsq = 0;
  if (prob.fixed_g) {
    for (const bigint& g : *prob.fixed_g) {
      fixed_gsum += g;
      fixed_gsq += g * g;
    }
  }
  // <x, w> = w0*a - 12*w1*b + wf*Sf + wg*Sg
  LinearForm sf{c1.target - c1.w0 * a - c1.wg * fixed_gsum, 12 * c1.w1};

  LinearForm sg_num{0, 0};
  bigint sg_den = 1;
  if (!prob.fixed_g) {
    ConstraintShape c2 = shape_of(prob.pairings[1]);
    if (c2.wg == 0)
      throw Error("solve_class_decomposition: second pairing must see the node components");
    sg_num = {c2.target - c2.w0 * a - c2.wf * sf.p, 12 * c2.w1 - c2.wf * sf.q};
    sg_den = c2.wg;
  }

  // Cauchy-Schwarz window: quadratic A b^2 + B b + C <= 0 containing every
  // solution, from (Sf)^2 <= 3*sum f_i^2 (and the node analogue).
  bigint A, B, C;
  bigint norm_b2_coeff = 12;  // self-pairing contributes -12 b^2, moved across
  if (prob.fixed_g) {
    // (sf)^2 - 3*(available f-square budget) <= 0
    A = sf.q * sf.q - 3 * norm_b2_coeff;
    B = 2 * sf.p * sf.q;
    C = sf.p * sf.p - 3 * (prob.norm - a * a - fixed_gsq);
  } else {
    A = sg_den * sg_den * sf.q * sf.q + sg_num.q * sg_num.q -
        3 * norm_b2_coeff * sg_den * sg_den;
    B = 2 * sg_den * sg_den * sf.p * sf.q + 2 * sg_num.p * sg_num.q;
    C = sg_den * sg_den * sf.p * sf.p + sg_num.p * sg_num.p -
        3 * sg_den * sg_den * (prob.norm - a * a);
  }
  if (A <= 0)
    throw Error("solve_class_decomposition: " + prob.name + ": search window is unbounded");
  bigint disc = B * B - 4 * A * C;
  DecompositionSolution out;
  if (disc < 0) {
    out.window_lo = 1;
    out.window_hi = 0;  // empty window; the widened scan below still runs
  } else {
    bigint sq = isqrt_floor(disc);
    out.window_lo = floor_div(-B - sq, 2 * A) - 1;
    out.window_hi = floor_div(-B + sq, 2 * A) + 1;
  }

  for (bigint b = out.window_lo - 3; b <= out.window_hi + 3; ++b) {
    bigint sfv = sf.eval(b);
    bigint budget = prob.norm - a * a + 12 * b * b;  // sum f^2 + sum g^2
    if (prob.fixed_g) {
      bigint fsq = budget - fixed_gsq;
      if (fsq < 0) continue;
      for (const auto& f : triples_with(to_int64(sfv), to_int64(fsq))) {
        ClassVector v;
        v.c = {a, b, f[0], f[1], f[2], (*prob.fixed_g)[0], (*prob.fixed_g)[1],
               (*prob.fixed_g)[2]};
        out.candidates.push_back(v);
      }
    } else {
      if (budget < 0) continue;
      bigint sgn = sg_num.eval(b);
      if (sgn % sg_den != 0) continue;
      bigint sgv = sgn / sg_den;
      // index node triples by their square sum, then match exc triples
      std::map<long long, std::vector<std::array<long long, 3>>> by_sq;
      long long tot = to_int64(budget);
      long long r = static_cast<long long>(to_int64(isqrt_floor(budget)));
      for (long long g1 = -r; g1 <= r; ++g1)
        for (long long g2 = g1; g2 <= r; ++g2) {
          long long g3 = to_int64(sgv) - g1 - g2;
          if (g3 < g2) continue;
          long long sq = g1 * g1 + g2 * g2 + g3 * g3;
          if (sq <= tot) by_sq[sq].push_back({g1, g2, g3});
        }
      for (long long fsq = 0; fsq <= tot; ++fsq) {
        auto it = by_sq.find(tot - fsq);
        if (it == by_sq.end()) continue;
        for (const auto& f : triples_with(to_int64(sfv), fsq))
          for (const auto& g : it->second) {
            ClassVector v;
            v.c = {a, b, f[0], f[1], f[2], g[0], g[1], g[2]};
            out.candidates.push_back(v);
          }
      }
    }
  }

  if (out.candidates.size() != 1) {
    std::ostringstream os;
    os << "solve_class_decomposition: " << prob.name << ": expected a unique solution, found "
       << out.candidates.size();
    for (const auto& v : out.candidates) os << " " << v.str();
    throw Error(os.str());
  }
  out.vec = out.candidates[0];
  const auto& v = out.vec.c;
  if (v[2] != v[3] || v[3] != v[4] || v[5] != v[6] || v[6] != v[7])
    throw Error("solve_class_decomposition: " + prob.name +
                ": solution misses the Cauchy-Schwarz equality case " + out.vec.str());

  // the solution must reproduce every input constraint exactly
  if (gram_pairing(L, out.vec, out.vec) != prob.norm)
    throw Error("solve_class_decomposition: " + prob.name + ": self-pairing replay failed");
  for (const auto& pc : prob.pairings)
    if (gram_pairing(L, out.vec, pc.with) != pc.target)
      throw Error("solve_class_decomposition: " + prob.name + ": pairing replay failed");
  return out;
}

DecompositionProblem m_square_problem(const bigint& l2m2, const bigint& lm3,
                                      const bigint& m4) {
  // node components: expanding (4L - E - 2Ei')^2 . (quadric class) leaves
  // only the pure exceptional terms, -(E^2Ei'^2 + 4 E.Ei'^3 + 4 Ei'^4)
  auto exc = exceptional_numbers();
  bigint g = -(exc[2] + 4 * exc[3] + 4 * exc[4]);
  DecompositionProblem p;
  p.name = "m-square";
  p.a = l2m2;
  p.norm = m4;
  p.fixed_g = {g, g, g};
  p.pairings = {{hyperplane_product_class(), lm3}};
  return p;
}

DecompositionProblem h_m_problem(const ClassVector& m_square) {
  GramLattice L = algebraic_gram();
  ClassVector e0, e1;
  e0.c[0] = 1;
  e1.c[1] = 1;
  DecompositionProblem p;
  p.name = "second-polarization";
  // every target is forced by the L/M symmetry of the transformation:
  // <x, h2> = <pol, m2>, <x, lm> = <pol, lm>, <x, m2> = <pol, h2>,
  // <x, x> = <pol, pol>
  p.a = gram_pairing(L, e1, m_square);
  p.norm = gram_pairing(L, e1, e1);
  p.pairings = {{hyperplane_product_class(), gram_pairing(L, e1, hyperplane_product_class())},
                {m_square, gram_pairing(L, e1, e0)}};
  return p;
}

// ---------------------------------------------------------------------------
// The base change and its discriminant action.

IntMatrix full_base_change() {
  IntMatrix T = {{7, -3, 4, 4, 4, 2, 2, 2},
                 {36, -17, 24, 24, 24, 12, 12, 12},
                 {4, -2, 3, 3, 3, 2, 1, 1},
                 {4, -2, 3, 3, 3, 1, 2, 1},
                 {4, -2, 3, 3, 3, 1, 1, 2},
                 {2, -1, 2, 1, 1, 1, 1, 1},
                 {2, -1, 1, 2, 1, 1, 1, 1},
                 {2, -1, 1, 1, 2, 1, 1, 1}};
  const IntMatrix& G = algebraic_gram().gram;
  for (size_t i = 0; i < 8; ++i)
    for (size_t j = 0; j < 8; ++j) {
      bigint acc = 0;
      for (size_t k = 0; k < 8; ++k)
        for (size_t l = 0; l < 8; ++l) acc += T[i][k] * G[k][l] * T[j][l];
      if (acc != G[i][j])
        throw Error("full_base_change: not a Gram isometry at entry (" +
                    std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  return T;
}

bigint discriminant_action(const IntMatrix& T) {
  GramLattice L = algebraic_gram();
  DiscriminantGroup dg = discriminant_group(L);
  if (dg.invariant_factors.size() != 1)
    throw Error("discriminant_action: expected a cyclic discriminant group");
  bigint order = dg.invariant_factors.back();
  const std::vector<Rational>& gen = dg.generator_expr;

  // image of the right-hand generator: the same -1/order convention applied
  // to the right-hand polarization row, re-expressed on the left-hand basis
  if (T.size() != 8) throw Error("discriminant_action: 8x8 matrix expected");
  std::vector<Rational> image(8);
  for (size_t j = 0; j < 8; ++j) image[j] = Rational(-T[1][j], order);

  // dual-lattice membership: G * image integral
  for (size_t i = 0; i < 8; ++i) {
    Rational acc(0);
    for (size_t j = 0; j < 8; ++j) acc = acc + Rational(L.gram[i][j]) * image[j];
    if (!acc.is_integer())
      throw Error("discriminant_action: image is not in the dual lattice");
  }

  for (bigint k = 0; k < order; ++k) {
    bool integral = true;
    for (size_t j = 0; j < 8 && integral; ++j) {
      Rational diff = image[j] - Rational(k) * gen[j];
      integral = diff.is_integer();
    }
    if (integral) return k;
  }
  throw Error("discriminant_action: image is not a multiple of the generator");
}

}  // namespace cremona
