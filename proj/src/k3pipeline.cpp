#include "cremona/k3pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "cremona/fpmatrix.hpp"
#include "json.hpp"

namespace cremona::k3 {

namespace {

struct QuadTerm {
  int i, j, sign;
};

// Ten quadrics cutting OG(5,10) out of P^15, four signed products each.
const QuadTerm kQuadrics[10][4] = {
    {{0, 11, +1}, {5, 10, +1}, {6, 9, -1}, {7, 8, +1}},
    {{1, 12, -1}, {2, 13, +1}, {3, 14, -1}, {4, 15, +1}},
    {{0, 12, +1}, {2, 10, +1}, {3, 9, -1}, {4, 8, +1}},
    {{1, 11, +1}, {5, 13, -1}, {6, 14, +1}, {7, 15, -1}},
    {{0, 13, +1}, {1, 10, +1}, {3, 7, -1}, {4, 6, +1}},
    {{2, 11, -1}, {5, 12, +1}, {8, 14, -1}, {9, 15, +1}},
    {{0, 14, +1}, {1, 9, +1}, {2, 7, -1}, {4, 5, +1}},
    {{3, 11, +1}, {6, 12, -1}, {8, 13, +1}, {10, 15, -1}},
    {{0, 15, +1}, {1, 8, +1}, {2, 6, -1}, {3, 5, +1}},
    {{4, 11, -1}, {7, 12, +1}, {9, 13, -1}, {10, 14, +1}},
};

// Visit every point of P^{n-1}(F_p) once, in canonical order: the first
// nonzero coordinate is 1, trailing coordinates count up like digits.
template <class F>
void for_each_projective(const PrimeField& field, int n, F&& fn) {
  std::vector<uint32_t> v(static_cast<size_t>(n), 0);
  for (int lead = 0; lead < n; ++lead) {
    std::fill(v.begin(), v.end(), 0u);
    v[static_cast<size_t>(lead)] = 1;
    while (true) {
      fn(v);
      int pos = n - 1;
      while (pos > lead && v[static_cast<size_t>(pos)] == field.p() - 1) {
        v[static_cast<size_t>(pos)] = 0;
        --pos;
      }
      if (pos == lead) break;
      ++v[static_cast<size_t>(pos)];
    }
  }
}

bool all_gens_vanish(const std::vector<Poly>& gens, const std::vector<uint32_t>& v) {
  for (const Poly& g : gens)
    if (g.eval(v) != 0) return false;
  return true;
}

uint32_t eval_quadric(const PrimeField& F, const QuadTerm (&q)[4],
                      const std::vector<uint32_t>& row) {
  uint32_t acc = 0;
  for (const QuadTerm& t : q) {
    uint32_t prod = F.mul(row[static_cast<size_t>(t.i)], row[static_cast<size_t>(t.j)]);
    acc = t.sign > 0 ? F.add(acc, prod) : F.sub(acc, prod);
  }
  return acc;
}

uint64_t pack_exponents(const Monomial& m, int nvars) {
  uint64_t key = 0;
  for (int i = 0; i < nvars; ++i) key = (key << 8) | m.e[static_cast<size_t>(i)];
  return key;
}

}  // namespace

std::vector<Poly> power_products(const std::vector<Poly>& f, int d) {
  if (f.size() != 5 || d < 0) throw Error("power products need five forms and degree >= 0");
  const Ring& R = f[0].ring();
  std::map<std::array<uint8_t, kMaxVars>, Poly> memo;
  memo[Monomial::one(5).e] = Poly::constant(R, 1);
  for (int layer = 1; layer <= d; ++layer) {
    for (const Monomial& m : monomials_of_degree(5, layer)) {
      int i = 0;
      while (m.e[static_cast<size_t>(i)] == 0) ++i;
      Monomial prev = m.div(Monomial::var(5, i));
      memo.emplace(m.e, memo.at(prev.e) * f[static_cast<size_t>(i)]);
    }
  }
  std::vector<Poly> out;
  for (const Monomial& m : monomials_of_degree(5, d)) out.push_back(memo.at(m.e));
  return out;
}

namespace {

// Coefficient vector of a form over the monomial list (which must cover it).
std::vector<uint16_t> coeff_vector(const Poly& f, const std::vector<Monomial>& mons,
                                   const std::unordered_map<uint64_t, int>& index) {
  std::vector<uint16_t> v(mons.size(), 0);
  for (const Term& t : f.terms()) {
    auto it = index.find(pack_exponents(t.mon, f.ring()->nvars()));
    if (it == index.end()) throw Error("coefficient vector: monomial outside the expected degree");
    v[static_cast<size_t>(it->second)] = static_cast<uint16_t>(t.coeff);
  }
  return v;
}

Poly poly_from_vector(const Ring& ring, const std::vector<Monomial>& mons,
                      const std::vector<uint16_t>& v) {
  std::vector<Term> ts;
  for (size_t k = 0; k < mons.size(); ++k)
    if (v[k]) ts.push_back({mons[k], v[k]});
  return Poly(ring, MonomialOrder::drl(), std::move(ts));
}

std::unordered_map<uint64_t, int> index_monomials(const std::vector<Monomial>& mons, int nvars) {
  std::unordered_map<uint64_t, int> index;
  index.reserve(mons.size() * 2);
  for (size_t k = 0; k < mons.size(); ++k)
    index.emplace(pack_exponents(mons[k], nvars), static_cast<int>(k));
  return index;
}

// Laplace expansion with memoization on the active column set.
Poly det_minor(const std::vector<std::vector<Poly>>& m, int row, uint32_t colmask,
               std::map<uint32_t, Poly>& memo, const Ring& ring) {
  if (colmask == 0) return Poly::constant(ring, 1);
  auto it = memo.find(colmask);
  if (it != memo.end()) return it->second;
  Poly acc = Poly::zero(ring);
  int sign = 1;
  for (int c = 0; c < static_cast<int>(m.size()); ++c) {
    if (!(colmask & (1u << c))) continue;
    const Poly& entry = m[static_cast<size_t>(row)][static_cast<size_t>(c)];
    if (!entry.is_zero()) {
      Poly sub = det_minor(m, row + 1, colmask & ~(1u << c), memo, ring);
      Poly piece = entry * sub;
      acc = sign > 0 ? acc + piece : acc - piece;
    }
    sign = -sign;
  }
  memo.emplace(colmask, acc);
  return acc;
}

std::vector<uint32_t> projective_line(const PrimeField& F, const std::vector<uint32_t>& u,
                                      const std::vector<uint32_t>& v, uint32_t c) {
  std::vector<uint32_t> w(u.size());
  for (size_t k = 0; k < u.size(); ++k) w[k] = F.add(u[k], F.mul(c, v[k]));
  return w;
}

std::vector<uint32_t> normalize_vector(const PrimeField& F, std::vector<uint32_t> v) {
  size_t lead = 0;
  while (lead < v.size() && v[lead] == 0) ++lead;
  if (lead == v.size()) throw Error("zero vector is not a projective point");
  uint32_t s = F.inv(v[lead]);
  for (auto& e : v) e = F.mul(e, s);
  return v;
}

// The p+1 points of the line through distinct projective points u, v.
std::set<std::vector<uint32_t>> line_points(const PrimeField& F, const std::vector<uint32_t>& u,
                                            const std::vector<uint32_t>& v) {
  std::set<std::vector<uint32_t>> pts;
  pts.insert(normalize_vector(F, u));
  pts.insert(normalize_vector(F, v));
  for (uint32_t c = 1; c < F.p(); ++c) pts.insert(normalize_vector(F, projective_line(F, u, v, c)));
  return pts;
}

}  // namespace

void SectionInput::validate() const {
  PrimeField F(prime);
  if (matrix.size() != 8) throw Error("section input: matrix must have 8 rows");
  for (const auto& row : matrix)
    if (row.size() != 16) throw Error("section input: matrix rows must have 16 entries");
  FpMatrix M(F, 8, 16);
  for (size_t r = 0; r < 8; ++r)
    for (size_t c = 0; c < 16; ++c) M.set(r, c, matrix[r][c]);
  if (M.rank() != 8) throw Error("section input: matrix rank is not 8");
  for (size_t r = 5; r < 8; ++r) {
    std::vector<uint32_t> row;
    for (uint32_t e : matrix[r]) row.push_back(F.reduce(e));
    for (int q = 0; q < 10; ++q)
      if (eval_quadric(F, kQuadrics[q], row) != 0) {
        std::ostringstream msg;
        msg << "section input: point row " << r << " is not on quadric " << q;
        throw Error(msg.str());
      }
  }
}

SectionInput load_section_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open section input file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error("section input " + path + ": " + e.what());
  }
  SectionInput s;
  s.prime = j.at("prime").get<uint32_t>();
  PrimeField F(s.prime);
  for (const auto& row : j.at("matrix")) {
    std::vector<uint32_t> r;
    for (const auto& e : row) r.push_back(F.reduce(e.get<int64_t>()));
    s.matrix.push_back(std::move(r));
  }
  s.validate();
  return s;
}

ProjectivePoint ProjectivePoint::normalized(const PrimeField& field, std::vector<uint32_t> v) {
  for (auto& e : v) e = field.reduce(e);
  return ProjectivePoint{normalize_vector(field, std::move(v))};
}

std::string ProjectivePoint::str() const {
  std::ostringstream out;
  out << "(";
  for (size_t k = 0; k < coords.size(); ++k) {
    if (k) out << ":";
    out << coords[k];
  }
  out << ")";
  return out.str();
}

const Ring& CremonaMap::ring() const {
  if (forms.empty()) throw Error("map has no forms");
  return forms[0].ring();
}

int CremonaMap::degree() const {
  if (forms.empty()) throw Error("map has no forms");
  return forms[0].degree();
}

void CremonaMap::validate() const {
  if (forms.size() != 5) throw Error("map must consist of five forms");
  const Ring& R = ring();
  if (R->nvars() != 5) throw Error("map forms must live in five variables");
  std::optional<int> deg;
  for (const Poly& f : forms) {
    if (!same_ring(f.ring(), R)) throw Error("map forms live in different rings");
    if (f.is_zero()) throw Error("map form is zero");
    auto d = f.homogeneous_degree();
    if (!d) throw Error("map form is not homogeneous");
    if (deg && *deg != *d) throw Error("map forms have different degrees");
    deg = d;
  }
  auto mons = monomials_of_degree(5, *deg);
  auto index = index_monomials(mons, 5);
  EchelonSpan span(R->field, mons.size());
  for (const Poly& f : forms)
    if (!span.add(coeff_vector(f, mons, index)))
      throw Error("map forms are linearly dependent");
}

Ideal og_ideal(uint32_t p) {
  Ring R = make_ring(p, "x", 16);
  PrimeField F = R->field;
  std::vector<Poly> gens;
  for (const auto& quad : kQuadrics) {
    std::vector<Term> ts;
    for (const QuadTerm& t : quad) {
      Monomial m = Monomial::var(16, t.i).mul(Monomial::var(16, t.j));
      ts.push_back({m, F.reduce(t.sign)});
    }
    gens.push_back(Poly(R, MonomialOrder::drl(), std::move(ts)));
  }
  return Ideal(R, std::move(gens));
}

Ideal k3_section(const SectionInput& in) {
  in.validate();
  Ideal og = og_ideal(in.prime);
  Ring Rz = make_ring(in.prime, "z", 8);
  std::vector<Poly> gens;
  for (const Poly& q : og.gens) gens.push_back(substitute_linear(q, Rz, in.matrix));
  return Ideal(Rz, std::move(gens));
}

Ideal project_to_p4(const Ideal& section_ideal) {
  Ideal elim = eliminate(section_ideal, {0, 1, 2, 3, 4});
  Ring Rx = make_ring(section_ideal.ring->field.p(), "x", 5);
  return rename_variables(elim, Rx);
}

std::vector<ProjectivePoint> rational_points(const Ideal& I) {
  const PrimeField& F = I.ring->field;
  std::vector<ProjectivePoint> pts;
  for_each_projective(F, I.ring->nvars(), [&](const std::vector<uint32_t>& v) {
    if (all_gens_vanish(I.gens, v)) pts.push_back(ProjectivePoint{v});
  });
  return pts;
}

int jacobian_rank_at(const Ideal& I, const ProjectivePoint& pt) {
  const PrimeField& F = I.ring->field;
  const int n = I.ring->nvars();
  FpMatrix J(F, I.gens.size(), static_cast<size_t>(n));
  for (size_t r = 0; r < I.gens.size(); ++r)
    for (int c = 0; c < n; ++c) J.set(r, static_cast<size_t>(c), I.gens[r].partial(c).eval(pt.coords));
  return static_cast<int>(J.rank());
}

std::vector<ProjectivePoint> singular_points(const Ideal& I) {
  std::vector<ProjectivePoint> sing;
  for (const ProjectivePoint& pt : rational_points(I))
    if (jacobian_rank_at(I, pt) <= 1) sing.push_back(pt);
  return sing;
}

std::vector<ProjectivePoint> center_plane_points(const Ideal& I) {
  const PrimeField& F = I.ring->field;
  const int n = I.ring->nvars();
  if (n <= 5) throw Error("center plane needs more than five coordinates");
  std::vector<ProjectivePoint> pts;
  for_each_projective(F, n - 5, [&](const std::vector<uint32_t>& tail) {
    std::vector<uint32_t> v(static_cast<size_t>(n), 0);
    for (int k = 5; k < n; ++k) v[static_cast<size_t>(k)] = tail[static_cast<size_t>(k - 5)];
    if (all_gens_vanish(I.gens, v)) pts.push_back(ProjectivePoint{v});
  });
  return pts;
}

std::vector<ProjectivePoint> fiber_points(const ProjectivePoint& a, const Ideal& section_ideal) {
  const PrimeField& F = section_ideal.ring->field;
  const int n = section_ideal.ring->nvars();
  if (static_cast<int>(a.coords.size()) + 3 != n)
    throw Error("fiber point must have three fewer coordinates than the section ring");
  std::vector<ProjectivePoint> pts;
  std::vector<uint32_t> v(static_cast<size_t>(n), 0);
  std::copy(a.coords.begin(), a.coords.end(), v.begin());
  for (uint32_t w5 = 0; w5 < F.p(); ++w5)
    for (uint32_t w6 = 0; w6 < F.p(); ++w6)
      for (uint32_t w7 = 0; w7 < F.p(); ++w7) {
        v[static_cast<size_t>(n) - 3] = w5;
        v[static_cast<size_t>(n) - 2] = w6;
        v[static_cast<size_t>(n) - 1] = w7;
        if (all_gens_vanish(section_ideal.gens, v))
          pts.push_back(ProjectivePoint::normalized(F, v));
      }
  return pts;
}

std::vector<ProjectivePoint> fiber_points(const ProjectivePoint& a, const SectionInput& in) {
  return fiber_points(a, k3_section(in));
}

CremonaMap cremona_from_ideal(const Ideal& surface_ideal) {
  const Ring& R = surface_ideal.ring;
  if (R->nvars() != 5) throw Error("surface ideal must live in five variables");
  auto mons = monomials_of_degree(5, 4);
  auto index = index_monomials(mons, 5);
  EchelonSpan span(R->field, mons.size());
  for (const Poly& g : surface_ideal.gens) {
    int d = g.degree();
    if (d > 4 || d < 0) continue;
    for (const Monomial& m : monomials_of_degree(5, 4 - d))
      span.add(coeff_vector(g.times_monomial(m), mons, index));
  }
  if (span.dim() != 5) {
    std::ostringstream msg;
    msg << "degree-4 piece of the surface ideal has dimension " << span.dim() << ", expected 5";
    throw Error(msg.str());
  }
  CremonaMap f;
  for (const auto& row : span.rref_basis()) f.forms.push_back(poly_from_vector(R, mons, row));
  f.validate();
  return f;
}

std::optional<Poly> composition_factor(const CremonaMap& outer, const CremonaMap& inner) {
  outer.validate();
  inner.validate();
  const Ring& Rx = inner.ring();
  const int d = outer.degree();
  auto mons = monomials_of_degree(5, d);
  auto index = index_monomials(mons, 5);
  std::vector<Poly> powers = power_products(inner.forms, d);
  std::vector<Poly> comp;
  for (const Poly& c : outer.forms) {
    Poly acc = Poly::zero(Rx);
    for (const Term& t : c.terms()) {
      auto it = index.find(pack_exponents(t.mon, 5));
      if (it == index.end()) return std::nullopt;
      acc = acc + powers[static_cast<size_t>(it->second)].scaled(t.coeff);
    }
    comp.push_back(acc);
  }
  Poly factor = Poly::zero(Rx);
  try {
    factor = comp[0].divided_by_monomial(Monomial::var(5, 0));
  } catch (const Error&) {
    return std::nullopt;
  }
  for (int i = 0; i < 5; ++i)
    if (comp[static_cast<size_t>(i)] != factor.times_monomial(Monomial::var(5, i)))
      return std::nullopt;
  return factor;
}

Poly jacobian_determinant(const CremonaMap& f) {
  f.validate();
  const Ring& R = f.ring();
  std::vector<std::vector<Poly>> m(5, std::vector<Poly>(5, Poly::zero(R)));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = f.forms[static_cast<size_t>(i)].partial(j);
  std::map<uint32_t, Poly> memo;
  return det_minor(m, 0, (1u << 5) - 1, memo, R);
}

namespace {

FpMatrix build_inversion_system(const CremonaMap& f, int degree,
                                const std::vector<Poly>& powers) {
  const PrimeField& F = f.ring()->field;
  const int n = f.degree();
  const int w = static_cast<int>(monomials_of_degree(5, degree).size());
  auto row_mons = monomials_of_degree(5, n * degree + 1);
  auto row_index = index_monomials(row_mons, 5);

  FpMatrix A(F, row_mons.size(), static_cast<size_t>(5 * w));
  for (int slot = 0; slot < 5; ++slot) {
    Monomial xs = Monomial::var(5, slot);
    for (int a = 0; a < w; ++a) {
      size_t col = static_cast<size_t>(slot * w + a);
      for (const Term& t : powers[static_cast<size_t>(a)].terms()) {
        int row = row_index.at(pack_exponents(t.mon.mul(xs), 5));
        A.at(static_cast<size_t>(row), col) = static_cast<uint16_t>(t.coeff);
      }
    }
  }
  return A;
}

}  // namespace

Poly compose_with(const Poly& c, const CremonaMap& f) {
  f.validate();
  if (c.is_zero()) return Poly::zero(f.ring());
  if (c.ring()->nvars() != 5) throw Error("composition needs a five-variable form");
  auto hd = c.homogeneous_degree();
  if (!hd) throw Error("composition needs a homogeneous form");
  auto mons = monomials_of_degree(5, *hd);
  auto index = index_monomials(mons, 5);
  auto powers = power_products(f.forms, *hd);
  Poly acc = Poly::zero(f.ring());
  for (const Term& t : c.terms())
    acc = acc + powers[static_cast<size_t>(index.at(pack_exponents(t.mon, 5)))].scaled(t.coeff);
  return acc;
}

FpMatrix inversion_system(const CremonaMap& f, int degree) {
  f.validate();
  if (degree < 1) throw Error("inversion system needs a positive degree");
  return build_inversion_system(f, degree, power_products(f.forms, degree));
}

InversionResult invert_cremona(const CremonaMap& f, int inverse_degree) {
  f.validate();
  const Ring& Rx = f.ring();
  const PrimeField& F = Rx->field;
  const int n = f.degree();
  std::vector<int> degrees;
  if (inverse_degree > 0)
    degrees = {inverse_degree};
  else
    degrees = {1, 2, 3, 4};

  std::ostringstream attempts;
  for (int xi : degrees) {
    auto unknown_mons = monomials_of_degree(5, xi);
    const int w = static_cast<int>(unknown_mons.size());
    std::vector<Poly> powers = power_products(f.forms, xi);
    auto row_mons = monomials_of_degree(5, n * xi);
    auto row_index = index_monomials(row_mons, 5);

    // Slot i: forms c of degree xi with c(f) == 0 modulo x_i, i.e. c
    // vanishing on the image of the hyperplane {x_i = 0}.  The inverse form
    // g_i always solves this; a one-dimensional solution space pins it.
    bool extracted = true;
    std::vector<std::vector<uint16_t>> candidate(5);
    attempts << " degree " << xi << ": slot solution dimensions";
    for (int slot = 0; slot < 5; ++slot) {
      FpMatrix A(F, row_mons.size(), static_cast<size_t>(w));
      for (int a = 0; a < w; ++a)
        for (const Term& t : powers[static_cast<size_t>(a)].terms())
          if (t.mon.e[static_cast<size_t>(slot)] == 0) {
            int row = row_index.at(pack_exponents(t.mon, 5));
            A.at(static_cast<size_t>(row), static_cast<size_t>(a)) =
                static_cast<uint16_t>(t.coeff);
          }
      auto ker = A.kernel_basis();
      attempts << (slot ? "," : " ") << ker.size();
      if (ker.size() == 1)
        candidate[static_cast<size_t>(slot)] = ker[0];
      else
        extracted = false;
    }
    if (!extracted) {
      attempts << ";";
      continue;
    }

    Ring Ry = make_ring(F.p(), "y", 5);
    std::vector<Poly> comp(5, Poly::zero(Rx));
    for (int i = 0; i < 5; ++i)
      for (int a = 0; a < w; ++a)
        if (candidate[static_cast<size_t>(i)][static_cast<size_t>(a)])
          comp[static_cast<size_t>(i)] =
              comp[static_cast<size_t>(i)] +
              powers[static_cast<size_t>(a)].scaled(candidate[static_cast<size_t>(i)][static_cast<size_t>(a)]);

    bool factored = true;
    Poly scale = Poly::zero(Rx);
    std::vector<uint32_t> slot_scale(5, 1);
    for (int i = 0; i < 5 && factored; ++i) {
      Poly di = Poly::zero(Rx);
      try {
        di = comp[static_cast<size_t>(i)].divided_by_monomial(Monomial::var(5, i));
      } catch (const Error&) {
        attempts << ", slot " << i << " composition not divisible;";
        factored = false;
        break;
      }
      if (di.is_zero()) {
        attempts << ", slot " << i << " composition vanished;";
        factored = false;
        break;
      }
      if (i == 0) scale = di.monic();
      if (di.monic() != scale) {
        attempts << ", slot " << i << " scale factor differs;";
        factored = false;
        break;
      }
      slot_scale[static_cast<size_t>(i)] = F.inv(di.leading().coeff);
    }
    if (!factored) continue;

    CremonaMap g;
    for (int i = 0; i < 5; ++i) {
      Poly form = poly_from_vector(Ry, unknown_mons, candidate[static_cast<size_t>(i)]);
      g.forms.push_back(form.scaled(slot_scale[static_cast<size_t>(i)]));
    }
    g.validate();

    Poly det = jacobian_determinant(f);
    if (det.is_zero() || det.monic() != scale)
      throw Error("inverse extracted but the scale factor is not proportional to det(Df)");

    FpMatrix full = build_inversion_system(f, xi, powers);
    int k = 5 * w - static_cast<int>(full.rank());
    return InversionResult{std::move(g), std::move(scale), k};
  }
  throw Error("inverse extraction failed:" + attempts.str());
}

Ideal base_locus(const CremonaMap& f) {
  f.validate();
  Ideal I(f.ring(), f.forms);
  return saturate(I, irrelevant_ideal(f.ring()));
}

Poly degree_part(const Poly& f, int d) {
  std::vector<Term> ts;
  for (const Term& t : f.terms())
    if (t.mon.deg == d) ts.push_back(t);
  return Poly(f.ring(), f.order(), std::move(ts));
}

NodeCertificate certify_node(const Ideal& I, const ProjectivePoint& pt) {
  const Ring& R = I.ring;
  const PrimeField& F = R->field;
  const int n = R->nvars();
  NodeCertificate cert;
  cert.point = pt;
  cert.jacobian_rank = jacobian_rank_at(I, pt);

  int chart = 0;
  while (chart < n && pt.coords[static_cast<size_t>(chart)] == 0) ++chart;
  if (chart == n) throw Error("cannot certify the zero vector");

  std::vector<int> local;  // variables of the chart around the point
  for (int j = 0; j < n; ++j)
    if (j != chart) local.push_back(j);

  cert.local_parts_vanish = true;
  std::vector<Poly> quad_parts;
  for (const Poly& g : I.gens) {
    Poly loc = dehomogenize_at(g, pt.coords, chart);
    if (!degree_part(loc, 0).is_zero() || !degree_part(loc, 1).is_zero())
      cert.local_parts_vanish = false;
    Poly q = degree_part(loc, 2);
    if (!q.is_zero()) quad_parts.push_back(q);
  }

  // Points of the projectivized tangent cone: common zeros of the quadratic
  // parts over the local coordinate directions.
  std::set<std::vector<uint32_t>> cone;
  for_each_projective(F, n - 1, [&](const std::vector<uint32_t>& dir) {
    std::vector<uint32_t> v(static_cast<size_t>(n), 0);
    for (size_t k = 0; k < local.size(); ++k) v[static_cast<size_t>(local[k])] = dir[k];
    for (const Poly& q : quad_parts)
      if (q.eval(v) != 0) return;
    cone.insert(dir);
  });
  cert.tangent_point_count = static_cast<int>(cone.size());

  cert.two_disjoint_lines = false;
  if (cone.size() == 2 * (F.p() + 1)) {
    std::vector<std::vector<uint32_t>> pts(cone.begin(), cone.end());
    const auto& u = pts[0];
    for (size_t c = 1; c < pts.size() && !cert.two_disjoint_lines; ++c) {
      auto l1 = line_points(F, u, pts[c]);
      bool inside = std::all_of(l1.begin(), l1.end(),
                                [&](const auto& q) { return cone.count(q) > 0; });
      if (!inside) continue;
      std::set<std::vector<uint32_t>> rest;
      for (const auto& q : cone)
        if (!l1.count(q)) rest.insert(q);
      if (rest.size() != F.p() + 1) continue;
      auto it = rest.begin();
      const auto& u2 = *it;
      const auto& v2 = *std::next(it);
      if (line_points(F, u2, v2) == rest) cert.two_disjoint_lines = true;
    }
  }
  return cert;
}

bool vanishes_to_order(const Poly& f, const ProjectivePoint& pt, int order) {
  const int n = f.ring()->nvars();
  // (poly, first differentiable variable) pairs per level, avoiding duplicate
  // mixed partials.
  std::vector<std::pair<Poly, int>> level = {{f, 0}};
  for (int k = 0; k <= order; ++k) {
    for (const auto& [g, minvar] : level)
      if (g.eval(pt.coords) != 0) return false;
    if (k == order) break;
    std::vector<std::pair<Poly, int>> next;
    for (const auto& [g, minvar] : level)
      for (int j = minvar; j < n; ++j) {
        Poly d = g.partial(j);
        if (!d.is_zero()) next.push_back({d, j});
      }
    level = std::move(next);
  }
  return true;
}

PipelineSummary run_pipeline(const SectionInput& in) {
  in.validate();
  PipelineSummary s;
  s.input = in;
  const PrimeField F(in.prime);
  const long long p = in.prime;

  s.section_ideal = k3_section(in);
  s.section_hilbert = hilbert_data(s.section_ideal);
  s.surface_ideal = project_to_p4(s.section_ideal);
  s.surface_hilbert = hilbert_data(s.surface_ideal);
  for (int t = 1; t <= 4; ++t)
    s.surface_piece_dims.push_back(graded_piece_dimension(s.surface_ideal, t));

  s.forward = cremona_from_ideal(s.surface_ideal);
  InversionResult inv = invert_cremona(s.forward);
  s.inverse = inv.inverse;
  s.forward_scale = inv.scale;
  s.kernel_dimension = inv.kernel_dimension;
  auto back = composition_factor(s.forward, s.inverse);
  if (!back) throw Error("round-trip composition does not factor through the identity");
  s.inverse_scale = *back;

  s.inverse_surface_ideal = base_locus(s.inverse);
  s.inverse_surface_hilbert = hilbert_data(s.inverse_surface_ideal);
  for (int t = 1; t <= 4; ++t)
    s.inverse_piece_dims.push_back(graded_piece_dimension(s.inverse_surface_ideal, t));

  Ideal irr = irrelevant_ideal(s.surface_ideal.ring);
  Ideal forward_ideal(s.surface_ideal.ring, s.forward.forms);
  s.scheme_cut = ideals_equal(saturate(forward_ideal, irr), saturate(s.surface_ideal, irr));

  std::vector<ProjectivePoint> surface_pts = rational_points(s.surface_ideal);
  std::vector<ProjectivePoint> section_pts = rational_points(s.section_ideal);
  std::vector<ProjectivePoint> inverse_pts = rational_points(s.inverse_surface_ideal);
  s.surface_points = static_cast<long long>(surface_pts.size());
  s.section_points = static_cast<long long>(section_pts.size());
  s.inverse_surface_points = static_cast<long long>(inverse_pts.size());
  s.center_points = center_plane_points(s.section_ideal);
  s.surface_nodes = singular_points(s.surface_ideal);
  s.inverse_nodes = singular_points(s.inverse_surface_ideal);

  s.forms_vanish_on_surface = true;
  for (const ProjectivePoint& a : surface_pts)
    for (const Poly& f : s.forward.forms)
      if (f.eval(a.coords) != 0) s.forms_vanish_on_surface = false;

  long long accounted = static_cast<long long>(s.center_points.size());
  std::set<std::vector<uint32_t>> node_set;
  for (const ProjectivePoint& nd : s.surface_nodes) node_set.insert(nd.coords);
  std::vector<ProjectivePoint> all_fiber_pts;
  s.node_fibers.assign(s.surface_nodes.size(), {});
  for (const ProjectivePoint& a : surface_pts) {
    auto fib = fiber_points(a, s.section_ideal);
    accounted += static_cast<long long>(fib.size());
    if (node_set.count(a.coords)) {
      for (size_t k = 0; k < s.surface_nodes.size(); ++k)
        if (s.surface_nodes[k] == a) s.node_fibers[k] = fib;
      for (const ProjectivePoint& q : fib) all_fiber_pts.push_back(q);
    }
  }
  s.fiber_accounting = accounted == s.section_points;
  s.scissor_count = s.surface_points == s.section_points + 3 * p - 3;
  s.counts_match = s.inverse_surface_points == s.surface_points;

  for (const ProjectivePoint& nd : s.surface_nodes)
    s.surface_node_certificates.push_back(certify_node(s.surface_ideal, nd));
  for (const ProjectivePoint& nd : s.inverse_nodes)
    s.inverse_node_certificates.push_back(certify_node(s.inverse_surface_ideal, nd));

  s.multiplicity_four = true;
  {
    std::vector<ProjectivePoint> sample = s.surface_nodes;
    for (const ProjectivePoint& a : surface_pts) {
      if (sample.size() >= s.surface_nodes.size() + 20) break;
      if (!node_set.count(a.coords)) sample.push_back(a);
    }
    for (const ProjectivePoint& a : sample)
      if (!vanishes_to_order(s.forward_scale, a, 3)) s.multiplicity_four = false;
  }

  s.smoothness_spot = true;
  {
    std::vector<ProjectivePoint> sample = all_fiber_pts;
    if (!section_pts.empty())
      for (int k = 0; k < 50; ++k)
        sample.push_back(section_pts[static_cast<size_t>(k) * section_pts.size() / 50]);
    for (const ProjectivePoint& q : sample)
      if (jacobian_rank_at(s.section_ideal, q) != 5) s.smoothness_spot = false;
  }
  return s;
}

}  // namespace cremona::k3
