#include "cremona/groebner.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cremona/fpmatrix.hpp"

namespace cremona {

Ideal::Ideal(Ring r, std::vector<Poly> g, bool require_homogeneous) : ring(std::move(r)) {
  for (auto& f : g) {
    if (f.is_zero()) continue;
    if (!same_ring(f.ring(), ring)) throw Error("Ideal: generator from a different ring");
    if (require_homogeneous && !f.homogeneous_degree())
      throw Error("Ideal: inhomogeneous generator " + f.str());
    gens.push_back(f.with_order(MonomialOrder::drl()));
  }
}

Ideal irrelevant_ideal(const Ring& ring) {
  std::vector<Poly> gens;
  for (int i = 0; i < ring->nvars(); ++i) gens.push_back(Poly::variable(ring, i));
  return Ideal(ring, std::move(gens));
}

// ---------------------------------------------------------------------------
// division / normal forms

// Fully reduce f against basis (every term, not only the lead). Divisor
// search scans the basis in order, so the result is deterministic.
static Poly reduce_full(Poly f, const std::vector<Poly>& basis) {
  const Ring ring = f.ring();
  const PrimeField& F = ring->field;
  Poly out = Poly::zero(ring, f.order());
  while (!f.is_zero()) {
    const Term lt = f.leading();
    bool hit = false;
    for (const Poly& g : basis) {
      if (g.is_zero()) continue;
      const Term& gl = g.leading();
      if (gl.mon.divides(lt.mon)) {
        uint32_t c = F.mul(lt.coeff, F.inv(gl.coeff));
        f = f - g.times_monomial(lt.mon.div(gl.mon), c);
        hit = true;
        break;
      }
    }
    if (!hit) {
      // move the irreducible lead into the result
      out = out + Poly::monomial(ring, lt.mon, lt.coeff, f.order());
      f = f - Poly::monomial(ring, lt.mon, lt.coeff, f.order());
    }
  }
  return out;
}

// Top-reduction only: stop as soon as the leading monomial is irreducible.
static Poly reduce_top(Poly f, const std::vector<Poly>& basis) {
  const PrimeField& F = f.ring()->field;
  while (!f.is_zero()) {
    const Term lt = f.leading();
    bool hit = false;
    for (const Poly& g : basis) {
      if (g.is_zero()) continue;
      const Term& gl = g.leading();
      if (gl.mon.divides(lt.mon)) {
        uint32_t c = F.mul(lt.coeff, F.inv(gl.coeff));
        f = f - g.times_monomial(lt.mon.div(gl.mon), c);
        hit = true;
        break;
      }
    }
    if (!hit) break;
  }
  return f;
}

static Poly spoly(const Poly& f, const Poly& g) {
  const PrimeField& F = f.ring()->field;
  Monomial l = f.leading().mon.lcm(g.leading().mon);
  Poly a = f.times_monomial(l.div(f.leading().mon), F.inv(f.leading().coeff));
  Poly b = g.times_monomial(l.div(g.leading().mon), F.inv(g.leading().coeff));
  return a - b;
}

// ---------------------------------------------------------------------------
// Buchberger

namespace {

struct Pair {
  int i, j;           // i < j
  Monomial lcm;
  bool operator<(const Pair& o) const = delete;
};

}  // namespace

GroebnerBasis buchberger(const Ideal& I, MonomialOrder order) {
  const Ring& ring = I.ring;
  std::vector<Poly> G;
  for (const Poly& f : I.gens) {
    Poly g = f.with_order(order);
    if (!g.is_zero()) G.push_back(g.monic());
  }

  // pending pairs, keyed deterministically: (lcm degree, lcm, i, j)
  auto pair_less = [&](const Pair& a, const Pair& b) {
    if (a.lcm.deg != b.lcm.deg) return a.lcm.deg < b.lcm.deg;
    int c = order.compare(a.lcm, b.lcm);
    if (c) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  std::vector<Pair> queue;
  std::set<std::pair<int, int>> treated;  // popped or discarded by a criterion

  auto push_pairs_for = [&](int t) {
    for (int i = 0; i < t; ++i) queue.push_back({i, t, G[i].leading().mon.lcm(G[t].leading().mon)});
  };
  for (int t = 1; t < static_cast<int>(G.size()); ++t) push_pairs_for(t);

  auto is_treated = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    return treated.count({a, b}) > 0;
  };

  while (!queue.empty()) {
    auto it = std::min_element(queue.begin(), queue.end(), pair_less);
    Pair pr = *it;
    queue.erase(it);
    treated.insert({pr.i, pr.j});

    const Monomial &mi = G[pr.i].leading().mon, &mj = G[pr.j].leading().mon;
    // coprime-lead criterion
    if (mi.coprime(mj)) continue;
    // chain criterion: some k with lead | lcm(i,j) and both flanking pairs done
    bool skip = false;
    for (int k = 0; k < static_cast<int>(G.size()) && !skip; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (G[k].leading().mon.divides(pr.lcm) && is_treated(pr.i, k) && is_treated(pr.j, k))
        skip = true;
    }
    if (skip) continue;

    Poly r = reduce_top(spoly(G[pr.i], G[pr.j]), G);
    if (r.is_zero()) continue;
    G.push_back(r.monic());
    push_pairs_for(static_cast<int>(G.size()) - 1);
  }

  // interreduce to the unique reduced basis
  // 1. drop elements whose lead is divisible by another element's lead
  std::vector<Poly> minimal;
  for (size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial &a = G[j].leading().mon, &b = G[i].leading().mon;
      if (a.divides(b) && !(a == b && j > i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  // 2. tail-reduce everything until stable
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < minimal.size(); ++i) {
      std::vector<Poly> others;
      others.reserve(minimal.size() - 1);
      for (size_t j = 0; j < minimal.size(); ++j)
        if (j != i) others.push_back(minimal[j]);
      Poly r = reduce_full(minimal[i], others).monic();
      if (!(r == minimal[i])) {
        minimal[i] = r;
        changed = true;
      }
    }
  }
  std::sort(minimal.begin(), minimal.end(), [&](const Poly& a, const Poly& b) {
    return order.less(a.leading().mon, b.leading().mon);
  });

  return GroebnerBasis{ring, order, std::move(minimal)};
}

Poly normal_form(const Poly& f, const GroebnerBasis& G) {
  if (!same_ring(f.ring(), G.ring)) throw Error("normal_form: ring mismatch");
  return reduce_full(f.with_order(G.order), G.elems).with_order(f.order());
}

bool ideal_contains(const GroebnerBasis& G, const Poly& f) {
  return normal_form(f, G).is_zero();
}

bool ideals_equal(const Ideal& A, const Ideal& B) {
  if (!same_ring(A.ring, B.ring)) return false;
  GroebnerBasis GA = buchberger(A), GB = buchberger(B);
  for (const Poly& f : A.gens)
    if (!ideal_contains(GB, f)) return false;
  for (const Poly& g : B.gens)
    if (!ideal_contains(GA, g)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// elimination

// Map a polynomial through a variable permutation: new index i reads old
// index perm[i].
static Poly permute_vars(const Poly& f, const Ring& target, const std::vector<int>& perm) {
  std::vector<Term> ts;
  ts.reserve(f.size());
  const int n = target->nvars();
  for (const auto& t : f.terms()) {
    Monomial m = Monomial::one(n);
    int d = 0;
    for (int i = 0; i < n; ++i) {
      m.e[i] = t.mon.e[perm[i]];
      d += m.e[i];
    }
    m.deg = static_cast<uint16_t>(d);
    ts.push_back({m, t.coeff});
  }
  return Poly(target, MonomialOrder::drl(), std::move(ts));
}

Ideal eliminate(const Ideal& I, const std::vector<int>& keep) {
  const Ring& ring = I.ring;
  const int n = ring->nvars();
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw Error("eliminate: variable index out of range");
    if (kept[k]) throw Error("eliminate: duplicate variable index");
    kept[k] = true;
  }
  std::vector<int> dropped;
  for (int i = 0; i < n; ++i)
    if (!kept[i]) dropped.push_back(i);

  // permuted ring: dropped variables first, kept variables after
  std::vector<int> perm = dropped;
  std::vector<int> keep_sorted;
  for (int i = 0; i < n; ++i)
    if (kept[i]) keep_sorted.push_back(i);
  perm.insert(perm.end(), keep_sorted.begin(), keep_sorted.end());

  std::vector<std::string> pnames;
  for (int i : perm) pnames.push_back(ring->vars[i]);
  Ring pring = make_ring(ring->field.p(), pnames);

  std::vector<Poly> pgens;
  for (const Poly& f : I.gens) pgens.push_back(permute_vars(f, pring, perm));
  Ideal pI(pring, std::move(pgens), /*require_homogeneous=*/false);

  MonomialOrder ord = dropped.empty() ? MonomialOrder::drl()
                                      : MonomialOrder::block(static_cast<int>(dropped.size()));
  GroebnerBasis G = buchberger(pI, ord);

  // subring of kept variables (original relative order)
  std::vector<std::string> knames;
  for (int i : keep_sorted) knames.push_back(ring->vars[i]);
  Ring kring = make_ring(ring->field.p(), knames);
  const int ndrop = static_cast<int>(dropped.size());

  std::vector<Poly> kept_gens;
  for (const Poly& g : G.elems) {
    bool pure = true;
    for (const auto& t : g.terms())
      for (int i = 0; i < ndrop && pure; ++i)
        if (t.mon.e[i]) pure = false;
    if (!pure) continue;
    std::vector<Term> ts;
    for (const auto& t : g.terms()) {
      Monomial m = Monomial::one(kring->nvars());
      int d = 0;
      for (int i = 0; i < kring->nvars(); ++i) {
        m.e[i] = t.mon.e[ndrop + i];
        d += m.e[i];
      }
      m.deg = static_cast<uint16_t>(d);
      ts.push_back({m, t.coeff});
    }
    kept_gens.push_back(Poly(kring, MonomialOrder::drl(), std::move(ts)));
  }
  return Ideal(kring, std::move(kept_gens), /*require_homogeneous=*/false);
}

// ---------------------------------------------------------------------------
// quotient and saturation

static Poly divide_exact(const Poly& f, const Poly& h) {
  const PrimeField& F = f.ring()->field;
  Poly rem = f, q = Poly::zero(f.ring(), f.order());
  while (!rem.is_zero()) {
    const Term lt = rem.leading();
    if (!h.leading().mon.divides(lt.mon))
      throw Error("divide_exact: not divisible");
    uint32_t c = F.mul(lt.coeff, F.inv(h.leading().coeff));
    Monomial m = lt.mon.div(h.leading().mon);
    q = q + Poly::monomial(f.ring(), m, c, f.order());
    rem = rem - h.times_monomial(m, c);
  }
  return q;
}

Ideal quotient(const Ideal& I, const Poly& h) {
  if (h.is_zero()) throw Error("quotient: zero divisor polynomial");
  const Ring& ring = I.ring;
  if (I.gens.empty()) return I;

  // ring with a fresh tag variable in front
  std::vector<std::string> names;
  names.push_back("t@");
  for (const auto& v : ring->vars) names.push_back(v);
  Ring tring = make_ring(ring->field.p(), names);

  std::vector<std::vector<uint32_t>> emb(tring->nvars(), std::vector<uint32_t>(ring->nvars(), 0));
  for (int i = 0; i < ring->nvars(); ++i) emb[i + 1][i] = 1;

  auto lift_poly = [&](const Poly& f) { return substitute_linear(f, tring, emb); };

  Poly t = Poly::variable(tring, 0);
  Poly one = Poly::constant(tring, 1);
  std::vector<Poly> gens;
  for (const Poly& g : I.gens) gens.push_back(t * lift_poly(g));
  gens.push_back((one - t) * lift_poly(h));
  Ideal tI(tring, std::move(gens), /*require_homogeneous=*/false);

  std::vector<int> keep;
  for (int i = 1; i < tring->nvars(); ++i) keep.push_back(i);
  Ideal inter = eliminate(tI, keep);  // I  intersect  <h>, in a fresh copy of `ring`

  std::vector<Poly> qgens;
  Poly hh = h.with_order(MonomialOrder::drl());
  for (const Poly& g : rename_variables(inter, ring).gens)
    qgens.push_back(divide_exact(g, hh));
  return Ideal(ring, std::move(qgens), /*require_homogeneous=*/false);
}

Ideal quotient(const Ideal& I, const Ideal& J) {
  if (J.gens.empty()) throw Error("quotient: quotient by the zero ideal");
  bool first = true;
  Ideal acc;
  for (const Poly& h : J.gens) {
    Ideal q = quotient(I, h);
    if (first) {
      acc = q;
      first = false;
      continue;
    }
    // intersect acc with q via the tag construction
    std::vector<std::string> names;
    names.push_back("t@");
    for (const auto& v : I.ring->vars) names.push_back(v);
    Ring tring = make_ring(I.ring->field.p(), names);
    std::vector<std::vector<uint32_t>> emb(tring->nvars(),
                                           std::vector<uint32_t>(I.ring->nvars(), 0));
    for (int i = 0; i < I.ring->nvars(); ++i) emb[i + 1][i] = 1;
    Poly t = Poly::variable(tring, 0);
    Poly one_minus_t = Poly::constant(tring, 1) - t;
    std::vector<Poly> gens;
    for (const Poly& g : acc.gens) gens.push_back(t * substitute_linear(g, tring, emb));
    for (const Poly& g : q.gens) gens.push_back(one_minus_t * substitute_linear(g, tring, emb));
    std::vector<int> keep;
    for (int i = 1; i < tring->nvars(); ++i) keep.push_back(i);
    acc = rename_variables(
        eliminate(Ideal(tring, std::move(gens), false), keep), I.ring);
  }
  return acc;
}

Ideal saturate(const Ideal& I, const Ideal& J) {
  Ideal cur = I;
  for (int round = 0; round < 64; ++round) {
    Ideal next = quotient(cur, J);
    if (ideals_equal(next, cur)) return cur;
    cur = next;
  }
  throw Error("saturate: did not stabilize");
}

// ---------------------------------------------------------------------------
// Hilbert series machinery

static std::vector<bigint> poly_mul_1_minus_t(const std::vector<bigint>& a) {
  std::vector<bigint> r(a.size() + 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    r[i] += a[i];
    r[i + 1] -= a[i];
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

static void trim(std::vector<bigint>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// minimal generators: drop duplicates and multiples
static std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::vector<Monomial> out;
  for (size_t i = 0; i < gens.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < gens.size() && !redundant; ++j) {
      if (i == j) continue;
      if (gens[j].divides(gens[i]) && !(gens[j] == gens[i] && j > i)) redundant = true;
    }
    if (!redundant) out.push_back(gens[i]);
  }
  return out;
}

// numerator of HS_{R/<gens>} over (1-t)^nvars, by pivot recursion on a most
// frequent variable: N(G) = (1-t) N(G without v) + t N(G : x_v)
static std::vector<bigint> hilbert_numerator(std::vector<Monomial> gens, int nvars) {
  gens = minimalize(std::move(gens));
  if (gens.empty()) return {1};
  for (const auto& g : gens)
    if (g.is_one()) return {};  // unit ideal: zero series

  // pairwise coprime --> product of (1 - t^deg)
  bool coprime = true;
  for (size_t i = 0; i < gens.size() && coprime; ++i)
    for (size_t j = i + 1; j < gens.size() && coprime; ++j)
      if (!gens[i].coprime(gens[j])) coprime = false;
  if (coprime) {
    std::vector<bigint> r{1};
    for (const auto& g : gens) {
      std::vector<bigint> f(g.deg + 1, 0);
      f[0] = 1;
      f[g.deg] -= 1;
      std::vector<bigint> nr(r.size() + f.size() - 1, 0);
      for (size_t a = 0; a < r.size(); ++a)
        for (size_t b = 0; b < f.size(); ++b) nr[a + b] += r[a] * f[b];
      trim(nr);
      r = std::move(nr);
    }
    return r;
  }

  // pivot on the variable hitting the most generators
  std::vector<int> freq(nvars, 0);
  for (const auto& g : gens)
    for (int v = 0; v < nvars; ++v)
      if (g.e[v]) ++freq[v];
  int pivot = static_cast<int>(std::max_element(freq.begin(), freq.end()) - freq.begin());

  std::vector<Monomial> without, colon;
  for (const auto& g : gens) {
    if (g.e[pivot] == 0) without.push_back(g);
    Monomial c = g;
    if (c.e[pivot]) {
      c.e[pivot] -= 1;
      c.deg -= 1;
    }
    colon.push_back(c);
  }
  std::vector<bigint> a = poly_mul_1_minus_t(hilbert_numerator(std::move(without), nvars));
  std::vector<bigint> b = hilbert_numerator(std::move(colon), nvars);
  std::vector<bigint> r(std::max(a.size(), b.size() + 1), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i + 1] += b[i];
  trim(r);
  return r;
}

Rational HilbertData::hp_at(const bigint& t) const {
  Rational acc(0);
  for (size_t k = hilbert_polynomial.size(); k-- > 0;)
    acc = acc * Rational(t) + hilbert_polynomial[k];
  return acc;
}

std::string HilbertData::hp_str() const {
  if (hilbert_polynomial.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t k = hilbert_polynomial.size(); k-- > 0;) {
    const Rational& c = hilbert_polynomial[k];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0) {
      os << c.str();
    } else {
      if (!(c == Rational(1))) os << c.str() << "*";
      os << "t";
      if (k > 1) os << "^" << k;
    }
  }
  if (first) return "0";
  return os.str();
}

static HilbertData hilbert_from_lt(const std::vector<Monomial>& leads, int nvars) {
  HilbertData H;
  H.numerator = hilbert_numerator(leads, nvars);

  if (H.numerator.empty()) {  // unit ideal
    H.reduced_numerator = {};
    H.krull_dim = 0;
    H.dimension = -1;
    H.degree = 0;
    return H;
  }

  // strip (1-t) factors: N(1) == 0 means divisible
  std::vector<bigint> n1 = H.numerator;
  int e = 0;
  auto value_at_1 = [](const std::vector<bigint>& v) {
    bigint s = 0;
    for (const auto& c : v) s += c;
    return s;
  };
  while (!n1.empty() && value_at_1(n1) == 0) {
    // divide by (1 - t): q_k = sum_{i<=k} n_i
    std::vector<bigint> q(n1.size() - 1, 0);
    bigint run = 0;
    for (size_t k = 0; k + 1 < n1.size(); ++k) {
      run += n1[k];
      q[k] = run;
    }
    n1 = std::move(q);
    trim(n1);
    ++e;
  }
  H.reduced_numerator = n1;
  H.krull_dim = nvars - e;
  H.dimension = H.krull_dim - 1;
  H.degree = value_at_1(n1);

  // Hilbert polynomial: sum_j N1[j] * binom(t - j + D - 1, D - 1), D = krull_dim
  int D = H.krull_dim;
  if (D <= 0) {
    H.hilbert_polynomial = {};
    return H;
  }
  std::vector<Rational> hp(D, Rational(0));
  for (size_t j = 0; j < n1.size(); ++j) {
    if (n1[j] == 0) continue;
    // product (t - j + D - 1 - i) for i = 0..D-2, divided by (D-1)!
    std::vector<Rational> term{Rational(1)};
    for (int i = 0; i <= D - 2; ++i) {
      bigint c = bigint(D - 1) - bigint(j) - bigint(i);
      std::vector<Rational> nt(term.size() + 1, Rational(0));
      for (size_t k = 0; k < term.size(); ++k) {
        nt[k + 1] = nt[k + 1] + term[k];
        nt[k] = nt[k] + term[k] * Rational(c);
      }
      term = std::move(nt);
    }
    bigint fact = 1;
    for (int i = 2; i <= D - 1; ++i) fact *= i;
    for (size_t k = 0; k < term.size() && k < hp.size(); ++k)
      hp[k] = hp[k] + term[k] * Rational(n1[j], fact);
  }
  while (!hp.empty() && hp.back().is_zero()) hp.pop_back();
  H.hilbert_polynomial = hp;

  // invariant: degree = leading coefficient * dimension!
  if (!hp.empty()) {
    bigint fact = 1;
    for (int i = 2; i <= H.dimension; ++i) fact *= i;
    Rational check = hp.back() * Rational(fact);
    if (!(check == Rational(H.degree)))
      throw Error("hilbert_data: degree/leading-coefficient invariant violated");
  }
  return H;
}

HilbertData hilbert_data(const GroebnerBasis& G) {
  std::vector<Monomial> leads;
  for (const Poly& g : G.elems) leads.push_back(g.leading().mon);
  return hilbert_from_lt(leads, G.ring->nvars());
}

HilbertData hilbert_data(const Ideal& I) { return hilbert_data(buchberger(I)); }

// ---------------------------------------------------------------------------
// graded pieces and monomial enumeration

static void enumerate_monomials(int nvars, int t, int var, Monomial cur,
                                std::vector<Monomial>& out) {
  if (var == nvars - 1) {
    cur.e[var] = static_cast<uint8_t>(t);
    cur.deg = 0;
    int d = 0;
    for (int i = 0; i < nvars; ++i) d += cur.e[i];
    cur.deg = static_cast<uint16_t>(d);
    out.push_back(cur);
    return;
  }
  for (int e = t; e >= 0; --e) {
    cur.e[var] = static_cast<uint8_t>(e);
    enumerate_monomials(nvars, t - e, var + 1, cur, out);
  }
}

std::vector<Monomial> monomials_of_degree(int nvars, int t) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (t == 0) out.push_back(Monomial::one(0));
    return out;
  }
  Monomial cur = Monomial::one(nvars);
  enumerate_monomials(nvars, t, 0, cur, out);
  MonomialOrder drl = MonomialOrder::drl();
  std::sort(out.begin(), out.end(),
            [&](const Monomial& a, const Monomial& b) { return drl.greater(a, b); });
  return out;
}

int graded_piece_dimension(const Ideal& I, int t) {
  if (t < 0) return 0;
  const Ring& ring = I.ring;
  std::vector<Monomial> basis = monomials_of_degree(ring->nvars(), t);
  std::map<std::vector<uint8_t>, size_t> index;
  for (size_t k = 0; k < basis.size(); ++k) {
    std::vector<uint8_t> key(basis[k].e.begin(), basis[k].e.begin() + ring->nvars());
    index[key] = k;
  }
  EchelonSpan span(ring->field, basis.size());
  for (const Poly& g : I.gens) {
    auto hd = g.homogeneous_degree();
    if (!hd) throw Error("graded_piece_dimension: inhomogeneous generator");
    if (*hd > t) continue;
    for (const Monomial& m : monomials_of_degree(ring->nvars(), t - *hd)) {
      std::vector<uint16_t> row(basis.size(), 0);
      for (const auto& term : g.terms()) {
        Monomial prod = term.mon.mul(m);
        std::vector<uint8_t> key(prod.e.begin(), prod.e.begin() + ring->nvars());
        row[index.at(key)] = static_cast<uint16_t>(term.coeff);
      }
      span.add(std::move(row));
    }
  }
  return static_cast<int>(span.dim());
}

// ---------------------------------------------------------------------------
// text I/O

void write_ideal(const Ideal& I, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("write_ideal: cannot open " + path);
  os << "ring p=" << I.ring->field.p() << " vars=";
  for (int i = 0; i < I.ring->nvars(); ++i) {
    if (i) os << ",";
    os << I.ring->vars[i];
  }
  os << " order=degrevlex\n";
  for (const Poly& g : I.gens) os << g.str() << "\n";
}

Ideal read_ideal(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("read_ideal: cannot open " + path);
  std::string header;
  if (!std::getline(is, header)) throw Error("read_ideal: empty file");
  std::istringstream hs(header);
  std::string tag, ptok, vtok, otok;
  hs >> tag >> ptok >> vtok >> otok;
  if (tag != "ring" || ptok.rfind("p=", 0) != 0 || vtok.rfind("vars=", 0) != 0 ||
      otok.rfind("order=", 0) != 0)
    throw Error("read_ideal: malformed header '" + header + "'");
  uint32_t p = static_cast<uint32_t>(std::stoul(ptok.substr(2)));
  std::vector<std::string> vars;
  std::istringstream vs(vtok.substr(5));
  std::string name;
  while (std::getline(vs, name, ',')) vars.push_back(name);
  MonomialOrder::parse(otok.substr(6));  // validated; storage is always degrevlex
  Ring ring = make_ring(p, vars);
  std::vector<Poly> gens;
  std::string line;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    gens.push_back(Poly::parse(ring, line));
  }
  return Ideal(ring, std::move(gens), /*require_homogeneous=*/false);
}

Ideal rename_variables(const Ideal& I, const Ring& target) {
  if (I.ring->nvars() != target->nvars())
    throw Error("rename_variables: arity mismatch");
  if (I.ring->field.p() != target->field.p())
    throw Error("rename_variables: prime mismatch");
  std::vector<Poly> gens;
  for (const Poly& g : I.gens) {
    std::vector<Term> ts(g.terms().begin(), g.terms().end());
    gens.push_back(Poly(target, MonomialOrder::drl(), std::move(ts)));
  }
  return Ideal(target, std::move(gens), /*require_homogeneous=*/false);
}

}  // namespace cremona
