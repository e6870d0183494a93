#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "cremona/bigint.hpp"
#include "cremona/ffpoly.hpp"
#include "cremona/fpmatrix.hpp"

using namespace cremona;

namespace {

Monomial random_monomial(std::mt19937& rng, int nvars, int max_exp) {
  Monomial m = Monomial::one(nvars);
  std::uniform_int_distribution<int> d(0, max_exp);
  for (int i = 0; i < nvars; ++i) {
    int e = d(rng);
    if (e > 0) m = m.mul(Monomial::var(nvars, i, e));
  }
  return m;
}

Poly random_poly(std::mt19937& rng, const Ring& ring, int max_terms, int max_exp) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> coeff(0, static_cast<int>(ring->field.p()) - 1);
  std::vector<Term> terms;
  int k = nterms(rng);
  for (int i = 0; i < k; ++i)
    terms.push_back({random_monomial(rng, ring->nvars(), max_exp),
                     static_cast<uint32_t>(coeff(rng))});
  return Poly(ring, MonomialOrder::drl(), std::move(terms));
}

Poly random_homogeneous(std::mt19937& rng, const Ring& ring, int deg, int max_terms) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> coeff(1, static_cast<int>(ring->field.p()) - 1);
  std::uniform_int_distribution<int> pick(0, ring->nvars() - 1);
  std::vector<Term> terms;
  int k = nterms(rng);
  for (int i = 0; i < k; ++i) {
    Monomial m = Monomial::one(ring->nvars());
    for (int j = 0; j < deg; ++j) m = m.mul(Monomial::var(ring->nvars(), pick(rng)));
    terms.push_back({m, static_cast<uint32_t>(coeff(rng))});
  }
  return Poly(ring, MonomialOrder::drl(), std::move(terms));
}

std::vector<uint32_t> random_point(std::mt19937& rng, const Ring& ring) {
  std::uniform_int_distribution<int> d(0, static_cast<int>(ring->field.p()) - 1);
  std::vector<uint32_t> pt(ring->nvars());
  for (auto& v : pt) v = static_cast<uint32_t>(d(rng));
  return pt;
}

int sgn(int v) { return (v > 0) - (v < 0); }

}  // namespace

TEST_CASE("prime field arithmetic over F7") {
  PrimeField F(7);
  CHECK(F.p() == 7);
  CHECK(F.reduce(-1) == 6);
  CHECK(F.reduce(15) == 1);
  CHECK(F.add(5, 4) == 2);
  CHECK(F.sub(2, 5) == 4);
  CHECK(F.neg(3) == 4);
  CHECK(F.neg(0) == 0);
  CHECK(F.mul(3, 5) == 1);
  CHECK(F.inv(3) == 5);
  CHECK(F.inv(1) == 1);
  CHECK_THROWS_AS(F.inv(0), Error);
  CHECK(F.pow(3, 6) == 1);  // multiplicative group has order 6
  CHECK(F.pow(3, 0) == 1);
  for (uint32_t a = 1; a < 7; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
}

TEST_CASE("prime field constructor rejects composites") {
  CHECK_THROWS_AS(PrimeField(1), Error);
  CHECK_THROWS_AS(PrimeField(6), Error);
  CHECK_THROWS_AS(PrimeField(91), Error);  // 7 * 13
  CHECK_NOTHROW(PrimeField(2));
  CHECK_NOTHROW(PrimeField(32003));
}

TEST_CASE("Barrett multiplication matches schoolbook reduction") {
  PrimeField F(32003);
  std::mt19937 rng(11);
  std::uniform_int_distribution<uint32_t> d(0, 32002);
  for (int i = 0; i < 2000; ++i) {
    uint32_t a = d(rng), b = d(rng);
    CHECK(F.mul(a, b) == static_cast<uint32_t>((uint64_t(a) * b) % 32003));
  }
}

TEST_CASE("monomial divide, lcm, coprimality") {
  const int n = 4;
  Monomial x = Monomial::var(n, 0), y = Monomial::var(n, 1), z = Monomial::var(n, 2);
  Monomial x2y = x.mul(x).mul(y);
  CHECK(x.divides(x2y));
  CHECK(!z.divides(x2y));
  CHECK(x2y.div(x) == x.mul(y));
  CHECK(x.lcm(y) == x.mul(y));
  CHECK(x2y.lcm(y.mul(z)) == x2y.mul(z));
  CHECK(x.coprime(y));
  CHECK(!x.coprime(x2y));
  CHECK(Monomial::one(n).is_one());
  CHECK(x2y.deg == 3);

  std::mt19937 rng(12);
  for (int i = 0; i < 500; ++i) {
    Monomial a = random_monomial(rng, n, 4), b = random_monomial(rng, n, 4);
    Monomial l = a.lcm(b);
    CHECK(a.divides(l));
    CHECK(b.divides(l));
    CHECK(l.div(a).mul(a) == l);
    Monomial ab = a.mul(b);
    CHECK(ab.deg == a.deg + b.deg);
    CHECK(ab.div(b) == a);
  }
}

TEST_CASE("monomial orders: totality, grading, multiplicative invariance") {
  const int n = 5;
  std::vector<MonomialOrder> orders = {MonomialOrder::drl(), MonomialOrder::lex(),
                                       MonomialOrder::block(2)};
  std::mt19937 rng(13);
  for (const auto& ord : orders) {
    for (int i = 0; i < 800; ++i) {
      Monomial a = random_monomial(rng, n, 3), b = random_monomial(rng, n, 3);
      Monomial c = random_monomial(rng, n, 2);
      CHECK(ord.compare(a, a) == 0);
      CHECK(ord.compare(a, b) == -ord.compare(b, a));
      CHECK((ord.compare(a, b) == 0) == (a == b));
      // translation invariance under multiplication
      CHECK(sgn(ord.compare(a.mul(c), b.mul(c))) == sgn(ord.compare(a, b)));
      // 1 is the minimum
      if (!a.is_one()) CHECK(ord.greater(a, Monomial::one(n)));
    }
  }
  // degrevlex is degree-graded
  MonomialOrder drl = MonomialOrder::drl();
  for (int i = 0; i < 500; ++i) {
    Monomial a = random_monomial(rng, n, 3), b = random_monomial(rng, n, 3);
    if (a.deg != b.deg) CHECK((a.deg > b.deg) == drl.greater(a, b));
  }
}

TEST_CASE("degrevlex order of the degree-2 monomials in three variables") {
  const int n = 3;
  MonomialOrder drl = MonomialOrder::drl();
  Monomial x = Monomial::var(n, 0), y = Monomial::var(n, 1), z = Monomial::var(n, 2);
  std::vector<Monomial> expect = {x.mul(x), x.mul(y), y.mul(y), x.mul(z), y.mul(z), z.mul(z)};
  for (size_t i = 0; i + 1 < expect.size(); ++i) CHECK(drl.greater(expect[i], expect[i + 1]));
}

TEST_CASE("lex and block orders eliminate their leading variables") {
  const int n = 3;
  Monomial x = Monomial::var(n, 0), y5 = Monomial::var(n, 1, 5);
  CHECK(MonomialOrder::lex().greater(x, y5));
  CHECK(MonomialOrder::block(1).greater(x, y5));
  CHECK(MonomialOrder::drl().greater(y5, x));  // graded order does not
  // any monomial meeting the front block beats any monomial outside it
  std::mt19937 rng(14);
  MonomialOrder blk = MonomialOrder::block(2);
  for (int i = 0; i < 300; ++i) {
    Monomial a = random_monomial(rng, 5, 3), b = random_monomial(rng, 5, 3);
    bool a_front = a.e[0] + a.e[1] > 0, b_front = b.e[0] + b.e[1] > 0;
    if (a_front && !b_front) CHECK(blk.greater(a, b));
  }
}

TEST_CASE("monomial order text names round trip") {
  for (auto ord : {MonomialOrder::drl(), MonomialOrder::lex(), MonomialOrder::block(3)})
    CHECK(MonomialOrder::parse(ord.str()) == ord);
  CHECK_THROWS_AS(MonomialOrder::parse("weights"), Error);
}

TEST_CASE("polynomial arithmetic satisfies the ring axioms") {
  Ring R = make_ring(7, "x", 4);
  std::mt19937 rng(15);
  Poly one = Poly::constant(R, 1), zero = Poly::zero(R);
  for (int i = 0; i < 150; ++i) {
    Poly p = random_poly(rng, R, 6, 3), q = random_poly(rng, R, 6, 3),
         r = random_poly(rng, R, 6, 3);
    CHECK((p + q) + r == p + (q + r));
    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
    CHECK((p * q) * r == p * (q * r));
    CHECK(p * (q + r) == p * q + p * r);
    CHECK(p + (-p) == zero);
    CHECK(p * one == p);
    CHECK(p * zero == zero);
    CHECK(p - q == p + (-q));
    CHECK((p + q) * (p - q) == p * p - q * q);
  }
}

TEST_CASE("known product over F7") {
  Ring R = make_ring(7, {"x", "y"});
  Poly a = Poly::parse(R, "x + y"), b = Poly::parse(R, "x + 6*y");
  CHECK((a * b).str() == "x^2 + 6*y^2");
  CHECK(a * b == Poly::parse(R, "x^2 + 6*y^2"));
}

TEST_CASE("canonical text form round trips") {
  Ring R16 = make_ring(7, "x", 16);
  for (const char* s : {"x7*x8 + 6*x6*x9 + x0*x11", "3", "0", "x0^2 + 3*x0*x1 + 5",
                        "x15^4 + x1*x2*x3 + 2*x14"}) {
    Poly f = Poly::parse(R16, s);
    CHECK(f.str() == s);
    CHECK(Poly::parse(R16, f.str()) == f);
  }
  std::mt19937 rng(16);
  Ring R = make_ring(7, "x", 5);
  for (int i = 0; i < 200; ++i) {
    Poly p = random_poly(rng, R, 8, 3);
    CHECK(Poly::parse(R, p.str()) == p);
  }
  CHECK_THROWS_AS(Poly::parse(R, "x9 + 1"), Error);   // unknown variable
  CHECK_THROWS_AS(Poly::parse(R, "x0 + + 1"), Error); // malformed
}

TEST_CASE("leading term, degree and homogeneity") {
  Ring R = make_ring(7, {"x", "y", "z"});
  Poly f = Poly::parse(R, "x^2 + y*z");
  CHECK(f.leading().mon == Monomial::var(3, 0, 2));
  CHECK(f.leading().coeff == 1);
  CHECK(f.degree() == 2);
  CHECK(f.homogeneous_degree() == 2);
  Poly g = f + Poly::variable(R, 0);
  CHECK(!g.homogeneous_degree().has_value());
  CHECK(Poly::zero(R).degree() == -1);
  CHECK(Poly::zero(R).homogeneous_degree() == 0);
  CHECK_THROWS_AS(Poly::zero(R).leading(), Error);
}

TEST_CASE("scaling, monic normalization, monomial multiplication and division") {
  Ring R = make_ring(7, {"x", "y"});
  Poly f = Poly::parse(R, "3*x^2 + 5*y^2");
  CHECK(f.scaled(2) == Poly::parse(R, "6*x^2 + 3*y^2"));
  CHECK(f.monic() == Poly::parse(R, "x^2 + 4*y^2"));  // 3^{-1} = 5, 5*5 = 25 = 4
  Monomial m = Monomial::var(2, 1, 2);
  Poly fm = f.times_monomial(m);
  CHECK(fm == Poly::parse(R, "3*x^2*y^2 + 5*y^4"));
  CHECK(fm.divided_by_monomial(m) == f);
  CHECK_THROWS_AS(f.divided_by_monomial(Monomial::var(2, 0)), Error);
}

TEST_CASE("formal partial derivatives and the Euler relation") {
  Ring R = make_ring(7, {"x", "y"});
  Poly f = Poly::parse(R, "x^2*y + 3*x*y");
  CHECK(f.partial(0) == Poly::parse(R, "2*x*y + 3*y"));
  CHECK(f.partial(1) == Poly::parse(R, "x^2 + 3*x"));

  // sum_i x_i d_i f = deg(f) * f for homogeneous f
  Ring R4 = make_ring(7, "x", 4);
  std::mt19937 rng(17);
  for (int i = 0; i < 100; ++i) {
    int d = 1 + (i % 5);
    Poly f4 = random_homogeneous(rng, R4, d, 6);
    Poly acc = Poly::zero(R4);
    for (int v = 0; v < 4; ++v) acc = acc + Poly::variable(R4, v) * f4.partial(v);
    CHECK(acc == f4.scaled(static_cast<uint32_t>(d % 7)));
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  Ring R = make_ring(7, "x", 4);
  std::mt19937 rng(18);
  PrimeField F(7);
  for (int i = 0; i < 200; ++i) {
    Poly p = random_poly(rng, R, 6, 3), q = random_poly(rng, R, 6, 3);
    auto pt = random_point(rng, R);
    CHECK((p + q).eval(pt) == F.add(p.eval(pt), q.eval(pt)));
    CHECK((p * q).eval(pt) == F.mul(p.eval(pt), q.eval(pt)));
  }
  Poly c = Poly::constant(R, 5);
  CHECK(c.eval({0, 0, 0, 0}) == 5);
}

TEST_CASE("linear substitution is a ring homomorphism compatible with evaluation") {
  Ring Rold = make_ring(7, "x", 3);
  Ring Rnew = make_ring(7, "y", 4);
  std::mt19937 rng(19);
  std::uniform_int_distribution<int> d(0, 6);
  PrimeField F(7);
  for (int iter = 0; iter < 60; ++iter) {
    // coeff is 4 rows (new vars) by 3 columns (old vars)
    std::vector<std::vector<uint32_t>> coeff(4, std::vector<uint32_t>(3));
    for (auto& row : coeff)
      for (auto& v : row) v = static_cast<uint32_t>(d(rng));
    Poly p = random_poly(rng, Rold, 5, 3), q = random_poly(rng, Rold, 5, 3);
    Poly sp = substitute_linear(p, Rnew, coeff), sq = substitute_linear(q, Rnew, coeff);
    CHECK(substitute_linear(p + q, Rnew, coeff) == sp + sq);
    CHECK(substitute_linear(p * q, Rnew, coeff) == sp * sq);

    auto v = random_point(rng, Rnew);
    std::vector<uint32_t> old_pt(3, 0);
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 4; ++i) old_pt[j] = F.add(old_pt[j], F.mul(coeff[i][j], v[i]));
    CHECK(sp.eval(v) == p.eval(old_pt));
  }
  // identity substitution renames variables
  std::vector<std::vector<uint32_t>> id(3, std::vector<uint32_t>(3, 0));
  for (int i = 0; i < 3; ++i) id[i][i] = 1;
  Ring Rz = make_ring(7, "z", 3);
  Poly f = Poly::parse(Rold, "x0^2 + 3*x1*x2");
  CHECK(substitute_linear(f, Rz, id).str() == "z0^2 + 3*z1*z2");
}

TEST_CASE("substitution preserves homogeneity") {
  Ring Rold = make_ring(7, "x", 3);
  Ring Rnew = make_ring(7, "y", 5);
  std::mt19937 rng(20);
  std::uniform_int_distribution<int> d(0, 6);
  for (int iter = 0; iter < 40; ++iter) {
    std::vector<std::vector<uint32_t>> coeff(5, std::vector<uint32_t>(3));
    for (auto& row : coeff)
      for (auto& v : row) v = static_cast<uint32_t>(d(rng));
    Poly f = random_homogeneous(rng, Rold, 3, 5);
    Poly g = substitute_linear(f, Rnew, coeff);
    if (!g.is_zero()) CHECK(g.homogeneous_degree() == 3);
  }
}

TEST_CASE("translation into an affine chart at a point") {
  Ring R = make_ring(7, {"x", "y", "z"});
  Poly f = Poly::parse(R, "x^2 + 6*y*z");  // x^2 - yz
  // the point (1,1,1) lies on the vanishing locus; chart coordinate z
  Poly local = dehomogenize_at(f, {1, 1, 1}, 2);
  CHECK(local == Poly::parse(R, "x^2 + 2*x + 6*y"));
  CHECK(local.coefficient(Monomial::one(3)) == 0);  // constant term vanishes on the locus
  // off the locus the constant term is f(point)
  Poly off = dehomogenize_at(f, {2, 1, 1}, 2);
  CHECK(off.coefficient(Monomial::one(3)) == f.eval({2, 1, 1}));
  CHECK_THROWS_AS(dehomogenize_at(f, {1, 1, 2}, 2), Error);  // chart coordinate must be 1
}

TEST_CASE("ring identity and compatibility checks") {
  Ring a = make_ring(7, "x", 3), b = make_ring(7, "x", 3), c = make_ring(7, "y", 3);
  CHECK(same_ring(a, b));
  CHECK(!same_ring(a, c));
  CHECK(a->index_of("x1") == 1);
  CHECK(a->index_of("w") == -1);
  Poly p = Poly::variable(a, 0), q = Poly::variable(c, 0);
  CHECK_THROWS_AS(p + q, Error);
}

TEST_CASE("rational numbers normalize and compute exactly") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(0, 5) == Rational(0));
  CHECK((Rational(1, 2) + Rational(1, 3)) == Rational(5, 6));
  CHECK((Rational(5, 6) * Rational(3, 5)) == Rational(1, 2));
  CHECK((Rational(1, 2) / Rational(1, 4)) == Rational(2));
  CHECK((-Rational(1, 2)).str() == "-1/2");
  CHECK(Rational(7).is_integer());
  CHECK(!Rational(7, 2).is_integer());
  CHECK_THROWS(Rational(1, 0));
  bigint fact = 1;
  for (int i = 2; i <= 40; ++i) fact *= i;
  CHECK((Rational(fact, 1) / Rational(fact / 40, 1)) == Rational(40));
  CHECK_THROWS(to_int64(fact));
  CHECK(to_int64(bigint(-5)) == -5);
}

TEST_CASE("row reduction: known rank and kernel") {
  PrimeField F(7);
  FpMatrix m(F, 2, 3);
  // rows (1,2,3) and (2,4,6): rank 1
  m.set(0, 0, 1); m.set(0, 1, 2); m.set(0, 2, 3);
  m.set(1, 0, 2); m.set(1, 1, 4); m.set(1, 2, 6);
  CHECK(m.rank() == 1);
  auto ker = m.kernel_basis();
  REQUIRE(ker.size() == 2);
  // x = -2y - 3z with (y,z) = (1,0) and (0,1)
  CHECK(ker[0] == std::vector<uint16_t>{5, 1, 0});
  CHECK(ker[1] == std::vector<uint16_t>{4, 0, 1});
}

TEST_CASE("row reduction properties on random matrices") {
  PrimeField F(7);
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> dim(1, 8), val(0, 6);
  for (int iter = 0; iter < 120; ++iter) {
    size_t r = dim(rng), c = dim(rng);
    FpMatrix m(F, r, c);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) m.set(i, j, val(rng));
    FpMatrix orig = m;
    auto pivots = m.rref();
    CHECK(pivots.size() == orig.rank());
    // rref is idempotent
    FpMatrix again = m;
    again.rref();
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) CHECK(again.at(i, j) == m.at(i, j));
    // kernel vectors are killed by the original matrix and are independent
    auto ker = orig.kernel_basis();
    CHECK(ker.size() + pivots.size() == c);
    EchelonSpan span(F, c);
    for (const auto& v : ker) {
      for (size_t i = 0; i < r; ++i) {
        uint32_t dot = 0;
        for (size_t j = 0; j < c; ++j) dot = F.add(dot, F.mul(orig.at(i, j), v[j]));
        CHECK(dot == 0);
      }
      CHECK(span.add(v));
    }
  }
}

TEST_CASE("echelon span: membership and canonical basis") {
  PrimeField F(7);
  EchelonSpan s(F, 3);
  CHECK(s.add({1, 1, 0}));
  CHECK(s.add({0, 1, 1}));
  CHECK(!s.add({1, 2, 1}));  // dependent
  CHECK(s.dim() == 2);
  CHECK(s.contains({1, 0, 6}));
  CHECK(!s.contains({0, 0, 1}));
  auto basis = s.rref_basis();
  REQUIRE(basis.size() == 2);
  CHECK(basis[0] == std::vector<uint16_t>{1, 0, 6});
  CHECK(basis[1] == std::vector<uint16_t>{0, 1, 1});
}

TEST_CASE("span intersection: known case and dimension formula") {
  PrimeField F(7);
  std::vector<std::vector<uint16_t>> a = {{1, 0, 0, 0}, {0, 1, 0, 0}};
  std::vector<std::vector<uint16_t>> b = {{0, 1, 0, 0}, {0, 0, 1, 0}};
  auto meet = intersect_spans(F, 4, a, b);
  REQUIRE(meet.size() == 1);
  CHECK(meet[0] == std::vector<uint16_t>{0, 1, 0, 0});

  std::mt19937 rng(22);
  std::uniform_int_distribution<int> val(0, 6), cnt(1, 4);
  const size_t w = 6;
  for (int iter = 0; iter < 80; ++iter) {
    auto sample = [&](int k) {
      std::vector<std::vector<uint16_t>> rows;
      for (int i = 0; i < k; ++i) {
        std::vector<uint16_t> row(w);
        for (auto& v : row) v = static_cast<uint16_t>(val(rng));
        rows.push_back(row);
      }
      return rows;
    };
    auto ra = sample(cnt(rng)), rb = sample(cnt(rng));
    auto meet2 = intersect_spans(F, w, ra, rb);
    EchelonSpan sa(F, w), sb(F, w), sum(F, w);
    for (const auto& v : ra) { sa.add(v); sum.add(v); }
    for (const auto& v : rb) { sb.add(v); sum.add(v); }
    CHECK(sa.dim() + sb.dim() == sum.dim() + meet2.size());
    for (const auto& v : meet2) {
      CHECK(sa.contains(v));
      CHECK(sb.contains(v));
    }
  }
}
