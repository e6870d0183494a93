#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cremona {

// Every validation failure in the library throws Error with a reason that
// names the offending object (generator index, point, dimension, ...).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Prime field arithmetic on canonical residues in [0, p).

class PrimeField {
 public:
  explicit PrimeField(uint32_t p);

  uint32_t p() const { return p_; }

  // canonical residue of an arbitrary signed integer
  uint32_t reduce(int64_t v) const {
    int64_t r = v % static_cast<int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<uint32_t>(r);
  }

  uint32_t add(uint32_t a, uint32_t b) const {
    uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p_ - a; }

  // Barrett reduction; a, b must already be canonical residues.
  uint32_t mul(uint32_t a, uint32_t b) const {
    uint64_t r = static_cast<uint64_t>(a) * b;
    uint64_t q = static_cast<uint64_t>((static_cast<unsigned __int128>(r) * barrett_) >> 64);
    uint64_t t = r - q * p_;
    while (t >= p_) t -= p_;
    return static_cast<uint32_t>(t);
  }

  uint32_t inv(uint32_t a) const;  // throws Error on a == 0
  uint32_t pow(uint32_t a, uint64_t e) const;

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  uint32_t p_ = 0;
  uint64_t barrett_ = 0;  // floor(2^64 / p)
};

// ---------------------------------------------------------------------------
// Monomials: fixed-width exponent vectors (total degrees here stay below 20).

constexpr int kMaxVars = 18;

struct Monomial {
  std::array<uint8_t, kMaxVars> e{};
  uint8_t n = 0;     // ambient variable count
  uint16_t deg = 0;  // cached total degree

  static Monomial one(int nvars);
  static Monomial var(int nvars, int i, int exp = 1);

  Monomial mul(const Monomial& o) const;
  bool divides(const Monomial& o) const;  // this | o
  Monomial div(const Monomial& o) const;  // this / o, o must divide
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;
  bool is_one() const { return deg == 0; }

  bool operator==(const Monomial& o) const;
  bool operator!=(const Monomial& o) const { return !(*this == o); }
};

enum class OrderKind { degrevlex, lex, block };

// A monomial order. block(k) compares the first k variables degrevlex, then
// the rest degrevlex; any monomial meeting a variable of index < k exceeds
// every monomial supported on indices >= k only, so it eliminates the front
// block.
struct MonomialOrder {
  OrderKind kind = OrderKind::degrevlex;
  int split = 0;  // block orders only: size of the leading block

  static MonomialOrder drl() { return {OrderKind::degrevlex, 0}; }
  static MonomialOrder lex() { return {OrderKind::lex, 0}; }
  static MonomialOrder block(int k) { return {OrderKind::block, k}; }

  int compare(const Monomial& a, const Monomial& b) const;  // +1 if a > b
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  bool operator==(const MonomialOrder& o) const { return kind == o.kind && split == o.split; }
  std::string str() const;
  static MonomialOrder parse(const std::string&);
};

// ---------------------------------------------------------------------------
// Polynomial rings. Rings are shared immutable data; two rings are compatible
// when prime and variable names agree.

struct RingData {
  PrimeField field;
  std::vector<std::string> vars;

  int nvars() const { return static_cast<int>(vars.size()); }
  int index_of(const std::string& name) const;  // -1 if absent
};

using Ring = std::shared_ptr<const RingData>;

Ring make_ring(uint32_t p, std::vector<std::string> vars);
// x0, x1, ..., x{n-1} style helper
Ring make_ring(uint32_t p, const std::string& base, int nvars);
bool same_ring(const Ring& a, const Ring& b);

struct Term {
  Monomial mon;
  uint32_t coeff = 0;
};

// Sparse multivariate polynomial. Terms are kept strictly sorted descending
// in the polynomial's active order with canonical nonzero coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(Ring ring, MonomialOrder order, std::vector<Term> terms);

  static Poly zero(Ring ring, MonomialOrder order = MonomialOrder::drl());
  static Poly constant(Ring ring, int64_t c, MonomialOrder order = MonomialOrder::drl());
  static Poly variable(Ring ring, int i, MonomialOrder order = MonomialOrder::drl());
  static Poly monomial(Ring ring, Monomial m, int64_t c = 1,
                       MonomialOrder order = MonomialOrder::drl());

  const Ring& ring() const { return ring_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const Term& leading() const;
  int degree() const;  // max total degree, -1 for zero
  // total degree when all terms share it, nullopt otherwise (zero: 0)
  std::optional<int> homogeneous_degree() const;

  Poly with_order(MonomialOrder order) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly scaled(uint32_t c) const;            // c * this
  Poly monic() const;                       // leading coefficient 1
  Poly times_monomial(const Monomial& m, uint32_t c = 1) const;
  Poly divided_by_monomial(const Monomial& m) const;  // exact; throws if not divisible
  Poly partial(int var) const;              // formal partial derivative

  uint32_t coefficient(const Monomial& m) const;  // 0 if absent

  // Evaluate at a point (residue per variable).
  uint32_t eval(const std::vector<uint32_t>& point) const;

  // Canonical text form: descending degrevlex, residues in [1, p), " + "
  // separated, e.g. "x7*x8 + 6*x6*x9 + x0*x11".
  std::string str() const;
  static Poly parse(const Ring& ring, const std::string& text,
                    MonomialOrder order = MonomialOrder::drl());

 private:
  Ring ring_;
  MonomialOrder order_ = MonomialOrder::drl();
  std::vector<Term> terms_;

  void normalize();  // sort, merge, drop zeros
};

// Ring homomorphism induced by substituting each of the n old variables with
// a linear form in the k new variables: old var j maps to
// sum_i coeff[i][j] * new var i (coeff is k rows by n columns).
Poly substitute_linear(const Poly& f, const Ring& target,
                       const std::vector<std::vector<uint32_t>>& coeff);

// Substitute var -> var + shift (affine translation in a chart), then drop
// the chart variable `chart` by setting it to 1. Used for local analysis at
// a rational point. Result is inhomogeneous in the same ring.
Poly dehomogenize_at(const Poly& f, const std::vector<uint32_t>& point, int chart);

}  // namespace cremona
