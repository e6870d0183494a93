#include "cremona/ffpoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cremona {

// ---------------------------------------------------------------------------
// PrimeField

static bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(uint32_t p) : p_(p) {
  if (!is_prime_u32(p)) throw Error("PrimeField: " + std::to_string(p) + " is not prime");
  barrett_ = static_cast<uint64_t>(~static_cast<unsigned __int128>(0) / p_);  // floor(2^64/p) via (2^128-1)/p >> 64
  // the line above computes floor((2^128-1)/p) which may exceed 2^64; recompute directly
  barrett_ = static_cast<uint64_t>((static_cast<unsigned __int128>(1) << 64) / p_);
}

uint32_t PrimeField::inv(uint32_t a) const {
  if (a == 0) throw Error("PrimeField: inverse of zero");
  // extended Euclid on (a, p)
  int64_t t = 0, newt = 1, r = p_, newr = a;
  while (newr != 0) {
    int64_t q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (t < 0) t += p_;
  return static_cast<uint32_t>(t);
}

uint32_t PrimeField::pow(uint32_t a, uint64_t e) const {
  uint32_t r = 1 % p_;
  uint32_t base = a % p_;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::one(int nvars) {
  if (nvars < 0 || nvars > kMaxVars) throw Error("Monomial: bad variable count");
  Monomial m;
  m.n = static_cast<uint8_t>(nvars);
  return m;
}

Monomial Monomial::var(int nvars, int i, int exp) {
  Monomial m = one(nvars);
  if (i < 0 || i >= nvars) throw Error("Monomial: variable index out of range");
  if (exp < 0 || exp > 255) throw Error("Monomial: exponent out of range");
  m.e[i] = static_cast<uint8_t>(exp);
  m.deg = static_cast<uint16_t>(exp);
  return m;
}

Monomial Monomial::mul(const Monomial& o) const {
  Monomial r;
  r.n = n;
  int d = deg + o.deg;
  for (int i = 0; i < n; ++i) {
    int s = e[i] + o.e[i];
    if (s > 255) throw Error("Monomial: exponent overflow");
    r.e[i] = static_cast<uint8_t>(s);
  }
  r.deg = static_cast<uint16_t>(d);
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg > o.deg) return false;
  for (int i = 0; i < n; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::div(const Monomial& o) const {
  Monomial r;
  r.n = n;
  for (int i = 0; i < n; ++i) {
    if (e[i] < o.e[i]) throw Error("Monomial: division not exact");
    r.e[i] = static_cast<uint8_t>(e[i] - o.e[i]);
  }
  r.deg = static_cast<uint16_t>(deg - o.deg);
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  r.n = n;
  int d = 0;
  for (int i = 0; i < n; ++i) {
    r.e[i] = std::max(e[i], o.e[i]);
    d += r.e[i];
  }
  r.deg = static_cast<uint16_t>(d);
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  for (int i = 0; i < n; ++i)
    if (e[i] && o.e[i]) return false;
  return true;
}

bool Monomial::operator==(const Monomial& o) const {
  if (n != o.n || deg != o.deg) return false;
  for (int i = 0; i < n; ++i)
    if (e[i] != o.e[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// MonomialOrder

// degrevlex on a variable window [lo, hi): higher total degree wins; on ties
// the monomial with the smaller exponent at the last differing index wins.
static int drl_window(const Monomial& a, const Monomial& b, int lo, int hi) {
  int da = 0, db = 0;
  for (int i = lo; i < hi; ++i) {
    da += a.e[i];
    db += b.e[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (int i = hi - 1; i >= lo; --i) {
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  }
  return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (a.n != b.n) throw Error("MonomialOrder: mixed ambient variable counts");
  switch (kind) {
    case OrderKind::degrevlex:
      if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
      return drl_window(a, b, 0, a.n);
    case OrderKind::lex:
      for (int i = 0; i < a.n; ++i)
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
      return 0;
    case OrderKind::block: {
      if (split <= 0 || split > a.n) throw Error("MonomialOrder: bad block split");
      int c = drl_window(a, b, 0, split);
      if (c) return c;
      return drl_window(a, b, split, a.n);
    }
  }
  return 0;
}

std::string MonomialOrder::str() const {
  switch (kind) {
    case OrderKind::degrevlex: return "degrevlex";
    case OrderKind::lex: return "lex";
    case OrderKind::block: return "block:" + std::to_string(split);
  }
  return "?";
}

MonomialOrder MonomialOrder::parse(const std::string& s) {
  if (s == "degrevlex") return drl();
  if (s == "lex") return lex();
  if (s.rfind("block:", 0) == 0) return block(std::stoi(s.substr(6)));
  throw Error("MonomialOrder: unknown order name '" + s + "'");
}

// ---------------------------------------------------------------------------
// Ring

int RingData::index_of(const std::string& name) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

Ring make_ring(uint32_t p, std::vector<std::string> vars) {
  if (vars.size() > kMaxVars) throw Error("make_ring: too many variables");
  for (size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].empty()) throw Error("make_ring: empty variable name");
    for (size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) throw Error("make_ring: duplicate variable name " + vars[i]);
  }
  return std::make_shared<RingData>(RingData{PrimeField(p), std::move(vars)});
}

Ring make_ring(uint32_t p, const std::string& base, int nvars) {
  std::vector<std::string> vars;
  vars.reserve(nvars);
  for (int i = 0; i < nvars; ++i) vars.push_back(base + std::to_string(i));
  return make_ring(p, std::move(vars));
}

bool same_ring(const Ring& a, const Ring& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->field == b->field && a->vars == b->vars;
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(Ring ring, MonomialOrder order, std::vector<Term> terms)
    : ring_(std::move(ring)), order_(order), terms_(std::move(terms)) {
  for (auto& t : terms_) {
    if (t.mon.n != ring_->nvars()) throw Error("Poly: monomial/ring variable count mismatch");
    t.coeff %= ring_->field.p();
  }
  normalize();
}

void Poly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [&](const Term& a, const Term& b) { return order_.greater(a.mon, b.mon); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  const PrimeField& F = ring_->field;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mon == t.mon) {
      out.back().coeff = F.add(out.back().coeff, t.coeff);
    } else {
      out.push_back(t);
    }
    if (!out.empty() && out.back().coeff == 0) out.pop_back();
  }
  // a zero merged in the middle can leave interior zeros; sweep once
  std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
  terms_ = std::move(out);
}

Poly Poly::zero(Ring ring, MonomialOrder order) { return Poly(std::move(ring), order, {}); }

Poly Poly::constant(Ring ring, int64_t c, MonomialOrder order) {
  uint32_t r = ring->field.reduce(c);
  std::vector<Term> ts;
  if (r) ts.push_back({Monomial::one(ring->nvars()), r});
  return Poly(std::move(ring), order, std::move(ts));
}

Poly Poly::variable(Ring ring, int i, MonomialOrder order) {
  std::vector<Term> ts{{Monomial::var(ring->nvars(), i), 1}};
  return Poly(std::move(ring), order, std::move(ts));
}

Poly Poly::monomial(Ring ring, Monomial m, int64_t c, MonomialOrder order) {
  uint32_t r = ring->field.reduce(c);
  std::vector<Term> ts;
  if (r) ts.push_back({m, r});
  return Poly(std::move(ring), order, std::move(ts));
}

const Term& Poly::leading() const {
  if (terms_.empty()) throw Error("Poly: leading term of zero");
  return terms_.front();
}

int Poly::degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mon.deg));
  return d;
}

std::optional<int> Poly::homogeneous_degree() const {
  if (terms_.empty()) return 0;
  int d = terms_.front().mon.deg;
  for (const auto& t : terms_)
    if (t.mon.deg != d) return std::nullopt;
  return d;
}

Poly Poly::with_order(MonomialOrder order) const {
  if (order == order_) return *this;
  return Poly(ring_, order, terms_);
}

static void check_compatible(const Poly& a, const Poly& b) {
  if (!same_ring(a.ring(), b.ring())) throw Error("Poly: mixed rings");
  if (!(a.order() == b.order())) throw Error("Poly: mixed term orders");
}

Poly Poly::operator+(const Poly& o) const {
  check_compatible(*this, o);
  const PrimeField& F = ring_->field;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int c = order_.compare(terms_[i].mon, o.terms_[j].mon);
    if (c > 0) {
      out.push_back(terms_[i++]);
    } else if (c < 0) {
      out.push_back(o.terms_[j++]);
    } else {
      uint32_t s = F.add(terms_[i].coeff, o.terms_[j].coeff);
      if (s) out.push_back({terms_[i].mon, s});
      ++i, ++j;
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
  for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
  Poly r;
  r.ring_ = ring_;
  r.order_ = order_;
  r.terms_ = std::move(out);
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = ring_->field.neg(t.coeff);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  check_compatible(*this, o);
  const PrimeField& F = ring_->field;
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& ta : terms_)
    for (const auto& tb : o.terms_)
      prod.push_back({ta.mon.mul(tb.mon), F.mul(ta.coeff, tb.coeff)});
  Poly r;
  r.ring_ = ring_;
  r.order_ = order_;
  r.terms_ = std::move(prod);
  r.normalize();
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (!same_ring(ring_, o.ring_)) return false;
  if (order_ == o.order_) return terms_.size() == o.terms_.size() &&
                                 std::equal(terms_.begin(), terms_.end(), o.terms_.begin(),
                                            [](const Term& a, const Term& b) {
                                              return a.mon == b.mon && a.coeff == b.coeff;
                                            });
  return with_order(MonomialOrder::drl()) == o.with_order(MonomialOrder::drl());
}

Poly Poly::scaled(uint32_t c) const {
  const PrimeField& F = ring_->field;
  c %= F.p();
  if (c == 0) return zero(ring_, order_);
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = F.mul(t.coeff, c);
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(ring_->field.inv(leading().coeff));
}

Poly Poly::times_monomial(const Monomial& m, uint32_t c) const {
  const PrimeField& F = ring_->field;
  c %= F.p();
  if (c == 0) return zero(ring_, order_);
  Poly r;
  r.ring_ = ring_;
  r.order_ = order_;
  r.terms_.reserve(terms_.size());
  // multiplying every monomial by a fixed monomial preserves relative order
  for (const auto& t : terms_) r.terms_.push_back({t.mon.mul(m), F.mul(t.coeff, c)});
  return r;
}

Poly Poly::divided_by_monomial(const Monomial& m) const {
  Poly r;
  r.ring_ = ring_;
  r.order_ = order_;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!m.divides(t.mon))
      throw Error("Poly: monomial division not exact at term " + str());
    r.terms_.push_back({t.mon.div(m), t.coeff});
  }
  return r;
}

Poly Poly::partial(int var) const {
  if (var < 0 || var >= ring_->nvars()) throw Error("Poly: partial w.r.t. unknown variable");
  const PrimeField& F = ring_->field;
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mon.e[var] == 0) continue;
    uint32_t c = F.mul(t.coeff, t.mon.e[var] % F.p());
    if (!c) continue;
    Monomial m = t.mon;
    m.e[var] -= 1;
    m.deg -= 1;
    out.push_back({m, c});
  }
  Poly r;
  r.ring_ = ring_;
  r.order_ = order_;
  r.terms_ = std::move(out);
  r.normalize();  // dropping a variable can merge nothing, but keep canonical
  return r;
}

uint32_t Poly::coefficient(const Monomial& m) const {
  for (const auto& t : terms_)
    if (t.mon == m) return t.coeff;
  return 0;
}

uint32_t Poly::eval(const std::vector<uint32_t>& point) const {
  if (static_cast<int>(point.size()) != ring_->nvars())
    throw Error("Poly: evaluation point has wrong length");
  const PrimeField& F = ring_->field;
  uint32_t acc = 0;
  for (const auto& t : terms_) {
    uint32_t v = t.coeff;
    for (int i = 0; i < t.mon.n; ++i)
      if (t.mon.e[i]) v = F.mul(v, F.pow(point[i] % F.p(), t.mon.e[i]));
    acc = F.add(acc, v);
  }
  return acc;
}

std::string Poly::str() const {
  Poly canon = with_order(MonomialOrder::drl());
  if (canon.terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : canon.terms_) {
    if (!first) os << " + ";
    first = false;
    bool printed = false;
    if (t.coeff != 1 || t.mon.is_one()) {
      os << t.coeff;
      printed = true;
    }
    for (int i = 0; i < t.mon.n; ++i) {
      if (!t.mon.e[i]) continue;
      if (printed) os << "*";
      os << ring_->vars[i];
      if (t.mon.e[i] > 1) os << "^" << static_cast<int>(t.mon.e[i]);
      printed = true;
    }
  }
  return os.str();
}

// --- parsing ---------------------------------------------------------------

namespace {

struct Parser {
  const Ring& ring;
  const std::string& s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }

  uint64_t read_number() {
    skip_ws();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw Error("Poly::parse: expected number at offset " + std::to_string(i));
    return std::stoull(s.substr(start, i - start));
  }

  std::string read_name() {
    skip_ws();
    size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      ++i;
    if (start == i) throw Error("Poly::parse: expected name at offset " + std::to_string(i));
    return s.substr(start, i - start);
  }

  // term := number ('*' factor)* | factor ('*' factor)*
  Term read_term() {
    const PrimeField& F = ring->field;
    Term t{Monomial::one(ring->nvars()), 1};
    bool expect_factor = true;
    bool first = true;
    while (expect_factor) {
      skip_ws();
      if (first && std::isdigit(static_cast<unsigned char>(peek()))) {
        t.coeff = F.mul(t.coeff, F.reduce(static_cast<int64_t>(read_number() % F.p())));
      } else {
        std::string name = read_name();
        int idx = ring->index_of(name);
        if (idx < 0) throw Error("Poly::parse: unknown variable '" + name + "'");
        int exp = 1;
        if (peek() == '^') {
          ++i;
          exp = static_cast<int>(read_number());
        }
        t.mon = t.mon.mul(Monomial::var(ring->nvars(), idx, exp));
      }
      first = false;
      if (peek() == '*') {
        ++i;
        expect_factor = true;
      } else {
        expect_factor = false;
      }
    }
    return t;
  }
};

}  // namespace

Poly Poly::parse(const Ring& ring, const std::string& text, MonomialOrder order) {
  Parser p{ring, text};
  std::vector<Term> terms;
  const PrimeField& F = ring->field;
  if (p.eof()) throw Error("Poly::parse: empty input");
  bool neg = false;
  if (p.peek() == '-') {
    neg = true;
    ++p.i;
  } else if (p.peek() == '+') {
    ++p.i;
  }
  while (true) {
    Term t = p.read_term();
    if (neg) t.coeff = F.neg(t.coeff);
    terms.push_back(t);
    if (p.eof()) break;
    char c = p.peek();
    if (c == '+') {
      neg = false;
      ++p.i;
    } else if (c == '-') {
      neg = true;
      ++p.i;
    } else {
      throw Error("Poly::parse: unexpected character '" + std::string(1, c) + "'");
    }
  }
  return Poly(ring, order, std::move(terms));
}

// ---------------------------------------------------------------------------
// substitutions

Poly substitute_linear(const Poly& f, const Ring& target,
                       const std::vector<std::vector<uint32_t>>& coeff) {
  const int n_old = f.ring()->nvars();
  const int n_new = target->nvars();
  if (!(f.ring()->field == target->field))
    throw Error("substitute_linear: field mismatch");
  if (static_cast<int>(coeff.size()) != n_new)
    throw Error("substitute_linear: matrix must have one row per new variable");
  for (const auto& row : coeff)
    if (static_cast<int>(row.size()) != n_old)
      throw Error("substitute_linear: matrix must have one column per old variable");

  // image of each old variable as a linear form in the target ring
  std::vector<Poly> image(n_old, Poly::zero(target));
  for (int j = 0; j < n_old; ++j) {
    std::vector<Term> ts;
    for (int i = 0; i < n_new; ++i) {
      uint32_t c = coeff[i][j] % target->field.p();
      if (c) ts.push_back({Monomial::var(n_new, i), c});
    }
    image[j] = Poly(target, MonomialOrder::drl(), std::move(ts));
  }

  // power cache per variable
  std::vector<std::vector<Poly>> pow(n_old);
  auto power = [&](int j, int e) -> const Poly& {
    auto& cache = pow[j];
    if (cache.empty()) cache.push_back(Poly::constant(target, 1));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * image[j]);
    return cache[e];
  };

  Poly acc = Poly::zero(target);
  for (const auto& t : f.terms()) {
    Poly term = Poly::constant(target, t.coeff);
    for (int j = 0; j < n_old; ++j)
      if (t.mon.e[j]) term = term * power(j, t.mon.e[j]);
    acc = acc + term;
  }
  return acc;
}

Poly dehomogenize_at(const Poly& f, const std::vector<uint32_t>& point, int chart) {
  const Ring& ring = f.ring();
  const int n = ring->nvars();
  if (static_cast<int>(point.size()) != n) throw Error("dehomogenize_at: bad point length");
  if (chart < 0 || chart >= n || point[chart] % ring->field.p() != 1)
    throw Error("dehomogenize_at: chart coordinate must be 1");

  // old var j -> (u_j + b_j), chart var -> 1
  std::vector<Poly> image;
  image.reserve(n);
  for (int j = 0; j < n; ++j) {
    if (j == chart) {
      image.push_back(Poly::constant(ring, 1));
    } else {
      image.push_back(Poly::variable(ring, j) +
                      Poly::constant(ring, static_cast<int64_t>(point[j])));
    }
  }
  std::vector<std::vector<Poly>> pow(n);
  auto power = [&](int j, int e) -> const Poly& {
    auto& cache = pow[j];
    if (cache.empty()) cache.push_back(Poly::constant(ring, 1));
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * image[j]);
    return cache[e];
  };
  Poly acc = Poly::zero(ring);
  for (const auto& t : f.terms()) {
    Poly term = Poly::constant(ring, t.coeff);
    for (int j = 0; j < n; ++j)
      if (t.mon.e[j]) term = term * power(j, t.mon.e[j]);
    acc = acc + term;
  }
  return acc;
}

}  // namespace cremona
