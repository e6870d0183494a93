#include "cremona/motivic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace cremona::motivic {

MotivicExpression::MotivicExpression(const bigint& constant) {
    add_term({0, 0, 0}, constant);
}

MotivicExpression MotivicExpression::monomial(const Monomial& m, const bigint& coeff) {
    if (m[0] < 0 || m[1] < 0 || m[2] < 0)
        throw std::invalid_argument("motivic monomial exponents must be nonnegative");
    MotivicExpression e;
    e.add_term(m, coeff);
    return e;
}

void MotivicExpression::add_term(const Monomial& m, const bigint& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

MotivicExpression MotivicExpression::operator+(const MotivicExpression& o) const {
    MotivicExpression r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

MotivicExpression MotivicExpression::operator-(const MotivicExpression& o) const {
    MotivicExpression r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, bigint(-c));
    return r;
}

MotivicExpression MotivicExpression::operator-() const {
    MotivicExpression r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, bigint(-c));
    return r;
}

MotivicExpression MotivicExpression::operator*(const MotivicExpression& o) const {
    MotivicExpression r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_)
            r.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, bigint(ca * cb));
    return r;
}

MotivicExpression operator*(const bigint& c, const MotivicExpression& e) {
    return MotivicExpression(c) * e;
}

bigint MotivicExpression::evaluate(const bigint& q, const bigint& kf, const bigint& kg) const {
    auto pow = [](const bigint& base, int exp) {
        bigint r = 1;
        for (int i = 0; i < exp; ++i) r *= base;
        return r;
    };
    bigint total = 0;
    for (const auto& [m, c] : terms_)
        total += c * pow(q, m[0]) * pow(kf, m[1]) * pow(kg, m[2]);
    return total;
}

MotivicExpression MotivicExpression::identify_sides() const {
    MotivicExpression r;
    for (const auto& [m, c] : terms_) r.add_term({m[0], m[1] + m[2], 0}, c);
    return r;
}

std::string MotivicExpression::str() const {
    if (terms_.empty()) return "0";
    // Graded lexicographic with L > KF > KG, descending.
    std::vector<std::pair<Monomial, bigint>> order(terms_.begin(), terms_.end());
    std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
        int dx = x.first[0] + x.first[1] + x.first[2];
        int dy = y.first[0] + y.first[1] + y.first[2];
        if (dx != dy) return dx > dy;
        return x.first > y.first;
    });
    auto mono_str = [](const Monomial& m) {
        std::vector<std::string> parts;
        const char* syms[3] = {"L", "KF", "KG"};
        // Surface symbols first, then L.
        for (int i : {1, 2, 0}) {
            if (m[i] == 0) continue;
            if (m[i] == 1)
                parts.push_back(syms[i]);
            else
                parts.push_back(std::string(syms[i]) + "^" + std::to_string(m[i]));
        }
        std::string s;
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) s += "*";
            s += parts[i];
        }
        return s;
    };
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : order) {
        bigint a = big_abs(c);
        bool neg = c < 0;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        std::string ms = mono_str(m);
        if (ms.empty()) {
            out << a.str();
        } else {
            if (a != 1) out << a.str() << "*";
            out << ms;
        }
    }
    return out.str();
}

MotivicExpression affine_line() {
    return MotivicExpression::monomial({1, 0, 0});
}

MotivicExpression k3_class(Side side) {
    return side == Side::forward ? MotivicExpression::monomial({0, 1, 0})
                                 : MotivicExpression::monomial({0, 0, 1});
}

MotivicExpression projective_class(int n) {
    if (n < 0) throw std::invalid_argument("projective_class needs n >= 0");
    MotivicExpression e;
    for (int i = 0; i <= n; ++i) e = e + MotivicExpression::monomial({i, 0, 0});
    return e;
}

MotivicExpression projected_surface_class(Side side) {
    const bigint three = 3;
    return k3_class(side) + three * affine_line() - MotivicExpression(three);
}

MotivicExpression blowup_fourfold_class(Side side) {
    const MotivicExpression p4 = projective_class(4);
    const MotivicExpression p1 = projective_class(1);
    const MotivicExpression one(bigint(1));
    const MotivicExpression ll = affine_line();
    const bigint three = 3;
    const MotivicExpression s = projected_surface_class(side);
    const MotivicExpression k = k3_class(side);

    // The line bundle over the smooth locus plus one quadric [P^1]^2 per node,
    // then successive rewrites down to the closed form.
    const MotivicExpression quadrics = three * (p1 * p1);
    MotivicExpression strata = (p4 - s) + ((s - MotivicExpression(three)) * p1 + quadrics);
    MotivicExpression regrouped = p4 + three * p1 * (p1 - one) + s * (p1 - one);
    MotivicExpression in_l = p4 + three * p1 * ll + s * ll;
    MotivicExpression closed = p4 + three * p1 * ll + k * ll + three * (ll * ll) - three * ll;

    if (!(p1 - one == ll))
        throw std::runtime_error("projective line minus a point is not the affine line");
    if (!(strata == regrouped))
        throw std::runtime_error("blowup stratification does not regroup");
    if (!(regrouped == in_l))
        throw std::runtime_error("regrouped stratification does not reduce to L");
    if (!(in_l == closed))
        throw std::runtime_error("stratification does not match the closed form");
    return closed;
}

MotivicExpression annihilation_identity() {
    MotivicExpression diff =
        blowup_fourfold_class(Side::forward) - blowup_fourfold_class(Side::inverse);
    MotivicExpression expected = (k3_class(Side::forward) - k3_class(Side::inverse)) * affine_line();
    if (!(diff == expected))
        throw std::runtime_error("fourfold class difference is not (KF - KG)*L");
    return diff;
}

}  // namespace cremona::motivic
