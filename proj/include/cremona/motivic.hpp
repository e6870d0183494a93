#pragma once

#include "cremona/bigint.hpp"

#include <array>
#include <map>
#include <string>

namespace cremona::motivic {

// The two birational directions: the base K3 surface of the forward quartic
// map, or the one of its inverse.
enum class Side { forward, inverse };

// Exponents (a, b, c) of a monomial L^a * KF^b * KG^c, where L is the class
// of the affine line and KF, KG are opaque classes of the two K3 surfaces.
using Monomial = std::array<int, 3>;

// Integer-coefficient polynomial in the commuting symbols L, KF, KG, kept in
// canonical expanded form (zero coefficients erased).
class MotivicExpression {
public:
    MotivicExpression() = default;
    explicit MotivicExpression(const bigint& constant);
    static MotivicExpression monomial(const Monomial& m, const bigint& coeff = bigint(1));

    const std::map<Monomial, bigint>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    MotivicExpression operator+(const MotivicExpression& o) const;
    MotivicExpression operator-(const MotivicExpression& o) const;
    MotivicExpression operator*(const MotivicExpression& o) const;
    MotivicExpression operator-() const;
    bool operator==(const MotivicExpression& o) const = default;

    // Substitute numeric values L = q, KF = kf, KG = kg.
    bigint evaluate(const bigint& q, const bigint& kf, const bigint& kg) const;

    // Formally identify the two K3 classes (every KG becomes KF).
    MotivicExpression identify_sides() const;

    std::string str() const;

private:
    void add_term(const Monomial& m, const bigint& c);

    std::map<Monomial, bigint> terms_;
};

MotivicExpression operator*(const bigint& c, const MotivicExpression& e);

// L, the class of the affine line.
MotivicExpression affine_line();

// Opaque generator for the K3 surface class on the given side.
MotivicExpression k3_class(Side side);

// 1 + L + ... + L^n.
MotivicExpression projective_class(int n);

// Class of the image surface in P^4: a K3 blown up at three points with the
// three exceptional curves glued back to points, K + 3L - 3.
MotivicExpression projected_surface_class(Side side);

// Class of the resolved fourfold, computed by stratifying the blowup of P^4
// along the image surface (generic point gets a line, each node a quadric
// split as [P^1]^2).  Every intermediate rewrite is checked against the next,
// and the final closed form [P^4] + 3[P^1]L + K*L + 3L^2 - 3L is returned.
// Throws std::runtime_error if any rewrite fails to match.
MotivicExpression blowup_fourfold_class(Side side);

// blowup_fourfold_class(forward) - blowup_fourfold_class(inverse); checks
// the difference collapses to exactly (KF - KG)*L and returns it.
MotivicExpression annihilation_identity();

}  // namespace cremona::motivic
