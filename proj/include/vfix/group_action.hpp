#pragma once

// The automorphism group Z/2 x S3 of the family: Mobius maps permuting the
// branch points {0, 1, infinity}, their lifts (x, y) -> (m(x), (a y + b) / c),
// and the induced action on points and divisor classes.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vfix/curve.hpp"
#include "vfix/jacobian.hpp"

namespace vfix {

// x -> (alpha x + beta) / (gamma x + delta), up to scalar.
class MobiusMap {
public:
    MobiusMap(FieldRef field, bits_t alpha, bits_t beta, bits_t gamma, bits_t delta);

    static MobiusMap identity(FieldRef field) { return {std::move(field), 1, 0, 0, 1}; }
    // The six maps permuting {0, 1, infinity} in characteristic 2:
    // x, x+1, 1/x, 1/(x+1), x/(x+1), (x+1)/x.
    static std::vector<MobiusMap> branch_permutations(const FieldRef& field);

    const BinaryField& field() const { return *field_; }
    const FieldRef& field_ref() const { return field_; }
    bits_t alpha() const { return e_[0]; }
    bits_t beta() const { return e_[1]; }
    bits_t gamma() const { return e_[2]; }
    bits_t delta() const { return e_[3]; }

    ProjectivePoint1 apply(const BinaryField& target, ProjectivePoint1 p) const;
    // this o other
    MobiusMap compose(const MobiusMap& other) const;
    MobiusMap inverse() const;
    bool permutes_branch_points() const;
    // alpha x + beta and gamma x + delta over `target`.
    std::pair<Poly, Poly> numerator_denominator(const BinaryField& target) const;

    bool operator==(const MobiusMap& o) const;
    std::string to_string() const;
    std::string name() const;  // "x", "x+1", "1/x", ...

private:
    FieldRef field_;
    std::array<bits_t, 4> e_;
};

// (x, y) -> (m(x), (a(x) y + b(x)) / c(x)), normalized: gcd(a, b, c) = 1, c monic.
class CurveAutomorphism {
public:
    CurveAutomorphism(Curve curve, MobiusMap m, Poly a, Poly b, Poly c);

    const Curve& curve() const { return curve_; }
    const MobiusMap& mobius() const { return m_; }
    const Poly& a() const { return a_; }
    const Poly& b() const { return b_; }
    const Poly& c() const { return c_; }
    const BinaryField& field() const { return m_.field(); }
    // True for the lift that is not the principal one for its Mobius map.
    bool composed_with_iota() const { return iota_flag_; }
    void set_composed_with_iota(bool f) { iota_flag_ = f; }

    // this o other (other applied first).
    CurveAutomorphism compose(const CurveAutomorphism& other) const;
    CurveAutomorphism operator*(const CurveAutomorphism& other) const { return compose(other); }
    CurveAutomorphism pow(int k) const;

    // Exact check that the substitution preserves the curve equation.
    bool preserves_equation() const;
    // Coefficients raised to the 2nd power: the corresponding map on X(n+1).
    CurveAutomorphism frobenius_twist() const;

    bool operator==(const CurveAutomorphism& o) const;
    bool operator!=(const CurveAutomorphism& o) const { return !(*this == o); }
    // "m=<a,b,c,d>;a=<hex>;b=<hex>;c=<hex>"
    std::string to_string() const;

private:
    Curve curve_;
    MobiusMap m_;
    Poly a_;
    Poly b_;
    Poly c_;
    bool iota_flag_ = false;
};

// Raised when m has no lift over the requested field.
class LiftNeedsExtension : public PreconditionError {
public:
    LiftNeedsExtension(const std::string& what, int minimal_degree)
        : PreconditionError(what), minimal_degree_(minimal_degree)
    {
    }
    // Degree over GF(2) of the smallest field (<= quadratic extension) with a lift, or 0.
    int minimal_degree() const { return minimal_degree_; }

private:
    int minimal_degree_;
};

// Both lifts of m over the curve base, principal (smallest coefficient
// vector) first.  Ansatz deg a <= 2, deg b <= 5, deg c <= 3.
std::pair<CurveAutomorphism, CurveAutomorphism> lift_automorphism(const Curve& c, const MobiusMap& m);

CurveAutomorphism hyperelliptic_automorphism(const Curve& c);

// Image of a point; g must be defined over a subfield of the point's field.
CurvePoint act_on_point(const CurveAutomorphism& g, const CurvePoint& p);
// Pushforward of a class: image of a representing divisor, reduced, over the class field.
JacobianClass act_on_class(const CurveAutomorphism& g, const JacobianClass& c);
// Exhaustive scan of C(E).
std::vector<CurvePoint> fixed_points(const CurveAutomorphism& g, const FieldRef& field);

// The 12 lifted automorphisms, normalized so sigma^3 = 1 and tau^2 = 1.
struct AutomorphismGroup {
    std::vector<CurveAutomorphism> elements;
    std::vector<std::string> names;
    // 12 x 12 table: table[i][j] = index of elements[i] * elements[j].
    std::vector<std::vector<int>> cayley;

    const CurveAutomorphism& get(const std::string& name) const;
    const CurveAutomorphism& identity() const { return get("id"); }
    const CurveAutomorphism& iota() const { return get("iota"); }
    const CurveAutomorphism& sigma() const { return get("sigma"); }
    const CurveAutomorphism& tau01() const { return get("tau01"); }
    const CurveAutomorphism& tau0inf() const { return get("tau0inf"); }
};

// Builds and verifies the group: closure (Cayley table), iota central of
// order 2, sigma^3 = 1, tau01^2 = 1, tau01 sigma tau01 = sigma^2.
// Throws InternalError when a relation fails.
AutomorphismGroup automorphism_group(const Curve& c);

// True when the table is a group table of Z/2 x S3: associative, with identity
// and inverses, center of order 2, and element orders 1:1, 2:7, 3:2, 6:2
// (which singles it out among the five groups of order 12).
bool is_z2_times_s3(const std::vector<std::vector<int>>& table);

}  // namespace vfix
