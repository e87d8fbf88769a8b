#pragma once

// The genus-2 family  y^2 + (x^2 + x) y = (t^2 + t)(x^5 + x) + t^2 x^3,  t != 0, 1,
// over binary fields, and its Frobenius twists X(n) with parameter t^(2^n).

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "vfix/algebra.hpp"
#include "vfix/field.hpp"
#include "vfix/poly.hpp"

namespace vfix {

class Curve;

// A curve base-changed to an extension field E, with its model polynomials.
struct CurveModel {
    FieldRef field;
    Poly h;
    Poly f;

    // y^2 + h(x) y + f(x); zero exactly on the affine curve.
    bits_t equation(bits_t x, bits_t y) const;
};
using ModelRef = std::shared_ptr<const CurveModel>;

// Smallest shipped field containing both; throws FieldCapExceeded past degree 16.
FieldRef compositum(const BinaryField& a, const BinaryField& b);

class CurvePoint {
public:
    static CurvePoint infinity(FieldRef field) { return CurvePoint(std::move(field)); }
    CurvePoint(FieldRef field, bits_t x, bits_t y);

    const BinaryField& field() const { return *field_; }
    const FieldRef& field_ref() const { return field_; }
    bool is_infinity() const { return infinity_; }
    bits_t x() const { return x_; }
    bits_t y() const { return y_; }

    // Same point in a larger shipped field.
    CurvePoint lifted(const FieldRef& target) const;
    // Smallest-degree shipped subfield holding the coordinates (over `floor`, whose degree must divide).
    CurvePoint minimal(const BinaryField& floor) const;

    // Equal as points of the curve over the algebraic closure.
    bool operator==(const CurvePoint& o) const;
    bool operator!=(const CurvePoint& o) const { return !(*this == o); }
    std::string to_string() const;

private:
    explicit CurvePoint(FieldRef field) : field_(std::move(field)), infinity_(true) {}

    FieldRef field_;
    bool infinity_ = false;
    bits_t x_ = 0;
    bits_t y_ = 0;
};

class Curve {
public:
    // Throws PreconditionError when t is 0, 1 or not an element of base.
    Curve(FieldRef base, bits_t t, int twist = 0);
    // "d=<deg>;t=<hex>;n=<twist>" (n optional, default 0); base is the shipped GF(2^d).
    static Curve parse(const std::string& spec);
    std::string spec() const;

    const BinaryField& base() const { return *base_; }
    const FieldRef& base_ref() const { return base_; }
    bits_t t() const { return t_; }
    int twist() const { return twist_; }
    // t^(2^n)
    bits_t effective_t() const;
    // X(twist + k); twists wrap around with period deg(base) on the equation.
    Curve twisted(int k = 1) const { return Curve(base_, t_, twist_ + k); }
    // Same equation (same base field and effective parameter).
    bool same_model(const Curve& o) const;
    int genus() const { return 2; }

    ModelRef over(const FieldRef& field) const;
    ModelRef model() const { return over(base_); }
    // Shipped field GF(q^k), q = |base|.
    FieldRef extension(int k) const;

private:
    FieldRef base_;
    bits_t t_;
    int twist_;
};

// Exact equation check; throws when the point's field does not contain the base.
bool on_curve(const Curve& c, const CurvePoint& p);
// Every point over `field`, Infinity first, then by (x, y).
std::vector<CurvePoint> enumerate_points(const Curve& c, const FieldRef& field);
std::uint64_t count_points(const Curve& c, const FieldRef& field);
// y-coordinates over `model.field` above x, ascending.
std::vector<bits_t> points_above(const CurveModel& model, bits_t x);

CurvePoint hyperelliptic_involution(const Curve& c, const CurvePoint& p);
// Branch points of x : X -> P^1: zeros of h and infinity (deg f is odd).
std::vector<ProjectivePoint1> branch_points(const Curve& c);
// Branch criterion: three branch points (g + 1).  Cross-checked against the
// 2-torsion count in jacobian.hpp (verify_ordinarity).
bool is_ordinary(const Curve& c);
// Points over x in {0, 1, infinity} fixed by the hyperelliptic involution.
std::vector<CurvePoint> weierstrass_points(const Curve& c);

// X(n) -> X(n+1), (x, y) -> (x^2, y^2).
CurvePoint relative_frobenius(const Curve& c, const CurvePoint& p);
// Inverse of relative_frobenius: the point of X(n) = c.twisted(-1) over p.
CurvePoint frobenius_preimage(const Curve& c, const CurvePoint& p);

struct WeilInterval {
    double low;
    double high;
    bool contains(double v) const { return v >= low && v <= high; }
};
// q + 1 -/+ 2 g sqrt(q)
WeilInterval weil_point_interval(std::uint64_t q);

}  // namespace vfix
