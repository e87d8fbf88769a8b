#pragma once

// Degree-0 divisor classes on X(n) in Mumford form, Cantor arithmetic for
// y^2 + h y = f in characteristic 2, Riemann-Roch machinery and the Frobenius
// pullback between twists.

#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "vfix/curve.hpp"
#include "vfix/poly.hpp"

namespace vfix {

class FormalDivisor {
public:
    using Term = std::pair<CurvePoint, int>;

    FormalDivisor() = default;
    static FormalDivisor point(const CurvePoint& p, int m = 1);
    // P - infinity
    static FormalDivisor point_minus_infinity(const CurvePoint& p);

    // Merges with an existing equal point; zero multiplicities are dropped.
    void add(const CurvePoint& p, int m);
    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int degree() const;
    int multiplicity(const CurvePoint& p) const;

    FormalDivisor operator+(const FormalDivisor& o) const;
    FormalDivisor operator-(const FormalDivisor& o) const { return *this + o.scaled(-1); }
    FormalDivisor scaled(int m) const;
    // Adds -degree * infinity so the result has degree 0.
    FormalDivisor balanced() const;
    // Positive and negative parts away from infinity (both effective).
    FormalDivisor affine_positive() const;
    FormalDivisor affine_negative() const;
    // Smallest shipped field holding every point and containing `floor`.
    FieldRef common_field(const BinaryField& floor) const;

    std::string to_string() const;

private:
    std::vector<Term> terms_;
};

class JacobianClass {
public:
    static JacobianClass identity(const Curve& c, const FieldRef& field);
    // Validates monic u (deg <= 2), deg v < deg u and v^2 + h v = f mod u.
    static JacobianClass from_mumford(const Curve& c, const Poly& u, const Poly& v);
    // Cantor reduction of a semi-reduced pair (any degree).
    static JacobianClass reduce(const Curve& c, const ModelRef& model, Poly u, Poly v);
    // Class of P - infinity.
    static JacobianClass of_point(const Curve& c, const CurvePoint& p);
    // "u=<hex coeffs>;v=<hex coeffs>;field=<d>"
    static JacobianClass parse(const Curve& c, const std::string& s);

    const Curve& curve() const { return curve_; }
    const ModelRef& model() const { return model_; }
    const BinaryField& field() const { return *model_->field; }
    const FieldRef& field_ref() const { return model_->field; }
    const Poly& u() const { return u_; }
    const Poly& v() const { return v_; }
    bool is_identity() const { return u_.degree() == 0; }

    JacobianClass operator+(const JacobianClass& o) const;
    JacobianClass operator-() const;
    JacobianClass operator-(const JacobianClass& o) const { return *this + (-o); }
    JacobianClass& operator+=(const JacobianClass& o) { return *this = *this + o; }

    // Same class over a larger shipped field.
    JacobianClass lifted(const FieldRef& target) const;
    // Same class over `sub` when its Mumford coefficients lie there.
    std::optional<JacobianClass> descended(const FieldRef& sub) const;
    // Over the smallest shipped field (containing the curve base) that holds u and v.
    JacobianClass minimal() const;
    // Same (u, v) viewed on another curve with the same equation, e.g. X(d) = X(0).
    JacobianClass on(const Curve& c) const;

    // Effective divisor D with this class equal to [D - deg(D) infinity],
    // over a field where u splits.
    FormalDivisor support() const;

    // Equal classes; fields may differ (compared over the compositum).
    bool operator==(const JacobianClass& o) const;
    bool operator!=(const JacobianClass& o) const { return !(*this == o); }
    // Total order within one field: (u, v) lexicographic.  Throws across fields.
    std::strong_ordering operator<=>(const JacobianClass& o) const;

    std::string to_string() const;

private:
    JacobianClass(Curve c, ModelRef m, Poly u, Poly v);

    Curve curve_;
    ModelRef model_;
    Poly u_;
    Poly v_;
};

JacobianClass mul_int(const JacobianClass& c, std::int64_t m);

// Reduced class of a degree-0 divisor (infinity terms included).
JacobianClass class_of(const Curve& c, const FormalDivisor& d);

// Every class of J(E), from the points of C over E and its quadratic
// extension; sorted.
std::vector<JacobianClass> enumerate_classes(const Curve& c, const FieldRef& field);
// Oracle: all (u, v) with u monic of degree <= 2, deg v < deg u and
// u | v^2 + h v + f, by brute force over the coefficients.
std::vector<JacobianClass> enumerate_classes_bruteforce(const Curve& c, const FieldRef& field);

// L(T) = 1 + a1 T + a2 T^2 + q a1 T^3 + q^2 T^4 over the curve base GF(q).
struct LPolynomial {
    std::uint64_t q = 0;
    std::int64_t a1 = 0;
    std::int64_t a2 = 0;

    std::vector<std::int64_t> coefficients() const;
    // #C(GF(q^j))
    std::int64_t points(int j) const;
    // #J(GF(q^j)) = prod (1 - alpha^j)
    std::int64_t jacobian_order(int j) const;
    bool functional_equation_holds() const;
};
// From #C(GF(q)) and #C(GF(q^2)).
LPolynomial zeta(const Curve& c);
// #J(E); cross-checked against point counts over E and E^2 when both fit.
std::int64_t group_order(const Curve& c, const FieldRef& field);

struct WeilIntervalInt {
    std::int64_t low;
    std::int64_t high;
};
// [(sqrt(q)-1)^4, (sqrt(q)+1)^4] rounded inward.
WeilIntervalInt weil_jacobian_interval(std::uint64_t q);

// Random class over `field`: sum of `terms` random point classes P - infinity.
JacobianClass random_class(const Curve& c, const FieldRef& field, std::mt19937_64& rng, int terms = 3);
// Random degree-0 divisor with `terms` affine points over `field`,
// multiplicities in [-3, 3], balanced at infinity.
FormalDivisor random_divisor(const Curve& c, const FieldRef& field, std::mt19937_64& rng, int terms);

// Element x^i (is_y = false) or x^i y of L(m infinity).
struct RRMonomial {
    int power = 0;
    bool is_y = false;
    int pole_order() const { return is_y ? 2 * power + 5 : 2 * power; }
    std::string to_string() const;
    bool operator==(const RRMonomial&) const = default;
};
// x-powers first, then x^j y.
std::vector<RRMonomial> riemann_roch_space(int m);

// phi = (a(x) + b(x) y) / denominator(x).
struct RationalFunction {
    FieldRef field;
    Poly a;
    Poly b;
    Poly denominator;
    std::vector<RRMonomial> basis;  // RR basis of the numerator search
    std::vector<bits_t> coordinates;  // numerator in that basis

    std::string to_string() const;
};

// Order of vanishing of a(x) + b(x) y at an affine point (which must be on the
// curve); returns `cap` when it is at least cap.
int local_order(const CurveModel& model, const Poly& a, const Poly& b, const CurvePoint& p, int cap);

// A function with divisor exactly D, or nullopt when D is not principal.
// Throws InternalError if a found candidate fails the exact divisor check.
std::optional<RationalFunction> principal_witness(const Curve& c, const FormalDivisor& d);
// Exact check div(phi) = D (norm identity plus local orders).
bool verify_divisor(const Curve& c, const RationalFunction& phi, const FormalDivisor& d);

// Independent reduction: the reduced divisor equivalent to D found from the
// minimal-pole function through D's support (no Cantor steps).
JacobianClass riemann_roch_reduce(const Curve& c, const FormalDivisor& d);

// F_n^* for the relative Frobenius F_n: X(n) -> X(n+1); c lives on X(n+1).
// Pointwise: every support point P contributes 2 * F^-1(P).
JacobianClass frobenius_pullback(const JacobianClass& c);
// Oracle route: 2 * (square roots of the Mumford coefficients).
JacobianClass frobenius_pullback_coefficients(const JacobianClass& c);
// V = F_0^* o ... o F_{d-1}^* on classes of X(n), d = deg of the base.
JacobianClass verschiebung(const JacobianClass& c);

struct TorsionReport {
    int r = 0;
    std::vector<JacobianClass> points;  // sorted, over `field`
    int field_degree = 0;               // where the search stopped
    bool stabilized = false;            // reached r^(2g) (r odd) or 2^g (r = 2)
    bool exhaustive = true;             // false when found by Sylow sampling
    std::vector<std::pair<int, std::size_t>> counts;  // (field degree, #J[r] found)
};
// J[r] over GF(q^j), j = 1..k.  r = 2 uses the exact criterion c = -c
// (u divides h); r = 3 enumerates J(E) when small and samples the Sylow
// subgroup otherwise.  Throws InternalError when the count exceeds r^4.
TorsionReport torsion_subgroup(const Curve& c, int r, int k, std::uint64_t seed = 1);

// Every class with 2c = 0 over `field`.
std::vector<JacobianClass> two_torsion(const Curve& c, const FieldRef& field);

// Branch-point criterion against #J[2] over GF(q^k).
struct OrdinarityCheck {
    bool branch_criterion = false;
    std::size_t two_torsion = 0;
    bool consistent = false;
};
OrdinarityCheck verify_ordinarity(const Curve& c, int k = 1);

}  // namespace vfix
