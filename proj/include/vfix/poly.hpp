#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "vfix/field.hpp"

namespace vfix {

// Dense univariate polynomial over a binary field, coefficients low to high,
// always normalized (no trailing zero coefficients).
class Poly {
public:
    explicit Poly(const BinaryField& f) : field_(&f) {}
    Poly(const BinaryField& f, std::vector<bits_t> coeffs);

    static Poly constant(const BinaryField& f, bits_t c) { return Poly(f, {c}); }
    static Poly monomial(const BinaryField& f, bits_t c, int k);
    static Poly x(const BinaryField& f) { return monomial(f, 1, 1); }
    // Monic polynomial with the given roots (with repetition).
    static Poly from_roots(const BinaryField& f, const std::vector<bits_t>& roots);

    const BinaryField& field() const { return *field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
    bits_t coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
    FieldElement coefficient(int i) const { return {*field_, coeff(i)}; }
    bits_t leading() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<bits_t>& coeffs() const { return c_; }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const { return *this + o; }
    Poly operator*(const Poly& o) const;
    Poly operator/(const Poly& o) const { return divmod(*this, o).first; }
    Poly operator%(const Poly& o) const { return divmod(*this, o).second; }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(bits_t c) const;
    Poly monic() const;
    Poly derivative() const;
    Poly pow(unsigned e) const;

    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

    bits_t eval(bits_t x) const;
    FieldElement eval(const FieldElement& x) const;
    // p(g(x))
    Poly compose(const Poly& g) const;

    // Coefficientwise x -> x^(2^k).
    Poly frobenius(int k) const;
    Poly map(const FieldEmbedding& e) const;
    // Inverse of map(): nullopt unless every coefficient lies in the image.
    std::optional<Poly> descend(const FieldEmbedding& e) const;

    bool operator==(const Poly& o) const { return c_ == o.c_ && field_->same_as(*o.field_); }
    bool operator!=(const Poly& o) const { return !(*this == o); }
    // Lexicographic on the coefficient list, low degree first.
    std::strong_ordering operator<=>(const Poly& o) const;

    // Comma separated hex coefficients, low to high; "0" for the zero polynomial.
    std::string to_hex() const;
    static Poly from_hex(const BinaryField& f, const std::string& s);

private:
    void normalize();
    void check_same_field(const Poly& o) const;

    const BinaryField* field_;
    std::vector<bits_t> c_;
};

struct ExtendedGcd {
    Poly gcd;  // monic, or zero when both inputs are zero
    Poly s;
    Poly t;  // s*a + t*b == gcd
};

Poly gcd(const Poly& a, const Poly& b);
ExtendedGcd xgcd(const Poly& a, const Poly& b);

// All roots in the field of definition, ascending, by exhaustive evaluation.
std::vector<bits_t> poly_roots(const Poly& p);
// Roots of a polynomial of degree <= 2 in its field, with multiplicity,
// ascending; uses the Artin-Schreier table instead of a scan.
std::vector<bits_t> quadratic_roots(const Poly& p);

}  // namespace vfix
