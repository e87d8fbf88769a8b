#pragma once

// Binary finite fields GF(2^d), d <= 16, in a polynomial basis.
//
// Elements are bit masks (bit i = coefficient of x^i).  Element values
// (FieldElement, Poly, ...) keep a raw pointer to their field: the fields
// returned by BinaryField::standard() live for the whole program, fields made
// with BinaryField::create() must outlive every value built on them.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vfix/error.hpp"

namespace vfix {

using bits_t = std::uint32_t;

inline constexpr int kMaxFieldDegree = 16;

class BinaryField;
using FieldRef = std::shared_ptr<const BinaryField>;

// Raised when a modulus handed to BinaryField::create is reducible.
class ReducibleModulus : public PreconditionError {
public:
    ReducibleModulus(bits_t modulus, bits_t factor);
    bits_t modulus() const { return modulus_; }
    bits_t factor() const { return factor_; }

private:
    bits_t modulus_;
    bits_t factor_;
};

// Carry-less arithmetic on GF(2)[x] polynomials stored as bit masks.
namespace gf2x {
int degree(std::uint64_t p);
std::uint64_t mul(std::uint64_t a, std::uint64_t b);
std::uint64_t mod(std::uint64_t a, std::uint64_t m);
// Smallest nontrivial factor of p (degree >= 1), or nullopt when p is irreducible.
std::optional<bits_t> smallest_factor(bits_t p);
}  // namespace gf2x

class BinaryField {
public:
    // Verifies irreducibility by exhaustive trial division.
    static FieldRef create(int degree, bits_t modulus);
    // Field from the shipped modulus table (Conway polynomials, compatible
    // under the canonical embeddings).
    static FieldRef standard(int degree);
    static const BinaryField& gf(int degree) { return *standard(degree); }

    int degree() const { return degree_; }
    bits_t modulus() const { return modulus_; }
    std::uint32_t size() const { return 1u << degree_; }
    bool contains(bits_t a) const { return a < size(); }
    // Same degree and modulus: elements are interchangeable.
    bool same_as(const BinaryField& other) const
    {
        return degree_ == other.degree_ && modulus_ == other.modulus_;
    }

    bits_t add(bits_t a, bits_t b) const { return a ^ b; }
    bits_t mul(bits_t a, bits_t b) const
    {
        if (a == 0 || b == 0)
            return 0;
        return exp_[log_[a] + log_[b]];
    }
    bits_t square(bits_t a) const { return mul(a, a); }
    bits_t inv(bits_t a) const;
    bits_t div(bits_t a, bits_t b) const { return mul(a, inv(b)); }
    bits_t pow(bits_t a, std::uint64_t e) const;
    // Unique square root (squaring is a bijection in characteristic 2).
    bits_t sqrt(bits_t a) const;
    // a^(2^k); k may be negative.
    bits_t frobenius(bits_t a, int k) const;
    // Trace down to the subfield GF(2^sub_degree); sub_degree must divide degree.
    bits_t trace(bits_t a, int sub_degree = 1) const;

    // Smallest z with z^2 + z = d, if any.
    std::optional<bits_t> artin_schreier_root(bits_t d) const
    {
        bits_t z = as_root_[d];
        if (z == kNoRoot)
            return std::nullopt;
        return z;
    }

    // The residue class of x; a generator of the multiplicative group for the
    // shipped moduli.
    bits_t x() const { return degree_ == 1 ? 1u : 2u; }
    bits_t primitive_element() const { return primitive_; }
    std::uint32_t multiplicative_order(bits_t a) const;

    std::string name() const;

    BinaryField(int degree, bits_t modulus);  // use create()/standard()

private:
    static constexpr bits_t kNoRoot = 0xffffffffu;

    int degree_;
    bits_t modulus_;
    bits_t primitive_ = 1;
    std::vector<std::uint32_t> log_;
    std::vector<bits_t> exp_;
    std::vector<bits_t> as_root_;
};

// Value type for one element of a binary field.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(const BinaryField& f, bits_t bits);

    static FieldElement zero(const BinaryField& f) { return {f, 0}; }
    static FieldElement one(const BinaryField& f) { return {f, 1}; }

    const BinaryField& field() const { return *field_; }
    const BinaryField* field_ptr() const { return field_; }
    bits_t bits() const { return bits_; }
    bool is_zero() const { return bits_ == 0; }
    bool is_one() const { return bits_ == 1; }
    bool is_unit() const { return bits_ != 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const { return *this + o; }
    FieldElement operator-() const { return *this; }
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

    FieldElement inverse() const;
    FieldElement pow(std::uint64_t e) const { return {*field_, field_->pow(bits_, e)}; }
    FieldElement square() const { return {*field_, field_->square(bits_)}; }
    FieldElement sqrt() const { return {*field_, field_->sqrt(bits_)}; }
    FieldElement frobenius(int k = 1) const { return {*field_, field_->frobenius(bits_, k)}; }

    // Value equality; elements of different fields compare unequal.
    bool operator==(const FieldElement& o) const
    {
        return bits_ == o.bits_ && field_->same_as(*o.field_);
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    std::string to_hex() const;

private:
    void check_same_field(const FieldElement& o) const;

    const BinaryField* field_ = nullptr;
    bits_t bits_ = 0;
};

// Ring homomorphism GF(2^e) -> GF(2^d), e | d.
class FieldEmbedding {
public:
    FieldEmbedding(FieldRef source, FieldRef target, bits_t image_of_generator);

    const BinaryField& source() const { return *source_; }
    const BinaryField& target() const { return *target_; }
    const FieldRef& source_ref() const { return source_; }
    const FieldRef& target_ref() const { return target_; }
    bits_t image_of_generator() const { return image_; }

    bits_t apply(bits_t a) const;
    FieldElement apply(const FieldElement& a) const;
    // Inverse image, when b lies in the image subfield.
    std::optional<bits_t> preimage(bits_t b) const;
    std::optional<FieldElement> preimage(const FieldElement& b) const;

private:
    FieldRef source_;
    FieldRef target_;
    bits_t image_;
    std::vector<bits_t> basis_images_;
    // Row-reduced image basis for preimage: pivot bit -> (row, source combination).
    std::vector<std::pair<bits_t, bits_t>> echelon_;
};

// Canonical embedding.  Uses the norm-compatible root
// g^((2^d-1)/(2^e-1)) of the source modulus (g = x in the target) when it is
// a root, so that embeddings between shipped fields commute; otherwise the
// smallest root in integer order of the bit mask.
FieldEmbedding embed(const FieldRef& source, const FieldRef& target);

// Shipped modulus table: text lines "d,0xHEX".
std::map<int, bits_t> parse_modulus_table(std::string_view text);
std::map<int, bits_t> load_modulus_table(const std::string& path);
std::string_view shipped_modulus_table();

// Builds a field of given degree; "default" (nullopt) consults the shipped table.
FieldRef build_field(int degree, std::optional<bits_t> modulus = std::nullopt);

std::string to_hex(bits_t v);
bits_t parse_hex(std::string_view s);

}  // namespace vfix
