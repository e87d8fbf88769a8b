#pragma once

#include <string>
#include <vector>

#include "vfix/field.hpp"

namespace vfix {

// Element of the truncated power-series ring K[s]/(s^n) over a binary field K.
//
// The Frobenius twist acts on the coefficients only: s is fixed.
class Series {
public:
    Series(const BinaryField& f, int n);  // zero
    Series(const BinaryField& f, int n, std::vector<bits_t> coeffs);

    static Series zero(const BinaryField& f, int n) { return {f, n}; }
    static Series one(const BinaryField& f, int n) { return constant(f, n, 1); }
    static Series constant(const BinaryField& f, int n, bits_t c);
    // c * s^k
    static Series monomial(const BinaryField& f, int n, bits_t c, int k);

    const BinaryField& field() const { return *field_; }
    int truncation() const { return static_cast<int>(c_.size()); }
    bits_t coeff(int i) const { return i >= 0 && i < truncation() ? c_[i] : 0; }
    const std::vector<bits_t>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const { return c_[0] != 0; }
    // Index of the lowest nonzero coefficient, or n for zero.
    int valuation() const;

    Series operator+(const Series& o) const;
    Series operator-(const Series& o) const { return *this + o; }
    Series operator-() const { return *this; }
    Series operator*(const Series& o) const;
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }
    Series scaled(bits_t c) const;
    Series inverse() const;
    Series pow(std::uint64_t e) const;

    // Coefficients raised to the 2^k-th power; s untouched.
    Series twist(int k) const;
    Series truncated(int m) const;
    Series map(const FieldEmbedding& e) const;
    std::optional<Series> descend(const FieldEmbedding& e) const;

    bool operator==(const Series& o) const
    {
        return c_ == o.c_ && field_->same_as(*o.field_);
    }
    bool operator!=(const Series& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void check_compatible(const Series& o) const;

    const BinaryField* field_;
    std::vector<bits_t> c_;
};

inline Series zero_like(const Series& a) { return Series::zero(a.field(), a.truncation()); }
inline Series one_like(const Series& a) { return Series::one(a.field(), a.truncation()); }
inline FieldElement zero_like(const FieldElement& a) { return FieldElement::zero(a.field()); }
inline FieldElement one_like(const FieldElement& a) { return FieldElement::one(a.field()); }

}  // namespace vfix
