#pragma once

// Artin-Schreier equations and binary quadratic forms.

#include <optional>
#include <string>
#include <vector>

#include "vfix/field.hpp"
#include "vfix/poly.hpp"

namespace vfix {

// Result of solving x^q + x = d.  When the equation has no root in the input
// field the root lives in its quadratic extension and extension_multiplier is 2.
struct ArtinSchreierRoot {
    FieldRef field;            // field holding the root
    bits_t root = 0;           // smallest root in integer order
    int extension_multiplier = 1;
    std::optional<FieldEmbedding> lift;  // input field -> `field`, when extended

    FieldElement element() const { return {*field, root}; }
};

// Solves x^q + x = d for q = 2^q_degree, a subfield order of `field`.
// The full solution set is root + GF(q).
ArtinSchreierRoot artin_schreier_solve(const FieldRef& field, int q_degree, bits_t d);

// Homogeneous polynomial in X, Y: coeffs[i] multiplies X^(deg-i) Y^i.
class BinaryForm {
public:
    BinaryForm(const BinaryField& f, std::vector<bits_t> coeffs);

    const BinaryField& field() const { return *field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bits_t coeff(int i) const { return c_[i]; }
    const std::vector<bits_t>& coeffs() const { return c_; }
    bool is_zero() const;

    bits_t eval(bits_t x, bits_t y) const;
    BinaryForm operator*(const BinaryForm& o) const;
    BinaryForm scaled(bits_t c) const;
    // Scaled so the first nonzero coefficient is 1.
    BinaryForm normalized() const;
    BinaryForm map(const FieldEmbedding& e) const;

    bool operator==(const BinaryForm& o) const { return c_ == o.c_ && field_->same_as(*o.field_); }
    std::string to_string() const;

private:
    const BinaryField* field_;
    std::vector<bits_t> c_;
};

// Point of P^1, normalized to (x : 1) or (1 : 0).
struct ProjectivePoint1 {
    bits_t x = 0;
    bits_t y = 1;

    static ProjectivePoint1 normalized(const BinaryField& f, bits_t x, bits_t y);
    bool is_infinity() const { return y == 0; }
    bool operator==(const ProjectivePoint1&) const = default;
};

std::vector<ProjectivePoint1> projective_line(const BinaryField& f);

// Projective zeros of a nonzero binary quadratic over its own field, affine
// ones ascending then (1:0); with multiplicity.
std::vector<ProjectivePoint1> quadratic_form_zeros(const BinaryForm& h);

// Sylvester resultant of two binary quadratics; zero iff they share a
// projective zero over the algebraic closure.
bits_t quadratic_resultant(const BinaryForm& h1, const BinaryForm& h2);

struct CommonLinearFactor {
    FieldRef field;                       // field of the factorization
    std::optional<FieldEmbedding> lift;   // input field -> field, when extended
    BinaryForm factor;                    // L, normalized
    BinaryForm residual1;                 // h1 = L * residual1
    BinaryForm residual2;                 // h2 = L * residual2
    ProjectivePoint1 common_zero;         // zero of L
};

// Splits off a common linear factor of two binary quadratics.  The factor is
// found by locating a common projective zero over the field or its quadratic
// extension; `preferred` selects which common zero to use when there are two.
CommonLinearFactor quadratic_common_linear_factor(const FieldRef& field, const BinaryForm& h1, const BinaryForm& h2,
                                                  std::optional<ProjectivePoint1> preferred = std::nullopt);

// Linear form vanishing at p, normalized.
BinaryForm linear_form_through(const BinaryField& f, ProjectivePoint1 p);

}  // namespace vfix
