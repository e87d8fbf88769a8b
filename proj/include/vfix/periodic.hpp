#pragma once

// Frobenius-periodic modules over a finite base: free modules over
// K'[s]/(s^n) with a structure matrix A, fixed sections v satisfying
// A v^(q) = v, where (.)^(q) raises coefficients to the q-th power and fixes s.
//
// The base is Spec K' for the coefficient field K' = GF(q^e).  Its Galois
// group is generated by the q^e-power Frobenius, which acts on fixed sections
// through N_e(A); the monodromy order is the order of that action.

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vfix/field.hpp"
#include "vfix/matrix.hpp"
#include "vfix/series.hpp"

namespace vfix {

// Coefficients raised to the 2^bits-th power.
SeriesMatrix twist(const SeriesMatrix& m, int bits);
SeriesMatrix map_matrix(const SeriesMatrix& m, const FieldEmbedding& e);

class FrobPeriodicModule {
public:
    // base = GF(q); a's entries live over `coeff`, an extension of base.
    FrobPeriodicModule(FieldRef base, FieldRef coeff, SeriesMatrix a);

    const BinaryField& base() const { return *base_; }
    const FieldRef& base_ref() const { return base_; }
    const FieldRef& coeff_ref() const { return coeff_; }
    const SeriesMatrix& matrix() const { return a_; }
    int q_bits() const { return base_->degree(); }            // q = 2^q_bits
    int coeff_degree() const { return coeff_->degree() / base_->degree(); }  // e
    int rank() const { return a_.rows(); }
    int truncation() const { return a_(0, 0).truncation(); }

    FrobPeriodicModule truncated(int n) const;
    // Structure matrix in the basis e U: U^-1 A U^(q).
    FrobPeriodicModule basis_change(const SeriesMatrix& u) const;
    std::string to_string() const;

private:
    FieldRef base_;
    FieldRef coeff_;
    SeriesMatrix a_;
};

// N_m(A) = A A^(q) ... A^(q^(m-1)).
SeriesMatrix twisted_norm(const SeriesMatrix& a, int q_bits, int m);
SeriesMatrix twisted_norm(const FrobPeriodicModule& mod, int m);

// Order of N_e(A), or nullopt when above cap.  For K' = GF(q) this is the
// smallest m with N_m(A) = I.
std::optional<int> monodromy_order(const FrobPeriodicModule& mod, int cap);

// Field GF(q^(e m)) over which C lives; throws FieldCapExceeded above GF(2^16).
FieldRef trivializing_field(const FrobPeriodicModule& mod, int m);

// C with A C^(q) = C over GF(q^(e m))[s]/(s^n): level 1 from the GF(2)-linear
// space of fixed vectors, level k+1 from level k through the Artin-Schreier
// system Delta^(q) + Delta = D_k.  Requires N_e(A)^m = I.
SeriesMatrix trivialize(const FrobPeriodicModule& mod, int m);

// The tower without knowing m: level 1 over the smallest GF(q^(e j)) whose
// fixed vectors span, then one quadratic extension whenever an Artin-Schreier
// step is obstructed by a trace.
struct TrivializationTower {
    std::vector<int> field_degrees;  // GF(2)-degree of the field after each level
    std::vector<int> extended_at;    // levels (1-based) that needed an extension
    FieldRef field;
    std::optional<SeriesMatrix> c;   // absent when the cap was hit
};
TrivializationTower trivialization_tower(const FrobPeriodicModule& mod);

struct Strictness {
    bool strict = false;
    std::optional<Series> witness;  // unit c with det(A) c^(q) = c
};
// det(A) trivializes over K' itself.  Cross-checked against N_e(det A) = 1.
Strictness strictness(const FrobPeriodicModule& mod);
bool is_strict(const FrobPeriodicModule& mod);

struct NormalizedModule {
    FrobPeriodicModule module;
    SeriesMatrix change;  // diag(c, 1, ..., 1)
};
// Basis change making det(A') = 1; PreconditionError when not strict.
NormalizedModule normalize_strict(const FrobPeriodicModule& mod);

// Invertible U over `field`[s]/(s^n) with A U^(2^twist_bits) = U B, if any.
// Exhaustive over the constant terms of the solution space.
std::optional<SeriesMatrix> find_intertwiner(const SeriesMatrix& a, const SeriesMatrix& b, int twist_bits,
                                             const FieldRef& field);

struct MonodromyReport {
    int cap = 0;
    std::optional<int> order;          // m
    bool witness = false;              // C computed (trivializing field under the cap)
    FieldRef field;                    // GF(q^(e m)) when witness
    std::optional<SeriesMatrix> c;
    std::optional<SeriesMatrix> rho;   // rho(Frob) = C^-1 N_e(A)^-1 C, entries in GF(q)[s]/(s^n)
    std::optional<int> rho_order;
    std::optional<Series> det_rho;
    bool strict = false;
    // The module with constant structure matrix rho^-1 (q^e-twist) is
    // isomorphic to (N_e(A), q^e-twist) over K' itself.
    bool rebuild_equivalent = false;
};
MonodromyReport extract_representation(const FrobPeriodicModule& mod, int cap = 4096);

struct OrderProfile {
    int cap = 0;
    std::vector<std::optional<int>> orders;  // m_n for n = 1..n_max; nullopt = above cap
    bool monotone = true;                    // non-decreasing; a decrease is flagged, not thrown
};
OrderProfile order_growth_profile(const std::function<FrobPeriodicModule(int)>& family, int n_max, int cap = 4096);
// Truncations 1..n of one module.
OrderProfile order_growth_profile(const FrobPeriodicModule& mod, int cap = 4096);

// Random invertible r x r matrix over coeff[s]/(s^n).
SeriesMatrix random_invertible(const FieldRef& coeff, int r, int n, std::mt19937_64& rng);

}  // namespace vfix
