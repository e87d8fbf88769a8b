#pragma once

// The decomposable slice of rank-2 bundles as Kummer points J / {+-1}, the
// G-fixed points {Trivial, E1, E2}, the Verschiebung on them, and two
// projective utilities: pointwise-fixed lines of p-power-order transforms and
// the reduction of a quadratic pencil with a base point to a linear map.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vfix/algebra.hpp"
#include "vfix/group_action.hpp"
#include "vfix/jacobian.hpp"

namespace vfix {

// A class up to sign; the canonical representative is the smaller of
// (u, v), (u, v + h mod u) over the minimal field of definition.
class KummerPoint {
public:
    explicit KummerPoint(const JacobianClass& c);

    const JacobianClass& representative() const { return rep_; }
    bool is_trivial() const { return rep_.is_identity(); }
    // Same point of the Kummer surface (fields may differ).
    bool operator==(const KummerPoint& o) const;
    bool operator!=(const KummerPoint& o) const { return !(*this == o); }
    // Field degree first, then the representative.
    bool operator<(const KummerPoint& o) const;
    std::string to_string() const { return rep_.to_string(); }

private:
    JacobianClass rep_;
};

// g c in {c, -c}
bool kummer_fixed_by(const CurveAutomorphism& g, const JacobianClass& c);

struct KummerSearch {
    std::vector<KummerPoint> points;                   // sorted
    std::vector<std::pair<int, std::size_t>> scanned;  // (field degree, classes new at that field)
};
// Kummer points fixed by tau01, tau0inf and sigma, among the classes of
// J(GF(q^j)), j = 1..k.  Each class is examined over the smallest field where
// it is defined.  Up to GF(256) every class is listed; above that only
// J[2] and J[3] are scanned, which contain every fixed class.
KummerSearch g_fixed_kummer_points(const Curve& c, int k);

enum class BundleLabel { Trivial, E1, E2 };
std::string to_string(BundleLabel l);

struct GFixedBundle {
    BundleLabel label = BundleLabel::Trivial;
    KummerPoint point;
    std::optional<CurvePoint> q;  // the sigma-fixed point used (not for Trivial)
    JacobianClass cls;            // class(Q - tau01(Q)) or class(Q - iota tau01(Q))
};

// The four sigma-fixed points, searched over GF(q^j) for j = 1, 2, ...
std::vector<CurvePoint> sigma_fixed_points(const Curve& c, const AutomorphismGroup& g);
// Trivial, E1 = [Q - tau01(Q)], E2 = [Q - iota tau01(Q)].  Verifies that the
// Kummer point does not depend on Q and that the class has order exactly 3.
GFixedBundle build_E(const Curve& c, BundleLabel label);

// V = F_0^* o ... o F_{d-1}^* applied to the representative.
KummerPoint verschiebung_on_kummer(const KummerPoint& p);

// ---------------------------------------------------------------------------
// Small finite fields GF(p^k) for the projective utility in any characteristic.

class SmallField {
public:
    // Smallest monic irreducible modulus in lexicographic order; p^k <= 256.
    static SmallField create(int p, int k);

    int characteristic() const { return p_; }
    int degree() const { return k_; }
    int size() const { return q_; }
    int add(int a, int b) const { return t_->add[a * q_ + b]; }
    int sub(int a, int b) const { return add(a, t_->neg[b]); }
    int mul(int a, int b) const { return t_->mul[a * q_ + b]; }
    int neg(int a) const { return t_->neg[a]; }
    int inv(int a) const;
    std::string name() const;

private:
    struct Tables {
        std::vector<int> add, mul, neg, inv;
    };
    int p_ = 0, k_ = 0, q_ = 0;
    std::shared_ptr<const Tables> t_;  // shared between copies
};

// (n+1) x (n+1) invertible matrix acting on P^n, up to scalar.
class ProjectiveTransform {
public:
    ProjectiveTransform(const SmallField& f, int dim, std::vector<int> entries);
    static ProjectiveTransform identity(const SmallField& f, int dim);

    int dim() const { return dim_; }
    int at(int i, int j) const { return e_[i * dim_ + j]; }
    ProjectiveTransform operator*(const ProjectiveTransform& o) const;
    std::vector<int> apply(const std::vector<int>& v) const;
    bool is_scalar() const;
    // Order in PGL, or 0 when above `cap`.
    int projective_order(int cap = 4096) const;
    std::string to_string() const;

private:
    SmallField f_;
    int dim_;
    std::vector<int> e_;
};

// Scaled so the first nonzero coordinate is 1.
std::vector<int> normalize_projective(const SmallField& f, std::vector<int> v);
// All rational points a P1 + b P2 of the line, normalized.
std::vector<std::vector<int>> line_points(const SmallField& f, const std::vector<int>& p1, const std::vector<int>& p2);

struct PtrickTransformData {
    int order = 0;   // projective order (a power of p)
    int mu1 = 0;     // T P1 = mu1 P1
    int mu2 = 0;     // T P2 = mu2 P2
};

struct PtrickVerdict {
    bool pass = false;
    std::size_t points_checked = 0;
    std::vector<PtrickTransformData> transforms;
    std::optional<std::vector<int>> counterexample;  // a moved line point
};

// Every rational point of the line through P1, P2 is fixed by every transform.
// Throws PreconditionError when a transform does not have p-power order, when
// P1 = P2, or when P1 or P2 is not fixed.
PtrickVerdict ptrick_verify(const SmallField& f, const std::vector<ProjectiveTransform>& transforms,
                            const std::vector<int>& p1, const std::vector<int>& p2);

struct PtrickInstance {
    std::vector<ProjectiveTransform> transforms;
    std::vector<int> p1;
    std::vector<int> p2;
};
// lambda S U S^-1 with U unipotent upper triangular fixing e1 and e2, so S e1
// and S e2 are planted fixed points.
PtrickInstance random_ptrick_instance(const SmallField& f, int dim, int count, std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Quadratic pencils

struct PencilReduction {
    CommonLinearFactor factor;
    FieldRef check_field;        // field whose P^1 was scanned
    std::size_t points_checked = 0;
    std::size_t base_points = 0;
    bool agrees = false;         // [h1 : h2] = [l1 : l2] off the base locus
};

// h1(B) = h2(B) = 0 required.  The residual map [l1 : l2] is compared with
// [h1 : h2] on P^1 of `check_degree` (default: the quadratic extension of the
// input field, or the factorization field if larger).
PencilReduction reduce_quadratic_pencil(const FieldRef& field, const BinaryForm& h1, const BinaryForm& h2,
                                        ProjectivePoint1 base, int check_degree = 0);

struct PencilInstance {
    BinaryForm h1;
    BinaryForm h2;
    BinaryForm l;
    BinaryForm l1;
    BinaryForm l2;
    ProjectivePoint1 base;
};
PencilInstance random_pencil_instance(const FieldRef& field, std::mt19937_64& rng);

}  // namespace vfix
