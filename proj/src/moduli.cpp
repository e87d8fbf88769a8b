#include "vfix/moduli.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace vfix {

KummerPoint::KummerPoint(const JacobianClass& c) : rep_(c.minimal())
{
    JacobianClass n = -rep_;
    if (n < rep_)
        rep_ = n;
}

bool KummerPoint::operator==(const KummerPoint& o) const
{
    return rep_ == o.rep_ || rep_ == -o.rep_;
}

bool KummerPoint::operator<(const KummerPoint& o) const
{
    if (rep_.field().degree() != o.rep_.field().degree())
        return rep_.field().degree() < o.rep_.field().degree();
    return rep_ < o.rep_;
}

bool kummer_fixed_by(const CurveAutomorphism& g, const JacobianClass& c)
{
    JacobianClass img = act_on_class(g, c);
    return img == c || img == -c;
}

namespace {

// Largest field whose classes enumerate_classes can list.
constexpr int kEnumerableDegree = 8;

bool generator_fixed(const AutomorphismGroup& g, const JacobianClass& c)
{
    // sigma first: it rejects almost everything
    return kummer_fixed_by(g.sigma(), c) && kummer_fixed_by(g.tau01(), c) && kummer_fixed_by(g.tau0inf(), c);
}

void add_unique(std::vector<KummerPoint>& out, const KummerPoint& p)
{
    if (std::find(out.begin(), out.end(), p) == out.end())
        out.push_back(p);
}

}  // namespace

KummerSearch g_fixed_kummer_points(const Curve& c, int k)
{
    if (k < 1 || k > 6)
        throw PreconditionError("search bound must be in 1..6");
    AutomorphismGroup g = automorphism_group(c);
    KummerSearch out;
    for (int j = 1; j <= k; ++j) {
        FieldRef e = c.extension(j);
        std::vector<JacobianClass> candidates;
        if (e->degree() <= kEnumerableDegree) {
            candidates = enumerate_classes(c, e);
        } else {
            // sigma c = c forces 3c = 0 (X / sigma has genus 0) and
            // sigma c = -c forces 2c = 0, so J[2] and J[3] hold every candidate.
            candidates = two_torsion(c, e);
            if (group_order(c, e) % 3 == 0) {
                TorsionReport t3 = torsion_subgroup(c, 3, j);
                if (!t3.stabilized || e->degree() % t3.field_degree != 0)
                    throw FieldCapExceeded("J[3] over " + e->name() + " not certified complete");
                for (const JacobianClass& x : t3.points)
                    candidates.push_back(x.lifted(e));
            }
        }
        std::size_t fresh = 0;
        for (const JacobianClass& cl : candidates) {
            JacobianClass m = cl.minimal();
            if (m.field().degree() < e->degree())
                continue;
            ++fresh;
            if (generator_fixed(g, m))
                add_unique(out.points, KummerPoint(m));
        }
        out.scanned.emplace_back(e->degree(), fresh);
    }
    for (const KummerPoint& p : out.points)
        for (const CurveAutomorphism& a : g.elements)
            if (!kummer_fixed_by(a, p.representative()))
                throw InternalError("generator-fixed point " + p.to_string() + " moved by a group element");
    std::sort(out.points.begin(), out.points.end());
    return out;
}

std::string to_string(BundleLabel l)
{
    switch (l) {
    case BundleLabel::Trivial:
        return "Trivial";
    case BundleLabel::E1:
        return "E1";
    case BundleLabel::E2:
        return "E2";
    }
    return "?";
}

std::vector<CurvePoint> sigma_fixed_points(const Curve& c, const AutomorphismGroup& g)
{
    for (int j = 1; c.base().degree() * j <= kMaxFieldDegree; ++j) {
        std::vector<CurvePoint> pts = fixed_points(g.sigma(), c.extension(j));
        if (pts.size() == 4)
            return pts;
        if (pts.size() > 4)
            throw InternalError("sigma has more than four fixed points");
    }
    throw FieldCapExceeded("sigma-fixed points not found under the degree cap");
}

GFixedBundle build_E(const Curve& c, BundleLabel label)
{
    if (label == BundleLabel::Trivial) {
        JacobianClass id = JacobianClass::identity(c, c.base_ref());
        return {label, KummerPoint(id), std::nullopt, id};
    }
    AutomorphismGroup g = automorphism_group(c);
    CurveAutomorphism partner = label == BundleLabel::E1 ? g.tau01() : g.iota() * g.tau01();
    std::vector<CurvePoint> qs = sigma_fixed_points(c, g);
    std::optional<GFixedBundle> first;
    for (const CurvePoint& q : qs) {
        FormalDivisor d = FormalDivisor::point(q) - FormalDivisor::point(act_on_point(partner, q));
        JacobianClass cls = class_of(c, d).minimal();
        if (cls.is_identity() || !mul_int(cls, 3).is_identity())
            throw InternalError(to_string(label) + " from " + q.to_string() + " does not have order 3");
        KummerPoint kp(cls);
        if (!first)
            first = GFixedBundle{label, kp, q, cls};
        else if (first->point != kp)
            throw InternalError(to_string(label) + " depends on the sigma-fixed point");
    }
    return *first;
}

KummerPoint verschiebung_on_kummer(const KummerPoint& p)
{
    return KummerPoint(verschiebung(p.representative()));
}

// ---------------------------------------------------------------------------

SmallField SmallField::create(int p, int k)
{
    if (p < 2 || k < 1)
        throw PreconditionError("bad field parameters");
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0)
            throw PreconditionError(std::to_string(p) + " is not prime");
    int q = 1;
    for (int i = 0; i < k; ++i) {
        q *= p;
        if (q > 256)
            throw PreconditionError("field too large");
    }
    SmallField f;
    f.p_ = p;
    f.k_ = k;
    f.q_ = q;
    auto digits = [&](int a) {
        std::vector<int> d(k);
        for (int i = 0; i < k; ++i, a /= p)
            d[i] = a % p;
        return d;
    };
    auto pack = [&](const std::vector<int>& d) {
        int a = 0;
        for (int i = k - 1; i >= 0; --i)
            a = a * p + d[i];
        return a;
    };
    auto t = std::make_shared<Tables>();
    t->add.resize(q * q);
    t->neg.resize(q);
    for (int a = 0; a < q; ++a) {
        std::vector<int> da = digits(a);
        for (int b = 0; b < q; ++b) {
            std::vector<int> db = digits(b), s(k);
            for (int i = 0; i < k; ++i)
                s[i] = (da[i] + db[i]) % p;
            t->add[a * q + b] = pack(s);
        }
        std::vector<int> n(k);
        for (int i = 0; i < k; ++i)
            n[i] = (p - da[i]) % p;
        t->neg[a] = pack(n);
    }
    // Modulus x^k + sum m_i x^i, tried in increasing order of m.
    for (int m = 0; m < q; ++m) {
        std::vector<int> low = digits(m);
        std::vector<int> table(q * q);
        bool field = true;
        for (int a = 0; a < q && field; ++a) {
            std::vector<int> da = digits(a);
            for (int b = 0; b < q; ++b) {
                std::vector<int> db = digits(b), prod(2 * k - 1, 0);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                for (int i = 2 * k - 2; i >= k; --i) {
                    int c = prod[i];
                    prod[i] = 0;
                    for (int j = 0; j < k; ++j)
                        prod[i - k + j] = ((prod[i - k + j] - c * low[j]) % p + p) % p;
                }
                prod.resize(k);
                int r = pack(prod);
                if (a != 0 && b != 0 && r == 0) {
                    field = false;
                    break;
                }
                table[a * q + b] = r;
            }
        }
        if (field) {
            t->mul = std::move(table);
            break;
        }
    }
    if (t->mul.empty())
        throw InternalError("no irreducible modulus found");
    t->inv.assign(q, 0);
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (t->mul[a * q + b] == 1)
                t->inv[a] = b;
    f.t_ = std::move(t);
    return f;
}

int SmallField::inv(int a) const
{
    if (a == 0)
        throw PreconditionError("inverse of zero");
    return t_->inv[a];
}

std::string SmallField::name() const
{
    return "GF(" + std::to_string(q_) + ")";
}

ProjectiveTransform::ProjectiveTransform(const SmallField& f, int dim, std::vector<int> entries)
    : f_(f), dim_(dim), e_(std::move(entries))
{
    if (dim < 2 || static_cast<int>(e_.size()) != dim * dim)
        throw PreconditionError("transform must be a square matrix of size >= 2");
    for (int x : e_)
        if (x < 0 || x >= f.size())
            throw PreconditionError("matrix entry outside the field");
    // invertibility by elimination
    std::vector<int> m = e_;
    for (int col = 0; col < dim; ++col) {
        int piv = -1;
        for (int r = col; r < dim; ++r)
            if (m[r * dim + col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0)
            throw PreconditionError("singular matrix");
        for (int j = 0; j < dim; ++j)
            std::swap(m[col * dim + j], m[piv * dim + j]);
        int iv = f.inv(m[col * dim + col]);
        for (int r = col + 1; r < dim; ++r) {
            int c = f.mul(m[r * dim + col], iv);
            for (int j = 0; j < dim; ++j)
                m[r * dim + j] = f.sub(m[r * dim + j], f.mul(c, m[col * dim + j]));
        }
    }
}

ProjectiveTransform ProjectiveTransform::identity(const SmallField& f, int dim)
{
    std::vector<int> e(dim * dim, 0);
    for (int i = 0; i < dim; ++i)
        e[i * dim + i] = 1;
    return {f, dim, e};
}

ProjectiveTransform ProjectiveTransform::operator*(const ProjectiveTransform& o) const
{
    if (o.dim_ != dim_)
        throw PreconditionError("dimension mismatch");
    std::vector<int> r(dim_ * dim_, 0);
    for (int i = 0; i < dim_; ++i)
        for (int k = 0; k < dim_; ++k) {
            int a = at(i, k);
            if (a == 0)
                continue;
            for (int j = 0; j < dim_; ++j)
                r[i * dim_ + j] = f_.add(r[i * dim_ + j], f_.mul(a, o.at(k, j)));
        }
    return {f_, dim_, r};
}

std::vector<int> ProjectiveTransform::apply(const std::vector<int>& v) const
{
    if (static_cast<int>(v.size()) != dim_)
        throw PreconditionError("point dimension mismatch");
    std::vector<int> r(dim_, 0);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            r[i] = f_.add(r[i], f_.mul(at(i, j), v[j]));
    return r;
}

bool ProjectiveTransform::is_scalar() const
{
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (at(i, j) != (i == j ? at(0, 0) : 0))
                return false;
    return true;
}

int ProjectiveTransform::projective_order(int cap) const
{
    ProjectiveTransform m = *this;
    for (int k = 1; k <= cap; ++k) {
        if (m.is_scalar())
            return k;
        m = m * *this;
    }
    return 0;
}

std::string ProjectiveTransform::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < dim_; ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < dim_; ++j)
            os << (j ? "," : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

std::vector<int> normalize_projective(const SmallField& f, std::vector<int> v)
{
    auto it = std::find_if(v.begin(), v.end(), [](int x) { return x != 0; });
    if (it == v.end())
        throw PreconditionError("zero vector is not a projective point");
    int iv = f.inv(*it);
    for (int& x : v)
        x = f.mul(x, iv);
    return v;
}

std::vector<std::vector<int>> line_points(const SmallField& f, const std::vector<int>& p1, const std::vector<int>& p2)
{
    std::vector<std::vector<int>> out{normalize_projective(f, p1)};
    for (int lam = 0; lam < f.size(); ++lam) {
        std::vector<int> v(p1.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = f.add(f.mul(lam, p1[i]), p2[i]);
        out.push_back(normalize_projective(f, v));
    }
    return out;
}

namespace {

// mu with T v = mu v, or nullopt when v is not an eigenvector.
std::optional<int> eigenvalue(const SmallField& f, const ProjectiveTransform& t, const std::vector<int>& v)
{
    std::vector<int> w = t.apply(v);
    std::size_t i = 0;
    while (i < v.size() && v[i] == 0)
        ++i;
    if (i == v.size())
        throw PreconditionError("zero vector is not a projective point");
    int mu = f.mul(w[i], f.inv(v[i]));
    for (std::size_t j = 0; j < v.size(); ++j)
        if (w[j] != f.mul(mu, v[j]))
            return std::nullopt;
    return mu;
}

bool is_power_of(int n, int p)
{
    if (n < 1)
        return false;
    while (n % p == 0)
        n /= p;
    return n == 1;
}

}  // namespace

PtrickVerdict ptrick_verify(const SmallField& f, const std::vector<ProjectiveTransform>& transforms,
                            const std::vector<int>& p1, const std::vector<int>& p2)
{
    if (normalize_projective(f, p1) == normalize_projective(f, p2))
        throw PreconditionError("P1 = P2");
    PtrickVerdict out;
    for (const ProjectiveTransform& t : transforms) {
        int ord = t.projective_order();
        if (!is_power_of(ord, f.characteristic()))
            throw PreconditionError("transform " + t.to_string() + " does not have p-power order");
        auto mu1 = eigenvalue(f, t, p1);
        auto mu2 = eigenvalue(f, t, p2);
        if (!mu1 || !mu2)
            throw PreconditionError("P1 or P2 is not fixed by " + t.to_string());
        out.transforms.push_back({ord, *mu1, *mu2});
    }
    std::vector<std::vector<int>> pts = line_points(f, p1, p2);
    for (const std::vector<int>& x : pts) {
        for (const ProjectiveTransform& t : transforms)
            if (!eigenvalue(f, t, x)) {
                out.counterexample = x;
                break;
            }
        if (out.counterexample)
            break;
        ++out.points_checked;
    }
    out.pass = !out.counterexample;
    return out;
}

namespace {

std::vector<int> random_matrix(const SmallField& f, int dim, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(0, f.size() - 1);
    std::vector<int> e(dim * dim);
    for (int& x : e)
        x = d(rng);
    return e;
}

// Inverse by Gauss-Jordan; nullopt when singular.
std::optional<std::vector<int>> inverse(const SmallField& f, int dim, std::vector<int> m)
{
    std::vector<int> r(dim * dim, 0);
    for (int i = 0; i < dim; ++i)
        r[i * dim + i] = 1;
    for (int col = 0; col < dim; ++col) {
        int piv = -1;
        for (int row = col; row < dim; ++row)
            if (m[row * dim + col] != 0) {
                piv = row;
                break;
            }
        if (piv < 0)
            return std::nullopt;
        for (int j = 0; j < dim; ++j) {
            std::swap(m[col * dim + j], m[piv * dim + j]);
            std::swap(r[col * dim + j], r[piv * dim + j]);
        }
        int iv = f.inv(m[col * dim + col]);
        for (int j = 0; j < dim; ++j) {
            m[col * dim + j] = f.mul(m[col * dim + j], iv);
            r[col * dim + j] = f.mul(r[col * dim + j], iv);
        }
        for (int row = 0; row < dim; ++row) {
            if (row == col || m[row * dim + col] == 0)
                continue;
            int c = m[row * dim + col];
            for (int j = 0; j < dim; ++j) {
                m[row * dim + j] = f.sub(m[row * dim + j], f.mul(c, m[col * dim + j]));
                r[row * dim + j] = f.sub(r[row * dim + j], f.mul(c, r[col * dim + j]));
            }
        }
    }
    return r;
}

}  // namespace

PtrickInstance random_ptrick_instance(const SmallField& f, int dim, int count, std::mt19937_64& rng)
{
    if (dim < 2 || count < 1)
        throw PreconditionError("need dim >= 2 and at least one transform");
    std::vector<int> s, s_inv;
    for (;;) {
        s = random_matrix(f, dim, rng);
        if (auto i = inverse(f, dim, s)) {
            s_inv = *i;
            break;
        }
    }
    ProjectiveTransform S(f, dim, s), Sinv(f, dim, s_inv);
    std::uniform_int_distribution<int> d(0, f.size() - 1), nz(1, f.size() - 1);
    PtrickInstance out;
    for (int n = 0; n < count; ++n) {
        std::vector<int> u(dim * dim, 0);
        int lam = nz(rng);
        for (int i = 0; i < dim; ++i) {
            u[i * dim + i] = lam;
            for (int j = std::max(i + 1, 2); j < dim; ++j)
                u[i * dim + j] = f.mul(lam, d(rng));
        }
        out.transforms.push_back(S * ProjectiveTransform(f, dim, u) * Sinv);
    }
    for (int i = 0; i < dim; ++i) {
        out.p1.push_back(S.at(i, 0));
        out.p2.push_back(S.at(i, 1));
    }
    return out;
}

// ---------------------------------------------------------------------------

PencilReduction reduce_quadratic_pencil(const FieldRef& field, const BinaryForm& h1, const BinaryForm& h2,
                                        ProjectivePoint1 base, int check_degree)
{
    if (h1.degree() != 2 || h2.degree() != 2)
        throw PreconditionError("pencil members must be binary quadratics");
    if (h1.eval(base.x, base.y) != 0 || h2.eval(base.x, base.y) != 0)
        throw PreconditionError("base point is not a common zero");
    CommonLinearFactor fac = quadratic_common_linear_factor(field, h1, h2, base);
    int deg = check_degree;
    if (deg == 0)
        deg = std::lcm(2 * field->degree(), fac.field->degree());
    if (deg % field->degree() != 0 || deg % fac.field->degree() != 0)
        throw PreconditionError("check field must contain the factorization field");
    if (deg > kMaxFieldDegree)
        throw FieldCapExceeded("check field above the degree cap");
    FieldRef check = BinaryField::standard(deg);
    BinaryForm g1 = h1.map(embed(field, check)), g2 = h2.map(embed(field, check));
    FieldEmbedding fe = embed(fac.field, check);
    BinaryForm r1 = fac.residual1.map(fe), r2 = fac.residual2.map(fe);
    const BinaryField& F = *check;
    PencilReduction out{fac, check, 0, 0, true};
    for (ProjectivePoint1 p : projective_line(F)) {
        bits_t a = g1.eval(p.x, p.y), b = g2.eval(p.x, p.y);
        if (a == 0 && b == 0) {
            ++out.base_points;
            continue;
        }
        bits_t c = r1.eval(p.x, p.y), d = r2.eval(p.x, p.y);
        if ((c == 0 && d == 0) || F.mul(a, d) != F.mul(b, c))
            out.agrees = false;
        ++out.points_checked;
    }
    return out;
}

PencilInstance random_pencil_instance(const FieldRef& field, std::mt19937_64& rng)
{
    const BinaryField& f = *field;
    std::uniform_int_distribution<bits_t> d(0, f.size() - 1);
    auto linear = [&] {
        for (;;) {
            BinaryForm l(f, {d(rng), d(rng)});
            if (!l.is_zero())
                return l;
        }
    };
    BinaryForm l = linear(), l1 = linear(), l2 = linear();
    ProjectivePoint1 base = ProjectivePoint1::normalized(f, l.coeff(1), l.coeff(0));
    return {l * l1, l * l2, l, l1, l2, base};
}

}  // namespace vfix
