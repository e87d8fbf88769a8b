#include "vfix/periodic.hpp"

#include <sstream>

#include "vfix/algebra.hpp"
#include "vfix/linalg.hpp"

namespace vfix {

SeriesMatrix twist(const SeriesMatrix& m, int bits)
{
    return m.map([bits](const Series& x) { return x.twist(bits); });
}

SeriesMatrix map_matrix(const SeriesMatrix& m, const FieldEmbedding& e)
{
    return m.map([&e](const Series& x) { return x.map(e); });
}

FrobPeriodicModule::FrobPeriodicModule(FieldRef base, FieldRef coeff, SeriesMatrix a)
    : base_(std::move(base)), coeff_(std::move(coeff)), a_(std::move(a))
{
    if (coeff_->degree() % base_->degree() != 0)
        throw PreconditionError(coeff_->name() + " does not contain " + base_->name());
    if (!a_.is_square())
        throw PreconditionError("structure matrix must be square");
    const int n = a_(0, 0).truncation();
    for (const Series& x : a_.entries())
        if (!x.field().same_as(*coeff_) || x.truncation() != n)
            throw PreconditionError("structure matrix entries must live in " + coeff_->name() + "[s]/(s^" +
                                    std::to_string(n) + ")");
    if (!a_.is_invertible())
        throw PreconditionError("structure matrix is not invertible");
}

FrobPeriodicModule FrobPeriodicModule::truncated(int n) const
{
    if (n < 1 || n > truncation())
        throw PreconditionError("truncation must be in 1.." + std::to_string(truncation()));
    return {base_, coeff_, a_.map([n](const Series& x) { return x.truncated(n); })};
}

FrobPeriodicModule FrobPeriodicModule::basis_change(const SeriesMatrix& u) const
{
    auto inv = u.inverse();
    if (!inv)
        throw PreconditionError("basis change is not invertible");
    return {base_, coeff_, *inv * a_ * twist(u, q_bits())};
}

std::string FrobPeriodicModule::to_string() const
{
    std::ostringstream os;
    os << "q=2^" << q_bits() << ";coeff=" << coeff_->name() << ";n=" << truncation() << ";A=[";
    for (int i = 0; i < rank(); ++i) {
        os << (i ? ";" : "");
        for (int j = 0; j < rank(); ++j)
            os << (j ? "," : "") << a_(i, j).to_string();
    }
    os << "]";
    return os.str();
}

SeriesMatrix twisted_norm(const SeriesMatrix& a, int q_bits, int m)
{
    if (m < 1)
        throw PreconditionError("twisted norm needs m >= 1");
    SeriesMatrix n = a;
    SeriesMatrix t = a;
    for (int i = 1; i < m; ++i) {
        t = twist(t, q_bits);
        n = n * t;
    }
    return n;
}

SeriesMatrix twisted_norm(const FrobPeriodicModule& mod, int m)
{
    return twisted_norm(mod.matrix(), mod.q_bits(), m);
}

std::optional<int> monodromy_order(const FrobPeriodicModule& mod, int cap)
{
    SeriesMatrix n = twisted_norm(mod, mod.coeff_degree());
    SeriesMatrix p = n;
    for (int m = 1; m <= cap; ++m) {
        if (p.is_identity())
            return m;
        p = p * n;
    }
    return std::nullopt;
}

FieldRef trivializing_field(const FrobPeriodicModule& mod, int m)
{
    long deg = static_cast<long>(mod.coeff_ref()->degree()) * m;
    if (deg > kMaxFieldDegree)
        throw FieldCapExceeded("trivializing field GF(2^" + std::to_string(deg) + ") above the degree cap");
    return BinaryField::standard(static_cast<int>(deg));
}

namespace {

// GF(2)-basis of {v in F^r : A0 v^(q) = v}.
std::vector<std::vector<bits_t>> fixed_vectors(const FieldMatrix& a0, int q_bits, const BinaryField& f)
{
    const int r = a0.rows();
    const int d = f.degree();
    std::vector<BitVector> cols;
    for (int i = 0; i < r; ++i)
        for (int b = 0; b < d; ++b) {
            // image of the unit vector with bit b in coordinate i
            bits_t x = f.frobenius(bits_t{1} << b, q_bits);
            BitVector col(r * d);
            for (int k = 0; k < r; ++k) {
                bits_t y = f.mul(a0(k, i).bits(), x) ^ (k == i ? bits_t{1} << b : 0);
                for (int t = 0; t < d; ++t)
                    if ((y >> t) & 1)
                        col.set(k * d + t);
            }
            cols.push_back(col);
        }
    auto sol = solve_gf2(cols, BitVector(r * d));
    std::vector<std::vector<bits_t>> out;
    for (const BitVector& k : sol->kernel) {
        std::vector<bits_t> v(r, 0);
        for (int i = 0; i < r; ++i)
            for (int b = 0; b < d; ++b)
                if (k.get(i * d + b))
                    v[i] |= bits_t{1} << b;
        out.push_back(v);
    }
    return out;
}

// Level-1 witness: r fixed vectors independent over f, or nullopt.
std::optional<FieldMatrix> level_one(const FieldMatrix& a0, int q_bits, const BinaryField& f)
{
    const int r = a0.rows();
    std::vector<std::vector<bits_t>> chosen;
    for (const auto& v : fixed_vectors(a0, q_bits, f)) {
        std::vector<bits_t> e;
        chosen.push_back(v);
        // rows = coordinates, cols = chosen vectors
        for (int i = 0; i < r; ++i)
            for (const auto& w : chosen)
                e.push_back(w[i]);
        if (rank(f, r, static_cast<int>(chosen.size()), e) < static_cast<int>(chosen.size()))
            chosen.pop_back();
        if (static_cast<int>(chosen.size()) == r)
            break;
    }
    if (static_cast<int>(chosen.size()) < r)
        return std::nullopt;
    FieldMatrix c = FieldMatrix::zero(r, r, FieldElement::zero(f));
    for (int j = 0; j < r; ++j)
        for (int i = 0; i < r; ++i)
            c(i, j) = FieldElement(f, chosen[j][i]);
    return c;
}

SeriesMatrix constant_lift(const FieldMatrix& c, int n)
{
    return c.map([n](const FieldElement& x) { return Series::constant(x.field(), n, x.bits()); });
}

FieldMatrix constant_term(const SeriesMatrix& m)
{
    return m.map([](const Series& x) { return FieldElement(x.field(), x.coeff(0)); });
}

// The Artin-Schreier step at level k (C correct mod s^k): returns the
// corrected C mod s^(k+1), or nullopt when some entry's equation needs a
// quadratic extension of the field of C.
std::optional<SeriesMatrix> lift_level(const SeriesMatrix& a, const SeriesMatrix& c, int q_bits, int k)
{
    const BinaryField& f = c(0, 0).field();
    FieldRef fr = BinaryField::standard(f.degree());
    const int r = a.rows();
    SeriesMatrix e = *c.inverse() * a * twist(c, q_bits);
    SeriesMatrix delta = c;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const Series& x = e(i, j);
            for (int t = 1; t < k; ++t)
                if (x.coeff(t) != 0)
                    throw InternalError("trivialization incorrect below level " + std::to_string(k));
            ArtinSchreierRoot root = artin_schreier_solve(fr, q_bits, x.coeff(k));
            if (root.extension_multiplier != 1)
                return std::nullopt;
            delta(i, j) = Series::monomial(f, x.truncation(), root.root, k);
        }
    return c * (SeriesMatrix::identity(r, c(0, 0)) + delta);
}

void check_trivialization(const SeriesMatrix& a, const SeriesMatrix& c, int q_bits)
{
    if (!c.is_invertible() || a * twist(c, q_bits) != c)
        throw InternalError("trivialization check A C^(q) = C failed");
}

}  // namespace

SeriesMatrix trivialize(const FrobPeriodicModule& mod, int m)
{
    if (m < 1)
        throw PreconditionError("m must be >= 1");
    if (!twisted_norm(mod, mod.coeff_degree()).pow(m).is_identity())
        throw PreconditionError("N_e(A)^m is not the identity");
    FieldRef k = trivializing_field(mod, m);
    FieldEmbedding emb = embed(mod.coeff_ref(), k);
    SeriesMatrix a = map_matrix(mod.matrix(), emb);
    const int n = mod.truncation();
    auto c0 = level_one(constant_term(a), mod.q_bits(), *k);
    if (!c0)
        throw Error("no level-1 witness over " + k->name());
    SeriesMatrix c = constant_lift(*c0, n);
    for (int lvl = 1; lvl < n; ++lvl) {
        auto next = lift_level(a, c, mod.q_bits(), lvl);
        if (!next)
            throw InternalError("trace obstruction although N_e(A)^m = I");
        c = *next;
    }
    check_trivialization(a, c, mod.q_bits());
    return c;
}

TrivializationTower trivialization_tower(const FrobPeriodicModule& mod)
{
    TrivializationTower out;
    const int n = mod.truncation();
    const int step = mod.coeff_ref()->degree();
    std::optional<FieldMatrix> c0;
    for (int deg = step; deg <= kMaxFieldDegree && !c0; deg += step) {
        out.field = BinaryField::standard(deg);
        c0 = level_one(constant_term(map_matrix(mod.matrix(), embed(mod.coeff_ref(), out.field))), mod.q_bits(),
                       *out.field);
    }
    if (!c0)
        return out;
    out.field_degrees.push_back(out.field->degree());
    SeriesMatrix c = constant_lift(*c0, n);
    for (int lvl = 1; lvl < n; ++lvl) {
        SeriesMatrix a = map_matrix(mod.matrix(), embed(mod.coeff_ref(), out.field));
        auto next = lift_level(a, c, mod.q_bits(), lvl);
        if (!next) {
            if (2 * out.field->degree() > kMaxFieldDegree)
                return out;
            FieldRef ext = BinaryField::standard(2 * out.field->degree());
            c = map_matrix(c, embed(out.field, ext));
            out.field = ext;
            out.extended_at.push_back(lvl + 1);
            a = map_matrix(mod.matrix(), embed(mod.coeff_ref(), out.field));
            next = lift_level(a, c, mod.q_bits(), lvl);
            if (!next)
                throw InternalError("Artin-Schreier step obstructed after a quadratic extension");
        }
        c = *next;
        out.field_degrees.push_back(out.field->degree());
    }
    check_trivialization(map_matrix(mod.matrix(), embed(mod.coeff_ref(), out.field)), c, mod.q_bits());
    out.c = c;
    return out;
}

Strictness strictness(const FrobPeriodicModule& mod)
{
    const BinaryField& f = *mod.coeff_ref();
    const Series det = mod.matrix().determinant();
    const int n = mod.truncation();
    const int d = f.degree();
    // kernel of c -> det c^(q) + c, as a GF(2)-linear map on coefficient bits
    std::vector<BitVector> cols;
    for (int t = 0; t < n; ++t)
        for (int b = 0; b < d; ++b) {
            Series c = Series::monomial(f, n, bits_t{1} << b, t);
            Series img = det * c.twist(mod.q_bits()) + c;
            BitVector col(n * d);
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < d; ++v)
                    if ((img.coeff(u) >> v) & 1)
                        col.set(u * d + v);
            cols.push_back(col);
        }
    auto sol = solve_gf2(cols, BitVector(n * d));
    Strictness out;
    for (const BitVector& k : sol->kernel) {
        std::vector<bits_t> co(n, 0);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < d; ++v)
                if (k.get(u * d + v))
                    co[u] |= bits_t{1} << v;
        if (co[0] != 0) {
            out.strict = true;
            out.witness = Series(f, n, co);
            break;
        }
    }
    // Hilbert 90 for K'/GF(q)
    Series norm = det;
    Series t = det;
    for (int i = 1; i < mod.coeff_degree(); ++i) {
        t = t.twist(mod.q_bits());
        norm = norm * t;
    }
    if (out.strict != norm.is_one())
        throw InternalError("strictness witness search disagrees with the norm criterion");
    return out;
}

bool is_strict(const FrobPeriodicModule& mod)
{
    return strictness(mod).strict;
}

NormalizedModule normalize_strict(const FrobPeriodicModule& mod)
{
    Strictness s = strictness(mod);
    if (!s.strict)
        throw PreconditionError("module is not strictly Frobenius-periodic");
    SeriesMatrix u = SeriesMatrix::identity(mod.rank(), *s.witness);
    u(0, 0) = *s.witness;
    FrobPeriodicModule out = mod.basis_change(u);
    if (!out.matrix().determinant().is_one())
        throw InternalError("normalization did not reach det = 1");
    return {out, u};
}

std::optional<SeriesMatrix> find_intertwiner(const SeriesMatrix& a, const SeriesMatrix& b, int twist_bits,
                                             const FieldRef& field)
{
    const int r = a.rows();
    const int n = a(0, 0).truncation();
    const int d = field->degree();
    const int unknowns = r * r * n * d;
    auto index = [&](int i, int j, int t, int bit) { return ((i * r + j) * n + t) * d + bit; };
    const Series zero = Series::zero(*field, n);
    auto flatten = [&](const SeriesMatrix& m) {
        BitVector v(unknowns);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                for (int t = 0; t < n; ++t)
                    for (int bit = 0; bit < d; ++bit)
                        if ((m(i, j).coeff(t) >> bit) & 1)
                            v.set(index(i, j, t, bit));
        return v;
    };
    std::vector<BitVector> cols;
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int t = 0; t < n; ++t)
                for (int bit = 0; bit < d; ++bit) {
                    SeriesMatrix u = SeriesMatrix::zero(r, r, zero);
                    u(i, j) = Series::monomial(*field, n, bits_t{1} << bit, t);
                    SeriesMatrix tw = twist_bits == 0 ? u : twist(u, twist_bits);
                    cols.push_back(flatten(a * tw + u * b));
                }
    auto sol = solve_gf2(cols, BitVector(unknowns));
    // Reduce the constant-term projections of the kernel to an echelon basis.
    const int level0 = r * r * d;
    auto project = [&](const BitVector& k) {
        BitVector p(level0);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                for (int bit = 0; bit < d; ++bit)
                    if (k.get(index(i, j, 0, bit)))
                        p.set((i * r + j) * d + bit);
        return p;
    };
    std::vector<std::pair<BitVector, BitVector>> basis;  // (projection, kernel vector)
    for (const BitVector& k : sol->kernel) {
        BitVector p = project(k);
        BitVector full = k;
        for (bool reduced = true; reduced && !p.is_zero();) {
            reduced = false;
            for (const auto& [bp, bk] : basis)
                if (bp.lowest_set() == p.lowest_set()) {
                    p ^= bp;
                    full ^= bk;
                    reduced = true;
                    break;
                }
        }
        if (!p.is_zero())
            basis.emplace_back(p, full);
    }
    if (basis.size() > 16)
        throw FieldCapExceeded("intertwiner search space above 2^16");
    auto to_matrix = [&](const BitVector& k) {
        SeriesMatrix u = SeriesMatrix::zero(r, r, zero);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                std::vector<bits_t> co(n, 0);
                for (int t = 0; t < n; ++t)
                    for (int bit = 0; bit < d; ++bit)
                        if (k.get(index(i, j, t, bit)))
                            co[t] |= bits_t{1} << bit;
                u(i, j) = Series(*field, n, co);
            }
        return u;
    };
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << basis.size()); ++mask) {
        BitVector k(unknowns);
        for (std::size_t i = 0; i < basis.size(); ++i)
            if ((mask >> i) & 1)
                k ^= basis[i].second;
        SeriesMatrix u = to_matrix(k);
        if (u.is_invertible())
            return u;
    }
    return std::nullopt;
}

MonodromyReport extract_representation(const FrobPeriodicModule& mod, int cap)
{
    MonodromyReport rep;
    rep.cap = cap;
    rep.strict = is_strict(mod);
    rep.order = monodromy_order(mod, cap);
    if (!rep.order)
        return rep;
    const int m = *rep.order;
    if (static_cast<long>(mod.coeff_ref()->degree()) * m > kMaxFieldDegree)
        return rep;
    rep.witness = true;
    rep.field = trivializing_field(mod, m);
    rep.c = trivialize(mod, m);
    FieldEmbedding emb = embed(mod.coeff_ref(), rep.field);
    SeriesMatrix norm = twisted_norm(mod, mod.coeff_degree());
    SeriesMatrix rho = *rep.c->inverse() * *map_matrix(norm, emb).inverse() * *rep.c;
    if (twist(rho, mod.q_bits()) != rho)
        throw InternalError("rho(Frob) has entries outside GF(q)[s]/(s^n)");
    SeriesMatrix rho_k = rho.map([&emb](const Series& x) {
        auto y = x.descend(emb);
        if (!y)
            throw InternalError("rho(Frob) does not descend to the coefficient field");
        return *y;
    });
    rep.rho = rho_k;
    SeriesMatrix p = rho_k;
    for (int k = 1; k <= m; ++k) {
        if (p.is_identity()) {
            rep.rho_order = k;
            break;
        }
        p = p * rho_k;
    }
    if (rep.rho_order != m)
        throw InternalError("rho(Frob) order differs from the monodromy order");
    rep.det_rho = rho_k.determinant();
    const int qe_bits = mod.q_bits() * mod.coeff_degree();
    rep.rebuild_equivalent = find_intertwiner(norm, *rho_k.inverse(), qe_bits, mod.coeff_ref()).has_value();
    if (!rep.rebuild_equivalent)
        throw InternalError("module rebuilt from rho is not isomorphic to the input");
    return rep;
}

OrderProfile order_growth_profile(const std::function<FrobPeriodicModule(int)>& family, int n_max, int cap)
{
    if (n_max < 1 || n_max > 64)
        throw PreconditionError("n_max must be in 1..64");
    OrderProfile out;
    out.cap = cap;
    for (int n = 1; n <= n_max; ++n) {
        out.orders.push_back(monodromy_order(family(n), cap));
        if (n > 1) {
            const auto& prev = out.orders[n - 2];
            const auto& cur = out.orders[n - 1];
            // nullopt means above the cap
            if (!prev ? cur.has_value() : (cur && *cur < *prev))
                out.monotone = false;
        }
    }
    return out;
}

OrderProfile order_growth_profile(const FrobPeriodicModule& mod, int cap)
{
    return order_growth_profile([&mod](int n) { return mod.truncated(n); }, mod.truncation(), cap);
}

SeriesMatrix random_invertible(const FieldRef& coeff, int r, int n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<bits_t> d(0, coeff->size() - 1);
    for (;;) {
        SeriesMatrix m = SeriesMatrix::zero(r, r, Series::zero(*coeff, n));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                std::vector<bits_t> co(n);
                for (bits_t& x : co)
                    x = d(rng);
                m(i, j) = Series(*coeff, n, co);
            }
        if (m.is_invertible())
            return m;
    }
}

}  // namespace vfix
