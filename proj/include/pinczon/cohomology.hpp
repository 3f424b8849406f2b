#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "structures.hpp"

namespace pinczon {

enum class CochainFlavor { Hochschild, Harrison, Chevalley };

inline std::string cochain_flavor_name(CochainFlavor f) {
    switch (f) {
        case CochainFlavor::Hochschild: return "hochschild";
        case CochainFlavor::Harrison: return "harrison";
        case CochainFlavor::Chevalley: return "chevalley";
    }
    return "?";
}

inline CochainFlavor parse_cochain_flavor(const std::string& s) {
    for (auto f : {CochainFlavor::Hochschild, CochainFlavor::Harrison, CochainFlavor::Chevalley})
        if (cochain_flavor_name(f) == s) return f;
    throw InvalidInput("unknown cochain flavor '" + s + "'");
}

/// Whether cochains of flavor `c` make sense over an algebra of flavor `f`.
inline bool compatible(CochainFlavor c, Flavor f) {
    switch (c) {
        case CochainFlavor::Hochschild: return f == Flavor::Associative || f == Flavor::Commutative;
        case CochainFlavor::Harrison: return f == Flavor::Commutative;
        case CochainFlavor::Chevalley: return f == Flavor::Lie;
    }
    return false;
}

/// (first index, second index) -> output vector.
using Action = std::map<std::pair<int, int>, Vector>;

/// A (bi)module M over V given by action constants in ordinary degrees.
struct ModuleData {
    BasisPtr basis;
    Action left;                  ///< x . a, keyed (x, a)
    std::optional<Action> right;  ///< a . x, keyed (a, x); absent for Lie and commutative input

    std::size_t dim() const { return basis->size(); }

    void add_left(int x, int a, int out, const Rational& c) { add(left, x, a, out, c); }
    void add_right(int a, int x, int out, const Rational& c) {
        if (!right) right.emplace();
        add(*right, a, x, out, c);
    }

private:
    static void add(Action& act, int i, int j, int out, const Rational& c) {
        if (sgn(c) == 0) return;
        auto& v = act[{i, j}];
        v[out] += c;
        if (sgn(v[out]) == 0) v.erase(out);
        if (v.empty()) act.erase({i, j});
    }
};

/// The regular (bi)module M = V of a strict structure.
inline ModuleData regular_module(const QuadraticStructure& s) {
    ModuleData m;
    m.basis = make_basis(GradedBasis::with_degrees(s.basis->degrees(), "m"));
    for (const auto& [key, v] : s.q().coefficients()) {
        m.add_left(key.first[0], key.first[1], key.second, v);
        if (!is_lie_type(s.flavor) && s.flavor != Flavor::Commutative)
            m.add_right(key.first[0], key.first[1], key.second, v);
    }
    return m;
}

namespace detail {
inline void axpy(Vector& acc, const Rational& c, const Vector& v) {
    if (sgn(c) == 0) return;
    for (const auto& [i, x] : v) {
        acc[i] += c * x;
        if (sgn(acc[i]) == 0) acc.erase(i);
    }
}

inline Vector lookup(const Action& a, int i, int j) {
    auto it = a.find({i, j});
    return it == a.end() ? Vector{} : it->second;
}

/// Linear extension of a bilinear action in its second argument.
inline Vector act_on(const Action& a, int i, const Vector& v) {
    Vector out;
    for (const auto& [j, c] : v) axpy(out, c, lookup(a, i, j));
    return out;
}
inline Vector act_by(const Action& a, const Vector& v, int j) {
    Vector out;
    for (const auto& [i, c] : v) axpy(out, c, lookup(a, i, j));
    return out;
}
}  // namespace detail

/// Evaluation helpers tying an algebra and a module together.
class ModuleContext {
public:
    ModuleContext(const QuadraticStructure& s, const ModuleData& m) : s_(&s), m_(&m) {
        if (is_homotopy(s.flavor)) throw InvalidInput("modules are defined over strict structures");
        for (const auto& [key, v] : s.q().coefficients()) product_[{key.first[0], key.first[1]}][key.second] = v;
        if (m.right) {
            right_ = *m.right;
        } else if (s.flavor == Flavor::Commutative) {
            for (const auto& [key, v] : m.left)
                for (const auto& [o, c] : v)
                    right_[{key.second, key.first}][o] =
                        sign_pow(static_cast<long>(s.basis->degree(key.first)) * m.basis->degree(key.second)) * c;
        }
    }

    const QuadraticStructure& algebra() const { return *s_; }
    const ModuleData& module() const { return *m_; }
    int vdeg(int i) const { return s_->basis->degree(i); }
    int mdeg(int a) const { return m_->basis->degree(a); }

    Vector mul(int x, int y) const { return detail::lookup(product_, x, y); }
    Vector left(int x, int a) const { return detail::lookup(m_->left, x, a); }
    Vector right(int a, int x) const { return detail::lookup(right_, a, x); }
    Vector left(int x, const Vector& a) const { return detail::act_on(m_->left, x, a); }
    Vector right(const Vector& a, int x) const { return detail::act_by(right_, a, x); }
    Vector mul(int x, const Vector& y) const { return detail::act_on(product_, x, y); }
    Vector mul(const Vector& x, int y) const { return detail::act_by(product_, x, y); }
    const Action& right_action() const { return right_; }

private:
    const QuadraticStructure* s_;
    const ModuleData* m_;
    Action product_;
    Action right_;
};

/// Homogeneity and action axioms on all basis triples.
inline ValidationReport validate_module(const QuadraticStructure& s, const ModuleData& m) {
    ValidationReport r;
    ModuleContext ctx(s, m);
    const int n = static_cast<int>(s.dim()), dm = static_cast<int>(m.dim());
    auto homogeneous = [&](const Action& act, bool vfirst) -> std::optional<Tuple> {
        for (const auto& [key, v] : act) {
            const int d = vfirst ? ctx.vdeg(key.first) + ctx.mdeg(key.second) : ctx.mdeg(key.first) + ctx.vdeg(key.second);
            for (const auto& [o, c] : v) {
                (void)c;
                if (ctx.mdeg(o) != d) return Tuple{key.first, key.second, o};
            }
        }
        return std::nullopt;
    };
    auto bad_index = [&](const Action& act, bool vfirst) {
        for (const auto& [key, v] : act) {
            const int a = vfirst ? key.first : key.second, b = vfirst ? key.second : key.first;
            if (a < 0 || a >= n || b < 0 || b >= dm) return true;
            for (const auto& kv : v)
                if (kv.first < 0 || kv.first >= dm) return true;
        }
        return false;
    };
    if (bad_index(m.left, true) || (m.right && bad_index(*m.right, false))) {
        r.add("action indices in range", false);
        return r;
    }
    auto w = homogeneous(m.left, true);
    if (!w && m.right) w = homogeneous(*m.right, false);
    r.add("actions have degree 0", !w, w ? "output degree mismatch" : "", w);
    if (w) return r;

    auto first_failure = [&](auto&& defect) -> std::optional<Tuple> {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int a = 0; a < dm; ++a)
                    if (!defect(x, y, a).empty()) return Tuple{x, y, a};
        return std::nullopt;
    };
    auto report = [&](const std::string& name, std::optional<Tuple> t) {
        r.add(name, !t, t ? "nonzero defect at (x,y,a) = " + tuple_string(*t) : "", t);
    };
    if (is_lie_type(s.flavor)) {
        report("[x,y].a = x.(y.a) - (-1)^{|x||y|} y.(x.a)", first_failure([&](int x, int y, int a) {
                   Vector d = ctx.left(x, ctx.left(y, a));
                   detail::axpy(d, -sign_pow(static_cast<long>(ctx.vdeg(x)) * ctx.vdeg(y)), ctx.left(y, ctx.left(x, a)));
                   for (const auto& [z, c] : ctx.mul(x, y)) detail::axpy(d, -c, ctx.left(z, a));
                   return d;
               }));
        return r;
    }
    report("(xy).a = x.(y.a)", first_failure([&](int x, int y, int a) {
               Vector d = ctx.left(x, ctx.left(y, a));
               for (const auto& [z, c] : ctx.mul(x, y)) detail::axpy(d, -c, ctx.left(z, a));
               return d;
           }));
    report("a.(xy) = (a.x).y", first_failure([&](int x, int y, int a) {
               Vector d = ctx.right(ctx.right(a, x), y);
               for (const auto& [z, c] : ctx.mul(x, y)) detail::axpy(d, -c, ctx.right(a, z));
               return d;
           }));
    report("(x.a).y = x.(a.y)", first_failure([&](int x, int y, int a) {
               Vector d = ctx.right(ctx.left(x, a), y);
               detail::axpy(d, -1, ctx.left(x, ctx.right(a, y)));
               return d;
           }));
    return r;
}

/// V (+) M as one graded basis; cochains live on it as maps V^k -> M.
inline BasisPtr sum_basis(const GradedBasis& V, const GradedBasis& M) {
    auto names = V.names();
    auto degs = V.degrees();
    for (std::size_t a = 0; a < M.size(); ++a) {
        names.push_back(M.name(a));
        degs.push_back(M.degree(a));
    }
    return make_basis(GradedBasis(std::move(names), std::move(degs)));
}

/// A module-valued k-cochain c: V^k -> M, homogeneous of degree |c|.
/// Stored as a map on V (+) M with inputs in the V-block and outputs in the M-block.
class Cochain {
public:
    Cochain(BasisPtr w, std::size_t dim_v, int arity, int degree, CochainFlavor flavor)
        : flavor_(flavor), dim_v_(dim_v), map_(std::move(w), arity, degree) {}

    CochainFlavor flavor() const { return flavor_; }
    std::size_t dim_v() const { return dim_v_; }
    std::size_t dim_m() const { return map_.basis()->size() - dim_v_; }
    int arity() const { return map_.arity(); }
    int degree() const { return map_.degree(); }
    const UnshiftedMap& map() const { return map_; }
    bool is_zero() const { return map_.is_zero(); }

    void add(const Tuple& ins, int out, const Rational& v) {
        for (int i : ins)
            if (i < 0 || i >= static_cast<int>(dim_v_)) throw InvalidInput("cochain: input index out of range");
        if (out < 0 || out >= static_cast<int>(dim_m())) throw InvalidInput("cochain: output index out of range");
        map_.add(ins, static_cast<int>(dim_v_) + out, v);
    }
    void add_vector(const Tuple& ins, const Vector& v, const Rational& c = 1) {
        for (const auto& [o, x] : v) add(ins, o, c * x);
    }
    Rational at(const Tuple& ins, int out) const { return map_.at(ins, static_cast<int>(dim_v_) + out); }
    /// c(ins) in M coordinates.
    Vector apply(const Tuple& ins) const {
        Vector v;
        for (const auto& [o, x] : map_.apply(ins)) v[o - static_cast<int>(dim_v_)] = x;
        return v;
    }
    /// Entries as ((inputs), M-index) -> value.
    std::map<std::pair<Tuple, int>, Rational> entries() const {
        std::map<std::pair<Tuple, int>, Rational> e;
        for (const auto& [k, v] : map_.coefficients()) e[{k.first, k.second - static_cast<int>(dim_v_)}] = v;
        return e;
    }

    /// Reinterprets the underlying map (same basis, same index layout).
    static Cochain from_map(UnshiftedMap m, std::size_t dim_v, CochainFlavor f) {
        Cochain c(m.basis(), dim_v, m.arity(), m.degree(), f);
        c.map_ = std::move(m);
        return c;
    }

    Cochain& operator*=(const Rational& r) {
        map_ *= r;
        return *this;
    }
    friend bool operator==(const Cochain& a, const Cochain& b) { return a.map_ == b.map_; }

private:
    CochainFlavor flavor_;
    std::size_t dim_v_;
    UnshiftedMap map_;
};

inline Cochain make_cochain(const QuadraticStructure& s, const ModuleData& m, int arity, int degree,
                            CochainFlavor flavor) {
    return Cochain(sum_basis(*s.basis, *m.basis), s.dim(), arity, degree, flavor);
}

/// Graded skew-symmetrization: sum over S_k of sign(sigma) times the Koszul-signed reordering.
inline UnshiftedMap alternate(const UnshiftedMap& c) {
    UnshiftedMap out(c.basis(), c.arity(), c.degree());
    for (const auto& s : Permutation::all(c.arity())) out.axpy(s.sign(), permute_map(c, s));
    return out;
}

/// Flavor constraints: graded skew for Chevalley, vanishing on shuffles (after the shift) for Harrison.
inline ValidationReport validate_cochain(const Cochain& c) {
    ValidationReport r;
    if (c.flavor() == CochainFlavor::Chevalley) r.add("cochain graded skew-symmetric", is_skew(c.map()));
    if (c.flavor() == CochainFlavor::Harrison)
        r.add("cochain vanishes on shuffle products", vanishes_on_shuffles(shift_map(c.map())));
    if (c.flavor() == CochainFlavor::Hochschild) r.add("cochain well formed", true);
    return r;
}

// ------------------------------------------------------------ classical side

/// Classical coboundary of a cochain, with the overall sign (-1)^{|c|} that makes
/// shift(d c) agree with the bracket [Q,C] restricted to V (Hochschild, Harrison).
/// Chevalley uses the Koszul-signed alternating sum with the same overall sign.
inline Cochain classical_differential(const Cochain& c, const QuadraticStructure& s, const ModuleData& m) {
    if (!compatible(c.flavor(), s.flavor)) throw InvalidInput("classical_differential: flavor mismatch");
    ModuleContext ctx(s, m);
    const int n = static_cast<int>(s.dim()), k = c.arity(), dc = c.degree();
    Cochain out(c.map().basis(), c.dim_v(), k + 1, dc, c.flavor());
    const int overall = sign_pow(dc);
    auto vd = [&](int i) { return ctx.vdeg(i); };

    for (const auto& X : all_tuples(n, k + 1)) {
        Vector acc;
        if (c.flavor() != CochainFlavor::Chevalley) {
            Tuple tail(X.begin() + 1, X.end());
            detail::axpy(acc, sign_pow(static_cast<long>(vd(X[0])) * dc), ctx.left(X[0], c.apply(tail)));
            for (int r = 0; r < k; ++r) {
                for (const auto& [z, w] : ctx.mul(X[r], X[r + 1])) {
                    Tuple t(X.begin(), X.begin() + r);
                    t.push_back(z);
                    t.insert(t.end(), X.begin() + r + 2, X.end());
                    detail::axpy(acc, sign_pow(r + 1) * w, c.apply(t));
                }
            }
            Tuple head(X.begin(), X.end() - 1);
            detail::axpy(acc, sign_pow(k + 1), ctx.right(c.apply(head), X[k]));
        } else {
            std::vector<long> prefix(k + 2, 0);
            for (int i = 0; i <= k; ++i) prefix[i + 1] = prefix[i] + vd(X[i]);
            for (int i = 0; i <= k; ++i) {
                Tuple rest;
                for (int t = 0; t <= k; ++t)
                    if (t != i) rest.push_back(X[t]);
                const long e = i + static_cast<long>(vd(X[i])) * (dc + prefix[i]);
                detail::axpy(acc, sign_pow(e), ctx.left(X[i], c.apply(rest)));
            }
            for (int i = 0; i <= k; ++i)
                for (int j = i + 1; j <= k; ++j) {
                    const auto br = ctx.mul(X[i], X[j]);
                    if (br.empty()) continue;
                    Tuple rest;
                    for (int t = 0; t <= k; ++t)
                        if (t != i && t != j) rest.push_back(X[t]);
                    const long e = i + j + static_cast<long>(vd(X[i])) * prefix[i] +
                                   static_cast<long>(vd(X[j])) * (prefix[j] - vd(X[i]));
                    for (const auto& [z, w] : br) {
                        Tuple t{z};
                        t.insert(t.end(), rest.begin(), rest.end());
                        detail::axpy(acc, sign_pow(e) * w, c.apply(t));
                    }
                }
        }
        out.add_vector(X, acc, overall);
    }
    return out;
}

// ------------------------------------------------------------ double extension

/// The double semidirect product V~ = W x W*, W = V x M, with its block layout
/// V, M, V*, M* and the data it was built from.
struct DoubleExtension {
    QuadraticStructure structure;
    QuadraticStructure base;
    ModuleData module;
    std::size_t n = 0, m = 0;

    int v(int i) const { return i; }
    int mod(int a) const { return static_cast<int>(n) + a; }
    int v_dual(int i) const { return static_cast<int>(n + m) + i; }
    int m_dual(int a) const { return static_cast<int>(2 * n + m) + a; }
    bool in_v(int i) const { return i >= 0 && i < static_cast<int>(n); }
    bool in_m(int i) const { return i >= static_cast<int>(n) && i < static_cast<int>(n + m); }
};

/// Builds V~. The law on W is extended to W x W* by making its cyclic form
/// Omega_{Q_W} cyclic on V~; this produces the coadjoint blocks of the product.
inline DoubleExtension double_extension(const QuadraticStructure& s, const ModuleData& md) {
    if (is_homotopy(s.flavor)) throw InvalidInput("double_extension: strict structures only");
    auto rep = validate_module(s, md);
    if (!rep.passed()) {
        for (const auto& c : rep.checks)
            if (!c.passed) throw InvalidModule("module check failed: " + c.name + (c.detail.empty() ? "" : ": " + c.detail));
    }
    DoubleExtension dx;
    dx.base = s;
    dx.module = md;
    dx.n = s.dim();
    dx.m = md.dim();
    const int n = static_cast<int>(dx.n), m = static_cast<int>(dx.m);
    std::vector<std::string> names;
    std::vector<int> degs;
    for (int i = 0; i < n; ++i) names.push_back(s.basis->name(i)), degs.push_back(s.basis->degree(i));
    for (int a = 0; a < m; ++a) names.push_back(md.basis->name(a)), degs.push_back(md.basis->degree(a));
    for (int i = 0; i < n + m; ++i) names.push_back(names[i] + "*"), degs.push_back(-degs[i]);
    auto tb = make_basis(GradedBasis(std::move(names), std::move(degs)));

    const int N = 2 * (n + m);
    auto bt = zero_matrix(N, N);
    for (int i = 0; i < n + m; ++i) {
        bt[n + m + i][i] = 1;
        bt[i][n + m + i] = sign_pow(tb->degree(i));
    }
    BilinearPairing pairing(tb, bt);

    ModuleContext ctx(s, md);
    UnshiftedMap qw(tb, 2, 0);
    for (const auto& [key, v] : s.q().coefficients()) qw.add(key.first, key.second, v);
    for (const auto& [key, v] : md.left)
        for (const auto& [o, c] : v) {
            qw.add({dx.v(key.first), dx.mod(key.second)}, dx.mod(o), c);
            if (is_lie_type(s.flavor))
                qw.add({dx.mod(key.second), dx.v(key.first)}, dx.mod(o),
                       -sign_pow(static_cast<long>(ctx.vdeg(key.first)) * ctx.mdeg(key.second)) * c);
        }
    if (!is_lie_type(s.flavor))
        for (const auto& [key, v] : ctx.right_action())
            for (const auto& [o, c] : v) qw.add({dx.mod(key.first), dx.v(key.second)}, dx.mod(o), c);

    auto tilde = map_of_form(cyclicize(form_of_map(shift_map(qw), pairing)), pairing);
    dx.structure = load_structure(tb, bt, s.flavor, {unshift_map(tilde)});
    return dx;
}

/// A cochain as a map on V~[1]: c shifted by eta_k, inputs in V, output in M.
inline MultilinearMap shifted_cochain(const Cochain& c, const DoubleExtension& dx) {
    UnshiftedMap u(dx.structure.basis, c.arity(), c.degree());
    for (const auto& [key, v] : c.map().coefficients()) u.add(key.first, key.second, v);
    return shift_map(u);
}

/// Part of a map on V~[1] with every input in V and output in M.
inline MultilinearMap restrict_to_v(const MultilinearMap& Q, const DoubleExtension& dx) {
    MultilinearMap out(Q.basis(), Q.arity(), Q.degree());
    for (const auto& [key, v] : Q.coefficients())
        if (dx.in_m(key.second) &&
            std::all_of(key.first.begin(), key.first.end(), [&](int i) { return dx.in_v(i); }))
            out.add(key.first, key.second, v);
    return out;
}

/// C~ from C = shifted V^k -> M data: C itself plus, for each j, the term with an
/// M*-input and a V*-output obtained by rotating the form of C.
inline MultilinearMap lift_shifted(const MultilinearMap& C, const DoubleExtension& dx) {
    const auto& tb = *dx.structure.basis;
    MultilinearMap out(C.basis(), C.arity(), C.degree());
    const int k = C.arity();
    for (const auto& [key, v] : C.coefficients()) {
        const auto& u = key.first;
        if (!dx.in_m(key.second) || !std::all_of(u.begin(), u.end(), [&](int i) { return dx.in_v(i); }))
            throw InvalidInput("lift: expected inputs in V and output in M");
        out.add(u, key.second, v);
        const int mstar = dx.m_dual(key.second - static_cast<int>(dx.n));
        for (int t = 1; t <= k; ++t) {
            // inputs u_{t+1..k}, m*, u_{1..t-1}; output u_t*
            Tuple ins(u.begin() + t, u.end());
            ins.push_back(mstar);
            ins.insert(ins.end(), u.begin(), u.begin() + t - 1);
            long sa = tb.shifted_degree(mstar), sb = 0;
            for (int l = t; l < k; ++l) sa += tb.shifted_degree(u[l]);
            for (int l = 0; l < t; ++l) sb += tb.shifted_degree(u[l]);
            const int y = u[t - 1];
            out.add(ins, dx.v_dual(y), sign_pow(sa * sb + tb.degree(y)) * v);
        }
    }
    return out;
}

inline MultilinearMap lift_cochain(const Cochain& c, const DoubleExtension& dx) {
    if (!compatible(c.flavor(), dx.base.flavor)) throw InvalidInput("lift_cochain: flavor mismatch");
    return lift_shifted(shifted_cochain(c, dx), dx);
}

/// Back from a V~[1] map supported on V^k -> M to a cochain.
inline Cochain cochain_of_shifted(const MultilinearMap& R, const DoubleExtension& dx, CochainFlavor f) {
    auto u = unshift_map(restrict_to_v(R, dx));
    Cochain c(sum_basis(*dx.base.basis, *dx.module.basis), dx.n, u.arity(), u.degree(), f);
    for (const auto& [key, v] : u.coefficients()) c.add(key.first, key.second - static_cast<int>(dx.n), v);
    return c;
}

// ------------------------------------------------------------ Pinczon differential

/// d_P L = {Omega, L} (tensor flavors) or {I, L}| with I = Omega^Sym (Lie).
/// Built once per structure; the structure equation is checked at construction.
class PinczonDifferential {
public:
    explicit PinczonDifferential(const QuadraticStructure& s) : pairing_(s.pairing), lie_(is_lie_type(s.flavor)) {
        if (s.taylor.size() != 1)
            throw InvalidStructure("Pinczon differential: one Taylor coefficient expected");
        if (!structure_equation(s).passed()) throw InvalidStructure("Pinczon differential: structure equation fails");
        omega_ = lie_ ? symmetrize_form(s.structure_form()) : s.structure_form();
    }

    MultilinearForm operator()(const MultilinearForm& L) const {
        return lie_ ? pinczon_bracket_sym(omega_, L, pairing_) : pinczon_bracket(omega_, L, pairing_);
    }

    bool lie() const { return lie_; }
    const MultilinearForm& omega() const { return omega_; }

private:
    BilinearPairing pairing_;
    bool lie_;
    MultilinearForm omega_;
};

inline MultilinearForm pinczon_differential(const QuadraticStructure& s, const MultilinearForm& L) {
    return PinczonDifferential(s)(L);
}

/// The Pinczon-side cochain form of a lifted cochain: Omega_{C~}, symmetrized for Lie.
inline MultilinearForm lifted_form(const MultilinearMap& Ct, const DoubleExtension& dx) {
    auto f = form_of_map(Ct, dx.structure.pairing);
    return is_lie_type(dx.base.flavor) ? symmetrize_form(f) : f;
}

// ------------------------------------------------------------ chain-map check

struct PhiReport {
    ValidationReport report;
    Rational expected;                       ///< 1, or 2+k for Lie
    std::optional<Rational> measured;        ///< d_P side over lift side, when nonzero
    Rational classical_expected;             ///< 1, or 2 k! for Chevalley
    std::optional<Rational> classical_measured;
};

namespace detail {
/// The scalar r with a = r b, if b != 0 and it exists.
inline std::optional<Rational> ratio(const MultilinearMap& a, const MultilinearMap& b) {
    if (b.is_zero()) return std::nullopt;
    const auto& [k0, v0] = *b.coefficients().begin();
    Rational r = a.at(k0.first, k0.second) / v0;
    if (!(a == r * b)) return std::nullopt;
    return r;
}
}  // namespace detail

/// Checks d_P C~ = kappa lift(d c[1]) on the double extension, where d c[1] is the
/// restriction to V of [Q~, C~] (symmetrized for Lie) and kappa = 1 or 2 + k.
/// Also checks that restriction against the classical formula.
inline PhiReport verify_phi(const Cochain& c, const DoubleExtension& dx, const PinczonDifferential* dp = nullptr) {
    PhiReport out;
    auto& r = out.report;
    const bool lie = is_lie_type(dx.base.flavor);
    const int k = c.arity();
    out.expected = lie ? Rational(2 + k) : Rational(1);
    out.classical_expected = lie ? Rational(2) * factorial(k) : Rational(1);
    if (!compatible(c.flavor(), dx.base.flavor)) {
        r.add("cochain flavor matches the algebra", false);
        return out;
    }
    auto vc = validate_cochain(c);
    r.append(vc);
    if (!vc.passed()) return out;

    std::optional<PinczonDifferential> own;
    if (!dp) dp = &own.emplace(dx.structure);
    const auto& pairing = dx.structure.pairing;
    const auto& Qt = dx.structure.Q();
    auto Ct = lift_cochain(c, dx);
    r.add("lift is B-quadratic", is_b_quadratic(Ct, pairing));
    if (lie) r.add("lift is totally symmetric", is_symmetric(Ct));

    auto full = bracket_maps(Qt, Ct);
    if (lie) full = symmetrize_map(full);
    auto R = restrict_to_v(full, dx);
    auto lifted = lift_shifted(R, dx);
    r.add(lie ? "[Q~,C~]^Sym = lift(restriction to V)" : "[Q~,C~] = lift(restriction to V)", full == lifted);

    auto lhs = map_of_form((*dp)(lifted_form(Ct, dx)), pairing);
    auto rhs = out.expected * lifted;
    out.measured = detail::ratio(lhs, lifted);
    bool ok = lhs == rhs;
    std::string detail;
    if (!ok) {
        auto diff = lhs - rhs;
        detail = "mismatch at " + tuple_string(diff.coefficients().begin()->first.first);
        if (out.measured) detail += "; measured constant " + format_rational(*out.measured);
    }
    r.add(lie ? "d_P C~ = (2+k) lift(d_Ch c[1])" : "d_P C~ = lift(d c[1])", ok, detail,
          ok ? std::nullopt : std::optional<Tuple>((lhs - rhs).coefficients().begin()->first.first));

    auto classical = shifted_cochain(classical_differential(c, dx.base, dx.module), dx);
    out.classical_measured = detail::ratio(R, classical);
    r.add("restriction = constant * shift(classical d c)", R == out.classical_expected * classical,
          out.classical_measured ? "measured " + format_rational(*out.classical_measured) : "");
    return out;
}

// ------------------------------------------------------------ random cochains

/// All (inputs, output) slots of degree `degree`, in lexicographic order.
inline std::vector<std::pair<Tuple, int>> admissible_slots(const QuadraticStructure& s, const ModuleData& m, int k,
                                                           int degree) {
    std::vector<std::pair<Tuple, int>> out;
    for (const auto& t : all_tuples(static_cast<int>(s.dim()), k)) {
        long sum = 0;
        for (int i : t) sum += s.basis->degree(i);
        for (std::size_t o = 0; o < m.dim(); ++o)
            if (m.basis->degree(o) - sum == degree) out.emplace_back(t, static_cast<int>(o));
    }
    return out;
}

/// Degrees |c| for which k-cochains exist, increasing.
inline std::vector<int> cochain_degrees(const QuadraticStructure& s, const ModuleData& m, int k) {
    std::set<int> ds;
    for (const auto& t : all_tuples(static_cast<int>(s.dim()), k)) {
        long sum = 0;
        for (int i : t) sum += s.basis->degree(i);
        for (std::size_t o = 0; o < m.dim(); ++o) ds.insert(m.basis->degree(o) - static_cast<int>(sum));
    }
    return {ds.begin(), ds.end()};
}

/// Basis of the Harrison cochain space of degree `degree` as maps on V (+) M.
inline std::vector<UnshiftedMap> harrison_basis(const QuadraticStructure& s, const ModuleData& m, int k, int degree);

/// Coefficients in {-3..3}\{0} on a uniformly chosen 30% of the admissible slots,
/// then projected to the flavor: skew-symmetrized for Chevalley; for Harrison the
/// same draw weights a basis of the shuffle-vanishing subspace.
template <class Rng>
Cochain random_cochain(const QuadraticStructure& s, const ModuleData& m, CochainFlavor f, int k, int degree, Rng& rng) {
    auto c = make_cochain(s, m, k, degree, f);
    std::uniform_int_distribution<int> coef(1, 6);
    auto draw = [&]() { int v = coef(rng); return v <= 3 ? v - 4 : v - 3; };
    if (f == CochainFlavor::Harrison) {
        auto basis = harrison_basis(s, m, k, degree);
        if (basis.empty()) return c;
        std::vector<std::size_t> idx(basis.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        const std::size_t take = std::max<std::size_t>(1, (3 * basis.size() + 5) / 10);
        UnshiftedMap acc(c.map().basis(), k, degree);
        for (std::size_t i = 0; i < take; ++i) acc.axpy(draw(), basis[idx[i]]);
        return Cochain::from_map(std::move(acc), s.dim(), f);
    }
    auto slots = admissible_slots(s, m, k, degree);
    if (slots.empty()) return c;
    std::shuffle(slots.begin(), slots.end(), rng);
    const std::size_t take = std::max<std::size_t>(1, (3 * slots.size() + 5) / 10);
    for (std::size_t i = 0; i < take; ++i) c.add(slots[i].first, slots[i].second, draw());
    if (f == CochainFlavor::Chevalley) return Cochain::from_map(alternate(c.map()), s.dim(), f);
    return c;
}

// ------------------------------------------------------------ Betti numbers

struct CohomologyDims {
    std::size_t dim_cochains = 0;  ///< dimension of C^k
    std::size_t dim_kernel = 0;    ///< dim ker d^k
    std::size_t dim_image = 0;     ///< dim im d^{k-1} inside C^k
    long betti = 0;
};

namespace detail {
/// Flat coordinate of a cochain slot (tuple, output) among all k-slots.
inline std::size_t slot_index(const Tuple& t, int out, std::size_t n, std::size_t m) {
    std::size_t idx = 0;
    for (int i : t) idx = idx * n + static_cast<std::size_t>(i);
    return idx * m + static_cast<std::size_t>(out);
}

inline std::size_t power(std::size_t n, int k) {
    std::size_t p = 1;
    for (int i = 0; i < k; ++i) p *= n;
    return p;
}

/// Ambient size n^k * m with the cap enforced.
inline std::size_t ambient(std::size_t n, std::size_t m, int k, std::size_t cap) {
    long double est = 1;
    for (int i = 0; i < k; ++i) est *= static_cast<long double>(n);
    est *= static_cast<long double>(m);
    if (est > static_cast<long double>(cap))
        throw ResourceLimit("cochain space of arity " + std::to_string(k) + " has " +
                            std::to_string(static_cast<unsigned long long>(est)) + " coefficients, over the cap of " +
                            std::to_string(cap));
    return static_cast<std::size_t>(est);
}
}  // namespace detail

inline std::vector<UnshiftedMap> harrison_basis(const QuadraticStructure& s, const ModuleData& m, int k, int degree) {
    auto w = sum_basis(*s.basis, *m.basis);
    const std::size_t n = s.dim();
    auto slots = admissible_slots(s, m, k, degree);
    std::vector<UnshiftedMap> units;
    for (const auto& [t, o] : slots) {
        UnshiftedMap u(w, k, degree);
        u.add(t, static_cast<int>(n) + o, 1);
        units.push_back(std::move(u));
    }
    // constraint rows: coefficients of every shuffle defect of the shifted unit cochain
    std::map<std::pair<int, std::pair<Tuple, int>>, std::size_t> row_of;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(units.size());
    for (std::size_t j = 0; j < units.size(); ++j) {
        auto sh = shift_map(units[j]);
        for (int p = 1; p < k; ++p) {
            const auto defect = map_shuffle_defect(sh, p);
            for (const auto& [key, v] : defect.coefficients()) {
                auto it = row_of.emplace(std::make_pair(p, key), row_of.size()).first;
                cols[j].emplace_back(it->second, v);
            }
        }
    }
    std::vector<UnshiftedMap> out;
    if (row_of.empty()) return units;
    auto M = zero_matrix(row_of.size(), units.size());
    for (std::size_t j = 0; j < units.size(); ++j)
        for (const auto& [i, v] : cols[j]) M[i][j] = v;
    for (const auto& kv : rational_rank(M).kernel) {
        UnshiftedMap acc(w, k, degree);
        for (std::size_t j = 0; j < kv.size(); ++j)
            if (sgn(kv[j]) != 0) acc.axpy(kv[j], units[j]);
        out.push_back(std::move(acc));
    }
    return out;
}

/// Basis of the flavor's k-cochain space (all degrees).
inline std::vector<Cochain> cochain_basis(const QuadraticStructure& s, const ModuleData& m, CochainFlavor f, int k,
                                          std::size_t cap = 20000) {
    detail::ambient(s.dim(), m.dim(), k, cap);
    std::vector<Cochain> out;
    for (int deg : cochain_degrees(s, m, k)) {
        if (f == CochainFlavor::Harrison) {
            for (auto& u : harrison_basis(s, m, k, deg)) out.push_back(Cochain::from_map(std::move(u), s.dim(), f));
            continue;
        }
        for (const auto& [t, o] : admissible_slots(s, m, k, deg)) {
            if (f == CochainFlavor::Chevalley && !std::is_sorted(t.begin(), t.end())) continue;
            auto c = make_cochain(s, m, k, deg, f);
            c.add(t, o, 1);
            if (f == CochainFlavor::Chevalley) {
                auto a = alternate(c.map());
                if (a.is_zero()) continue;
                c = Cochain::from_map(std::move(a), s.dim(), f);
            }
            out.push_back(std::move(c));
        }
    }
    return out;
}

/// Rank of d: C^k -> C^{k+1}, columns in ambient slot coordinates.
inline std::size_t differential_rank(const QuadraticStructure& s, const ModuleData& m, CochainFlavor f, int k,
                                     std::size_t cap) {
    const std::size_t n = s.dim(), dm = m.dim();
    const std::size_t rows = detail::ambient(n, dm, k + 1, cap);
    auto basis = cochain_basis(s, m, f, k, cap);
    if (basis.empty()) return 0;
    auto M = zero_matrix(rows, basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (const auto& [key, v] : classical_differential(basis[j], s, m).entries())
            M[detail::slot_index(key.first, key.second, n, dm)][j] = v;
    return matrix_rank(M);
}

/// dim ker d^k, dim im d^{k-1} and their difference, by exact elimination.
inline CohomologyDims cohomology_dims(const QuadraticStructure& s, const ModuleData& m, CochainFlavor f, int k,
                                      std::size_t cap = 20000) {
    if (k < 0) throw InvalidInput("cohomology_dims: negative degree");
    if (!compatible(f, s.flavor))
        throw InvalidInput(cochain_flavor_name(f) + " cohomology needs a different algebra kind than " +
                           flavor_name(s.flavor));
    auto rep = validate_module(s, m);
    if (!rep.passed()) throw InvalidModule("module fails its axioms");
    CohomologyDims d;
    d.dim_cochains = cochain_basis(s, m, f, k, cap).size();
    d.dim_kernel = d.dim_cochains - differential_rank(s, m, f, k, cap);
    d.dim_image = k == 0 ? 0 : differential_rank(s, m, f, k - 1, cap);
    d.betti = static_cast<long>(d.dim_kernel) - static_cast<long>(d.dim_image);
    return d;
}

}  // namespace pinczon
