#pragma once

// Shared algebras and random generators for the test binaries.

#include <pinczon/pinczon.hpp>

#include <random>

namespace fx {

using namespace pinczon;
using Rng = std::mt19937_64;

inline UnshiftedMap law(const BasisPtr& b, std::initializer_list<std::tuple<int, int, int, long>> entries) {
    UnshiftedMap q(b, 2, 0);
    for (auto [i, j, k, c] : entries) q.add({i, j}, k, Rational(c));
    return q;
}

/// sl(2) with basis e, f, h: [e,f] = h, [h,e] = 2e, [h,f] = -2f.
inline UnshiftedMap sl2_law(const BasisPtr& b) {
    return law(b, {{0, 1, 2, 1}, {1, 0, 2, -1}, {2, 0, 0, 2}, {0, 2, 0, -2}, {2, 1, 1, -2}, {1, 2, 1, 2}});
}

inline BasisPtr sl2_basis() { return make_basis(GradedBasis({"e", "f", "h"}, {0, 0, 0})); }

/// Killing form K(x,y) = tr(ad x ad y), computed from the structure constants.
inline Matrix killing(const UnshiftedMap& q) {
    const int n = static_cast<int>(q.basis()->size());
    std::vector<Matrix> ad(n, zero_matrix(n, n));
    for (const auto& [key, v] : q.coefficients()) ad[key.first[0]][key.second][key.first[1]] += v;
    auto K = zero_matrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto p = multiply(ad[i], ad[j]);
            for (int t = 0; t < n; ++t) K[i][j] += p[t][t];
        }
    return K;
}

inline QuadraticStructure sl2_killing() {
    auto b = sl2_basis();
    auto q = sl2_law(b);
    return load_structure(b, killing(q), Flavor::Lie, {q});
}

/// 2x2 matrices, basis E11, E12, E21, E22, with the trace form tr(xy).
inline QuadraticStructure mat2() {
    auto b = make_basis(GradedBasis({"E11", "E12", "E21", "E22"}, {0, 0, 0, 0}));
    UnshiftedMap q(b, 2, 0);
    auto idx = [](int r, int c) { return 2 * r + c; };
    for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d) q.add({idx(a, c), idx(c, d)}, idx(a, d), 1);
    auto tr = zero_matrix(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (const auto& [o, v] : q.apply({i, j}))
                if (o == 0 || o == 3) tr[i][j] += v;
    return load_structure(b, tr, Flavor::Associative, {q});
}

/// k x k diagonal matrices: idempotents e_i e_i = e_i, trace form.
inline QuadraticStructure diagonal(int k, Flavor f = Flavor::Commutative) {
    auto b = make_basis(GradedBasis::with_degrees(std::vector<int>(k, 0)));
    UnshiftedMap q(b, 2, 0);
    for (int i = 0; i < k; ++i) q.add({i, i}, i, 1);
    return load_structure(b, identity_matrix(k), f, {q});
}

inline QuadraticStructure abelian(int n = 1) {
    auto b = make_basis(GradedBasis::with_degrees(std::vector<int>(n, 0)));
    return load_structure(b, identity_matrix(n), Flavor::Lie, {UnshiftedMap(b, 2, 0)});
}

/// Graded Lie algebra x (degree 1), z (degree 2) with [x,x] = z. It has no
/// degree 0 pairing, so the pairing is left empty; it serves only as the base of
/// modules and double extensions, which never read it.
inline QuadraticStructure graded_heisenberg() {
    auto b = make_basis(GradedBasis({"x", "z"}, {1, 2}));
    UnshiftedMap q(b, 2, 0);
    q.add({0, 0}, 1, 1);
    QuadraticStructure s;
    s.basis = b;
    s.flavor = Flavor::Lie;
    s.constants = {q};
    s.taylor = {shift_map(q)};
    return s;
}

/// Exterior algebra on x, y (degree 1): basis 1, x, y, xy; graded commutative.
inline QuadraticStructure exterior2(Flavor f = Flavor::Commutative) {
    auto b = make_basis(GradedBasis({"1", "x", "y", "xy"}, {0, 1, 1, 2}));
    UnshiftedMap q(b, 2, 0);
    for (int i = 0; i < 4; ++i) q.add({0, i}, i, 1);
    for (int i = 1; i < 4; ++i) q.add({i, 0}, i, 1);
    q.add({1, 2}, 3, 1);
    q.add({2, 1}, 3, -1);
    QuadraticStructure s;
    s.basis = b;
    s.flavor = f;
    s.constants = {q};
    s.taylor = {shift_map(q)};
    return s;
}

inline ModuleData trivial_module(int dim = 1, int degree = 0) {
    ModuleData m;
    m.basis = make_basis(GradedBasis::with_degrees(std::vector<int>(dim, degree), "m"));
    return m;
}

inline ModuleData adjoint(const QuadraticStructure& s) { return regular_module(s); }

// ------------------------------------------------------------ random data

inline const std::vector<std::vector<int>>& space_choices() {
    static const std::vector<std::vector<int>> c = {{0},          {0, 0},       {1, -1},      {0, 1, -1},
                                                    {2, -2, 0},   {1, -1, 1, -1}, {0, 0, 1, -1}, {0, 0, 0, 0},
                                                    {3, -3, 0},   {1, -1, 0, 0}, {2, -2, 1, -1}, {0, 0, 0}};
    return c;
}

inline int rand_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Random graded-symmetric degree 0 nondegenerate pairing on the given degrees.
inline Matrix random_pairing(const std::vector<int>& d, Rng& rng) {
    const std::size_t n = d.size();
    while (true) {
        auto b = zero_matrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                if (d[i] + d[j] != 0) continue;
                Rational v = rand_int(rng, -2, 2);
                if (i == j && parity(d[i])) v = 0;
                b[i][j] = v;
                b[j][i] = sign_pow(static_cast<long>(d[i]) * d[j]) * v;
            }
        if (inverse(b)) return b;
    }
}

struct Space {
    BasisPtr basis;
    BilinearPairing pairing;
};

inline Space random_space(Rng& rng, std::size_t max_dim = 4) {
    const auto& ch = space_choices();
    while (true) {
        const auto& d = ch[rand_int(rng, 0, static_cast<int>(ch.size()) - 1)];
        if (d.size() > max_dim) continue;
        auto b = make_basis(GradedBasis::with_degrees(d));
        return {b, BilinearPairing(b, random_pairing(d, rng))};
    }
}

/// Degrees a nonzero homogeneous form of this arity can have.
inline std::vector<int> form_degrees(const BasisPtr& b, int arity) {
    std::set<int> ds;
    const auto s = b->shifted_degrees();
    for (const auto& t : all_tuples(static_cast<int>(b->size()), arity)) ds.insert(-static_cast<int>(degree_sum(s, t)));
    return {ds.begin(), ds.end()};
}

inline MultilinearForm random_form(const BasisPtr& b, int arity, int degree, Rng& rng, double density = 0.5) {
    MultilinearForm f(b, arity, degree);
    std::bernoulli_distribution keep(density);
    for (const auto& t : all_tuples(static_cast<int>(b->size()), arity))
        if (f.natural_degree(t) == degree && keep(rng)) f.add(t, rand_int(rng, -3, 3));
    return f;
}

inline MultilinearForm random_form(const BasisPtr& b, int arity, Rng& rng) {
    auto ds = form_degrees(b, arity);
    return random_form(b, arity, ds[rand_int(rng, 0, static_cast<int>(ds.size()) - 1)], rng);
}

inline MultilinearForm random_cyclic(const BasisPtr& b, int arity, Rng& rng) {
    return cyclicize(random_form(b, arity, rng));
}

inline MultilinearForm random_symmetric(const BasisPtr& b, int arity, Rng& rng) {
    return symmetrize_form(random_form(b, arity, rng));
}

inline std::vector<int> map_degrees(const BasisPtr& b, int arity) {
    std::set<int> ds;
    const auto s = b->shifted_degrees();
    for (const auto& t : all_tuples(static_cast<int>(b->size()), arity))
        for (std::size_t o = 0; o < b->size(); ++o) ds.insert(s[o] - static_cast<int>(degree_sum(s, t)));
    return {ds.begin(), ds.end()};
}

inline MultilinearMap random_map(const BasisPtr& b, int arity, int degree, Rng& rng, double density = 0.5) {
    MultilinearMap q(b, arity, degree);
    std::bernoulli_distribution keep(density);
    for (const auto& t : all_tuples(static_cast<int>(b->size()), arity))
        for (std::size_t o = 0; o < b->size(); ++o)
            if (q.natural_degree(t, static_cast<int>(o)) == degree && keep(rng))
                q.add(t, static_cast<int>(o), rand_int(rng, -3, 3));
    return q;
}

inline MultilinearMap random_map(const BasisPtr& b, int arity, Rng& rng) {
    auto ds = map_degrees(b, arity);
    return random_map(b, arity, ds[rand_int(rng, 0, static_cast<int>(ds.size()) - 1)], rng);
}

/// A B-quadratic map: the map of a cyclicized random form.
inline MultilinearMap random_quadratic(const BilinearPairing& p, int arity, Rng& rng) {
    return map_of_form(cyclicize(form_of_map(random_map(p.basis(), arity, rng), p)), p);
}

// ------------------------------------------------------------ change of basis

/// Random invertible matrix M with M[i][j] = 0 unless |e_i| = |e_j|.
inline Matrix random_degree_preserving(const GradedBasis& b, Rng& rng) {
    const std::size_t n = b.size();
    while (true) {
        auto M = zero_matrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (b.degree(i) == b.degree(j)) M[i][j] = rand_int(rng, -2, 2);
        if (inverse(M)) return M;
    }
}

/// Pullback of f along the even linear map e_i -> sum_j M[j][i] e_j.
inline MultilinearForm transport(const MultilinearForm& f, const Matrix& M) {
    const int n = static_cast<int>(f.basis()->size());
    MultilinearForm out(f.basis(), f.arity(), f.degree());
    for (const auto& x : all_tuples(n, f.arity())) {
        Rational v = 0;
        for (const auto& [y, c] : f.coefficients()) {
            Rational term = c;
            for (int l = 0; l < f.arity() && sgn(term) != 0; ++l) term *= M[y[l]][x[l]];
            v += term;
        }
        if (sgn(v) != 0) out.add(x, v);
    }
    return out;
}

/// The pairing matrix pulled back the same way: M^T b M.
inline Matrix transport(const Matrix& b, const Matrix& M) { return multiply(transpose(M), multiply(b, M)); }

// ------------------------------------------------------------ constrained random forms

/// Random element of the space of cyclic forms of the given arity and degree
/// that also vanish on shuffle products; nullopt when that space is zero.
inline std::optional<MultilinearForm> random_shuffle_cyclic(const BasisPtr& b, int arity, int degree, Rng& rng) {
    const int n = static_cast<int>(b->size());
    std::vector<Tuple> slots;
    for (const auto& t : all_tuples(n, arity))
        if (MultilinearForm(b, arity, degree).natural_degree(t) == degree) slots.push_back(t);
    if (slots.empty()) return std::nullopt;
    std::map<Tuple, std::size_t> row_of;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(slots.size());
    auto constrain = [&](std::size_t col, std::size_t block, const MultilinearForm& img) {
        for (const auto& [t, v] : img.coefficients()) {
            Tuple key(t);
            key.push_back(static_cast<int>(block));
            auto it = row_of.emplace(key, row_of.size()).first;
            cols[col].emplace_back(it->second, v);
        }
    };
    for (std::size_t c = 0; c < slots.size(); ++c) {
        MultilinearForm u(b, arity, degree);
        u.add(slots[c], 1);
        constrain(c, 0, permute_form(u, Permutation::rotation(arity)) - u);
        for (int p = 1; p < arity - 1; ++p) constrain(c, p, shuffle_vanishing_defect(u, p));
    }
    auto A = zero_matrix(row_of.size(), slots.size());
    for (std::size_t c = 0; c < slots.size(); ++c)
        for (const auto& [r, v] : cols[c]) A[r][c] += v;
    auto kernel = rational_rank(A, slots.size()).kernel;
    if (kernel.empty()) return std::nullopt;
    std::vector<Rational> mix(slots.size(), Rational(0));
    for (const auto& k : kernel) {
        Rational w = rand_int(rng, -2, 2);
        for (std::size_t i = 0; i < slots.size(); ++i) mix[i] += w * k[i];
    }
    MultilinearForm f(b, arity, degree);
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (sgn(mix[i]) != 0) f.add(slots[i], mix[i]);
    return f;
}

}  // namespace fx
