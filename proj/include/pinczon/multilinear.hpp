#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sign_engine.hpp"

namespace pinczon {

using Tuple = std::vector<int>;

/// Sparse vector over a basis: index -> coefficient.
using Vector = std::map<int, Rational>;

inline std::string tuple_string(const Tuple& t) {
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i] + 1);
    return s + ")";
}

/// A k-linear form on V[1], stored as coefficients on basis tuples.
/// A form of degree d only lives on tuples of total shifted degree -d.
class MultilinearForm {
public:
    MultilinearForm() = default;
    MultilinearForm(BasisPtr basis, int arity, int degree)
        : basis_(std::move(basis)), arity_(arity), degree_(degree) {
        if (!basis_) throw InvalidInput("form: null basis");
        if (arity_ < 0) throw InvalidInput("form: negative arity");
        sdeg_ = basis_->shifted_degrees();
    }

    /// A 0-form (scalar).
    static MultilinearForm scalar(BasisPtr basis, const Rational& c) {
        MultilinearForm f(std::move(basis), 0, 0);
        f.add({}, c);
        return f;
    }

    const BasisPtr& basis() const { return basis_; }
    int arity() const { return arity_; }
    int degree() const { return degree_; }
    const std::vector<int>& shifted_degrees() const { return sdeg_; }
    const std::map<Tuple, Rational>& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    std::size_t nnz() const { return coeffs_.size(); }

    /// Degree a nonzero coefficient at `t` would force.
    int natural_degree(const Tuple& t) const { return -static_cast<int>(degree_sum(sdeg_, t)); }

    void add(const Tuple& t, const Rational& v) {
        if (sgn(v) == 0) return;
        check_tuple(t);
        if (natural_degree(t) != degree_)
            throw InvalidInput("form: coefficient at " + tuple_string(t) + " breaks homogeneity of degree " +
                               std::to_string(degree_));
        auto it = coeffs_.find(t);
        if (it == coeffs_.end()) {
            coeffs_.emplace(t, v);
        } else {
            it->second += v;
            if (sgn(it->second) == 0) coeffs_.erase(it);
        }
    }

    Rational at(const Tuple& t) const {
        if (static_cast<int>(t.size()) != arity_) throw InvalidInput("form: arity mismatch in evaluation");
        auto it = coeffs_.find(t);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    MultilinearForm& operator+=(const MultilinearForm& o) { return axpy(1, o); }
    MultilinearForm& operator-=(const MultilinearForm& o) { return axpy(-1, o); }

    /// *this += c * o
    MultilinearForm& axpy(const Rational& c, const MultilinearForm& o) {
        compatible(o);
        if (coeffs_.empty() && !o.coeffs_.empty()) degree_ = o.degree_;
        for (const auto& [t, v] : o.coeffs_) add(t, c * v);
        return *this;
    }

    MultilinearForm& operator*=(const Rational& c) {
        if (sgn(c) == 0) coeffs_.clear();
        for (auto& kv : coeffs_) kv.second *= c;
        return *this;
    }

    friend MultilinearForm operator+(MultilinearForm a, const MultilinearForm& b) { return a += b; }
    friend MultilinearForm operator-(MultilinearForm a, const MultilinearForm& b) { return a -= b; }
    friend MultilinearForm operator*(const Rational& c, MultilinearForm a) { return a *= c; }
    friend MultilinearForm operator-(MultilinearForm a) { return a *= -1; }

    /// Equal coefficient tables (and arity). Degrees of zero forms are not compared.
    friend bool operator==(const MultilinearForm& a, const MultilinearForm& b) {
        return a.arity_ == b.arity_ && a.coeffs_ == b.coeffs_;
    }

private:
    void check_tuple(const Tuple& t) const {
        if (static_cast<int>(t.size()) != arity_) throw InvalidInput("form: tuple length differs from arity");
        for (int i : t)
            if (i < 0 || i >= static_cast<int>(sdeg_.size())) throw InvalidInput("form: index out of range");
    }
    void compatible(const MultilinearForm& o) const {
        if (!same_basis(basis_, o.basis_)) throw InvalidInput("form: basis mismatch");
        if (arity_ != o.arity_) throw InvalidInput("form: arity mismatch");
    }

    BasisPtr basis_;
    std::vector<int> sdeg_;
    int arity_ = 0;
    int degree_ = 0;
    std::map<Tuple, Rational> coeffs_;
};

/// Which degrees a map's homogeneity refers to.
enum class Level { Shifted, Unshifted };

/// A k-ary map on one graded space, stored as ((inputs), output) -> coefficient.
/// At Level::Shifted it lives on V[1] (Taylor coefficients); at Level::Unshifted on V.
template <Level L>
class BasicMultilinearMap {
public:
    using Key = std::pair<Tuple, int>;

    BasicMultilinearMap() = default;
    BasicMultilinearMap(BasisPtr basis, int arity, int degree)
        : basis_(std::move(basis)), arity_(arity), degree_(degree) {
        if (!basis_) throw InvalidInput("map: null basis");
        if (arity_ < 0) throw InvalidInput("map: negative arity");
        degs_ = L == Level::Shifted ? basis_->shifted_degrees() : basis_->degrees();
    }

    const BasisPtr& basis() const { return basis_; }
    int arity() const { return arity_; }
    int degree() const { return degree_; }
    /// Degrees used for homogeneity and signs at this level.
    const std::vector<int>& level_degrees() const { return degs_; }
    const std::map<Key, Rational>& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    std::size_t nnz() const { return coeffs_.size(); }

    int natural_degree(const Tuple& in, int out) const {
        return degs_.at(out) - static_cast<int>(degree_sum(degs_, in));
    }

    void add(const Tuple& in, int out, const Rational& v) {
        if (sgn(v) == 0) return;
        check(in, out);
        if (natural_degree(in, out) != degree_)
            throw InvalidInput("map: entry " + tuple_string(in) + "->" + std::to_string(out + 1) +
                               " breaks homogeneity of degree " + std::to_string(degree_));
        Key k{in, out};
        auto it = coeffs_.find(k);
        if (it == coeffs_.end()) {
            coeffs_.emplace(std::move(k), v);
        } else {
            it->second += v;
            if (sgn(it->second) == 0) coeffs_.erase(it);
        }
    }

    Rational at(const Tuple& in, int out) const {
        auto it = coeffs_.find(Key{in, out});
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    /// Value on a basis tuple as a sparse vector.
    Vector apply(const Tuple& in) const {
        Vector v;
        for (auto it = coeffs_.lower_bound(Key{in, -1}); it != coeffs_.end() && it->first.first == in; ++it)
            v[it->first.second] = it->second;
        return v;
    }

    BasicMultilinearMap& axpy(const Rational& c, const BasicMultilinearMap& o) {
        if (!same_basis(basis_, o.basis_) || arity_ != o.arity_) throw InvalidInput("map: incompatible operands");
        if (coeffs_.empty() && !o.coeffs_.empty()) degree_ = o.degree_;
        for (const auto& [k, v] : o.coeffs_) add(k.first, k.second, c * v);
        return *this;
    }
    BasicMultilinearMap& operator+=(const BasicMultilinearMap& o) { return axpy(1, o); }
    BasicMultilinearMap& operator-=(const BasicMultilinearMap& o) { return axpy(-1, o); }
    BasicMultilinearMap& operator*=(const Rational& c) {
        if (sgn(c) == 0) coeffs_.clear();
        for (auto& kv : coeffs_) kv.second *= c;
        return *this;
    }
    friend BasicMultilinearMap operator+(BasicMultilinearMap a, const BasicMultilinearMap& b) { return a += b; }
    friend BasicMultilinearMap operator-(BasicMultilinearMap a, const BasicMultilinearMap& b) { return a -= b; }
    friend BasicMultilinearMap operator*(const Rational& c, BasicMultilinearMap a) { return a *= c; }
    friend BasicMultilinearMap operator-(BasicMultilinearMap a) { return a *= -1; }
    friend bool operator==(const BasicMultilinearMap& a, const BasicMultilinearMap& b) {
        return a.arity_ == b.arity_ && a.coeffs_ == b.coeffs_;
    }

private:
    void check(const Tuple& in, int out) const {
        if (static_cast<int>(in.size()) != arity_) throw InvalidInput("map: input length differs from arity");
        const int n = static_cast<int>(degs_.size());
        if (out < 0 || out >= n) throw InvalidInput("map: output index out of range");
        for (int i : in)
            if (i < 0 || i >= n) throw InvalidInput("map: input index out of range");
    }

    BasisPtr basis_;
    std::vector<int> degs_;
    int arity_ = 0;
    int degree_ = 0;
    std::map<Key, Rational> coeffs_;
};

/// Map on V[1]: a Taylor coefficient of a coderivation.
using MultilinearMap = BasicMultilinearMap<Level::Shifted>;
/// Map on V in ordinary degrees, e.g. structure constants as typed by a user.
using UnshiftedMap = BasicMultilinearMap<Level::Unshifted>;

// ---------------------------------------------------------------- forms

inline Rational evaluate_form(const MultilinearForm& f, const Tuple& t) { return f.at(t); }

/// (f^tau)(x_1..x_n) = koszul sign * f(x_{tau^{-1}(1)}, ..., x_{tau^{-1}(n)}).
inline MultilinearForm permute_form(const MultilinearForm& f, const Permutation& tau) {
    if (static_cast<int>(tau.size()) != f.arity()) throw InvalidInput("permute_form: size mismatch");
    const auto& s = f.shifted_degrees();
    MultilinearForm out(f.basis(), f.arity(), f.degree());
    const std::size_t n = tau.size();
    Tuple x(n);
    for (const auto& [y, v] : f.coefficients()) {
        for (std::size_t p = 0; p < n; ++p) x[p] = y[tau(p)];
        out.add(x, koszul_sign(degrees_of(s, x), tau) * v);
    }
    return out;
}

/// Sum of the arity-many rotations, not normalized.
inline MultilinearForm cyclicize(const MultilinearForm& f) {
    const int n = f.arity();
    if (n <= 1) return f;
    MultilinearForm out(f.basis(), n, f.degree());
    const auto rho = Permutation::rotation(n);
    auto t = Permutation::identity(n);
    for (int r = 0; r < n; ++r) {
        out += permute_form(f, t);
        t = t.then(rho);
    }
    return out;
}

inline bool is_cyclic(const MultilinearForm& f) {
    if (f.arity() <= 1) return true;
    return permute_form(f, Permutation::rotation(f.arity())) == f;
}

/// A basis tuple where f and its rotation differ, if any.
inline std::optional<Tuple> cyclicity_witness(const MultilinearForm& f) {
    if (f.arity() <= 1) return std::nullopt;
    auto g = permute_form(f, Permutation::rotation(f.arity()));
    g -= f;
    if (g.is_zero()) return std::nullopt;
    return g.coefficients().begin()->first;
}

/// (f (x) g)(a, b) = (-1)^{deg g * |a|} f(a) g(b), |a| the total shifted degree of a.
inline MultilinearForm tensor_product(const MultilinearForm& f, const MultilinearForm& g) {
    if (!same_basis(f.basis(), g.basis())) throw InvalidInput("tensor_product: basis mismatch");
    MultilinearForm out(f.basis(), f.arity() + g.arity(), f.degree() + g.degree());
    const auto& s = f.shifted_degrees();
    for (const auto& [a, u] : f.coefficients()) {
        const int sg = sign_pow(static_cast<long>(g.degree()) * degree_sum(s, a));
        for (const auto& [b, w] : g.coefficients()) {
            Tuple t(a);
            t.insert(t.end(), b.begin(), b.end());
            out.add(t, sg * u * w);
        }
    }
    return out;
}

inline MultilinearForm cyclic_product(const MultilinearForm& a, const MultilinearForm& b) {
    return cyclicize(tensor_product(a, b));
}

/// Contraction of the first slot with basis vector e_i.
inline MultilinearForm interior(int i, const MultilinearForm& f) {
    if (f.arity() < 1) throw InvalidInput("interior: arity 0");
    if (i < 0 || i >= static_cast<int>(f.basis()->size())) throw InvalidInput("interior: index out of range");
    MultilinearForm out(f.basis(), f.arity() - 1, f.degree() + f.basis()->shifted_degree(i));
    for (auto it = f.coefficients().lower_bound(Tuple{i}); it != f.coefficients().end() && it->first[0] == i;
         ++it)
        out.add(Tuple(it->first.begin() + 1, it->first.end()), it->second);
    return out;
}

/// Contraction with a homogeneous vector given in coordinates.
inline MultilinearForm interior(const Vector& v, const MultilinearForm& f) {
    if (f.arity() < 1) throw InvalidInput("interior: arity 0");
    if (v.empty()) return MultilinearForm(f.basis(), f.arity() - 1, f.degree());
    MultilinearForm out = interior(v.begin()->first, f);
    out *= v.begin()->second;
    for (auto it = std::next(v.begin()); it != v.end(); ++it) out.axpy(it->second, interior(it->first, f));
    return out;
}

/// Sh(p,q) as permutations: sigma(i) = pos[i] for i < p and the complement, in order, after.
inline std::vector<Permutation> shuffles(int p, int q) {
    std::vector<Permutation> out;
    const int n = p + q;
    std::vector<int> mask(n, 0);
    std::fill(mask.begin(), mask.begin() + p, 1);
    // prev_permutation over a 1..10..0 mask enumerates subsets in lexicographic order
    do {
        std::vector<int> img;
        for (int i = 0; i < n; ++i)
            if (mask[i]) img.push_back(i);
        for (int i = 0; i < n; ++i)
            if (!mask[i]) img.push_back(i);
        out.emplace_back(std::move(img));
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
}

/// Sum over shuffles of the first arity-1 slots (split p + q), last slot fixed.
inline MultilinearForm shuffle_vanishing_defect(const MultilinearForm& f, int p) {
    const int k = f.arity() - 1;
    if (p <= 0 || p >= k) throw InvalidInput("shuffle_vanishing_defect: split out of range");
    MultilinearForm out(f.basis(), f.arity(), f.degree());
    for (const auto& sh : shuffles(p, k - p)) {
        auto img = sh.images();
        img.push_back(k);
        out += permute_form(f, Permutation(std::move(img)));
    }
    return out;
}

/// True iff every split has zero defect.
inline bool vanishes_on_shuffles(const MultilinearForm& f) {
    for (int p = 1; p < f.arity() - 1; ++p)
        if (!shuffle_vanishing_defect(f, p).is_zero()) return false;
    return true;
}

inline MultilinearForm symmetrize_form(const MultilinearForm& f) {
    MultilinearForm out(f.basis(), f.arity(), f.degree());
    for (const auto& s : Permutation::all(f.arity())) out += permute_form(f, s);
    return out;
}

/// Fixed (with Koszul signs) by every adjacent transposition.
inline bool is_symmetric(const MultilinearForm& f) {
    for (int i = 0; i + 1 < f.arity(); ++i)
        if (!(permute_form(f, Permutation::transposition(f.arity(), i, i + 1)) == f)) return false;
    return true;
}

// ---------------------------------------------------------------- maps

/// Signed reordering of the inputs, same convention as permute_form.
template <Level L>
BasicMultilinearMap<L> permute_map(const BasicMultilinearMap<L>& q, const Permutation& tau) {
    if (static_cast<int>(tau.size()) != q.arity()) throw InvalidInput("permute_map: size mismatch");
    const auto& d = q.level_degrees();
    BasicMultilinearMap<L> out(q.basis(), q.arity(), q.degree());
    const std::size_t n = tau.size();
    Tuple x(n);
    for (const auto& [key, v] : q.coefficients()) {
        for (std::size_t p = 0; p < n; ++p) x[p] = key.first[tau(p)];
        out.add(x, key.second, koszul_sign(degrees_of(d, x), tau) * v);
    }
    return out;
}

/// Q^Sym: the sum of all signed input reorderings.
template <Level L>
BasicMultilinearMap<L> symmetrize_map(const BasicMultilinearMap<L>& q) {
    BasicMultilinearMap<L> out(q.basis(), q.arity(), q.degree());
    for (const auto& s : Permutation::all(q.arity())) out += permute_map(q, s);
    return out;
}

template <Level L>
bool is_symmetric(const BasicMultilinearMap<L>& q) {
    for (int i = 0; i + 1 < q.arity(); ++i)
        if (!(permute_map(q, Permutation::transposition(q.arity(), i, i + 1)) == q)) return false;
    return true;
}

/// Graded skew-symmetry: each adjacent transposition acts by -1.
template <Level L>
bool is_skew(const BasicMultilinearMap<L>& q) {
    for (int i = 0; i + 1 < q.arity(); ++i)
        if (!(permute_map(q, Permutation::transposition(q.arity(), i, i + 1)) == -q)) return false;
    return true;
}

/// Shuffle sum over the inputs at split p + (k - p).
template <Level L>
BasicMultilinearMap<L> map_shuffle_defect(const BasicMultilinearMap<L>& q, int p) {
    const int k = q.arity();
    if (p <= 0 || p >= k) throw InvalidInput("map_shuffle_defect: split out of range");
    BasicMultilinearMap<L> out(q.basis(), k, q.degree());
    for (const auto& sh : shuffles(p, k - p)) out += permute_map(q, sh);
    return out;
}

template <Level L>
bool vanishes_on_shuffles(const BasicMultilinearMap<L>& q) {
    for (int p = 1; p < q.arity(); ++p)
        if (!map_shuffle_defect(q, p).is_zero()) return false;
    return true;
}

/// All k-tuples over {0..n-1} in lexicographic order.
inline std::vector<Tuple> all_tuples(int n, int k) {
    std::vector<Tuple> out;
    Tuple t(k, 0);
    if (k == 0) return {Tuple{}};
    if (n == 0) return out;
    while (true) {
        out.push_back(t);
        int i = k - 1;
        while (i >= 0 && ++t[i] == n) t[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

}  // namespace pinczon
