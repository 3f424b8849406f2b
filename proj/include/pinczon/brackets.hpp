#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "multilinear.hpp"

namespace pinczon {

/// What is wrong with a candidate pairing matrix, if anything.
struct PairingDiagnosis {
    bool square = true;
    std::optional<std::pair<int, int>> asymmetric;  ///< first (i,j) breaking graded symmetry
    std::optional<std::pair<int, int>> off_degree;  ///< first nonzero (i,j) with |e_i|+|e_j| != 0
    bool nondegenerate = true;
    bool ok() const { return square && !asymmetric && !off_degree && nondegenerate; }
};

/// Checks b(e_i,e_j) = (-1)^{|e_i||e_j|} b(e_j,e_i), degree 0 and invertibility.
inline PairingDiagnosis diagnose_pairing(const GradedBasis& basis, const Matrix& b) {
    PairingDiagnosis d;
    const std::size_t n = basis.size();
    if (b.size() != n) {
        d.square = false;
        return d;
    }
    for (const auto& row : b)
        if (row.size() != n) {
            d.square = false;
            return d;
        }
    for (std::size_t i = 0; i < n && !d.asymmetric; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (b[i][j] != sign_pow(static_cast<long>(basis.degree(i)) * basis.degree(j)) * b[j][i]) {
                d.asymmetric = {static_cast<int>(i), static_cast<int>(j)};
                break;
            }
    for (std::size_t i = 0; i < n && !d.off_degree; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(b[i][j]) != 0 && basis.degree(i) + basis.degree(j) != 0) {
                d.off_degree = {static_cast<int>(i), static_cast<int>(j)};
                break;
            }
    d.nondegenerate = matrix_rank(b) == n;
    return d;
}

/// A graded-symmetric, degree 0, nondegenerate bilinear form b on V,
/// with the derived data used everywhere else: B = eta_2 b on V[1] and its inverse.
class BilinearPairing {
public:
    BilinearPairing() = default;
    BilinearPairing(BasisPtr basis, Matrix b) : basis_(std::move(basis)), b_(std::move(b)) {
        if (!basis_) throw InvalidInput("pairing: null basis");
        auto d = diagnose_pairing(*basis_, b_);
        if (!d.square) throw InvalidInput("pairing: matrix shape does not match the basis");
        if (d.asymmetric)
            throw InvalidInput("pairing: not graded-symmetric at " +
                               tuple_string({d.asymmetric->first, d.asymmetric->second}));
        if (d.off_degree)
            throw InvalidInput("pairing: not of degree 0 at " +
                               tuple_string({d.off_degree->first, d.off_degree->second}));
        auto inv = inverse(b_);
        if (!inv) throw DegeneratePairing("pairing: matrix is singular");
        b_inv_ = std::move(*inv);
        const std::size_t n = basis_->size();
        B_ = b_;
        for (std::size_t i = 0; i < n; ++i)
            if (parity(basis_->shifted_degree(i)))
                for (auto& v : B_[i]) v = -v;
        B_inv_ = *inverse(B_);
        for (std::size_t i = 0; i < n; ++i) {
            Vector dual;
            for (std::size_t j = 0; j < n; ++j)
                if (sgn(b_inv_[i][j]) != 0) dual[static_cast<int>(j)] = b_inv_[i][j];
            duals_.push_back(std::move(dual));
        }
    }

    const BasisPtr& basis() const { return basis_; }
    std::size_t size() const { return b_.size(); }
    const Matrix& matrix() const { return b_; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return b_[i][j]; }
    /// B(e_i,e_j) = (-1)^{deg e_i} b(e_i,e_j), deg the shifted degree.
    const Matrix& B() const { return B_; }
    const Matrix& B_inverse() const { return B_inv_; }
    /// Coordinates of e'_i, where b(e'_i, e_j) = delta_ij.
    const Vector& dual_vector(std::size_t i) const { return duals_.at(i); }

private:
    BasisPtr basis_;
    Matrix b_, b_inv_, B_, B_inv_;
    std::vector<Vector> duals_;
};

struct DualBasis {
    /// Row i holds e'_i in the basis (e_j).
    Matrix primal_to_dual;
};

inline DualBasis dual_basis(const BilinearPairing& b) {
    const std::size_t n = b.size();
    DualBasis d{zero_matrix(n, n)};
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [j, v] : b.dual_vector(i)) d.primal_to_dual[i][j] = v;
    return d;
}

// ------------------------------------------------------------ coderivations

namespace detail {
template <class Map>
std::multimap<int, const typename Map::Key*> by_output(const Map& q) {
    std::multimap<int, const typename Map::Key*> idx;
    for (const auto& kv : q.coefficients()) idx.emplace(kv.first.second, &kv.first);
    return idx;
}
}  // namespace detail

/// (Q o Q')(x) = sum_r (-1)^{deg Q' (x_1+..+x_r)} Q(x_1..x_r, Q'(x_{r+1}..x_{r+k'}), ...).
inline MultilinearMap compose_maps(const MultilinearMap& Q, const MultilinearMap& Qp) {
    if (!same_basis(Q.basis(), Qp.basis())) throw InvalidInput("compose_maps: basis mismatch");
    const int k = Q.arity(), kp = Qp.arity();
    const auto& s = Q.level_degrees();
    // a constant outer map has no slot to insert into
    MultilinearMap out(Q.basis(), std::max(k + kp - 1, 0), Q.degree() + Qp.degree());
    if (k == 0) return out;
    auto idx = detail::by_output(Qp);
    for (const auto& [key, v] : Q.coefficients()) {
        const auto& ins = key.first;
        long prefix = 0;
        for (int pos = 0; pos < k; ++pos) {
            const int sg = sign_pow(static_cast<long>(Qp.degree()) * prefix);
            auto [lo, hi] = idx.equal_range(ins[pos]);
            for (auto it = lo; it != hi; ++it) {
                const Tuple& inner = it->second->first;
                Tuple t(ins.begin(), ins.begin() + pos);
                t.insert(t.end(), inner.begin(), inner.end());
                t.insert(t.end(), ins.begin() + pos + 1, ins.end());
                out.add(t, key.second, sg * v * Qp.coefficients().at(*it->second));
            }
            prefix += s[ins[pos]];
        }
    }
    return out;
}

/// [Q,Q'] = Q o Q' - (-1)^{deg Q deg Q'} Q' o Q.
inline MultilinearMap bracket_maps(const MultilinearMap& Q, const MultilinearMap& Qp) {
    auto out = compose_maps(Q, Qp);
    out.axpy(-sign_pow(static_cast<long>(Q.degree()) * Qp.degree()), compose_maps(Qp, Q));
    return out;
}

/// Q(Q'(x_1..x_k'), x_{k'+1}, ...): insertion into the first slot only, no sign.
inline MultilinearMap insert_first(const MultilinearMap& Q, const MultilinearMap& Qp) {
    MultilinearMap out(Q.basis(), std::max(Q.arity() + Qp.arity() - 1, 0), Q.degree() + Qp.degree());
    if (Q.arity() == 0) return out;
    auto idx = detail::by_output(Qp);
    for (const auto& [key, v] : Q.coefficients()) {
        auto [lo, hi] = idx.equal_range(key.first[0]);
        for (auto it = lo; it != hi; ++it) {
            Tuple t = it->second->first;
            t.insert(t.end(), key.first.begin() + 1, key.first.end());
            out.add(t, key.second, v * Qp.coefficients().at(*it->second));
        }
    }
    return out;
}

/// Sum over subsets J of size m of the inputs (J, then the complement I, both
/// increasing) of the Koszul-signed T(x_J, x_I).
inline MultilinearMap unshuffle_sum(const MultilinearMap& T, int m) {
    const int n = T.arity();
    MultilinearMap out(T.basis(), n, T.degree());
    for (const auto& sh : shuffles(m, n - m)) out += permute_map(T, sh.inverse());
    return out;
}

/// Bracket of symmetric coderivation coefficients on the symmetric coalgebra,
/// summed over subset splittings rather than full symmetrization.
inline MultilinearMap bracket_sym_maps(const MultilinearMap& Q, const MultilinearMap& Qp) {
    if (!is_symmetric(Q) || !is_symmetric(Qp)) throw InvalidInput("bracket_sym_maps: inputs must be symmetric");
    auto out = unshuffle_sum(insert_first(Q, Qp), Qp.arity());
    out.axpy(-sign_pow(static_cast<long>(Q.degree()) * Qp.degree()), unshuffle_sum(insert_first(Qp, Q), Q.arity()));
    return out;
}

// ------------------------------------------------------------ forms <-> maps

/// Omega_Q(x_1..x_{k+1}) = B(Q(x_1..x_k), x_{k+1}).
inline MultilinearForm form_of_map(const MultilinearMap& Q, const BilinearPairing& b) {
    if (!same_basis(Q.basis(), b.basis())) throw InvalidInput("form_of_map: basis mismatch");
    MultilinearForm out(Q.basis(), Q.arity() + 1, Q.degree() + 2);
    const auto& B = b.B();
    for (const auto& [key, v] : Q.coefficients())
        for (std::size_t m = 0; m < B.size(); ++m)
            if (sgn(B[key.second][m]) != 0) {
                Tuple t = key.first;
                t.push_back(static_cast<int>(m));
                out.add(t, v * B[key.second][m]);
            }
    return out;
}

/// Inverse of form_of_map: the last slot is turned into the output through B^{-1}.
inline MultilinearMap map_of_form(const MultilinearForm& f, const BilinearPairing& b) {
    if (!same_basis(f.basis(), b.basis())) throw InvalidInput("map_of_form: basis mismatch");
    if (f.arity() < 1) throw InvalidInput("map_of_form: arity 0");
    MultilinearMap out(f.basis(), f.arity() - 1, f.degree() - 2);
    const auto& Bi = b.B_inverse();
    for (const auto& [t, v] : f.coefficients()) {
        Tuple ins(t.begin(), t.end() - 1);
        const int m = t.back();
        for (std::size_t j = 0; j < Bi.size(); ++j)
            if (sgn(Bi[m][j]) != 0) out.add(ins, static_cast<int>(j), v * Bi[m][j]);
    }
    return out;
}

inline bool is_b_quadratic(const MultilinearMap& Q, const BilinearPairing& b) {
    return is_cyclic(form_of_map(Q, b));
}

// ------------------------------------------------------------ Pinczon brackets

namespace detail {
/// Sign in front of the i-th term of the basis formula.
inline int pinczon_sign(int shifted_i, int deg_g) { return -sign_pow(static_cast<long>(shifted_i) * (1 + deg_g)); }

template <class Combine>
MultilinearForm contract_sum(const MultilinearForm& f, const MultilinearForm& g, const BilinearPairing& b,
                             Combine combine) {
    const int arity = std::max(f.arity() + g.arity() - 2, 0);
    MultilinearForm out(f.basis(), arity, f.degree() + g.degree() - 2);
    if (f.arity() == 0 || g.arity() == 0) return out;
    const auto& basis = *f.basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        auto a = interior(static_cast<int>(i), f);
        if (a.is_zero()) continue;
        auto c = interior(b.dual_vector(i), g);
        if (c.is_zero()) continue;
        out.axpy(pinczon_sign(basis.shifted_degree(i), g.degree()), combine(tensor_product(a, c)));
    }
    return out;
}
}  // namespace detail

/// {f,g} = sum_i c_i (iota_{e_i} f (x) iota_{e'_i} g)^Cycl on cyclic forms.
/// The signs c_i are fixed by {Omega_Q, Omega_Q'} = Omega_[Q,Q'].
inline MultilinearForm pinczon_bracket(const MultilinearForm& f, const MultilinearForm& g, const BilinearPairing& b) {
    if (!same_basis(f.basis(), g.basis()) || !same_basis(f.basis(), b.basis()))
        throw InvalidInput("pinczon_bracket: basis mismatch");
    if (!is_cyclic(f) || !is_cyclic(g)) throw InvalidInput("pinczon_bracket: arguments must be cyclic");
    return detail::contract_sum(f, g, b, [](const MultilinearForm& t) { return cyclicize(t); });
}

inline Rational factorial(int n) {
    Integer r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return Rational(r);
}

/// Bracket on totally symmetric forms, normalized so that
/// {F^Sym, G^Sym}| = ({F,G})^Sym for cyclic F, G.
inline MultilinearForm pinczon_bracket_sym(const MultilinearForm& f, const MultilinearForm& g,
                                           const BilinearPairing& b) {
    if (!same_basis(f.basis(), g.basis()) || !same_basis(f.basis(), b.basis()))
        throw InvalidInput("pinczon_bracket_sym: basis mismatch");
    if (!is_symmetric(f) || !is_symmetric(g)) throw InvalidInput("pinczon_bracket_sym: arguments must be symmetric");
    auto out = detail::contract_sum(f, g, b, [](const MultilinearForm& t) { return symmetrize_form(t); });
    if (f.arity() == 0 || g.arity() == 0) return out;
    const int kk = std::max(f.arity() + g.arity() - 2, 1);
    out *= Rational(kk) / (factorial(f.arity()) * factorial(g.arity()));
    return out;
}

}  // namespace pinczon
