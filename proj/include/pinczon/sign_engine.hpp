#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace pinczon {

/// Named basis of a finite-dimensional graded space.
/// Stores the degrees |e_i| in V; the degree in V[1] is always derived as |e_i| - 1.
class GradedBasis {
public:
    GradedBasis() = default;
    GradedBasis(std::vector<std::string> names, std::vector<int> degrees)
        : names_(std::move(names)), degrees_(std::move(degrees)) {
        if (names_.size() != degrees_.size())
            throw InvalidInput("basis: names and degrees differ in length");
        std::set<std::string> seen(names_.begin(), names_.end());
        if (seen.size() != names_.size()) throw InvalidInput("basis: duplicate names");
    }

    /// Names e1..en (with an optional prefix) for the given degrees.
    static GradedBasis with_degrees(std::vector<int> degrees, const std::string& prefix = "e") {
        std::vector<std::string> names;
        for (std::size_t i = 0; i < degrees.size(); ++i) names.push_back(prefix + std::to_string(i + 1));
        return GradedBasis(std::move(names), std::move(degrees));
    }

    std::size_t size() const { return degrees_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    int degree(std::size_t i) const { return degrees_.at(i); }
    const std::vector<int>& degrees() const { return degrees_; }
    int shifted_degree(std::size_t i) const { return degrees_.at(i) - 1; }

    std::vector<int> shifted_degrees() const {
        std::vector<int> s(degrees_);
        for (int& d : s) d -= 1;
        return s;
    }

    bool operator==(const GradedBasis&) const = default;

private:
    std::vector<std::string> names_;
    std::vector<int> degrees_;
};

using BasisPtr = std::shared_ptr<const GradedBasis>;

inline BasisPtr make_basis(GradedBasis b) { return std::make_shared<const GradedBasis>(std::move(b)); }

inline bool same_basis(const BasisPtr& a, const BasisPtr& b) { return a == b || (a && b && *a == *b); }

/// A bijection of {0..n-1}; `image(p)` is where position p is sent.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<char> hit(images_.size(), 0);
        for (int v : images_) {
            if (v < 0 || v >= static_cast<int>(images_.size()) || hit[v])
                throw InvalidInput("not a permutation");
            hit[v] = 1;
        }
    }

    /// From the 1-based image list used in file formats and formulas.
    static Permutation from_one_based(const std::vector<int>& images) {
        std::vector<int> z(images);
        for (int& v : z) v -= 1;
        return Permutation(std::move(z));
    }

    static Permutation identity(std::size_t n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 0);
        return Permutation(std::move(v));
    }

    /// p -> p+1 mod n, the generator of the cyclic subgroup.
    static Permutation rotation(std::size_t n) {
        std::vector<int> v(n);
        for (std::size_t p = 0; p < n; ++p) v[p] = static_cast<int>((p + 1) % n);
        return Permutation(std::move(v));
    }

    static Permutation transposition(std::size_t n, int a, int b) {
        auto p = identity(n);
        std::swap(p.images_.at(a), p.images_.at(b));
        return p;
    }

    std::size_t size() const { return images_.size(); }
    int operator()(std::size_t p) const { return images_[p]; }
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const {
        std::vector<int> v(images_.size());
        for (std::size_t p = 0; p < images_.size(); ++p) v[images_[p]] = static_cast<int>(p);
        return Permutation(std::move(v));
    }

    /// Apply *this first, then `after`.
    Permutation then(const Permutation& after) const {
        if (after.size() != size()) throw InvalidInput("permutation size mismatch");
        std::vector<int> v(images_.size());
        for (std::size_t p = 0; p < images_.size(); ++p) v[p] = after.images_[images_[p]];
        return Permutation(std::move(v));
    }

    /// Plain sign of the permutation.
    int sign() const {
        int s = 1;
        for (std::size_t i = 0; i < images_.size(); ++i)
            for (std::size_t j = i + 1; j < images_.size(); ++j)
                if (images_[i] > images_[j]) s = -s;
        return s;
    }

    bool operator==(const Permutation&) const = default;

    /// All permutations of {0..n-1} in lexicographic order of images.
    static std::vector<Permutation> all(std::size_t n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 0);
        std::vector<Permutation> out;
        do out.emplace_back(v);
        while (std::next_permutation(v.begin(), v.end()));
        return out;
    }

private:
    std::vector<int> images_;
};

/// Koszul sign of moving the entry at position i to position sigma(i):
/// one factor -1 per inverted pair whose two degrees are both odd.
inline int koszul_sign(std::span<const int> degrees, const Permutation& sigma) {
    if (degrees.size() != sigma.size()) throw InvalidInput("koszul_sign: length mismatch");
    int s = 1;
    const std::size_t n = degrees.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!parity(degrees[i])) continue;
        for (std::size_t j = i + 1; j < n; ++j)
            if (parity(degrees[j]) && sigma(i) > sigma(j)) s = -s;
    }
    return s;
}

inline int koszul_sign(const std::vector<int>& degrees, const Permutation& sigma) {
    return koszul_sign(std::span<const int>(degrees), sigma);
}

/// eta_a(x_1..x_k) = (-1)^{sum_j (a - j) x_j}, x_j the shifted degrees.
inline int eta(int a, std::span<const int> shifted) {
    long e = 0;
    for (std::size_t j = 0; j < shifted.size(); ++j)
        e += static_cast<long>(a - static_cast<int>(j + 1)) * shifted[j];
    return sign_pow(e);
}

inline int eta(int a, const std::vector<int>& shifted) { return eta(a, std::span<const int>(shifted)); }

/// Degrees of the entries of `tuple` read from `degs`.
inline std::vector<int> degrees_of(const std::vector<int>& degs, const std::vector<int>& tuple) {
    std::vector<int> out;
    out.reserve(tuple.size());
    for (int i : tuple) out.push_back(degs.at(i));
    return out;
}

inline long degree_sum(const std::vector<int>& degs, const std::vector<int>& tuple) {
    long s = 0;
    for (int i : tuple) s += degs.at(i);
    return s;
}

}  // namespace pinczon
