#pragma once

#include "multilinear.hpp"

namespace pinczon {

/// Q(x_1..x_k) = eta_k(x) q(x_1..x_k), moving a map on V to V[1].
/// The degree becomes |q| + k - 1.
inline MultilinearMap shift_map(const UnshiftedMap& q) {
    const int k = q.arity();
    MultilinearMap out(q.basis(), k, q.degree() + k - 1);
    const auto s = q.basis()->shifted_degrees();
    for (const auto& [key, v] : q.coefficients())
        out.add(key.first, key.second, eta(k, degrees_of(s, key.first)) * v);
    return out;
}

/// Inverse of shift_map (eta_k squares to 1).
inline UnshiftedMap unshift_map(const MultilinearMap& Q) {
    const int k = Q.arity();
    UnshiftedMap out(Q.basis(), k, Q.degree() - k + 1);
    const auto s = Q.basis()->shifted_degrees();
    for (const auto& [key, v] : Q.coefficients())
        out.add(key.first, key.second, eta(k, degrees_of(s, key.first)) * v);
    return out;
}

}  // namespace pinczon
