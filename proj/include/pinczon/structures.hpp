#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "brackets.hpp"
#include "shift.hpp"

namespace pinczon {

enum class Flavor { Associative, Commutative, Lie, AInfinity, CInfinity, LInfinity };

inline std::string flavor_name(Flavor f) {
    switch (f) {
        case Flavor::Associative: return "associative";
        case Flavor::Commutative: return "commutative";
        case Flavor::Lie: return "lie";
        case Flavor::AInfinity: return "a-infinity";
        case Flavor::CInfinity: return "c-infinity";
        case Flavor::LInfinity: return "l-infinity";
    }
    return "?";
}

inline Flavor parse_flavor(const std::string& s) {
    for (Flavor f : {Flavor::Associative, Flavor::Commutative, Flavor::Lie, Flavor::AInfinity, Flavor::CInfinity,
                     Flavor::LInfinity})
        if (flavor_name(f) == s) return f;
    throw InvalidInput("unknown algebra kind '" + s + "'");
}

/// Lie and L-infinity structures live on the symmetric coalgebra.
inline bool is_lie_type(Flavor f) { return f == Flavor::Lie || f == Flavor::LInfinity; }
inline bool is_homotopy(Flavor f) {
    return f == Flavor::AInfinity || f == Flavor::CInfinity || f == Flavor::LInfinity;
}

struct Check {
    std::string name;
    bool passed = true;
    std::string detail;
    std::optional<Tuple> witness;
};

/// Ordered list of named checks.
struct ValidationReport {
    std::vector<Check> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
    Check& add(std::string name, bool ok, std::string detail = {}, std::optional<Tuple> witness = std::nullopt) {
        checks.push_back({std::move(name), ok, std::move(detail), std::move(witness)});
        return checks.back();
    }
    void append(const ValidationReport& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }
    const Check* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

/// A quadratic algebra (strict or up to homotopy) with its V[1] data.
struct QuadraticStructure {
    BasisPtr basis;
    BilinearPairing pairing;
    Flavor flavor = Flavor::Associative;
    /// Structure constants on V as ingested, one map per arity.
    std::vector<UnshiftedMap> constants;
    /// Taylor coefficients Q_k = shift(q_k), same order as `constants`.
    std::vector<MultilinearMap> taylor;
    /// Omega_{Q_k} = B(Q_k(...), .), same order.
    std::vector<MultilinearForm> forms;

    /// The single structure form of a strict structure.
    const MultilinearForm& structure_form() const { return forms.at(0); }
    const MultilinearMap& Q() const { return taylor.at(0); }
    const UnshiftedMap& q() const { return constants.at(0); }
    std::size_t dim() const { return basis->size(); }
};

/// Builds the structure. The pairing is validated (errors thrown); strict flavors
/// need exactly one binary map of degree 0, homotopy ones maps q_k of degree 2 - k.
inline QuadraticStructure load_structure(BasisPtr basis, Matrix b, Flavor flavor, std::vector<UnshiftedMap> constants) {
    QuadraticStructure s;
    s.basis = basis;
    s.pairing = BilinearPairing(basis, std::move(b));
    s.flavor = flavor;
    if (!is_homotopy(flavor)) {
        if (constants.size() != 1 || constants[0].arity() != 2)
            throw InvalidInput("strict structure needs exactly one binary law");
        if (constants[0].degree() != 0) throw InvalidInput("strict law must have degree 0");
    }
    std::set<int> arities;
    for (const auto& q : constants) {
        if (!same_basis(q.basis(), basis)) throw InvalidInput("structure constants on a different basis");
        if (q.arity() < 1) throw InvalidInput("Taylor coefficients need arity >= 1");
        if (!arities.insert(q.arity()).second) throw InvalidInput("repeated Taylor arity");
        s.constants.push_back(q);
        s.taylor.push_back(shift_map(q));
        s.forms.push_back(form_of_map(s.taylor.back(), s.pairing));
    }
    return s;
}

namespace detail {
inline std::string value_at(const MultilinearForm& f, const Tuple& t) {
    return "value " + format_rational(f.at(t)) + " at " + tuple_string(t);
}

inline std::optional<Tuple> first_tuple(const MultilinearForm& f) {
    if (f.is_zero()) return std::nullopt;
    return f.coefficients().begin()->first;
}

inline std::optional<Tuple> first_tuple(const MultilinearMap& m) {
    if (m.is_zero()) return std::nullopt;
    Tuple t = m.coefficients().begin()->first.first;
    t.push_back(m.coefficients().begin()->first.second);
    return t;
}

/// Adds into the entry of `by_arity` keyed by the form's arity.
inline void accumulate(std::map<int, MultilinearForm>& by_arity, const MultilinearForm& f) {
    auto it = by_arity.find(f.arity());
    if (it == by_arity.end()) by_arity.emplace(f.arity(), f);
    else it->second += f;
}
inline void accumulate(std::map<int, MultilinearMap>& by_arity, const MultilinearMap& m) {
    auto it = by_arity.find(m.arity());
    if (it == by_arity.end()) by_arity.emplace(m.arity(), m);
    else it->second += m;
}
}  // namespace detail

/// b(q(x,y),z) = b(x,q(y,z)) in its V[1] form: every Omega_{Q_k} is cyclic.
/// A failure carries a tuple t with Omega(rotated t) != Omega(t).
inline ValidationReport check_invariance(const QuadraticStructure& s) {
    ValidationReport r;
    for (std::size_t i = 0; i < s.forms.size(); ++i) {
        const auto& f = s.forms[i];
        const std::string name = "invariance (Omega cyclic, arity " + std::to_string(f.arity()) + ")";
        auto w = cyclicity_witness(f);
        if (!w) {
            r.add(name, true);
            continue;
        }
        auto diff = permute_form(f, Permutation::rotation(f.arity()));
        diff -= f;
        r.add(name, false, "rotation changes Omega: " + detail::value_at(diff, *w), w);
    }
    return r;
}

/// The self-bracket of the structure computed on forms and on maps.
struct SelfBracket {
    std::map<int, MultilinearForm> forms;  ///< {Omega,Omega}, or {I,I}| for Lie types
    std::map<int, MultilinearForm> maps;   ///< the same quantity obtained from [Q,Q]
};

inline SelfBracket self_bracket(const QuadraticStructure& s) {
    SelfBracket out;
    const auto& b = s.pairing;
    const std::size_t n = s.taylor.size();
    if (!is_lie_type(s.flavor)) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                detail::accumulate(out.forms, pinczon_bracket(s.forms[i], s.forms[j], b));
                detail::accumulate(out.maps, form_of_map(bracket_maps(s.taylor[i], s.taylor[j]), b));
            }
        return out;
    }
    std::vector<MultilinearForm> sym;
    for (const auto& f : s.forms) sym.push_back(symmetrize_form(f));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            detail::accumulate(out.forms, pinczon_bracket_sym(sym[i], sym[j], b));
            const int ki = s.taylor[i].arity(), kj = s.taylor[j].arity();
            auto R = bracket_sym_maps(factorial(ki) * s.taylor[i], factorial(kj) * s.taylor[j]);
            detail::accumulate(out.maps, Rational(ki + kj) * form_of_map(R, b));
        }
    return out;
}

/// {Omega,Omega} = 0 (or {I,I}| = 0) and [Q,Q] = 0, with the two routes cross-checked.
/// Without invariance the forms route is undefined, so that case is reported
/// as a failure of both routes instead of being evaluated.
inline ValidationReport structure_equation(const QuadraticStructure& s) {
    ValidationReport r;
    for (const auto& f : s.forms)
        if (auto w = cyclicity_witness(f)) {
            r.add("Omega cyclic (needed for the bracket)", false, "not cyclic at " + tuple_string(*w), w);
            return r;
        }
    if (is_lie_type(s.flavor)) {
        bool sym = true;
        for (const auto& Q : s.taylor)
            if (!is_symmetric(Q)) {
                sym = false;
                r.add("Taylor coefficients symmetric", false,
                      "Q_" + std::to_string(Q.arity()) + " is not symmetric on V[1] (law not graded-skew)");
                break;
            }
        if (!sym) return r;
    }
    auto sb = self_bracket(s);
    const std::string fname = is_lie_type(s.flavor) ? "{I,I}| = 0" : "{Omega,Omega} = 0";
    const std::string mname = is_lie_type(s.flavor) ? "[Q,Q] = 0 (symmetric coalgebra)" : "[Q,Q] = 0";
    auto report_zero = [&](const std::string& name, const std::map<int, MultilinearForm>& parts) {
        for (const auto& [a, f] : parts)
            if (!f.is_zero()) {
                auto w = detail::first_tuple(f);
                r.add(name, false, "arity " + std::to_string(a) + " component: " + detail::value_at(f, *w), w);
                return;
            }
        r.add(name, true);
    };
    report_zero(fname, sb.forms);
    report_zero(mname, sb.maps);
    bool agree = sb.forms.size() == sb.maps.size();
    for (const auto& [a, f] : sb.forms)
        if (!agree || !sb.maps.count(a) || !(sb.maps.at(a) == f)) agree = false;
    r.add("form and map routes agree", agree);
    return r;
}

struct Classification {
    std::set<std::string> flags;
    bool omega_totally_symmetric = false;
    bool omega_shuffle_vanishing = false;
};

/// Flags of a strict binary law: associative, commutative-sign, skew-sign, jacobi.
inline Classification classify(const QuadraticStructure& s) {
    if (is_homotopy(s.flavor)) throw InvalidInput("classify: strict binary structures only");
    Classification c;
    const auto& q = s.q();
    const auto& Q = s.Q();
    if (bracket_maps(Q, Q).is_zero()) c.flags.insert("associative");
    if (is_symmetric(q)) c.flags.insert("commutative-sign");
    if (is_skew(q)) {
        c.flags.insert("skew-sign");
        if (is_symmetric(Q) && bracket_sym_maps(Q, Q).is_zero()) c.flags.insert("jacobi");
    }
    c.omega_totally_symmetric = is_symmetric(s.structure_form());
    c.omega_shuffle_vanishing = vanishes_on_shuffles(s.structure_form());
    return c;
}

/// Symmetry of a strict law demanded by its flavor: commutative laws must be
/// graded commutative with Omega vanishing on shuffles, Lie laws graded skew
/// with Omega totally symmetric. Associativity and Jacobi are left to structure_equation.
inline ValidationReport flavor_constraints(const QuadraticStructure& s) {
    ValidationReport r;
    if (is_homotopy(s.flavor)) return r;
    if (s.flavor == Flavor::Commutative) {
        r.add("law graded commutative", is_symmetric(s.q()));
        r.add("Omega vanishes on shuffles", vanishes_on_shuffles(s.structure_form()));
    }
    if (s.flavor == Flavor::Lie) {
        r.add("law graded skew-symmetric", is_skew(s.q()));
        r.add("Omega totally symmetric", is_symmetric(s.structure_form()));
    }
    return r;
}

/// Degree, B-quadraticity, flavor constraint and [Q,Q] = 0 across all Taylor arities.
/// Strict flavors are read as their homotopy counterparts.
inline ValidationReport validate_homotopy(const QuadraticStructure& s) {
    ValidationReport r;
    const bool lie = is_lie_type(s.flavor);
    const bool comm = s.flavor == Flavor::Commutative || s.flavor == Flavor::CInfinity;
    bool symmetric_ok = true;
    for (std::size_t i = 0; i < s.taylor.size(); ++i) {
        const auto& Q = s.taylor[i];
        const std::string k = std::to_string(Q.arity());
        r.add("Q_" + k + " has degree 1", Q.degree() == 1, "degree " + std::to_string(Q.degree()));
        auto w = cyclicity_witness(s.forms[i]);
        r.add("Q_" + k + " is B-quadratic", !w, w ? "Omega not cyclic" : "", w);
        if (comm) {
            bool ok = vanishes_on_shuffles(Q);
            r.add("Q_" + k + " vanishes on shuffles", ok);
        }
        if (lie) {
            bool ok = is_symmetric(Q);
            symmetric_ok = symmetric_ok && ok;
            r.add("Q_" + k + " totally symmetric", ok);
        }
    }
    if (lie && !symmetric_ok) return r;
    std::map<int, MultilinearMap> parts;
    for (const auto& Qi : s.taylor)
        for (const auto& Qj : s.taylor)
            detail::accumulate(parts, lie ? bracket_sym_maps(Qi, Qj) : bracket_maps(Qi, Qj));
    for (const auto& [a, R] : parts)
        if (!R.is_zero()) {
            auto w = detail::first_tuple(R);
            r.add("[Q,Q] = 0", false,
                  "arity " + std::to_string(a) + " component nonzero, value " +
                      format_rational(R.coefficients().begin()->second),
                  w);
            return r;
        }
    r.add("[Q,Q] = 0", true);
    return r;
}

}  // namespace pinczon
