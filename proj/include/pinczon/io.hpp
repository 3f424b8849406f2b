#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "cohomology.hpp"

namespace pinczon::io {

using Json = nlohmann::ordered_json;

/// Malformed file content (maps to exit code 2 in the CLI).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline long integer(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + ": expected an integer");
    return j.get<long>();
}

inline Rational rational(const Json& j, const char* what) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw ParseError(std::string(what) + ": expected a rational string");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const InvalidInput& e) {
        throw ParseError(e.what());
    }
}

/// 1-based index in [1, n] converted to 0-based.
inline int index(const Json& j, std::size_t n, const char* what) {
    long v = integer(j, what);
    if (v < 1 || v > static_cast<long>(n)) throw ParseError(std::string(what) + ": index out of range");
    return static_cast<int>(v - 1);
}

inline Tuple indices(const Json& j, std::size_t n, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
    Tuple t;
    for (const auto& e : j) t.push_back(index(e, n, what));
    return t;
}

inline Json one_based(const Tuple& t) {
    Json a = Json::array();
    for (int i : t) a.push_back(i + 1);
    return a;
}

inline BasisPtr basis(const Json& j, const std::string& prefix) {
    long dim = integer(field(j, "dim"), "dim");
    const auto& dj = field(j, "degrees");
    if (!dj.is_array() || static_cast<long>(dj.size()) != dim) throw ParseError("degrees: length differs from dim");
    std::vector<int> degs;
    for (const auto& d : dj) degs.push_back(static_cast<int>(integer(d, "degrees")));
    if (!j.contains("names")) return make_basis(GradedBasis::with_degrees(std::move(degs), prefix));
    const auto& nj = j.at("names");
    if (!nj.is_array() || static_cast<long>(nj.size()) != dim) throw ParseError("names: length differs from dim");
    std::vector<std::string> names;
    for (const auto& s : nj) {
        if (!s.is_string()) throw ParseError("names: expected strings");
        names.push_back(s.get<std::string>());
    }
    try {
        return make_basis(GradedBasis(std::move(names), std::move(degs)));
    } catch (const InvalidInput& e) {
        throw ParseError(e.what());
    }
}

inline void put_basis(Json& j, const GradedBasis& b, const std::string& prefix) {
    j["dim"] = b.size();
    j["degrees"] = b.degrees();
    if (!(b == GradedBasis::with_degrees(b.degrees(), prefix))) j["names"] = b.names();
}

inline Json structure_records(const UnshiftedMap& q) {
    Json a = Json::array();
    for (const auto& [key, v] : q.coefficients())
        a.push_back(Json{{"inputs", one_based(key.first)}, {"output", key.second + 1}, {"coeff", format_rational(v)}});
    return a;
}

/// Reads {inputs, output, coeff} records; the arity comes from the first record unless given.
inline UnshiftedMap read_records(const Json& recs, const BasisPtr& b, int arity, int degree) {
    if (!recs.is_array()) throw ParseError("structure: expected an array of records");
    UnshiftedMap q(b, arity, degree);
    for (const auto& r : recs) {
        Tuple ins = indices(field(r, "inputs"), b->size(), "inputs");
        if (static_cast<int>(ins.size()) != arity) throw ParseError("structure: records of mixed arity");
        int out = index(field(r, "output"), b->size(), "output");
        q.add(ins, out, rational(field(r, "coeff"), "coeff"));
    }
    return q;
}

}  // namespace detail

inline Json parse_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

inline Json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ------------------------------------------------------------ algebras

struct AlgebraFile {
    std::string name;
    QuadraticStructure structure;
};

/// Pairing problems are left to the caller: `b` is returned raw alongside.
struct RawAlgebra {
    std::string name;
    Flavor flavor;
    BasisPtr basis;
    Matrix b;
    std::vector<UnshiftedMap> constants;
};

inline RawAlgebra parse_algebra_raw(const Json& j) {
    RawAlgebra a;
    a.name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
    const auto& kind = detail::field(j, "kind");
    if (!kind.is_string()) throw ParseError("kind: expected a string");
    try {
        a.flavor = parse_flavor(kind.get<std::string>());
    } catch (const InvalidInput& e) {
        throw ParseError(e.what());
    }
    a.basis = detail::basis(j, "e");
    const std::size_t n = a.basis->size();
    const auto& bj = detail::field(j, "b");
    if (!bj.is_array() || bj.size() != n) throw ParseError("b: expected a dim x dim matrix");
    for (const auto& row : bj) {
        if (!row.is_array() || row.size() != n) throw ParseError("b: expected a dim x dim matrix");
        std::vector<Rational> r;
        for (const auto& v : row) r.push_back(detail::rational(v, "b"));
        a.b.push_back(std::move(r));
    }
    const auto& sj = detail::field(j, "structure");
    if (!sj.is_array()) throw ParseError("structure: expected an array");
    if (!is_homotopy(a.flavor)) {
        a.constants.push_back(detail::read_records(sj, a.basis, 2, 0));
    } else {
        for (const auto& part : sj) {
            if (!part.is_array()) throw ParseError("structure: homotopy kinds need one record list per arity");
            if (part.empty()) continue;
            const auto& first = detail::field(part[0], "inputs");
            if (!first.is_array()) throw ParseError("inputs: expected an array");
            const int k = static_cast<int>(first.size());
            a.constants.push_back(detail::read_records(part, a.basis, k, 2 - k));
        }
    }
    return a;
}

inline AlgebraFile parse_algebra(const Json& j) {
    auto raw = parse_algebra_raw(j);
    return {raw.name, load_structure(raw.basis, raw.b, raw.flavor, raw.constants)};
}

inline Json algebra_json(const std::string& name, const QuadraticStructure& s) {
    Json j;
    j["name"] = name;
    j["kind"] = flavor_name(s.flavor);
    detail::put_basis(j, *s.basis, "e");
    Json b = Json::array();
    for (const auto& row : s.pairing.matrix()) {
        Json r = Json::array();
        for (const auto& v : row) r.push_back(format_rational(v));
        b.push_back(r);
    }
    j["b"] = b;
    if (!is_homotopy(s.flavor)) {
        j["structure"] = detail::structure_records(s.q());
    } else {
        Json parts = Json::array();
        std::vector<const UnshiftedMap*> sorted;
        for (const auto& q : s.constants) sorted.push_back(&q);
        std::sort(sorted.begin(), sorted.end(), [](auto* x, auto* y) { return x->arity() < y->arity(); });
        for (const auto* q : sorted) parts.push_back(detail::structure_records(*q));
        j["structure"] = parts;
    }
    return j;
}

// ------------------------------------------------------------ modules

inline ModuleData parse_module(const Json& j, const QuadraticStructure& s) {
    ModuleData m;
    m.basis = detail::basis(j, "m");
    const std::size_t n = s.dim(), dm = m.basis->size();
    auto read = [&](const Json& recs, bool left) {
        if (!recs.is_array()) throw ParseError("action: expected an array");
        for (const auto& r : recs) {
            int v = detail::index(detail::field(r, "v"), n, "v");
            int a = detail::index(detail::field(r, "m"), dm, "m");
            int o = detail::index(detail::field(r, "out"), dm, "out");
            Rational c = detail::rational(detail::field(r, "coeff"), "coeff");
            if (left) m.add_left(v, a, o, c);
            else m.add_right(a, v, o, c);
        }
    };
    read(detail::field(j, "left_action"), true);
    if (j.contains("right_action")) {
        read(j.at("right_action"), false);
        if (!m.right) m.right.emplace();
    }
    return m;
}

inline Json module_json(const ModuleData& m) {
    Json j;
    detail::put_basis(j, *m.basis, "m");
    auto recs = [](const Action& act, bool left) {
        Json a = Json::array();
        for (const auto& [key, v] : act)
            for (const auto& [o, c] : v)
                a.push_back(Json{{"v", (left ? key.first : key.second) + 1},
                                 {"m", (left ? key.second : key.first) + 1},
                                 {"out", o + 1},
                                 {"coeff", format_rational(c)}});
        return a;
    };
    j["left_action"] = recs(m.left, true);
    if (m.right) j["right_action"] = recs(*m.right, false);
    return j;
}

// ------------------------------------------------------------ cochains

inline Cochain parse_cochain(const Json& j, const QuadraticStructure& s, const ModuleData& m, CochainFlavor f) {
    const int k = static_cast<int>(detail::integer(detail::field(j, "arity"), "arity"));
    if (k < 0) throw ParseError("arity: must be >= 0");
    const auto& ej = detail::field(j, "entries");
    if (!ej.is_array()) throw ParseError("entries: expected an array");
    struct Entry {
        Tuple ins;
        int out;
        Rational v;
    };
    std::vector<Entry> es;
    for (const auto& e : ej) {
        Tuple ins = detail::indices(detail::field(e, "inputs"), s.dim(), "inputs");
        if (static_cast<int>(ins.size()) != k) throw ParseError("entries: input length differs from arity");
        es.push_back({ins, detail::index(detail::field(e, "out"), m.dim(), "out"),
                      detail::rational(detail::field(e, "coeff"), "coeff")});
    }
    int degree = j.contains("degree") ? static_cast<int>(detail::integer(j["degree"], "degree")) : 0;
    if (!j.contains("degree") && !es.empty()) {
        long sum = 0;
        for (int i : es[0].ins) sum += s.basis->degree(i);
        degree = m.basis->degree(es[0].out) - static_cast<int>(sum);
    }
    auto c = make_cochain(s, m, k, degree, f);
    for (const auto& e : es) c.add(e.ins, e.out, e.v);
    return c;
}

inline Json cochain_json(const Cochain& c) {
    Json j;
    j["arity"] = c.arity();
    j["degree"] = c.degree();
    j["flavor"] = cochain_flavor_name(c.flavor());
    Json e = Json::array();
    for (const auto& [key, v] : c.entries())
        e.push_back(Json{{"inputs", detail::one_based(key.first)}, {"out", key.second + 1}, {"coeff", format_rational(v)}});
    j["entries"] = e;
    return j;
}

// ------------------------------------------------------------ forms

/// A form file carries its own basis degrees; `expected` (if given) must match them.
inline MultilinearForm parse_form(const Json& j, const BasisPtr& expected = nullptr) {
    auto b = detail::basis(j, "e");
    if (expected) {
        if (b->degrees() != expected->degrees()) throw ParseError("form: basis degrees differ from the algebra");
        b = expected;
    }
    const int k = static_cast<int>(detail::integer(detail::field(j, "arity"), "arity"));
    const int d = static_cast<int>(detail::integer(detail::field(j, "degree"), "degree"));
    if (k < 0) throw ParseError("arity: must be >= 0");
    MultilinearForm f(b, k, d);
    const auto& ej = detail::field(j, "entries");
    if (!ej.is_array()) throw ParseError("entries: expected an array");
    for (const auto& e : ej) {
        Tuple t = detail::indices(detail::field(e, "inputs"), b->size(), "inputs");
        if (static_cast<int>(t.size()) != k) throw ParseError("entries: input length differs from arity");
        f.add(t, detail::rational(detail::field(e, "coeff"), "coeff"));
    }
    return f;
}

inline Json form_json(const MultilinearForm& f) {
    Json j;
    detail::put_basis(j, *f.basis(), "e");
    j["arity"] = f.arity();
    j["degree"] = f.degree();
    Json e = Json::array();
    for (const auto& [t, v] : f.coefficients())
        e.push_back(Json{{"inputs", detail::one_based(t)}, {"coeff", format_rational(v)}});
    j["entries"] = e;
    return j;
}

}  // namespace pinczon::io
