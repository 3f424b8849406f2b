#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace pinczon;
using namespace oracle;

namespace {

QuadraticStructure one_dim(Flavor f) {
    auto b = make_basis(GradedBasis::with_degrees({0}));
    UnshiftedMap q(b, 2, 0);
    q.add({0, 0}, 0, 1);
    return load_structure(b, Matrix{{1}}, f, {q});
}

}  // namespace

TEST_CASE("one-dimensional idempotent algebra is quadratic", "[load]") {
    for (auto f : {Flavor::Associative, Flavor::Commutative}) {
        auto s = one_dim(f);
        CHECK(check_invariance(s).passed());
        CHECK(structure_equation(s).passed());
        CHECK(flavor_constraints(s).passed());
        CHECK(s.structure_form().nnz() == 1);
    }
}

TEST_CASE("abelian Lie algebra has zero structure form", "[load]") {
    auto s = fx::abelian(3);
    CHECK(s.structure_form().is_zero());
    CHECK(structure_equation(s).passed());
    CHECK(check_invariance(s).passed());
}

TEST_CASE("load_structure rejects bad input", "[load]") {
    auto b = make_basis(GradedBasis::with_degrees({0, 0}));
    auto g = make_basis(GradedBasis::with_degrees({0, 1}));
    UnshiftedMap qg(g, 2, 0);
    CHECK_THROWS_AS(qg.add({0, 0}, 1, 1), InvalidInput);  // inhomogeneous
    CHECK_THROWS_AS(load_structure(b, Matrix{{1, 1}, {1, 1}}, Flavor::Lie, {UnshiftedMap(b, 2, 0)}), DegeneratePairing);
    CHECK_THROWS_AS(load_structure(b, Matrix{{1, 1}, {0, 1}}, Flavor::Lie, {UnshiftedMap(b, 2, 0)}), InvalidInput);
    CHECK_THROWS_AS(load_structure(b, identity_matrix(2), Flavor::Lie, {}), InvalidInput);
}

TEST_CASE("invariance of sl(2) and of 2x2 matrices", "[invariance]") {
    for (const auto& s : {fx::sl2_killing(), fx::mat2()}) {
        CHECK(invariant_by_triples(s));
        CHECK(check_invariance(s).passed());
    }
}

TEST_CASE("sl(2) with the identity pairing is not invariant", "[invariance]") {
    auto b = fx::sl2_basis();
    auto s = load_structure(b, identity_matrix(3), Flavor::Lie, {fx::sl2_law(b)});
    CHECK_FALSE(invariant_by_triples(s));
    auto r = check_invariance(s);
    REQUIRE_FALSE(r.passed());
    const auto& c = r.checks.front();
    REQUIRE(c.witness);
    // the witness tuple reproduces a nonzero rotation defect
    auto diff = permute_form(s.structure_form(), Permutation::rotation(3)) - s.structure_form();
    CHECK(sgn(diff.at(*c.witness)) != 0);
    CHECK_FALSE(structure_equation(s).passed());
}

TEST_CASE("structure equations of sl(2), matrices, diagonal algebras", "[equation]") {
    CHECK(structure_equation(fx::sl2_killing()).passed());
    CHECK(structure_equation(fx::mat2()).passed());
    CHECK(structure_equation(fx::diagonal(3)).passed());
    auto sb = self_bracket(fx::sl2_killing());
    for (const auto& [a, f] : sb.forms) CHECK(f.is_zero());
}

TEST_CASE("a non-associative perturbation fails with a witness", "[equation]") {
    auto s = associator_defect();
    REQUIRE(check_invariance(s).passed());
    bool assoc = true;
    for (const auto& t : all_tuples(2, 3)) assoc = assoc && is_zero(associator(s.q(), t[0], t[1], t[2]));
    CHECK_FALSE(assoc);

    auto r = structure_equation(s);
    CHECK_FALSE(r.passed());
    const auto* c = r.find("{Omega,Omega} = 0");
    REQUIRE(c);
    REQUIRE(c->witness);
    CHECK(r.find("form and map routes agree")->passed);
    // {Omega,Omega}(x,y,z,w) = +-2 b((xy)z - x(yz), w) on this even algebra
    auto sb = self_bracket(s);
    const auto& f = sb.forms.at(4);
    for (const auto& t : all_tuples(2, 4))
        CHECK(abs(f.at(t)) == abs(2 * pair(s.pairing.matrix(), associator(s.q(), t[0], t[1], t[2]), t[3])));
    const auto& w = *c->witness;
    CHECK(sgn(pair(s.pairing.matrix(), associator(s.q(), w[0], w[1], w[2]), w[3])) != 0);
}

TEST_CASE("a non-Jacobi perturbation fails with a witness", "[equation]") {
    auto s = jacobi_defect();
    REQUIRE(check_invariance(s).passed());
    REQUIRE(flavor_constraints(s).passed());
    CHECK_FALSE(is_zero(jacobiator(s.q(), 0, 1, 3)));
    auto r = structure_equation(s);
    CHECK_FALSE(r.passed());
    const auto* c = r.find("{I,I}| = 0");
    REQUIRE(c);
    REQUIRE(c->witness);
    CHECK(r.find("form and map routes agree")->passed);
    const auto& w = *c->witness;
    CHECK(sgn(pair(s.pairing.matrix(), jacobiator(s.q(), w[0], w[1], w[2]), w[3])) != 0);
}

TEST_CASE("form and map routes agree on random B-quadratic structures", "[equation]") {
    fx::Rng rng(3);
    for (int t = 0; t < 30; ++t) {
        auto sp = fx::random_space(rng, 3);
        auto Q = fx::random_quadratic(sp.pairing, 2, rng);
        auto q = unshift_map(Q);
        if (q.degree() != 0) continue;
        for (auto f : {Flavor::Associative, Flavor::AInfinity}) {
            auto s = load_structure(sp.basis, sp.pairing.matrix(), f, {q});
            auto sb = self_bracket(s);
            for (const auto& [a, g] : sb.forms) CHECK(sb.maps.at(a) == g);
        }
    }
}

TEST_CASE("classify flags", "[classify]") {
    auto sl2 = classify(fx::sl2_killing());
    CHECK(sl2.flags == std::set<std::string>{"skew-sign", "jacobi"});
    CHECK(sl2.omega_totally_symmetric);
    auto m = classify(fx::mat2());
    CHECK(m.flags == std::set<std::string>{"associative"});
    auto d = classify(fx::diagonal(3));
    CHECK(d.flags == std::set<std::string>{"associative", "commutative-sign"});
    CHECK(d.omega_shuffle_vanishing);
    CHECK_FALSE(classify(jacobi_defect()).flags.count("jacobi"));
    CHECK_FALSE(classify(associator_defect()).flags.count("associative"));
}

TEST_CASE("classify oracles: symmetry of Omega by explicit permutations", "[classify]") {
    auto s = fx::sl2_killing();
    const auto& W = s.structure_form();
    // all shifted degrees are odd, so the Koszul sign of sigma is sign(sigma)
    for (const auto& x : all_tuples(3, 3))
        for (const auto& sigma : Permutation::all(3)) {
            Tuple y(3);
            for (int p = 0; p < 3; ++p) y[sigma(p)] = x[p];
            CHECK(W.at(y) == sigma.sign() * W.at(x));
        }
    auto d = fx::diagonal(3);
    const auto& D = d.structure_form();
    for (const auto& x : all_tuples(3, 3)) CHECK(D.at(x) - D.at({x[1], x[0], x[2]}) == 0);
}

TEST_CASE("flavor constraints catch a non-commutative law tagged commutative", "[classify]") {
    auto m = fx::mat2();
    auto s = load_structure(m.basis, m.pairing.matrix(), Flavor::Commutative, {m.q()});
    CHECK_FALSE(flavor_constraints(s).passed());
    CHECK(flavor_constraints(fx::diagonal(2)).passed());
}

TEST_CASE("strict structures re-tagged as homotopy keep their verdict", "[homotopy]") {
    auto m = fx::mat2();
    auto a = load_structure(m.basis, m.pairing.matrix(), Flavor::AInfinity, {m.q()});
    CHECK(validate_homotopy(a).passed() == structure_equation(m).passed());
    auto d = associator_defect();
    auto ad = load_structure(d.basis, d.pairing.matrix(), Flavor::AInfinity, {d.q()});
    CHECK_FALSE(validate_homotopy(ad).passed());
    CHECK(validate_homotopy(ad).passed() == structure_equation(d).passed());
    auto l = fx::sl2_killing();
    auto ll = load_structure(l.basis, l.pairing.matrix(), Flavor::LInfinity, {l.q()});
    CHECK(validate_homotopy(ll).passed());
    auto c = fx::diagonal(2);
    auto cc = load_structure(c.basis, c.pairing.matrix(), Flavor::CInfinity, {c.q()});
    CHECK(validate_homotopy(cc).passed());
}

TEST_CASE("an L-infinity structure with a ternary bracket", "[homotopy]") {
    // x (0), y (1), x* (0), y* (-1); b pairs x with x* and y with y*.
    auto b = make_basis(GradedBasis({"x", "y", "xs", "ys"}, {0, 1, 0, -1}));
    Matrix pairing = zero_matrix(4, 4);
    pairing[0][2] = pairing[2][0] = 1;
    pairing[1][3] = 1;
    pairing[3][1] = -1;
    BilinearPairing p(b, pairing);
    MultilinearForm w(b, 4, 3);
    w.add({0, 0, 0, 1}, 1);
    auto omega = symmetrize_form(w);
    auto Q3 = map_of_form(omega, p);
    REQUIRE(Q3.degree() == 1);
    auto s = load_structure(b, pairing, Flavor::LInfinity, {UnshiftedMap(b, 2, 0), unshift_map(Q3)});
    auto r = validate_homotopy(s);
    CHECK(r.passed());
    CHECK(is_symmetric(s.taylor[1]));
    // oracle: every homogeneous piece of [Q,Q] expanded by arity vanishes
    CHECK(bracket_sym_maps(s.taylor[1], s.taylor[1]).is_zero());
    CHECK(bracket_sym_maps(s.taylor[0], s.taylor[1]).is_zero());
}

TEST_CASE("a failing binary bracket reports the arity-3 component", "[homotopy]") {
    auto d = jacobi_defect(Flavor::LInfinity);
    auto r = validate_homotopy(d);
    CHECK_FALSE(r.passed());
    const auto* c = r.find("[Q,Q] = 0");
    REQUIRE(c);
    REQUIRE(c->witness);
    CHECK(c->witness->size() == 4);  // three inputs and an output
    const auto& w = *c->witness;
    CHECK(sgn(jacobiator(d.q(), w[0], w[1], w[2])[w[3]]) != 0);
}
