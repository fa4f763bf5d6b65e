#include <doctest.h>

#include "oracles.hpp"
#include "voa/errors.hpp"
#include "voa/orbifold.hpp"
#include "voa/remainder.hpp"

using namespace voa;

namespace {

const LevelScalar k = LevelScalar::k();

ActionSpec z2_action() {
  ActionSpec a;
  a.label = "Z2";
  RationalMatrix m(1, 1);
  m(0, 0) = Rational(-1);
  a.finite_elements.push_back(m);
  return a;
}

}  // namespace

TEST_SUITE("orbifold") {
  TEST_CASE("symbols") {
    CHECK(omega_symbol(2, 0).str() == "Omega[0,2]");
    CHECK(j_symbol(4).str() == "J[4]");
    CHECK(Symbol::parse("C[0,1,2]") == Symbol{"C", {0, 1, 2}});
    CHECK(Symbol::parse(omega_symbol(1, 3).str()) == omega_symbol(1, 3));
    CHECK_THROWS_AS(Symbol::parse("Omega[0,"), ParseError);
    CHECK(lift_symbol(QSymbol{QSymbol::Kind::Q, {0, 2}}, {}) == omega_symbol(0, 2));
  }

  TEST_CASE("heisenberg generators") {
    const VertexAlgebra h(abelian(1));
    const State a = h.generator(0);
    CHECK(omega(h, 0, 0) == h.wick(a, a));
    CHECK(omega(h, 1, 1) == h.wick(h.derivative(a), h.derivative(a)));
    CHECK(omega(h, 1, 1) == h.parse_state("a1(-2)a1(-2)"));
    CHECK(omega(h, 0, 2) == omega(h, 2, 0));
    CHECK(h.derivative(omega(h, 0, 0)) == LevelScalar(2) * omega(h, 0, 1));
    CHECK(j_gen(h, 2) == omega(h, 0, 2));

    const VertexAlgebra h2(abelian(2));
    CHECK(omega(h2, 0, 1) == h2.wick(h2.generator(0), h2.derivative(h2.generator(0))) +
                                 h2.wick(h2.generator(1), h2.derivative(h2.generator(1))));

    const auto dict = omega_dictionary(h, 4);
    // (a,b) with a <= b and a + b + 2 <= 4
    CHECK(dict.size() == 4);
    CHECK(dict.at(omega_symbol(0, 2)).weight == 4);
    CHECK(dict.at(omega_symbol(0, 2)).degree == 2);
    CHECK_THROWS_AS(dict.at(j_symbol(6)), UnknownSymbol);
  }

  TEST_CASE("dictionary validation") {
    const VertexAlgebra h(abelian(1));
    GeneratorDictionary d;
    CHECK_THROWS_AS(d.add(Symbol{"X", {}}, omega(h, 0, 0), 2, 3), ValidationError);
    CHECK_THROWS_AS(d.add(Symbol{"X", {}}, omega(h, 0, 0), 3, 2), ValidationError);
    CHECK_THROWS_AS(d.add(Symbol{"X", {}}, omega(h, 0, 0) + omega(h, 0, 1)), ValidationError);
    d.add(Symbol{"X", {}}, omega(h, 0, 0));
    CHECK(d.at(Symbol{"X", {}}).weight == 2);
  }

  TEST_CASE("formal normally ordered polynomials") {
    const VertexAlgebra h(abelian(1));
    const auto dict = omega_dictionary(h, 6);
    const FormalNOP p = FormalNOP::symbol(omega_symbol(0, 0), 2) - FormalNOP::symbol(omega_symbol(0, 2));
    CHECK(p.degree(dict) == 2);
    CHECK(evaluate_nop(h, p, dict) == h.derivative(omega(h, 0, 0), 2) - omega(h, 0, 2));
    const FormalNOP sq = FormalNOP::monomial({{omega_symbol(0, 0), 0}, {omega_symbol(0, 0), 0}});
    CHECK(sq.degree(dict) == 4);
    CHECK(evaluate_nop(h, sq, dict) == h.wick(omega(h, 0, 0), omega(h, 0, 0)));
    CHECK((sq + p).degree_part(2, dict) == p);
    CHECK(FormalNOP().str() == "0");
    CHECK(FormalNOP::symbol(omega_symbol(0, 0), 1).str() == "(1) * :D^1 Omega[0,0]:");
    const auto j = to_json(sq);
    CHECK(j["terms"].size() == 1);
    CHECK_THROWS_AS(evaluate_nop(h, FormalNOP::symbol(j_symbol(8)), dict), UnknownSymbol);
    CHECK(nop_monomials(dict, 4, 2, 2).size() == 4);
    CHECK(nop_monomials(dict, 4, 4, 4).size() == 1);
  }

  TEST_CASE("expressing states in generators") {
    const VertexAlgebra h(abelian(1));
    GeneratorDictionary dict;
    dict.add(omega_symbol(0, 0), omega(h, 0, 0));
    dict.add(omega_symbol(0, 2), omega(h, 0, 2));
    // d^2 Omega00 = 2 Omega02 + 2 Omega11
    const auto e = express_in_generators(h, omega(h, 1, 1), dict);
    REQUIRE(e);
    CHECK(evaluate_nop(h, *e, dict) == omega(h, 1, 1));
    CHECK(*e == FormalNOP(LevelScalar(Rational(1, 2)) * FormalNOP::symbol(omega_symbol(0, 0), 2) -
                          FormalNOP::symbol(omega_symbol(0, 2))));

    const auto only_j0 = j_dictionary(h, {0});
    CHECK(!express_in_generators(h, omega(h, 1, 1), only_j0));
    CHECK(express_in_generators(h, h.derivative(omega(h, 0, 0)), only_j0));
  }

  TEST_CASE("invariant subspaces match classical dimensions") {
    const VertexAlgebra h(abelian(1));
    for (int w = 0; w <= 6; ++w) CHECK(invariant_subspace(h, z2_action(), w).size() == weyl_graded_dimension(1, w));

    const VertexAlgebra h2(abelian(2));
    for (int w = 1; w <= 5; ++w)
      CHECK(invariant_subspace(h2, orthogonal_action(2), w).size() ==
            oracle::classical_invariant_dimension(orthogonal_action(2), 2, w));

    const VertexAlgebra s(sl2_spec());
    const ActionSpec ad = adjoint_action(s.spec());
    for (int w = 1; w <= 4; ++w)
      CHECK(invariant_subspace(s, ad, w).size() == oracle::classical_invariant_dimension(ad, 3, w));
  }

  TEST_CASE("invariants are closed under circle products") {
    const VertexAlgebra s(sl2_spec());
    const ActionSpec ad = adjoint_action(s.spec());
    const auto w2 = invariant_subspace(s, ad, 2);
    const auto w3 = invariant_subspace(s, ad, 3);
    REQUIRE(w2.size() == 1);
    for (const auto& a : w2)
      for (const auto& b : w3)
        for (int n = -2; n <= 4; ++n) CHECK(is_invariant(s, ad, s.circle_product(a, n, b)));
    for (const auto& b : w3) CHECK(!b.is_zero());
    CHECK(!is_invariant(s, ad, s.generator(kSl2X)));
  }

  TEST_CASE("sl2 generators") {
    const VertexAlgebra s(sl2_spec());
    const ActionSpec ad = adjoint_action(s.spec());
    CHECK(is_invariant(s, ad, sl2_tilde_q(s, 0, 1)));
    CHECK(is_invariant(s, ad, sl2_tilde_c(s, 0, 1, 2)));
    CHECK(s.leading_symbol(sl2_tilde_q(s, 0, 0)) == sl2_q(0, 0));
    CHECK(s.leading_symbol(sl2_tilde_q(s, 1, 2)) == Rational(2) * sl2_q(1, 2));
    CHECK(s.leading_symbol(sl2_tilde_c(s, 0, 1, 2)) == Rational(2) * sl2_c(0, 1, 2));
    CHECK_THROWS_AS(sl2_tilde_c(s, 1, 0, 2), IndexError);
    const auto dict = sl2_dictionary(s, 6);
    CHECK(dict.contains(Symbol{"C", {0, 1, 2}}));
    CHECK(dict.contains(Symbol{"Q", {0, 4}}));
    CHECK(!dict.contains(Symbol{"Q", {0, 5}}));
  }

  TEST_CASE("quantum correction of the rank-one determinant") {
    const VertexAlgebra h(abelian(1));
    const auto dict = omega_dictionary(h, 6);
    const QSymbolPoly rel = det_relation(1, {0, 1}, {0, 1});
    const FormalNOP q = quantum_correction(h, rel, dict);
    CHECK(evaluate_nop(h, q, dict).is_zero());
    CHECK(q.degree(dict) == 4);
    CHECK(q.degree_part(4, dict) ==
          FormalNOP::monomial({{omega_symbol(0, 0), 0}, {omega_symbol(1, 1), 0}}) -
              FormalNOP::monomial({{omega_symbol(0, 1), 0}, {omega_symbol(0, 1), 0}}));
    CHECK(!q.degree_part(2, dict).is_zero());
    CHECK_THROWS_AS(quantum_correction(h, QSymbolPoly::Q(0, 0), dict), ValidationError);
  }

  TEST_CASE("projection onto J") {
    // Omega[a,b] + Omega[a+1,b-1] is a derivative, so Omega[a,b] = (-1)^a J^m.
    for (int m = 0; m <= 10; m += 2)
      for (int a = 0; a <= m; ++a) CHECK(pr_omega(a, m - a) == Rational(a % 2 == 0 ? 1 : -1));

    const FormalNOP p = FormalNOP::symbol(omega_symbol(1, 3)) + LevelScalar(3) * FormalNOP::symbol(j_symbol(4)) +
                        FormalNOP::symbol(omega_symbol(0, 3), 1);
    CHECK(pr_coefficient(p, 4) == LevelScalar(2));
    CHECK_THROWS_AS(pr_coefficient(p, 3), ParityError);
    CHECK_THROWS_AS(pr_coefficient(FormalNOP::symbol(omega_symbol(0, 0)), 4), ValidationError);
  }

  TEST_CASE("direct remainder agrees with the closed form") {
    CHECK(remainder_direct(1, {0, 1}, {0, 1}) == Rational(5, 4));
    for (const auto& [I, J] : std::vector<std::pair<std::vector<int>, std::vector<int>>>{
             {{0, 1}, {0, 3}}, {{0, 2}, {0, 2}}, {{1, 2}, {1, 2}}, {{0, 1}, {1, 2}}})
      CHECK(remainder_direct(1, I, J) == r1_closed_form(I, J));
    CHECK_THROWS_AS(remainder_direct(1, {0, 1}, {0, 2}), ParityError);
    CHECK_THROWS_AS(remainder_direct(1, {0, 1, 2}, {0, 1}), LengthMismatch);
    CHECK_THROWS_AS(remainder_direct(1, {1, 0}, {0, 1}), IndexError);
    CHECK_THROWS_AS(remainder_direct(1, {2, 3}, {2, 3}, 12), ResourceLimit);
  }

  TEST_CASE("decoupling") {
    const VertexAlgebra h(abelian(1));
    const ActionSpec z2 = z2_action();
    const auto jd = j_dictionary(h, {0, 2});
    const DecouplingResult r = decouple(h, z2, jd, j_gen(h, 4));
    REQUIRE(r.relation);
    CHECK(evaluate_nop(h, *r.relation, jd) == j_gen(h, 4));
    CHECK(r.excluded_levels == std::vector<Rational>{Rational(0)});
    CHECK(r.irrational_factors.empty());

    CHECK(!decouple(h, z2, j_dictionary(h, {0}), j_gen(h, 2)).relation);
    CHECK_THROWS_AS(decouple(h, z2, jd, h.generator(0)), ValidationError);
    SearchBounds tight;
    tight.max_weight = 4;
    CHECK_THROWS_AS(decouple(h, z2, jd, j_gen(h, 4), tight), ResourceLimit);

    // U = Q~00 o_1 Q~00 is a multiple of Q~00 with a level-dependent factor.
    const VertexAlgebra s(sl2_spec());
    const ActionSpec ad = adjoint_action(s.spec());
    const State q00 = sl2_tilde_q(s, 0, 0);
    GeneratorDictionary ud;
    ud.add(Symbol{"U", {}}, s.circle_product(q00, 1, q00));
    const DecouplingResult u = decouple(s, ad, ud, q00);
    REQUIRE(u.relation);
    CHECK(evaluate_nop(s, *u.relation, ud) == q00);
    CHECK(u.excluded_levels == std::vector<Rational>{Rational(-2)});
    const auto j = to_json(u);
    CHECK(j["excluded_levels"][0] == "-2");
    CHECK(!j.contains("irrational_factors"));
  }
}

TEST_SUITE("orbifold") {
  TEST_CASE("projection is well defined on vanishing combinations") {
    const VertexAlgebra h(abelian(1));
    const auto dict = omega_dictionary(h, 8);
    // d Omega[a,b] - Omega[a+1,b] - Omega[a,b+1] is the zero state.
    for (int m = 2; m <= 6; m += 2)
      for (int a = 0; a < m; ++a) {
        const int b = m - 1 - a;
        const FormalNOP z = FormalNOP::symbol(omega_symbol(a, b), 1) - FormalNOP::symbol(omega_symbol(a + 1, b)) -
                            FormalNOP::symbol(omega_symbol(a, b + 1));
        CHECK(evaluate_nop(h, z, dict).is_zero());
        CHECK(pr_coefficient(z, m).is_zero());
        // A sign independent of a would give -2 here.
        Rational constant;
        for (const auto& [mono, c] : z.terms())
          if (mono.factors[0].derivs == 0) constant += c.constant();
        CHECK(constant == Rational(-2));
      }
  }

  TEST_CASE("degree-two parts of the rank-one corrections") {
    const VertexAlgebra h(abelian(1));
    int cases = 0;
    for (int i0 = 0; i0 < 4; ++i0)
      for (int i1 = i0 + 1; i1 < 4; ++i1)
        for (int j0 = 0; j0 < 4; ++j0)
          for (int j1 = j0 + 1; j1 < 4; ++j1) {
            const int m = 2 + i0 + i1 + j0 + j1;
            if (m % 2) continue;
            ++cases;
            const std::vector<int> I{i0, i1}, J{j0, j1};
            const auto dict = omega_dictionary(h, m + 2);
            const FormalNOP low = quantum_correction(h, det_relation(1, I, J), dict).degree_part(2, dict);
            CHECK(evaluate_nop(h, low, dict).degree() <= 2);
            CHECK(pr_coefficient(low, m).evaluate_at(Rational(1)) == r1_closed_form(I, J));
          }
    CHECK(cases == 20);
  }
}
