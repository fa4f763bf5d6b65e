#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "voa/classical.hpp"
#include "voa/errors.hpp"

using namespace voa;

namespace {

ClassicalPoly x(int gen, int level) { return ClassicalPoly::variable(gen, level); }

std::size_t even_length_partitions(int w, int max_part, int parity) {
  if (w == 0) return parity == 0 ? 1 : 0;
  std::size_t total = 0;
  for (int p = std::min(w, max_part); p >= 1; --p) total += even_length_partitions(w - p, p, 1 - parity);
  return total;
}

}  // namespace

TEST_SUITE("classical") {
  TEST_CASE("weyl and sl2 generators") {
    CHECK(weyl_q(1, 0, 0) == x(0, 0) * x(0, 0));
    CHECK(weyl_q(2, 0, 1) == x(0, 0) * x(0, 1) + x(1, 0) * x(1, 1));
    CHECK(weyl_q(2, 1, 0) == weyl_q(2, 0, 1));
    CHECK(weyl_q(3, 2, 2).weight() == 6);

    const Rational two(2);
    CHECK(sl2_q(0, 0) == x(kSl2H, 0) * x(kSl2H, 0) + Rational(4) * (x(kSl2X, 0) * x(kSl2Y, 0)));
    CHECK(sl2_q(0, 1) == x(kSl2H, 0) * x(kSl2H, 1) + two * (x(kSl2X, 0) * x(kSl2Y, 1)) + two * (x(kSl2X, 1) * x(kSl2Y, 0)));
    CHECK(sl2_c(0, 1, 2).terms().size() == 6);
    CHECK(sl2_c(0, 1, 2).degree() == 3);
    CHECK(sl2_c(0, 1, 2).weight() == 6);
    CHECK(sl2_c(0, 0, 1).is_zero());
    CHECK(sl2_c(1, 0, 2) == Rational(-1) * sl2_c(0, 1, 2));
  }

  TEST_CASE("symbol ring") {
    CHECK(QSymbolPoly::Q(2, 1) == QSymbolPoly::Q(1, 2));
    CHECK(QSymbolPoly::C(2, 1, 0) == Rational(-1) * QSymbolPoly::C(0, 1, 2));
    CHECK(QSymbolPoly::C(0, 2, 0).is_zero());
    CHECK(QSymbolPoly::Q(0, 1).str() == "Q[0,1]");
    CHECK(symbol_derivative(QSymbolPoly::Q(0, 0)) == Rational(2) * QSymbolPoly::Q(0, 1));
    // d C_{012} = C_{112} + C_{022} + C_{013} = C_{013}
    CHECK(symbol_derivative(QSymbolPoly::C(0, 1, 2)) == QSymbolPoly::C(0, 1, 3));
    CHECK_THROWS_AS(QSymbolPoly::Q(-1, 0), IndexError);
  }

  TEST_CASE("determinantal relations") {
    const QSymbolPoly d = det_relation(1, {0, 1}, {0, 1});
    CHECK(d == QSymbolPoly::Q(0, 0) * QSymbolPoly::Q(1, 1) - QSymbolPoly::Q(0, 1) * QSymbolPoly::Q(0, 1));
    CHECK(substitute(d, 1).is_zero());
    CHECK(!substitute(d, 2).is_zero());
    CHECK(substitute(det_relation(2, {0, 1, 2}, {0, 1, 3}), 2).is_zero());
    CHECK(substitute(det_relation(2, {0, 1, 2}, {1, 2, 4}), 2).is_zero());
    CHECK_THROWS_AS(det_relation(1, {0, 1, 2}, {0, 1}), IndexError);
    CHECK_THROWS_AS(det_relation(1, {1, 0}, {0, 1}), IndexError);
    CHECK_THROWS_AS(det_relation(1, {0, 0}, {0, 1}), IndexError);
    CHECK_THROWS_AS(det_relation(0, {0}, {0}), IndexError);
    CHECK_THROWS_AS(substitute(QSymbolPoly::C(0, 1, 2), 3), UnknownSymbol);
  }

  TEST_CASE("sl2 relations vanish") {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l)
            for (int m = 0; m < 4; ++m) CHECK(substitute_sl2(sl2_relation_type1(i, j, k, l, m)).is_zero());
    CHECK(substitute_sl2(sl2_relation_type2(0, 1, 2, 0, 1, 2)).is_zero());
    CHECK(substitute_sl2(sl2_relation_type2(0, 1, 3, 0, 2, 3)).is_zero());
    CHECK(!sl2_relation_type2(0, 1, 2, 0, 1, 2).is_zero());
  }

  TEST_CASE("printed third sign of the first sl2 family does not vanish") {
    using S = QSymbolPoly;
    const int i = 0, j = 0, k = 1, l = 2, m = 3;
    const S printed = S::Q(i, j) * S::C(k, l, m) - S::Q(k, j) * S::C(i, l, m) + S::Q(l, j) * S::C(k, i, m) -
                      S::Q(m, j) * S::C(k, l, i);
    CHECK(!substitute_sl2(printed).is_zero());
    CHECK(substitute_sl2(sl2_relation_type1(i, j, k, l, m)).is_zero());
  }

  TEST_CASE("polarization and derivative") {
    CHECK(polarization(1, 0, weyl_q(2, 0, 0)) == Rational(2) * weyl_q(2, 0, 1));
    CHECK(polarization(2, 0, weyl_q(3, 0, 1)) == weyl_q(3, 2, 1));
    CHECK(polarization(0, 1, weyl_q(3, 0, 2)).is_zero());
    CHECK(polarization(2, 0, weyl_q(2, 1, 1)).is_zero());
    CHECK(d_ring_derivative(weyl_q(2, 0, 1)) == weyl_q(2, 1, 1) + weyl_q(2, 0, 2));
    CHECK(d_ring_derivative(ClassicalPoly(Rational(5))).is_zero());
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const QSymbolPoly d = det_relation(2, {0, 1, a + 2}, {0, 1, b + 2});
        CHECK(d_ring_derivative(substitute(d, 3)) == substitute(symbol_derivative(d), 3));
      }
    const QSymbolPoly c = QSymbolPoly::C(0, 1, 2) * QSymbolPoly::Q(0, 1);
    CHECK(d_ring_derivative(substitute_sl2(c)) == substitute_sl2(symbol_derivative(c)));
  }

  TEST_CASE("invariance checks") {
    const ActionSpec ad = adjoint_action(sl2_spec());
    CHECK(lie_invariance_check(ad, sl2_q(0, 1)));
    CHECK(lie_invariance_check(ad, sl2_c(0, 1, 2)));
    CHECK(!lie_invariance_check(ad, x(kSl2H, 0)));
    CHECK(!lie_invariance_check(ad, x(kSl2X, 0) * x(kSl2X, 0)));

    const ActionSpec o2 = orthogonal_action(2);
    CHECK(lie_invariance_check(o2, weyl_q(2, 0, 3)));
    // x_{0,0} x_{1,1} - x_{1,0} x_{0,1} is SO(2)-invariant but odd under the reflection.
    const ClassicalPoly det = x(0, 0) * x(1, 1) - x(1, 0) * x(0, 1);
    CHECK(lie_apply(o2.lie_generators[0], det).is_zero());
    CHECK(!lie_invariance_check(o2, det));
  }

  TEST_CASE("graded dimensions of the O(1) invariant ring") {
    for (int w = 0; w <= 12; ++w)
      CHECK(weyl_graded_dimension(1, w) == even_length_partitions(w, w, 0));
  }

  TEST_CASE("graded dimensions against direct invariant computation") {
    for (int n = 1; n <= 3; ++n)
      for (int w = 0; w <= 6; ++w) {
        CAPTURE(n);
        CAPTURE(w);
        CHECK(weyl_graded_dimension(n, w) == oracle::classical_invariant_dimension(orthogonal_action(n), n, w));
      }
  }

  TEST_CASE("minimal d-ring generators") {
    const auto gens = minimal_d_ring_generators({weyl_q(1, 0, 0)}, 8);
    REQUIRE(gens.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(gens[static_cast<std::size_t>(i)].normalized() == weyl_q(1, 0, 2 * i).normalized());

    // O(2): q_01 is a derivative of q_00; at weight 4 only one of q_02, q_11 is new.
    const auto o2 = minimal_d_ring_generators({weyl_q(2, 0, 0)}, 4);
    std::size_t w2 = 0, w3 = 0, w4 = 0;
    for (const auto& g : o2) {
      w2 += g.weight() == 2;
      w3 += g.weight() == 3;
      w4 += g.weight() == 4;
    }
    CHECK(w2 == 1);
    CHECK(w3 == 0);
    CHECK(w4 == 1);
  }

  TEST_CASE("rendering") {
    CHECK((Rational(2) * x(0, 1) + x(1, 0)).str().find("x[0,1]") != std::string::npos);
    CHECK(ClassicalPoly().str() == "0");
  }
}
