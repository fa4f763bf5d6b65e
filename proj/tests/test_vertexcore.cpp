#include <doctest.h>

#include <random>

#include "voa/errors.hpp"
#include "voa/vertexcore.hpp"

using namespace voa;

namespace {

const LevelScalar k = LevelScalar::k();
constexpr int X = kSl2X, Y = kSl2Y, H = kSl2H;

// Coefficients of prod_{n>=1} (1 - q^n)^{-dim}.
std::vector<long> colored_partitions(int dim, int max_weight) {
  std::vector<long> p(static_cast<std::size_t>(max_weight + 1));
  p[0] = 1;
  for (int part = 1; part <= max_weight; ++part)
    for (int color = 0; color < dim; ++color)
      for (int w = part; w <= max_weight; ++w) p[static_cast<std::size_t>(w)] += p[static_cast<std::size_t>(w - part)];
  return p;
}

State random_state(const VertexAlgebra& v, std::mt19937& rng, int weight) {
  const auto basis = pbw_basis(v.dim(), weight);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> coeff(-3, 3);
  State s;
  for (int t = 0; t < 2; ++t) s.add_term(basis[pick(rng)], LevelScalar(coeff(rng)));
  return s.is_zero() ? State::monomial(basis[0]) : s;
}

}  // namespace

TEST_SUITE("vertexcore") {
  TEST_CASE("pbw basis sizes") {
    for (int dim = 1; dim <= 3; ++dim) {
      const auto p = colored_partitions(dim, 7);
      for (int w = 0; w <= 7; ++w) {
        const auto basis = pbw_basis(dim, w);
        CHECK(static_cast<long>(basis.size()) == p[static_cast<std::size_t>(w)]);
        for (const auto& m : basis) {
          CHECK(m.is_canonical());
          CHECK(m.weight() == w);
        }
      }
    }
  }

  TEST_CASE("canonical ordering of words") {
    const VertexAlgebra v(sl2_spec());
    const std::vector<Factor> w1{{Y, 1}, {X, 2}};
    const State s = v.word(w1);
    REQUIRE(s.size() == 2);
    CHECK(s.coefficient(PBWMonomial{{{X, 2}, {Y, 1}}}) == LevelScalar(1));
    CHECK(s.coefficient(PBWMonomial{{{H, 3}}}) == LevelScalar(-1));

    // h(-1)x(-1) = x(-1)h(-1) + [h,x](-2) = x(-1)h(-1) + 2 x(-2)
    const std::vector<Factor> w2{{H, 1}, {X, 1}};
    CHECK(v.word(w2) == v.parse_state("x(-1)h(-1)") + LevelScalar(2) * v.parse_state("x(-2)"));
  }

  TEST_CASE("mode actions") {
    const VertexAlgebra v(sl2_spec());
    const State x = v.generator(X), y = v.generator(Y), h = v.generator(H);
    CHECK(v.mode_action(H, 0, x) == LevelScalar(2) * x);
    CHECK(v.mode_action(X, 1, y) == State::vacuum(k));
    CHECK(v.mode_action(X, 0, y) == h);
    CHECK(v.mode_action(H, 1, h) == State::vacuum(LevelScalar(2) * k));
    CHECK(v.mode_action(X, 0, State::vacuum()).is_zero());
    CHECK(v.mode_action(X, -1, State::vacuum()) == x);
    // x(1) x(-1) y(-1)|0> = k x(-1)|0>
    CHECK(v.mode_action(X, 1, v.parse_state("x(-1)y(-1)")) == k * x);
    CHECK(v.mode_action(X, 5, v.parse_state("x(-1)y(-1)")).is_zero());
  }

  TEST_CASE("mode commutator matches the affine bracket") {
    const VertexAlgebra v(sl2_spec());
    const LieSpec& s = v.spec();
    for (int w = 0; w <= 3; ++w)
      for (const auto& m : pbw_basis(3, w)) {
        const State st = State::monomial(m);
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            for (int p = -2; p <= 2; ++p)
              for (int q = -2; q <= 2; ++q) {
                const State lhs = v.mode_action(a, p, v.mode_action(b, q, st)) - v.mode_action(b, q, v.mode_action(a, p, st));
                State rhs;
                for (int l = 0; l < 3; ++l)
                  if (!s.c(a, b, l).is_zero()) rhs += LevelScalar(s.c(a, b, l)) * v.mode_action(l, p + q, st);
                if (p + q == 0 && !s.B(a, b).is_zero()) rhs += (LevelScalar(s.B(a, b) * Rational(p)) * k) * st;
                CHECK(lhs == rhs);
              }
      }
  }

  TEST_CASE("circle products of generators") {
    const VertexAlgebra v(sl2_spec());
    const State x = v.generator(X), y = v.generator(Y), h = v.generator(H);
    CHECK(v.circle_product(x, 1, y) == State::vacuum(k));
    CHECK(v.circle_product(x, 0, y) == h);
    CHECK(v.circle_product(y, 0, x) == -h);
    CHECK(v.circle_product(x, 2, y).is_zero());
    CHECK(v.wick(x, y) == v.parse_state("x(-1)y(-1)"));
    CHECK(v.circle_product(x, -2, State::vacuum()) == v.parse_state("x(-2)"));
    CHECK(v.circle_product(State::vacuum(), -1, h) == h);
    CHECK(v.circle_product(State::vacuum(), 0, h).is_zero());
    const std::vector<State> chain{x, y, h};
    CHECK(v.wick_chain(chain) == v.wick(x, v.wick(y, h)));
  }

  TEST_CASE("derivative") {
    const VertexAlgebra v(sl2_spec());
    const State x = v.generator(X);
    CHECK(v.derivative(x) == v.parse_state("x(-2)"));
    CHECK(v.derivative(x, 2) == LevelScalar(2) * v.parse_state("x(-3)"));
    CHECK(v.derivative(State::vacuum()).is_zero());
    CHECK(v.derivative(x, 0) == x);

    std::mt19937 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      const State a = random_state(v, rng, 1 + trial % 3);
      const State b = random_state(v, rng, 1 + trial % 2);
      for (int n = -2; n <= 2; ++n) {
        // d(a_n b) = (da)_n b + a_n db, (da)_n b = -n a_{n-1} b
        CHECK(v.derivative(v.circle_product(a, n, b)) ==
              v.circle_product(v.derivative(a), n, b) + v.circle_product(a, n, v.derivative(b)));
        CHECK(v.circle_product(v.derivative(a), n, b) == LevelScalar(-n) * v.circle_product(a, n - 1, b));
      }
    }
  }

  TEST_CASE("skew symmetry on composite states") {
    const VertexAlgebra v(sl2_spec());
    std::mt19937 rng(11);
    for (int trial = 0; trial < 12; ++trial) {
      const State a = random_state(v, rng, 1 + trial % 3);
      const State b = random_state(v, rng, 2);
      for (int n = -1; n <= 2; ++n) {
        // b_n a = sum_j (-1)^{n+j+1} d^j (a_{n+j} b) / j!
        State rhs;
        Rational fact(1);
        for (int j = 0;; ++j) {
          if (j > 0) fact *= Rational(j);
          const State t = v.circle_product(a, n + j, b);
          if (t.is_zero() && n + j >= v.locality_order(a, b)) break;
          const Rational sign = (n + j + 1) % 2 == 0 ? Rational(1) : Rational(-1);
          rhs += LevelScalar(sign / fact) * v.derivative(t, j);
        }
        CHECK(v.circle_product(b, n, a) == rhs);
      }
    }
  }

  TEST_CASE("ope and rendering") {
    const VertexAlgebra v(sl2_spec());
    const State x = v.generator(X), y = v.generator(Y);
    const OPEList o = v.ope(x, y);
    REQUIRE(o.size() == 2);
    CHECK(o[0].first == 1);
    CHECK(o[1].first == 0);
    CHECK(v.render_ope("x", "y", o) == "x(z)y(w) ~ k (z-w)^-2 + h(-1) (z-w)^-1");
    CHECK(v.locality_order(x, y) == 2);
    CHECK(v.locality_order(x, x) == 0);
    CHECK(v.render_ope("x", "x", v.ope(x, x)) == "x(z)x(w) ~ 0");

    const VertexAlgebra heis(abelian(1));
    const State a = heis.generator(0);
    CHECK(heis.render_ope("a1", "a1", heis.ope(a, a)) == "a1(z)a1(w) ~ k (z-w)^-2");
    CHECK(v.render(LevelScalar(2) * x) == "2 x(-1)");
    CHECK(v.render(State()) == "0");
    CHECK(v.render(State::vacuum(k + LevelScalar(1))) == "(1 + k)");
    CHECK(v.render(x - y) == "x(-1) - y(-1)");
  }

  TEST_CASE("state parsing") {
    const VertexAlgebra v(sl2_spec());
    CHECK(v.parse_state("x") == v.generator(X));
    CHECK(v.parse_state("vac") == State::vacuum());
    CHECK(v.parse_state("1") == State::vacuum());
    CHECK(v.parse_state(" x(-2) h(-1) ").weight() == 3);
    CHECK_THROWS_AS(v.parse_state("z"), ParseError);
    CHECK_THROWS_AS(v.parse_state("x(2)"), ParseError);
    CHECK_THROWS_AS(v.parse_state("x(-0)"), ParseError);
    CHECK_THROWS_AS(v.parse_state("x(-"), ParseError);
    CHECK_THROWS_AS(v.parse_state("x(-99999999999)"), ParseError);
    CHECK_THROWS_AS(v.parse_state(""), ParseError);
  }

  TEST_CASE("json round trip") {
    const VertexAlgebra v(sl2_spec());
    const State s = v.parse_state("x(-2)h(-1)") + (k * v.parse_state("y(-1)y(-1)"));
    const auto j = v.to_json(s);
    CHECK(j["algebra"] == "sl2");
    CHECK(v.state_from_json(j) == s);
    CHECK(v.state_from_json(nlohmann::json::parse(j.dump())) == s);
  }

  TEST_CASE("leading symbols") {
    const VertexAlgebra v(sl2_spec());
    const State x = v.generator(X), h = v.generator(H);
    CHECK(v.leading_symbol(x) == ClassicalPoly::variable(X, 0));
    CHECK(v.leading_symbol(v.derivative(x, 3)) == Rational(6) * ClassicalPoly::variable(X, 3));
    // :h h: = h(-1)^2; the weight-2 correction is dropped.
    const State hh = v.wick(h, h) + v.derivative(h);
    CHECK(v.leading_symbol(hh) == ClassicalPoly::variable(H, 0) * ClassicalPoly::variable(H, 0));
    CHECK_THROWS_AS(v.leading_symbol(State()), Error);
    CHECK_THROWS_AS(v.leading_symbol(k * x), Error);
  }

  TEST_CASE("sugawara vector") {
    const VertexAlgebra v(sl2_spec());
    const State w = v.sugawara(Rational(2));
    const LevelScalar c = LevelScalar(3) * k / (k + LevelScalar(2));
    CHECK(v.circle_product(w, 3, w) == State::vacuum(c / LevelScalar(2)));
    CHECK(v.circle_product(w, 2, w).is_zero());
    CHECK(v.circle_product(w, 1, w) == LevelScalar(2) * w);
    CHECK(v.circle_product(w, 0, w) == v.derivative(w));
    for (int g = 0; g < 3; ++g) {
      const State a = v.generator(g);
      CHECK(v.circle_product(w, 0, a) == v.derivative(a));
      CHECK(v.circle_product(w, 1, a) == a);
      CHECK(v.circle_product(w, 2, a).is_zero());
    }

    const VertexAlgebra heis(abelian(2));
    const State wh = heis.sugawara(Rational(0));
    CHECK(heis.circle_product(wh, 3, wh) == State::vacuum(LevelScalar(1)));
  }

  TEST_CASE("symmetry actions on states") {
    const VertexAlgebra v(sl2_spec());
    const ActionSpec ad = adjoint_action(v.spec());
    const State x = v.generator(X);
    CHECK(v.lie_act(ad.lie_generators[H], x) == LevelScalar(2) * x);
    CHECK(v.lie_act(ad.lie_generators[H], v.wick(x, v.generator(Y))).is_zero());
    CHECK(v.lie_act(ad.lie_generators[X], v.sugawara(Rational(2))).is_zero());

    const VertexAlgebra heis(abelian(2));
    const ActionSpec o2 = orthogonal_action(2);
    const State a1 = heis.generator(0);
    CHECK(heis.apply_group_element(o2.finite_elements[0], a1) == -a1);
    const State q = heis.wick(a1, a1) + heis.wick(heis.generator(1), heis.generator(1));
    CHECK(heis.apply_group_element(o2.finite_elements[0], q) == q);
    CHECK(heis.lie_act(o2.lie_generators[0], q).is_zero());
    CHECK(heis.lie_act(o2.lie_generators[0], a1) == heis.generator(1));
  }

  TEST_CASE("invalid lie data is rejected") {
    LieSpec bad = sl2_spec();
    bad.c(2, 0, 0) = 3;
    bad.c(0, 2, 0) = -3;
    CHECK_THROWS_AS(VertexAlgebra{bad}, ValidationError);
  }
}
