#include <doctest.h>

#include <algorithm>
#include <random>

#include "voa/errors.hpp"
#include "voa/linalg.hpp"
#include "voa/remainder.hpp"

using namespace voa;

namespace {

std::vector<int> iota_list(int n) {
  std::vector<int> v(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

int parity_sum(const std::vector<int>& I, const std::vector<int>& J) {
  int s = 0;
  for (int x : I) s += x;
  for (int x : J) s += x;
  return s;
}

// Kernel of the linearized interpolation P(a) - f(a) Q(a) = 0 with
// deg P <= p and deg Q <= q.
std::vector<std::vector<Rational>> rational_fits(const std::vector<std::pair<int, Rational>>& samples, int p, int q) {
  DenseMatrix<Rational> m(samples.size(), static_cast<std::size_t>(p + q + 2));
  for (std::size_t r = 0; r < samples.size(); ++r) {
    const Rational a(samples[r].first);
    Rational pw(1);
    for (int i = 0; i <= p; ++i, pw *= a) m(r, static_cast<std::size_t>(i)) = pw;
    pw = Rational(1);
    for (int i = 0; i <= q; ++i, pw *= a) m(r, static_cast<std::size_t>(p + 1 + i)) = -(samples[r].second * pw);
  }
  return kernel(m);
}

Rational eval_fit(const std::vector<Rational>& c, int p, int q, int a) {
  Rational num, den, pw(1);
  for (int i = 0; i <= p; ++i, pw *= Rational(a)) num += c[static_cast<std::size_t>(i)] * pw;
  pw = Rational(1);
  for (int i = 0; i <= q; ++i, pw *= Rational(a)) den += c[static_cast<std::size_t>(p + 1 + i)] * pw;
  return num / den;
}

}  // namespace

TEST_SUITE("remainder") {
  TEST_CASE("index list normalization") {
    const IndexList a = IndexList::normalize({2, 0, 1});
    CHECK(a.sign == 1);
    CHECK(a.entries == std::vector<int>{0, 1, 2});
    const IndexList b = IndexList::normalize({1, 0, 2});
    CHECK(b.sign == -1);
    CHECK(IndexList::normalize({3, 1, 3}).sign == 0);
    CHECK(IndexList::normalize({}).sign == 1);
  }

  TEST_CASE("closed form for n = 1") {
    CHECK(r1_closed_form({0, 1}, {0, 1}) == Rational(5, 4));
    CHECK(r1_closed_form({0, 1}, {0, 3}) == Rational(14, 15));
    CHECK_THROWS_AS(r1_closed_form({0, 1}, {0, 2}), ParityError);
    CHECK_THROWS_AS(r1_closed_form({0, 1, 2}, {0, 1}), LengthMismatch);
    CHECK(rn(1, {0, 1}, {0, 3}) == r1_closed_form({0, 1}, {0, 3}));
  }

  TEST_CASE("recursion entries") {
    CHECK(rn(2, {0, 1, 2}, {0, 1, 2}) == Rational(149, 600));
    CHECK(rn(3, iota_list(3), iota_list(3)) == Rational(-2419, 705600));
    CHECK_THROWS_AS(rn(2, {0, 1, 2}, {0, 1, 3}), ParityError);
    CHECK_THROWS_AS(rn(2, {0, 1}, {0, 1, 2}), LengthMismatch);
    CHECK_THROWS_AS(rn(2, {0, -1, 2}, {0, 1, 2}), IndexError);
    CHECK_THROWS_AS(rn(0, {0}, {0}), Error);
  }

  TEST_CASE("diagonal table") {
    const auto t = table1(6);
    REQUIRE(t.size() == 6);
    CHECK(t[0] == std::pair<int, Rational>{1, Rational(5, 4)});
    CHECK(t[1].second == Rational(149, 600));
    CHECK(t[2].second == Rational(-2419, 705600));
    CHECK(t[3].second == Rational::parse("-67619/18670176000"));
    CHECK(t[4].second == Rational::parse("1391081/4879637199360000"));
    CHECK(t[5].second == Rational::parse("40984649/25145492674607585280000"));
    CHECK_THROWS_AS(table1(0), IndexError);
    CHECK_THROWS_AS(table1(kTable1MaxN + 1), ResourceLimit);
  }

  TEST_CASE("sign and zero under permutations") {
    std::mt19937 rng(2024);
    auto draw = [&](int len) {
      std::vector<int> pool{0, 1, 2, 3, 4, 5};
      std::shuffle(pool.begin(), pool.end(), rng);
      std::vector<int> v(pool.begin(), pool.begin() + len);
      std::sort(v.begin(), v.end());
      return v;
    };
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const int n = 1 + trial % 3;
      const std::vector<int> I = draw(n + 1), J = draw(n + 1);
      if (parity_sum(I, J) % 2) continue;
      const Rational base = rn(n, I, J);
      ++checked;

      std::vector<int> Is = I;
      std::swap(Is.front(), Is.back());
      CHECK(rn(n, Is, J) == -base);
      std::vector<int> Js = J;
      std::rotate(Js.begin(), Js.begin() + 1, Js.end());
      CHECK(rn(n, I, Js) == (n % 2 == 0 ? base : -base));

      // Replacing one entry by another of the same parity leaves m even.
      std::vector<int> Ir = I;
      if ((Ir[0] - Ir[1]) % 2 == 0) {
        Ir[1] = Ir[0];
        CHECK(rn(n, Ir, J) == Rational(0));
      }
    }
    CHECK(checked > 20);
  }

  TEST_CASE("memoized and direct recursion agree") {
    int checked = 0;
    for (int n = 1; n <= 3; ++n) {
      // All strictly increasing lists with entries <= 4.
      std::vector<std::vector<int>> lists;
      for (int mask = 0; mask < 32; ++mask)
        if (__builtin_popcount(static_cast<unsigned>(mask)) == n + 1) {
          std::vector<int> l;
          for (int b = 0; b < 5; ++b)
            if (mask & (1 << b)) l.push_back(b);
          lists.push_back(l);
        }
      for (const auto& a : lists)
        for (const auto& b : lists) {
          if (parity_sum(a, b) % 2) continue;
          CHECK(rn(n, a, b) == rn_uncached(n, a, b));
          ++checked;
        }
    }
    CHECK(checked > 100);
    CHECK(rn_cache_size() > 0);
  }

  TEST_CASE("zero scan") {
    const ZeroScan s1 = scan_f(1, 7);
    REQUIRE(s1.values.size() == 4);
    CHECK(s1.values[0] == std::pair<int, Rational>{1, Rational(5, 4)});
    CHECK(s1.values[1] == std::pair<int, Rational>{3, Rational(14, 15)});
    CHECK(*s1.a0 == 1);
    CHECK(*s1.m == 2);

    const ZeroScan s2 = scan_f(2, 4);
    CHECK(s2.values[0] == std::pair<int, Rational>{2, Rational(149, 600)});
    CHECK(*s2.a0 == 2);
    CHECK(*s2.m == 5);
    CHECK(!scan_f(1, 0).a0);
  }

  TEST_CASE("f(a) for n = 1 is a single rational function") {
    const auto samples = scan_f(1, 41).values;
    REQUIRE(samples.size() == 21);
    // No interpolant of total degree <= 3 fits every sample.
    for (int p = 0; p <= 3; ++p) CHECK(rational_fits(samples, p, 3 - p).empty());
    // Five samples determine a (2,2) interpolant; it predicts all the others.
    const std::vector<std::pair<int, Rational>> head(samples.begin(), samples.begin() + 5);
    const auto fits = rational_fits(head, 2, 2);
    REQUIRE(fits.size() == 1);
    for (const auto& [a, v] : samples) CHECK(eval_fit(fits[0], 2, 2, a) == v);
  }
}
