#include "voa/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>

#include "voa/classical.hpp"
#include "voa/errors.hpp"
#include "voa/liedata.hpp"
#include "voa/orbifold.hpp"
#include "voa/remainder.hpp"
#include "voa/vertexcore.hpp"

namespace voa {

namespace {

constexpr std::size_t kMaxReported = 10;

class Tally {
 public:
  explicit Tally(SuiteResult& r) : r_(r) {}

  void check(bool ok, const std::function<std::string()>& what) {
    if (ok) {
      ++r_.passed;
      return;
    }
    ++r_.failed;
    if (r_.failures.size() < kMaxReported) r_.failures.push_back(what());
  }

  void instance() { ++r_.instances; }

 private:
  SuiteResult& r_;
};

std::string list_str(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

/// Strictly increasing lists of the given length with entries in [0, max].
std::vector<std::vector<int>> increasing_lists(std::size_t len, int max) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int next) {
    if (cur.size() == len) {
      out.push_back(cur);
      return;
    }
    for (int v = next; v <= max; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------- table1

void suite_table1(Tally& t) {
  const std::vector<std::string> expected{
      "5/4",
      "149/600",
      "-2419/705600",
      "-67619/18670176000",
      "1391081/4879637199360000",
      "40984649/25145492674607585280000",
  };
  const auto rows = table1(6);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    t.instance();
    const bool ok = i < rows.size() && rows[i].second == Rational::parse(expected[i]);
    t.check(ok, [&] {
      return "R_" + std::to_string(i + 1) + " = " + (i < rows.size() ? rows[i].second.str() : "?") + ", expected " +
             expected[i];
    });
  }
}

// ------------------------------------------------------- remainder oracle

void suite_remainder_oracle(Tally& t) {
  const auto pairs = increasing_lists(2, 3);
  for (const auto& I : pairs) {
    for (const auto& J : pairs) {
      if ((I[0] + I[1] + J[0] + J[1]) % 2) continue;
      t.instance();
      const Rational direct = remainder_direct(1, I, J);
      const Rational recursive = rn(1, I, J);
      t.check(direct == recursive, [&] {
        return "I=" + list_str(I) + " J=" + list_str(J) + ": direct " + direct.str() + " vs recursion " +
               recursive.str();
      });
    }
  }
  t.instance();
  const Rational diag = remainder_direct(1, {0, 1}, {0, 1});
  t.check(diag == Rational::parse("5/4"), [&] { return "R_1((0,1),(0,1)) = " + diag.str(); });
}

// ---------------------------------------------------------------- sugawara

void suite_sugawara(Tally& t) {
  const VertexAlgebra v(sl2_spec());
  const State L = v.sugawara(Rational(2));
  const LevelScalar k = LevelScalar::k();
  const LevelScalar half_c = (LevelScalar(3) * k) / (LevelScalar(2) * (k + LevelScalar(2)));
  auto expect = [&](const std::string& label, const State& got, const State& want) {
    t.instance();
    t.check(got == want, [&] { return label + " = " + v.render(got) + ", expected " + v.render(want); });
  };
  expect("L o_3 L", v.circle_product(L, 3, L), State::vacuum(half_c));
  expect("L o_2 L", v.circle_product(L, 2, L), State());
  expect("L o_1 L", v.circle_product(L, 1, L), LevelScalar(2) * L);
  expect("L o_0 L", v.circle_product(L, 0, L), v.derivative(L));
  for (int g = 0; g < v.dim(); ++g) {
    const State x = v.generator(g);
    const std::string name = v.spec().labels[static_cast<std::size_t>(g)];
    expect("L o_1 " + name, v.circle_product(L, 1, x), x);
    for (int n = 2; n <= 4; ++n) expect("L o_" + std::to_string(n) + " " + name, v.circle_product(L, n, x), State());
  }
}

// ------------------------------------------------------------------ axioms

LevelScalar random_coefficient(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(1, 3);
  std::uniform_int_distribution<int> sign(0, 1);
  LevelScalar c(static_cast<long>(pick(rng) * (sign(rng) ? 1 : -1)));
  if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) c *= LevelScalar::k() + LevelScalar(pick(rng));
  return c;
}

State random_state(const VertexAlgebra& v, std::mt19937& rng, int weight) {
  const auto basis = pbw_basis(v.dim(), weight);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  const int terms = std::uniform_int_distribution<int>(1, 3)(rng);
  State s;
  for (int i = 0; i < terms; ++i) s.add_term(basis[pick(rng)], random_coefficient(rng));
  if (s.is_zero()) s.add_term(basis.front(), LevelScalar(1));
  return s;
}

void check_pair(Tally& t, const VertexAlgebra& v, const State& a, const State& b, const std::string& tag) {
  const int wa = *a.weight();
  const int wb = *b.weight();
  const int da = a.degree();
  const int db = b.degree();
  const State vac = State::vacuum();
  for (int n = -4; n <= 3; ++n) {
    const State left_vac = v.circle_product(vac, n, a);
    t.check(left_vac == (n == -1 ? a : State()), [&] { return tag + ": 1 o_" + std::to_string(n) + " a"; });
    if (n >= -1) {
      const State right_vac = v.circle_product(a, n, vac);
      t.check(right_vac == (n == -1 ? a : State()), [&] { return tag + ": a o_" + std::to_string(n) + " 1"; });
    }
  }
  const State da_state = v.derivative(a);
  const State db_state = v.derivative(b);
  for (int n = -3; n <= 3; ++n) {
    const std::string nn = std::to_string(n);
    const State ab = v.circle_product(a, n, b);
    t.check(v.derivative(ab) == v.circle_product(da_state, n, b) + v.circle_product(a, n, db_state),
            [&] { return tag + ": d(a o_" + nn + " b) Leibniz"; });
    t.check(v.circle_product(da_state, n, b) == LevelScalar(-n) * v.circle_product(a, n - 1, b),
            [&] { return tag + ": (da) o_" + nn + " b = -n a o_(n-1) b"; });
    bool weights_ok = true;
    for (const auto& [m, c] : ab.terms()) weights_ok = weights_ok && m.weight() == wa + wb - n - 1;
    t.check(weights_ok, [&] { return tag + ": weight additivity at n = " + nn; });
    const int bound = n < 0 ? da + db : da + db - 1;
    t.check(ab.degree() <= bound, [&] { return tag + ": filtration bound at n = " + nn; });
  }
}

void check_triple(Tally& t, const VertexAlgebra& v, const State& a, const State& b, const State& c,
                  const std::string& tag) {
  for (int m = 0; m <= 2; ++m) {
    for (int n = -2; n <= 2; ++n) {
      const State lhs = v.circle_product(a, m, v.circle_product(b, n, c)) - v.circle_product(b, n, v.circle_product(a, m, c));
      State rhs;
      for (int i = 0; i <= m; ++i) {
        rhs += LevelScalar(binomial(m, i)) * v.circle_product(v.circle_product(a, i, b), m + n - i, c);
      }
      t.check(lhs == rhs, [&] {
        return tag + ": commutator formula m = " + std::to_string(m) + ", n = " + std::to_string(n);
      });
    }
  }
}

void axioms_for(Tally& t, const VertexAlgebra& v, std::mt19937& rng, int pairs, int triples) {
  const std::string name = v.spec().name;
  for (int i = 0; i < v.dim(); ++i) {
    for (int j = 0; j < v.dim(); ++j) {
      t.instance();
      const int order = v.locality_order(v.generator(i), v.generator(j));
      t.check(order <= 2, [&] { return name + ": locality order " + std::to_string(order) + " on generators"; });
    }
  }
  std::uniform_int_distribution<int> weight(1, 3);
  for (int p = 0; p < pairs; ++p) {
    t.instance();
    const int wa = weight(rng);
    const int wb = std::uniform_int_distribution<int>(0, std::min(3, 6 - wa))(rng);
    const State a = random_state(v, rng, wa);
    const State b = wb == 0 ? State::vacuum() : random_state(v, rng, wb);
    check_pair(t, v, a, b, name + " pair " + std::to_string(p));
  }
  std::uniform_int_distribution<int> small(1, 2);
  for (int p = 0; p < triples; ++p) {
    t.instance();
    const State a = random_state(v, rng, small(rng));
    const State b = random_state(v, rng, small(rng));
    const State c = random_state(v, rng, small(rng));
    check_triple(t, v, a, b, c, name + " triple " + std::to_string(p));
  }
}

void suite_axioms(Tally& t) {
  std::mt19937 rng(20240611);
  const VertexAlgebra heis(abelian(2));
  const VertexAlgebra sl2(sl2_spec());
  axioms_for(t, heis, rng, 70, 30);
  axioms_for(t, sl2, rng, 70, 30);
}

// --------------------------------------------------------------- classical

ClassicalPoly random_invariant(std::mt19937& rng, bool sl2) {
  std::uniform_int_distribution<int> level(0, 2);
  std::uniform_int_distribution<int> coeff(-3, 3);
  ClassicalPoly p;
  const int terms = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < terms; ++i) {
    const int c = coeff(rng);
    ClassicalPoly term(Rational(c == 0 ? 1 : c));
    const int factors = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int f = 0; f < factors; ++f) {
      if (sl2 && std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
        term = term * sl2_c(0, 1, 2 + level(rng));
      } else {
        const int a = level(rng);
        const int b = level(rng);
        term = term * (sl2 ? sl2_q(a, b) : weyl_q(3, a, b));
      }
    }
    p += term;
  }
  return p;
}

ClassicalPoly random_polynomial(std::mt19937& rng, int dim) {
  std::uniform_int_distribution<int> gen(0, dim - 1);
  std::uniform_int_distribution<int> level(0, 2);
  std::uniform_int_distribution<int> coeff(1, 4);
  ClassicalPoly p;
  for (int i = 0; i < 3; ++i) {
    ClassicalPoly term(Rational(coeff(rng)));
    for (int f = 0; f < 2; ++f) term = term * ClassicalPoly::variable(gen(rng), level(rng));
    p += term;
  }
  return p;
}

void suite_classical(Tally& t) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& I : increasing_lists(static_cast<std::size_t>(n + 1), 5)) {
      for (const auto& J : increasing_lists(static_cast<std::size_t>(n + 1), 5)) {
        t.instance();
        t.check(substitute(det_relation(n, I, J), n).is_zero(),
                [&] { return "det relation n=" + std::to_string(n) + " I=" + list_str(I) + " J=" + list_str(J); });
      }
    }
  }
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j)
      for (int k = 0; k <= 3; ++k)
        for (int l = 0; l <= 3; ++l)
          for (int m = 0; m <= 3; ++m) {
            t.instance();
            t.check(substitute_sl2(sl2_relation_type1(i, j, k, l, m)).is_zero(), [&] {
              return "first sl2 relation at " + list_str({i, j, k, l, m});
            });
            for (int n = 0; n <= 3; ++n) {
              t.instance();
              t.check(substitute_sl2(sl2_relation_type2(i, j, k, l, m, n)).is_zero(), [&] {
                return "second sl2 relation at " + list_str({i, j, k, l, m, n});
              });
            }
          }

  std::mt19937 rng(7041);
  const LieSpec sl2 = sl2_spec();
  const ActionSpec adjoint = adjoint_action(sl2);
  const ActionSpec orth = orthogonal_action(3);
  std::uniform_int_distribution<int> level(0, 3);
  for (int i = 0; i < 50; ++i) {
    t.instance();
    const bool use_sl2 = i % 2 == 0;
    const ActionSpec& action = use_sl2 ? adjoint : orth;
    const ClassicalPoly p = random_invariant(rng, use_sl2);
    const int r = level(rng);
    const int s = level(rng);
    const std::string tag = std::string(use_sl2 ? "sl2" : "O(3)") + " sample " + std::to_string(i);
    t.check(lie_invariance_check(action, p), [&] { return tag + ": seed polynomial not invariant"; });
    t.check(lie_invariance_check(action, polarization(r, s, p)), [&] { return tag + ": polarization broke invariance"; });
    const ClassicalPoly q = random_polynomial(rng, 3);
    for (const auto& rho : action.lie_generators) {
      t.check(lie_apply(rho, polarization(r, s, q)) == polarization(r, s, lie_apply(rho, q)),
              [&] { return tag + ": polarization does not commute with the Lie action"; });
    }
    for (const auto& g : action.finite_elements) {
      t.check(group_apply(g, polarization(r, s, q)) == polarization(r, s, group_apply(g, q)),
              [&] { return tag + ": polarization does not commute with the group action"; });
    }
  }
}

// --------------------------------------------------- invariant dimensions

void suite_invariant_dimensions(Tally& t) {
  const VertexAlgebra heis(abelian(1));
  const ActionSpec orth = orthogonal_action(1);
  for (int w = 0; w <= 8; ++w) {
    t.instance();
    const std::size_t quantum = invariant_subspace(heis, orth, w).size();
    const std::size_t classical = weyl_graded_dimension(1, w);
    t.check(quantum == classical, [&] {
      return "weight " + std::to_string(w) + ": invariant subspace " + std::to_string(quantum) + ", classical " +
             std::to_string(classical);
    });
  }
}

// --------------------------------------------------------------- decoupling

void suite_decoupling(Tally& t) {
  const VertexAlgebra heis(abelian(1));
  const ActionSpec orth = orthogonal_action(1);
  {
    t.instance();
    const State j4 = j_gen(heis, 4);
    const auto res = decouple(heis, orth, j_dictionary(heis, {0, 2}), j4);
    t.check(res.relation.has_value(), [] { return "J[4] not found in {J[0], J[2]} at weight 6"; });
    if (res.relation) {
      const State back = evaluate_nop(heis, *res.relation, j_dictionary(heis, {0, 2}));
      t.check(back == j4, [] { return "J[4] relation does not evaluate to J[4]"; });
    }
  }
  {
    t.instance();
    const auto res = decouple(heis, orth, j_dictionary(heis, {0}), j_gen(heis, 2));
    t.check(!res.relation.has_value(), [&] { return "J[2] unexpectedly expressed: " + res.relation->str(); });
  }
}

// ----------------------------------------------------------- sl2 generators

void suite_sl2_generators(Tally& t) {
  const VertexAlgebra v(sl2_spec());
  const ActionSpec adjoint = adjoint_action(v.spec());
  auto check_state = [&](const State& s, const ClassicalPoly& expected, const std::string& label) {
    t.instance();
    for (std::size_t g = 0; g < adjoint.lie_generators.size(); ++g) {
      t.check(v.lie_act(adjoint.lie_generators[g], s).is_zero(),
              [&] { return label + ": not annihilated by adjoint generator " + std::to_string(g); });
    }
    t.check(v.leading_symbol(s) == expected, [&] {
      return label + ": leading symbol " + v.leading_symbol(s).str() + ", expected " + expected.str();
    });
  };
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; i + j <= 4; ++j) {
      const ClassicalPoly expected = factorial(i) * factorial(j) * sl2_q(i, j);
      check_state(sl2_tilde_q(v, i, j), expected, "Q[" + std::to_string(i) + "," + std::to_string(j) + "]");
    }
  }
  for (int k = 0; k <= 5; ++k)
    for (int l = k + 1; k + l <= 5; ++l)
      for (int m = l + 1; k + l + m <= 5; ++m) {
        const ClassicalPoly expected = factorial(k) * factorial(l) * factorial(m) * sl2_c(k, l, m);
        check_state(sl2_tilde_c(v, k, l, m), expected, "C" + list_str({k, l, m}));
      }
}

using SuiteFn = void (*)(Tally&);

struct SuiteEntry {
  std::string name;
  std::string title;
  SuiteFn fn;
};

const std::vector<SuiteEntry>& registry() {
  static const std::vector<SuiteEntry> entries{
      {"table1", "diagonal remainders R_1..R_6", suite_table1},
      {"remainder-oracle", "direct remainder equals recursion for n = 1, entries <= 3", suite_remainder_oracle},
      {"sugawara", "Sugawara Virasoro relations and primary currents over sl2", suite_sugawara},
      {"axioms", "vertex algebra identities on random states of H_k(2) and V_k(sl2)", suite_axioms},
      {"classical", "determinantal and sl2 relations, polarization compatibility", suite_classical},
      {"invariant-dimensions", "dim H(1)^O(1) by weight equals the classical count, w <= 8",
       suite_invariant_dimensions},
      {"decoupling", "J[4] decouples over {J[0], J[2]}; J[2] does not over {J[0]}", suite_decoupling},
      {"sl2-generators", "sl2 invariant generators: invariance and leading symbols", suite_sl2_generators},
  };
  return entries;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.name);
    return out;
  }();
  return names;
}

std::string suite_title(std::string_view name) {
  for (const auto& e : registry())
    if (e.name == name) return e.title;
  throw UnknownSymbol("unknown suite '" + std::string(name) + "'");
}

SuiteResult run_suite(std::string_view name) {
  for (const auto& e : registry()) {
    if (e.name != name) continue;
    SuiteResult r;
    r.name = e.name;
    r.title = e.title;
    Tally t(r);
    const auto start = std::chrono::steady_clock::now();
    try {
      e.fn(t);
    } catch (const std::exception& ex) {
      t.check(false, [&] { return std::string("exception: ") + ex.what(); });
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }
  throw UnknownSymbol("unknown suite '" + std::string(name) + "'");
}

nlohmann::json to_json(const SuiteResult& r) {
  return {{"suite", r.name},       {"title", r.title},       {"passed", r.passed}, {"failed", r.failed},
          {"instances", r.instances}, {"failures", r.failures}, {"ok", r.ok()}};
}

}  // namespace voa
