#include "voa/orbifold.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "voa/errors.hpp"
#include "voa/linalg.hpp"

namespace voa {

// ------------------------------------------------------------------ Symbol

std::string Symbol::str() const {
  std::string out = family + "[";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(idx[i]);
  }
  return out + "]";
}

Symbol Symbol::parse(std::string_view text) {
  const auto open = text.find('[');
  if (open == std::string_view::npos || open == 0 || text.back() != ']')
    throw ParseError("malformed symbol '" + std::string(text) + "'");
  Symbol s;
  s.family = std::string(text.substr(0, open));
  std::string body(text.substr(open + 1, text.size() - open - 2));
  std::size_t pos = 0;
  while (pos < body.size()) {
    auto comma = body.find(',', pos);
    if (comma == std::string::npos) comma = body.size();
    const std::string item = body.substr(pos, comma - pos);
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw ParseError("malformed symbol '" + std::string(text) + "'");
    s.idx.push_back(std::stoi(item));
    pos = comma + 1;
  }
  return s;
}

Symbol omega_symbol(int a, int b) { return Symbol{"Omega", {std::min(a, b), std::max(a, b)}}; }

Symbol j_symbol(int two_m) { return Symbol{"J", {two_m}}; }

// --------------------------------------------------------------- FormalNOP

FormalNOP FormalNOP::symbol(const Symbol& s, int derivs) { return monomial({NOPFactor{s, derivs}}); }

FormalNOP FormalNOP::monomial(std::vector<NOPFactor> factors, const LevelScalar& c) {
  std::sort(factors.begin(), factors.end());
  FormalNOP p;
  p.add_term(NOPMonomial{std::move(factors)}, c);
  return p;
}

void FormalNOP::add_term(NOPMonomial m, const LevelScalar& c) {
  if (c.is_zero()) return;
  std::sort(m.factors.begin(), m.factors.end());
  auto [it, inserted] = terms_.try_emplace(std::move(m), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LevelScalar FormalNOP::coefficient(const NOPMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? LevelScalar() : it->second;
}

namespace {

int monomial_degree(const NOPMonomial& m, const GeneratorDictionary& dict) {
  int d = 0;
  for (const auto& f : m.factors) d += dict.at(f.symbol).degree;
  return d;
}

}  // namespace

int FormalNOP::degree(const GeneratorDictionary& dict) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m, dict));
  return d;
}

FormalNOP FormalNOP::degree_part(int d, const GeneratorDictionary& dict) const {
  FormalNOP out;
  for (const auto& [m, c] : terms_)
    if (monomial_degree(m, dict) == d) out.terms_.emplace(m, c);
  return out;
}

FormalNOP& FormalNOP::operator+=(const FormalNOP& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

FormalNOP& FormalNOP::operator-=(const FormalNOP& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

FormalNOP& FormalNOP::operator*=(const LevelScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

std::string FormalNOP::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ") * ";
    if (m.factors.empty()) {
      out += "1";
      continue;
    }
    out += ":";
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
      if (i) out += " ";
      const auto& f = m.factors[i];
      if (f.derivs > 0) out += "D^" + std::to_string(f.derivs) + " ";
      out += f.symbol.str();
    }
    out += ":";
  }
  return out;
}

nlohmann::json to_json(const FormalNOP& p) {
  auto terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    auto mono = nlohmann::json::array();
    for (const auto& f : m.factors) mono.push_back({{"symbol", f.symbol.str()}, {"derivatives", f.derivs}});
    nlohmann::json coeff;
    to_json(coeff, c);
    terms.push_back({{"monomial", mono}, {"coeff", coeff}, {"coeff_text", c.str()}});
  }
  return {{"terms", terms}, {"text", p.str()}};
}

// ------------------------------------------------------ GeneratorDictionary

void GeneratorDictionary::add(const Symbol& s, State state, int degree, int weight) {
  const auto w = state.weight();
  if (!w || *w != weight) throw ValidationError(s.str() + ": declared weight does not match the state");
  if (weight < 1) throw ValidationError(s.str() + ": generators need positive weight");
  if (state.degree() != degree) throw ValidationError(s.str() + ": declared degree does not match the state");
  entries_[s] = Entry{std::move(state), degree, weight};
}

void GeneratorDictionary::add(const Symbol& s, State state) {
  const auto w = state.weight();
  if (!w) throw ValidationError(s.str() + ": generator state must be weight-homogeneous and nonzero");
  const int d = state.degree();
  add(s, std::move(state), d, *w);
}

const GeneratorDictionary::Entry& GeneratorDictionary::at(const Symbol& s) const {
  auto it = entries_.find(s);
  if (it == entries_.end()) throw UnknownSymbol("symbol " + s.str() + " is not in the dictionary");
  return it->second;
}

// ------------------------------------------------------------- invariants

namespace {

Rational constant_coefficient(const LevelScalar& c) {
  if (!c.is_constant()) throw ValidationError("symmetry action produced a level-dependent coefficient");
  return c.constant();
}

}  // namespace

std::vector<State> invariant_subspace(const VertexAlgebra& v, const ActionSpec& action, int weight) {
  if (weight < 0) throw IndexError("weight must be non-negative");
  const auto basis = pbw_basis(v.dim(), weight);
  std::map<PBWMonomial, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
  const std::size_t n = basis.size();

  std::vector<std::vector<Rational>> rows;
  auto add_block = [&](auto image) {
    std::vector<std::vector<Rational>> block(n, std::vector<Rational>(n));
    for (std::size_t col = 0; col < n; ++col) {
      const State out = image(basis[col]);
      for (const auto& [m, c] : out.terms()) block[index.at(m)][col] += constant_coefficient(c);
    }
    for (auto& row : block)
      if (std::any_of(row.begin(), row.end(), [](const Rational& x) { return !x.is_zero(); }))
        rows.push_back(std::move(row));
  };
  for (const auto& rho : action.lie_generators) add_block([&](const PBWMonomial& m) {
    return v.lie_act(rho, State::monomial(m));
  });
  for (const auto& g : action.finite_elements) add_block([&](const PBWMonomial& m) {
    return v.apply_group_element(g, State::monomial(m)) - State::monomial(m);
  });

  DenseMatrix<Rational> mat(rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) mat(r, c) = rows[r][c];
  const auto ker = rows.empty() ? std::vector<std::vector<Rational>>{} : kernel(mat);
  std::vector<std::vector<Rational>> spanning = ker;
  if (rows.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> e(n);
      e[i] = Rational(1);
      spanning.push_back(std::move(e));
    }
  }
  std::vector<State> out;
  for (const auto& vec : echelon_basis(spanning, n)) {
    State s;
    for (std::size_t i = 0; i < n; ++i) s.add_term(basis[i], LevelScalar(vec[i]));
    out.push_back(std::move(s));
  }
  return out;
}

bool is_invariant(const VertexAlgebra& v, const ActionSpec& action, const State& a) {
  for (const auto& rho : action.lie_generators)
    if (!v.lie_act(rho, a).is_zero()) return false;
  for (const auto& g : action.finite_elements)
    if (v.apply_group_element(g, a) != a) return false;
  return true;
}

// -------------------------------------------------------------- generators

State omega(const VertexAlgebra& heis, int a, int b) {
  if (a < 0 || b < 0) throw IndexError("omega needs non-negative derivative counts");
  State out;
  for (int i = 0; i < heis.dim(); ++i) {
    const State g = heis.generator(i);
    out += heis.wick(heis.derivative(g, a), heis.derivative(g, b));
  }
  return out;
}

State j_gen(const VertexAlgebra& heis, int two_m) { return omega(heis, 0, two_m); }

GeneratorDictionary omega_dictionary(const VertexAlgebra& heis, int max_weight) {
  GeneratorDictionary dict;
  for (int a = 0; 2 * a + 2 <= max_weight; ++a)
    for (int b = a; a + b + 2 <= max_weight; ++b) dict.add(omega_symbol(a, b), omega(heis, a, b), 2, a + b + 2);
  return dict;
}

GeneratorDictionary j_dictionary(const VertexAlgebra& heis, const std::vector<int>& evens) {
  GeneratorDictionary dict;
  for (int e : evens) {
    if (e < 0 || e % 2) throw ParityError("J generators need even non-negative indices");
    dict.add(j_symbol(e), j_gen(heis, e), 2, e + 2);
  }
  return dict;
}

State sl2_tilde_q(const VertexAlgebra& sl2, int i, int j) {
  auto d = [&](int gen, int r) { return sl2.derivative(sl2.generator(gen), r); };
  State out = sl2.wick(d(kSl2H, i), d(kSl2H, j));
  out += LevelScalar(2) * sl2.wick(d(kSl2X, i), d(kSl2Y, j));
  out += LevelScalar(2) * sl2.wick(d(kSl2Y, i), d(kSl2X, j));
  return out;
}

State sl2_tilde_c(const VertexAlgebra& sl2, int k, int l, int m) {
  if (!(0 <= k && k < l && l < m)) throw IndexError("sl2_tilde_c needs 0 <= k < l < m");
  auto d = [&](int gen, int r) { return sl2.derivative(sl2.generator(gen), r); };
  // (x-index, y-index, h-index, sign) over the permutations of (k, l, m).
  const std::array<std::array<int, 4>, 6> perms{{
      {k, l, m, 1},
      {k, m, l, -1},
      {l, k, m, -1},
      {l, m, k, 1},
      {m, k, l, 1},
      {m, l, k, -1},
  }};
  State out;
  for (const auto& p : perms) {
    const std::array<State, 3> chain{d(kSl2X, p[0]), d(kSl2Y, p[1]), d(kSl2H, p[2])};
    out += LevelScalar(p[3]) * sl2.wick_chain(chain);
  }
  return out;
}

GeneratorDictionary sl2_dictionary(const VertexAlgebra& sl2, int max_weight) {
  GeneratorDictionary dict;
  for (int i = 0; 2 * i + 2 <= max_weight; ++i)
    for (int j = i; i + j + 2 <= max_weight; ++j) dict.add(Symbol{"Q", {i, j}}, sl2_tilde_q(sl2, i, j), 2, i + j + 2);
  for (int k = 0; k + (k + 1) + (k + 2) + 3 <= max_weight; ++k)
    for (int l = k + 1; k + l + (l + 1) + 3 <= max_weight; ++l)
      for (int m = l + 1; k + l + m + 3 <= max_weight; ++m)
        dict.add(Symbol{"C", {k, l, m}}, sl2_tilde_c(sl2, k, l, m), 3, k + l + m + 3);
  return dict;
}

// -------------------------------------------------------------- evaluation

namespace {

State evaluate_monomial(const VertexAlgebra& v, const NOPMonomial& m, const GeneratorDictionary& dict) {
  std::vector<State> chain;
  chain.reserve(m.factors.size());
  for (const auto& f : m.factors) chain.push_back(v.derivative(dict.at(f.symbol).state, f.derivs));
  return v.wick_chain(chain);
}

struct Atom {
  NOPFactor factor;
  int weight;
  int degree;
};

void extend_monomials(const std::vector<Atom>& atoms, std::size_t start, int remaining, int degree, int min_degree,
                      int max_degree, std::vector<NOPFactor>& prefix, std::vector<NOPMonomial>& out) {
  if (remaining == 0) {
    if (degree >= min_degree) out.push_back(NOPMonomial{prefix});
    return;
  }
  for (std::size_t i = start; i < atoms.size(); ++i) {
    const Atom& a = atoms[i];
    if (a.weight > remaining || degree + a.degree > max_degree) continue;
    prefix.push_back(a.factor);
    extend_monomials(atoms, i, remaining - a.weight, degree + a.degree, min_degree, max_degree, prefix, out);
    prefix.pop_back();
  }
}

/// Solves sum_c x_c columns[c] = target on the union of their supports.
std::optional<std::vector<LevelScalar>> solve_states(const std::vector<State>& columns, const State& target) {
  std::map<PBWMonomial, std::size_t> rows;
  auto register_rows = [&](const State& s) {
    for (const auto& [m, c] : s.terms()) rows.try_emplace(m, rows.size());
  };
  register_rows(target);
  for (const auto& s : columns) register_rows(s);
  DenseMatrix<LevelScalar> mat(rows.size(), columns.size());
  std::vector<LevelScalar> rhs(rows.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& [m, x] : columns[c].terms()) mat(rows.at(m), c) = x;
  for (const auto& [m, x] : target.terms()) rhs[rows.at(m)] = x;
  return solve(mat, rhs);
}

}  // namespace

State evaluate_nop(const VertexAlgebra& v, const FormalNOP& nop, const GeneratorDictionary& dict) {
  State out;
  for (const auto& [m, c] : nop.terms()) {
    State t = evaluate_monomial(v, m, dict);
    t *= c;
    out += t;
  }
  return out;
}

std::vector<NOPMonomial> nop_monomials(const GeneratorDictionary& dict, int weight, int min_degree, int max_degree) {
  std::vector<Atom> atoms;
  for (const auto& [s, e] : dict.entries())
    for (int r = 0; e.weight + r <= weight; ++r) atoms.push_back(Atom{NOPFactor{s, r}, e.weight + r, e.degree});
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.factor < b.factor; });
  std::vector<NOPMonomial> out;
  std::vector<NOPFactor> prefix;
  if (weight >= 0) extend_monomials(atoms, 0, weight, 0, min_degree, max_degree, prefix, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<FormalNOP> express_in_generators(const VertexAlgebra& v, const State& target,
                                               const GeneratorDictionary& dict, int max_degree) {
  if (target.is_zero()) return FormalNOP{};
  const auto w = target.weight();
  if (!w) throw ValidationError("express_in_generators needs a weight-homogeneous target");
  for (const auto& [s, e] : dict.entries())
    if (e.state == target) return FormalNOP::symbol(s);
  const auto candidates = nop_monomials(dict, *w, 0, max_degree < 0 ? *w : max_degree);
  std::vector<State> columns;
  columns.reserve(candidates.size());
  for (const auto& m : candidates) columns.push_back(evaluate_monomial(v, m, dict));
  const auto x = solve_states(columns, target);
  if (!x) return std::nullopt;
  FormalNOP out;
  for (std::size_t i = 0; i < candidates.size(); ++i) out.add_term(candidates[i], (*x)[i]);
  return out;
}

// ------------------------------------------------------- quantum correction

Symbol lift_symbol(const QSymbol& s, const SymbolFamilies& families) {
  return Symbol{s.kind == QSymbol::Kind::Q ? families.q : families.c, s.idx};
}

FormalNOP quantum_correction(const VertexAlgebra& v, const QSymbolPoly& rel, const GeneratorDictionary& dict,
                             const SymbolFamilies& families) {
  FormalNOP p;
  for (const auto& [m, c] : rel.terms()) {
    std::vector<NOPFactor> factors;
    for (const auto& [s, e] : m.powers)
      for (int t = 0; t < e; ++t) factors.push_back(NOPFactor{lift_symbol(s, families), 0});
    p += FormalNOP::monomial(std::move(factors), LevelScalar(c));
  }
  if (p.is_zero()) return p;

  const int top = p.degree(dict);
  State residual = evaluate_nop(v, p, dict);
  if (residual.is_zero()) return p;
  const auto w = residual.weight();
  if (!w) throw ValidationError("relation is not weight-homogeneous");
  if (residual.degree() >= top) throw ValidationError("relation does not vanish classically");

  while (!residual.is_zero()) {
    const int d = residual.degree();
    const auto candidates = nop_monomials(dict, *w, d, d);
    std::vector<State> full;
    std::vector<State> leading;
    for (const auto& m : candidates) {
      full.push_back(evaluate_monomial(v, m, dict));
      leading.push_back(full.back().degree_part(d));
    }
    const auto x = solve_states(leading, -residual.degree_part(d));
    if (!x) throw DescentFailure(d, "no normally ordered polynomial matches the degree-" + std::to_string(d) + " part");
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if ((*x)[i].is_zero()) continue;
      p.add_term(candidates[i], (*x)[i]);
      residual += (*x)[i] * full[i];
    }
  }
  return p;
}

// ------------------------------------------------------------- projection

Rational pr_omega(int a, int b) {
  if (a < 0 || b < 0) throw IndexError("pr_omega needs non-negative indices");
  const int m = a + b;
  if (m % 2) throw ParityError("Omega[a,b] projects onto J^m only for even a + b");
  // Coordinates in A_m: Omega[p, m-p] for p = 0..m/2.
  const auto size = static_cast<std::size_t>(m / 2 + 1);
  auto slot = [m](int p) { return static_cast<std::size_t>(std::min(p, m - p)); };
  DenseMatrix<Rational> mat(size, size);
  mat(0, 0) = Rational(1);  // J^m
  for (int p = 0; 2 * p <= m - 2; ++p) {
    // d^2 Omega[p, m-2-p] = Omega[p+2,q] + 2 Omega[p+1,q+1] + Omega[p,q+2]
    const auto col = static_cast<std::size_t>(p + 1);
    mat(slot(p + 2), col) += Rational(1);
    mat(slot(p + 1), col) += Rational(2);
    mat(slot(p), col) += Rational(1);
  }
  std::vector<Rational> rhs(size);
  rhs[slot(a)] = Rational(1);
  const auto x = solve(mat, rhs);
  if (!x) throw ValidationError("A_m reduction is inconsistent");
  return (*x)[0];
}

LevelScalar pr_coefficient(const FormalNOP& nop, int m) {
  if (m < 0 || m % 2) throw ParityError("pr_m needs an even non-negative m");
  LevelScalar out;
  for (const auto& [mono, c] : nop.terms()) {
    if (mono.factors.empty()) continue;
    if (mono.factors.size() != 1) throw ValidationError("pr_coefficient needs a degree-2 polynomial");
    const auto& f = mono.factors.front();
    int a = 0;
    int b = 0;
    if (f.symbol.family == "Omega" && f.symbol.idx.size() == 2) {
      a = f.symbol.idx[0];
      b = f.symbol.idx[1];
    } else if (f.symbol.family == "J" && f.symbol.idx.size() == 1) {
      b = f.symbol.idx[0];
    } else {
      throw ValidationError("pr_coefficient cannot project " + f.symbol.str());
    }
    if (a + b + f.derivs != m) throw ValidationError(f.symbol.str() + " does not lie in A_" + std::to_string(m));
    if (f.derivs > 0) continue;
    out += c * LevelScalar(pr_omega(a, b));
  }
  return out;
}

Rational remainder_direct(int n, const std::vector<int>& I, const std::vector<int>& J, int max_weight) {
  if (n < 1) throw IndexError("remainder_direct needs n >= 1");
  const auto len = static_cast<std::size_t>(n + 1);
  if (I.size() != len || J.size() != len) throw LengthMismatch("I and J need n + 1 entries");
  int m = 2 * n;
  for (std::size_t t = 0; t < len; ++t) {
    if (I[t] < 0 || J[t] < 0 || (t > 0 && (I[t] <= I[t - 1] || J[t] <= J[t - 1])))
      throw IndexError("I and J must be strictly increasing and non-negative");
    m += I[t] + J[t];
  }
  if (m % 2) throw ParityError("|I| + |J| + 2n must be even, got m = " + std::to_string(m));
  const int weight = m + 2;
  if (weight > max_weight)
    throw ResourceLimit("relation weight " + std::to_string(weight) + " exceeds the budget " +
                        std::to_string(max_weight));
  const VertexAlgebra heis(abelian(n));
  const auto dict = omega_dictionary(heis, weight);
  const FormalNOP p = quantum_correction(heis, det_relation(n, I, J), dict);
  return pr_coefficient(p.degree_part(2, dict), m).evaluate_at(Rational(1));
}

// --------------------------------------------------------------- decoupling

DecouplingResult decouple(const VertexAlgebra& v, const ActionSpec& action, const GeneratorDictionary& dict,
                          const State& target, const SearchBounds& bounds) {
  if (!is_invariant(v, action, target)) throw ValidationError("decoupling target is not invariant");
  for (const auto& [s, e] : dict.entries())
    if (!is_invariant(v, action, e.state)) throw ValidationError("dictionary entry " + s.str() + " is not invariant");
  const auto w = target.weight();
  if (!w) throw ValidationError("decoupling target must be weight-homogeneous and nonzero");
  if (*w > bounds.max_weight)
    throw ResourceLimit("target weight " + std::to_string(*w) + " exceeds the search bound " +
                        std::to_string(bounds.max_weight));

  DecouplingResult out;
  out.relation = express_in_generators(v, target, dict, bounds.max_degree);
  if (!out.relation) return out;
  std::set<Rational> roots;
  std::vector<LevelPolynomial> leftovers;
  for (const auto& [m, c] : out.relation->terms()) {
    LevelPolynomial den = c.denominator();
    for (const auto& r : den.rational_roots()) {
      roots.insert(r);
      const LevelPolynomial factor(std::vector<Rational>{-r, Rational(1)});
      for (;;) {
        LevelPolynomial q;
        LevelPolynomial rem;
        LevelPolynomial::divmod(den, factor, q, rem);
        if (!rem.is_zero()) break;
        den = q;
      }
    }
    if (den.degree() > 0 && std::find(leftovers.begin(), leftovers.end(), den) == leftovers.end())
      leftovers.push_back(den);
  }
  out.excluded_levels.assign(roots.begin(), roots.end());
  std::sort(leftovers.begin(), leftovers.end(),
            [](const LevelPolynomial& a, const LevelPolynomial& b) { return a.str() < b.str(); });
  out.irrational_factors = std::move(leftovers);
  return out;
}

nlohmann::json to_json(const DecouplingResult& r) {
  nlohmann::json j;
  j["relation"] = r.relation ? to_json(*r.relation) : nlohmann::json(nullptr);
  auto levels = nlohmann::json::array();
  for (const auto& x : r.excluded_levels) levels.push_back(x.str());
  j["excluded_levels"] = levels;
  if (!r.irrational_factors.empty()) {
    auto f = nlohmann::json::array();
    for (const auto& p : r.irrational_factors) f.push_back(p.str());
    j["irrational_factors"] = f;
  }
  return j;
}

}  // namespace voa
