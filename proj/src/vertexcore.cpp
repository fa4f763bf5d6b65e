#include "voa/vertexcore.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <tuple>

#include "voa/errors.hpp"

namespace voa {

// ------------------------------------------------------------- PBWMonomial

int PBWMonomial::weight() const {
  int w = 0;
  for (const auto& f : factors) w += f.depth;
  return w;
}

bool PBWMonomial::is_canonical() const {
  for (std::size_t t = 0; t < factors.size(); ++t) {
    if (factors[t].depth < 1) return false;
    if (t > 0 && !precedes_or_equal(factors[t - 1], factors[t])) return false;
  }
  return true;
}

namespace {

void extend_basis(int dim, int remaining, Factor bound, std::vector<Factor>& prefix, std::vector<PBWMonomial>& out) {
  if (remaining == 0) {
    out.push_back(PBWMonomial{prefix});
    return;
  }
  for (int depth = std::min(remaining, bound.depth); depth >= 1; --depth) {
    for (int gen = depth == bound.depth ? bound.gen : 0; gen < dim; ++gen) {
      prefix.push_back(Factor{gen, depth});
      extend_basis(dim, remaining - depth, Factor{gen, depth}, prefix, out);
      prefix.pop_back();
    }
  }
}

}  // namespace

std::vector<PBWMonomial> pbw_basis(int dim, int weight) {
  std::vector<PBWMonomial> out;
  if (weight < 0 || dim <= 0) return out;
  std::vector<Factor> prefix;
  extend_basis(dim, weight, Factor{0, weight}, prefix, out);
  std::sort(out.begin(), out.end());
  return out;
}

// ------------------------------------------------------------------- State

State State::vacuum(const LevelScalar& c) { return monomial(PBWMonomial{}, c); }

State State::monomial(PBWMonomial m, const LevelScalar& c) {
  State s;
  if (!c.is_zero()) s.terms_.emplace(std::move(m), c);
  return s;
}

void State::add_term(const PBWMonomial& m, const LevelScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LevelScalar State::coefficient(const PBWMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? LevelScalar() : it->second;
}

std::optional<int> State::weight() const {
  if (terms_.empty()) return std::nullopt;
  const int w = terms_.begin()->first.weight();
  for (const auto& [m, c] : terms_)
    if (m.weight() != w) return std::nullopt;
  return w;
}

int State::max_weight() const {
  int w = -1;
  for (const auto& [m, c] : terms_) w = std::max(w, m.weight());
  return w;
}

int State::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::map<int, State> State::weight_components() const {
  std::map<int, State> out;
  for (const auto& [m, c] : terms_) out[m.weight()].terms_.emplace(m, c);
  return out;
}

State State::degree_part(int d) const {
  State out;
  for (const auto& [m, c] : terms_)
    if (m.degree() == d) out.terms_.emplace(m, c);
  return out;
}

State& State::operator+=(const State& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

State& State::operator-=(const State& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

State& State::operator*=(const LevelScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& [m, x] : terms_) x *= c;
  return *this;
}

State State::operator-() const {
  State r = *this;
  for (auto& [m, x] : r.terms_) x = -x;
  return r;
}

// ------------------------------------------------------------ VertexAlgebra

struct VertexAlgebra::Cache {
  std::mutex mu;
  std::map<std::tuple<int, int, PBWMonomial>, State> modes;
  std::map<std::tuple<PBWMonomial, int, PBWMonomial>, State> circles;
};

namespace {

template <class Map, class Key, class Compute>
State cached(std::mutex& mu, Map& map, const Key& key, Compute compute) {
  {
    std::lock_guard lock(mu);
    auto it = map.find(key);
    if (it != map.end()) return it->second;
  }
  State value = compute();
  std::lock_guard lock(mu);
  return map.try_emplace(key, std::move(value)).first->second;
}

}  // namespace

VertexAlgebra::VertexAlgebra(LieSpec spec) : spec_(std::move(spec)), cache_(std::make_unique<Cache>()) {
  const auto report = validate(spec_);
  if (!report.ok()) {
    const auto& f = report.failures.front();
    throw ValidationError("invalid Lie data '" + spec_.name + "': " + f.identity + " (" + f.detail + ")");
  }
}

VertexAlgebra::~VertexAlgebra() = default;

std::size_t VertexAlgebra::cache_size() const {
  std::lock_guard lock(cache_->mu);
  return cache_->circles.size();
}

State VertexAlgebra::generator(int gen) const {
  if (gen < 0 || gen >= spec_.dim) throw IndexError("generator index out of range");
  return State::monomial(PBWMonomial{{Factor{gen, 1}}});
}

State VertexAlgebra::word(std::span<const Factor> factors, const LevelScalar& c) const {
  PBWMonomial m{std::vector<Factor>(factors.begin(), factors.end())};
  for (const auto& f : factors) {
    if (f.gen < 0 || f.gen >= spec_.dim) throw IndexError("generator index out of range");
    if (f.depth < 1) throw IndexError("creation modes need depth >= 1");
  }
  if (m.is_canonical()) return State::monomial(std::move(m), c);
  State s = State::vacuum(c);
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) s = mode_action(it->gen, -it->depth, s);
  return s;
}

State VertexAlgebra::mode_action(int gen, int mode, const State& v) const {
  if (gen < 0 || gen >= spec_.dim) throw IndexError("generator index out of range");
  State out;
  for (const auto& [m, c] : v.terms()) {
    State t = act_on_monomial(gen, mode, m);
    t *= c;
    out += t;
  }
  return out;
}

State VertexAlgebra::act_on_monomial(int gen, int mode, const PBWMonomial& v) const {
  if (mode > 0 && mode > v.weight()) return {};
  if (mode >= 0 && v.factors.empty()) return {};
  const Factor created{gen, -mode};
  if (mode < 0 && (v.factors.empty() || precedes_or_equal(created, v.factors.front()))) {
    PBWMonomial m;
    m.factors.reserve(v.factors.size() + 1);
    m.factors.push_back(created);
    m.factors.insert(m.factors.end(), v.factors.begin(), v.factors.end());
    return State::monomial(std::move(m));
  }
  return cached(cache_->mu, cache_->modes, std::make_tuple(gen, mode, v), [&] {
    // X^gen(mode) X^j(-d) rest = X^j(-d) X^gen(mode) rest + [X^gen(mode), X^j(-d)] rest
    const Factor first = v.factors.front();
    const PBWMonomial rest{std::vector<Factor>(v.factors.begin() + 1, v.factors.end())};
    State out = mode_action(first.gen, -first.depth, act_on_monomial(gen, mode, rest));
    for (int l = 0; l < spec_.dim; ++l) {
      const Rational& c = spec_.c(gen, first.gen, l);
      if (c.is_zero()) continue;
      State t = act_on_monomial(l, mode - first.depth, rest);
      t *= LevelScalar(c);
      out += t;
    }
    if (mode == first.depth && !spec_.B(gen, first.gen).is_zero()) {
      out += State::monomial(rest, LevelScalar(Rational(mode) * spec_.B(gen, first.gen)) * LevelScalar::k());
    }
    return out;
  });
}

State VertexAlgebra::circle_product(const State& a, int n, const State& b) const {
  State out;
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      State t = circle_monomials(ma, n, mb);
      if (t.is_zero()) continue;
      t *= ca * cb;
      out += t;
    }
  }
  return out;
}

State VertexAlgebra::circle_monomials(const PBWMonomial& a, int n, const PBWMonomial& b) const {
  if (a.factors.empty()) return n == -1 ? State::monomial(b) : State();
  const int wa = a.weight();
  const int wb = b.weight();
  if (wa + wb - n - 1 < 0) return {};
  const Factor head = a.factors.front();
  if (a.factors.size() == 1 && head.depth == 1) return act_on_monomial(head.gen, n, b);

  return cached(cache_->mu, cache_->circles, std::make_tuple(a, n, b), [&] {
    // a = :A u: with A = d^m X^head / m!, whose modes are
    // A_(j) = (-1)^m C(j,m) X(j-m); then
    // (:A u:)_(n) b = sum_{j>=0} A_(-1-j) u_(n+j) b + sum_{j>=0} u_(n-1-j) A_(j) b.
    const int m = head.depth - 1;
    const PBWMonomial u{std::vector<Factor>(a.factors.begin() + 1, a.factors.end())};
    const int wu = u.weight();
    State out;
    for (int j = 0; n + j <= wu + wb - 1; ++j) {
      State ub = circle_monomials(u, n + j, b);
      if (ub.is_zero()) continue;
      State t = mode_action(head.gen, -1 - j - m, ub);
      t *= LevelScalar(binomial(j + m, m));
      out += t;
    }
    const State u_state = State::monomial(u);
    for (int j = m; j - m <= wb; ++j) {
      State ab = act_on_monomial(head.gen, j - m, b);
      if (ab.is_zero()) continue;
      State t = circle_product(u_state, n - 1 - j, ab);
      t *= LevelScalar(m % 2 ? -binomial(j, m) : binomial(j, m));
      out += t;
    }
    return out;
  });
}

State VertexAlgebra::wick_chain(std::span<const State> states) const {
  if (states.empty()) return State::vacuum();
  State acc = states.back();
  for (auto it = states.rbegin() + 1; it != states.rend(); ++it) acc = wick(*it, acc);
  return acc;
}

State VertexAlgebra::derivative(const State& a) const {
  State out;
  for (const auto& [m, c] : a.terms()) {
    for (std::size_t t = 0; t < m.factors.size(); ++t) {
      std::vector<Factor> w = m.factors;
      const int depth = w[t].depth;
      ++w[t].depth;
      out += word(w, c * LevelScalar(depth));
    }
  }
  return out;
}

State VertexAlgebra::derivative(const State& a, int times) const {
  State s = a;
  for (int t = 0; t < times; ++t) s = derivative(s);
  return s;
}

OPEList VertexAlgebra::ope(const State& a, const State& b) const {
  OPEList out;
  if (a.is_zero() || b.is_zero()) return out;
  for (int n = a.max_weight() + b.max_weight() - 1; n >= 0; --n) {
    State s = circle_product(a, n, b);
    if (!s.is_zero()) out.emplace_back(n, std::move(s));
  }
  return out;
}

int VertexAlgebra::locality_order(const State& a, const State& b) const {
  const OPEList list = ope(a, b);
  return list.empty() ? 0 : list.front().first + 1;
}

ClassicalPoly VertexAlgebra::leading_symbol(const State& a) const {
  if (a.is_zero()) throw ValidationError("leading symbol of the zero state");
  const int d = a.degree();
  ClassicalPoly out;
  for (const auto& [m, c] : a.terms()) {
    if (m.degree() != d) continue;
    if (!c.is_constant()) throw ValidationError("leading symbol needs level-independent top coefficients");
    ClassicalPoly term(c.constant());
    for (const auto& f : m.factors) term = term * ClassicalPoly::variable(f.gen, f.depth - 1);
    out += term;
  }
  return out;
}

State VertexAlgebra::sugawara(const Rational& h_dual) const {
  const RationalMatrix inv = spec_.form_inverse();
  State sum;
  for (int i = 0; i < spec_.dim; ++i)
    for (int j = 0; j < spec_.dim; ++j) {
      const Rational& c = inv(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (c.is_zero()) continue;
      State t = wick(generator(i), generator(j));
      t *= LevelScalar(c);
      sum += t;
    }
  // 1 / (2k + 2 h_dual)
  const LevelScalar prefactor(LevelPolynomial(Rational(1)),
                              LevelPolynomial(std::vector<Rational>{Rational(2) * h_dual, Rational(2)}));
  sum *= prefactor;
  return sum;
}

State VertexAlgebra::apply_group_element(const RationalMatrix& mat, const State& a) const {
  State out;
  for (const auto& [m, c] : a.terms()) {
    // Expand prod_t (sum_l M(l, g_t) X^l(-d_t)).
    std::vector<std::pair<std::vector<Factor>, Rational>> words{{{}, Rational(1)}};
    for (const auto& f : m.factors) {
      std::vector<std::pair<std::vector<Factor>, Rational>> next;
      for (const auto& [w, x] : words) {
        for (int l = 0; l < spec_.dim; ++l) {
          const Rational& e = mat(static_cast<std::size_t>(l), static_cast<std::size_t>(f.gen));
          if (e.is_zero()) continue;
          auto w2 = w;
          w2.push_back(Factor{l, f.depth});
          next.emplace_back(std::move(w2), x * e);
        }
      }
      words = std::move(next);
    }
    for (const auto& [w, x] : words) out += word(w, c * LevelScalar(x));
  }
  return out;
}

State VertexAlgebra::lie_act(const RationalMatrix& rho, const State& a) const {
  State out;
  for (const auto& [m, c] : a.terms()) {
    for (std::size_t t = 0; t < m.factors.size(); ++t) {
      for (int l = 0; l < spec_.dim; ++l) {
        const Rational& e = rho(static_cast<std::size_t>(l), static_cast<std::size_t>(m.factors[t].gen));
        if (e.is_zero()) continue;
        std::vector<Factor> w = m.factors;
        w[t].gen = l;
        out += word(w, c * LevelScalar(e));
      }
    }
  }
  return out;
}

// --------------------------------------------------------------- rendering

namespace {

bool single_term(const LevelScalar& c) {
  if (!c.is_polynomial()) return false;
  int nonzero = 0;
  for (const auto& x : c.numerator().coefficients())
    if (!x.is_zero()) ++nonzero;
  return nonzero <= 1;
}

bool negative_single_term(const LevelScalar& c) {
  return single_term(c) && c.numerator().leading().sign() < 0;
}

}  // namespace

std::string VertexAlgebra::render(const State& a) const {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c0] : a.terms()) {
    LevelScalar c = c0;
    if (!first) {
      if (negative_single_term(c)) {
        out += " - ";
        c = -c;
      } else {
        out += " + ";
      }
    }
    std::string mono;
    for (const auto& f : m.factors)
      mono += spec_.labels[static_cast<std::size_t>(f.gen)] + "(-" + std::to_string(f.depth) + ")";
    std::string coeff = c.str();
    if (mono.empty()) {
      out += single_term(c) ? coeff : "(" + coeff + ")";
    } else if (c.is_one()) {
      out += mono;
    } else if (c == LevelScalar(-1)) {
      out += "-" + mono;
    } else {
      out += (single_term(c) ? coeff : "(" + coeff + ")") + " " + mono;
    }
    first = false;
  }
  return out;
}

std::string VertexAlgebra::render_ope(const std::string& left, const std::string& right, const OPEList& list) const {
  std::string out = left + "(z)" + right + "(w) ~ ";
  if (list.empty()) return out + "0";
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& [n, s] = list[i];
    if (i) out += " + ";
    const std::string body = render(s);
    out += (s.size() == 1 ? body : "(" + body + ")") + " (z-w)^-" + std::to_string(n + 1);
  }
  return out;
}

State VertexAlgebra::parse_state(std::string_view text) const {
  std::string t;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
  if (t == "1" || t == "vac" || t == "|0>") return State::vacuum();
  std::vector<Factor> factors;
  std::size_t pos = 0;
  auto fail = [&]() { throw ParseError("malformed state '" + std::string(text) + "'"); };
  while (pos < t.size()) {
    const std::size_t start = pos;
    if (!(std::isalpha(static_cast<unsigned char>(t[pos])) || t[pos] == '_')) fail();
    while (pos < t.size() && (std::isalnum(static_cast<unsigned char>(t[pos])) || t[pos] == '_')) ++pos;
    const std::string label = t.substr(start, pos - start);
    const auto gen = spec_.index_of(label);
    if (!gen) throw ParseError("unknown generator '" + label + "' in algebra " + spec_.name);
    int depth = 1;
    if (pos < t.size() && t[pos] == '(') {
      const auto close = t.find(')', pos);
      if (close == std::string::npos || pos + 1 >= close || t[pos + 1] != '-') fail();
      const std::string digits = t.substr(pos + 2, close - pos - 2);
      if (digits.empty() || digits.size() > 6 || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
        fail();
      depth = std::stoi(digits);
      if (depth < 1) fail();
      pos = close + 1;
    }
    factors.push_back(Factor{*gen, depth});
  }
  if (factors.empty()) fail();
  return word(factors);
}

nlohmann::json VertexAlgebra::to_json(const State& a) const {
  auto terms = nlohmann::json::array();
  for (const auto& [m, c] : a.terms()) {
    auto mono = nlohmann::json::array();
    for (const auto& f : m.factors) mono.push_back({f.gen, f.depth});
    nlohmann::json coeff;
    voa::to_json(coeff, c);
    terms.push_back({{"monomial", mono}, {"coeff", coeff}});
  }
  return {{"algebra", spec_.name}, {"terms", terms}};
}

State VertexAlgebra::state_from_json(const nlohmann::json& j) const {
  State out;
  for (const auto& term : j.at("terms")) {
    std::vector<Factor> w;
    for (const auto& f : term.at("monomial")) w.push_back(Factor{f.at(0).get<int>(), f.at(1).get<int>()});
    out += word(w, term.at("coeff").get<LevelScalar>());
  }
  return out;
}

}  // namespace voa
