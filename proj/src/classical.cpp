#include "voa/classical.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "voa/errors.hpp"
#include "voa/linalg.hpp"

namespace voa {

// ------------------------------------------------------------- VarMonomial

int VarMonomial::degree() const {
  int d = 0;
  for (const auto& [v, e] : powers) d += e;
  return d;
}

int VarMonomial::weight() const {
  int w = 0;
  for (const auto& [v, e] : powers) w += (v.level + 1) * e;
  return w;
}

int VarMonomial::exponent(const Variable& v) const {
  for (const auto& [u, e] : powers)
    if (u == v) return e;
  return 0;
}

VarMonomial operator*(const VarMonomial& a, const VarMonomial& b) {
  VarMonomial r;
  auto i = a.powers.begin();
  auto j = b.powers.begin();
  while (i != a.powers.end() || j != b.powers.end()) {
    if (j == b.powers.end() || (i != a.powers.end() && i->first < j->first)) {
      r.powers.push_back(*i++);
    } else if (i == a.powers.end() || j->first < i->first) {
      r.powers.push_back(*j++);
    } else {
      r.powers.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return r;
}

// ----------------------------------------------------------- ClassicalPoly

ClassicalPoly::ClassicalPoly(const Rational& c) {
  if (!c.is_zero()) terms_[VarMonomial{}] = c;
}

ClassicalPoly ClassicalPoly::variable(int gen, int level) {
  ClassicalPoly p;
  p.terms_[VarMonomial{{{Variable{gen, level}, 1}}}] = Rational(1);
  return p;
}

void ClassicalPoly::add_term(const VarMonomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int ClassicalPoly::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

bool ClassicalPoly::is_weight_homogeneous() const {
  if (terms_.empty()) return true;
  const int w = terms_.begin()->first.weight();
  return std::all_of(terms_.begin(), terms_.end(), [w](const auto& t) { return t.first.weight() == w; });
}

int ClassicalPoly::weight() const { return terms_.empty() ? -1 : terms_.begin()->first.weight(); }

int ClassicalPoly::level_degree(int level) const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int e = 0;
    for (const auto& [v, p] : m.powers)
      if (v.level == level) e += p;
    if (d >= 0 && d != e) return -1;
    d = e;
  }
  return d;
}

ClassicalPoly ClassicalPoly::partial(const Variable& v) const {
  ClassicalPoly r;
  for (const auto& [m, c] : terms_) {
    const int e = m.exponent(v);
    if (e == 0) continue;
    VarMonomial d;
    for (const auto& [u, p] : m.powers) {
      if (u == v) {
        if (p > 1) d.powers.emplace_back(u, p - 1);
      } else {
        d.powers.emplace_back(u, p);
      }
    }
    r.add_term(d, c * Rational(e));
  }
  return r;
}

ClassicalPoly ClassicalPoly::normalized() const {
  if (terms_.empty()) return {};
  return terms_.begin()->second.inverse() * *this;
}

ClassicalPoly& ClassicalPoly::operator+=(const ClassicalPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

ClassicalPoly& ClassicalPoly::operator-=(const ClassicalPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

ClassicalPoly operator*(const ClassicalPoly& a, const ClassicalPoly& b) {
  ClassicalPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

ClassicalPoly operator*(const Rational& c, const ClassicalPoly& p) {
  ClassicalPoly r;
  if (c.is_zero()) return r;
  for (const auto& [m, x] : p.terms_) r.terms_[m] = x * c;
  return r;
}

namespace {

template <class Terms, class RenderMonomial>
std::string render_terms(const Terms& terms, RenderMonomial render) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const std::string mono = render(m);
    Rational a = c;
    if (first) {
      if (c.sign() < 0) {
        out += "-";
        a = -c;
      }
    } else {
      out += c.sign() < 0 ? " - " : " + ";
      if (c.sign() < 0) a = -c;
    }
    if (mono.empty()) {
      out += a.str();
    } else if (a == Rational(1)) {
      out += mono;
    } else {
      out += a.str() + "*" + mono;
    }
    first = false;
  }
  return out;
}

}  // namespace

std::string ClassicalPoly::str() const {
  return render_terms(terms_, [](const VarMonomial& m) {
    std::string s;
    for (const auto& [v, e] : m.powers) {
      if (!s.empty()) s += "*";
      s += "x[" + std::to_string(v.gen) + "," + std::to_string(v.level) + "]";
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  });
}

nlohmann::json to_json(const ClassicalPoly& p) {
  auto arr = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    auto mono = nlohmann::json::array();
    for (const auto& [v, e] : m.powers) mono.push_back({v.gen, v.level, e});
    arr.push_back({{"monomial", mono}, {"coeff", c.str()}});
  }
  return arr;
}

// -------------------------------------------------------------- generators

ClassicalPoly weyl_q(int n, int a, int b) {
  ClassicalPoly p;
  for (int i = 0; i < n; ++i) p += ClassicalPoly::variable(i, a) * ClassicalPoly::variable(i, b);
  return p;
}

ClassicalPoly sl2_q(int i, int j) {
  auto v = [](int g, int lvl) { return ClassicalPoly::variable(g, lvl); };
  return v(kSl2H, i) * v(kSl2H, j) + Rational(2) * (v(kSl2X, i) * v(kSl2Y, j)) +
         Rational(2) * (v(kSl2X, j) * v(kSl2Y, i));
}

ClassicalPoly sl2_c(int k, int l, int m) {
  const int rows[3] = {k, l, m};
  const int cols[3] = {kSl2H, kSl2X, kSl2Y};
  int perm[3] = {0, 1, 2};
  ClassicalPoly det;
  do {
    int inversions = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        if (perm[a] > perm[b]) ++inversions;
    ClassicalPoly term(Rational(inversions % 2 ? -1 : 1));
    for (int r = 0; r < 3; ++r) term = term * ClassicalPoly::variable(cols[perm[r]], rows[r]);
    det += term;
  } while (std::next_permutation(perm, perm + 3));
  return det;
}

// ----------------------------------------------------------------- QSymbol

int QSymbol::weight() const {
  return std::accumulate(idx.begin(), idx.end(), 0) + (kind == Kind::Q ? 2 : 3);
}

int QSymbol::degree() const { return kind == Kind::Q ? 2 : 3; }

std::string QSymbol::str() const {
  std::string s = kind == Kind::Q ? "Q[" : "C[";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
  return s + "]";
}

int QMonomial::weight() const {
  int w = 0;
  for (const auto& [s, e] : powers) w += s.weight() * e;
  return w;
}

int QMonomial::degree() const {
  int d = 0;
  for (const auto& [s, e] : powers) d += s.degree() * e;
  return d;
}

QMonomial operator*(const QMonomial& a, const QMonomial& b) {
  QMonomial r;
  auto i = a.powers.begin();
  auto j = b.powers.begin();
  while (i != a.powers.end() || j != b.powers.end()) {
    if (j == b.powers.end() || (i != a.powers.end() && i->first < j->first)) {
      r.powers.push_back(*i++);
    } else if (i == a.powers.end() || j->first < i->first) {
      r.powers.push_back(*j++);
    } else {
      r.powers.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return r;
}

QSymbolPoly::QSymbolPoly(const Rational& c) {
  if (!c.is_zero()) terms_[QMonomial{}] = c;
}

QSymbolPoly QSymbolPoly::Q(int a, int b) {
  if (a < 0 || b < 0) throw IndexError("negative Q index");
  QSymbolPoly p;
  p.terms_[QMonomial{{{QSymbol{QSymbol::Kind::Q, {std::min(a, b), std::max(a, b)}}, 1}}}] = Rational(1);
  return p;
}

QSymbolPoly QSymbolPoly::C(int k, int l, int m) {
  if (k < 0 || l < 0 || m < 0) throw IndexError("negative C index");
  std::vector<int> v{k, l, m};
  int sign = 1;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b + 1 < 3 - a; ++b)
      if (v[static_cast<std::size_t>(b)] > v[static_cast<std::size_t>(b + 1)]) {
        std::swap(v[static_cast<std::size_t>(b)], v[static_cast<std::size_t>(b + 1)]);
        sign = -sign;
      }
  if (v[0] == v[1] || v[1] == v[2]) return {};
  QSymbolPoly p;
  p.terms_[QMonomial{{{QSymbol{QSymbol::Kind::C, v}, 1}}}] = Rational(sign);
  return p;
}

void QSymbolPoly::add_term(const QMonomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational QSymbolPoly::coefficient(const QMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

QSymbolPoly& QSymbolPoly::operator+=(const QSymbolPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

QSymbolPoly& QSymbolPoly::operator-=(const QSymbolPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

QSymbolPoly operator*(const QSymbolPoly& a, const QSymbolPoly& b) {
  QSymbolPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

QSymbolPoly operator*(const Rational& c, const QSymbolPoly& p) {
  QSymbolPoly r;
  for (const auto& [m, x] : p.terms_) r.add_term(m, x * c);
  return r;
}

std::string QSymbolPoly::str() const {
  return render_terms(terms_, [](const QMonomial& m) {
    std::string s;
    for (const auto& [sym, e] : m.powers) {
      if (!s.empty()) s += "*";
      s += sym.str();
      if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
  });
}

nlohmann::json to_json(const QSymbolPoly& p) {
  auto arr = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    auto mono = nlohmann::json::array();
    for (const auto& [s, e] : m.powers) mono.push_back({{"symbol", s.str()}, {"power", e}});
    arr.push_back({{"monomial", mono}, {"coeff", c.str()}});
  }
  return arr;
}

namespace {

// Determinant by permutation expansion of a square matrix of polynomials.
template <class Poly, class Entry>
Poly permutation_determinant(int size, Entry entry) {
  std::vector<int> perm(static_cast<std::size_t>(size));
  std::iota(perm.begin(), perm.end(), 0);
  Poly det;
  do {
    int inversions = 0;
    for (int a = 0; a < size; ++a)
      for (int b = a + 1; b < size; ++b)
        if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inversions;
    Poly term(Rational(inversions % 2 ? -1 : 1));
    for (int r = 0; r < size; ++r) term = term * entry(r, perm[static_cast<std::size_t>(r)]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

void require_increasing(const std::vector<int>& v, std::size_t len, const char* name) {
  if (v.size() != len)
    throw IndexError(std::string(name) + " must have " + std::to_string(len) + " entries");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0) throw IndexError(std::string(name) + " has a negative entry");
    if (i > 0 && v[i] <= v[i - 1]) throw IndexError(std::string(name) + " must be strictly increasing");
  }
}

}  // namespace

QSymbolPoly det_relation(int n, const std::vector<int>& I, const std::vector<int>& J) {
  if (n < 1) throw IndexError("det_relation needs n >= 1");
  const auto len = static_cast<std::size_t>(n + 1);
  require_increasing(I, len, "I");
  require_increasing(J, len, "J");
  return permutation_determinant<QSymbolPoly>(n + 1, [&](int r, int s) {
    return QSymbolPoly::Q(I[static_cast<std::size_t>(r)], J[static_cast<std::size_t>(s)]);
  });
}

namespace {

template <class SymbolImage>
ClassicalPoly substitute_with(const QSymbolPoly& p, SymbolImage image) {
  std::map<QSymbol, ClassicalPoly> cache;
  ClassicalPoly out;
  for (const auto& [m, c] : p.terms()) {
    ClassicalPoly term(c);
    for (const auto& [sym, e] : m.powers) {
      auto it = cache.find(sym);
      if (it == cache.end()) it = cache.emplace(sym, image(sym)).first;
      for (int t = 0; t < e; ++t) term = term * it->second;
    }
    out += term;
  }
  return out;
}

}  // namespace

ClassicalPoly substitute(const QSymbolPoly& p, int n) {
  return substitute_with(p, [n](const QSymbol& s) {
    if (s.kind != QSymbol::Kind::Q) throw UnknownSymbol("C symbols have no O(n) image");
    return weyl_q(n, s.idx[0], s.idx[1]);
  });
}

ClassicalPoly substitute_sl2(const QSymbolPoly& p) {
  return substitute_with(p, [](const QSymbol& s) {
    return s.kind == QSymbol::Kind::Q ? sl2_q(s.idx[0], s.idx[1]) : sl2_c(s.idx[0], s.idx[1], s.idx[2]);
  });
}

QSymbolPoly sl2_relation_type1(int i, int j, int k, int l, int m) {
  using P = QSymbolPoly;
  return P::Q(i, j) * P::C(k, l, m) - P::Q(k, j) * P::C(i, l, m) - P::Q(l, j) * P::C(k, i, m) -
         P::Q(m, j) * P::C(k, l, i);
}

QSymbolPoly sl2_relation_type2(int i, int j, int k, int l, int m, int n) {
  const int rows[3] = {i, j, k};
  const int cols[3] = {l, m, n};
  const QSymbolPoly det = permutation_determinant<QSymbolPoly>(3, [&](int r, int s) {
    return QSymbolPoly::Q(rows[r], cols[s]);
  });
  return QSymbolPoly::C(i, j, k) * QSymbolPoly::C(l, m, n) + Rational(mpz_class(1), mpz_class(4)) * det;
}

QSymbolPoly symbol_derivative(const QSymbolPoly& p) {
  auto symbol_poly = [](const QSymbol& s) {
    return s.kind == QSymbol::Kind::Q ? QSymbolPoly::Q(s.idx[0], s.idx[1])
                                      : QSymbolPoly::C(s.idx[0], s.idx[1], s.idx[2]);
  };
  auto d_symbol = [](const QSymbol& s) {
    QSymbolPoly r;
    if (s.kind == QSymbol::Kind::Q) {
      r += QSymbolPoly::Q(s.idx[0] + 1, s.idx[1]);
      r += QSymbolPoly::Q(s.idx[0], s.idx[1] + 1);
    } else {
      r += QSymbolPoly::C(s.idx[0] + 1, s.idx[1], s.idx[2]);
      r += QSymbolPoly::C(s.idx[0], s.idx[1] + 1, s.idx[2]);
      r += QSymbolPoly::C(s.idx[0], s.idx[1], s.idx[2] + 1);
    }
    return r;
  };
  QSymbolPoly out;
  for (const auto& [m, c] : p.terms()) {
    // Leibniz over the expanded factor list.
    std::vector<QSymbol> factors;
    for (const auto& [s, e] : m.powers)
      for (int t = 0; t < e; ++t) factors.push_back(s);
    for (std::size_t t = 0; t < factors.size(); ++t) {
      QSymbolPoly term(c);
      for (std::size_t u = 0; u < factors.size(); ++u)
        term = term * (u == t ? d_symbol(factors[u]) : symbol_poly(factors[u]));
      out += term;
    }
  }
  return out;
}

// --------------------------------------------------------------- operators

namespace {

// Applies the derivation determined by a per-variable image.
template <class Image>
ClassicalPoly apply_derivation(const ClassicalPoly& p, Image image) {
  ClassicalPoly out;
  for (const auto& [m, c] : p.terms()) {
    for (const auto& [v, e] : m.powers) {
      const ClassicalPoly img = image(v);
      if (img.is_zero()) continue;
      VarMonomial rest;
      for (const auto& [u, q] : m.powers) {
        const int exp = u == v ? q - 1 : q;
        if (exp > 0) rest.powers.emplace_back(u, exp);
      }
      ClassicalPoly lhs;
      lhs.add_term(rest, c * Rational(e));
      out += lhs * img;
    }
  }
  return out;
}

}  // namespace

ClassicalPoly polarization(int r, int s, const ClassicalPoly& p) {
  return apply_derivation(p, [r, s](const Variable& v) {
    return v.level == s ? ClassicalPoly::variable(v.gen, r) : ClassicalPoly();
  });
}

ClassicalPoly d_ring_derivative(const ClassicalPoly& p) {
  return apply_derivation(p, [](const Variable& v) { return ClassicalPoly::variable(v.gen, v.level + 1); });
}

ClassicalPoly lie_apply(const RationalMatrix& rho, const ClassicalPoly& p) {
  return apply_derivation(p, [&rho](const Variable& v) {
    ClassicalPoly img;
    for (std::size_t l = 0; l < rho.rows(); ++l) {
      const Rational& c = rho(l, static_cast<std::size_t>(v.gen));
      if (!c.is_zero()) img += c * ClassicalPoly::variable(static_cast<int>(l), v.level);
    }
    return img;
  });
}

ClassicalPoly group_apply(const RationalMatrix& mat, const ClassicalPoly& p) {
  std::map<Variable, ClassicalPoly> cache;
  ClassicalPoly out;
  for (const auto& [m, c] : p.terms()) {
    ClassicalPoly term(c);
    for (const auto& [v, e] : m.powers) {
      auto it = cache.find(v);
      if (it == cache.end()) {
        ClassicalPoly img;
        for (std::size_t l = 0; l < mat.rows(); ++l) {
          const Rational& x = mat(l, static_cast<std::size_t>(v.gen));
          if (!x.is_zero()) img += x * ClassicalPoly::variable(static_cast<int>(l), v.level);
        }
        it = cache.emplace(v, std::move(img)).first;
      }
      for (int t = 0; t < e; ++t) term = term * it->second;
    }
    out += term;
  }
  return out;
}

bool lie_invariance_check(const ActionSpec& action, const ClassicalPoly& p) {
  for (const auto& rho : action.lie_generators)
    if (!lie_apply(rho, p).is_zero()) return false;
  for (const auto& m : action.finite_elements)
    if (group_apply(m, p) != p) return false;
  return true;
}

namespace {

// Rank of a family of polynomials viewed as coefficient vectors.
std::size_t polynomial_rank(const std::vector<ClassicalPoly>& polys) {
  std::map<VarMonomial, std::size_t> column;
  for (const auto& p : polys)
    for (const auto& [m, c] : p.terms()) column.try_emplace(m, column.size());
  DenseMatrix<Rational> mat(polys.size(), column.size());
  for (std::size_t r = 0; r < polys.size(); ++r)
    for (const auto& [m, c] : polys[r].terms()) mat(r, column[m]) = c;
  return rank(std::move(mat));
}

void enumerate_q_monomials(int weight, int min_a, int min_b, QMonomial& current,
                           std::vector<QMonomial>& out) {
  // Symbols are generated in nondecreasing (a, b) order to list multisets once.
  if (weight == 0) {
    out.push_back(current);
    return;
  }
  for (int a = min_a; a + a + 2 <= weight; ++a) {
    for (int b = (a == min_a ? std::max(min_b, a) : a); a + b + 2 <= weight; ++b) {
      QSymbol s{QSymbol::Kind::Q, {a, b}};
      QMonomial next = current * QMonomial{{{s, 1}}};
      enumerate_q_monomials(weight - (a + b + 2), a, b, next, out);
    }
  }
}

}  // namespace

std::size_t weyl_graded_dimension(int n, int weight) {
  if (weight < 0) return 0;
  std::vector<QMonomial> monos;
  QMonomial empty;
  enumerate_q_monomials(weight, 0, 0, empty, monos);
  std::vector<ClassicalPoly> images;
  for (const auto& m : monos) {
    QSymbolPoly p;
    p.add_term(m, Rational(1));
    images.push_back(substitute(p, n));
  }
  return polynomial_rank(images);
}

std::vector<ClassicalPoly> minimal_d_ring_generators(const std::vector<ClassicalPoly>& seeds, int max_weight) {
  // Polarization closure, up to scalars.
  std::set<ClassicalPoly> seen;
  std::vector<ClassicalPoly> queue;
  for (const auto& s : seeds) {
    if (s.is_zero() || s.weight() > max_weight) continue;
    if (seen.insert(s.normalized()).second) queue.push_back(s.normalized());
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const ClassicalPoly p = queue[head];
    std::set<int> levels;
    for (const auto& [m, c] : p.terms())
      for (const auto& [v, e] : m.powers) levels.insert(v.level);
    for (int s : levels) {
      for (int r = 0; p.weight() + r - s <= max_weight; ++r) {
        if (r == s) continue;
        ClassicalPoly q = polarization(r, s, p);
        if (q.is_zero()) continue;
        q = q.normalized();
        if (seen.insert(q).second) queue.push_back(q);
      }
    }
  }
  std::vector<ClassicalPoly> candidates(queue.begin(), queue.end());
  std::stable_sort(candidates.begin(), candidates.end(), [](const ClassicalPoly& a, const ClassicalPoly& b) {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a < b;
  });

  std::vector<ClassicalPoly> survivors;
  std::vector<std::vector<ClassicalPoly>> derivatives;  // derivatives[s][k] = d^k survivor s
  for (const auto& cand : candidates) {
    const int w = cand.weight();
    const int d = cand.degree();
    std::vector<ClassicalPoly> span;
    // Products of derivatives of survivors with total weight w and degree d.
    std::function<void(std::size_t, int, int, ClassicalPoly)> grow = [&](std::size_t from, int wleft, int dleft,
                                                                           ClassicalPoly acc) {
      if (dleft == 0) {
        if (wleft == 0) span.push_back(std::move(acc));
        return;
      }
      for (std::size_t s = from; s < survivors.size(); ++s) {
        const int sw = survivors[s].weight();
        const int sd = survivors[s].degree();
        if (sd > dleft) continue;
        for (int k = 0; sw + k <= wleft; ++k) {
          while (static_cast<int>(derivatives[s].size()) <= k)
            derivatives[s].push_back(d_ring_derivative(derivatives[s].back()));
          grow(s, wleft - sw - k, dleft - sd, acc * derivatives[s][static_cast<std::size_t>(k)]);
        }
      }
    };
    grow(0, w, d, ClassicalPoly(Rational(1)));
    const std::size_t before = polynomial_rank(span);
    span.push_back(cand);
    if (polynomial_rank(span) > before) {
      survivors.push_back(cand);
      derivatives.push_back({cand});
    }
  }
  return survivors;
}

}  // namespace voa
