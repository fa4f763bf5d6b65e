#ifndef VOA_CLASSICAL_HPP
#define VOA_CLASSICAL_HPP

// Classical invariant theory on Sym(V_0 + V_1 + ...): Weyl's O(n)
// generators and determinantal relations, the sl2-adjoint generators and
// relations, polarization operators and invariance checks.

#include <compare>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "voa/liedata.hpp"
#include "voa/scalars.hpp"

namespace voa {

/// x_{gen,level}: the image of the level-th derivative copy of basis vector
/// `gen`. Weight is level + 1.
struct Variable {
  int gen = 0;
  int level = 0;
  friend auto operator<=>(const Variable&, const Variable&) = default;
};

/// Sorted (variable, exponent) list with positive exponents.
struct VarMonomial {
  std::vector<std::pair<Variable, int>> powers;

  int degree() const;
  int weight() const;
  int exponent(const Variable& v) const;
  friend auto operator<=>(const VarMonomial&, const VarMonomial&) = default;
  friend VarMonomial operator*(const VarMonomial& a, const VarMonomial& b);
};

class ClassicalPoly {
 public:
  using Terms = std::map<VarMonomial, Rational>;

  ClassicalPoly() = default;
  explicit ClassicalPoly(const Rational& c);
  static ClassicalPoly variable(int gen, int level);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  void add_term(const VarMonomial& m, const Rational& c);

  /// Max total degree; -1 for zero.
  int degree() const;
  bool is_weight_homogeneous() const;
  /// Weight of the (first) term; -1 for zero.
  int weight() const;
  /// Degree counted only in the level-0 variables, when homogeneous in them.
  int level_degree(int level) const;

  /// Partial derivative with respect to one variable.
  ClassicalPoly partial(const Variable& v) const;
  /// Rescales so the first term has coefficient 1.
  ClassicalPoly normalized() const;

  ClassicalPoly& operator+=(const ClassicalPoly& o);
  ClassicalPoly& operator-=(const ClassicalPoly& o);
  friend ClassicalPoly operator+(ClassicalPoly a, const ClassicalPoly& b) { return a += b; }
  friend ClassicalPoly operator-(ClassicalPoly a, const ClassicalPoly& b) { return a -= b; }
  friend ClassicalPoly operator*(const ClassicalPoly& a, const ClassicalPoly& b);
  friend ClassicalPoly operator*(const Rational& c, const ClassicalPoly& p);
  friend bool operator==(const ClassicalPoly&, const ClassicalPoly&) = default;
  friend auto operator<=>(const ClassicalPoly& a, const ClassicalPoly& b) {
    return a.terms_ <=> b.terms_;
  }

  /// Variables render as "x[i,j]".
  std::string str() const;

 private:
  Terms terms_;
};

nlohmann::json to_json(const ClassicalPoly& p);

// ---------------------------------------------------------------- generators

/// q_{a,b} = sum_i x_{i,a} x_{i,b}.
ClassicalPoly weyl_q(int n, int a, int b);

/// sl2 adjoint variables use the generator indices of sl2_spec(): x=0, y=1, h=2.
inline constexpr int kSl2X = 0;
inline constexpr int kSl2Y = 1;
inline constexpr int kSl2H = 2;

/// q_{ij} = a^h_i a^h_j + 2 a^x_i a^y_j + 2 a^x_j a^y_i.
ClassicalPoly sl2_q(int i, int j);
/// 3x3 determinant with rows (a^h_r, a^x_r, a^y_r) for r = k, l, m.
ClassicalPoly sl2_c(int k, int l, int m);

// ---------------------------------------------------------- symbolic ring

/// Abstract generator symbol: Q_{a,b} (stored a <= b) or C_{k,l,m} (stored
/// strictly increasing).
struct QSymbol {
  enum class Kind { Q, C };
  Kind kind = Kind::Q;
  std::vector<int> idx;

  int weight() const;  // a+b+2 or k+l+m+3
  int degree() const;  // 2 or 3
  std::string str() const;
  friend auto operator<=>(const QSymbol&, const QSymbol&) = default;
};

struct QMonomial {
  std::vector<std::pair<QSymbol, int>> powers;
  int weight() const;
  int degree() const;
  friend auto operator<=>(const QMonomial&, const QMonomial&) = default;
  friend QMonomial operator*(const QMonomial& a, const QMonomial& b);
};

class QSymbolPoly {
 public:
  using Terms = std::map<QMonomial, Rational>;

  QSymbolPoly() = default;
  explicit QSymbolPoly(const Rational& c);
  static QSymbolPoly Q(int a, int b);
  /// Antisymmetric: unsorted indices give the permutation sign, repeats zero.
  static QSymbolPoly C(int k, int l, int m);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  void add_term(const QMonomial& m, const Rational& c);
  Rational coefficient(const QMonomial& m) const;

  QSymbolPoly& operator+=(const QSymbolPoly& o);
  QSymbolPoly& operator-=(const QSymbolPoly& o);
  friend QSymbolPoly operator+(QSymbolPoly a, const QSymbolPoly& b) { return a += b; }
  friend QSymbolPoly operator-(QSymbolPoly a, const QSymbolPoly& b) { return a -= b; }
  friend QSymbolPoly operator*(const QSymbolPoly& a, const QSymbolPoly& b);
  friend QSymbolPoly operator*(const Rational& c, const QSymbolPoly& p);
  friend bool operator==(const QSymbolPoly&, const QSymbolPoly&) = default;

  /// Symbols render as "Q[a,b]" and "C[k,l,m]".
  std::string str() const;

 private:
  Terms terms_;
};

nlohmann::json to_json(const QSymbolPoly& p);

/// (n+1)x(n+1) determinant of Q_{i_r, j_s}; I and J strictly increasing of
/// length n+1 (IndexError otherwise).
QSymbolPoly det_relation(int n, const std::vector<int>& I, const std::vector<int>& J);

/// Q_{a,b} -> weyl_q(n,a,b). C symbols are rejected.
ClassicalPoly substitute(const QSymbolPoly& p, int n);
/// Q_{i,j} -> sl2_q(i,j), C_{k,l,m} -> sl2_c(k,l,m).
ClassicalPoly substitute_sl2(const QSymbolPoly& p);

/// q_ij c_klm - q_kj c_ilm - q_lj c_kim - q_mj c_kli, i.e. the alternating
/// expansion q_ij c_klm - q_kj c_ilm + q_lj c_ikm - q_mj c_ikl.
QSymbolPoly sl2_relation_type1(int i, int j, int k, int l, int m);
/// c_ijk c_lmn + (1/4) det[q_{il} q_{im} q_{in}; q_{jl} ...; q_{kl} ...].
QSymbolPoly sl2_relation_type2(int i, int j, int k, int l, int m, int n);

/// Derivation Q_{a,b} -> Q_{a+1,b} + Q_{a,b+1}, C likewise on each index.
QSymbolPoly symbol_derivative(const QSymbolPoly& p);

// ------------------------------------------------------------ operators

/// D_{r,s} = sum_i x_{i,r} d/dx_{i,s}.
ClassicalPoly polarization(int r, int s, const ClassicalPoly& p);
/// The derivation x_{i,j} -> x_{i,j+1}.
ClassicalPoly d_ring_derivative(const ClassicalPoly& p);

/// Derivation induced by rho: x_{i,j} -> sum_l rho(l,i) x_{l,j}.
ClassicalPoly lie_apply(const RationalMatrix& rho, const ClassicalPoly& p);
/// Algebra automorphism induced by M: x_{i,j} -> sum_l M(l,i) x_{l,j}.
ClassicalPoly group_apply(const RationalMatrix& m, const ClassicalPoly& p);
/// True iff every Lie generator annihilates p and every finite element fixes p.
bool lie_invariance_check(const ActionSpec& action, const ClassicalPoly& p);

/// Dimension of the weight-w component of C[Q_{a,b}] / I_n, computed as the
/// rank of the substituted Q-monomials of weight w.
std::size_t weyl_graded_dimension(int n, int weight);

/// Greedy minimal generating set of the invariant ring as a d-ring: closes
/// `seeds` under polarizations up to `max_weight`, orders candidates by
/// (weight, degree, polynomial), and keeps each candidate not in the span of
/// products of derivatives of earlier survivors.
std::vector<ClassicalPoly> minimal_d_ring_generators(const std::vector<ClassicalPoly>& seeds, int max_weight);

}  // namespace voa

#endif  // VOA_CLASSICAL_HPP
