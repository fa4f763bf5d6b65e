#ifndef VOA_ORBIFOLD_HPP
#define VOA_ORBIFOLD_HPP

// Orbifold machinery: invariant subspaces, the Heisenberg generators
// omega_{a,b} and j^{2m}, formal normally ordered polynomials in declared
// generators, quantum corrections of classical relations, the remainder
// projection and decoupling relations.

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "voa/classical.hpp"
#include "voa/liedata.hpp"
#include "voa/scalars.hpp"
#include "voa/vertexcore.hpp"

namespace voa {

/// Generator name such as Omega[0,2], J[4], Q[0,1] or C[0,1,2].
struct Symbol {
  std::string family;
  std::vector<int> idx;

  std::string str() const;
  /// Inverse of str().
  static Symbol parse(std::string_view text);
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

Symbol omega_symbol(int a, int b);  // indices stored sorted
Symbol j_symbol(int two_m);

/// D^derivs applied to a symbol.
struct NOPFactor {
  Symbol symbol;
  int derivs = 0;
  friend auto operator<=>(const NOPFactor&, const NOPFactor&) = default;
};

/// Sorted factor list; the empty monomial is the vacuum.
struct NOPMonomial {
  std::vector<NOPFactor> factors;
  friend auto operator<=>(const NOPMonomial&, const NOPMonomial&) = default;
};

class GeneratorDictionary;

/// Formal normally ordered polynomial: evaluates monomials as right-nested
/// Wick products of the (differentiated) factors in canonical order.
class FormalNOP {
 public:
  using Terms = std::map<NOPMonomial, LevelScalar>;

  FormalNOP() = default;
  static FormalNOP symbol(const Symbol& s, int derivs = 0);
  /// Sorts the factors.
  static FormalNOP monomial(std::vector<NOPFactor> factors, const LevelScalar& c = LevelScalar(1));

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  void add_term(NOPMonomial m, const LevelScalar& c);
  LevelScalar coefficient(const NOPMonomial& m) const;

  /// Max declared degree of a term; -1 for zero.
  int degree(const GeneratorDictionary& dict) const;
  /// Terms of declared degree exactly d.
  FormalNOP degree_part(int d, const GeneratorDictionary& dict) const;

  FormalNOP& operator+=(const FormalNOP& o);
  FormalNOP& operator-=(const FormalNOP& o);
  FormalNOP& operator*=(const LevelScalar& c);
  friend FormalNOP operator+(FormalNOP a, const FormalNOP& b) { return a += b; }
  friend FormalNOP operator-(FormalNOP a, const FormalNOP& b) { return a -= b; }
  friend FormalNOP operator*(const LevelScalar& c, FormalNOP a) { return a *= c; }
  friend bool operator==(const FormalNOP&, const FormalNOP&) = default;

  /// "(c) * :D^a Sym[i,j] Sym[k,l]:" terms joined by " + "; "0" when empty.
  std::string str() const;

 private:
  Terms terms_;
};

nlohmann::json to_json(const FormalNOP& p);

class GeneratorDictionary {
 public:
  struct Entry {
    State state;
    int degree = 0;
    int weight = 0;
  };

  /// Throws ValidationError unless the state is weight-homogeneous with the
  /// declared weight and has the declared degree.
  void add(const Symbol& s, State state, int degree, int weight);
  /// Declares the state's own weight and degree.
  void add(const Symbol& s, State state);

  bool contains(const Symbol& s) const { return entries_.count(s) > 0; }
  /// Throws UnknownSymbol.
  const Entry& at(const Symbol& s) const;
  const std::map<Symbol, Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<Symbol, Entry> entries_;
};

/// Basis of the weight-w invariants in reduced echelon form over the
/// canonical monomial order.
std::vector<State> invariant_subspace(const VertexAlgebra& v, const ActionSpec& action, int weight);

/// Whether every Lie generator annihilates a and every finite element fixes it.
bool is_invariant(const VertexAlgebra& v, const ActionSpec& action, const State& a);

/// sum_i :d^a alpha^i d^b alpha^i: over a Heisenberg algebra.
State omega(const VertexAlgebra& heis, int a, int b);
/// omega(0, 2m).
State j_gen(const VertexAlgebra& heis, int two_m);
/// All Omega[a,b] (a <= b) up to the given weight.
GeneratorDictionary omega_dictionary(const VertexAlgebra& heis, int max_weight);
/// J[e] for each listed even e.
GeneratorDictionary j_dictionary(const VertexAlgebra& heis, const std::vector<int>& evens);

/// :d^i X^h d^j X^h: + 2 :d^i X^x d^j X^y: + 2 :d^i X^y d^j X^x: in V_k(sl2).
State sl2_tilde_q(const VertexAlgebra& sl2, int i, int j);
/// Alternating six-term sum of :d^k X^x d^l X^y d^m X^h: over the
/// permutations of (k, l, m); requires k < l < m.
State sl2_tilde_c(const VertexAlgebra& sl2, int k, int l, int m);
/// Q[i,j] (i <= j) and C[k,l,m] (k < l < m) up to the given weight.
GeneratorDictionary sl2_dictionary(const VertexAlgebra& sl2, int max_weight);

/// Throws UnknownSymbol for symbols missing from the dictionary.
State evaluate_nop(const VertexAlgebra& v, const FormalNOP& nop, const GeneratorDictionary& dict);

/// All monomials of the given weight with declared degree in [min_degree,
/// max_degree], in ascending monomial order.
std::vector<NOPMonomial> nop_monomials(const GeneratorDictionary& dict, int weight, int min_degree, int max_degree);

/// Solves target = evaluate_nop(P) over all monomials of the target's weight
/// with degree <= max_degree (max_degree < 0 means the weight). Free
/// variables are zero. nullopt when no solution exists.
std::optional<FormalNOP> express_in_generators(const VertexAlgebra& v, const State& target,
                                               const GeneratorDictionary& dict, int max_degree = -1);

/// Family names used when lifting Q and C symbols into the dictionary.
struct SymbolFamilies {
  std::string q = "Omega";
  std::string c = "C";
};

Symbol lift_symbol(const QSymbol& s, const SymbolFamilies& families);

/// Normal ordering of rel plus lower-degree corrections with evaluate_nop = 0.
/// Throws ValidationError if rel does not vanish classically and
/// DescentFailure when some degree cannot be matched.
FormalNOP quantum_correction(const VertexAlgebra& v, const QSymbolPoly& rel, const GeneratorDictionary& dict,
                             const SymbolFamilies& families = {});

/// lambda with Omega[a,b] = lambda J^m modulo d(A_{m-1}), m = a + b even.
Rational pr_omega(int a, int b);

/// Coefficient of J^m after reducing a degree-2 combination of d^r Omega[a,b]
/// (and J symbols) with a + b + r = m. Throws ParityError for odd m and
/// ValidationError for terms outside A_m.
LevelScalar pr_coefficient(const FormalNOP& nop, int m);

/// R_n(I,J) from the quantum correction of the determinant relation over
/// H_k(n), specialized to k = 1. Throws ResourceLimit when the relation's
/// weight exceeds max_weight.
Rational remainder_direct(int n, const std::vector<int>& I, const std::vector<int>& J, int max_weight = 16);

struct SearchBounds {
  int max_degree = -1;  // -1: the target weight
  int max_weight = 12;
};

struct DecouplingResult {
  std::optional<FormalNOP> relation;
  /// Rational roots of the relation's coefficient denominators.
  std::vector<Rational> excluded_levels;
  /// Denominator factors without rational roots.
  std::vector<LevelPolynomial> irrational_factors;
};

/// express_in_generators for an invariant target over an invariant
/// dictionary. Throws ValidationError when an input is not invariant and
/// ResourceLimit when the target weight exceeds the bound.
DecouplingResult decouple(const VertexAlgebra& v, const ActionSpec& action, const GeneratorDictionary& dict,
                          const State& target, const SearchBounds& bounds = {});

nlohmann::json to_json(const DecouplingResult& r);

}  // namespace voa

#endif  // VOA_ORBIFOLD_HPP
