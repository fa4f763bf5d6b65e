#ifndef VOA_VERTEXCORE_HPP
#define VOA_VERTEXCORE_HPP

// The universal affine vertex algebra V_k(g,B) at formal level k, realized
// on the vacuum module with a PBW basis. Circle products are computed by
// mode recursion through the state-field correspondence.

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "voa/classical.hpp"
#include "voa/liedata.hpp"
#include "voa/scalars.hpp"

namespace voa {

/// X^{gen}(-depth), depth >= 1.
struct Factor {
  int gen = 0;
  int depth = 1;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

/// Precedence in the canonical PBW order: deeper modes first, then smaller
/// generator index.
inline bool precedes_or_equal(const Factor& a, const Factor& b) {
  return a.depth > b.depth || (a.depth == b.depth && a.gen <= b.gen);
}

/// Canonically ordered product of creation modes applied to the vacuum.
struct PBWMonomial {
  std::vector<Factor> factors;

  int weight() const;
  int degree() const { return static_cast<int>(factors.size()); }
  bool is_canonical() const;
  friend auto operator<=>(const PBWMonomial&, const PBWMonomial&) = default;
};

/// Finite Q(k)-linear combination of PBW monomials; no zero coefficients.
class State {
 public:
  using Terms = std::map<PBWMonomial, LevelScalar>;

  State() = default;
  static State vacuum(const LevelScalar& c = LevelScalar(1));
  /// Monomial that must already be canonical.
  static State monomial(PBWMonomial m, const LevelScalar& c = LevelScalar(1));

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  void add_term(const PBWMonomial& m, const LevelScalar& c);
  LevelScalar coefficient(const PBWMonomial& m) const;

  /// Common weight of all terms; nullopt when mixed or zero.
  std::optional<int> weight() const;
  int max_weight() const;
  /// Max PBW length; -1 for zero.
  int degree() const;
  std::map<int, State> weight_components() const;
  /// Terms of PBW length exactly d.
  State degree_part(int d) const;

  State& operator+=(const State& o);
  State& operator-=(const State& o);
  State& operator*=(const LevelScalar& c);
  friend State operator+(State a, const State& b) { return a += b; }
  friend State operator-(State a, const State& b) { return a -= b; }
  friend State operator*(const LevelScalar& c, State a) { return a *= c; }
  State operator-() const;
  friend bool operator==(const State&, const State&) = default;

 private:
  Terms terms_;
};

/// All canonical PBW monomials of the given weight over `dim` generators,
/// in ascending monomial order.
std::vector<PBWMonomial> pbw_basis(int dim, int weight);

/// Nonzero a o_n b for n >= 0, ordered by descending n.
using OPEList = std::vector<std::pair<int, State>>;

class VertexAlgebra {
 public:
  /// Throws ValidationError if the Lie data is not a valid quadratic Lie algebra.
  explicit VertexAlgebra(LieSpec spec);
  ~VertexAlgebra();
  VertexAlgebra(const VertexAlgebra&) = delete;
  VertexAlgebra& operator=(const VertexAlgebra&) = delete;

  const LieSpec& spec() const noexcept { return spec_; }
  int dim() const noexcept { return spec_.dim; }

  /// X^{gen}(-1)|0>.
  State generator(int gen) const;
  /// The product X^{f_1}(-d_1)...X^{f_r}(-d_r)|0> for an arbitrary word,
  /// brought to canonical order.
  State word(std::span<const Factor> factors, const LevelScalar& c = LevelScalar(1)) const;

  /// X^{gen}(mode) acting on v; the central element acts as k.
  State mode_action(int gen, int mode, const State& v) const;
  State circle_product(const State& a, int n, const State& b) const;
  State wick(const State& a, const State& b) const { return circle_product(a, -1, b); }
  /// Right-nested :a_1 (a_2 (... a_r)):.
  State wick_chain(std::span<const State> states) const;
  State derivative(const State& a) const;
  State derivative(const State& a, int times) const;

  OPEList ope(const State& a, const State& b) const;
  /// Least N with a o_n b = 0 for all n >= N.
  int locality_order(const State& a, const State& b) const;

  /// Top-degree part as a polynomial in x_{i,j}, with X^i(-j-1) -> x_{i,j}
  /// (so d^j X^i -> j! x_{i,j}). Throws on zero input or when a top-degree
  /// coefficient depends on k.
  ClassicalPoly leading_symbol(const State& a) const;

  /// (1 / 2(k + h_dual)) sum_{i,j} (B^{-1})_{ij} :X^i X^j:.
  State sugawara(const Rational& h_dual) const;

  State apply_group_element(const RationalMatrix& m, const State& a) const;
  /// Derivation induced on all PBW factors by rho.
  State lie_act(const RationalMatrix& rho, const State& a) const;

  std::string render(const State& a) const;
  std::string render_ope(const std::string& left, const std::string& right, const OPEList& ope) const;
  /// "x", "h(-2)", "x(-2)h(-1)"; also "1" or "vac" for the vacuum.
  State parse_state(std::string_view text) const;

  nlohmann::json to_json(const State& a) const;
  State state_from_json(const nlohmann::json& j) const;

  /// Cached circle products of monomial pairs (diagnostics).
  std::size_t cache_size() const;

 private:
  State act_on_monomial(int gen, int mode, const PBWMonomial& v) const;
  State circle_monomials(const PBWMonomial& a, int n, const PBWMonomial& b) const;

  struct Cache;
  LieSpec spec_;
  std::unique_ptr<Cache> cache_;
};

}  // namespace voa

#endif  // VOA_VERTEXCORE_HPP
