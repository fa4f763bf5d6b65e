#ifndef VOA_LIEDATA_HPP
#define VOA_LIEDATA_HPP

// Lie algebra data (structure constants and invariant form) defining the
// universal affine vertex algebra V_k(g,B), plus symmetry-group actions.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "voa/linalg.hpp"
#include "voa/scalars.hpp"

namespace voa {

using RationalMatrix = DenseMatrix<Rational>;

RationalMatrix identity_matrix(int n);

/// Basis e_0..e_{n-1} with [e_i, e_j] = sum_l c(i,j,l) e_l and a bilinear
/// form B. Holds arbitrary data; `validate` decides whether it is a valid
/// quadratic Lie algebra.
struct LieSpec {
  std::string name;
  int dim = 0;
  std::vector<std::string> labels;
  std::vector<Rational> structure;  // dim^3, index (i*dim + j)*dim + l
  RationalMatrix form;
  std::optional<Rational> dual_coxeter;

  LieSpec() = default;
  LieSpec(std::string name, std::vector<std::string> labels);

  Rational& c(int i, int j, int l) { return structure[static_cast<std::size_t>((i * dim + j) * dim + l)]; }
  const Rational& c(int i, int j, int l) const {
    return structure[static_cast<std::size_t>((i * dim + j) * dim + l)];
  }
  const Rational& B(int i, int j) const { return form(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); }
  bool is_abelian() const;

  /// Generator index for a label or a decimal index; nullopt if unknown.
  std::optional<int> index_of(std::string_view label) const;

  /// Inverse of the form matrix; throws ValidationError when singular.
  RationalMatrix form_inverse() const;
};

/// Symmetries of (g, B): infinitesimal generators plus finitely many group
/// elements (for disconnected groups such as O(n)). A matrix M maps e_i to
/// sum_l M(l, i) e_l.
struct ActionSpec {
  std::string label;
  std::vector<RationalMatrix> lie_generators;
  std::vector<RationalMatrix> finite_elements;
};

struct ValidationFailure {
  std::string identity;      // "antisymmetry", "jacobi", "form-symmetry", ...
  std::vector<int> witness;  // basis indices (or generator number first, for actions)
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationFailure> failures;
  bool ok() const noexcept { return failures.empty(); }
  bool has(std::string_view identity, const std::vector<int>& witness) const;
};

ValidationReport validate(const LieSpec& spec);
ValidationReport validate(const ActionSpec& action, const LieSpec& spec);

/// Basis (x, y, h), [x,y]=h, [h,x]=2x, [h,y]=-2y, B(x,y)=1, B(h,h)=2.
LieSpec sl2_spec();
/// Rank-n Heisenberg data: zero bracket, identity form, labels a1..an.
LieSpec abelian(int n);
ActionSpec adjoint_action(const LieSpec& spec);
/// so(n) rotations E_ba - E_ab (a < b) plus the reflection diag(-1,1,...,1).
ActionSpec orthogonal_action(int n);

/// "sl2" or "heisenberg<n>".
std::optional<LieSpec> builtin_algebra(std::string_view name);

struct LieConfig {
  LieSpec spec;
  std::optional<ActionSpec> action;
};

/// Parses the sectioned key-value format ([algebra], [brackets], [form],
/// [action]). Unspecified mirror entries are filled by antisymmetry of the
/// bracket and symmetry of the form.
LieConfig parse_lie_config(std::string_view text);
LieConfig load_lie_config(const std::string& path);

nlohmann::json to_json(const LieSpec& spec);
nlohmann::json to_json(const ActionSpec& action);
nlohmann::json to_json(const ValidationReport& report);

}  // namespace voa

#endif  // VOA_LIEDATA_HPP
