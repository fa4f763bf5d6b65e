#include "voa/liedata.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "voa/errors.hpp"

namespace voa {

RationalMatrix identity_matrix(int n) {
  RationalMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = Rational(1);
  return m;
}

LieSpec::LieSpec(std::string name_, std::vector<std::string> labels_)
    : name(std::move(name_)),
      dim(static_cast<int>(labels_.size())),
      labels(std::move(labels_)),
      structure(static_cast<std::size_t>(dim * dim * dim)),
      form(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)) {}

bool LieSpec::is_abelian() const {
  return std::all_of(structure.begin(), structure.end(), [](const Rational& r) { return r.is_zero(); });
}

std::optional<int> LieSpec::index_of(std::string_view label) const {
  for (int i = 0; i < dim; ++i) {
    if (labels[static_cast<std::size_t>(i)] == label) return i;
  }
  if (!label.empty() && std::all_of(label.begin(), label.end(), [](unsigned char c) { return std::isdigit(c); })) {
    const int i = std::stoi(std::string(label));
    if (i < dim) return i;
  }
  return std::nullopt;
}

RationalMatrix LieSpec::form_inverse() const {
  const auto n = static_cast<std::size_t>(dim);
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = form(i, j);
    aug(i, n + i) = Rational(1);
  }
  const auto pivots = reduce_rows(aug, n);
  if (pivots.size() != n) throw ValidationError("bilinear form of '" + name + "' is degenerate");
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

bool ValidationReport::has(std::string_view identity, const std::vector<int>& witness) const {
  return std::any_of(failures.begin(), failures.end(), [&](const ValidationFailure& f) {
    return f.identity == identity && f.witness == witness;
  });
}

namespace {

std::string triple(const LieSpec& s, int i, int j, int l) {
  auto lab = [&](int a) { return s.labels[static_cast<std::size_t>(a)]; };
  return "(" + lab(i) + "," + lab(j) + "," + lab(l) + ")";
}

}  // namespace

ValidationReport validate(const LieSpec& spec) {
  ValidationReport report;
  const int n = spec.dim;
  if (n <= 0 || static_cast<int>(spec.labels.size()) != n ||
      spec.structure.size() != static_cast<std::size_t>(n * n * n) ||
      spec.form.rows() != static_cast<std::size_t>(n) || spec.form.cols() != static_cast<std::size_t>(n)) {
    report.failures.push_back({"shape", {}, "inconsistent dimensions"});
    return report;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        if (spec.c(i, j, l) != -spec.c(j, i, l))
          report.failures.push_back({"antisymmetry", {i, j, l}, "c" + triple(spec, i, j, l) + " != -c" + triple(spec, j, i, l)});

  // Jacobi: [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0, component p.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int p = 0; p < n; ++p) {
          Rational s;
          for (int q = 0; q < n; ++q) {
            s += spec.c(b, c, q) * spec.c(a, q, p);
            s += spec.c(c, a, q) * spec.c(b, q, p);
            s += spec.c(a, b, q) * spec.c(c, q, p);
          }
          if (!s.is_zero())
            report.failures.push_back({"jacobi", {a, b, c, p}, "Jacobi fails on " + triple(spec, a, b, c)});
        }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (spec.B(i, j) != spec.B(j, i)) report.failures.push_back({"form-symmetry", {i, j}, "B not symmetric"});

  // Invariance: B([e_i,e_j],e_l) + B(e_j,[e_i,e_l]) = 0.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        Rational s;
        for (int q = 0; q < n; ++q) {
          s += spec.c(i, j, q) * spec.B(q, l);
          s += spec.c(i, l, q) * spec.B(j, q);
        }
        if (!s.is_zero())
          report.failures.push_back({"invariance", {i, j, l}, "B([.,.],.) invariance fails on " + triple(spec, i, j, l)});
      }

  RationalMatrix m = spec.form;
  if (rank(m) != static_cast<std::size_t>(n)) report.failures.push_back({"nondegeneracy", {}, "form is degenerate"});
  return report;
}

ValidationReport validate(const ActionSpec& action, const LieSpec& spec) {
  ValidationReport report;
  const int n = spec.dim;
  auto shape_ok = [n](const RationalMatrix& m) {
    return m.rows() == static_cast<std::size_t>(n) && m.cols() == static_cast<std::size_t>(n);
  };
  auto M = [](const RationalMatrix& m, int r, int c) -> const Rational& {
    return m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
  };
  for (std::size_t g = 0; g < action.lie_generators.size(); ++g) {
    const auto& rho = action.lie_generators[g];
    const int gi = static_cast<int>(g);
    if (!shape_ok(rho)) {
      report.failures.push_back({"shape", {gi}, "lie generator has wrong size"});
      continue;
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        for (int p = 0; p < n; ++p) {
          Rational lhs, rhs;
          for (int l = 0; l < n; ++l) lhs += spec.c(a, b, l) * M(rho, p, l);
          for (int q = 0; q < n; ++q) {
            rhs += M(rho, q, a) * spec.c(q, b, p);
            rhs += M(rho, q, b) * spec.c(a, q, p);
          }
          if (lhs != rhs) {
            report.failures.push_back({"derivation", {gi, a, b}, "generator is not a derivation"});
            break;
          }
        }
        Rational skew;
        for (int q = 0; q < n; ++q) skew += M(rho, q, a) * spec.B(q, b) + M(rho, q, b) * spec.B(a, q);
        if (!skew.is_zero()) report.failures.push_back({"skew", {gi, a, b}, "generator is not B-skew"});
      }
  }
  for (std::size_t g = 0; g < action.finite_elements.size(); ++g) {
    const auto& mat = action.finite_elements[g];
    const int gi = static_cast<int>(g);
    if (!shape_ok(mat)) {
      report.failures.push_back({"shape", {gi}, "finite element has wrong size"});
      continue;
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        for (int p = 0; p < n; ++p) {
          Rational lhs, rhs;
          for (int l = 0; l < n; ++l) lhs += spec.c(a, b, l) * M(mat, p, l);
          for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r) rhs += M(mat, q, a) * M(mat, r, b) * spec.c(q, r, p);
          if (lhs != rhs) {
            report.failures.push_back({"automorphism", {gi, a, b}, "element does not preserve the bracket"});
            break;
          }
        }
        Rational pairing;
        for (int q = 0; q < n; ++q)
          for (int r = 0; r < n; ++r) pairing += M(mat, q, a) * M(mat, r, b) * spec.B(q, r);
        if (pairing != spec.B(a, b)) report.failures.push_back({"isometry", {gi, a, b}, "element does not preserve B"});
      }
  }
  return report;
}

LieSpec sl2_spec() {
  LieSpec s("sl2", {"x", "y", "h"});
  constexpr int x = 0, y = 1, h = 2;
  s.c(x, y, h) = 1;
  s.c(y, x, h) = -1;
  s.c(h, x, x) = 2;
  s.c(x, h, x) = -2;
  s.c(h, y, y) = -2;
  s.c(y, h, y) = 2;
  s.form(x, y) = 1;
  s.form(y, x) = 1;
  s.form(h, h) = 2;
  s.dual_coxeter = Rational(2);
  return s;
}

LieSpec abelian(int n) {
  if (n < 1) throw ValidationError("abelian algebra needs n >= 1");
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("a" + std::to_string(i));
  LieSpec s("heisenberg" + std::to_string(n), std::move(labels));
  s.form = identity_matrix(n);
  return s;
}

ActionSpec adjoint_action(const LieSpec& spec) {
  ActionSpec a;
  a.label = "adjoint(" + spec.name + ")";
  const auto n = static_cast<std::size_t>(spec.dim);
  for (int g = 0; g < spec.dim; ++g) {
    RationalMatrix m(n, n);
    for (int i = 0; i < spec.dim; ++i)
      for (int l = 0; l < spec.dim; ++l) m(static_cast<std::size_t>(l), static_cast<std::size_t>(i)) = spec.c(g, i, l);
    a.lie_generators.push_back(std::move(m));
  }
  return a;
}

ActionSpec orthogonal_action(int n) {
  if (n < 1) throw ValidationError("orthogonal action needs n >= 1");
  ActionSpec a;
  a.label = "O(" + std::to_string(n) + ")";
  const auto N = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      RationalMatrix m(N, N);
      m(i, j) = -1;
      m(j, i) = 1;
      a.lie_generators.push_back(std::move(m));
    }
  RationalMatrix refl = identity_matrix(n);
  refl(0, 0) = -1;
  a.finite_elements.push_back(std::move(refl));
  return a;
}

std::optional<LieSpec> builtin_algebra(std::string_view name) {
  if (name == "sl2") return sl2_spec();
  constexpr std::string_view prefix = "heisenberg";
  if (name.substr(0, prefix.size()) == prefix) {
    const auto rest = name.substr(prefix.size());
    if (!rest.empty() && std::all_of(rest.begin(), rest.end(), [](unsigned char c) { return std::isdigit(c); })) {
      const int n = std::stoi(std::string(rest));
      if (n >= 1) return abelian(n);
    }
  }
  return std::nullopt;
}

// ------------------------------------------------------------ config files

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

}  // namespace

LieConfig parse_lie_config(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string section;
  std::string name = "custom";
  std::optional<int> dim;
  std::vector<std::string> labels;
  std::optional<Rational> hdual;
  struct Entry {
    std::vector<std::string> idx;
    Rational value;
    int line;
  };
  std::vector<Entry> brackets, form;
  std::optional<ActionSpec> action;
  std::vector<std::vector<Rational>>* block = nullptr;
  std::vector<std::vector<std::vector<Rational>>> lie_blocks, finite_blocks;

  int lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    const auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw ParseError("line " + std::to_string(lineno) + ": " + why);
    };
    auto number = [&](const std::string& text) {
      try {
        return Rational::parse(text);
      } catch (const Error&) {
        fail("bad number '" + text + "'");
      }
      return Rational();
    };
    if (line.front() == '[') {
      if (line.back() != ']') fail("unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      block = nullptr;
      if (section == "action" && !action) action = ActionSpec{};
      if (section != "algebra" && section != "brackets" && section != "form" && section != "action")
        fail("unknown section '" + section + "'");
      continue;
    }
    const auto eq = line.find('=');
    if (section == "algebra") {
      if (eq == std::string::npos) fail("expected key = value");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key == "dim") {
        const Rational d = number(value);
        if (!d.is_integer() || d <= Rational(0)) fail("dim must be a positive integer");
        dim = static_cast<int>(d.numerator().get_si());
      } else if (key == "labels") {
        labels = split_ws(value);
      } else if (key == "name") {
        name = value;
      } else if (key == "dual_coxeter") {
        hdual = number(value);
      } else {
        fail("unknown key '" + key + "'");
      }
    } else if (section == "brackets" || section == "form") {
      if (eq == std::string::npos) fail("expected indices = value");
      Entry e{split_ws(line.substr(0, eq)), number(trim(line.substr(eq + 1))), lineno};
      const std::size_t want = section == "brackets" ? 3 : 2;
      if (e.idx.size() != want) fail("expected " + std::to_string(want) + " indices");
      (section == "brackets" ? brackets : form).push_back(std::move(e));
    } else if (section == "action") {
      if (eq != std::string::npos) {
        const std::string key = trim(line.substr(0, eq));
        if (key != "label") fail("unknown action key '" + key + "'");
        action->label = trim(line.substr(eq + 1));
      } else if (line == "lie:" || line == "finite:") {
        auto& blocks = line == "lie:" ? lie_blocks : finite_blocks;
        blocks.emplace_back();
        block = &blocks.back();
      } else {
        if (block == nullptr) fail("matrix row outside a 'lie:' or 'finite:' block");
        std::vector<Rational> row;
        for (const auto& t : split_ws(line)) row.push_back(number(t));
        block->push_back(std::move(row));
      }
    } else {
      fail("content outside any section");
    }
  }

  if (labels.empty() && dim) {
    for (int i = 0; i < *dim; ++i) labels.push_back("e" + std::to_string(i));
  }
  if (labels.empty()) throw ParseError("[algebra] needs dim or labels");
  if (dim && *dim != static_cast<int>(labels.size())) throw ParseError("dim does not match the number of labels");

  LieConfig cfg;
  cfg.spec = LieSpec(name, labels);
  cfg.spec.dual_coxeter = hdual;
  auto resolve = [&](const std::string& tok, int line) {
    auto i = cfg.spec.index_of(tok);
    if (!i) throw ParseError("line " + std::to_string(line) + ": unknown generator '" + tok + "'");
    return *i;
  };
  std::map<std::vector<int>, bool> given;
  for (const auto& e : brackets) {
    const int i = resolve(e.idx[0], e.line), j = resolve(e.idx[1], e.line), l = resolve(e.idx[2], e.line);
    cfg.spec.c(i, j, l) = e.value;
    given[{i, j, l}] = true;
  }
  for (const auto& e : brackets) {
    const int i = resolve(e.idx[0], e.line), j = resolve(e.idx[1], e.line), l = resolve(e.idx[2], e.line);
    if (!given.count({j, i, l})) cfg.spec.c(j, i, l) = -e.value;
  }
  given.clear();
  for (const auto& e : form) {
    const int i = resolve(e.idx[0], e.line), j = resolve(e.idx[1], e.line);
    cfg.spec.form(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e.value;
    given[{i, j}] = true;
  }
  for (const auto& e : form) {
    const int i = resolve(e.idx[0], e.line), j = resolve(e.idx[1], e.line);
    if (!given.count({j, i})) cfg.spec.form(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = e.value;
  }

  if (action) {
    const auto n = static_cast<std::size_t>(cfg.spec.dim);
    auto to_matrix = [&](const std::vector<std::vector<Rational>>& rows) {
      if (rows.size() != n) throw ParseError("action matrix must have " + std::to_string(n) + " rows");
      RationalMatrix m(n, n);
      for (std::size_t r = 0; r < n; ++r) {
        if (rows[r].size() != n) throw ParseError("action matrix row must have " + std::to_string(n) + " entries");
        for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[r][c];
      }
      return m;
    };
    for (const auto& b : lie_blocks) action->lie_generators.push_back(to_matrix(b));
    for (const auto& b : finite_blocks) action->finite_elements.push_back(to_matrix(b));
    if (action->label.empty()) action->label = "custom";
    cfg.action = std::move(action);
  }
  return cfg;
}

LieConfig load_lie_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_lie_config(buf.str());
}

namespace {

nlohmann::json matrix_json(const RationalMatrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

nlohmann::json to_json(const LieSpec& spec) {
  nlohmann::json j;
  j["name"] = spec.name;
  j["dim"] = spec.dim;
  j["labels"] = spec.labels;
  auto brackets = nlohmann::json::array();
  for (int i = 0; i < spec.dim; ++i)
    for (int k = 0; k < spec.dim; ++k)
      for (int l = 0; l < spec.dim; ++l)
        if (!spec.c(i, k, l).is_zero()) brackets.push_back({i, k, l, spec.c(i, k, l).str()});
  j["brackets"] = std::move(brackets);
  j["form"] = matrix_json(spec.form);
  j["dual_coxeter"] = spec.dual_coxeter ? nlohmann::json(spec.dual_coxeter->str()) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const ActionSpec& action) {
  nlohmann::json j;
  j["label"] = action.label;
  auto lie = nlohmann::json::array();
  for (const auto& m : action.lie_generators) lie.push_back(matrix_json(m));
  auto fin = nlohmann::json::array();
  for (const auto& m : action.finite_elements) fin.push_back(matrix_json(m));
  j["lie_generators"] = std::move(lie);
  j["finite_elements"] = std::move(fin);
  return j;
}

nlohmann::json to_json(const ValidationReport& report) {
  auto arr = nlohmann::json::array();
  for (const auto& f : report.failures)
    arr.push_back({{"identity", f.identity}, {"witness", f.witness}, {"detail", f.detail}});
  return {{"valid", report.ok()}, {"failures", std::move(arr)}};
}

}  // namespace voa
