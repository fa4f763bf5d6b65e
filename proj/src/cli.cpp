#include "voa/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "voa/classical.hpp"
#include "voa/errors.hpp"
#include "voa/liedata.hpp"
#include "voa/orbifold.hpp"
#include "voa/remainder.hpp"
#include "voa/suites.hpp"
#include "voa/vertexcore.hpp"

namespace voa {

int max_weight_from_env() {
  const char* raw = std::getenv("VOA_MAX_WEIGHT");
  if (!raw || !*raw) return 12;
  try {
    std::size_t used = 0;
    const int v = std::stoi(raw, &used);
    if (used != std::string(raw).size() || v < 0) throw std::invalid_argument("bad");
    return v;
  } catch (const std::exception&) {
    throw ParseError("VOA_MAX_WEIGHT must be a non-negative integer");
  }
}

namespace {

struct Options {
  bool json = false;
  std::string algebra = "sl2";
  std::string action;
  std::vector<std::string> positional;
  std::string hdual;
  int weight = 0;
  int n = 1;
  int n_max = 6;
  bool allow_large = false;
  std::string I;
  std::string J;
  int max_weight = -1;
  int max_degree = -1;
  std::string dict;
  std::string target;
};

LieConfig resolve_algebra(const std::string& name) {
  if (auto spec = builtin_algebra(name)) return LieConfig{*spec, std::nullopt};
  return load_lie_config(name);
}

ActionSpec resolve_action(const LieConfig& cfg, const std::string& name) {
  ActionSpec action;
  if (name.empty()) {
    if (cfg.action) {
      action = *cfg.action;
    } else if (cfg.spec.is_abelian()) {
      action = orthogonal_action(cfg.spec.dim);
    } else {
      action = adjoint_action(cfg.spec);
    }
  } else if (name == "adjoint") {
    action = adjoint_action(cfg.spec);
  } else if (name == "orthogonal") {
    action = orthogonal_action(cfg.spec.dim);
  } else {
    const LieConfig other = load_lie_config(name);
    if (!other.action) throw ValidationError("config '" + name + "' has no [action] section");
    action = *other.action;
  }
  const auto report = validate(action, cfg.spec);
  if (!report.ok()) {
    const auto& f = report.failures.front();
    throw ValidationError("action '" + action.label + "' is not a symmetry: " + f.identity + " (" + f.detail + ")");
  }
  return action;
}

std::vector<int> parse_index_list(const std::string& text, const char* flag) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || !std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); }))
      throw ParseError(std::string(flag) + " expects comma-separated non-negative integers");
    out.push_back(std::stoi(item));
  }
  if (out.empty()) throw ParseError(std::string(flag) + " is empty");
  return out;
}

/// Splits "Omega[0,2],J[4]" at top-level commas.
std::vector<std::string> split_symbols(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

State symbol_state(const VertexAlgebra& v, const Symbol& s) {
  const auto& idx = s.idx;
  if (s.family == "J" || s.family == "Omega") {
    if (!v.spec().is_abelian()) throw ValidationError(s.family + " symbols live in Heisenberg algebras");
    if (s.family == "J" && idx.size() == 1) return j_gen(v, idx[0]);
    if (s.family == "Omega" && idx.size() == 2) return omega(v, idx[0], idx[1]);
  } else if (s.family == "Q" || s.family == "C") {
    if (v.spec().name != "sl2") throw ValidationError(s.family + " symbols live in V_k(sl2)");
    if (s.family == "Q" && idx.size() == 2) return sl2_tilde_q(v, idx[0], idx[1]);
    if (s.family == "C" && idx.size() == 3) return sl2_tilde_c(v, idx[0], idx[1], idx[2]);
  }
  throw UnknownSymbol("unknown generator symbol " + s.str());
}

void emit(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << "\n"; }

nlohmann::json state_json(const VertexAlgebra& v, const State& s) {
  nlohmann::json j = v.to_json(s);
  j["text"] = v.render(s);
  return j;
}

// ---------------------------------------------------------------- commands

int cmd_ope(const Options& o, std::ostream& out) {
  if (o.positional.size() != 2) throw ParseError("ope expects two states");
  const VertexAlgebra v(resolve_algebra(o.algebra).spec);
  const State a = v.parse_state(o.positional[0]);
  const State b = v.parse_state(o.positional[1]);
  const OPEList list = v.ope(a, b);
  if (o.json) {
    auto terms = nlohmann::json::array();
    for (const auto& [n, s] : list) terms.push_back({{"n", n}, {"state", state_json(v, s)}});
    emit(out, {{"algebra", v.spec().name}, {"left", o.positional[0]}, {"right", o.positional[1]}, {"ope", terms},
               {"text", v.render_ope(o.positional[0], o.positional[1], list)}});
  } else {
    out << v.render_ope(o.positional[0], o.positional[1], list) << "\n";
  }
  return kExitOk;
}

int cmd_circle(const Options& o, std::ostream& out) {
  if (o.positional.size() != 3) throw ParseError("circle expects: a n b");
  const VertexAlgebra v(resolve_algebra(o.algebra).spec);
  const State a = v.parse_state(o.positional[0]);
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(o.positional[1], &used);
    if (used != o.positional[1].size()) throw std::invalid_argument("n");
  } catch (const std::exception&) {
    throw ParseError("circle expects an integer n, got '" + o.positional[1] + "'");
  }
  const State b = v.parse_state(o.positional[2]);
  const State r = v.circle_product(a, n, b);
  if (o.json) {
    emit(out, {{"algebra", v.spec().name}, {"n", n}, {"result", state_json(v, r)}});
  } else {
    out << o.positional[0] << " o_" << n << " " << o.positional[2] << " = " << v.render(r) << "\n";
  }
  return kExitOk;
}

int cmd_sugawara(const Options& o, std::ostream& out) {
  const VertexAlgebra v(resolve_algebra(o.algebra).spec);
  Rational h;
  if (!o.hdual.empty()) {
    h = Rational::parse(o.hdual);
  } else if (v.spec().dual_coxeter) {
    h = *v.spec().dual_coxeter;
  } else {
    throw ValidationError("no dual Coxeter number: pass --hdual");
  }
  const State L = v.sugawara(h);
  const LevelScalar k = LevelScalar::k();
  const LevelScalar c = LevelScalar(static_cast<long>(v.dim())) * k / (k + LevelScalar(h));
  struct Check {
    std::string label;
    bool ok;
  };
  const std::vector<Check> checks{
      {"L o_3 L = (c/2)|0>", v.circle_product(L, 3, L) == State::vacuum(c / LevelScalar(2))},
      {"L o_2 L = 0", v.circle_product(L, 2, L).is_zero()},
      {"L o_1 L = 2L", v.circle_product(L, 1, L) == LevelScalar(2) * L},
      {"L o_0 L = dL", v.circle_product(L, 0, L) == v.derivative(L)},
  };
  const bool all = std::all_of(checks.begin(), checks.end(), [](const Check& x) { return x.ok; });
  if (o.json) {
    auto arr = nlohmann::json::array();
    for (const auto& x : checks) arr.push_back({{"check", x.label}, {"ok", x.ok}});
    nlohmann::json cj;
    to_json(cj, c);
    emit(out, {{"algebra", v.spec().name}, {"central_charge", c.str()}, {"central_charge_json", cj},
               {"checks", arr}, {"ok", all}});
  } else {
    out << "central charge: " << c.str() << "\n";
    for (const auto& x : checks) out << x.label << ": " << (x.ok ? "ok" : "FAILED") << "\n";
  }
  return all ? kExitOk : kExitVerifyFailed;
}

int cmd_invariants(const Options& o, std::ostream& out) {
  const int cap = max_weight_from_env();
  if (o.weight > cap)
    throw ResourceLimit("weight " + std::to_string(o.weight) + " exceeds VOA_MAX_WEIGHT = " + std::to_string(cap));
  const LieConfig cfg = resolve_algebra(o.algebra);
  const VertexAlgebra v(cfg.spec);
  const ActionSpec action = resolve_action(cfg, o.action);
  const auto basis = invariant_subspace(v, action, o.weight);
  if (o.json) {
    auto arr = nlohmann::json::array();
    for (const auto& s : basis) arr.push_back(state_json(v, s));
    emit(out, {{"algebra", v.spec().name}, {"action", action.label}, {"weight", o.weight},
               {"dimension", basis.size()}, {"basis", arr}});
  } else {
    out << "dimension: " << basis.size() << "\n";
    for (std::size_t i = 0; i < basis.size(); ++i) out << "[" << i << "] " << v.render(basis[i]) << "\n";
  }
  return kExitOk;
}

int cmd_table1(const Options& o, std::ostream& out) {
  const auto rows = table1(o.n_max, o.allow_large);
  if (o.json) {
    auto arr = nlohmann::json::array();
    for (const auto& [n, r] : rows) arr.push_back({{"n", n}, {"value", r.str()}});
    emit(out, arr);
  } else {
    for (const auto& [n, r] : rows) out << "R_" << n << " = " << r.str() << "\n";
  }
  return kExitOk;
}

int cmd_remainder(const Options& o, std::ostream& out, bool direct) {
  const auto I = parse_index_list(o.I, "--I");
  const auto J = parse_index_list(o.J, "--J");
  const Rational r = direct ? remainder_direct(o.n, I, J, o.max_weight < 0 ? 16 : o.max_weight) : rn(o.n, I, J);
  if (o.json) {
    emit(out, {{"n", o.n}, {"I", I}, {"J", J}, {"method", direct ? "direct" : "recursion"}, {"value", r.str()}});
  } else {
    out << r.str() << "\n";
  }
  return kExitOk;
}

int cmd_decouple(const Options& o, std::ostream& out) {
  const LieConfig cfg = resolve_algebra(o.algebra);
  const VertexAlgebra v(cfg.spec);
  const ActionSpec action = resolve_action(cfg, o.action);
  GeneratorDictionary dict;
  for (const auto& item : split_symbols(o.dict)) {
    const Symbol s = Symbol::parse(item);
    dict.add(s, symbol_state(v, s));
  }
  const Symbol target_symbol = Symbol::parse(o.target);
  const State target = symbol_state(v, target_symbol);
  SearchBounds bounds;
  bounds.max_degree = o.max_degree;
  bounds.max_weight = max_weight_from_env();
  const DecouplingResult r = decouple(v, action, dict, target, bounds);
  if (o.json) {
    nlohmann::json j = to_json(r);
    j["target"] = target_symbol.str();
    emit(out, j);
  } else {
    out << "relation: " << (r.relation ? target_symbol.str() + " = " + r.relation->str() : "none") << "\n";
    out << "excluded levels:";
    if (r.excluded_levels.empty()) out << " none";
    for (const auto& x : r.excluded_levels) out << " " << x.str();
    out << "\n";
    for (const auto& f : r.irrational_factors) out << "irrational denominator factor: " << f.str() << "\n";
  }
  return kExitOk;
}

int cmd_sl2_generators(const Options& o, std::ostream& out) {
  const int cap = max_weight_from_env();
  const int w = o.max_weight < 0 ? 6 : o.max_weight;
  if (w > cap) throw ResourceLimit("weight " + std::to_string(w) + " exceeds VOA_MAX_WEIGHT = " + std::to_string(cap));
  const VertexAlgebra v(sl2_spec());
  const ActionSpec adjoint = adjoint_action(v.spec());
  const GeneratorDictionary dict = sl2_dictionary(v, w);
  bool all = true;
  auto arr = nlohmann::json::array();
  std::ostringstream text;
  for (const auto& [s, e] : dict.entries()) {
    const bool invariant = is_invariant(v, adjoint, e.state);
    ClassicalPoly expected;
    if (s.family == "Q") {
      expected = factorial(s.idx[0]) * factorial(s.idx[1]) * sl2_q(s.idx[0], s.idx[1]);
    } else {
      expected = factorial(s.idx[0]) * factorial(s.idx[1]) * factorial(s.idx[2]) * sl2_c(s.idx[0], s.idx[1], s.idx[2]);
    }
    const bool symbol_ok = v.leading_symbol(e.state) == expected;
    all = all && invariant && symbol_ok;
    arr.push_back({{"symbol", s.str()}, {"weight", e.weight}, {"degree", e.degree}, {"invariant", invariant},
                   {"leading_symbol_ok", symbol_ok}});
    text << s.str() << " weight " << e.weight << ": invariant " << (invariant ? "yes" : "NO") << ", leading symbol "
         << (symbol_ok ? "ok" : "MISMATCH") << "\n";
  }
  if (o.json) {
    emit(out, {{"max_weight", w}, {"generators", arr}, {"ok", all}});
  } else {
    out << text.str();
  }
  return all ? kExitOk : kExitVerifyFailed;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (o.positional.size() != 1) throw ParseError("verify expects a suite name or 'all'");
  std::vector<std::string> names;
  if (o.positional[0] == "all") {
    names = suite_names();
  } else {
    suite_title(o.positional[0]);
    names = {o.positional[0]};
  }
  bool all = true;
  auto arr = nlohmann::json::array();
  std::ostringstream text;
  for (const auto& name : names) {
    const SuiteResult r = run_suite(name);
    all = all && r.ok();
    arr.push_back(to_json(r));
    text << (r.ok() ? "PASS " : "FAIL ") << r.name << ": " << r.passed << "/" << (r.passed + r.failed)
         << " checks over " << r.instances << " instances\n";
    for (const auto& f : r.failures) text << "  " << f << "\n";
  }
  if (o.json) {
    emit(out, {{"suites", arr}, {"ok", all}});
  } else {
    out << text.str();
  }
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in universal affine vertex algebras and their orbifolds", "voa"};
  app.require_subcommand(1);
  Options o;

  auto* ope = app.add_subcommand("ope", "OPE of two states");
  ope->add_option("--algebra", o.algebra, "sl2, heisenberg<n> or a config path");
  ope->add_option("states", o.positional, "two states, e.g. x h(-2)")->required();

  auto* circle = app.add_subcommand("circle", "circle product a o_n b");
  circle->add_option("--algebra", o.algebra, "sl2, heisenberg<n> or a config path");
  circle->add_option("args", o.positional, "a n b")->required();
  circle->allow_extras(false);

  auto* sug = app.add_subcommand("sugawara-check", "Virasoro relations of the Sugawara vector");
  sug->add_option("--algebra", o.algebra, "sl2, heisenberg<n> or a config path");
  sug->add_option("--hdual", o.hdual, "dual Coxeter number (rational)");

  auto* inv = app.add_subcommand("invariants", "basis of an invariant weight space");
  inv->add_option("--algebra", o.algebra, "sl2, heisenberg<n> or a config path");
  inv->add_option("--action", o.action, "adjoint, orthogonal or a config path with an [action] section");
  inv->add_option("--weight", o.weight, "weight")->required()->check(CLI::NonNegativeNumber);

  auto* t1 = app.add_subcommand("table1", "diagonal remainders R_n((0..n),(0..n))");
  t1->add_option("--n-max", o.n_max, "largest n")->check(CLI::PositiveNumber);
  t1->add_flag("--allow-large", o.allow_large, "permit n-max above the default bound");

  auto* rem = app.add_subcommand("remainder", "R_n(I,J) by recursion");
  auto* remd = app.add_subcommand("remainder-direct", "R_n(I,J) from the quantum correction");
  for (auto* sub : {rem, remd}) {
    sub->add_option("--n", o.n, "n")->required();
    sub->add_option("--I", o.I, "comma-separated I")->required();
    sub->add_option("--J", o.J, "comma-separated J")->required();
  }
  remd->add_option("--max-weight", o.max_weight, "weight budget (default 16)");

  auto* dec = app.add_subcommand("decouple", "express a generator through a smaller dictionary");
  dec->add_option("--algebra", o.algebra, "sl2, heisenberg<n> or a config path");
  dec->add_option("--action", o.action, "adjoint, orthogonal or a config path with an [action] section");
  dec->add_option("--dict", o.dict, "symbols such as J[0],J[2] or Q[0,0]")->required();
  dec->add_option("--target", o.target, "target symbol such as J[4]")->required();
  dec->add_option("--max-degree", o.max_degree, "degree bound (default: the target weight)");

  auto* gens = app.add_subcommand("sl2-generators", "sl2 invariant generators with checks");
  gens->add_option("--max-weight", o.max_weight, "largest generator weight (default 6)");

  auto* ver = app.add_subcommand("verify", "run a property suite");
  ver->add_option("suite", o.positional, "suite name or all")->required();

  for (auto* sub : {ope, circle, sug, inv, t1, rem, remd, dec, gens, ver})
    sub->add_flag("--json", o.json, "emit JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(ope)) return cmd_ope(o, out);
    if (app.got_subcommand(circle)) return cmd_circle(o, out);
    if (app.got_subcommand(sug)) return cmd_sugawara(o, out);
    if (app.got_subcommand(inv)) return cmd_invariants(o, out);
    if (app.got_subcommand(t1)) return cmd_table1(o, out);
    if (app.got_subcommand(rem)) return cmd_remainder(o, out, false);
    if (app.got_subcommand(remd)) return cmd_remainder(o, out, true);
    if (app.got_subcommand(dec)) return cmd_decouple(o, out);
    if (app.got_subcommand(gens)) return cmd_sl2_generators(o, out);
    if (app.got_subcommand(ver)) return cmd_verify(o, out);
  } catch (const Error& e) {
    err << "error [" << e.kind() << "]: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace voa
