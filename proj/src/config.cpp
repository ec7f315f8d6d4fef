// Copyright 2026 The mechlab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "mechlab/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mechlab/error.hpp"

namespace mechlab {

using nlohmann::json;

const char* experiment_kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kSolve: return "solve";
    case ExperimentKind::kCertifyEquivalence: return "certify_equivalence";
    case ExperimentKind::kCertifyTheorem1: return "certify_theorem1";
    case ExperimentKind::kRobust: return "robust";
    case ExperimentKind::kMonotonicity: return "monotonicity";
    case ExperimentKind::kRepair: return "repair";
    case ExperimentKind::kDeterministic: return "deterministic";
  }
  return "unknown";
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("field '" + path + "': " + what);
}

// Typed access to one JSON object, rejecting unknown keys.
class Fields {
 public:
  Fields(const json& j, std::string path, std::set<std::string> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j.is_object()) fail(path_, "expected an object");
    for (const auto& [key, value] : j.items()) {
      if (!allowed.count(key)) fail(at(key), "unknown field");
    }
  }

  std::string at(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }
  bool has(const std::string& key) const { return j_.contains(key); }
  const json& raw(const std::string& key) const {
    if (!has(key)) fail(at(key), "missing");
    return j_.at(key);
  }

  double number(const std::string& key, std::optional<double> fallback = {}) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      fail(at(key), "missing");
    }
    const json& v = j_.at(key);
    if (!v.is_number()) fail(at(key), "expected a number");
    return v.get<double>();
  }

  long long integer(const std::string& key, std::optional<long long> fallback = {}) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      fail(at(key), "missing");
    }
    const json& v = j_.at(key);
    if (!v.is_number_integer()) fail(at(key), "expected an integer");
    return v.get<long long>();
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) fail(at(key), "expected true or false");
    return v.get<bool>();
  }

  std::string text(const std::string& key, std::optional<std::string> fallback = {},
                   const std::set<std::string>& choices = {}) const {
    std::string s;
    if (!has(key)) {
      if (!fallback) fail(at(key), "missing");
      s = *fallback;
    } else {
      const json& v = j_.at(key);
      if (!v.is_string()) fail(at(key), "expected a string");
      s = v.get<std::string>();
    }
    if (!choices.empty() && !choices.count(s)) {
      std::string list;
      for (const auto& c : choices) list += (list.empty() ? "" : ", ") + c;
      fail(at(key), "'" + s + "' is not one of " + list);
    }
    return s;
  }

  std::vector<double> numbers(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_array()) fail(at(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) fail(at(key) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

 private:
  const json& j_;
  std::string path_;
};

const std::map<std::string, ExperimentKind>& kinds() {
  static const std::map<std::string, ExperimentKind> m = {
      {"solve", ExperimentKind::kSolve},
      {"certify_equivalence", ExperimentKind::kCertifyEquivalence},
      {"certify_theorem1", ExperimentKind::kCertifyTheorem1},
      {"robust", ExperimentKind::kRobust},
      {"monotonicity", ExperimentKind::kMonotonicity},
      {"repair", ExperimentKind::kRepair},
      {"deterministic", ExperimentKind::kDeterministic},
  };
  return m;
}

std::set<std::string> allowed_options(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kSolve: return {"symmetric", "ic_mode", "support_reduction"};
    case ExperimentKind::kCertifyEquivalence: return {"solve_full_hetero"};
    case ExperimentKind::kCertifyTheorem1: return {"source", "items"};
    case ExperimentKind::kRobust: return {};
    case ExperimentKind::kMonotonicity: return {"source", "items"};
    case ExperimentKind::kRepair: return {"source", "rule", "items", "coarse"};
    case ExperimentKind::kDeterministic: return {"compare_lp"};
  }
  return {};
}

std::vector<double> parse_marginal(const Fields& f, const std::string& key) {
  if (!f.has(key)) return {};
  Fields m(f.raw(key), f.at(key), {"pmf"});
  return m.has("pmf") ? m.numbers("pmf") : std::vector<double>{};
}

DistributionSpec parse_distribution(const json& j, const std::string& path, int n) {
  const std::set<std::string> keys = {"kind",    "marginal", "types", "weights", "expr",
                                      "a",       "b",        "parts", "mix"};
  Fields f(j, path, keys);
  DistributionSpec d;
  d.type = f.text("kind", std::nullopt,
                  {"iid", "table", "density_expr", "comonotone", "mixture"});
  auto only = [&](std::set<std::string> ok) {
    ok.insert("kind");
    for (const auto& [key, value] : j.items()) {
      if (!ok.count(key)) fail(f.at(key), "not used by kind " + d.type);
    }
  };
  if (d.type == "iid" || d.type == "comonotone") {
    only({"marginal"});
    d.pmf = parse_marginal(f, "marginal");
  } else if (d.type == "table") {
    only({"types", "weights"});
    const json& ts = f.raw("types");
    if (!ts.is_array() || ts.empty()) fail(f.at("types"), "expected a nonempty array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const std::string p = f.at("types") + "[" + std::to_string(i) + "]";
      if (!ts[i].is_array() || static_cast<int>(ts[i].size()) != n) {
        fail(p, "expected an array of " + std::to_string(n) + " numbers");
      }
      std::vector<double> v;
      for (const json& x : ts[i]) {
        if (!x.is_number()) fail(p, "expected numbers");
        v.push_back(x.get<double>());
      }
      d.types.emplace_back(std::move(v));
    }
    d.weights = f.numbers("weights");
    if (d.weights.size() != d.types.size()) fail(f.at("weights"), "length differs from types");
  } else if (d.type == "density_expr") {
    only({"expr", "a", "b"});
    d.density.name = f.text("expr", std::string("uniform"), {"uniform", "exp_rate_a", "beta_ab"});
    d.density.a = f.number("a", 1.0);
    d.density.b = f.number("b", 1.0);
  } else {
    only({"parts", "mix"});
    const json& parts = f.raw("parts");
    if (!parts.is_array() || parts.empty()) fail(f.at("parts"), "expected a nonempty array");
    for (std::size_t i = 0; i < parts.size(); ++i) {
      d.parts.push_back(
          parse_distribution(parts[i], f.at("parts") + "[" + std::to_string(i) + "]", n));
    }
    d.mix = f.numbers("mix");
    if (d.mix.size() != d.parts.size()) fail(f.at("mix"), "length differs from parts");
  }
  return d;
}

ExperimentConfig parse_experiment(const json& j, const std::string& path, std::size_t index) {
  Fields f(j, path,
           {"name", "kind", "domain", "grid", "strict_only", "distribution", "tolerance",
            "seed", "options"});
  ExperimentConfig c;
  std::set<std::string> kind_names;
  for (const auto& [name, k] : kinds()) kind_names.insert(name);
  const std::string kind = f.text("kind", std::nullopt, kind_names);
  c.kind = kinds().at(kind);
  c.name = f.text("name", kind + "_" + std::to_string(index));
  c.domain = parse_domain(f.text("domain", std::string("identical"), {"identical", "heterogeneous"}));

  Fields g(f.raw("grid"), f.at("grid"), {"n", "v_low", "v_high", "points", "levels"});
  c.n = static_cast<int>(g.integer("n"));
  if (c.n < 1 || c.n > 8) fail(g.at("n"), "must lie in [1, 8]");
  try {
    if (g.has("levels")) {
      if (g.has("points")) fail(g.at("points"), "conflicts with levels");
      const Grid grid = g.has("v_low") || g.has("v_high")
                            ? Grid::FromLevels(c.n, g.numbers("levels"), g.number("v_low"),
                                               g.number("v_high"))
                            : Grid::FromLevels(c.n, g.numbers("levels"));
      c.levels = grid.levels();
      c.v_low = grid.v_low();
      c.v_high = grid.v_high();
    } else {
      const long long points = g.integer("points");
      if (points < 2 || points > 10000) fail(g.at("points"), "must lie in [2, 10000]");
      const Grid grid = Grid::Uniform(c.n, g.number("v_low", 0.0), g.number("v_high", 1.0),
                                      static_cast<int>(points));
      c.levels = grid.levels();
      c.v_low = grid.v_low();
      c.v_high = grid.v_high();
    }
  } catch (const Error& e) {
    throw ConfigError("field '" + f.at("grid") + "': " + e.what());
  }

  c.strict_only = f.boolean("strict_only", false);
  c.tolerance = f.number("tolerance", 1e-8);
  if (!(c.tolerance > 0.0)) fail(f.at("tolerance"), "must be positive");
  const long long seed = f.integer("seed", 0);
  if (seed < 0) fail(f.at("seed"), "must be nonnegative");
  c.seed = static_cast<std::uint64_t>(seed);

  if (f.has("distribution")) {
    c.distribution = parse_distribution(f.raw("distribution"), f.at("distribution"), c.n);
  }
  if (f.has("options")) {
    Fields o(f.raw("options"), f.at("options"), allowed_options(c.kind));
    ExperimentOptions& op = c.options;
    op.symmetric = o.boolean("symmetric", op.symmetric);
    op.ic_mode = o.text("ic_mode", op.ic_mode, {"auto", "full", "generated"});
    op.support_reduction = o.boolean("support_reduction", op.support_reduction);
    op.solve_full_hetero = o.boolean("solve_full_hetero", op.solve_full_hetero);
    std::set<std::string> sources = {"optimal", "random"};
    if (c.kind == ExperimentKind::kCertifyTheorem1) sources.insert("anti_rank");
    if (c.kind == ExperimentKind::kMonotonicity) sources.insert("uniform_price");
    op.source = o.text("source", op.source, sources);
    op.items = static_cast<int>(o.integer("items", op.items));
    if (op.items < 1 || op.items > 1000) fail(o.at("items"), "must lie in [1, 1000]");
    op.coarse = o.boolean("coarse", op.coarse);
    op.rule = o.text("rule", op.rule, {"lex_max", "almost_deterministic"});
    op.compare_lp = o.boolean("compare_lp", op.compare_lp);
  }

  // Structural requirements per kind.
  const bool hetero = c.domain == Domain::kHeterogeneous;
  switch (c.kind) {
    case ExperimentKind::kCertifyEquivalence:
      if (!hetero) fail(f.at("domain"), "certify_equivalence needs the heterogeneous domain");
      if (!c.strict_only) fail(f.at("strict_only"), "certify_equivalence needs strict types");
      break;
    case ExperimentKind::kCertifyTheorem1:
      if (!hetero) fail(f.at("domain"), "certify_theorem1 needs the heterogeneous domain");
      if (!c.strict_only) fail(f.at("strict_only"), "certify_theorem1 needs strict types");
      if (c.options.source == "anti_rank" && c.n != 2) fail(f.at("grid.n"), "anti_rank needs n = 2");
      break;
    case ExperimentKind::kRobust:
    case ExperimentKind::kRepair:
      if (hetero) fail(f.at("domain"), kind + " needs the identical domain");
      break;
    case ExperimentKind::kDeterministic:
      if (c.n > 3) fail(g.at("n"), "deterministic search supports n <= 3");
      break;
    default:
      break;
  }
  if (c.options.symmetric && !hetero) fail(f.at("options.symmetric"), "needs the heterogeneous domain");

  try {
    (void)c.build_distribution();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("field '" + f.at("distribution") + "': " + e.what());
  }
  return c;
}

// Mass of each type moved to its decreasing rearrangement.
Distribution fold_sorted(const Distribution& d) {
  std::map<TypePoint, double> mass;
  for (std::size_t k = 0; k < d.size(); ++k) {
    mass[sorted_decreasing(d.types()[k])] += d.weights()[k];
  }
  std::vector<TypePoint> types;
  std::vector<double> weights;
  for (const auto& [v, w] : mass) {
    types.push_back(v);
    weights.push_back(w);
  }
  return Distribution::Normalized(Domain::kIdentical, d.levels(), std::move(types),
                                  std::move(weights));
}

MarginalCdf marginal_of(const DistributionSpec& d, const std::vector<double>& levels) {
  if (d.pmf.empty()) return MarginalCdf::UniformOn(levels);
  if (d.pmf.size() != levels.size()) throw Error("pmf length differs from the grid levels");
  return MarginalCdf::FromPmf(levels, d.pmf);
}

// Heterogeneous-grid distribution for iid, table and mixture specs; the
// caller folds or restricts.
Distribution build(const DistributionSpec& d, const ExperimentConfig& c, Domain domain) {
  const Grid grid = c.grid();
  if (d.type == "iid") return iid_distribution(marginal_of(d, c.levels), c.n);
  if (d.type == "table") return Distribution::Normalized(domain, c.levels, d.types, d.weights);
  if (d.type == "density_expr") return density_distribution(d.density, grid, domain, false);
  if (d.type == "comonotone") {
    if (domain != Domain::kIdentical) throw Error("comonotone needs the identical domain");
    return comonotone_fmin(marginal_of(d, c.levels), c.n);
  }
  std::vector<Distribution> parts;
  for (const DistributionSpec& p : d.parts) parts.push_back(build(p, c, domain));
  return mixture(parts, d.mix);
}

}  // namespace

Grid ExperimentConfig::grid() const { return Grid::FromLevels(n, levels, v_low, v_high); }

std::vector<TypePoint> ExperimentConfig::types() const {
  return domain == Domain::kIdentical ? enumerate_identical(grid(), strict_only)
                                      : enumerate_hetero(grid(), strict_only);
}

Distribution ExperimentConfig::build_distribution() const {
  const bool via_hetero = distribution.type == "iid" || distribution.type == "mixture";
  Distribution d = build(distribution, *this, via_hetero ? Domain::kHeterogeneous : domain);
  if (strict_only) d = restrict_to_strict(d);
  if (domain == Domain::kIdentical && d.domain() == Domain::kHeterogeneous) d = fold_sorted(d);
  return d;
}

std::vector<ExperimentConfig> parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  std::vector<ExperimentConfig> out;
  if (doc.is_object() && doc.contains("experiments")) {
    Fields top(doc, "", {"experiments"});
    const json& list = top.raw("experiments");
    if (!list.is_array() || list.empty()) fail("experiments", "expected a nonempty array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      out.push_back(parse_experiment(list[i], "experiments[" + std::to_string(i) + "]", i));
    }
  } else {
    out.push_back(parse_experiment(doc, "", 0));
  }
  std::set<std::string> names;
  for (const auto& c : out) {
    if (!names.insert(c.name).second) fail("name", "duplicate experiment name '" + c.name + "'");
  }
  return out;
}

std::vector<ExperimentConfig> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace mechlab
