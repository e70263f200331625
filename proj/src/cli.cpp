#include "hjale/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "hjale/cfrac.hpp"
#include "hjale/gluing.hpp"
#include "hjale/logmass.hpp"
#include "hjale/metricnum.hpp"
#include "hjale/parabolic.hpp"
#include "hjale/resolution.hpp"
#include "hjale/surface_doc.hpp"

namespace hjale {

namespace {

using nlohmann::json;

// Thrown for malformed command-line values; mapped to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::int64_t>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + std::to_string(xs[i]);
  return out;
}

std::string exact_and_decimal(const Fraction& f) { return fmt::format("{} ({:.12g})", f.str(), f.to_double()); }

std::pair<std::int64_t, std::int64_t> parse_pq(const std::string& text) {
  Fraction f;
  try {
    f = Fraction::parse(text);
  } catch (const std::exception& e) {
    throw UsageError("malformed fraction '" + text + "': " + e.what());
  }
  if (!(Fraction(0) < f && f < Fraction(1))) throw UsageError("fraction " + text + " must lie strictly between 0 and 1");
  return {f.num_i64(), f.den_i64()};
}

std::vector<Level> parse_levels(const std::vector<std::string>& items, std::ostream& err) {
  std::vector<Level> out;
  for (const auto& s : items) {
    bool decimal = false;
    try {
      out.push_back(Level::parse(s, &decimal));
    } catch (const std::exception& e) {
      throw UsageError("malformed level '" + s + "': " + e.what());
    }
    if (decimal) fmt::print(err, "warning: decimal level {} read exactly as {}\n", s, out.back().str());
  }
  return out;
}

std::vector<Fraction> parse_fraction_list(const std::vector<std::string>& items, std::ostream& err) {
  std::vector<Fraction> out;
  for (const auto& s : items) {
    try {
      if (s.find_first_of(".eE") != std::string::npos) {
        out.push_back(Fraction::from_decimal(s));
        fmt::print(err, "warning: decimal value {} read exactly as {}\n", s, out.back().str());
      } else {
        out.push_back(Fraction::parse(s));
      }
    } catch (const std::exception& e) {
      throw UsageError("malformed value '" + s + "': " + e.what());
    }
  }
  return out;
}

// "m,n;m,n;..." label chain.
LabelChain parse_chain(const std::string& text) {
  LabelChain chain;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw UsageError("chain entries are 'm,n' separated by ';'");
    try {
      chain.push_back({std::stoll(item.substr(0, comma)), std::stoll(item.substr(comma + 1))});
    } catch (const std::exception&) {
      throw UsageError("malformed chain entry '" + item + "'");
    }
  }
  return chain;
}

std::string chain_text(const LabelChain& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    out += fmt::format("{}({},{})", i ? " " : "", chain[i].m, chain[i].n);
  }
  return out;
}

json chain_json(const LabelChain& chain) {
  json out = json::array();
  for (const auto& a : chain) out.push_back({a.m, a.n});
  return out;
}

std::vector<std::string> level_strings(const std::vector<Level>& levels) {
  std::vector<std::string> out;
  for (const auto& l : levels) out.push_back(l.str());
  return out;
}

int cmd_hj(const std::string& fraction, bool as_json, std::ostream& out) {
  const auto [p, q] = parse_pq(fraction);
  const HJExpansion exp = hj_expand(p, q);
  const HJExpansion dual = hj_expand(q - p, q);
  const Fraction alpha(p, q);
  const CurveChain chain = fiber_chain(alpha);
  const auto [left, right] = singular_strings(alpha);
  const CurveChain down = blow_down_fully(chain);
  if (as_json) {
    json j{{"version", kVersion},
           {"fraction", alpha.str()},
           {"digits", exp.digits},
           {"approximants", chain_json(exp.approximants)},
           {"dual_fraction", Fraction(q - p, q).str()},
           {"dual_digits", dual.digits},
           {"fiber_chain", chain.selfints},
           {"singular_strings", {left.selfints, right.selfints}},
           {"blowup_count", chain.size() - 1},
           {"blow_down", down.selfints}};
    out << j.dump(2) << '\n';
    return 0;
  }
  fmt::print(out, "hjale {} hj\n", kVersion);
  fmt::print(out, "fraction: {}\n", alpha.str());
  fmt::print(out, "digits: {}\n", join(exp.digits));
  fmt::print(out, "approximants: {}\n", chain_text(exp.approximants));
  fmt::print(out, "dual fraction: {}\n", Fraction(q - p, q).str());
  fmt::print(out, "dual digits: {}\n", join(dual.digits));
  fmt::print(out, "fiber chain: {}\n", to_string(chain));
  fmt::print(out, "singular strings: [{}] [{}]\n", to_string(left), to_string(right));
  fmt::print(out, "blow-up count: {}\n", chain.size() - 1);
  fmt::print(out, "blow-down: [{}]\n", to_string(down));
  return 0;
}

void print_terms(std::ostream& out, const LogCoefficients& c) {
  for (std::size_t j = 0; j < c.per_term.size(); ++j) {
    fmt::print(out, "term {}: coefficient {}, u {}\n", j + 1, exact_and_decimal(c.per_term[j].coefficient),
               c.per_term[j].u.str());
  }
}

json terms_json(const LogCoefficients& c) {
  json out = json::array();
  for (const auto& t : c.per_term) out.push_back({{"coefficient", t.coefficient.str()}, {"u", t.u.str()}});
  return out;
}

int cmd_mass(const std::string& fraction, const std::string& chain_spec, const std::vector<std::string>& u_items,
             const std::vector<std::string>& level_items, bool as_json, std::ostream& out, std::ostream& err) {
  if (u_items.empty() == level_items.empty()) throw UsageError("give exactly one of --u and --levels");
  if (fraction.empty() == chain_spec.empty()) throw UsageError("give either a fraction or --chain");

  LabelChain chain;
  std::optional<std::pair<std::int64_t, std::int64_t>> pq;
  if (!fraction.empty()) {
    pq = parse_pq(fraction);
    chain = hj_label_chain(pq->first, pq->second);
  } else {
    chain = parse_chain(chain_spec);
  }
  validate_label_chain(chain);

  LogCoefficients coeffs;
  std::optional<LogCoefficients> cross;
  std::vector<Level> levels;
  if (!level_items.empty()) {
    levels = parse_levels(level_items, err);
    const MonopoleData data = monopole_from_chain(chain, levels);
    coeffs = log_coeffs_from_levels(data);
    cross = asymptotic_coeffs_from_pairs(data);
  } else {
    const auto u = parse_fraction_list(u_items, err);
    coeffs = mu_from_chain(chain, u);
  }
  std::vector<Fraction> u;
  for (const auto& t : coeffs.per_term) u.push_back(t.u);
  const MassVerdict verdict = pq ? mass_verdict(pq->first, pq->second, u) : mass_verdict(chain, u);
  const bool routes_agree = !cross || (*cross->a == *coeffs.a && *cross->b == *coeffs.b);

  if (as_json) {
    json j{{"version", kVersion},
           {"chain", chain_json(chain)},
           {"a", coeffs.a ? json(coeffs.a->str()) : json(nullptr)},
           {"b", coeffs.b ? json(coeffs.b->str()) : json(nullptr)},
           {"mu", coeffs.mu.str()},
           {"mu_decimal", coeffs.mu.to_double()},
           {"terms", terms_json(coeffs)},
           {"sign", to_string(verdict.sign)},
           {"crepant", verdict.crepant}};
    if (pq) j["fraction"] = Fraction(pq->first, pq->second).str();
    if (!levels.empty()) {
      j["levels"] = level_strings(levels);
      j["routes_agree"] = routes_agree;
    }
    out << j.dump(2) << '\n';
    return routes_agree ? 0 : 1;
  }
  fmt::print(out, "hjale {} mass\n", kVersion);
  if (pq) fmt::print(out, "fraction: {}\n", Fraction(pq->first, pq->second).str());
  fmt::print(out, "chain: {}\n", chain_text(chain));
  if (!levels.empty()) fmt::print(out, "levels: {}\n", fmt::join(level_strings(levels), " "));
  fmt::print(out, "a: {}\n", coeffs.a ? exact_and_decimal(*coeffs.a) : "n/a (u-space input)");
  fmt::print(out, "b: {}\n", coeffs.b ? exact_and_decimal(*coeffs.b) : "n/a (u-space input)");
  fmt::print(out, "mu: {}\n", exact_and_decimal(coeffs.mu));
  print_terms(out, coeffs);
  fmt::print(out, "sign: {}\n", to_string(verdict.sign));
  fmt::print(out, "crepant: {}\n", verdict.crepant ? "yes" : "no");
  if (cross) fmt::print(out, "routes agree: {}\n", routes_agree ? "yes" : "no");
  return routes_agree ? 0 : 1;
}

int cmd_blowup(const std::string& fraction, std::size_t position, const std::vector<std::string>& level_items,
               const std::string& at, const std::vector<std::string>& u_items, bool as_json, std::ostream& out,
               std::ostream& err) {
  const auto [p, q] = parse_pq(fraction);
  const LabelChain chain = hj_label_chain(p, q);
  const std::size_t k = chain.size() - 3;
  const std::vector<Level> levels = level_items.empty() ? default_levels(k) : parse_levels(level_items, err);
  std::optional<Level> inserted;
  if (!at.empty()) inserted = parse_levels({at}, err).front();
  const MonopoleData data = blowup_insert(monopole_from_chain(chain, levels), position, inserted);
  const LabelChain& fresh = *data.chain;
  const std::size_t k2 = fresh.size() - 3;

  std::vector<Fraction> coefficients;
  for (std::size_t j = 1; j <= k2; ++j) coefficients.push_back(chain_mu_coefficient(fresh, j));
  const LogCoefficients from_levels = log_coeffs_from_levels(data);
  std::optional<LogCoefficients> from_u;
  if (!u_items.empty()) from_u = mu_from_chain(fresh, parse_fraction_list(u_items, err));
  const LogCoefficients& shown = from_u ? *from_u : from_levels;
  std::vector<Fraction> u;
  for (const auto& t : shown.per_term) u.push_back(t.u);
  const MassVerdict verdict = mass_verdict(fresh, u);

  if (as_json) {
    json j{{"version", kVersion},
           {"fraction", Fraction(p, q).str()},
           {"position", position},
           {"chain", chain_json(fresh)},
           {"levels", level_strings(data.levels)},
           {"coefficients", fraction_strings(coefficients)},
           {"mu", shown.mu.str()},
           {"terms", terms_json(shown)},
           {"sign", to_string(verdict.sign)}};
    if (!from_u) j["a"] = from_levels.a->str(), j["b"] = from_levels.b->str();
    out << j.dump(2) << '\n';
    return 0;
  }
  fmt::print(out, "hjale {} blowup-insert\n", kVersion);
  fmt::print(out, "fraction: {}\n", Fraction(p, q).str());
  fmt::print(out, "position: {}\n", position);
  fmt::print(out, "chain: {}\n", chain_text(fresh));
  fmt::print(out, "levels: {}\n", fmt::join(level_strings(data.levels), " "));
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    fmt::print(out, "coefficient {}: {}\n", j + 1, exact_and_decimal(coefficients[j]));
  }
  if (!from_u) {
    fmt::print(out, "a: {}\n", exact_and_decimal(*from_levels.a));
    fmt::print(out, "b: {}\n", exact_and_decimal(*from_levels.b));
  }
  fmt::print(out, "mu: {}\n", exact_and_decimal(shown.mu));
  print_terms(out, shown);
  fmt::print(out, "sign: {}\n", to_string(verdict.sign));
  return 0;
}

SurfaceDocument load_document(const std::string& path) {
  try {
    return load_surface_document(path);
  } catch (const DocumentError& e) {
    if (e.line() > 0) throw UsageError(fmt::format("{}:{}:{}: {}", path, e.line(), e.column(), e.what()));
    throw UsageError(fmt::format("{}: {}", path, e.what()));
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
}

std::string contains_text(const ParabolicSurface& s, const std::vector<std::size_t>& idx) {
  std::vector<std::string> names;
  for (auto j : idx) names.push_back(s.points[j].base);
  return names.empty() ? "-" : fmt::format("{}", fmt::join(names, " "));
}

void print_stability(std::ostream& out, const StabilityVerdict& v, const ParabolicSurface& s) {
  fmt::print(out, "stability: {} (min slope {})\n", to_string(v.kind), v.min_slope.str());
  for (const auto& c : v.candidates) {
    fmt::print(out, "  {:<18} {:<16} [S]^2 = {:<3} through {:<12} slope {}\n", c.id, to_string(c.kind),
               c.self_intersection, contains_text(s, c.contains), c.slope.str());
  }
  if (v.polystable_pair) fmt::print(out, "slope-0 pair: {} / {}\n", v.s1().id, v.s2().id);
  fmt::print(out, "sporadic: {}\n", is_sporadic(s, v) ? "yes" : "no");
}

int cmd_stability(const std::string& path, bool as_json, std::ostream& out) {
  const SurfaceDocument doc = load_document(path);
  const StabilityVerdict v = classify(doc.surface);
  if (as_json) {
    json j = to_json(v, doc.surface);
    j["version"] = kVersion;
    out << j.dump(2) << '\n';
    return 0;
  }
  fmt::print(out, "hjale {} stability\n", kVersion);
  print_stability(out, v, doc.surface);
  for (const auto& n : v.notes) fmt::print(out, "note: {}\n", n);
  return 0;
}

int cmd_pipeline(const std::string& path, bool as_json, std::ostream& out) {
  const SurfaceDocument doc = load_document(path);
  const PipelineReport rep = pipeline_report(doc.surface, doc.extra_points);
  const int code = exit_code(rep.verdict);
  if (as_json) {
    json j = to_json(rep);
    j["version"] = kVersion;
    j["input"] = to_json(doc);
    out << j.dump(2) << '\n';
    return code;
  }
  const auto& s = doc.surface;
  fmt::print(out, "hjale {} pipeline\n", kVersion);
  fmt::print(out, "genus: {}, model: {}, marked points: {}, extra points: {}\n", s.genus, to_string(s.model),
             s.points.size(), doc.extra_points.size());
  print_stability(out, rep.stability, s);
  std::vector<std::string> orders;
  for (auto q : rep.orbifold.orders) orders.push_back(std::to_string(q));
  fmt::print(out, "orbifold orders: {}\n", orders.empty() ? "none" : fmt::format("{}", fmt::join(orders, " ")));
  fmt::print(out, "chi_orb: {}\n", rep.chi.str());
  fmt::print(out, "good orbifold: {}\n", rep.good ? "yes" : "no");
  fmt::print(out, "SFK possible: {}\n", rep.sfk_possible ? "yes" : "no");
  if (rep.fix) fmt::print(out, "fixed points: {} (dim V0 = {})\n", to_string(rep.fix->kind), rep.fix->dim_v0);
  if (rep.gluing) {
    const auto& g = *rep.gluing;
    fmt::print(out, "gluing matrix: {}\n", g.matrix.rows() ? g.matrix.str() : "(no rows)");
    for (std::size_t i = 0; i < g.column_labels.size(); ++i) fmt::print(out, "  column {}: {}\n", i + 1, g.column_labels[i]);
    fmt::print(out, "c1 = {}, c2 = {}, positive kernel: {}\n", g.c1, g.c2, g.positive_kernel ? "yes" : "no");
    if (g.kernel_witness) {
      fmt::print(out, "kernel witness: ({})\n", fmt::join(fraction_strings(*g.kernel_witness), ", "));
    }
    fmt::print(out, "matrix verdict: {}\n", to_string(g.verdict));
  }
  for (std::size_t j = 0; j < rep.fiber_chains.size(); ++j) {
    fmt::print(out, "fiber over {} (weight {}): {}\n", s.points[j].base, s.points[j].weight.str(),
               to_string(rep.fiber_chains[j]));
  }
  fmt::print(out, "blow-ups: {}\n", rep.total_blowups);
  fmt::print(out, "surface: {}\n", rep.description);
  for (const auto& n : rep.notes) fmt::print(out, "note: {}\n", n);
  fmt::print(out, "verdict: {}\n", to_string(rep.verdict));
  return code;
}

int cmd_metric_verify(const std::string& fraction, const std::vector<std::string>& level_items, int samples,
                      std::uint64_t seed, const std::string& csv, bool as_json, std::ostream& out, std::ostream& err) {
  const auto [p, q] = parse_pq(fraction);
  if (samples <= 0) throw UsageError("--samples must be positive");
  VerifyOptions opt;
  opt.p = p;
  opt.q = q;
  opt.samples = samples;
  opt.seed = seed;
  if (!level_items.empty()) opt.levels = parse_levels(level_items, err);
  const VerifyReport rep = verify_metric(opt);
  if (!csv.empty()) write_decay_csv(csv, rep.decay);

  if (as_json) {
    json checks = json::array();
    for (const auto& c : rep.checks) {
      checks.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed},
                        {"detail", c.detail}});
    }
    json decay = json::array();
    for (const auto& d : rep.decay) decay.push_back({{"r", d.r}, {"residual", d.residual}});
    json j{{"version", kVersion},
           {"fraction", Fraction(p, q).str()},
           {"levels", level_strings(rep.levels)},
           {"samples", samples},
           {"seed", seed},
           {"exact", {{"a", rep.exact_a}, {"b", rep.exact_b}, {"mu", rep.exact_mu}}},
           {"sign", to_string(rep.exact_sign)},
           {"fit", {{"a", rep.fit.a}, {"b", rep.fit.b}, {"mu", rep.fit.mu}, {"rms", rep.fit.rms}}},
           {"decay", decay},
           {"checks", checks},
           {"passed", rep.all_passed}};
    out << j.dump(2) << '\n';
    return rep.all_passed ? 0 : 1;
  }
  fmt::print(out, "hjale {} metric-verify\n", kVersion);
  fmt::print(out, "fraction: {}\n", Fraction(p, q).str());
  fmt::print(out, "levels: {}\n", fmt::join(level_strings(rep.levels), " "));
  fmt::print(out, "samples: {}, seed: {}\n", samples, seed);
  fmt::print(out, "exact a = {}, b = {}, mu = {} ({})\n", rep.exact_a, rep.exact_b, rep.exact_mu,
             to_string(rep.exact_sign));
  fmt::print(out, "fitted a = {:.10g}, b = {:.10g}, mu = {:.10g}\n", rep.fit.a, rep.fit.b, rep.fit.mu);
  for (const auto& d : rep.decay) fmt::print(out, "potential residual at r = {:g}: {:.6e}\n", d.r, d.residual);
  for (const auto& c : rep.checks) {
    fmt::print(out, "[{}] {:<20} {:.3e} (reference {:.3e}) {}\n", c.passed ? "PASS" : "FAIL", c.name, c.value,
               c.tolerance, c.detail);
  }
  if (!csv.empty()) fmt::print(out, "csv: {}\n", csv);
  fmt::print(out, "result: {}\n", rep.all_passed ? "all checks passed" : "some checks failed");
  return rep.all_passed ? 0 : 1;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hirzebruch-Jung chains, ALE mass and parabolic gluing checks", "hjale"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  bool as_json = false;
  std::string fraction;
  std::string chain_spec;
  std::string path;
  std::string at;
  std::string csv;
  std::vector<std::string> u_items;
  std::vector<std::string> level_items;
  std::size_t position = 0;
  int samples = 100;
  std::uint64_t seed = 7;

  auto* hj = app.add_subcommand("hj", "HJ expansion, fiber chain and blow-up count of p/q");
  hj->add_option("fraction", fraction, "p/q with 0 < p < q")->required();
  hj->add_flag("--json", as_json, "machine-readable output");

  auto* mass = app.add_subcommand("mass", "log-term coefficient and mass sign");
  mass->add_option("fraction", fraction, "p/q with 0 < p < q");
  mass->add_option("--chain", chain_spec, "label chain 'm,n;m,n;...' instead of p/q");
  mass->add_option("--u", u_items, "positive u_1..u_k")->delimiter(',');
  mass->add_option("--levels", level_items, "levels y_0 > ... > y_{k+1} = 0 (inf allowed first)")->delimiter(',');
  mass->add_flag("--json", as_json, "machine-readable output");

  auto* blow = app.add_subcommand("blowup-insert", "insert a label at a shared endpoint");
  blow->add_option("fraction", fraction, "p/q with 0 < p < q")->required();
  blow->add_option("--position", position, "index j of the endpoint y_j, 1..k")->required();
  blow->add_option("--levels", level_items, "levels before insertion (default k+1, ..., 0)")->delimiter(',');
  blow->add_option("--at", at, "inserted level (default midpoint)");
  blow->add_option("--u", u_items, "u values for the new chain")->delimiter(',');
  blow->add_flag("--json", as_json, "machine-readable output");

  auto* stab = app.add_subcommand("stability", "classify a parabolic surface document");
  stab->add_option("document", path, "surface document (JSON)")->required();
  stab->add_flag("--json", as_json, "machine-readable output");

  auto* pipe = app.add_subcommand("pipeline", "full existence pipeline for a surface document");
  pipe->add_option("document", path, "surface document (JSON)")->required();
  pipe->add_flag("--json", as_json, "machine-readable output");

  auto* metric = app.add_subcommand("metric-verify", "numerical checks of the explicit ALE metric");
  metric->add_option("fraction", fraction, "p/q with 0 < p < q")->required();
  metric->add_option("--levels", level_items, "levels y_0 > ... > 0")->delimiter(',');
  metric->add_option("--samples", samples, "sample points")->capture_default_str();
  metric->add_option("--seed", seed, "random seed")->capture_default_str();
  metric->add_option("--csv", csv, "write r,residual decay series");
  metric->add_flag("--json", as_json, "machine-readable output");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*hj) return cmd_hj(fraction, as_json, out);
    if (*mass) return cmd_mass(fraction, chain_spec, u_items, level_items, as_json, out, err);
    if (*blow) return cmd_blowup(fraction, position, level_items, at, u_items, as_json, out, err);
    if (*stab) return cmd_stability(path, as_json, out);
    if (*pipe) return cmd_pipeline(path, as_json, out);
    if (*metric) return cmd_metric_verify(fraction, level_items, samples, seed, csv, as_json, out, err);
  } catch (const UsageError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  } catch (const std::out_of_range& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 1;
  }
  return 2;
}

}  // namespace hjale
