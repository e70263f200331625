#include "hjale/surface_doc.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace hjale {

namespace {

using nlohmann::json;

struct Context {
  std::string_view text;

  std::pair<std::size_t, std::size_t> position(std::size_t byte) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    const auto at = text.find("\"" + key + "\"");
    if (at == std::string_view::npos) throw DocumentError(key + ": " + message, 0, 0);
    const auto [line, col] = position(at);
    throw DocumentError(key + ": " + message, line, col);
  }
};

std::string trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

const json& array_at(const Context& ctx, const json& root, const std::string& key) {
  const json& v = root.at(key);
  if (!v.is_array()) ctx.fail(key, "expected an array");
  return v;
}

std::string string_at(const Context& ctx, const json& v, const std::string& key) {
  if (!v.is_string()) ctx.fail(key, "expected a string, got " + v.dump());
  return v.get<std::string>();
}

Fraction parse_weight(const Context& ctx, const json& v, std::size_t j) {
  const std::string text = trimmed(string_at(ctx, v, "weights"));
  Fraction w;
  try {
    w = Fraction::parse(text);
  } catch (const std::exception& e) {
    ctx.fail("weights", "entry " + std::to_string(j) + ": " + e.what());
  }
  if (w.str() != text) ctx.fail("weights", "entry " + std::to_string(j) + " '" + text + "' is not a reduced p/q");
  if (!(Fraction(0) < w && w < Fraction(1))) ctx.fail("weights", "entry " + std::to_string(j) + " is not in (0,1)");
  return w;
}

ProjectivePoint parse_point(const Context& ctx, const std::string& key, const std::string& text) {
  try {
    return ProjectivePoint::parse(text);
  } catch (const std::exception& e) {
    ctx.fail(key, "'" + text + "': " + e.what());
  }
}

std::string base_text(const MarkedPoint& p) { return p.base_coord ? p.base_coord->str() : p.base; }

}  // namespace

SurfaceDocument parse_surface_document(std::string_view text) {
  const Context ctx{text};
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = ctx.position(e.byte > 0 ? e.byte - 1 : 0);
    throw DocumentError(std::string("syntax error: ") + e.what(), line, col);
  }
  if (!root.is_object()) throw DocumentError("document must be a JSON object", 1, 1);

  static const std::set<std::string> known{"genus", "model", "points", "weights", "incidence", "sections",
                                           "extra_points"};
  for (const auto& [key, _] : root.items()) {
    if (!known.count(key)) ctx.fail(key, "unknown key");
  }

  SurfaceDocument doc;
  ParabolicSurface& s = doc.surface;
  if (root.contains("genus")) {
    if (!root["genus"].is_number_integer() || root["genus"].get<int>() < 0) {
      ctx.fail("genus", "expected a non-negative integer");
    }
    s.genus = root["genus"].get<int>();
  }
  if (root.contains("model")) {
    try {
      s.model = parse_bundle_model(string_at(ctx, root["model"], "model"));
    } catch (const std::invalid_argument& e) {
      ctx.fail("model", e.what());
    }
  } else {
    s.model = s.genus == 0 ? BundleModel::TrivialP1 : BundleModel::Sections;
  }

  std::vector<Fraction> weights;
  if (root.contains("weights")) {
    const json& w = array_at(ctx, root, "weights");
    for (std::size_t j = 0; j < w.size(); ++j) weights.push_back(parse_weight(ctx, w[j], j));
  }
  const std::size_t n = weights.size();

  std::vector<std::string> bases;
  if (root.contains("points")) {
    const json& p = array_at(ctx, root, "points");
    if (p.size() != n) ctx.fail("points", "has " + std::to_string(p.size()) + " entries, weights has " + std::to_string(n));
    for (const auto& v : p) bases.push_back(trimmed(string_at(ctx, v, "points")));
  } else {
    for (std::size_t j = 0; j < n; ++j) bases.push_back("P" + std::to_string(j + 1));
  }

  std::vector<std::string> incidence;
  if (root.contains("incidence")) {
    const json& inc = array_at(ctx, root, "incidence");
    if (inc.size() != n) {
      ctx.fail("incidence", "has " + std::to_string(inc.size()) + " entries, weights has " + std::to_string(n));
    }
    for (const auto& v : inc) incidence.push_back(trimmed(string_at(ctx, v, "incidence")));
  } else if (n > 0 && s.model == BundleModel::TrivialP1) {
    ctx.fail("weights", "the trivial-p1 model needs an incidence entry per point");
  }

  for (std::size_t j = 0; j < n; ++j) {
    MarkedPoint mp;
    mp.base = bases[j];
    if (!mp.base.empty() && mp.base.front() == '[') {
      mp.base_coord = parse_point(ctx, "points", mp.base);
    }
    mp.weight = weights[j];
    if (!incidence.empty()) {
      if (s.model == BundleModel::TrivialP1) {
        mp.fiber = parse_point(ctx, "incidence", incidence[j]);
      } else {
        mp.section = incidence[j];
      }
    }
    s.points.push_back(std::move(mp));
  }

  if (root.contains("sections")) {
    for (const auto& v : array_at(ctx, root, "sections")) {
      if (!v.is_object()) ctx.fail("sections", "entries must be objects");
      SectionData sec;
      if (!v.contains("id")) ctx.fail("sections", "entry without id");
      sec.id = string_at(ctx, v["id"], "id");
      if (v.contains("self_intersection")) {
        if (!v["self_intersection"].is_number_integer()) ctx.fail("self_intersection", "expected an integer");
        sec.self_intersection = v["self_intersection"].get<std::int64_t>();
      }
      if (v.contains("contains")) {
        if (!v["contains"].is_array()) ctx.fail("contains", "expected an array of point indices");
        for (const auto& j : v["contains"]) {
          if (!j.is_number_unsigned()) ctx.fail("contains", "expected non-negative point indices");
          sec.contains.insert(j.get<std::size_t>());
        }
      }
      if (v.contains("disjoint_from")) {
        if (!v["disjoint_from"].is_array()) ctx.fail("disjoint_from", "expected an array of section ids");
        for (const auto& id : v["disjoint_from"]) sec.disjoint_from.insert(string_at(ctx, id, "disjoint_from"));
      }
      for (const auto& [key, _] : v.items()) {
        if (key != "id" && key != "self_intersection" && key != "contains" && key != "disjoint_from") {
          ctx.fail(key, "unknown section key");
        }
      }
      s.sections.push_back(std::move(sec));
    }
  }

  if (root.contains("extra_points")) {
    for (const auto& v : array_at(ctx, root, "extra_points")) {
      ExtraPoint y;
      if (v.is_string()) {
        y.fiber = parse_point(ctx, "extra_points", v.get<std::string>());
      } else if (v.is_object() && v.contains("fiber")) {
        y.fiber = parse_point(ctx, "extra_points", string_at(ctx, v["fiber"], "fiber"));
        if (v.contains("base")) y.base = parse_point(ctx, "extra_points", string_at(ctx, v["base"], "base"));
      } else {
        ctx.fail("extra_points", "entries are fiber strings or {\"base\", \"fiber\"} objects");
      }
      doc.extra_points.push_back(std::move(y));
    }
  }

  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw DocumentError(std::string("invalid surface: ") + e.what(), 0, 0);
  }
  return doc;
}

SurfaceDocument load_surface_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_surface_document(buf.str());
}

nlohmann::json to_json(const SurfaceDocument& doc) {
  const ParabolicSurface& s = doc.surface;
  json out;
  out["genus"] = s.genus;
  out["model"] = to_string(s.model);
  json points = json::array();
  json weights = json::array();
  json incidence = json::array();
  bool any_incidence = false;
  for (const auto& p : s.points) {
    points.push_back(base_text(p));
    weights.push_back(p.weight.str());
    if (p.fiber) {
      incidence.push_back(p.fiber->str());
      any_incidence = true;
    } else if (p.section) {
      incidence.push_back(*p.section);
      any_incidence = true;
    } else {
      incidence.push_back("");
    }
  }
  out["points"] = points;
  out["weights"] = weights;
  if (any_incidence) out["incidence"] = incidence;
  json sections = json::array();
  for (const auto& sec : s.sections) {
    sections.push_back({{"id", sec.id},
                        {"self_intersection", sec.self_intersection},
                        {"contains", std::vector<std::size_t>(sec.contains.begin(), sec.contains.end())},
                        {"disjoint_from", std::vector<std::string>(sec.disjoint_from.begin(), sec.disjoint_from.end())}});
  }
  out["sections"] = sections;
  json extra = json::array();
  for (const auto& y : doc.extra_points) {
    if (y.base) {
      extra.push_back({{"base", y.base->str()}, {"fiber", y.fiber.str()}});
    } else {
      extra.push_back(y.fiber.str());
    }
  }
  out["extra_points"] = extra;
  return out;
}

std::string serialize_surface_document(const SurfaceDocument& doc) { return to_json(doc).dump(2); }

bool same_document(const SurfaceDocument& a, const SurfaceDocument& b) {
  const auto& sa = a.surface;
  const auto& sb = b.surface;
  if (sa.genus != sb.genus || sa.model != sb.model || sa.points.size() != sb.points.size()) return false;
  const auto same_opt = [](const std::optional<ProjectivePoint>& x, const std::optional<ProjectivePoint>& y) {
    return x.has_value() == y.has_value() && (!x || x->same_as(*y));
  };
  for (std::size_t j = 0; j < sa.points.size(); ++j) {
    const auto& p = sa.points[j];
    const auto& q = sb.points[j];
    if (!(p.weight == q.weight) || p.section != q.section) return false;
    if (!same_opt(p.fiber, q.fiber) || !same_opt(p.base_coord, q.base_coord)) return false;
    if (!p.base_coord && p.base != q.base) return false;
  }
  std::map<std::string, const SectionData*> by_id;
  for (const auto& s : sb.sections) by_id[s.id] = &s;
  if (by_id.size() != sa.sections.size() || sb.sections.size() != sa.sections.size()) return false;
  for (const auto& s : sa.sections) {
    const auto it = by_id.find(s.id);
    if (it == by_id.end()) return false;
    const SectionData& t = *it->second;
    if (s.self_intersection != t.self_intersection || s.contains != t.contains || s.disjoint_from != t.disjoint_from) {
      return false;
    }
  }
  if (a.extra_points.size() != b.extra_points.size()) return false;
  for (std::size_t i = 0; i < a.extra_points.size(); ++i) {
    if (!a.extra_points[i].fiber.same_as(b.extra_points[i].fiber)) return false;
    if (!same_opt(a.extra_points[i].base, b.extra_points[i].base)) return false;
  }
  return true;
}

std::vector<std::string> fraction_strings(const std::vector<Fraction>& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.str());
  return out;
}

nlohmann::json to_json(const StabilityVerdict& v, const ParabolicSurface& surface) {
  json out;
  out["kind"] = to_string(v.kind);
  out["min_slope"] = v.min_slope.str();
  out["relative_to_supplied"] = v.relative_to_supplied;
  json cands = json::array();
  for (const auto& c : v.candidates) {
    json e{{"id", c.id},
           {"kind", to_string(c.kind)},
           {"self_intersection", c.self_intersection},
           {"contains", c.contains},
           {"slope", c.slope.str()}};
    if (c.kind == CandidateKind::VirtualGraph) e["degree"] = c.degree;
    cands.push_back(e);
  }
  out["candidates"] = cands;
  std::vector<std::string> witnesses;
  for (auto i : v.minimizers) witnesses.push_back(v.candidates[i].id);
  out["witnesses"] = witnesses;
  if (v.polystable_pair) {
    out["S1"] = v.s1().id;
    out["S2"] = v.s2().id;
    out["side"] = v.side;
  }
  out["sporadic"] = is_sporadic(surface, v);
  out["notes"] = v.notes;
  return out;
}

nlohmann::json to_json(const GluingReport& r) {
  json out;
  json rows = json::array();
  for (std::size_t i = 0; i < r.matrix.rows(); ++i) rows.push_back(fraction_strings(r.matrix.row(i)));
  out["matrix"] = rows;
  out["columns"] = r.column_labels;
  out["c1"] = r.c1;
  out["c2"] = r.c2;
  out["positive_kernel"] = r.positive_kernel;
  out["fix_type"] = to_string(r.fix.kind);
  out["dim_v0"] = r.fix.dim_v0;
  out["verdict"] = to_string(r.verdict);
  out["sfk_possible"] = r.sfk_possible;
  out["kernel_witness"] = r.kernel_witness ? json(fraction_strings(*r.kernel_witness)) : json(nullptr);
  return out;
}

nlohmann::json to_json(const PipelineReport& r) {
  json out;
  out["stability"] = to_string(r.stability.kind);
  out["min_slope"] = r.stability.min_slope.str();
  if (r.stability.polystable_pair) {
    out["S1"] = r.stability.s1().id;
    out["S2"] = r.stability.s2().id;
  }
  out["sporadic"] = r.sporadic;
  out["orbifold_orders"] = r.orbifold.orders;
  out["chi_orb"] = r.chi.str();
  out["good_orbifold"] = r.good;
  out["sfk_possible"] = r.sfk_possible;
  if (r.fix) {
    out["fix_type"] = to_string(r.fix->kind);
    out["dim_v0"] = r.fix->dim_v0;
  }
  out["gluing"] = r.gluing ? to_json(*r.gluing) : json(nullptr);
  json chains = json::array();
  for (const auto& c : r.fiber_chains) chains.push_back(c.selfints);
  out["fiber_chains"] = chains;
  out["total_blowups"] = r.total_blowups;
  out["description"] = r.description;
  out["verdict"] = to_string(r.verdict);
  out["exit_code"] = exit_code(r.verdict);
  out["notes"] = r.notes;
  return out;
}

}  // namespace hjale
