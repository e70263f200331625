#include "hjale/parabolic.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace hjale {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Fraction parse_number(std::string_view text) {
  const std::string_view t = trim(text);
  if (t.find_first_of(".eE") != std::string_view::npos) return Fraction::from_decimal(t);
  return Fraction::parse(t);
}

bool same_base(const MarkedPoint& a, const MarkedPoint& b) {
  if (a.base_coord && b.base_coord) return a.base_coord->same_as(*b.base_coord);
  return a.base == b.base;
}

CandidateSection from_supplied(const ParabolicSurface& surface, const SectionData& s) {
  CandidateSection c;
  c.id = s.id;
  c.kind = CandidateKind::Supplied;
  c.self_intersection = s.self_intersection;
  for (std::size_t j = 0; j < surface.points.size(); ++j) {
    if (surface.on_section(j, s)) c.contains.push_back(j);
  }
  c.disjoint_from = s.disjoint_from;
  c.slope = slope(surface, s);
  return c;
}

bool disjoint(const CandidateSection& a, const CandidateSection& b) {
  const auto constant = [](const CandidateSection& c) {
    return c.kind == CandidateKind::Constant || c.kind == CandidateKind::GenericConstant;
  };
  if (constant(a) && constant(b)) {
    // Constant sections through different fiber values never meet; a generic
    // value is chosen away from every marked fiber coordinate.
    if (a.fiber && b.fiber) return !a.fiber->same_as(*b.fiber);
    return true;
  }
  if (a.kind == CandidateKind::Supplied && b.kind == CandidateKind::Supplied) {
    return a.disjoint_from.count(b.id) > 0 || b.disjoint_from.count(a.id) > 0;
  }
  return false;
}

}  // namespace

ProjectivePoint::ProjectivePoint(Fraction a, Fraction b) : z0(std::move(a)), z1(std::move(b)) {
  if (z0.is_zero() && z1.is_zero()) throw std::invalid_argument("[0:0] is not a point of P^1");
}

ProjectivePoint ProjectivePoint::parse(std::string_view text) {
  std::string_view t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty projective point");
  if (t.front() != '[') return {parse_number(t), Fraction(1)};
  if (t.back() != ']') throw std::invalid_argument("projective point '" + std::string(t) + "' lacks ']'");
  t = t.substr(1, t.size() - 2);
  const auto colon = t.find(':');
  if (colon == std::string_view::npos || t.find(':', colon + 1) != std::string_view::npos) {
    throw std::invalid_argument("projective point needs exactly one ':'");
  }
  return {parse_number(t.substr(0, colon)), parse_number(t.substr(colon + 1))};
}

bool ProjectivePoint::same_as(const ProjectivePoint& o) const { return z0 * o.z1 == z1 * o.z0; }

std::string ProjectivePoint::str() const { return "[" + z0.str() + ":" + z1.str() + "]"; }

Fraction ProjectivePoint::phi() const {
  const Fraction a = z0 * z0;
  const Fraction b = z1 * z1;
  return (a - b) / (a + b);
}

std::string to_string(BundleModel model) {
  return model == BundleModel::TrivialP1 ? "trivial-p1" : "sections";
}

BundleModel parse_bundle_model(std::string_view text) {
  if (text == "trivial-p1") return BundleModel::TrivialP1;
  if (text == "sections") return BundleModel::Sections;
  throw std::invalid_argument("unknown bundle model '" + std::string(text) + "'");
}

void ParabolicSurface::validate() const {
  if (genus < 0) throw std::invalid_argument("genus must be non-negative");
  if (model == BundleModel::TrivialP1 && genus != 0) {
    throw std::invalid_argument("the trivial-p1 model needs genus 0");
  }
  const std::size_t n = points.size();
  for (std::size_t j = 0; j < n; ++j) {
    const auto& pt = points[j];
    if (!(Fraction(0) < pt.weight && pt.weight < Fraction(1))) {
      throw std::invalid_argument("weight " + pt.weight.str() + " of point " + std::to_string(j) +
                                  " is not in (0,1)");
    }
    for (std::size_t i = 0; i < j; ++i) {
      if (same_base(points[i], pt)) {
        throw std::invalid_argument("points " + std::to_string(i) + " and " + std::to_string(j) +
                                    " share the base point " + pt.base);
      }
    }
    if (model == BundleModel::TrivialP1 && !pt.fiber) {
      throw std::invalid_argument("point " + std::to_string(j) + " has no fiber coordinate");
    }
    if (pt.section) section(*pt.section);
  }
  for (std::size_t s = 0; s < sections.size(); ++s) {
    for (std::size_t t = 0; t < s; ++t) {
      if (sections[t].id == sections[s].id) throw std::invalid_argument("duplicate section id " + sections[s].id);
    }
    for (auto j : sections[s].contains) {
      if (j >= n) {
        throw std::invalid_argument("section " + sections[s].id + " contains unknown point " + std::to_string(j));
      }
    }
    for (const auto& other : sections[s].disjoint_from) section(other);
  }
}

const SectionData& ParabolicSurface::section(std::string_view id) const {
  for (const auto& s : sections) {
    if (s.id == id) return s;
  }
  throw std::invalid_argument("unknown section id '" + std::string(id) + "'");
}

bool ParabolicSurface::on_section(std::size_t j, const SectionData& s) const {
  return s.contains.count(j) > 0 || (points[j].section && *points[j].section == s.id);
}

Fraction ParabolicSurface::total_weight() const {
  Fraction t;
  for (const auto& p : points) t += p.weight;
  return t;
}

Fraction slope(const ParabolicSurface& surface, std::string_view section_id) {
  return slope(surface, surface.section(section_id));
}

Fraction slope(const ParabolicSurface& surface, const SectionData& section) {
  Fraction mu(section.self_intersection);
  for (std::size_t j = 0; j < surface.points.size(); ++j) {
    if (surface.on_section(j, section)) {
      mu -= surface.points[j].weight;
    } else {
      mu += surface.points[j].weight;
    }
  }
  for (auto j : section.contains) {
    if (j >= surface.points.size()) throw std::invalid_argument("section " + section.id + " contains unknown point");
  }
  return mu;
}

std::string to_string(CandidateKind kind) {
  switch (kind) {
    case CandidateKind::Constant: return "constant";
    case CandidateKind::GenericConstant: return "generic-constant";
    case CandidateKind::VirtualGraph: return "virtual-graph";
    case CandidateKind::Supplied: return "supplied";
  }
  return "?";
}

std::string to_string(StabilityKind kind) {
  switch (kind) {
    case StabilityKind::Stable: return "Stable";
    case StabilityKind::StrictlyPolystable: return "StrictlyPolystable";
    case StabilityKind::SemistableNotPolystable: return "SemistableNotPolystable";
    case StabilityKind::Unstable: return "Unstable";
  }
  return "?";
}

std::vector<CandidateSection> candidate_sections(const ParabolicSurface& surface,
                                                 const std::vector<SectionData>& extra_sections) {
  surface.validate();
  std::vector<CandidateSection> out;
  const std::size_t n = surface.points.size();
  const Fraction total = surface.total_weight();

  if (surface.model == BundleModel::TrivialP1) {
    std::vector<bool> grouped(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      if (grouped[j]) continue;
      CandidateSection c;
      c.kind = CandidateKind::Constant;
      c.fiber = surface.points[j].fiber;
      c.id = "const" + c.fiber->str();
      Fraction on;
      for (std::size_t i = j; i < n; ++i) {
        if (!grouped[i] && surface.points[i].fiber->same_as(*c.fiber)) {
          grouped[i] = true;
          c.contains.push_back(i);
          on += surface.points[i].weight;
        }
      }
      c.slope = total - on - on;
      out.push_back(std::move(c));
    }

    CandidateSection generic;
    generic.kind = CandidateKind::GenericConstant;
    generic.id = "const-generic";
    generic.slope = total;
    out.push_back(std::move(generic));

    // A degree-d map P^1 -> P^1 has 2d+1 free parameters, so its graph
    // (self-intersection 2d) can be asked to pass through 2d+1 of the Q_j.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return surface.points[b].weight < surface.points[a].weight;
    });
    for (int d = 1;; ++d) {
      const std::size_t through = std::min<std::size_t>(2 * static_cast<std::size_t>(d) + 1, n);
      CandidateSection c;
      c.kind = CandidateKind::VirtualGraph;
      c.degree = d;
      c.self_intersection = 2 * d;
      c.id = "graph-deg" + std::to_string(d);
      Fraction on;
      for (std::size_t i = 0; i < through; ++i) {
        c.contains.push_back(order[i]);
        on += surface.points[order[i]].weight;
      }
      std::sort(c.contains.begin(), c.contains.end());
      c.slope = Fraction(2 * d) + total - on - on;
      out.push_back(std::move(c));
      if (through == n) break;
    }
  }

  for (const auto& s : surface.sections) out.push_back(from_supplied(surface, s));
  for (const auto& s : extra_sections) out.push_back(from_supplied(surface, s));
  return out;
}

StabilityVerdict classify(const ParabolicSurface& surface, const std::vector<SectionData>& extra_sections) {
  StabilityVerdict v;
  v.candidates = candidate_sections(surface, extra_sections);
  if (v.candidates.empty()) throw std::invalid_argument("no candidate sections available");
  v.relative_to_supplied = surface.model != BundleModel::TrivialP1;
  if (v.relative_to_supplied) v.notes.push_back("verdict relative to supplied sections");

  v.min_slope = v.candidates.front().slope;
  for (const auto& c : v.candidates) v.min_slope = std::min(v.min_slope, c.slope);
  for (std::size_t i = 0; i < v.candidates.size(); ++i) {
    if (v.candidates[i].slope == v.min_slope) v.minimizers.push_back(i);
  }

  const int sign = v.min_slope.sign();
  if (sign > 0) {
    v.kind = StabilityKind::Stable;
    return v;
  }
  if (sign < 0) {
    v.kind = StabilityKind::Unstable;
    for (auto i : v.minimizers) {
      if (v.candidates[i].kind == CandidateKind::VirtualGraph) {
        v.notes.push_back("minimum attained by a virtual graph; the verdict may be conservative");
        break;
      }
    }
    return v;
  }

  const auto& zero = v.minimizers;
  for (std::size_t a = 0; a < zero.size() && !v.polystable_pair; ++a) {
    for (std::size_t b = a + 1; b < zero.size(); ++b) {
      if (disjoint(v.candidates[zero[a]], v.candidates[zero[b]])) {
        v.polystable_pair = {zero[a], zero[b]};
        break;
      }
    }
  }
  if (!v.polystable_pair) {
    // Two distinct generic constant sections are disjoint; only possible with
    // no marked points at all.
    for (auto i : zero) {
      if (v.candidates[i].kind == CandidateKind::GenericConstant) {
        v.polystable_pair = {i, i};
        break;
      }
    }
  }
  if (!v.polystable_pair) {
    v.kind = StabilityKind::SemistableNotPolystable;
    return v;
  }
  v.kind = StabilityKind::StrictlyPolystable;
  v.side.assign(surface.points.size(), 0);
  for (auto j : v.s1().contains) v.side[j] = 1;
  for (auto j : v.s2().contains) v.side[j] = -1;
  return v;
}

bool is_sporadic(const ParabolicSurface& surface, const StabilityVerdict& verdict) {
  if (verdict.kind != StabilityKind::StrictlyPolystable) return false;
  if (surface.genus == 0 && surface.points.size() == 2) return false;
  const auto matches = [&](int unit_side) {
    for (std::size_t j = 0; j < surface.points.size(); ++j) {
      const Fraction& w = surface.points[j].weight;
      const int s = verdict.side.at(j);
      if (s == 0) return false;
      if (s == unit_side) {
        if (w.num() != 1) return false;
      } else if (w.num() != w.den() - 1) {
        return false;
      }
    }
    return true;
  };
  return matches(1) || matches(-1);
}

}  // namespace hjale
