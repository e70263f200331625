#pragma once

// Parabolic ruled surfaces: marked points P_j on the base, points Q_j in the
// fibers over them with weights α_j ∈ (0,1), and the slope
//
//     μ(S) = [S]^2 + Σ_{Q_j ∉ S} α_j - Σ_{Q_j ∈ S} α_j
//
// of a holomorphic section S. Stability is decided from the minimum slope
// over a family of candidate sections.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hjale/fraction.hpp"

namespace hjale {

/// A real point [z0 : z1] of P^1 with rational homogeneous coordinates.
struct ProjectivePoint {
  Fraction z0;
  Fraction z1;

  ProjectivePoint() : z0(1), z1(0) {}
  ProjectivePoint(Fraction a, Fraction b);

  /// "[a:b]" with rational or decimal entries, or a bare affine value t = [t:1].
  static ProjectivePoint parse(std::string_view text);

  bool same_as(const ProjectivePoint& other) const;
  std::string str() const;

  /// (z0^2 - z1^2) / (z0^2 + z1^2): +1 at [1:0], -1 at [0:1], 0 at [1:1].
  Fraction phi() const;

  /// [z1 : z0].
  ProjectivePoint inverted() const { return {z1, z0}; }
};

enum class BundleModel { TrivialP1, Sections };
std::string to_string(BundleModel model);
BundleModel parse_bundle_model(std::string_view text);

struct MarkedPoint {
  std::string base;                         // label, or the base coordinate as written
  std::optional<ProjectivePoint> base_coord;
  Fraction weight;
  std::optional<ProjectivePoint> fiber;     // trivial-p1 model
  std::optional<std::string> section;       // sections model
};

struct SectionData {
  std::string id;
  std::int64_t self_intersection = 0;
  std::set<std::size_t> contains;
  std::set<std::string> disjoint_from;
};

struct ParabolicSurface {
  int genus = 0;
  BundleModel model = BundleModel::TrivialP1;
  std::vector<MarkedPoint> points;
  std::vector<SectionData> sections;

  /// Throws std::invalid_argument on duplicate base points, weights outside
  /// (0,1), missing incidence data or dangling section references.
  void validate() const;

  const SectionData& section(std::string_view id) const;

  /// Q_j lies on the section, through either `contains` or the point's own
  /// incidence entry.
  bool on_section(std::size_t j, const SectionData& s) const;

  Fraction total_weight() const;
};

/// Throws std::invalid_argument for an unknown id.
Fraction slope(const ParabolicSurface& surface, std::string_view section_id);
Fraction slope(const ParabolicSurface& surface, const SectionData& section);

enum class CandidateKind { Constant, GenericConstant, VirtualGraph, Supplied };
std::string to_string(CandidateKind kind);

struct CandidateSection {
  std::string id;
  CandidateKind kind = CandidateKind::Supplied;
  std::int64_t self_intersection = 0;
  std::vector<std::size_t> contains;
  std::optional<ProjectivePoint> fiber;  // constant sections through marked points
  int degree = 0;                        // virtual graphs
  std::set<std::string> disjoint_from;   // supplied sections
  Fraction slope;
};

enum class StabilityKind { Stable, StrictlyPolystable, SemistableNotPolystable, Unstable };
std::string to_string(StabilityKind kind);

struct StabilityVerdict {
  StabilityKind kind = StabilityKind::Stable;
  Fraction min_slope;
  std::vector<CandidateSection> candidates;
  std::vector<std::size_t> minimizers;  // indices into candidates
  /// For StrictlyPolystable: the disjoint slope-0 pair (S_1, S_2).
  std::optional<std::pair<std::size_t, std::size_t>> polystable_pair;
  /// Per marked point: +1 on S_1, -1 on S_2, 0 on neither (polystable only).
  std::vector<int> side;
  bool relative_to_supplied = false;
  std::vector<std::string> notes;

  const CandidateSection& s1() const { return candidates.at(polystable_pair->first); }
  const CandidateSection& s2() const { return candidates.at(polystable_pair->second); }
};

/// Candidate family used by classify: for the genus-0 trivial bundle the
/// built-in enumeration (constant sections per fiber coordinate, one generic
/// constant section, virtual degree-d graphs through the 2d+1 heaviest
/// points) followed by the supplied sections; otherwise the supplied ones.
std::vector<CandidateSection> candidate_sections(const ParabolicSurface& surface,
                                                 const std::vector<SectionData>& extra_sections = {});

/// Throws std::invalid_argument when no candidate is available.
StabilityVerdict classify(const ParabolicSurface& surface,
                          const std::vector<SectionData>& extra_sections = {});

/// Strictly polystable, base not the sphere with exactly two marked points,
/// and all weights 1/q_j on one section and (q_j-1)/q_j on the other.
bool is_sporadic(const ParabolicSurface& surface, const StabilityVerdict& verdict);

}  // namespace hjale
