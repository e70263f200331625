#include "hjale/gluing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hjale {

namespace {

constexpr double kAxisTolerance = 1e-9;

bool is_identity(const RotationEntry& r) {
  if (r.form == RotationEntry::Form::Symbolic) return (r.alpha * Fraction(r.sign)).is_integer();
  const double turns = r.angle / (2.0 * std::numbers::pi);
  return std::abs(turns - std::round(turns)) < kAxisTolerance;
}

Axis unit(const Axis& a) {
  const double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  if (!(n > 0.0)) throw std::invalid_argument("rotation axis is the zero vector");
  return {a[0] / n, a[1] / n, a[2] / n};
}

double cross_norm(const Axis& a, const Axis& b) {
  const double x = a[1] * b[2] - a[2] * b[1];
  const double y = a[2] * b[0] - a[0] * b[2];
  const double z = a[0] * b[1] - a[1] * b[0];
  return std::sqrt(x * x + y * y + z * z);
}

std::string gamma_label(std::int64_t p, std::int64_t q) {
  return "Γ(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

// Invariance of the extra points under [z0:z1] -> [z1:z0] on base and fiber.
bool z2_invariant(const std::vector<ExtraPoint>& extra) {
  for (const auto& y : extra) {
    if (!y.base) return false;
    const ProjectivePoint b = y.base->inverted();
    const ProjectivePoint f = y.fiber.inverted();
    bool found = false;
    for (const auto& other : extra) {
      if (other.base->same_as(b) && other.fiber.same_as(f)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool base_points_are_poles(const ParabolicSurface& surface) {
  if (surface.points.size() != 2) return false;
  const ProjectivePoint north(Fraction(1), Fraction(0));
  const ProjectivePoint south(Fraction(0), Fraction(1));
  const auto& a = surface.points[0].base_coord;
  const auto& b = surface.points[1].base_coord;
  if (!a || !b) return false;
  return (a->same_as(north) && b->same_as(south)) || (a->same_as(south) && b->same_as(north));
}

}  // namespace

OrbifoldSurface orbifold_from_parabolic(const ParabolicSurface& surface) {
  OrbifoldSurface orb;
  orb.genus = surface.genus;
  for (const auto& p : surface.points) orb.orders.push_back(p.weight.den_i64());
  return orb;
}

Fraction chi_orb(const OrbifoldSurface& orb) {
  Fraction chi(2 - 2 * static_cast<std::int64_t>(orb.genus));
  for (auto q : orb.orders) {
    if (q < 2) throw std::invalid_argument("orbifold order below 2");
    chi -= Fraction(1) - Fraction(1, q);
  }
  return chi;
}

bool is_good(const OrbifoldSurface& orb) {
  if (orb.genus != 0) return true;
  if (orb.orders.size() == 1) return false;
  if (orb.orders.size() == 2 && orb.orders[0] != orb.orders[1]) return false;
  return true;
}

bool is_quotient_sphere(const OrbifoldSurface& orb) {
  return orb.genus == 0 && orb.orders.size() == 2 && orb.orders[0] == orb.orders[1];
}

RotationSet RotationSet::from_weights(const ParabolicSurface& surface) {
  RotationSet set;
  for (const auto& p : surface.points) {
    RotationEntry e;
    e.form = RotationEntry::Form::Symbolic;
    e.alpha = p.weight;
    set.entries.push_back(e);
  }
  return set;
}

std::string to_string(FixCase c) {
  switch (c) {
    case FixCase::NoFixedPoint: return "NoFixedPoint";
    case FixCase::TwoFixedPoints: return "TwoFixedPoints";
    case FixCase::Trivial: return "Trivial";
    case FixCase::QuotientSphereBase: return "QuotientSphereBase";
  }
  return "?";
}

FixType make_fix_type(FixCase kind) {
  switch (kind) {
    case FixCase::NoFixedPoint: return {kind, 0};
    case FixCase::TwoFixedPoints: return {kind, 1};
    case FixCase::Trivial: return {kind, 3};
    case FixCase::QuotientSphereBase: return {kind, 2};
  }
  return {kind, 0};
}

FixType classify_fixed_points(const RotationSet& rotations, const OrbifoldSurface& base) {
  const Axis common = unit(rotations.common_axis);
  std::vector<Axis> axes;
  for (const auto& r : rotations.entries) {
    if (r.form == RotationEntry::Form::Explicit) {
      const Axis a = unit(r.axis);
      if (!is_identity(r)) axes.push_back(a);
    } else if (!is_identity(r)) {
      axes.push_back(common);
    }
  }
  if (is_quotient_sphere(base)) return make_fix_type(FixCase::QuotientSphereBase);
  if (axes.empty()) return make_fix_type(FixCase::Trivial);
  for (const auto& a : axes) {
    if (cross_norm(a, axes.front()) > kAxisTolerance) return make_fix_type(FixCase::NoFixedPoint);
  }
  return make_fix_type(FixCase::TwoFixedPoints);
}

GluingMatrix gluing_matrix(const ParabolicSurface& surface, const StabilityVerdict& verdict,
                           const std::vector<ExtraPoint>& extra_points) {
  if (verdict.kind != StabilityKind::StrictlyPolystable) {
    throw std::invalid_argument("gluing matrix needs a strictly polystable structure, got " +
                                to_string(verdict.kind));
  }
  std::vector<Fraction> row;
  GluingMatrix out;
  for (std::size_t j = 0; j < surface.points.size(); ++j) {
    const int side = verdict.side.at(j);
    if (side == 0) {
      throw std::invalid_argument("marked point " + std::to_string(j) + " lies on neither slope-0 section");
    }
    const std::int64_t p = surface.points[j].weight.num_i64();
    const std::int64_t q = surface.points[j].weight.den_i64();
    // The section containing Q_j carries Γ_{p,q}, the other one Γ_{q-p,q}.
    const std::int64_t p1 = side > 0 ? p : q - p;
    const std::int64_t p2 = q - p1;
    if (p1 != q - 1) {
      row.push_back(Fraction(-1));
      out.column_labels.push_back("S1 " + gamma_label(p1, q) + " over " + surface.points[j].base);
    }
    if (p2 != q - 1) {
      row.push_back(Fraction(1));
      out.column_labels.push_back("S2 " + gamma_label(p2, q) + " over " + surface.points[j].base);
    }
  }
  for (std::size_t i = 0; i < extra_points.size(); ++i) {
    row.push_back(extra_points[i].fiber.phi());
    out.column_labels.push_back("y" + std::to_string(i + 1) + " " + extra_points[i].fiber.str());
  }
  const std::size_t cols = row.size();
  out.matrix = RationalMatrix::from_rows({std::move(row)}, cols);
  return out;
}

std::string to_string(GluingVerdict v) {
  switch (v) {
    case GluingVerdict::Feasible: return "Feasible";
    case GluingVerdict::FeasibleEquivariant: return "FeasibleEquivariant";
    case GluingVerdict::Obstructed: return "Obstructed";
    case GluingVerdict::Infeasible: return "Infeasible";
    case GluingVerdict::NotApplicable: return "NotApplicable";
    case GluingVerdict::NotPolystable: return "NotPolystable";
    case GluingVerdict::SpecialConfiguration: return "SpecialConfiguration";
  }
  return "?";
}

int exit_code(GluingVerdict v) {
  switch (v) {
    case GluingVerdict::Feasible:
    case GluingVerdict::FeasibleEquivariant: return 0;
    case GluingVerdict::Obstructed:
    case GluingVerdict::Infeasible:
    case GluingVerdict::SpecialConfiguration: return 3;
    case GluingVerdict::NotApplicable:
    case GluingVerdict::NotPolystable: return 4;
  }
  return 4;
}

GluingReport feasibility(const RationalMatrix& matrix, int dim_v0) {
  GluingReport r;
  r.matrix = matrix;
  r.c1 = rank(matrix);
  if (matrix.rows() > 0 && matrix.cols() == 0) {
    r.verdict = GluingVerdict::Obstructed;
    return r;
  }
  r.kernel_witness = positive_kernel_vector(matrix);
  r.positive_kernel = r.kernel_witness.has_value();
  r.c2 = r.positive_kernel ? matrix.cols() - r.c1 : 0;
  const bool ok = r.positive_kernel && r.c1 == static_cast<std::size_t>(dim_v0);
  r.verdict = ok ? GluingVerdict::Feasible : GluingVerdict::Infeasible;
  return r;
}

GluingReport feasibility(const GluingMatrix& matrix, const FixType& fix) {
  GluingReport r = feasibility(matrix.matrix, fix.dim_v0);
  r.column_labels = matrix.column_labels;
  r.fix = fix;
  return r;
}

std::string describe_surface(int genus, BundleModel model, std::size_t blowups) {
  if (genus == 0) {
    if (blowups == 0) return model == BundleModel::TrivialP1 ? "ℂP¹ × ℂP¹" : "ruled surface over ℂP¹";
    return "ℂP² blown up at " + std::to_string(blowups + 1) + " points";
  }
  std::string out = "ruled surface over a genus-" + std::to_string(genus) + " curve";
  if (blowups > 0) out += " blown up at " + std::to_string(blowups) + " points";
  return out;
}

PipelineReport pipeline_report(const ParabolicSurface& surface, const std::vector<ExtraPoint>& extra_points) {
  PipelineReport rep;
  rep.stability = classify(surface);
  rep.sporadic = is_sporadic(surface, rep.stability);
  rep.orbifold = orbifold_from_parabolic(surface);
  rep.chi = chi_orb(rep.orbifold);
  rep.good = is_good(rep.orbifold);
  rep.sfk_possible = rep.chi.sign() < 0;
  for (const auto& p : surface.points) {
    rep.fiber_chains.push_back(fiber_chain(p.weight));
    rep.total_blowups += rep.fiber_chains.back().size() - 1;
  }
  rep.total_blowups += extra_points.size();
  rep.description = describe_surface(surface.genus, surface.model, rep.total_blowups);
  rep.notes = rep.stability.notes;

  const auto finish = [&](GluingVerdict v) {
    rep.verdict = v;
    if (rep.gluing) rep.gluing->sfk_possible = rep.sfk_possible;
    return rep;
  };

  if (!rep.good) {
    rep.notes.push_back(rep.orbifold.orders.size() == 1 ? "base orbifold is a teardrop"
                                                        : "base orbifold is a sphere with two points of distinct orders");
    return finish(GluingVerdict::NotApplicable);
  }

  switch (rep.stability.kind) {
    case StabilityKind::Stable: {
      rep.fix = make_fix_type(FixCase::NoFixedPoint);
      GluingMatrix empty{RationalMatrix(0, extra_points.size()), {}};
      rep.gluing = feasibility(empty, *rep.fix);
      rep.notes.push_back("stable: no holomorphic vector fields on the orbifold");
      return finish(rep.gluing->verdict);
    }
    case StabilityKind::Unstable:
    case StabilityKind::SemistableNotPolystable:
      rep.notes.push_back("not parabolically polystable");
      return finish(GluingVerdict::NotPolystable);
    case StabilityKind::StrictlyPolystable: break;
  }

  if (surface.points.empty()) {
    rep.fix = make_fix_type(FixCase::Trivial);
    if (extra_points.empty()) {
      rep.notes.push_back("trivial parabolic structure: the surface is already smooth");
      return finish(GluingVerdict::Feasible);
    }
    rep.gluing = feasibility(gluing_matrix(surface, rep.stability, extra_points), *rep.fix);
    rep.notes.push_back("trivial parabolic structure with extra points: only special configurations blow up");
    return finish(GluingVerdict::SpecialConfiguration);
  }

  if (is_quotient_sphere(rep.orbifold)) {
    rep.fix = make_fix_type(FixCase::QuotientSphereBase);
    rep.notes.push_back("two independent holomorphic vector fields; Z2-equivariant gluing kills both");
    if (extra_points.empty()) return finish(GluingVerdict::FeasibleEquivariant);
    if (base_points_are_poles(surface) && z2_invariant(extra_points)) {
      rep.notes.push_back("extra points form a Z2-invariant set");
      return finish(GluingVerdict::FeasibleEquivariant);
    }
    rep.notes.push_back("extra points are not a Z2-invariant set with base points [1:0], [0:1]");
    return finish(GluingVerdict::SpecialConfiguration);
  }

  rep.fix = classify_fixed_points(RotationSet::from_weights(surface), rep.orbifold);
  rep.gluing = feasibility(gluing_matrix(surface, rep.stability, extra_points), *rep.fix);
  if (rep.sporadic) {
    rep.notes.push_back("sporadic weights: the existence statement is conjectural in this case");
    if (extra_points.empty()) return finish(GluingVerdict::Obstructed);
  }
  return finish(rep.gluing->verdict);
}

}  // namespace hjale
