#pragma once

// Orbifold base data, the fixed-point type of the holonomy representation,
// the gluing matrix and its exact feasibility test, and the end-to-end
// decision for a parabolic ruled surface.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hjale/exact_lp.hpp"
#include "hjale/fraction.hpp"
#include "hjale/parabolic.hpp"
#include "hjale/resolution.hpp"

namespace hjale {

struct OrbifoldSurface {
  int genus = 0;
  std::vector<std::int64_t> orders;  // q_j >= 2
};

/// Orders are the denominators of the weights.
OrbifoldSurface orbifold_from_parabolic(const ParabolicSurface& surface);

/// 2 - 2g - Σ (1 - 1/q_j).
Fraction chi_orb(const OrbifoldSurface& orb);

/// Bad exactly for the sphere with one orbifold point, or two of distinct orders.
bool is_good(const OrbifoldSurface& orb);

/// The sphere with exactly two orbifold points of equal order, P^1/Z_q.
bool is_quotient_sphere(const OrbifoldSurface& orb);

using Axis = std::array<double, 3>;

struct RotationEntry {
  enum class Form { Explicit, Symbolic };
  Form form = Form::Symbolic;
  Axis axis{0.0, 0.0, 1.0};  // explicit entries
  double angle = 0.0;        // explicit entries, radians
  Fraction alpha;            // symbolic: rotation by 2π α about the common axis
  int sign = 1;
};

struct RotationSet {
  Axis common_axis{0.0, 0.0, 1.0};
  std::vector<RotationEntry> entries;

  /// One symbolic entry 2π α_j per marked point, all about the common axis.
  static RotationSet from_weights(const ParabolicSurface& surface);
};

enum class FixCase { NoFixedPoint, TwoFixedPoints, Trivial, QuotientSphereBase };
std::string to_string(FixCase c);

struct FixType {
  FixCase kind = FixCase::NoFixedPoint;
  int dim_v0 = 0;
};

FixType make_fix_type(FixCase kind);

/// Throws std::invalid_argument on a zero explicit axis.
FixType classify_fixed_points(const RotationSet& rotations, const OrbifoldSurface& base);

/// A blow-up point away from the marked fibers. The fiber coordinate is taken
/// in the frame where S_1 = [1:0] and S_2 = [0:1].
struct ExtraPoint {
  std::optional<ProjectivePoint> base;
  ProjectivePoint fiber;
};

struct GluingMatrix {
  RationalMatrix matrix;
  std::vector<std::string> column_labels;
};

/// Single row: -φ at each included orbifold singularity over the marked
/// points (φ = +1 on the S_1 side, -1 on the S_2 side; a singularity of type
/// Γ_{p,q} is included iff p != q-1), then +φ(y) per extra point.
/// Throws std::invalid_argument unless the verdict is StrictlyPolystable
/// with every marked point on S_1 or S_2.
GluingMatrix gluing_matrix(const ParabolicSurface& surface, const StabilityVerdict& verdict,
                           const std::vector<ExtraPoint>& extra_points = {});

enum class GluingVerdict {
  Feasible,
  FeasibleEquivariant,
  Obstructed,
  Infeasible,
  NotApplicable,
  NotPolystable,
  SpecialConfiguration,
};
std::string to_string(GluingVerdict v);

/// 0 for the feasible verdicts, 3 for the obstructed ones, 4 when the
/// construction does not apply.
int exit_code(GluingVerdict v);

struct GluingReport {
  RationalMatrix matrix;
  std::vector<std::string> column_labels;
  std::size_t c1 = 0;
  std::size_t c2 = 0;
  bool positive_kernel = false;
  FixType fix;
  GluingVerdict verdict = GluingVerdict::Infeasible;
  bool sfk_possible = false;
  std::optional<std::vector<Fraction>> kernel_witness;
};

/// c1 = rank, positive kernel by exact LP, c2 = dim ker when the kernel meets
/// the open positive orthant (else 0). A matrix with rows but no columns is
/// Obstructed; otherwise Feasible iff c1 = dimV0 and the kernel is positive.
GluingReport feasibility(const RationalMatrix& matrix, int dim_v0);
GluingReport feasibility(const GluingMatrix& matrix, const FixType& fix);

struct PipelineReport {
  StabilityVerdict stability;
  bool sporadic = false;
  OrbifoldSurface orbifold;
  Fraction chi;
  bool good = true;
  bool sfk_possible = false;
  std::optional<FixType> fix;
  std::optional<GluingReport> gluing;
  GluingVerdict verdict = GluingVerdict::NotApplicable;
  std::vector<CurveChain> fiber_chains;  // per marked point
  std::size_t total_blowups = 0;         // over the fibers plus extra points
  std::string description;
  std::vector<std::string> notes;
};

PipelineReport pipeline_report(const ParabolicSurface& surface,
                                const std::vector<ExtraPoint>& extra_points = {});

/// "ℂP² blown up at N+1 points" in genus 0, a ruled surface otherwise.
std::string describe_surface(int genus, BundleModel model, std::size_t blowups);

}  // namespace hjale
