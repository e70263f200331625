#pragma once

// Numerical evaluation of the toric scalar-flat Kähler metric attached to
// monopole data on the half-plane {x > 0}, in the polar coordinates
//
//     x = r^-2 sin 2θ,  y = r^-2 cos 2θ,  0 < θ < π/2,
//
// plus torus angles (t1, t2). Coordinates are ordered (r, θ, t1, t2).
//
// The frame v = (v1, v2) is a sum of basic solutions
//
//     v1 += (x/2ρ_j) (a_j, b_j),  v2 += ((y - y_j)/2ρ_j) (a_j, b_j),
//     ρ_j = sqrt(x^2 + (y - y_j)^2),
//
// with an infinite level contributing -(a_0, b_0)/2 to v2 only. With
// D = v1 ∧ v2, s = sin θ, c = cos θ and ⟨w, dt⟩ = w_x dt2 - w_y dt1:
//
//     J dr = (rsc/D) ⟨v2, dt⟩,   J dθ = -(sc/D) ⟨v1, dt⟩,
//     g    = (D/sc) (dr² + (J dr)² + r² (dθ² + (J dθ)²)),
//     ω    = r dr ∧ ⟨v2, dt⟩ - r² dθ ∧ ⟨v1, dt⟩.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hjale/dual.hpp"
#include "hjale/logmass.hpp"

namespace hjale {

struct HalfSpacePoint {
  double x = 1.0;
  double y = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
};

struct PolarPoint {
  double r = 1.0;
  double theta = 0.7853981633974483;
  double t1 = 0.0;
  double t2 = 0.0;
};

/// Throws std::invalid_argument when x <= 0.
PolarPoint to_polar(const HalfSpacePoint& p);
/// Throws std::invalid_argument unless r > 0 and 0 < θ < π/2.
HalfSpacePoint from_polar(const PolarPoint& p);

/// Floating-point copy of monopole data, cheap to evaluate repeatedly.
struct MonopoleField {
  std::vector<double> levels;  // +inf allowed for the first
  std::vector<std::array<double, 2>> pairs;
  double q = 1.0;              // a_{k+1}
};

MonopoleField field_from(const MonopoleData& data);

struct FrameData {
  Eigen::Vector2d v1;
  Eigen::Vector2d v2;
  double det = 0.0;
  Eigen::Matrix2d dv1;  // dv1(i, 0) = ∂_x v1_i, dv1(i, 1) = ∂_y v1_i
  Eigen::Matrix2d dv2;
};

FrameData v_eval(const MonopoleField& field, double x, double y);
FrameData v_eval(const MonopoleData& data, double x, double y);

struct MetricSample {
  Eigen::Matrix4d g;
  Eigen::Matrix4d omega;
  /// Tangent endomorphism: (J X)^a = J(a, b) X^b, with ω(X, Y) = g(J X, Y).
  Eigen::Matrix4d J;
  /// Action on 1-forms: row a holds the components of J(dx^a); equals -J.
  Eigen::Matrix4d Jcov;
  double det = 0.0;
};

/// Throws std::domain_error when D <= 0 at the point.
MetricSample metric_at(const MonopoleField& field, const PolarPoint& p);
MetricSample metric_at(const MonopoleData& data, const PolarPoint& p);

/// diag(1, r², r² s², r² c²): the flat metric in the same coordinates.
Eigen::Matrix4d flat_metric(const PolarPoint& p);

/// Max of |J J + 1|, |Jᵀ g J - g| and |ω - Jᵀ g| at the sample.
double compatibility_defect(const MetricSample& s);
double min_eigenvalue(const Eigen::Matrix4d& g);

struct Region {
  double r_min = 1.0;
  double r_max = 5.0;
  double theta_min = 0.1;
  double theta_max = 1.4707963267948966;  // π/2 - 0.1
  int samples = 100;
  std::uint64_t seed = 1;
};

std::vector<PolarPoint> sample_points(const Region& region);

/// Central differences with step h·r in r and h in θ; Richardson combines
/// steps h and h/2 to cancel the O(h²) term.
struct FdScheme {
  double h = 1e-3;
  bool richardson = true;
};

struct KahlerResidual {
  double max_domega = 0.0;           // max |dω_abc| / max |ω_ab|
  double max_dintegrability = 0.0;   // max over t1, t2 of |d(J dt)| / max |J dt|
};

KahlerResidual kahler_residual_at(const MonopoleField& field, const PolarPoint& p, const FdScheme& fd = {});
/// Throws std::invalid_argument if the step would leave the sampled wedge.
KahlerResidual kahler_residual(const MonopoleData& data, const Region& region, const FdScheme& fd = {});

/// Scalar curvature from exact first derivatives of g (dual numbers) and
/// Richardson differences of those for the second derivatives.
double scalar_curvature_at(const MonopoleField& field, const PolarPoint& p, double h = 1e-3);
double scalar_curvature_at(const MonopoleData& data, const PolarPoint& p, double h = 1e-3);

/// Finite-difference residuals of ∂_y v1 - ∂_x v2 and x ∂_x v1 + x ∂_y v2 - v1.
double monopole_residual(const MonopoleField& field, double x, double y, double h = 1e-5);

struct LogFit {
  double a = 0.0;
  double b = 0.0;
  double mu = 0.0;
  double rms = 0.0;  // of the per-θ r^-2 coefficients about a s² + b c²
};

/// Fits r²(D/(q s c) - 1) = A(θ) + B(θ) r^-2 + C(θ) r^-4 at each θ, then
/// A(θ) = a s² + b c² over θ. Throws std::invalid_argument for fewer than
/// three radii, radii below 10, or fewer than two angles.
LogFit fit_log_coeffs(const MonopoleData& data, const std::vector<double>& r_samples,
                      const std::vector<double>& theta_samples);

/// 25 radii log-spaced over [10, 1000] and 9 angles over [0.1, π/2 - 0.1].
std::vector<double> default_fit_radii();
std::vector<double> default_fit_angles();

/// Coefficient of c² in the approximate potential
/// f/q = r²/4 + (a+b)/2 log r + β c².
enum class PotentialForm {
  Corrected,  // β = (a - b)/4
  Halved,     // β = (a - b)/2
};

/// max over 15 angles in [0.1, π/2 - 0.1] of the g-norm of ω - d(J df).
double potential_residual(const MonopoleData& data, double r, PotentialForm form = PotentialForm::Corrected,
                          double h = 1e-4);

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  std::int64_t p = 1;
  std::int64_t q = 2;
  std::optional<std::vector<Level>> levels;
  int samples = 100;
  std::uint64_t seed = 7;
};

struct DecayPoint {
  double r = 0.0;
  double residual = 0.0;
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<Level> levels;
  std::string exact_a;
  std::string exact_b;
  std::string exact_mu;
  MassSign exact_sign = MassSign::Zero;
  LogFit fit;
  std::vector<DecayPoint> decay;
  std::vector<CheckResult> checks;
  bool all_passed = false;
};

namespace tol {
inline constexpr double kFlat = 1e-12;
inline constexpr double kCompat = 1e-10;
inline constexpr double kKahler = 1e-6;
inline constexpr double kScalar = 1e-4;
inline constexpr double kHalvingLow = 3.0;   // O(h²): ratio 4 for halved steps
inline constexpr double kHalvingHigh = 5.0;
inline constexpr double kFitRelative = 1e-2;
inline constexpr double kSignDeadband = 1e-6;
inline constexpr double kDecayTarget = 1.0 / 16.0;
inline constexpr double kDecaySpread = 0.25;
}  // namespace tol

/// Runs the flat-model, compatibility, Kähler, step-halving, curvature, fit
/// and potential-decay checks for the HJ chain of p/q.
VerifyReport verify_metric(const VerifyOptions& options);

/// Radii 10·2^i, i = 0..4, for the decay series.
std::vector<double> decay_radii();

/// "r,residual" rows.
void write_decay_csv(const std::string& path, const std::vector<DecayPoint>& decay);

}  // namespace hjale
