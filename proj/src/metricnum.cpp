#include "hjale/metricnum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace hjale {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

template <class T>
using Mat4 = std::array<std::array<T, 4>, 4>;

template <class T>
struct Structures {
  Mat4<T> g{};
  Mat4<T> omega{};
  Mat4<T> jcov{};
  T det{};
};

template <class T>
void frame(const MonopoleField& f, const T& x, const T& y, std::array<T, 2>& v1, std::array<T, 2>& v2) {
  using std::sqrt;
  v1 = {T(0.0), T(0.0)};
  v2 = {T(0.0), T(0.0)};
  for (std::size_t j = 0; j < f.levels.size(); ++j) {
    const double a = f.pairs[j][0];
    const double b = f.pairs[j][1];
    if (std::isinf(f.levels[j])) {
      v2[0] -= T(0.5 * a);
      v2[1] -= T(0.5 * b);
      continue;
    }
    const T dy = y - T(f.levels[j]);
    const T rho = sqrt(x * x + dy * dy);
    const T u = x / (T(2.0) * rho);
    const T w = dy / (T(2.0) * rho);
    v1[0] += u * T(a);
    v1[1] += u * T(b);
    v2[0] += w * T(a);
    v2[1] += w * T(b);
  }
}

template <class T>
Structures<T> structures(const MonopoleField& f, const T& r, const T& th) {
  using std::cos;
  using std::sin;
  const T s = sin(th);
  const T c = cos(th);
  const T r2 = r * r;
  const T x = sin(T(2.0) * th) / r2;
  const T y = cos(T(2.0) * th) / r2;
  std::array<T, 2> v1;
  std::array<T, 2> v2;
  frame(f, x, y, v1, v2);

  Structures<T> out;
  out.det = v1[0] * v2[1] - v1[1] * v2[0];
  if (!(value_of(out.det) > 0.0)) throw std::domain_error("frame determinant is not positive");
  const T sc = s * c;

  // ⟨w, dt⟩ has components (0, 0, -w_y, w_x).
  const std::array<T, 4> form1{T(0.0), T(0.0), -v1[1], v1[0]};
  const std::array<T, 4> form2{T(0.0), T(0.0), -v2[1], v2[0]};
  const T kr = r * sc / out.det;
  const T kt = -sc / out.det;
  for (int b = 0; b < 4; ++b) {
    out.jcov[0][b] = kr * form2[b];
    out.jcov[1][b] = kt * form1[b];
  }
  out.jcov[2] = {v1[0] / (r * sc), v2[0] / sc, T(0.0), T(0.0)};
  out.jcov[3] = {v1[1] / (r * sc), v2[1] / sc, T(0.0), T(0.0)};

  const T conf = out.det / sc;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      T base = out.jcov[0][a] * out.jcov[0][b] + r2 * out.jcov[1][a] * out.jcov[1][b];
      if (a == b && a == 0) base += T(1.0);
      if (a == b && a == 1) base += r2;
      out.g[a][b] = conf * base;
    }
  }
  // r dr ∧ ⟨v2, dt⟩ - r² dθ ∧ ⟨v1, dt⟩
  for (int b = 0; b < 4; ++b) {
    out.omega[0][b] += r * form2[b];
    out.omega[b][0] -= r * form2[b];
    out.omega[1][b] -= r2 * form1[b];
    out.omega[b][1] += r2 * form1[b];
  }
  return out;
}

Eigen::Matrix4d to_eigen(const Mat4<double>& m) {
  Eigen::Matrix4d out;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) out(a, b) = m[a][b];
  }
  return out;
}

// (∂_r F, ∂_θ F) by central differences, step h·r in r and h in θ.
template <class F>
auto partials(F&& f, double r, double th, const FdScheme& fd) {
  using V = decltype(f(r, th));
  const auto central = [&](double h) {
    const double hr = h * r;
    V dr = (f(r + hr, th) - f(r - hr, th)) / (2.0 * hr);
    V dt = (f(r, th + h) - f(r, th - h)) / (2.0 * h);
    return std::array<V, 2>{dr, dt};
  };
  const auto coarse = central(fd.h);
  if (!fd.richardson) return coarse;
  const auto fine = central(fd.h / 2.0);
  return std::array<V, 2>{V((4.0 * fine[0] - coarse[0]) / 3.0), V((4.0 * fine[1] - coarse[1]) / 3.0)};
}

double max_abs(const Eigen::Matrix4d& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

PolarPoint to_polar(const HalfSpacePoint& p) {
  if (!(p.x > 0.0)) throw std::invalid_argument("half-space point needs x > 0");
  const double rho = std::hypot(p.x, p.y);
  PolarPoint out;
  out.r = 1.0 / std::sqrt(rho);
  out.theta = 0.5 * std::atan2(p.x, p.y);
  out.t1 = p.t1;
  out.t2 = p.t2;
  return out;
}

HalfSpacePoint from_polar(const PolarPoint& p) {
  if (!(p.r > 0.0) || !(p.theta > 0.0 && p.theta < kHalfPi)) {
    throw std::invalid_argument("polar point needs r > 0 and 0 < theta < pi/2");
  }
  const double inv = 1.0 / (p.r * p.r);
  return {inv * std::sin(2.0 * p.theta), inv * std::cos(2.0 * p.theta), p.t1, p.t2};
}

MonopoleField field_from(const MonopoleData& data) {
  MonopoleField f;
  for (const auto& l : data.levels) f.levels.push_back(l.to_double());
  for (const auto& pr : data.pairs) {
    f.pairs.push_back({static_cast<double>(pr.a), static_cast<double>(pr.b)});
  }
  f.q = static_cast<double>(data.pairs.back().a);
  return f;
}

FrameData v_eval(const MonopoleField& f, double x, double y) {
  if (!(x > 0.0)) throw std::invalid_argument("frame evaluation needs x > 0");
  FrameData out;
  out.v1.setZero();
  out.v2.setZero();
  out.dv1.setZero();
  out.dv2.setZero();
  for (std::size_t j = 0; j < f.levels.size(); ++j) {
    const Eigen::Vector2d ab(f.pairs[j][0], f.pairs[j][1]);
    if (std::isinf(f.levels[j])) {
      out.v2 -= 0.5 * ab;
      continue;
    }
    const double dy = y - f.levels[j];
    const double rho = std::hypot(x, dy);
    const double rho3 = rho * rho * rho;
    out.v1 += (0.5 * x / rho) * ab;
    out.v2 += (0.5 * dy / rho) * ab;
    out.dv1.col(0) += (0.5 * dy * dy / rho3) * ab;
    out.dv1.col(1) += (-0.5 * x * dy / rho3) * ab;
    out.dv2.col(0) += (-0.5 * x * dy / rho3) * ab;
    out.dv2.col(1) += (0.5 * x * x / rho3) * ab;
  }
  out.det = out.v1.x() * out.v2.y() - out.v1.y() * out.v2.x();
  return out;
}

FrameData v_eval(const MonopoleData& data, double x, double y) { return v_eval(field_from(data), x, y); }

MetricSample metric_at(const MonopoleField& f, const PolarPoint& p) {
  from_polar(p);
  const auto st = structures<double>(f, p.r, p.theta);
  MetricSample out;
  out.g = to_eigen(st.g);
  out.omega = to_eigen(st.omega);
  out.Jcov = to_eigen(st.jcov);
  out.J = -out.Jcov;
  out.det = st.det;
  return out;
}

MetricSample metric_at(const MonopoleData& data, const PolarPoint& p) { return metric_at(field_from(data), p); }

Eigen::Matrix4d flat_metric(const PolarPoint& p) {
  const double s = std::sin(p.theta);
  const double c = std::cos(p.theta);
  const double r2 = p.r * p.r;
  return Eigen::Vector4d(1.0, r2, r2 * s * s, r2 * c * c).asDiagonal();
}

double compatibility_defect(const MetricSample& s) {
  const double scale = std::max(1.0, max_abs(s.g));
  const double jj = max_abs(s.J * s.J + Eigen::Matrix4d::Identity());
  const double herm = max_abs(s.J.transpose() * s.g * s.J - s.g) / scale;
  const double kahler = max_abs(s.omega - s.J.transpose() * s.g) / scale;
  return std::max({jj, herm, kahler});
}

double min_eigenvalue(const Eigen::Matrix4d& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(g, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::vector<PolarPoint> sample_points(const Region& region) {
  std::mt19937_64 rng(region.seed);
  std::uniform_real_distribution<double> ur(region.r_min, region.r_max);
  std::uniform_real_distribution<double> ut(region.theta_min, region.theta_max);
  std::uniform_real_distribution<double> ua(0.0, 2.0 * std::numbers::pi);
  std::vector<PolarPoint> out;
  out.reserve(static_cast<std::size_t>(std::max(region.samples, 0)));
  for (int i = 0; i < region.samples; ++i) {
    PolarPoint p;
    p.r = ur(rng);
    p.theta = ut(rng);
    p.t1 = ua(rng);
    p.t2 = ua(rng);
    out.push_back(p);
  }
  return out;
}

KahlerResidual kahler_residual_at(const MonopoleField& f, const PolarPoint& p, const FdScheme& fd) {
  KahlerResidual out;
  const auto omega = [&](double r, double th) { return to_eigen(structures<double>(f, r, th).omega); };
  const auto d_omega = partials(omega, p.r, p.theta, fd);
  const Eigen::Matrix4d om = omega(p.r, p.theta);
  const auto deriv = [&](int a) -> Eigen::Matrix4d {
    return a < 2 ? d_omega[static_cast<std::size_t>(a)] : Eigen::Matrix4d::Zero().eval();
  };
  double worst = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        const double v = deriv(a)(b, c) + deriv(b)(c, a) + deriv(c)(a, b);
        worst = std::max(worst, std::abs(v));
      }
    }
  }
  out.max_domega = worst / max_abs(om);

  for (int k = 2; k < 4; ++k) {
    const auto jdt = [&](double r, double th) {
      const auto st = structures<double>(f, r, th);
      return Eigen::Vector4d(st.jcov[k][0], st.jcov[k][1], st.jcov[k][2], st.jcov[k][3]);
    };
    const auto d = partials(jdt, p.r, p.theta, fd);
    const Eigen::Vector4d here = jdt(p.r, p.theta);
    double w = 0.0;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const double dab = (a < 2 ? d[static_cast<std::size_t>(a)](b) : 0.0) -
                           (b < 2 ? d[static_cast<std::size_t>(b)](a) : 0.0);
        w = std::max(w, std::abs(dab));
      }
    }
    out.max_dintegrability = std::max(out.max_dintegrability, w / here.cwiseAbs().maxCoeff());
  }
  return out;
}

KahlerResidual kahler_residual(const MonopoleData& data, const Region& region, const FdScheme& fd) {
  if (!(fd.h > 0.0) || fd.h >= 0.05 || region.theta_min - fd.h <= 0.0 || region.theta_max + fd.h >= kHalfPi ||
      region.r_min * (1.0 - fd.h) <= 0.0) {
    throw std::invalid_argument("finite-difference step too large for the sampled region");
  }
  const MonopoleField f = field_from(data);
  KahlerResidual out;
  for (const auto& p : sample_points(region)) {
    const auto r = kahler_residual_at(f, p, fd);
    out.max_domega = std::max(out.max_domega, r.max_domega);
    out.max_dintegrability = std::max(out.max_dintegrability, r.max_dintegrability);
  }
  return out;
}

double scalar_curvature_at(const MonopoleField& f, const PolarPoint& p, double h) {
  using D2 = Dual<2>;
  // g and its exact first partials in (r, θ).
  const auto with_partials = [&](double r, double th) {
    const auto st = structures<D2>(f, D2::variable(r, 0), D2::variable(th, 1));
    std::array<Eigen::Matrix4d, 3> out;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        out[0](a, b) = st.g[a][b].v;
        out[1](a, b) = st.g[a][b].d[0];
        out[2](a, b) = st.g[a][b].d[1];
      }
    }
    return out;
  };
  const auto here = with_partials(p.r, p.theta);
  const Eigen::Matrix4d& g = here[0];
  const Eigen::Matrix4d gi = g.inverse();
  const Eigen::Matrix4d zero = Eigen::Matrix4d::Zero();
  const std::array<Eigen::Matrix4d, 4> dg{here[1], here[2], zero, zero};

  // ddg[e][a] = ∂_e ∂_a g.
  std::array<std::array<Eigen::Matrix4d, 4>, 4> ddg;
  for (auto& row : ddg) row.fill(zero);
  for (int a = 0; a < 2; ++a) {
    const auto fa = [&](double r, double th) { return with_partials(r, th)[static_cast<std::size_t>(a + 1)]; };
    const auto d = partials(fa, p.r, p.theta, FdScheme{h, true});
    ddg[0][static_cast<std::size_t>(a)] = d[0];
    ddg[1][static_cast<std::size_t>(a)] = d[1];
  }

  double gamma[4][4][4] = {};
  for (int c = 0; c < 4; ++c) {
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        double s = 0.0;
        for (int d = 0; d < 4; ++d) s += gi(c, d) * (dg[a](d, b) + dg[b](d, a) - dg[d](a, b));
        gamma[c][a][b] = 0.5 * s;
      }
    }
  }
  double dgamma[4][4][4][4] = {};  // [e][c][a][b]
  for (int e = 0; e < 2; ++e) {
    const Eigen::Matrix4d dgi = -gi * dg[e] * gi;
    for (int c = 0; c < 4; ++c) {
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          double s = 0.0;
          for (int d = 0; d < 4; ++d) {
            s += dgi(c, d) * (dg[a](d, b) + dg[b](d, a) - dg[d](a, b)) +
                 gi(c, d) * (ddg[e][a](d, b) + ddg[e][b](d, a) - ddg[e][d](a, b));
          }
          dgamma[e][c][a][b] = 0.5 * s;
        }
      }
    }
  }
  double scalar = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      double ric = 0.0;
      for (int c = 0; c < 4; ++c) {
        ric += dgamma[c][c][a][b] - dgamma[b][c][a][c];
        for (int d = 0; d < 4; ++d) ric += gamma[c][c][d] * gamma[d][a][b] - gamma[c][b][d] * gamma[d][a][c];
      }
      scalar += gi(a, b) * ric;
    }
  }
  return scalar;
}

double scalar_curvature_at(const MonopoleData& data, const PolarPoint& p, double h) {
  return scalar_curvature_at(field_from(data), p, h);
}

double monopole_residual(const MonopoleField& f, double x, double y, double h) {
  const auto at = [&](double xx, double yy) { return v_eval(f, xx, yy); };
  const double hx = h * x;
  const FrameData xp = at(x + hx, y);
  const FrameData xm = at(x - hx, y);
  const FrameData yp = at(x, y + h);
  const FrameData ym = at(x, y - h);
  const FrameData c = at(x, y);
  const Eigen::Vector2d dx1 = (xp.v1 - xm.v1) / (2.0 * hx);
  const Eigen::Vector2d dx2 = (xp.v2 - xm.v2) / (2.0 * hx);
  const Eigen::Vector2d dy1 = (yp.v1 - ym.v1) / (2.0 * h);
  const Eigen::Vector2d dy2 = (yp.v2 - ym.v2) / (2.0 * h);
  const double e1 = (dy1 - dx2).cwiseAbs().maxCoeff();
  const double e2 = (x * dx1 + x * dy2 - c.v1).cwiseAbs().maxCoeff();
  return std::max(e1, e2);
}

LogFit fit_log_coeffs(const MonopoleData& data, const std::vector<double>& r_samples,
                      const std::vector<double>& theta_samples) {
  if (r_samples.size() < 3) throw std::invalid_argument("fit needs at least three radii");
  if (theta_samples.size() < 2) throw std::invalid_argument("fit needs at least two angles");
  for (double r : r_samples) {
    if (r < 10.0) throw std::invalid_argument("fit radii must be at least 10");
  }
  for (double t : theta_samples) {
    if (!(t > 0.0 && t < kHalfPi)) throw std::invalid_argument("fit angles must lie in (0, pi/2)");
  }
  const MonopoleField f = field_from(data);
  const auto nr = static_cast<Eigen::Index>(r_samples.size());
  const auto nt = static_cast<Eigen::Index>(theta_samples.size());

  Eigen::MatrixXd basis(nr, 3);
  for (Eigen::Index i = 0; i < nr; ++i) {
    const double u = 1.0 / (r_samples[static_cast<std::size_t>(i)] * r_samples[static_cast<std::size_t>(i)]);
    basis(i, 0) = 1.0;
    basis(i, 1) = u;
    basis(i, 2) = u * u;
  }
  const auto qr = basis.colPivHouseholderQr();
  if (qr.rank() < 3) throw std::invalid_argument("degenerate radius samples");

  Eigen::VectorXd leading(nt);
  Eigen::MatrixXd angular(nt, 2);
  for (Eigen::Index k = 0; k < nt; ++k) {
    const double th = theta_samples[static_cast<std::size_t>(k)];
    const double s = std::sin(th);
    const double c = std::cos(th);
    Eigen::VectorXd z(nr);
    for (Eigen::Index i = 0; i < nr; ++i) {
      const double r = r_samples[static_cast<std::size_t>(i)];
      const HalfSpacePoint hp = from_polar({r, th});
      const double det = v_eval(f, hp.x, hp.y).det;
      z(i) = r * r * (det / (f.q * s * c) - 1.0);
    }
    leading(k) = qr.solve(z)(0);
    angular(k, 0) = s * s;
    angular(k, 1) = c * c;
  }
  const auto aqr = angular.colPivHouseholderQr();
  if (aqr.rank() < 2) throw std::invalid_argument("degenerate angle samples");
  const Eigen::Vector2d ab = aqr.solve(leading);
  LogFit out;
  out.a = ab(0);
  out.b = ab(1);
  out.mu = out.a + out.b;
  out.rms = std::sqrt((angular * ab - leading).squaredNorm() / static_cast<double>(nt));
  return out;
}

std::vector<double> default_fit_radii() {
  std::vector<double> out;
  for (int i = 0; i < 25; ++i) out.push_back(10.0 * std::pow(100.0, i / 24.0));
  return out;
}

std::vector<double> default_fit_angles() {
  std::vector<double> out;
  for (int i = 0; i < 9; ++i) out.push_back(0.1 + (kHalfPi - 0.2) * i / 8.0);
  return out;
}

double potential_residual(const MonopoleData& data, double r, PotentialForm form, double h) {
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  const MonopoleField f = field_from(data);
  const LogCoefficients exact = asymptotic_coeffs_from_pairs(data);
  const double a = exact.a->to_double();
  const double b = exact.b->to_double();
  const double beta = form == PotentialForm::Corrected ? (a - b) / 4.0 : (a - b) / 2.0;
  const double q = f.q;

  const auto jdf = [&](double rr, double th) {
    const auto st = structures<double>(f, rr, th);
    const double fr = q * (rr / 2.0 + (a + b) / (2.0 * rr));
    const double ft = -2.0 * q * beta * std::sin(th) * std::cos(th);
    Eigen::Vector4d out;
    for (int k = 0; k < 4; ++k) out(k) = fr * st.jcov[0][k] + ft * st.jcov[1][k];
    return out;
  };

  double worst = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double th = 0.1 + (kHalfPi - 0.2) * i / 14.0;
    const auto d = partials(jdf, r, th, FdScheme{h, true});
    Eigen::Matrix4d dj = Eigen::Matrix4d::Zero();
    for (int a2 = 0; a2 < 4; ++a2) {
      for (int b2 = 0; b2 < 4; ++b2) {
        dj(a2, b2) = (a2 < 2 ? d[static_cast<std::size_t>(a2)](b2) : 0.0) -
                     (b2 < 2 ? d[static_cast<std::size_t>(b2)](a2) : 0.0);
      }
    }
    const auto st = structures<double>(f, r, th);
    const Eigen::Matrix4d g = to_eigen(st.g);
    const Eigen::Matrix4d gi = g.inverse();
    const Eigen::Matrix4d res = to_eigen(st.omega) - dj;
    const double norm2 = 0.5 * (res.transpose() * gi * res * gi).trace();
    worst = std::max(worst, std::sqrt(std::max(norm2, 0.0)));
  }
  return worst;
}

std::vector<double> decay_radii() { return {10.0, 20.0, 40.0, 80.0, 160.0}; }

void write_decay_csv(const std::string& path, const std::vector<DecayPoint>& decay) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.precision(17);
  out << "r,residual\n";
  for (const auto& d : decay) out << d.r << ',' << d.residual << '\n';
  if (!out) throw std::runtime_error("failed writing " + path);
}

VerifyReport verify_metric(const VerifyOptions& opt) {
  VerifyReport rep;
  rep.options = opt;
  const HJExpansion exp = hj_expand(opt.p, opt.q);
  rep.levels = opt.levels ? *opt.levels : default_levels(exp.length());
  const MonopoleData data = monopole_from_fraction(opt.p, opt.q, rep.levels);
  const MonopoleField field = field_from(data);

  const auto add = [&](std::string name, double value, double tolerance, bool passed, std::string detail = {}) {
    rep.checks.push_back({std::move(name), value, tolerance, passed, std::move(detail)});
  };
  const auto below = [&](std::string name, double value, double tolerance, std::string detail = {}) {
    add(std::move(name), value, tolerance, std::isfinite(value) && value < tolerance, std::move(detail));
  };

  Region region;
  region.samples = opt.samples;
  region.seed = opt.seed;
  const auto points = sample_points(region);

  {
    const MonopoleField flat = field_from(flat_monopole());
    double worst = 0.0;
    for (const auto& p : points) {
      const Eigen::Matrix4d g0 = flat_metric(p);
      worst = std::max(worst, max_abs(metric_at(flat, p).g - g0) / std::max(1.0, max_abs(g0)));
    }
    below("flat model", worst, tol::kFlat, "max |g - diag(1, r², r²s², r²c²)|");
  }

  {
    double defect = 0.0;
    double min_eig = std::numeric_limits<double>::infinity();
    double min_det = std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
      const MetricSample s = metric_at(field, p);
      defect = std::max(defect, compatibility_defect(s));
      min_eig = std::min(min_eig, min_eigenvalue(s.g));
      min_det = std::min(min_det, s.det);
    }
    below("compatibility", defect, tol::kCompat, "J² = -1, g(J·,J·) = g, ω = g(J·,·)");
    add("positive definite", min_eig, 0.0, min_eig > 0.0, "smallest eigenvalue of g");
    add("frame determinant", min_det, 0.0, min_det > 0.0, "smallest ⟨v1, v2⟩");
  }

  {
    KahlerResidual worst;
    for (const auto& p : points) {
      const auto r = kahler_residual_at(field, p);
      worst.max_domega = std::max(worst.max_domega, r.max_domega);
      worst.max_dintegrability = std::max(worst.max_dintegrability, r.max_dintegrability);
    }
    below("closed Kähler form", worst.max_domega, tol::kKahler, "relative |dω|");
    below("integrability", worst.max_dintegrability, tol::kKahler, "relative |d(J dt)|");

    const std::size_t n = std::min<std::size_t>(points.size(), 20);
    double coarse = 0.0;
    double fine = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = kahler_residual_at(field, points[i], FdScheme{1e-2, false});
      const auto f = kahler_residual_at(field, points[i], FdScheme{5e-3, false});
      coarse = std::max(coarse, c.max_domega + c.max_dintegrability);
      fine = std::max(fine, f.max_domega + f.max_dintegrability);
    }
    const double ratio = fine > 0.0 ? coarse / fine : 0.0;
    add("step halving", ratio, 4.0, ratio > tol::kHalvingLow && ratio < tol::kHalvingHigh,
        "residual ratio for plain central differences, h = 1e-2 vs 5e-3; accepted in (3, 5)");
  }

  {
    double worst = 0.0;
    for (const auto& p : points) worst = std::max(worst, std::abs(scalar_curvature_at(field, p)));
    below("scalar curvature", worst, tol::kScalar);
  }

  {
    const LogCoefficients exact = asymptotic_coeffs_from_pairs(data);
    std::vector<Fraction> u;
    for (const auto& t : log_coeffs_from_levels(data).per_term) u.push_back(t.u);
    const MassVerdict verdict = mass_verdict(opt.p, opt.q, u);
    rep.exact_a = exact.a->str();
    rep.exact_b = exact.b->str();
    rep.exact_mu = exact.mu.str();
    rep.exact_sign = verdict.sign;
    rep.fit = fit_log_coeffs(data, default_fit_radii(), default_fit_angles());
    const double a = exact.a->to_double();
    const double b = exact.b->to_double();
    const double scale = std::abs(a) + std::abs(b);
    const double err = std::max(std::abs(rep.fit.a - a), std::abs(rep.fit.b - b));
    const double rel = scale > 0.0 ? err / scale : err;
    below("log-term fit", rel, tol::kFitRelative, "max(|a_fit - a|, |b_fit - b|) / (|a| + |b|)");
    const double band = tol::kSignDeadband * std::max(scale, 1.0);
    const int fit_sign = std::abs(rep.fit.mu) <= band ? 0 : (rep.fit.mu < 0 ? -1 : 1);
    const int exact_sign = verdict.mu.sign();
    add("mass sign", static_cast<double>(fit_sign), static_cast<double>(exact_sign), fit_sign == exact_sign,
        "sign of the fitted log coefficient; reference is the exact sign");
  }

  {
    for (double r : decay_radii()) rep.decay.push_back({r, potential_residual(data, r)});
    double worst = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < 3; ++i) {
      const double ratio = rep.decay[i + 1].residual / rep.decay[i].residual;
      const double dev = std::abs(ratio / tol::kDecayTarget - 1.0);
      worst = std::max(worst, dev);
      ok = ok && std::isfinite(ratio) && dev <= tol::kDecaySpread;
    }
    add("potential decay", worst, tol::kDecaySpread, ok, "|ratio·16 - 1| over r = 10, 20, 40");
  }

  rep.all_passed = std::all_of(rep.checks.begin(), rep.checks.end(), [](const CheckResult& c) { return c.passed; });
  return rep;
}

}  // namespace hjale
