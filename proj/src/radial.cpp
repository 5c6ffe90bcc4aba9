#include "lanemden/radial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>

#include "lanemden/errors.hpp"
#include "lanemden/table_io.hpp"

namespace lanemden {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::vector<double>;

constexpr double kBlowupGuard = 1e12;

// Layout: [u - a, u'] for s = 1, [u - a, u', w - b, w'] for s = 2, each block of
// length m, with a, b the values at the origin.
struct RadialSystem {
  const ProblemParams& params;
  int m;
  bool fourth;
  Eigen::VectorXd a, b;

  void operator()(const State& x, State& dxdt, double r) const {
    const Eigen::VectorXd u = a + Eigen::Map<const Eigen::VectorXd>(x.data(), m);
    const Eigen::VectorXd f = nonlinearity(params, u);
    const double k = (params.n - 1.0) / r;
    for (int i = 0; i < m; ++i) {
      dxdt[i] = x[m + i];
      if (!fourth) {
        dxdt[m + i] = -f[i] - k * x[m + i];
      } else {
        dxdt[m + i] = b[i] + x[2 * m + i] - k * x[m + i];
        dxdt[2 * m + i] = x[3 * m + i];
        dxdt[3 * m + i] = f[i] - k * x[3 * m + i];
      }
    }
  }
};

// Septic Hermite weights on t in [0,1]: value difference, then first to third
// derivatives at each end (derivative weights already carry h^j).
struct HermiteWeights {
  double dy, m0, a0, j0, m1, a1, j1;
};

HermiteWeights hermite(double t, int d) {
  switch (d) {
    case 0:
      return {t * t * t * t * (t * (t * (70 - 20 * t) - 84) + 35),
              t * (t * t * t * (t * (t * (10 * t - 36) + 45) - 20) + 1),
              t * t * (t * t * (t * (t * (2 * t - 7.5) + 10) - 5) + 0.5),
              t * t * t * (t * (t * (t * (t / 6 - 2.0 / 3) + 1) - 2.0 / 3) + 1.0 / 6),
              t * t * t * t * (t * (t * (10 * t - 34) + 39) - 15),
              t * t * t * t * (t * (t * (6.5 - 2 * t) - 7) + 2.5),
              t * t * t * t * (t * (t * (t / 6 - 0.5) + 0.5) - 1.0 / 6)};
    case 1:
      return {t * t * t * (t * (t * (420 - 140 * t) - 420) + 140),
              t * t * t * (t * (t * (70 * t - 216) + 225) - 80) + 1,
              t * (t * t * (t * (t * (14 * t - 45) + 50) - 20) + 1),
              t * t * (t * (t * (t * (7 * t / 6 - 4) + 5) - 8.0 / 3) + 0.5),
              t * t * t * (t * (t * (70 * t - 204) + 195) - 60),
              t * t * t * (t * (t * (39 - 14 * t) - 35) + 10),
              t * t * t * (t * (t * (7 * t / 6 - 3) + 2.5) - 2.0 / 3)};
    default:
      return {t * t * (t * (t * (2100 - 840 * t) - 1680) + 420),
              t * t * (t * (t * (420 * t - 1080) + 900) - 240),
              t * t * (t * (t * (84 * t - 225) + 200) - 60) + 1,
              t * (t * (t * (t * (7 * t - 20) + 20) - 8) + 1),
              t * t * (t * (t * (420 * t - 1020) + 780) - 180),
              t * t * (t * (t * (195 - 84 * t) - 140) + 30),
              t * t * (t * (t * (7 * t - 15) + 10) - 2)};
  }
}

struct Block {
  const Eigen::MatrixXd &y, &shift, &dy, &d2y, &d3y;
};

// Interpolates one block (values, first and second derivatives) on [r_k, r_{k+1}].
void interpolate_block(const Block& b, Eigen::Index k, double h, double t, Eigen::VectorXd& out0,
                       Eigen::VectorXd& out1, Eigen::VectorXd& out2) {
  const Eigen::RowVectorXd dy = b.shift.row(k + 1) - b.shift.row(k);
  auto combine = [&](const HermiteWeights& w) -> Eigen::RowVectorXd {
    return w.dy * dy + h * (w.m0 * b.dy.row(k) + w.m1 * b.dy.row(k + 1)) +
           h * h * (w.a0 * b.d2y.row(k) + w.a1 * b.d2y.row(k + 1)) +
           h * h * h * (w.j0 * b.d3y.row(k) + w.j1 * b.d3y.row(k + 1));
  };
  out0 = (b.y.row(k) + combine(hermite(t, 0))).transpose();
  out1 = combine(hermite(t, 1)).transpose() / h;
  out2 = combine(hermite(t, 2)).transpose() / (h * h);
}

double falling(double beta, int k) {
  double c = 1.0;
  for (int j = 0; j < k; ++j) c *= (-beta - j);
  return c;
}

struct CoreSample {
  RadialSample s;
  Eigen::VectorXd d3u, d3w;
};

CoreSample core_sample_full(const RadialSolution& sol, double r) {
  const auto& core = *sol.core;
  const double b = core.beta;
  CoreSample out;
  out.s.u = core.amplitude * std::pow(r, -b);
  out.s.du = core.amplitude * falling(b, 1) * std::pow(r, -b - 1.0);
  out.s.d2u = core.amplitude * falling(b, 2) * std::pow(r, -b - 2.0);
  out.d3u = core.amplitude * falling(b, 3) * std::pow(r, -b - 3.0);
  if (sol.fourth_order()) {
    // Delta r^{-b} = b (b + 2 - n) r^{-b-2}
    const Eigen::VectorXd c = core.amplitude * (b * (b + 2.0 - sol.params.n));
    out.s.w = c * std::pow(r, -b - 2.0);
    out.s.dw = c * falling(b + 2.0, 1) * std::pow(r, -b - 3.0);
    out.s.d2w = c * falling(b + 2.0, 2) * std::pow(r, -b - 4.0);
    out.d3w = c * falling(b + 2.0, 3) * std::pow(r, -b - 5.0);
  }
  return out;
}

RadialSample core_sample(const RadialSolution& sol, double r) { return core_sample_full(sol, r).s; }

// Directional derivative Df(u) v of the nonlinearity.
Eigen::VectorXd nonlinearity_derivative(const ProblemParams& params, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const double norm2 = u.squaredNorm();
  if (norm2 == 0.0) return Eigen::VectorXd::Zero(u.size());
  const Eigen::VectorXd f = nonlinearity(params, u);
  const double weight = std::pow(norm2, 0.5 * (params.p - 1.0));
  Eigen::VectorXd out = (params.p - 1.0) * u.dot(v) / norm2 * f;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const auto c = params.coupling_of(static_cast<std::size_t>(i));
    const double k = u[i] > 0.0 ? c.alpha : c.beta;
    out[i] += weight * k * v[i];
  }
  return out;
}

void fill_derivatives(RadialSolution& sol) {
  const auto K = sol.nodes();
  const int m = sol.params.m;
  const double n = sol.params.n;
  sol.d2u.resize(K, m);
  sol.d3u.resize(K, m);
  if (sol.fourth_order()) {
    sol.d2w.resize(K, m);
    sol.d3w.resize(K, m);
  }
  for (Eigen::Index k = 0; k < K; ++k) {
    const double r = sol.grid[k];
    const Eigen::VectorXd u = sol.u.row(k).transpose();
    const Eigen::VectorXd du = sol.du.row(k).transpose();
    const Eigen::VectorXd f = nonlinearity(sol.params, u);
    const Eigen::VectorXd df = nonlinearity_derivative(sol.params, u, du);
    for (int i = 0; i < m; ++i) {
      if (!sol.fourth_order()) {
        sol.d2u(k, i) = r > 0.0 ? -f[i] - (n - 1.0) / r * du[i] : -f[i] / n;
        sol.d3u(k, i) = r > 0.0 ? -df[i] - (n - 1.0) * (sol.d2u(k, i) * r - du[i]) / (r * r) : 0.0;
      } else {
        sol.d2u(k, i) = r > 0.0 ? sol.w(k, i) - (n - 1.0) / r * du[i] : sol.w(k, i) / n;
        sol.d2w(k, i) = r > 0.0 ? f[i] - (n - 1.0) / r * sol.dw(k, i) : f[i] / n;
        sol.d3u(k, i) = r > 0.0 ? sol.dw(k, i) - (n - 1.0) * (sol.d2u(k, i) * r - du[i]) / (r * r) : 0.0;
        sol.d3w(k, i) = r > 0.0 ? df[i] - (n - 1.0) * (sol.d2w(k, i) * r - sol.dw(k, i)) / (r * r) : 0.0;
      }
    }
  }
}

}  // namespace

void ShootingConfig::validate(const ProblemParams& params) const {
  if (init_u.size() != params.m) throw DomainError("ShootingConfig: init_u must have m components");
  if (params.s == 2.0 && init_w.size() != 0 && init_w.size() != params.m)
    throw DomainError("ShootingConfig: init_w must have m components");
  if (!(r_max > 0.0 && std::isfinite(r_max))) throw DomainError("ShootingConfig: r_max must be positive");
  if (!(rel_tol > 0.0 && rel_tol < 1.0) || !(abs_tol > 0.0 && abs_tol < 1.0))
    throw DomainError("ShootingConfig: tolerances must lie in (0, 1)");
  if (start_radius < 0.0 || start_radius >= r_max) throw DomainError("ShootingConfig: start_radius must be < r_max");
  if (max_step < 0.0) throw DomainError("ShootingConfig: max_step must be non-negative");
}

RadialSolution solve_radial(const ProblemParams& params, const ShootingConfig& cfg) {
  params.validate();
  if (params.s != 1.0 && params.s != 2.0) throw UnsupportedError("solve_radial: only s = 1 and s = 2 are supported");
  if (!is_integer(params.n) || params.n < 2.0) throw DomainError("solve_radial: n must be an integer >= 2");
  cfg.validate(params);

  const int m = params.m;
  const bool fourth = params.s == 2.0;
  const int dim = (fourth ? 4 : 2) * m;
  const double n = params.n;
  const double r0 = cfg.start_radius > 0.0 ? cfg.start_radius : 1e-6 * cfg.r_max;
  const double max_step = cfg.max_step > 0.0 ? cfg.max_step : cfg.r_max / 500.0;

  const Eigen::VectorXd a = cfg.init_u;
  const Eigen::VectorXd b = (fourth && cfg.init_w.size() == m) ? cfg.init_w : Eigen::VectorXd::Zero(m);
  const Eigen::VectorXd fa = nonlinearity(params, a);

  std::vector<double> radii{0.0};
  std::vector<State> states{State(dim, 0.0)};

  // Series through r^4 up to the hand-off radius.
  const double c4 = 1.0 / (8.0 * n * (n + 2.0));
  const Eigen::VectorXd q4 = fourth ? Eigen::VectorXd(c4 * fa) : Eigen::VectorXd(c4 * nonlinearity_derivative(params, a, fa));
  const Eigen::VectorXd w4 = fourth ? Eigen::VectorXd(c4 * nonlinearity_derivative(params, a, b)) : Eigen::VectorXd::Zero(m);
  const double r2 = r0 * r0, r3 = r2 * r0, r4 = r2 * r2;
  State x(dim, 0.0);
  for (int i = 0; i < m; ++i) {
    if (!fourth) {
      x[i] = -fa[i] * r2 / (2.0 * n) + q4[i] * r4;
      x[m + i] = -fa[i] * r0 / n + 4.0 * q4[i] * r3;
    } else {
      x[i] = b[i] * r2 / (2.0 * n) + q4[i] * r4;
      x[m + i] = b[i] * r0 / n + 4.0 * q4[i] * r3;
      x[2 * m + i] = fa[i] * r2 / (2.0 * n) + w4[i] * r4;
      x[3 * m + i] = fa[i] * r0 / n + 4.0 * w4[i] * r3;
    }
  }
  double r = r0;
  radii.push_back(r);
  states.push_back(x);

  RadialSystem system{params, m, fourth, a, b};
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(cfg.abs_tol, cfg.rel_tol);
  double dt = std::min(max_step, std::max(r0, 1e-3 * max_step));
  const double min_step = 1e-14 * cfg.r_max;
  std::optional<double> blowup;

  auto exceeds_guard = [&](const State& y) {
    for (int i = 0; i < m; ++i) {
      const double u = a[i] + y[i];
      if (!std::isfinite(u) || std::abs(u) > kBlowupGuard) return true;
      const double w = fourth ? b[i] + y[2 * m + i] : 0.0;
      if (!std::isfinite(w) || std::abs(w) > kBlowupGuard) return true;
    }
    return false;
  };

  // f is only finitely smooth where a component vanishes; a step that crosses
  // such a zero is cut back so the crossing becomes a node.
  odeint::runge_kutta_dopri5<State> single;
  auto crossing = [&](const State& from, double r_from, const State& to, double h) -> std::optional<double> {
    double first = h;
    for (int i = 0; i < m; ++i) {
      const double u0 = a[i] + from[i], u1 = a[i] + to[i];
      if (!(u0 * u1 < 0.0)) continue;
      State dxdt_from(dim), out(dim), dxdt_out(dim);
      system(from, dxdt_from, r_from);
      auto g = [&](double tau) {
        if (tau == 0.0) return u0;
        single.do_step(system, from, dxdt_from, r_from, out, dxdt_out, tau);
        return a[i] + out[i];
      };
      std::uintmax_t iterations = 60;
      const auto root = boost::math::tools::toms748_solve(g, 0.0, h, u0, u1, boost::math::tools::eps_tolerance<double>(50),
                                                          iterations);
      first = std::min(first, 0.5 * (root.first + root.second));
    }
    if (first > 1e-6 * h && first < h * (1.0 - 1e-6)) return first;
    return std::nullopt;
  };

  while (cfg.r_max - r > 1e-13 * cfg.r_max) {
    // (n-1)/r amplifies absolute errors in u' near the origin
    dt = std::min({dt, max_step, cfg.r_max - r, 0.5 * r});
    const State x_prev = x;
    const double r_prev = r;
    const auto result = stepper.try_step(system, x, r, dt);
    if (result == odeint::success) {
      if (const auto tau = crossing(x_prev, r_prev, x, r - r_prev)) {
        State dxdt_prev(dim), dxdt_out(dim);
        system(x_prev, dxdt_prev, r_prev);
        single.do_step(system, x_prev, dxdt_prev, r_prev, x, dxdt_out, *tau);
        r = r_prev + *tau;
        stepper.reset();
      }
      if (cfg.r_max - r <= 1e-13 * cfg.r_max) r = cfg.r_max;
      radii.push_back(r);
      states.push_back(x);
      if (exceeds_guard(x)) {
        blowup = r;
        break;
      }
    } else if (dt < min_step) {
      throw ConvergenceError("solve_radial: step size underflow at r = " + format_number(r), r);
    }
  }

  RadialSolution sol;
  sol.params = params;
  sol.blowup_radius = blowup;
  const auto K = static_cast<Eigen::Index>(radii.size());
  sol.grid = Eigen::Map<const Eigen::VectorXd>(radii.data(), K);
  sol.u.resize(K, m);
  sol.u_shift.resize(K, m);
  sol.du.resize(K, m);
  if (fourth) {
    sol.w.resize(K, m);
    sol.w_shift.resize(K, m);
    sol.dw.resize(K, m);
  }
  for (Eigen::Index k = 0; k < K; ++k) {
    for (int i = 0; i < m; ++i) {
      sol.u_shift(k, i) = states[k][i];
      sol.u(k, i) = a[i] + states[k][i];
      sol.du(k, i) = states[k][m + i];
      if (fourth) {
        sol.w_shift(k, i) = states[k][2 * m + i];
        sol.w(k, i) = b[i] + states[k][2 * m + i];
        sol.dw(k, i) = states[k][3 * m + i];
      }
    }
  }
  fill_derivatives(sol);
  return sol;
}

RadialSolution blow_down(const RadialSolution& sol, double lam) {
  if (!(lam > 0.0 && std::isfinite(lam))) throw DomainError("blow_down: lambda must be positive");
  const double beta = sol.params.beta_p();
  RadialSolution out = sol;
  out.grid = sol.grid / lam;
  const double su = std::pow(lam, beta);
  out.u = sol.u * su;
  out.u_shift = sol.u_shift * su;
  out.du = sol.du * (su * lam);
  out.d2u = sol.d2u * (su * lam * lam);
  out.d3u = sol.d3u * (su * lam * lam * lam);
  if (sol.fourth_order()) {
    const double sw = su * lam * lam;
    out.w = sol.w * sw;
    out.w_shift = sol.w_shift * sw;
    out.dw = sol.dw * (sw * lam);
    out.d2w = sol.d2w * (sw * lam * lam);
    out.d3w = sol.d3w * (sw * lam * lam * lam);
  }
  if (sol.blowup_radius) out.blowup_radius = *sol.blowup_radius / lam;
  return out;
}

RadialSample sample(const RadialSolution& sol, double r) {
  const double lo = sol.grid[0];
  const double hi = sol.r_end();
  if (!(r <= hi * (1.0 + 1e-14))) throw std::out_of_range("sample: r = " + format_number(r) + " beyond r_end");
  if (sol.core && r < lo) {
    if (!(r > 0.0)) throw std::out_of_range("sample: homogeneous solution is singular at r = 0");
    return core_sample(sol, r);
  }
  if (r < lo) throw std::out_of_range("sample: r = " + format_number(r) + " below the grid");
  r = std::min(r, hi);

  const double* begin = sol.grid.data();
  const double* end = begin + sol.grid.size();
  const double* it = std::upper_bound(begin, end, r);
  Eigen::Index k = std::max<Eigen::Index>(0, (it - begin) - 1);
  RadialSample out;
  if (sol.grid[k] == r || k == sol.nodes() - 1) {
    out.u = sol.u.row(k).transpose();
    out.du = sol.du.row(k).transpose();
    out.d2u = sol.d2u.row(k).transpose();
    if (sol.fourth_order()) {
      out.w = sol.w.row(k).transpose();
      out.dw = sol.dw.row(k).transpose();
      out.d2w = sol.d2w.row(k).transpose();
    }
    return out;
  }
  const double h = sol.grid[k + 1] - sol.grid[k];
  const double t = (r - sol.grid[k]) / h;
  interpolate_block({sol.u, sol.u_shift, sol.du, sol.d2u, sol.d3u}, k, h, t, out.u, out.du, out.d2u);
  if (sol.fourth_order())
    interpolate_block({sol.w, sol.w_shift, sol.dw, sol.d2w, sol.d3w}, k, h, t, out.w, out.dw, out.d2w);
  return out;
}

RadialSolution sample_singular(const SingularSolution& singular, double r_min, double r_max, int count) {
  const auto& params = singular.params;
  if (params.s != 1.0 && params.s != 2.0) throw UnsupportedError("sample_singular: only s = 1 and s = 2 are supported");
  if (!(r_min > 0.0 && r_max > r_min) || count < 2) throw DomainError("sample_singular: need 0 < r_min < r_max, count >= 2");
  RadialSolution sol;
  sol.params = params;
  sol.core = HomogeneousCore{singular.amplitude * singular.direction, singular.beta};
  sol.grid.resize(count);
  const double log_lo = std::log(r_min), log_hi = std::log(r_max);
  for (int k = 0; k < count; ++k)
    sol.grid[k] = k == 0 ? r_min : (k == count - 1 ? r_max : std::exp(log_lo + (log_hi - log_lo) * k / (count - 1)));
  const int m = params.m;
  sol.u.resize(count, m);
  sol.du.resize(count, m);
  sol.d2u.resize(count, m);
  sol.d3u.resize(count, m);
  if (sol.fourth_order()) {
    sol.w.resize(count, m);
    sol.dw.resize(count, m);
    sol.d2w.resize(count, m);
    sol.d3w.resize(count, m);
  }
  for (int k = 0; k < count; ++k) {
    const auto c = core_sample_full(sol, sol.grid[k]);
    sol.u.row(k) = c.s.u.transpose();
    sol.du.row(k) = c.s.du.transpose();
    sol.d2u.row(k) = c.s.d2u.transpose();
    sol.d3u.row(k) = c.d3u.transpose();
    if (sol.fourth_order()) {
      sol.w.row(k) = c.s.w.transpose();
      sol.dw.row(k) = c.s.dw.transpose();
      sol.d2w.row(k) = c.s.d2w.transpose();
      sol.d3w.row(k) = c.d3w.transpose();
    }
  }
  sol.u_shift = sol.u;
  if (sol.fourth_order()) sol.w_shift = sol.w;
  return sol;
}

Eigen::VectorXd ode_residual(const RadialSolution& sol, double r) {
  if (!(r > 0.0)) throw DomainError("ode_residual: r must be positive");
  const auto s = sample(sol, r);
  const double k = (sol.params.n - 1.0) / r;
  const Eigen::VectorXd f = nonlinearity(sol.params, s.u);
  if (!sol.fourth_order()) return s.d2u + k * s.du + f;
  Eigen::VectorXd out(2 * sol.params.m);
  out << s.d2u + k * s.du - s.w, s.d2w + k * s.dw - f;
  return out;
}

double relative_ode_residual(const RadialSolution& sol, double r) {
  const Eigen::VectorXd res = ode_residual(sol, r);
  const auto s = sample(sol, r);
  const double k = (sol.params.n - 1.0) / r;
  const Eigen::VectorXd f = nonlinearity(sol.params, s.u);
  const int m = sol.params.m;
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    double scale = std::abs(s.d2u[i]) + std::abs(k * s.du[i]);
    if (!sol.fourth_order()) {
      scale += std::abs(f[i]);
    } else {
      scale += std::abs(s.w[i]);
      const double scale_w = std::abs(s.d2w[i]) + std::abs(k * s.dw[i]) + std::abs(f[i]);
      if (scale_w > 0.0) worst = std::max(worst, std::abs(res[m + i]) / scale_w);
    }
    if (scale > 0.0) worst = std::max(worst, std::abs(res[i]) / scale);
  }
  return worst;
}

void write_trajectory_csv(std::ostream& out, const RadialSolution& sol) {
  const int m = sol.params.m;
  std::vector<std::string> header{"r"};
  for (int i = 1; i <= m; ++i) header.push_back("u_" + std::to_string(i));
  for (int i = 1; i <= m; ++i) header.push_back("du_" + std::to_string(i));
  if (sol.fourth_order()) {
    for (int i = 1; i <= m; ++i) header.push_back("w_" + std::to_string(i));
    for (int i = 1; i <= m; ++i) header.push_back("dw_" + std::to_string(i));
  }
  CsvWriter csv(out, header);
  for (Eigen::Index k = 0; k < sol.nodes(); ++k) {
    std::vector<double> row{sol.grid[k]};
    for (int i = 0; i < m; ++i) row.push_back(sol.u(k, i));
    for (int i = 0; i < m; ++i) row.push_back(sol.du(k, i));
    if (sol.fourth_order()) {
      for (int i = 0; i < m; ++i) row.push_back(sol.w(k, i));
      for (int i = 0; i < m; ++i) row.push_back(sol.dw(k, i));
    }
    csv.row(row);
  }
}

}  // namespace lanemden
