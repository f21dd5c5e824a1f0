#pragma once

// Lifted circle diffeomorphisms x -> x + p(x) (p periodic) and the group-level
// cocycles of the generalized Virasoro extension: the Bott cocycle, the
// connection cochain tau^alpha and the Euler cocycle chi^alpha.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "vir/spectral.hpp"

namespace vir {

template <typename Scalar>
class BasicLiftedDiffeo {
 public:
  using F = BasicField<Scalar>;

  /// Throws NonMonotone unless 1 + p'(x_j) > 0 at every grid point.
  explicit BasicLiftedDiffeo(F displacement) : p_(std::move(displacement)) {
    const Eigen::Array<Scalar, Eigen::Dynamic, 1> slope = derivative(p_, 1).values().array() + Scalar(1);
    if (!(slope > Scalar(0)).all() || !p_.values().allFinite()) {
      throw NonMonotone("lifted diffeomorphism is not orientation preserving (min slope " +
                        std::to_string(static_cast<double>(slope.minCoeff())) + ")");
    }
  }

  static BasicLiftedDiffeo identity(const GridSpec& grid) { return BasicLiftedDiffeo(F::zero(grid)); }
  static BasicLiftedDiffeo rotation(const GridSpec& grid, Scalar angle) {
    return BasicLiftedDiffeo(F::constant(grid, angle));
  }

  const F& displacement() const { return p_; }
  const GridSpec& grid() const { return p_.grid(); }

  Scalar operator()(Scalar x) const { return x + evaluate(p_, x); }

  /// f'(x) on the grid.
  F slope() const { return derivative(p_, 1) + Scalar(1); }

  /// Same map plus a deck translation by 2 pi k.
  BasicLiftedDiffeo deck(int k) const { return BasicLiftedDiffeo(p_ + two_pi<Scalar> * Scalar(k), Trusted{}); }

 private:
  struct Trusted {};
  BasicLiftedDiffeo(F displacement, Trusted) : p_(std::move(displacement)) {}

  F p_;
};

using LiftedDiffeo = BasicLiftedDiffeo<double>;

/// Lift with f(0) in [0, 2pi).
template <typename Scalar>
BasicLiftedDiffeo<Scalar> canonical(const BasicLiftedDiffeo<Scalar>& f) {
  const Scalar at_zero = f(Scalar(0));
  const int k = static_cast<int>(std::floor(at_zero / two_pi<Scalar>));
  return f.deck(-k);
}

/// x -> f(g(x)), with f evaluated off-grid by trigonometric interpolation.
template <typename Scalar>
BasicLiftedDiffeo<Scalar> compose(const BasicLiftedDiffeo<Scalar>& f, const BasicLiftedDiffeo<Scalar>& g) {
  require_same_grid(f.grid(), g.grid());
  const GridSpec& grid = f.grid();
  const auto& pg = g.displacement().values();
  typename BasicField<Scalar>::RealVector out(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    out[j] = pg[j] + evaluate(f.displacement(), grid.node<Scalar>(j) + pg[j]);
  }
  return BasicLiftedDiffeo<Scalar>(BasicField<Scalar>::from_values(grid, std::move(out)));
}

/// Per-node Newton solve of f(y) = x_j, safeguarded by bisection. The root
/// lies in [x - max p, x - min p] since y = x - p(y).
template <typename Scalar>
BasicLiftedDiffeo<Scalar> invert(const BasicLiftedDiffeo<Scalar>& f) {
  const GridSpec& grid = f.grid();
  const auto& p = f.displacement();
  const auto dp = derivative(p, 1);
  const Scalar tol = Scalar(64) * std::numeric_limits<Scalar>::epsilon();
  // Interpolant extrema can exceed the nodal ones slightly.
  const Scalar margin = Scalar(0.1) * (Scalar(1) + sup_norm(p));
  const Scalar p_max = p.values().maxCoeff() + margin;
  const Scalar p_min = p.values().minCoeff() - margin;
  typename BasicField<Scalar>::RealVector out(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    const Scalar x = grid.node<Scalar>(j);
    Scalar lo = x - p_max, hi = x - p_min;
    Scalar y = x - p.value(j);
    for (int it = 0; it < 200; ++it) {
      const Scalar residual = y + evaluate(p, y) - x;
      if (std::abs(residual) <= tol * (Scalar(1) + std::abs(x))) break;
      (residual > 0 ? hi : lo) = y;
      const Scalar next = y - residual / (Scalar(1) + evaluate(dp, y));
      y = (next > lo && next < hi) ? next : (lo + hi) / 2;
    }
    out[j] = y - x;
  }
  return BasicLiftedDiffeo<Scalar>(BasicField<Scalar>::from_values(grid, std::move(out)));
}

/// int_0^{2pi} (f(x) + 2 pi offset) dx, with int x dx = 2 pi^2 taken exactly.
template <typename Scalar>
Scalar lift_integral(const BasicLiftedDiffeo<Scalar>& f, int offset = 0) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return Scalar(2) * pi * pi + integrate(f.displacement()) + Scalar(4) * pi * pi * Scalar(offset);
}

/// B(phi, psi) = 1/2 int log((phi o psi)') d log psi'
///             = 1/2 int log(phi'(psi(x)) psi'(x)) psi''(x)/psi'(x) dx.
template <typename Scalar>
Scalar bott_cocycle(const BasicLiftedDiffeo<Scalar>& phi, const BasicLiftedDiffeo<Scalar>& psi) {
  require_same_grid(phi.grid(), psi.grid());
  const GridSpec& grid = psi.grid();
  const auto dphi = derivative(phi.displacement(), 1);
  const auto psi1 = psi.slope();
  const auto psi2 = derivative(psi.displacement(), 2);
  const auto& q = psi.displacement().values();
  typename BasicField<Scalar>::RealVector integrand(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    const Scalar phi_slope = Scalar(1) + evaluate(dphi, grid.node<Scalar>(j) + q[j]);
    if (!(phi_slope > Scalar(0))) throw NonMonotone("bott_cocycle: phi' <= 0");
    integrand[j] = std::log(phi_slope * psi1.value(j)) * psi2.value(j) / psi1.value(j);
  }
  return Scalar(0.5) * grid.spacing<Scalar>() * integrand.sum();
}

/// tau^alpha(f + 2 pi offset) = -(alpha/2) int (f(x) + 2 pi offset) dx + pi^2 alpha.
template <typename Scalar>
Scalar connection_cochain(const BasicLiftedDiffeo<Scalar>& f, int lift_offset, Scalar alpha) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return -(alpha / 2) * lift_integral(f, lift_offset) + pi * pi * alpha;
}

/// chi^alpha(f1, f2) = (alpha/2) int (f1 + f2 - f1 o f2) dx - pi^2 alpha.
/// Independent of the lifts chosen for f1 and f2.
template <typename Scalar>
Scalar euler_cocycle(const BasicLiftedDiffeo<Scalar>& f1, const BasicLiftedDiffeo<Scalar>& f2, Scalar alpha) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  return (alpha / 2) * (lift_integral(f1) + lift_integral(f2) - lift_integral(compose(f1, f2))) -
         pi * pi * alpha;
}

/// (delta c)(f,g,h) = c(g,h) - c(f o g, h) + c(f, g o h) - c(f,g)
template <typename Scalar, typename Cocycle>
Scalar cocycle_defect(Cocycle&& c, const BasicLiftedDiffeo<Scalar>& f, const BasicLiftedDiffeo<Scalar>& g,
                      const BasicLiftedDiffeo<Scalar>& h) {
  return c(g, h) - c(compose(f, g), h) + c(f, compose(g, h)) - c(f, g);
}

template <typename Scalar>
struct BasicFlowResult {
  std::vector<Scalar> times;
  std::vector<BasicLiftedDiffeo<Scalar>> maps;
};
using FlowResult = BasicFlowResult<double>;

/// Flow of the vector field X: integrates dy/dt = X(y) from every grid node
/// with RK4 (at most `max_step` per substep), sampled at n_samples equispaced
/// times in [0, t_end]. t_end may be negative.
template <typename Scalar>
BasicFlowResult<Scalar> flow(const BasicField<Scalar>& X, Scalar t_end, int n_samples,
                             Scalar max_step = Scalar(1e-3)) {
  if (n_samples < 2) throw InsufficientSamples("flow: need at least 2 samples");
  using Vec = typename BasicField<Scalar>::RealVector;
  const GridSpec& grid = X.grid();
  Vec nodes(grid.size());
  for (int j = 0; j < grid.size(); ++j) nodes[j] = grid.node<Scalar>(j);

  auto velocity = [&X](const Vec& y) { return evaluate(X, y); };

  BasicFlowResult<Scalar> out;
  Vec y = nodes;
  const Scalar interval = t_end / Scalar(n_samples - 1);
  const int substeps = std::max(1, static_cast<int>(std::ceil(std::abs(interval) / max_step)));
  const Scalar h = interval / Scalar(substeps);
  out.times.push_back(0);
  out.maps.push_back(BasicLiftedDiffeo<Scalar>::identity(grid));
  for (int s = 1; s < n_samples; ++s) {
    for (int sub = 0; sub < substeps; ++sub) {
      const Vec k1 = velocity(y);
      const Vec k2 = velocity(y + (h / 2) * k1);
      const Vec k3 = velocity(y + (h / 2) * k2);
      const Vec k4 = velocity(y + h * k3);
      y += (h / 6) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
    }
    out.times.push_back(interval * Scalar(s));
    out.maps.emplace_back(BasicField<Scalar>::from_values(grid, y - nodes));
  }
  return out;
}

namespace detail {

template <typename Scalar>
Scalar uniform_spacing(const BasicFlowResult<Scalar>& c) {
  if (c.times.size() < 3) throw InsufficientSamples("need at least 3 time samples");
  const Scalar dt = c.times[1] - c.times[0];
  for (std::size_t i = 1; i < c.times.size(); ++i) {
    const Scalar step = c.times[i] - c.times[i - 1];
    if (std::abs(step - dt) > Scalar(1e-9) * std::abs(dt)) {
      throw std::invalid_argument("flow samples are not equispaced in time");
    }
  }
  return dt;
}

template <typename Scalar>
std::size_t sample_index(const BasicFlowResult<Scalar>& c, Scalar t) {
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    if (std::abs(c.times[i] - t) <= Scalar(1e-9) * std::max(Scalar(1), std::abs(t))) return i;
  }
  throw std::invalid_argument("time " + std::to_string(static_cast<double>(t)) + " is not a sample");
}

/// c_t at sample i by second-order differences (one-sided at the ends).
template <typename Scalar>
BasicField<Scalar> time_derivative(const BasicFlowResult<Scalar>& c, std::size_t i, Scalar dt) {
  const auto& m = c.maps;
  const std::size_t last = m.size() - 1;
  if (i == 0) {
    return (Scalar(-3) * m[0].displacement() + Scalar(4) * m[1].displacement() - m[2].displacement()) *
           (Scalar(1) / (2 * dt));
  }
  if (i == last) {
    return (Scalar(3) * m[last].displacement() - Scalar(4) * m[last - 1].displacement() +
            m[last - 2].displacement()) *
           (Scalar(1) / (2 * dt));
  }
  return (m[i + 1].displacement() - m[i - 1].displacement()) * (Scalar(1) / (2 * dt));
}

}  // namespace detail

template <typename Scalar>
struct BasicResidualSample {
  Scalar time;
  BasicField<Scalar> residual;
};
using ResidualSample = BasicResidualSample<double>;

/// 2 c_tx c_t + c_tt c_x at every interior sample time; time derivatives by
/// central differences, space derivatives spectral on the displacement.
template <typename Scalar>
std::vector<BasicResidualSample<Scalar>> geodesic_residual(const BasicFlowResult<Scalar>& c) {
  const Scalar dt = detail::uniform_spacing(c);
  std::vector<BasicResidualSample<Scalar>> out;
  for (std::size_t i = 1; i + 1 < c.maps.size(); ++i) {
    const auto& prev = c.maps[i - 1].displacement();
    const auto& here = c.maps[i].displacement();
    const auto& next = c.maps[i + 1].displacement();
    const auto ct = (next - prev) * (Scalar(1) / (2 * dt));
    const auto ctt = (next - Scalar(2) * here + prev) * (Scalar(1) / (dt * dt));
    const auto ctx = derivative(ct, 1);
    const auto cx = derivative(here, 1) + Scalar(1);
    out.push_back({c.times[i], Scalar(2) * multiply_pointwise(ctx, ct) + multiply_pointwise(ctt, cx)});
  }
  return out;
}

/// Right-translated velocity u(., t) = c_t(., t) o c(., t)^{-1} at a sample time.
template <typename Scalar>
BasicField<Scalar> velocity_field(const BasicFlowResult<Scalar>& c, Scalar t) {
  const Scalar dt = detail::uniform_spacing(c);
  const std::size_t i = detail::sample_index(c, t);
  const auto ct = detail::time_derivative(c, i, dt);
  const auto inverse = invert(c.maps[i]);
  const GridSpec& grid = ct.grid();
  typename BasicField<Scalar>::RealVector out(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    out[j] = evaluate(ct, grid.node<Scalar>(j) + inverse.displacement().value(j));
  }
  return BasicField<Scalar>::from_values(grid, std::move(out));
}

/// Central second difference in (t, s) of chi^alpha(c_u(t), c_v(s)) at 0,
/// which tends to (alpha/2) int u v' dx.
template <typename Scalar>
Scalar infinitesimal_euler_cocycle(const BasicField<Scalar>& u, const BasicField<Scalar>& v, Scalar alpha,
                                   Scalar h = Scalar(1e-3)) {
  auto endpoint = [](const BasicField<Scalar>& X, Scalar t) { return flow(X, t, 2).maps.back(); };
  const auto up = endpoint(u, h), um = endpoint(u, -h);
  const auto vp = endpoint(v, h), vm = endpoint(v, -h);
  const Scalar sum = euler_cocycle(up, vp, alpha) - euler_cocycle(up, vm, alpha) -
                     euler_cocycle(um, vp, alpha) + euler_cocycle(um, vm, alpha);
  return sum / (Scalar(4) * h * h);
}

}  // namespace vir
