#pragma once

// Time stepping of momentum trajectories: classical RK4 and integrating-factor
// RK4 (Lawson) with the dispersive linear part integrated exactly per mode.

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "vir/hamiltonian.hpp"

namespace vir {

/// Diagonal linear operator in Fourier space, indexed like Field coefficients:
/// the linear part of the right-hand side is c_k -> L_k c_k.
template <typename Scalar>
using LinearSymbol = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
BasicField<Scalar> apply_diagonal(const BasicField<Scalar>& f, const LinearSymbol<Scalar>& d) {
  return BasicField<Scalar>::from_symmetric_coefficients(
      f.grid(), f.coefficients().cwiseProduct(d));
}

template <typename Scalar, typename Rhs>
BasicField<Scalar> step_rk4(Rhs&& rhs, const BasicField<Scalar>& state, Scalar dt) {
  const auto k1 = rhs(state);
  const auto k2 = rhs(state + (dt / 2) * k1);
  const auto k3 = rhs(state + (dt / 2) * k2);
  const auto k4 = rhs(state + dt * k3);
  return state + (dt / 6) * (k1 + Scalar(2) * k2 + Scalar(2) * k3 + k4);
}

/// Lawson RK4: RK4 applied to w = exp(-L t) u. Exact when the nonlinear part
/// vanishes; reduces to step_rk4 when L = 0.
template <typename Scalar, typename Nonlinear>
BasicField<Scalar> step_integrating_factor(const LinearSymbol<Scalar>& linear, Nonlinear&& nonlinear,
                                           const BasicField<Scalar>& state, Scalar dt) {
  const LinearSymbol<Scalar> half = (linear * (dt / 2)).array().exp();
  const LinearSymbol<Scalar> full = (linear * dt).array().exp();
  const auto k1 = nonlinear(state);
  const auto half_state = apply_diagonal(state, half);
  const auto k2 = nonlinear(half_state + (dt / 2) * apply_diagonal(k1, half));
  const auto k3 = nonlinear(half_state + (dt / 2) * k2);
  const auto k4 = nonlinear(apply_diagonal(state, full) + dt * apply_diagonal(k3, half));
  return apply_diagonal(state, full) +
         (dt / 6) * (apply_diagonal(k1, full) + Scalar(2) * apply_diagonal(k2 + k3, half) + k4);
}

/// Right-hand side of a momentum equation split as L u + N(u).
template <typename Scalar>
struct BasicSplitSystem {
  using FieldFn = std::function<BasicField<Scalar>(const BasicField<Scalar>&)>;
  LinearSymbol<Scalar> linear;
  FieldFn nonlinear;
  FieldFn full;
};
using SplitSystem = BasicSplitSystem<double>;

/// Linear part of ad*_{A^{-1}u + lift}(u, a): the cocycle terms
/// -alpha a V''' + beta a V' with V = A^{-1}u, plus the transport -lift u'.
template <typename Scalar>
LinearSymbol<Scalar> euler_linear_symbol(const GridSpec& grid, const EquationSpec& spec,
                                         Scalar central) {
  const auto sigma = inertia_symbol<Scalar>(spec.inertia);
  const Scalar alpha_a = Scalar(spec.params.alpha) * central;
  const Scalar beta_a = Scalar(spec.params.beta) * central;
  const Scalar lift = Scalar(spec.kernel_lift);
  LinearSymbol<Scalar> symbol(grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const Scalar k = Scalar(grid.wavenumber(i));
    const Scalar s = sigma(grid.wavenumber(i));
    Scalar im = -lift * k;
    if (s != Scalar(0)) im += (alpha_a * k * k * k + beta_a * k) / s;
    symbol[i] = std::complex<Scalar>(0, im);
  }
  symbol[grid.nyquist_index()] = 0;
  return symbol;
}

/// Momentum-space system for a named equation. For Euler equations the full
/// right-hand side is euler_rhs itself; mkdv uses its displayed formula.
template <typename Scalar>
BasicSplitSystem<Scalar> make_split_system(const NamedEquation& eq, const GridSpec& grid,
                                           double kernel_lift = 0) {
  using F = BasicField<Scalar>;
  BasicSplitSystem<Scalar> sys;
  if (eq.name == EquationName::Mkdv) {
    const Scalar a = Scalar(eq.a);
    sys.linear.resize(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
      const Scalar k = Scalar(grid.wavenumber(i));
      sys.linear[i] = std::complex<Scalar>(0, a * k * k * k);
    }
    sys.linear[grid.nyquist_index()] = 0;
    sys.nonlinear = [](const F& u) {
      return Scalar(-6) * multiply(multiply(u, u), derivative(u, 1));
    };
    sys.full = [a](const F& u) { return rhs_mkdv(u, a); };
    return sys;
  }
  const EquationSpec spec = equation_spec(eq, kernel_lift);
  const Scalar central = Scalar(central_of(eq));
  sys.linear = euler_linear_symbol<Scalar>(grid, spec, central);
  sys.nonlinear = [spec](const F& u) {
    const BasicMomentum<Scalar> m{u, Scalar(0)};
    const auto velocity = inertia_invert(m, spec.inertia, spec.nullspace_policy);
    return coadjoint(velocity, m, BasicCocycleParams<Scalar>{}).m;
  };
  sys.full = [spec, central](const F& u) {
    return euler_rhs(BasicMomentum<Scalar>{u, central}, spec).m;
  };
  return sys;
}

enum class Integrator { Rk4, IntegratingFactorRk4 };
enum class TerminationStatus { Completed, Blowup, KernelObstruction };

std::string to_string(Integrator integrator);
std::string to_string(TerminationStatus status);

/// Initial displayed field: preset(x) * scale + offset, plus explicit Fourier
/// modes (k >= 0, complex coefficient c_k; c_{-k} = conj(c_k) is implied).
struct InitialCondition {
  std::string preset = "sin";
  double scale = 1;
  double offset = 0;
  std::vector<std::pair<int, std::complex<double>>> modes;
  /// When true the field is the momentum u rather than the displayed v.
  bool is_momentum = false;
};

Field make_initial_field(const InitialCondition& init, const GridSpec& grid);
const std::vector<std::string>& initial_presets();

struct SimConfig {
  NamedEquation equation;
  GridSpec grid{128};
  double dt = 1e-3;
  double t_end = 1;
  InitialCondition initial;
  int output_every = 10;
  Integrator integrator = Integrator::IntegratingFactorRk4;
  /// Sup-norm threshold on the momentum field.
  double blowup_guard = 1e6;
  /// Threshold on the fraction of spectral energy above half the dealiasing
  /// cutoff; exceeding it means the solution is no longer resolved (gradient
  /// catastrophe). Zero disables the check.
  double resolution_guard = 1e-8;

  /// Throws ConfigError on invalid combinations.
  void validate() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Momentum> snapshots;
  std::vector<ConservedQuantities> conserved;
  TerminationStatus status = TerminationStatus::Completed;
  /// Mean of the displayed field, carried separately for the Hdot1 family.
  double displayed_mean = 0;
  std::string message;
};

/// Runs cfg starting from cfg.initial.
Trajectory simulate(const SimConfig& cfg);
/// Runs cfg starting from an explicit field (displayed unless
/// cfg.initial.is_momentum).
Trajectory simulate(const SimConfig& cfg, const Field& initial);

/// Displayed field of a snapshot.
Field displayed_field(const SimConfig& cfg, const Trajectory& traj, std::size_t index);

}  // namespace vir
