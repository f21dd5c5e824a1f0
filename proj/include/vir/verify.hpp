#pragma once

// Randomized invariant suites behind the verify-* commands. Each check keeps
// the worst defect seen over all trials and compares it with its tolerance.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "vir/integrate.hpp"

namespace vir {

struct Check {
  std::string name;
  double max_defect = 0;
  double tolerance = 0;
  /// "<=" : pass when max_defect <= tolerance.
  /// ">=" : pass when the smallest observed value is >= tolerance (a floor).
  std::string relation = "<=";
  bool pass = false;
};

struct VerifyReport {
  std::string suite;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  /// Extra suite-specific facts (e.g. which field preset was flowed).
  nlohmann::json info = nlohmann::json::object();

  bool pass() const;
  /// The "<=" check closest to (or furthest past) its tolerance.
  const Check* worst() const;
};

nlohmann::json to_json(const VerifyReport& report);

struct VerifyOptions {
  std::optional<int> trials;
  std::uint64_t seed = 1;
  /// Replaces the tolerance of every "<=" check.
  std::optional<double> tolerance;
  /// verify-geodesic only: initial-condition preset used as the vector field.
  std::string field = "one";
};

/// Duality, inertia symmetry, central invisibility, rotation invariance of the
/// Hdot1 metric, and consistency of the named equations with euler_rhs.
VerifyReport verify_algebra(const VerifyOptions& opts);
/// Hamiltonian vector fields of the KdV and mKdV Hamiltonians, gradients
/// against finite differences, Poisson bracket antisymmetry and bilinearity.
VerifyReport verify_hamiltonian(const VerifyOptions& opts);
/// Bott and Euler cocycle conditions, chi = -delta tau, lift independence,
/// deck equivariance of tau, and the infinitesimal Euler cocycle.
VerifyReport verify_cocycles(const VerifyOptions& opts);
/// Flow group property and geodesic residual / velocity of flow(field).
VerifyReport verify_geodesic(const VerifyOptions& opts);
/// Trajectory-level shift reductions of the generalized equations.
VerifyReport verify_shifts(const VerifyOptions& opts);

struct ShiftRun {
  NamedEquation original;
  Field v0;
  NamedEquation canonical;
  /// Compared relation: v(t) = w(t) + const_shift with w(0) = v0 - const_shift.
  double const_shift = 0;
  double t_end = 0.5;
  double dt = 1e-4;
  Integrator integrator = Integrator::IntegratingFactorRk4;
};

/// Sup over all recorded times of |v(t) - w(t) - const_shift| in the displayed
/// variable. Infinite if either run stops early.
double shift_trajectory_defect(const ShiftRun& run);

/// Same, with the canonical equation and shift taken from shift_reduce.
double shift_reduction_defect(const NamedEquation& eq, const Field& v0, double t_end = 0.5,
                              double dt = 1e-4);

}  // namespace vir
