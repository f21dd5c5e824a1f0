#pragma once

// Euler-Arnold right-hand side d/dt m = ad*_{A^{-1} m} m and the catalogue of
// named equations it produces for the three inertia operators.
//
// Variable conventions for the named equations (v is the displayed unknown):
//   L2 family      momentum u = v,        velocity A^{-1}u = v
//   H1 family      momentum u = v - v'',  velocity A^{-1}u = v
//   Hdot1 family   momentum u = v'',      velocity A^{-1}u = -v (plus a kernel lift)

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "vir/algebra.hpp"

namespace vir {

enum class EquationName {
  Burgers,
  Kdv,
  Mkdv,
  GeneralizedKdv,
  CamassaHolm,
  HunterSaxton,
  GeneralizedHsNew,
  GeneralizedH1,
};

inline constexpr std::array<EquationName, 8> kAllEquations = {
    EquationName::Burgers,      EquationName::Kdv,          EquationName::Mkdv,
    EquationName::GeneralizedKdv, EquationName::CamassaHolm, EquationName::HunterSaxton,
    EquationName::GeneralizedHsNew, EquationName::GeneralizedH1,
};

inline std::string_view to_string(EquationName name) {
  switch (name) {
    case EquationName::Burgers: return "burgers";
    case EquationName::Kdv: return "kdv";
    case EquationName::Mkdv: return "mkdv";
    case EquationName::GeneralizedKdv: return "generalized_kdv";
    case EquationName::CamassaHolm: return "camassa_holm";
    case EquationName::HunterSaxton: return "hunter_saxton";
    case EquationName::GeneralizedHsNew: return "generalized_hs_new";
    case EquationName::GeneralizedH1: return "generalized_h1";
  }
  return "?";
}

inline std::optional<EquationName> parse_equation_name(std::string_view text) {
  for (EquationName name : kAllEquations) {
    if (to_string(name) == text) return name;
  }
  return std::nullopt;
}

/// A catalogue entry plus its constants. `a` is the central value (the b of
/// Camassa-Holm); alpha and beta are read only by the generalized equations.
struct NamedEquation {
  EquationName name = EquationName::Kdv;
  double a = 0;
  double alpha = 1;
  double beta = 0;
};

struct EquationSpec {
  InertiaKind inertia = InertiaKind::L2;
  CocycleParams params;
  NullspacePolicy nullspace_policy = NullspacePolicy::Strict;
  /// Constant velocity component in ker A added to A^{-1}m. Only meaningful
  /// for HomogeneousH1, where velocities are defined up to constants.
  double kernel_lift = 0;
};

/// Inertia of the family the named equation belongs to.
inline InertiaKind inertia_of(EquationName name) {
  switch (name) {
    case EquationName::Burgers:
    case EquationName::Kdv:
    case EquationName::Mkdv:
    case EquationName::GeneralizedKdv: return InertiaKind::L2;
    case EquationName::CamassaHolm:
    case EquationName::GeneralizedH1: return InertiaKind::H1;
    case EquationName::HunterSaxton:
    case EquationName::GeneralizedHsNew: return InertiaKind::HomogeneousH1;
  }
  throw std::invalid_argument("unknown equation");
}

inline bool is_euler_equation(EquationName name) { return name != EquationName::Mkdv; }

/// Cocycle parameters the named equation uses (alpha, beta).
inline CocycleParams cocycle_of(const NamedEquation& eq) {
  switch (eq.name) {
    case EquationName::Burgers: return CocycleParams::trivial();
    case EquationName::Kdv:
    case EquationName::Mkdv:
    case EquationName::CamassaHolm:
    case EquationName::HunterSaxton: return CocycleParams::virasoro();
    case EquationName::GeneralizedKdv:
    case EquationName::GeneralizedHsNew:
    case EquationName::GeneralizedH1: return {eq.alpha, eq.beta};
  }
  throw std::invalid_argument("unknown equation");
}

/// Central value the equation places in the momentum (0 for Burgers).
inline double central_of(const NamedEquation& eq) {
  return eq.name == EquationName::Burgers ? 0.0 : eq.a;
}

inline EquationSpec equation_spec(const NamedEquation& eq, double kernel_lift = 0) {
  if (!is_euler_equation(eq.name)) {
    throw std::invalid_argument("mkdv has no inertia operator; it is produced Hamiltonianly");
  }
  return {inertia_of(eq.name), cocycle_of(eq), NullspacePolicy::Strict, kernel_lift};
}

/// d/dt m = ad*_{A^{-1}(m)} m.
template <typename Scalar>
BasicMomentum<Scalar> euler_rhs(const BasicMomentum<Scalar>& m, const EquationSpec& spec) {
  if (spec.kernel_lift != 0 && spec.inertia != InertiaKind::HomogeneousH1) {
    throw std::invalid_argument("kernel_lift requires a degenerate inertia operator");
  }
  auto velocity = inertia_invert(m, spec.inertia, spec.nullspace_policy);
  if (spec.kernel_lift != 0) velocity.u = velocity.u + Scalar(spec.kernel_lift);
  const BasicCocycleParams<Scalar> p{Scalar(spec.params.alpha), Scalar(spec.params.beta)};
  return coadjoint(velocity, m, p);
}

// Named right-hand sides, written exactly as the displayed equations.

/// u_t = -3 u_x u
template <typename Scalar>
BasicField<Scalar> rhs_burgers(const BasicField<Scalar>& u) {
  return Scalar(-3) * multiply(derivative(u, 1), u);
}

/// u_t = -3 u_x u - a u_xxx
template <typename Scalar>
BasicField<Scalar> rhs_kdv(const BasicField<Scalar>& u, Scalar a) {
  return rhs_burgers(u) - a * derivative(u, 3);
}

/// u_t = -6 u^2 u_x - a u_xxx
template <typename Scalar>
BasicField<Scalar> rhs_mkdv(const BasicField<Scalar>& u, Scalar a) {
  return Scalar(-6) * multiply(multiply(u, u), derivative(u, 1)) - a * derivative(u, 3);
}

/// u_t = -3 u u' - a alpha u''' + a beta u'
template <typename Scalar>
BasicField<Scalar> rhs_generalized_kdv(const BasicField<Scalar>& u, Scalar a, Scalar alpha,
                                       Scalar beta) {
  return rhs_burgers(u) - (a * alpha) * derivative(u, 3) + (a * beta) * derivative(u, 1);
}

/// (v - v_xx)_t = -3 v_x v + 2 v_x v_xx + v v_xxx - b v_xxx
template <typename Scalar>
BasicField<Scalar> rhs_camassa_holm(const BasicField<Scalar>& v, Scalar b) {
  const auto v1 = derivative(v, 1);
  const auto v3 = derivative(v, 3);
  return Scalar(-3) * multiply(v1, v) + Scalar(2) * multiply(v1, derivative(v, 2)) +
         multiply(v, v3) - b * v3;
}

/// v_xxt = 2 v_xx v_x + v v_xxx + a v_xxx
template <typename Scalar>
BasicField<Scalar> rhs_hunter_saxton(const BasicField<Scalar>& v, Scalar a) {
  const auto v3 = derivative(v, 3);
  return Scalar(2) * multiply(derivative(v, 2), derivative(v, 1)) + multiply(v, v3) + a * v3;
}

/// v_xxt = 2 v_x v_xx + v v_xxx + alpha a v_xxx - beta a v_x
template <typename Scalar>
BasicField<Scalar> rhs_generalized_hs_new(const BasicField<Scalar>& v, Scalar a, Scalar alpha,
                                          Scalar beta) {
  const auto v1 = derivative(v, 1);
  const auto v3 = derivative(v, 3);
  return Scalar(2) * multiply(v1, derivative(v, 2)) + multiply(v, v3) + (alpha * a) * v3 -
         (beta * a) * v1;
}

/// (v - v_xx)_t = -3 v_x v + 2 v_x v_xx + v v_xxx - alpha a v_xxx + beta a v_x
template <typename Scalar>
BasicField<Scalar> rhs_generalized_h1(const BasicField<Scalar>& v, Scalar a, Scalar alpha,
                                      Scalar beta) {
  const auto v1 = derivative(v, 1);
  const auto v3 = derivative(v, 3);
  return Scalar(-3) * multiply(v1, v) + Scalar(2) * multiply(v1, derivative(v, 2)) +
         multiply(v, v3) - (alpha * a) * v3 + (beta * a) * v1;
}

/// Time derivative of the momentum variable, evaluated through the displayed
/// formula of the named equation.
template <typename Scalar>
BasicField<Scalar> named_rhs(const NamedEquation& eq, const BasicField<Scalar>& v) {
  const Scalar a = Scalar(eq.a), alpha = Scalar(eq.alpha), beta = Scalar(eq.beta);
  switch (eq.name) {
    case EquationName::Burgers: return rhs_burgers(v);
    case EquationName::Kdv: return rhs_kdv(v, a);
    case EquationName::Mkdv: return rhs_mkdv(v, a);
    case EquationName::GeneralizedKdv: return rhs_generalized_kdv(v, a, alpha, beta);
    case EquationName::CamassaHolm: return rhs_camassa_holm(v, a);
    case EquationName::HunterSaxton: return rhs_hunter_saxton(v, a);
    case EquationName::GeneralizedHsNew: return rhs_generalized_hs_new(v, a, alpha, beta);
    case EquationName::GeneralizedH1: return rhs_generalized_h1(v, a, alpha, beta);
  }
  throw std::invalid_argument("unknown equation");
}

/// Momentum field corresponding to the displayed unknown v.
template <typename Scalar>
BasicField<Scalar> momentum_from_displayed(EquationName name, const BasicField<Scalar>& v) {
  switch (inertia_of(name)) {
    case InertiaKind::L2: return v;
    case InertiaKind::H1: return v - derivative(v, 2);
    case InertiaKind::HomogeneousH1: return derivative(v, 2);
  }
  throw std::invalid_argument("unknown inertia kind");
}

/// Displayed unknown recovered from the momentum. For the Hdot1 family the
/// mean of v is not encoded in u = v'' and is supplied as `mean`.
template <typename Scalar>
BasicField<Scalar> displayed_from_momentum(EquationName name, const BasicField<Scalar>& u,
                                           Scalar mean = Scalar(0),
                                           NullspacePolicy policy = NullspacePolicy::Strict) {
  const InertiaKind kind = inertia_of(name);
  switch (kind) {
    case InertiaKind::L2: return u;
    case InertiaKind::H1: return invert_multiplier(u, inertia_symbol<Scalar>(kind), policy);
    case InertiaKind::HomogeneousH1:
      return -invert_multiplier(u, inertia_symbol<Scalar>(kind), policy) + mean;
  }
  throw std::invalid_argument("unknown inertia kind");
}

/// Kernel lift reproducing the displayed Hdot1 equation for a v of given mean:
/// the velocity is -v, so its constant part is -mean.
inline double kernel_lift_for_mean(EquationName name, double mean) {
  return inertia_of(name) == InertiaKind::HomogeneousH1 ? -mean : 0.0;
}

template <typename Scalar>
struct BasicShiftReduction {
  NamedEquation canonical;
  BasicField<Scalar> w0;
  /// w = v - const_shift solves `canonical` whenever v solves the original.
  Scalar const_shift;
};
using ShiftReduction = BasicShiftReduction<double>;

/// Removes the affine part of a generalized equation by a constant shift.
///   generalized_kdv (a,alpha,beta) -> kdv with a*alpha,           w = v - a beta/3
///   hunter_saxton   (a)            -> hunter_saxton with a = 0,   w = v + a
///   generalized_hs_new (a,al,be)   -> generalized_hs_new, al = 0, w = v + alpha a
///   generalized_h1  (a,alpha,beta) -> camassa_holm, b = a(alpha - beta/3), w = v - a beta/3
template <typename Scalar>
BasicShiftReduction<Scalar> shift_reduce(const NamedEquation& eq, const BasicField<Scalar>& v0) {
  NamedEquation canonical;
  double shift = 0;
  switch (eq.name) {
    case EquationName::GeneralizedKdv:
      canonical = {EquationName::Kdv, eq.a * eq.alpha, 1, 0};
      shift = eq.a * eq.beta / 3;
      break;
    case EquationName::HunterSaxton:
      canonical = {EquationName::HunterSaxton, 0, 1, 0};
      shift = -eq.a;
      break;
    case EquationName::GeneralizedHsNew:
      canonical = {EquationName::GeneralizedHsNew, eq.a, 0, eq.beta};
      shift = -eq.alpha * eq.a;
      break;
    case EquationName::GeneralizedH1:
      canonical = {EquationName::CamassaHolm, eq.a * (eq.alpha - eq.beta / 3), 1, 0};
      shift = eq.a * eq.beta / 3;
      break;
    default:
      throw NotReducible(std::string(to_string(eq.name)) + " is already canonical");
  }
  return {canonical, v0 - Scalar(shift), Scalar(shift)};
}

}  // namespace vir
