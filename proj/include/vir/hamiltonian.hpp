#pragma once

// Constant Poisson structure on the Virasoro dual frozen at (-1/2 dx(x)dx, 0),
// the KdV and mKdV Hamiltonians, and per-equation conserved quantities.

#include <optional>

#include "vir/euler.hpp"

namespace vir {

template <typename Scalar>
BasicMomentum<Scalar> freezing_point(const GridSpec& grid) {
  return {BasicField<Scalar>::constant(grid, Scalar(-0.5)), Scalar(0)};
}

/// dH(m) regarded as an element of the algebra:
/// pair((w,b), grad) = d/dt H(m + t(w,b)) at t = 0.
template <typename Scalar>
using BasicFunctionalGradient = BasicAlgebraElement<Scalar>;
using FunctionalGradient = AlgebraElement;

/// H(u,a) = int (u^3/2 - a u_x^2/2) dx
template <typename Scalar>
Scalar hamiltonian_kdv(const BasicMomentum<Scalar>& m) {
  const auto& u = m.m;
  const auto ux = derivative(u, 1);
  return integrate(Scalar(0.5) * multiply(u, multiply(u, u)) - (m.c / 2) * multiply(ux, ux));
}

/// H(u,a) = int (3u^4/4 - a u_x^2/2) dx
template <typename Scalar>
Scalar hamiltonian_mkdv(const BasicMomentum<Scalar>& m) {
  const auto& u = m.m;
  const auto ux = derivative(u, 1);
  const auto u2 = multiply(u, u);
  return integrate(Scalar(0.75) * multiply(u2, u2) - (m.c / 2) * multiply(ux, ux));
}

/// ((3/2 u^2 + a u_xx) d/dx, -1/2 int u_x^2)
template <typename Scalar>
BasicFunctionalGradient<Scalar> grad_H_kdv(const BasicMomentum<Scalar>& m) {
  const auto& u = m.m;
  const auto ux = derivative(u, 1);
  return {Scalar(1.5) * multiply(u, u) + m.c * derivative(u, 2),
          Scalar(-0.5) * integrate(multiply(ux, ux))};
}

/// ((3u^3 + a u_xx) d/dx, -1/2 int u_x^2)
template <typename Scalar>
BasicFunctionalGradient<Scalar> grad_H_mkdv(const BasicMomentum<Scalar>& m) {
  const auto& u = m.m;
  const auto ux = derivative(u, 1);
  return {Scalar(3) * multiply(u, multiply(u, u)) + m.c * derivative(u, 2),
          Scalar(-0.5) * integrate(multiply(ux, ux))};
}

/// X_H(m) = -ad*_{dH(m)} (freezing point), Virasoro cocycle (1,0).
template <typename Scalar>
BasicMomentum<Scalar> hamiltonian_vf(const BasicFunctionalGradient<Scalar>& grad) {
  auto out = coadjoint(grad, freezing_point<Scalar>(grad.u.grid()),
                       BasicCocycleParams<Scalar>::virasoro());
  return {-out.m, Scalar(0)};
}

/// {F,G} = (freezing point)[dF, dG]
template <typename Scalar>
Scalar poisson_bracket(const BasicFunctionalGradient<Scalar>& grad_f,
                       const BasicFunctionalGradient<Scalar>& grad_g) {
  return pair(freezing_point<Scalar>(grad_f.u.grid()),
              bracket(grad_f, grad_g, BasicCocycleParams<Scalar>::virasoro()));
}

template <typename Scalar>
struct BasicConservedQuantities {
  Scalar mean = 0;  ///< int u dx
  Scalar l2 = 0;    ///< int u^2 dx
  std::optional<Scalar> hamiltonian;
  Scalar central = 0;
};
using ConservedQuantities = BasicConservedQuantities<double>;

/// The invariant reported under `hamiltonian` depends on the family:
///   burgers, kdv, generalized_kdv  int (u^3/2 - a alpha u_x^2/2 - a beta u^2/2)
///   mkdv                           int (u^4/2 - a u_x^2/2), the invariant of u_t = -6u^2u_x - a u_xxx
///   H1 and Hdot1 families          kinetic energy 1/2 (int u A^{-1}u dx + a^2)
template <typename Scalar>
BasicConservedQuantities<Scalar> conserved_quantities(const BasicMomentum<Scalar>& m,
                                                      const NamedEquation& eq) {
  BasicConservedQuantities<Scalar> q;
  const auto& u = m.m;
  q.mean = integrate(u);
  q.l2 = integrate(multiply(u, u));
  q.central = m.c;
  const auto ux = derivative(u, 1);
  const Scalar grad_sq = integrate(multiply(ux, ux));
  const CocycleParams p = cocycle_of(eq);
  const Scalar a = Scalar(central_of(eq));
  switch (eq.name) {
    case EquationName::Burgers:
    case EquationName::Kdv:
    case EquationName::GeneralizedKdv:
      q.hamiltonian = Scalar(0.5) * integrate(multiply(u, multiply(u, u))) -
                      a * Scalar(p.alpha) / 2 * grad_sq - a * Scalar(p.beta) / 2 * q.l2;
      break;
    case EquationName::Mkdv: {
      const auto u2 = multiply(u, u);
      q.hamiltonian = Scalar(0.5) * integrate(multiply(u2, u2)) - a / 2 * grad_sq;
      break;
    }
    default: {
      const auto velocity = inertia_invert(m, inertia_of(eq.name), NullspacePolicy::Project);
      q.hamiltonian = Scalar(0.5) * pair(m, velocity);
      break;
    }
  }
  return q;
}

}  // namespace vir
