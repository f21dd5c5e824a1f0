#pragma once

// The centrally extended vector-field algebra X(S^1) x R with the two-parameter
// cocycle alpha * int u'w'' dx + beta * int u w' dx, and its regular dual.

#include <string>

#include "vir/spectral.hpp"

namespace vir {

template <typename Scalar>
struct BasicCocycleParams {
  Scalar alpha = 0;
  Scalar beta = 0;

  static BasicCocycleParams virasoro() { return {Scalar(1), Scalar(0)}; }
  static BasicCocycleParams trivial() { return {Scalar(0), Scalar(0)}; }
};
using CocycleParams = BasicCocycleParams<double>;

/// (u d/dx, a)
template <typename Scalar>
struct BasicAlgebraElement {
  BasicField<Scalar> u;
  Scalar a = 0;
};
using AlgebraElement = BasicAlgebraElement<double>;

/// (m dx (x) dx, c)
template <typename Scalar>
struct BasicMomentum {
  BasicField<Scalar> m;
  Scalar c = 0;
};
using Momentum = BasicMomentum<double>;

enum class InertiaKind { L2, H1, HomogeneousH1 };

inline std::string to_string(InertiaKind kind) {
  switch (kind) {
    case InertiaKind::L2: return "L2";
    case InertiaKind::H1: return "H1";
    case InertiaKind::HomogeneousH1: return "HomogeneousH1";
  }
  return "?";
}

template <typename Scalar>
MultiplierSymbol<Scalar> inertia_symbol(InertiaKind kind) {
  switch (kind) {
    case InertiaKind::L2: return MultiplierSymbol<Scalar>::identity();
    case InertiaKind::H1: return MultiplierSymbol<Scalar>::one_plus_k2();
    case InertiaKind::HomogeneousH1: return MultiplierSymbol<Scalar>::k2();
  }
  throw std::invalid_argument("unknown inertia kind");
}

/// [(u,a),(w,c)] = ((u'w - uw') d/dx, alpha int u'w'' + beta int u w').
/// The central inputs never enter.
template <typename Scalar>
BasicAlgebraElement<Scalar> bracket(const BasicAlgebraElement<Scalar>& x,
                                    const BasicAlgebraElement<Scalar>& y,
                                    const BasicCocycleParams<Scalar>& p) {
  require_same_grid(x.u.grid(), y.u.grid());
  const auto du = derivative(x.u, 1);
  const auto dw = derivative(y.u, 1);
  auto field = multiply(du, y.u) - multiply(x.u, dw);
  const Scalar central = p.alpha * integrate(multiply(du, derivative(y.u, 2))) +
                         p.beta * integrate(multiply(x.u, dw));
  return {std::move(field), central};
}

/// int m u dx + c a
template <typename Scalar>
Scalar pair(const BasicMomentum<Scalar>& mom, const BasicAlgebraElement<Scalar>& x) {
  require_same_grid(mom.m.grid(), x.u.grid());
  return integrate(multiply(mom.m, x.u)) + mom.c * x.a;
}

/// ad*_{(u,a)} (v,b) = ((-2u'v - uv' - alpha b u''' + beta b u') dx(x)dx, 0).
/// The output central coordinate is zero: the center acts trivially.
template <typename Scalar>
BasicMomentum<Scalar> coadjoint(const BasicAlgebraElement<Scalar>& actor,
                                const BasicMomentum<Scalar>& target,
                                const BasicCocycleParams<Scalar>& p) {
  require_same_grid(actor.u.grid(), target.m.grid());
  const auto& u = actor.u;
  const auto& v = target.m;
  const Scalar b = target.c;
  const auto du = derivative(u, 1);
  auto field = Scalar(-2) * multiply(du, v) - multiply(u, derivative(v, 1));
  if (p.alpha * b != Scalar(0)) field = field - (p.alpha * b) * derivative(u, 3);
  if (p.beta * b != Scalar(0)) field = field + (p.beta * b) * du;
  return {std::move(field), Scalar(0)};
}

template <typename Scalar>
BasicMomentum<Scalar> inertia_apply(const BasicAlgebraElement<Scalar>& x, InertiaKind kind) {
  return {apply_multiplier(x.u, inertia_symbol<Scalar>(kind)), x.a};
}

/// Inverse inertia. For HomogeneousH1 the result is the zero-mean lift, and a
/// momentum with non-vanishing mean raises KernelObstruction under Strict.
template <typename Scalar>
BasicAlgebraElement<Scalar> inertia_invert(const BasicMomentum<Scalar>& mom, InertiaKind kind,
                                           NullspacePolicy policy = NullspacePolicy::Strict,
                                           Scalar tol = Scalar(kKernelTolerance)) {
  return {invert_multiplier(mom.m, inertia_symbol<Scalar>(kind), policy, tol), mom.c};
}

}  // namespace vir
