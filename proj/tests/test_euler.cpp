#include "doctest.h"

#include <random>

#include "vir/euler.hpp"
#include "vir/random.hpp"

using namespace vir;

namespace {

const GridSpec grid(64);
Field f(double (*fn)(double)) { return Field::sample(grid, fn); }
Field sin1() { return f([](double x) { return std::sin(x); }); }

}  // namespace

TEST_CASE("equation names") {
  CHECK(kAllEquations.size() == 8);
  for (EquationName name : kAllEquations) CHECK(parse_equation_name(to_string(name)) == name);
  CHECK_FALSE(parse_equation_name("kdv2").has_value());
  CHECK(inertia_of(EquationName::CamassaHolm) == InertiaKind::H1);
  CHECK(inertia_of(EquationName::GeneralizedHsNew) == InertiaKind::HomogeneousH1);
  CHECK_FALSE(is_euler_equation(EquationName::Mkdv));
  CHECK_THROWS_AS(equation_spec({EquationName::Mkdv, 1}), std::invalid_argument);
  CHECK(central_of({EquationName::Burgers, 3}) == 0.0);
}

TEST_CASE("euler_rhs examples") {
  const EquationSpec kdv{InertiaKind::L2, CocycleParams::virasoro()};
  const auto zero = euler_rhs(Momentum{Field::zero(grid), 2}, kdv);
  CHECK(sup_norm(zero.m) == 0.0);
  const auto constant = euler_rhs(Momentum{Field::constant(grid, 1.3), 0}, EquationSpec{});
  CHECK(sup_norm(constant.m) == 0.0);
  const auto out = euler_rhs(Momentum{sin1(), 1}, kdv);
  CHECK(sup_distance(out.m, f([](double x) { return -1.5 * std::sin(2 * x) + std::cos(x); })) < 1e-10);
  CHECK(out.c == 0.0);
  CHECK_THROWS_AS(euler_rhs(Momentum{sin1(), 1}, EquationSpec{InertiaKind::L2, {}, NullspacePolicy::Strict, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("named right-hand sides on sin x") {
  const Field s = sin1();
  CHECK(sup_distance(rhs_burgers(s), f([](double x) { return -1.5 * std::sin(2 * x); })) < 1e-10);
  CHECK(sup_distance(rhs_kdv(s, 1.0), f([](double x) { return -1.5 * std::sin(2 * x) + std::cos(x); })) < 1e-10);
  CHECK(sup_distance(rhs_mkdv(s, 0.0),
                     f([](double x) { return -6 * std::sin(x) * std::sin(x) * std::cos(x); })) < 1e-10);
  CHECK(sup_distance(rhs_generalized_kdv(s, 1.0, 2.0, 3.0),
                     f([](double x) { return -1.5 * std::sin(2 * x) + 5 * std::cos(x); })) < 1e-10);
  CHECK(sup_distance(rhs_camassa_holm(s, 0.0), f([](double x) { return -3 * std::sin(2 * x); })) < 1e-10);
  CHECK(sup_distance(rhs_hunter_saxton(s, 0.0), f([](double x) { return -1.5 * std::sin(2 * x); })) < 1e-10);
  // 2v'v'' + vv''' + v''' - v' with v = sin x.
  CHECK(sup_distance(rhs_generalized_hs_new(s, 1.0, 1.0, 1.0),
                     f([](double x) { return -1.5 * std::sin(2 * x) - 2 * std::cos(x); })) < 1e-10);
}

TEST_CASE("special cases of the generalized equations") {
  std::mt19937_64 rng(12);
  const Field v = random_band_limited(grid, 10, rng);
  CHECK(sup_distance(rhs_generalized_kdv(v, 2.0, 1.5, 0.0), rhs_kdv(v, 3.0)) < 1e-11);
  CHECK(sup_distance(rhs_generalized_h1(v, 0.7, 1.0, 0.0), rhs_camassa_holm(v, 0.7)) < 1e-11);
  CHECK(sup_distance(rhs_generalized_hs_new(v, 0.7, 0.0, 0.0), rhs_hunter_saxton(v, 0.0)) < 1e-11);
}

TEST_CASE("every constant is a fixed point") {
  const Field c = Field::constant(grid, -2.5);
  for (EquationName name : kAllEquations) {
    CHECK(sup_norm(named_rhs(NamedEquation{name, 1.3, 0.4, -2.0}, c)) == 0.0);
  }
}

TEST_CASE("named right-hand sides agree with euler_rhs") {
  std::mt19937_64 rng(31);
  const GridSpec g(128);
  for (int trial = 0; trial < 20; ++trial) {
    const Field v = random_band_limited(g, random_band(g), rng);
    for (EquationName name : kAllEquations) {
      if (!is_euler_equation(name)) continue;
      const NamedEquation eq{name, 1.5, -0.5, 2.0};
      const Momentum m{momentum_from_displayed(name, v), central_of(eq)};
      const auto rhs = euler_rhs(m, equation_spec(eq, kernel_lift_for_mean(name, v.mean())));
      CHECK(sup_distance(rhs.m, named_rhs(eq, v)) <= 1e-10);
      CHECK(rhs.c == 0.0);
    }
  }
}

TEST_CASE("displayed and momentum variables") {
  std::mt19937_64 rng(9);
  const Field v = random_band_limited(grid, 12, rng);
  for (EquationName name : kAllEquations) {
    const Field u = momentum_from_displayed(name, v);
    const Field back = displayed_from_momentum(name, u, v.mean());
    CHECK(sup_distance(back, v) < 1e-12);
  }
  CHECK_THROWS_AS(displayed_from_momentum(EquationName::HunterSaxton, v), KernelObstruction);
  CHECK(kernel_lift_for_mean(EquationName::HunterSaxton, 0.25) == -0.25);
  CHECK(kernel_lift_for_mean(EquationName::Kdv, 0.25) == 0.0);
}

TEST_CASE("Hdot1 momentum with a mean is obstructed") {
  const EquationSpec hs = equation_spec({EquationName::HunterSaxton, 1});
  CHECK_THROWS_AS(euler_rhs(Momentum{sin1() + 0.5, 1}, hs), KernelObstruction);
  EquationSpec lenient = hs;
  lenient.nullspace_policy = NullspacePolicy::Project;
  CHECK_NOTHROW(euler_rhs(Momentum{sin1() + 0.5, 1}, lenient));
}

TEST_CASE("shift reductions") {
  const Field v0 = sin1() + 1.0;
  const auto kdv = shift_reduce({EquationName::GeneralizedKdv, 1, 1, 3}, v0);
  CHECK(kdv.canonical.name == EquationName::Kdv);
  CHECK(kdv.canonical.a == 1.0);
  CHECK(kdv.const_shift == 1.0);
  CHECK(sup_distance(kdv.w0, sin1()) < 1e-15);

  const auto hs = shift_reduce({EquationName::HunterSaxton, 2}, sin1());
  CHECK(hs.canonical.name == EquationName::HunterSaxton);
  CHECK(hs.canonical.a == 0.0);
  CHECK(hs.const_shift == -2.0);
  CHECK(sup_distance(hs.w0, sin1() + 2.0) < 1e-15);

  const auto gh = shift_reduce({EquationName::GeneralizedHsNew, 2, 0.5, 3}, sin1());
  CHECK(gh.canonical.name == EquationName::GeneralizedHsNew);
  CHECK(gh.canonical.alpha == 0.0);
  CHECK(gh.canonical.beta == 3.0);
  CHECK(gh.const_shift == -1.0);

  const auto h1 = shift_reduce({EquationName::GeneralizedH1, 3, 1, 2}, sin1());
  CHECK(h1.canonical.name == EquationName::CamassaHolm);
  CHECK(h1.canonical.a == doctest::Approx(3 * (1 - 2.0 / 3)));
  CHECK(h1.const_shift == doctest::Approx(2.0));

  CHECK_THROWS_AS(shift_reduce({EquationName::Kdv, 1}, v0), NotReducible);
  CHECK_THROWS_AS(shift_reduce({EquationName::CamassaHolm, 1}, v0), NotReducible);
}

TEST_CASE("shifted fields satisfy the canonical equation instantaneously") {
  // v = w + shift: the named RHS at v equals the canonical RHS at w.
  std::mt19937_64 rng(14);
  const Field v = random_band_limited(grid, 10, rng);
  for (const NamedEquation& eq : {NamedEquation{EquationName::GeneralizedKdv, 0.8, 1.2, -2.0},
                                  NamedEquation{EquationName::HunterSaxton, 1.7},
                                  NamedEquation{EquationName::GeneralizedHsNew, -0.6, 1.4, 0.9},
                                  NamedEquation{EquationName::GeneralizedH1, 1.1, 0.5, 2.5}}) {
    const auto red = shift_reduce(eq, v);
    CHECK(sup_distance(named_rhs(eq, v), named_rhs(red.canonical, red.w0)) < 1e-11);
  }
}
