#include "doctest.h"

#include <random>

#include "vir/algebra.hpp"
#include "vir/random.hpp"

using namespace vir;

namespace {

const GridSpec grid(64);
const double pi = std::numbers::pi;

Field f(double (*fn)(double)) { return Field::sample(grid, fn); }
Field sin1() { return f([](double x) { return std::sin(x); }); }
Field cos1() { return f([](double x) { return std::cos(x); }); }

}  // namespace

TEST_CASE("bracket examples") {
  const AlgebraElement s{sin1(), 0}, s5{sin1(), 5}, c{cos1(), 0};
  const auto self = bracket(s, s5, CocycleParams::virasoro());
  CHECK(sup_norm(self.u) < 1e-14);
  CHECK(std::abs(self.a) < 1e-14);

  const auto vir = bracket(s, c, CocycleParams::virasoro());
  CHECK(sup_distance(vir.u, Field::constant(grid, 1.0)) < 1e-14);
  CHECK(vir.a == doctest::Approx(-pi));

  const auto euler = bracket(s, c, CocycleParams{0, 1});
  CHECK(sup_distance(euler.u, Field::constant(grid, 1.0)) < 1e-14);
  CHECK(euler.a == doctest::Approx(-pi));
}

TEST_CASE("pairing examples") {
  CHECK(pair(Momentum{sin1(), 2}, AlgebraElement{sin1(), 3}) == doctest::Approx(pi + 6));
  CHECK(pair(Momentum{Field::zero(grid), 1}, AlgebraElement{cos1(), 0}) == 0.0);
  CHECK(std::abs(pair(Momentum{cos1(), 0}, AlgebraElement{sin1(), 0})) < 1e-14);
}

TEST_CASE("coadjoint examples") {
  const AlgebraElement s{sin1(), 4};
  const auto zero = coadjoint(s, Momentum{Field::zero(grid), 0}, CocycleParams{1, 2});
  CHECK(sup_norm(zero.m) == 0.0);
  CHECK(zero.c == 0.0);

  const auto burgers = coadjoint(AlgebraElement{sin1(), 0}, Momentum{sin1(), 0}, CocycleParams::trivial());
  CHECK(sup_distance(burgers.m, f([](double x) { return -1.5 * std::sin(2 * x); })) < 1e-14);

  const auto central = coadjoint(AlgebraElement{sin1(), 0}, Momentum{Field::zero(grid), 1}, CocycleParams{1, 2});
  CHECK(sup_distance(central.m, 3.0 * cos1()) < 1e-10);
  CHECK(central.c == 0.0);
}

TEST_CASE("inertia examples") {
  const auto h1 = inertia_apply(AlgebraElement{sin1(), 7}, InertiaKind::H1);
  CHECK(sup_distance(h1.m, 2.0 * sin1()) < 1e-12);
  CHECK(h1.c == 7.0);
  const Field c2 = f([](double x) { return std::cos(2 * x); });
  CHECK(sup_distance(inertia_apply(AlgebraElement{c2, 0}, InertiaKind::HomogeneousH1).m, 4.0 * c2) < 1e-12);
  const Field r = f([](double x) { return std::exp(std::sin(x)); });
  CHECK(sup_distance(inertia_apply(AlgebraElement{r, 2}, InertiaKind::L2).m, r) < 1e-15);

  const auto back = inertia_invert(Momentum{2.0 * sin1(), 3}, InertiaKind::H1);
  CHECK(sup_distance(back.u, sin1()) < 1e-14);
  CHECK(back.a == 3.0);
  CHECK(sup_distance(inertia_invert(Momentum{cos1(), 0}, InertiaKind::HomogeneousH1).u, cos1()) < 1e-14);
  CHECK_THROWS_AS(inertia_invert(Momentum{cos1() + 1.0, 0}, InertiaKind::HomogeneousH1), KernelObstruction);
}

TEST_CASE("duality of ad* with the bracket") {
  std::mt19937_64 rng(21);
  const GridSpec g(128);
  const int band = random_band(g);
  for (int trial = 0; trial < 25; ++trial) {
    const AlgebraElement x{random_band_limited(g, band, rng), 1.5};
    const AlgebraElement y{random_band_limited(g, band, rng), -0.5};
    const Momentum m{random_band_limited(g, band, rng), 2.5};
    for (const CocycleParams& p : {CocycleParams{0, 0}, CocycleParams{1, 0}, CocycleParams{0, 1}, CocycleParams{1, 2}}) {
      CHECK(std::abs(pair(coadjoint(x, m, p), y) + pair(m, bracket(x, y, p))) <= 1e-9);
    }
  }
}

TEST_CASE("bracket is antisymmetric and satisfies Jacobi on a narrow band") {
  std::mt19937_64 rng(8);
  const GridSpec g(128);
  const CocycleParams p{0.7, -1.3};
  for (int trial = 0; trial < 10; ++trial) {
    // Narrow band keeps the nested brackets below the dealiasing cutoff.
    const AlgebraElement x{random_band_limited(g, 10, rng), 0};
    const AlgebraElement y{random_band_limited(g, 10, rng), 0};
    const AlgebraElement z{random_band_limited(g, 10, rng), 0};
    const auto xy = bracket(x, y, p), yx = bracket(y, x, p);
    CHECK(sup_distance(xy.u, -yx.u) < 1e-12);
    CHECK(std::abs(xy.a + yx.a) < 1e-10);
    const auto j = bracket(bracket(x, y, p), z, p);
    const auto k = bracket(bracket(y, z, p), x, p);
    const auto l = bracket(bracket(z, x, p), y, p);
    CHECK(sup_norm(j.u + k.u + l.u) < 1e-10);
    CHECK(std::abs(j.a + k.a + l.a) < 1e-9);
  }
}

TEST_CASE("symmetry and rotation invariance of the inertia operators") {
  std::mt19937_64 rng(2);
  const GridSpec g(128);
  for (int trial = 0; trial < 20; ++trial) {
    const AlgebraElement x{random_band_limited(g, random_band(g), rng), 0.3};
    const AlgebraElement y{random_band_limited(g, random_band(g), rng), -1.1};
    for (InertiaKind kind : {InertiaKind::L2, InertiaKind::H1, InertiaKind::HomogeneousH1}) {
      CHECK(std::abs(pair(inertia_apply(x, kind), y) - pair(inertia_apply(y, kind), x)) <= 1e-10);
    }
    const double theta = 0.37 * trial;
    const AlgebraElement xt{translate(x.u, theta), x.a}, yt{translate(y.u, theta), y.a};
    CHECK(std::abs(pair(inertia_apply(xt, InertiaKind::HomogeneousH1), yt) -
                   pair(inertia_apply(x, InertiaKind::HomogeneousH1), y)) <= 1e-10);
  }
}

TEST_CASE("central coordinates do not enter bracket or coadjoint") {
  std::mt19937_64 rng(4);
  const Field u = random_band_limited(grid, 8, rng), w = random_band_limited(grid, 8, rng);
  const Momentum m{random_band_limited(grid, 8, rng), 1.0};
  const CocycleParams p{1, 2};
  CHECK(sup_distance(coadjoint(AlgebraElement{u, 0}, m, p).m, coadjoint(AlgebraElement{u, 9}, m, p).m) == 0.0);
  const auto b1 = bracket(AlgebraElement{u, 0}, AlgebraElement{w, 0}, p);
  const auto b2 = bracket(AlgebraElement{u, -3}, AlgebraElement{w, 8}, p);
  CHECK(sup_distance(b1.u, b2.u) == 0.0);
  CHECK(b1.a == b2.a);
}

TEST_CASE("ad* of a constant field pairs dually with the bracket") {
  // The field part -c m' of ad*_{(c,a)} A(x) does not vanish by itself; only
  // the pairing identity with the bracket holds.
  std::mt19937_64 rng(6);
  const AlgebraElement V{Field::constant(grid, 1.7), 0.4};
  const AlgebraElement x{random_band_limited(grid, 8, rng, false), 0};
  const AlgebraElement y{random_band_limited(grid, 8, rng), 0};
  const Momentum ax = inertia_apply(x, InertiaKind::HomogeneousH1);
  const auto ad = coadjoint(V, ax, CocycleParams::virasoro());
  CHECK(sup_distance(ad.m, -1.7 * derivative(ax.m, 1)) < 1e-12);
  CHECK(std::abs(pair(ad, y) + pair(ax, bracket(V, y, CocycleParams::virasoro()))) < 1e-10);
}

TEST_CASE("long double algebra") {
  using LF = BasicField<long double>;
  const GridSpec g(64);
  std::mt19937_64 rng(1);
  const BasicAlgebraElement<long double> x{random_band_limited<long double>(g, 10, rng), 1};
  const BasicAlgebraElement<long double> y{random_band_limited<long double>(g, 10, rng), 2};
  const BasicMomentum<long double> m{random_band_limited<long double>(g, 10, rng), 3};
  const BasicCocycleParams<long double> p{1, 2};
  const long double defect = pair(coadjoint(x, m, p), y) + pair(m, bracket(x, y, p));
  CHECK(std::abs(static_cast<double>(defect)) < 1e-14);
  (void)LF::zero(g);
}

TEST_CASE("grid mismatch is reported") {
  const AlgebraElement a{Field::zero(GridSpec(16)), 0};
  const AlgebraElement b{Field::zero(GridSpec(32)), 0};
  CHECK_THROWS_AS(bracket(a, b, CocycleParams::virasoro()), GridMismatch);
  CHECK_THROWS_AS(pair(Momentum{b.u, 0}, a), GridMismatch);
}
