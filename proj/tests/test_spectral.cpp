#include "doctest.h"

#include <random>

#include "vir/random.hpp"
#include "vir/spectral.hpp"

using namespace vir;

namespace {

Field sampled(int n, double (*fn)(double)) { return Field::sample(GridSpec(n), fn); }

double sup_error(const Field& f, double (*fn)(double)) {
  return sup_distance(f, Field::sample(f.grid(), fn));
}

}  // namespace

TEST_CASE("grid rejects odd or tiny sizes") {
  CHECK_THROWS_AS(GridSpec(7), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(6), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(33), std::invalid_argument);
  CHECK_NOTHROW(GridSpec(8));
  const GridSpec g(16);
  CHECK(g.wavenumber(8) == -8);
  CHECK(g.wavenumber(9) == -7);
  CHECK(g.index_of(-1) == 15);
  CHECK(g.dealias_cutoff() == 5);
}

TEST_CASE("values and coefficients round trip") {
  std::mt19937_64 rng(3);
  const GridSpec g(64);
  Field::RealVector v = Field::RealVector::Random(64);
  const Field f = Field::from_values(g, v);
  const Field back = Field::from_coefficients(g, f.coefficients());
  CHECK((back.values() - v).cwiseAbs().maxCoeff() < 1e-13);
  for (int k = 1; k < 32; ++k) {
    CHECK(std::abs(f.coefficient(-k) - std::conj(f.coefficient(k))) < 1e-15);
  }
}

TEST_CASE("from_coefficients projects onto real fields") {
  const GridSpec g(16);
  Field::ComplexVector c = Field::ComplexVector::Zero(16);
  c[g.index_of(2)] = {0, -0.5};  // half of sin(2x) only
  const Field f = Field::from_coefficients(g, c);
  CHECK(sup_error(f, [](double x) { return 0.5 * std::sin(2 * x); }) < 1e-14);
}

TEST_CASE("derivative of trigonometric polynomials") {
  for (int n : {8, 16, 64}) {
    const Field f = sampled(n, [](double x) { return std::sin(3 * x); });
    CHECK(sup_error(derivative(f, 1), [](double x) { return 3 * std::cos(3 * x); }) < 1e-12);
  }
  const Field c = Field::constant(GridSpec(32), 4.0);
  for (int order = 1; order <= 4; ++order) CHECK(sup_norm(derivative(c, order)) == 0.0);
  CHECK_THROWS_AS(derivative(c, 0), std::invalid_argument);
}

TEST_CASE("second derivative of exp(cos x) against finite differences") {
  const Field f = sampled(64, [](double x) { return std::exp(std::cos(x)); });
  const Field d2 = derivative(f, 2);
  const double h = 1e-4;
  double worst = 0;
  for (int j = 0; j < 64; ++j) {
    const double x = f.grid().node(j);
    const double fd =
        (std::exp(std::cos(x + h)) - 2 * std::exp(std::cos(x)) + std::exp(std::cos(x - h))) / (h * h);
    worst = std::max(worst, std::abs(fd - d2.value(j)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("odd derivatives drop the Nyquist mode") {
  const GridSpec g(16);
  const Field f = Field::sample(g, [](double x) { return std::cos(8 * x); });
  CHECK(sup_norm(derivative(f, 1)) == 0.0);
  CHECK(sup_distance(derivative(f, 2), -64.0 * f) < 1e-10);
}

TEST_CASE("multipliers apply modewise") {
  const GridSpec g(32);
  const auto one_k2 = MultiplierSymbol<double>::one_plus_k2();
  const auto k2 = MultiplierSymbol<double>::k2();
  CHECK(sup_error(apply_multiplier(sampled(32, [](double x) { return std::cos(2 * x); }), one_k2),
                  [](double x) { return 5 * std::cos(2 * x); }) < 1e-12);
  CHECK(sup_norm(apply_multiplier(Field::constant(g, 1.0), k2)) < 1e-15);
  CHECK(sup_error(apply_multiplier(sampled(32, [](double x) { return std::sin(x) + std::cos(3 * x); }), k2),
                  [](double x) { return std::sin(x) + 9 * std::cos(3 * x); }) < 1e-12);
  CHECK(k2.kernel_modes(g) == std::vector<int>{0});
  CHECK(one_k2.kernel_modes(g).empty());
}

TEST_CASE("multiplier inversion and kernel handling") {
  const GridSpec g(32);
  const auto k2 = MultiplierSymbol<double>::k2();
  CHECK(sup_error(invert_multiplier(sampled(32, [](double x) { return 4 * std::cos(2 * x); }), k2),
                  [](double x) { return std::cos(2 * x); }) < 1e-13);
  CHECK(sup_error(invert_multiplier(sampled(32, [](double x) { return 2 * std::sin(x) - std::sin(2 * x); }),
                                    MultiplierSymbol<double>::one_plus_k2()),
                  [](double x) { return std::sin(x) - std::sin(2 * x) / 5; }) < 1e-13);

  const Field one = Field::constant(g, 1.0);
  try {
    (void)invert_multiplier(one, k2);
    FAIL("expected KernelObstruction");
  } catch (const KernelObstruction& e) {
    CHECK(e.mode() == 0);
    CHECK(e.magnitude() == doctest::Approx(1.0));
  }
  CHECK(sup_norm(invert_multiplier(one, k2, NullspacePolicy::Project)) == 0.0);
  // Below tolerance counts as zero mean.
  CHECK_NOTHROW(invert_multiplier(one * 1e-12, k2));
}

TEST_CASE("apply then invert is the identity off the kernel") {
  std::mt19937_64 rng(11);
  const GridSpec g(64);
  for (const auto& s : {MultiplierSymbol<double>::one_plus_k2(), MultiplierSymbol<double>::k2(),
                        MultiplierSymbol<double>::identity()}) {
    const Field f = random_band_limited(g, 20, rng, false);
    CHECK(sup_distance(invert_multiplier(apply_multiplier(f, s), s), f) < 1e-10);
  }
}

TEST_CASE("integration") {
  CHECK(std::abs(integrate(sampled(32, [](double x) { return std::sin(5 * x); }))) < 1e-14);
  CHECK(integrate(Field::constant(GridSpec(16), 3.0)) == doctest::Approx(6 * std::numbers::pi));
  CHECK(integrate(sampled(16, [](double x) { return std::sin(x) * std::sin(x); })) ==
        doctest::Approx(std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("dealiased products") {
  const Field s = sampled(32, [](double x) { return std::sin(x); });
  CHECK(sup_norm(multiply(s, Field::zero(s.grid()))) == 0.0);
  CHECK(sup_error(multiply(s, s), [](double x) { return (1 - std::cos(2 * x)) / 2; }) < 1e-14);
  const Field prod = multiply(sampled(32, [](double x) { return std::cos(3 * x); }),
                              sampled(32, [](double x) { return std::cos(4 * x); }));
  CHECK(sup_error(prod, [](double x) { return 0.5 * (std::cos(x) + std::cos(7 * x)); }) <= 1e-12);
  // cos 6x * cos 6x = (1 + cos 12x)/2; 12 exceeds the cutoff (10) on n = 32 and is removed.
  const Field high = sampled(32, [](double x) { return std::cos(6 * x); });
  CHECK(sup_error(multiply(high, high), [](double) { return 0.5; }) < 1e-14);
  CHECK_THROWS_AS(multiply(s, Field::zero(GridSpec(16))), GridMismatch);
}

TEST_CASE("calculus identities on random band-limited fields") {
  std::mt19937_64 rng(5);
  const GridSpec g(128);
  for (int trial = 0; trial < 20; ++trial) {
    const Field f = random_band_limited(g, random_band(g), rng);
    const Field h = random_band_limited(g, random_band(g), rng);
    CHECK(sup_distance(derivative(derivative(f, 1), 1), derivative(f, 2)) < 1e-10);
    CHECK(std::abs(integrate(derivative(f, 1))) <= 1e-12);
    CHECK(std::abs(integrate(multiply(f, derivative(h, 1))) + integrate(multiply(derivative(f, 1), h))) <
          1e-10);
  }
}

TEST_CASE("translation and off-grid evaluation") {
  const Field s = sampled(32, [](double x) { return std::sin(x) + 0.25 * std::cos(5 * x); });
  const Field t = translate(s, 0.7);
  CHECK(sup_error(t, [](double x) { return std::sin(x - 0.7) + 0.25 * std::cos(5 * (x - 0.7)); }) < 1e-13);
  for (double x : {0.1, 2.0, -3.3, 9.5}) {
    CHECK(evaluate(s, x) == doctest::Approx(std::sin(x) + 0.25 * std::cos(5 * x)).epsilon(1e-13));
  }
  // The interpolant reproduces grid values, Nyquist content included.
  Field::RealVector v = Field::RealVector::Random(16);
  const Field r = Field::from_values(GridSpec(16), v);
  for (int j = 0; j < 16; ++j) CHECK(evaluate(r, r.grid().node(j)) == doctest::Approx(v[j]).epsilon(1e-12));
}

TEST_CASE("tail fraction") {
  const Field low = sampled(64, [](double x) { return std::sin(2 * x); });
  CHECK(tail_fraction(low, 2) < 1e-28);
  const Field mixed = sampled(64, [](double x) { return std::sin(x) + std::sin(10 * x); });
  CHECK(tail_fraction(mixed, 5) == doctest::Approx(0.5));
  CHECK(tail_fraction(Field::zero(GridSpec(8)), 1) == 0.0);
}

TEST_CASE("long double fields") {
  using LF = BasicField<long double>;
  const GridSpec g(32);
  const LF f = LF::sample(g, [](long double x) { return std::sin(3 * x) + std::cos(x); });
  const LF d = derivative(f, 1);
  const LF expect = LF::sample(g, [](long double x) { return 3 * std::cos(3 * x) - std::sin(x); });
  CHECK(static_cast<double>(sup_distance(d, expect)) < 1e-15);
  CHECK(static_cast<double>(integrate(multiply(f, f))) == doctest::Approx(2 * std::numbers::pi));
}
