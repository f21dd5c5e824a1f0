#pragma once

// Periodic fields on S^1 = R / 2piZ, held simultaneously as uniform grid samples
// and as Fourier coefficients f(x) = sum_k c_k exp(ikx), k in [-n/2, n/2).

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vir/errors.hpp"

namespace vir {

template <typename Scalar>
inline constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;

/// Uniform grid x_j = 2 pi j / n on [0, 2pi).
class GridSpec {
 public:
  static constexpr int kMinPoints = 8;

  explicit GridSpec(int n) : n_(n) {
    if (n < kMinPoints || n % 2 != 0) {
      throw std::invalid_argument("GridSpec: n must be even and >= 8, got " + std::to_string(n));
    }
  }

  int size() const { return n_; }

  template <typename Scalar = double>
  Scalar spacing() const {
    return two_pi<Scalar> / Scalar(n_);
  }

  template <typename Scalar = double>
  Scalar node(int j) const {
    return two_pi<Scalar> * Scalar(j) / Scalar(n_);
  }

  /// Wavenumber stored at FFT index i; index n/2 is the Nyquist mode k = -n/2.
  int wavenumber(int index) const { return index < n_ / 2 ? index : index - n_; }
  int index_of(int k) const { return k >= 0 ? k : k + n_; }
  int nyquist_index() const { return n_ / 2; }

  /// Largest |k| kept by the 2/3 rule: quadratic products of fields limited to
  /// |k| <= K are alias-free on the retained band iff 3K < n.
  int dealias_cutoff() const { return (n_ - 1) / 3; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int n_;
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw GridMismatch(a.size(), b.size());
}

namespace detail {

template <typename Scalar>
Eigen::FFT<Scalar>& fft_engine() {
  thread_local Eigen::FFT<Scalar> engine;
  return engine;
}

}  // namespace detail

/// A real 2pi-periodic function. Immutable value: both representations are
/// filled at construction, so a Field can be shared across threads freely.
template <typename Scalar>
class BasicField {
 public:
  using Real = Scalar;
  using Complex = std::complex<Scalar>;
  using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  static BasicField from_values(const GridSpec& grid, RealVector values) {
    if (values.size() != grid.size()) {
      throw std::invalid_argument("Field: value count does not match grid");
    }
    ComplexVector coeffs;
    detail::fft_engine<Scalar>().fwd(coeffs, values);
    coeffs /= Scalar(grid.size());
    return BasicField(grid, std::move(values), std::move(coeffs));
  }

  /// Builds the real field closest to the given coefficients: any component
  /// violating conjugate symmetry is projected away.
  static BasicField from_coefficients(const GridSpec& grid, const ComplexVector& coeffs) {
    return from_values(grid, synthesize(grid, coeffs));
  }

  template <typename Fn>
  static BasicField sample(const GridSpec& grid, Fn&& fn) {
    RealVector values(grid.size());
    for (int j = 0; j < grid.size(); ++j) values[j] = fn(grid.node<Scalar>(j));
    return from_values(grid, std::move(values));
  }

  static BasicField constant(const GridSpec& grid, Scalar c) {
    ComplexVector coeffs = ComplexVector::Zero(grid.size());
    coeffs[0] = c;
    return BasicField(grid, RealVector::Constant(grid.size(), c), std::move(coeffs));
  }

  static BasicField zero(const GridSpec& grid) { return constant(grid, Scalar(0)); }

  /// Trusted constructor for coefficient arrays that are already conjugate
  /// symmetric (results of diagonal real-symbol operations).
  static BasicField from_symmetric_coefficients(const GridSpec& grid, ComplexVector coeffs) {
    RealVector values = synthesize(grid, coeffs);
    return BasicField(grid, std::move(values), std::move(coeffs));
  }

  const GridSpec& grid() const { return grid_; }
  int size() const { return grid_.size(); }
  const RealVector& values() const { return values_; }
  const ComplexVector& coefficients() const { return coeffs_; }
  Scalar value(int j) const { return values_[j]; }
  Complex coefficient(int k) const { return coeffs_[grid_.index_of(k)]; }
  Scalar mean() const { return coeffs_[0].real(); }

  BasicField operator-() const { return BasicField(grid_, -values_, -coeffs_); }

  friend BasicField operator+(const BasicField& f, const BasicField& g) {
    require_same_grid(f.grid_, g.grid_);
    return BasicField(f.grid_, f.values_ + g.values_, f.coeffs_ + g.coeffs_);
  }
  friend BasicField operator-(const BasicField& f, const BasicField& g) {
    require_same_grid(f.grid_, g.grid_);
    return BasicField(f.grid_, f.values_ - g.values_, f.coeffs_ - g.coeffs_);
  }
  friend BasicField operator*(Scalar s, const BasicField& f) {
    return BasicField(f.grid_, s * f.values_, s * f.coeffs_);
  }
  friend BasicField operator*(const BasicField& f, Scalar s) { return s * f; }

  /// Adds a constant (shifts the zero mode only).
  friend BasicField operator+(const BasicField& f, Scalar c) {
    ComplexVector coeffs = f.coeffs_;
    coeffs[0] += c;
    return BasicField(f.grid_, f.values_.array() + c, std::move(coeffs));
  }
  friend BasicField operator-(const BasicField& f, Scalar c) { return f + (-c); }

 private:
  BasicField(const GridSpec& grid, RealVector values, ComplexVector coeffs)
      : grid_(grid), values_(std::move(values)), coeffs_(std::move(coeffs)) {}

  static RealVector synthesize(const GridSpec& grid, const ComplexVector& coeffs) {
    if (coeffs.size() != grid.size()) {
      throw std::invalid_argument("Field: coefficient count does not match grid");
    }
    ComplexVector scaled = coeffs * Scalar(grid.size());
    ComplexVector samples;
    detail::fft_engine<Scalar>().inv(samples, scaled);
    return samples.real();
  }

  GridSpec grid_;
  RealVector values_;
  ComplexVector coeffs_;
};

using Field = BasicField<double>;

/// Real Fourier multiplier k -> symbol(k). Differentiation (ik) is handled by
/// derivative() instead since its symbol is imaginary.
template <typename Scalar>
class MultiplierSymbol {
 public:
  using Fn = std::function<Scalar(int)>;

  MultiplierSymbol(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

  static MultiplierSymbol identity() {
    return {"1", [](int) { return Scalar(1); }};
  }
  static MultiplierSymbol one_plus_k2() {
    return {"1+k^2", [](int k) { return Scalar(1) + Scalar(k) * Scalar(k); }};
  }
  static MultiplierSymbol k2() {
    return {"k^2", [](int k) { return Scalar(k) * Scalar(k); }};
  }

  Scalar operator()(int k) const { return fn_(k); }
  bool is_kernel(int k) const { return fn_(k) == Scalar(0); }
  const std::string& name() const { return name_; }

  std::vector<int> kernel_modes(const GridSpec& grid) const {
    std::vector<int> modes;
    for (int i = 0; i < grid.size(); ++i) {
      if (is_kernel(grid.wavenumber(i))) modes.push_back(grid.wavenumber(i));
    }
    return modes;
  }

 private:
  std::string name_;
  Fn fn_;
};

enum class NullspacePolicy { Strict, Project };

inline constexpr double kKernelTolerance = 1e-10;

/// Spectral derivative: c_k -> (ik)^order c_k, Nyquist dropped for odd orders.
template <typename Scalar>
BasicField<Scalar> derivative(const BasicField<Scalar>& f, int order = 1) {
  if (order < 1) throw std::invalid_argument("derivative: order must be positive");
  using Complex = std::complex<Scalar>;
  const GridSpec& grid = f.grid();
  typename BasicField<Scalar>::ComplexVector coeffs = f.coefficients();
  for (int i = 0; i < grid.size(); ++i) {
    const Complex ik(0, Scalar(grid.wavenumber(i)));
    Complex factor(1, 0);
    for (int p = 0; p < order; ++p) factor *= ik;
    coeffs[i] *= factor;
  }
  if (order % 2 == 1) coeffs[grid.nyquist_index()] = 0;
  return BasicField<Scalar>::from_symmetric_coefficients(grid, std::move(coeffs));
}

template <typename Scalar>
BasicField<Scalar> apply_multiplier(const BasicField<Scalar>& f, const MultiplierSymbol<Scalar>& s) {
  const GridSpec& grid = f.grid();
  typename BasicField<Scalar>::ComplexVector coeffs = f.coefficients();
  for (int i = 0; i < grid.size(); ++i) coeffs[i] *= s(grid.wavenumber(i));
  return BasicField<Scalar>::from_symmetric_coefficients(grid, std::move(coeffs));
}

/// Modewise division by the symbol. Kernel modes of the result are zero, which
/// picks the zero-mean representative for k^2. Under Strict, kernel content
/// above tol in the input raises KernelObstruction. The Nyquist mode is dropped.
template <typename Scalar>
BasicField<Scalar> invert_multiplier(const BasicField<Scalar>& f, const MultiplierSymbol<Scalar>& s,
                                     NullspacePolicy policy = NullspacePolicy::Strict,
                                     Scalar tol = Scalar(kKernelTolerance)) {
  const GridSpec& grid = f.grid();
  typename BasicField<Scalar>::ComplexVector coeffs = f.coefficients();
  for (int i = 0; i < grid.size(); ++i) {
    const int k = grid.wavenumber(i);
    const Scalar sym = s(k);
    if (sym == Scalar(0)) {
      if (policy == NullspacePolicy::Strict && std::abs(coeffs[i]) > tol) {
        throw KernelObstruction(k, static_cast<double>(std::abs(coeffs[i])));
      }
      coeffs[i] = 0;
    } else {
      coeffs[i] /= sym;
    }
  }
  coeffs[grid.nyquist_index()] = 0;
  return BasicField<Scalar>::from_symmetric_coefficients(grid, std::move(coeffs));
}

/// Exact integral over [0, 2pi] of the trigonometric interpolant.
template <typename Scalar>
Scalar integrate(const BasicField<Scalar>& f) {
  return two_pi<Scalar> * f.coefficients()[0].real();
}

/// Zeroes every mode with |k| > kmax.
template <typename Scalar>
BasicField<Scalar> band_limit(const BasicField<Scalar>& f, int kmax) {
  const GridSpec& grid = f.grid();
  typename BasicField<Scalar>::ComplexVector coeffs = f.coefficients();
  for (int i = 0; i < grid.size(); ++i) {
    if (std::abs(grid.wavenumber(i)) > kmax) coeffs[i] = 0;
  }
  return BasicField<Scalar>::from_symmetric_coefficients(grid, std::move(coeffs));
}

/// Pointwise product followed by 2/3-rule truncation.
template <typename Scalar>
BasicField<Scalar> multiply(const BasicField<Scalar>& f, const BasicField<Scalar>& g) {
  require_same_grid(f.grid(), g.grid());
  auto raw = BasicField<Scalar>::from_values(f.grid(), f.values().cwiseProduct(g.values()));
  return band_limit(raw, f.grid().dealias_cutoff());
}

/// Pointwise product on the grid without truncation.
template <typename Scalar>
BasicField<Scalar> multiply_pointwise(const BasicField<Scalar>& f, const BasicField<Scalar>& g) {
  require_same_grid(f.grid(), g.grid());
  return BasicField<Scalar>::from_values(f.grid(), f.values().cwiseProduct(g.values()));
}

/// x -> f(x - shift). Nyquist dropped (its translate is not real).
template <typename Scalar>
BasicField<Scalar> translate(const BasicField<Scalar>& f, Scalar shift) {
  using Complex = std::complex<Scalar>;
  const GridSpec& grid = f.grid();
  typename BasicField<Scalar>::ComplexVector coeffs = f.coefficients();
  for (int i = 0; i < grid.size(); ++i) {
    coeffs[i] *= std::polar(Scalar(1), -Scalar(grid.wavenumber(i)) * shift);
  }
  coeffs[grid.nyquist_index()] = Complex(0);
  return BasicField<Scalar>::from_symmetric_coefficients(grid, std::move(coeffs));
}

/// Trigonometric interpolant at an arbitrary real x (any branch of the circle).
/// The Nyquist term uses cos(nx/2) so grid nodes are reproduced exactly.
template <typename Scalar>
Scalar evaluate(const BasicField<Scalar>& f, Scalar x) {
  using Complex = std::complex<Scalar>;
  const GridSpec& grid = f.grid();
  const auto& c = f.coefficients();
  const int half = grid.size() / 2;
  const Complex step = std::polar(Scalar(1), x);
  Complex phase = step;
  Scalar sum = c[0].real();
  for (int k = 1; k < half; ++k) {
    sum += Scalar(2) * (c[k] * phase).real();
    phase *= step;
  }
  sum += c[grid.nyquist_index()].real() * std::cos(Scalar(half) * x);
  return sum;
}

template <typename Scalar>
typename BasicField<Scalar>::RealVector evaluate(const BasicField<Scalar>& f,
                                                 const typename BasicField<Scalar>::RealVector& xs) {
  typename BasicField<Scalar>::RealVector out(xs.size());
  for (Eigen::Index i = 0; i < xs.size(); ++i) out[i] = evaluate(f, xs[i]);
  return out;
}

template <typename Scalar>
Scalar sup_norm(const BasicField<Scalar>& f) {
  return f.values().cwiseAbs().maxCoeff();
}

template <typename Scalar>
Scalar sup_distance(const BasicField<Scalar>& f, const BasicField<Scalar>& g) {
  require_same_grid(f.grid(), g.grid());
  return (f.values() - g.values()).cwiseAbs().maxCoeff();
}

/// Fraction of spectral energy carried by modes with |k| > kmin.
template <typename Scalar>
Scalar tail_fraction(const BasicField<Scalar>& f, int kmin) {
  const GridSpec& grid = f.grid();
  Scalar tail = 0, total = 0;
  for (int i = 0; i < grid.size(); ++i) {
    const Scalar e = std::norm(f.coefficients()[i]);
    total += e;
    if (std::abs(grid.wavenumber(i)) > kmin) tail += e;
  }
  return total > Scalar(0) ? tail / total : Scalar(0);
}

}  // namespace vir
