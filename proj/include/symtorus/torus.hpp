#pragma once

// Flat torus T^{2n} = R^{2n}/Z^{2n} with coordinates (theta_1, ..., theta_{2n}),
// flat metric g0 = sum dtheta_i^2 and symplectic form
//   omega = sum_{i=1}^{n} dtheta_i ^ dtheta_{i+n}.
//
// Sign convention for the omega-duality (fixed once, used everywhere):
//   iota(Z) omega = alpha  <=>  Z_i = alpha_{i+n},  Z_{i+n} = -alpha_i   (i = 1..n)
// so sharp(dtheta_1) = -d/dtheta_2 for n = 1, and the harmonic form
// sum a_i dtheta_{i+n} - b_i dtheta_i is sent to the constant field (a, b).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "symtorus/error.hpp"

namespace symtorus {

/// Half-dimension n of T^{2n} together with the per-axis resolution N of the
/// uniform periodic grid.
struct Grid {
  int n = 1;
  int N = 64;

  int dim() const { return 2 * n; }

  std::size_t size() const {
    std::size_t s = 1;
    for (int a = 0; a < dim(); ++a) s *= static_cast<std::size_t>(N);
    return s;
  }

  double spacing() const { return 1.0 / N; }

  /// Row-major: the last axis varies fastest.
  std::size_t stride(int axis) const {
    std::size_t s = 1;
    for (int a = dim() - 1; a > axis; --a) s *= static_cast<std::size_t>(N);
    return s;
  }

  int index_along(std::size_t flat, int axis) const {
    return static_cast<int>((flat / stride(axis)) % static_cast<std::size_t>(N));
  }

  double coord(std::size_t flat, int axis) const {
    return static_cast<double>(index_along(flat, axis)) / N;
  }

  void point(std::size_t flat, std::span<double> out) const {
    for (int a = dim() - 1; a >= 0; --a) {
      out[a] = static_cast<double>(flat % static_cast<std::size_t>(N)) / N;
      flat /= static_cast<std::size_t>(N);
    }
  }

  void validate() const {
    require(n >= 1, ErrorCode::InvalidArgument, "half-dimension n must be >= 1");
    require(N >= 4, ErrorCode::InvalidArgument, "grid size N must be >= 4");
  }

  friend bool operator==(const Grid&, const Grid&) = default;
};

inline void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  require(a == b, ErrorCode::DimensionMismatch, std::string(where) + ": grids differ");
}

/// Reduce a real number to [0, 1).
inline double wrap01(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

/// Representative of x mod 1 in [-1/2, 1/2).
inline double min_image(double x) { return x - std::floor(x + 0.5); }

/// A point of T^{2n}; each stored coordinate lies in [0, 1).
struct TorusPoint {
  std::vector<double> coords;

  static TorusPoint from_lift(std::span<const double> lift) {
    TorusPoint p;
    p.coords.reserve(lift.size());
    for (double x : lift) p.coords.push_back(wrap01(x));
    return p;
  }
};

/// Flat (min-image Euclidean) distance between lifted representatives.
inline double toroidal_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = min_image(a[i] - b[i]);
    s += d * d;
  }
  return std::sqrt(s);
}

inline double toroidal_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) {
    double d = min_image(x);
    s += d * d;
  }
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// Harmonic 1-forms: constant coefficients in the basis dtheta_1..dtheta_{2n}.
// On the flat torus |dtheta_i|_0 = 1, so E = 1 and no basis renormalization
// is needed.

struct HarmonicForm {
  std::vector<double> lambda;

  HarmonicForm() = default;
  explicit HarmonicForm(std::vector<double> l) : lambda(std::move(l)) {}
  static HarmonicForm zero(int n) { return HarmonicForm(std::vector<double>(2 * n, 0.0)); }
  static HarmonicForm basis(int n, int i) {
    auto h = zero(n);
    h.lambda.at(i) = 1.0;
    return h;
  }

  int n() const { return static_cast<int>(lambda.size() / 2); }

  /// l1 norm |H| = sum |lambda^i|.
  double norm() const {
    double s = 0.0;
    for (double x : lambda) s += std::abs(x);
    return s;
  }

  /// Uniform sup norm |H|_0 = sup over unit tangent vectors = Euclidean norm
  /// of the coefficient vector for the flat metric.
  double sup_norm() const {
    double s = 0.0;
    for (double x : lambda) s += x * x;
    return std::sqrt(s);
  }

  double operator()(std::span<const double> v) const {
    double s = 0.0;
    for (std::size_t i = 0; i < lambda.size(); ++i) s += lambda[i] * v[i];
    return s;
  }

  HarmonicForm& operator+=(const HarmonicForm& o) {
    require(o.lambda.size() == lambda.size(), ErrorCode::DimensionMismatch, "harmonic form sizes differ");
    for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] += o.lambda[i];
    return *this;
  }
  HarmonicForm& operator-=(const HarmonicForm& o) {
    require(o.lambda.size() == lambda.size(), ErrorCode::DimensionMismatch, "harmonic form sizes differ");
    for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] -= o.lambda[i];
    return *this;
  }
  HarmonicForm& operator*=(double c) {
    for (double& x : lambda) x *= c;
    return *this;
  }
  friend HarmonicForm operator+(HarmonicForm a, const HarmonicForm& b) { return a += b; }
  friend HarmonicForm operator-(HarmonicForm a, const HarmonicForm& b) { return a -= b; }
  friend HarmonicForm operator*(double c, HarmonicForm a) { return a *= c; }
  friend HarmonicForm operator-(HarmonicForm a) { return a *= -1.0; }
};

// ---------------------------------------------------------------------------
// Grid-sampled fields.

struct ScalarField {
  Grid grid;
  std::vector<double> values;

  ScalarField() = default;
  explicit ScalarField(const Grid& g, double fill = 0.0) : grid(g), values(g.size(), fill) {}

  template <class F>
  static ScalarField sample(const Grid& g, F&& f) {
    ScalarField out(g);
    std::vector<double> x(g.dim());
    for (std::size_t i = 0; i < out.values.size(); ++i) {
      g.point(i, x);
      out.values[i] = f(std::span<const double>(x));
    }
    return out;
  }

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }

  double mean() const {
    return values.empty() ? 0.0 : std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  }
  double max() const { return *std::max_element(values.begin(), values.end()); }
  double min() const { return *std::min_element(values.begin(), values.end()); }
  double sup_norm() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }

  ScalarField& operator+=(const ScalarField& o) {
    require_same_grid(grid, o.grid, "ScalarField +=");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
  }
  ScalarField& operator-=(const ScalarField& o) {
    require_same_grid(grid, o.grid, "ScalarField -=");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
  }
  ScalarField& operator*=(double c) {
    for (double& v : values) v *= c;
    return *this;
  }
  ScalarField& operator+=(double c) {
    for (double& v : values) v += c;
    return *this;
  }
  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(double c, ScalarField a) { return a *= c; }
  friend ScalarField operator-(ScalarField a) { return a *= -1.0; }
};

namespace detail {

template <class Derived>
struct ComponentField {
  std::vector<ScalarField> components;

  ComponentField() = default;
  explicit ComponentField(const Grid& g) : components(g.dim(), ScalarField(g)) {}
  explicit ComponentField(std::vector<ScalarField> c) : components(std::move(c)) { check(); }

  const Grid& grid() const { return components.front().grid; }
  int dim() const { return static_cast<int>(components.size()); }
  ScalarField& operator[](int i) { return components[i]; }
  const ScalarField& operator[](int i) const { return components[i]; }

  void check() const {
    require(!components.empty(), ErrorCode::DimensionMismatch, "field has no components");
    const Grid& g = components.front().grid;
    require(static_cast<int>(components.size()) == g.dim(), ErrorCode::DimensionMismatch,
            "component count must equal 2n");
    for (const auto& c : components) require_same_grid(g, c.grid, "component field");
  }

  double sup_norm() const {
    double m = 0.0;
    for (const auto& c : components) m = std::max(m, c.sup_norm());
    return m;
  }

  /// Pointwise Euclidean sup norm.
  double pointwise_sup_norm() const {
    double m = 0.0;
    for (std::size_t p = 0; p < components.front().size(); ++p) {
      double s = 0.0;
      for (const auto& c : components) s += c[p] * c[p];
      m = std::max(m, s);
    }
    return std::sqrt(m);
  }

  Derived& operator+=(const Derived& o) {
    require(o.components.size() == components.size(), ErrorCode::DimensionMismatch, "component counts differ");
    for (std::size_t i = 0; i < components.size(); ++i) components[i] += o.components[i];
    return static_cast<Derived&>(*this);
  }
  Derived& operator-=(const Derived& o) {
    require(o.components.size() == components.size(), ErrorCode::DimensionMismatch, "component counts differ");
    for (std::size_t i = 0; i < components.size(); ++i) components[i] -= o.components[i];
    return static_cast<Derived&>(*this);
  }
  Derived& operator*=(double c) {
    for (auto& comp : components) comp *= c;
    return static_cast<Derived&>(*this);
  }
  friend Derived operator+(Derived a, const Derived& b) { return a += b; }
  friend Derived operator-(Derived a, const Derived& b) { return a -= b; }
  friend Derived operator*(double c, Derived a) { return a *= c; }
};

}  // namespace detail

/// Grid 1-form: components[i] is the coefficient of dtheta_i.
struct OneFormField : detail::ComponentField<OneFormField> {
  using ComponentField::ComponentField;

  static OneFormField constant(const Grid& g, const HarmonicForm& h) {
    require(static_cast<int>(h.lambda.size()) == g.dim(), ErrorCode::DimensionMismatch,
            "harmonic form dimension differs from grid");
    OneFormField out(g);
    for (int i = 0; i < g.dim(); ++i) out[i] = ScalarField(g, h.lambda[i]);
    return out;
  }
};

/// Grid vector field: components[i] is the coefficient of d/dtheta_i.
/// Also used for lifted displacement fields of torus maps.
struct VectorFieldGrid : detail::ComponentField<VectorFieldGrid> {
  using ComponentField::ComponentField;

  static VectorFieldGrid constant(const Grid& g, std::span<const double> v) {
    require(static_cast<int>(v.size()) == g.dim(), ErrorCode::DimensionMismatch,
            "vector dimension differs from grid");
    VectorFieldGrid out(g);
    for (int i = 0; i < g.dim(); ++i) out[i] = ScalarField(g, v[i]);
    return out;
  }
};

// ---------------------------------------------------------------------------
// omega-duality.

inline std::vector<double> sharp(const HarmonicForm& h) {
  const int n = h.n();
  std::vector<double> z(2 * n);
  for (int i = 0; i < n; ++i) {
    z[i] = h.lambda[i + n];
    z[i + n] = -h.lambda[i];
  }
  return z;
}

inline HarmonicForm flat(std::span<const double> z) {
  require(z.size() % 2 == 0 && !z.empty(), ErrorCode::DimensionMismatch, "vector must have even length");
  const int n = static_cast<int>(z.size() / 2);
  HarmonicForm h = HarmonicForm::zero(n);
  for (int i = 0; i < n; ++i) {
    h.lambda[i] = -z[i + n];
    h.lambda[i + n] = z[i];
  }
  return h;
}

inline VectorFieldGrid sharp(const OneFormField& alpha) {
  alpha.check();
  const int n = alpha.grid().n;
  VectorFieldGrid z(alpha.grid());
  for (int i = 0; i < n; ++i) {
    z[i] = alpha[i + n];
    z[i + n] = -alpha[i];
  }
  return z;
}

inline OneFormField flat(const VectorFieldGrid& z) {
  z.check();
  const int n = z.grid().n;
  OneFormField alpha(z.grid());
  for (int i = 0; i < n; ++i) {
    alpha[i] = -z[i + n];
    alpha[i + n] = z[i];
  }
  return alpha;
}

// ---------------------------------------------------------------------------
// Oscillation and normalization.

inline double osc(const ScalarField& f) { return f.values.empty() ? 0.0 : f.max() - f.min(); }

/// F - mean(F); the grid mean stands in for (1/n!) int F omega^n.
inline ScalarField normalize(ScalarField f) {
  f += -f.mean();
  return f;
}

// ---------------------------------------------------------------------------
// Constant-coefficient exterior algebra on R^{2n}, used for top-degree
// pairings of harmonic forms. Basis k-forms are bitmasks of axes.

class ConstForm {
 public:
  explicit ConstForm(int dim) : dim_(dim) {
    require(dim >= 1 && dim <= 30, ErrorCode::InvalidArgument, "exterior algebra supports dim <= 30");
  }

  static ConstForm scalar(int dim, double c) {
    ConstForm f(dim);
    f.terms_[0] = c;
    return f;
  }

  static ConstForm one_form(std::span<const double> coeffs) {
    ConstForm f(static_cast<int>(coeffs.size()));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0.0) f.terms_[1u << i] += coeffs[i];
    return f;
  }

  /// omega = sum_i dtheta_i ^ dtheta_{i+n}.
  static ConstForm symplectic(int n) {
    ConstForm f(2 * n);
    for (int i = 0; i < n; ++i) f.terms_[(1u << i) | (1u << (i + n))] += 1.0;
    return f;
  }

  int dim() const { return dim_; }

  ConstForm wedge(const ConstForm& o) const {
    require(o.dim_ == dim_, ErrorCode::DimensionMismatch, "wedge of forms on different spaces");
    ConstForm out(dim_);
    for (const auto& [ma, ca] : terms_) {
      for (const auto& [mb, cb] : o.terms_) {
        if (ma & mb) continue;
        out.terms_[ma | mb] += reorder_sign(ma, mb) * ca * cb;
      }
    }
    out.prune();
    return out;
  }

  ConstForm power(int k) const {
    ConstForm out = scalar(dim_, 1.0);
    for (int i = 0; i < k; ++i) out = out.wedge(*this);
    return out;
  }

  ConstForm& operator*=(double c) {
    for (auto& [m, v] : terms_) v *= c;
    return *this;
  }

  /// Coefficient of dtheta_1 ^ ... ^ dtheta_dim.
  double top_coefficient() const {
    const std::uint32_t full = dim_ == 32 ? ~0u : ((1u << dim_) - 1u);
    auto it = terms_.find(full);
    return it == terms_.end() ? 0.0 : it->second;
  }

  double coefficient(std::uint32_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? 0.0 : it->second;
  }

 private:
  // Sign of the permutation sorting (axes of a) followed by (axes of b).
  static double reorder_sign(std::uint32_t a, std::uint32_t b) {
    int inversions = 0;
    for (std::uint32_t bb = b; bb; bb &= bb - 1) {
      const int j = __builtin_ctz(bb);
      const std::uint32_t above = a & ~((2u << j) - 1u);
      inversions += __builtin_popcount(above);
    }
    return (inversions % 2) ? -1.0 : 1.0;
  }

  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second == 0.0) it = terms_.erase(it);
      else ++it;
    }
  }

  int dim_;
  std::map<std::uint32_t, double> terms_;
};

inline double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

/// Integral over T^{2n} of a constant top form, oriented by omega^n / n!
/// (the Liouville volume, total mass 1).
inline double integrate_top(const ConstForm& top, int n) {
  const double orientation = ConstForm::symplectic(n).power(n).top_coefficient() / factorial(n);
  return top.top_coefficient() / orientation;
}

/// Poincare pairing of the class [H] with [omega^{n-1}/(n-1)! ^ f^*sigma] for
/// f : T^{2n} -> S^1 in the homotopy class m (f = sum m_i theta_i mod 1).
///
/// The pairing is evaluated as  int f^*sigma ^ H ^ omega^{n-1}/(n-1)!  in the
/// orientation omega^n/n!; with this ordering the pairing agrees in sign with
/// the lifted-displacement mass flow of a positive translation.
inline double wedge_pair_top(const HarmonicForm& h, std::span<const int> m) {
  const int n = h.n();
  require(n >= 1 && static_cast<int>(m.size()) == 2 * n, ErrorCode::DimensionMismatch,
          "class vector must have length 2n");
  std::vector<double> mc(m.begin(), m.end());
  ConstForm omega_pow = ConstForm::symplectic(n).power(n - 1);
  omega_pow *= 1.0 / factorial(n - 1);
  ConstForm integrand = ConstForm::one_form(mc).wedge(ConstForm::one_form(h.lambda)).wedge(omega_pow);
  return integrate_top(integrand, n);
}

}  // namespace symtorus
