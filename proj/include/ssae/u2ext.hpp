#pragma once

// U(2) family of connection conditions at a point singularity.

#include <Eigen/Dense>
#include <complex>

namespace ssae {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

inline constexpr double kUnitarityTol = 1e-12;

/// A validated 2x2 unitary matrix.
class ExtensionMatrix {
 public:
  /// Throws NotUnitary when max|U^dagger U - I| >= kUnitarityTol.
  explicit ExtensionMatrix(const Mat2& u);

  const Mat2& matrix() const { return u_; }
  Complex operator()(int i, int j) const { return u_(i, j); }

  static ExtensionMatrix identity();
  static ExtensionMatrix minus_identity();
  static ExtensionMatrix sigma1();
  static ExtensionMatrix diagonal(double phase0, double phase1);

 private:
  Mat2 u_;
};

/// Eigen-decomposition U = V^{-1} D V with D = diag(e^{i theta+}, e^{i theta-})
/// and V = exp(i mu sigma2 / 2) exp(i nu sigma3 / 2).
struct ExtensionSpec {
  double theta_plus = 0.0;   // [0, 2pi)
  double theta_minus = 0.0;  // [0, 2pi)
  double mu = 0.0;           // [0, pi]
  double nu = 0.0;           // [0, 2pi)
  double L0 = 1.0;           // > 0

  /// Throws ConfigError for out-of-range angles or L0 <= 0.
  void validate() const;
};

/// L = L0 cot(theta/2); +infinity at theta = 0, exactly 0 at theta = pi.
struct ScaleParams {
  double l_plus;
  double l_minus;
};

/// Boundary vectors built from Wronskians at x = +-0.
struct BoundaryPair {
  Vec2 psi;
  Vec2 psi_prime;

  Vec2 psi_plus(double L0) const { return psi + Complex(0.0, L0) * psi_prime; }
  Vec2 psi_minus(double L0) const { return psi - Complex(0.0, L0) * psi_prime; }
};

double wrap_angle(double theta);  // into [0, 2pi)

ExtensionSpec decompose(const ExtensionMatrix& u, double L0);
ExtensionMatrix recompose(const ExtensionSpec& spec);
Mat2 v_matrix(double mu, double nu);

double scale_length(double theta, double L0);
ScaleParams scale_params(const ExtensionSpec& spec);

/// (U - I) Psi + i L0 (U + I) Psi'.
Vec2 connection_residual(const ExtensionMatrix& u, const BoundaryPair& bp, double L0);

/// sin(theta/2) + L0 xi cos(theta/2); zero iff xi = -1/L for theta not in {0, pi}.
double spectral_condition(double theta, double L0, double xi);

/// True when both off-diagonal magnitudes are below tol (no flux through
/// the singularity).
bool is_separated(const ExtensionMatrix& u, double tol = 1e-12);

}  // namespace ssae
