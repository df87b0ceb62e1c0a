#include "ssae/u2ext.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ssae/errors.hpp"

namespace ssae {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kDegenerateTol = 1e-10;
const Complex kI{0.0, 1.0};
}  // namespace

ExtensionMatrix::ExtensionMatrix(const Mat2& u) : u_(u) {
  if (!u.allFinite()) throw NotUnitary("extension matrix has non-finite entries");
  double dev = (u.adjoint() * u - Mat2::Identity()).cwiseAbs().maxCoeff();
  if (!(dev < kUnitarityTol)) throw NotUnitary("extension matrix is not unitary (deviation " + std::to_string(dev) + ")");
}

ExtensionMatrix ExtensionMatrix::identity() { return ExtensionMatrix(Mat2::Identity()); }
ExtensionMatrix ExtensionMatrix::minus_identity() { return ExtensionMatrix(-Mat2::Identity()); }

ExtensionMatrix ExtensionMatrix::sigma1() {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return ExtensionMatrix(m);
}

ExtensionMatrix ExtensionMatrix::diagonal(double phase0, double phase1) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::polar(1.0, phase0);
  m(1, 1) = std::polar(1.0, phase1);
  return ExtensionMatrix(m);
}

void ExtensionSpec::validate() const {
  auto in = [](double v, double hi, bool closed) { return std::isfinite(v) && v >= 0.0 && (closed ? v <= hi : v < hi); };
  if (!in(theta_plus, kTwoPi, false) || !in(theta_minus, kTwoPi, false))
    throw ConfigError("theta_plus/theta_minus must lie in [0, 2pi)");
  if (!in(mu, kPi, true)) throw ConfigError("mu must lie in [0, pi]");
  if (!in(nu, kTwoPi, false)) throw ConfigError("nu must lie in [0, 2pi)");
  if (!(L0 > 0.0) || !std::isfinite(L0)) throw ConfigError("L0 must be positive");
}

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi - 1e-13) t = 0.0;
  return t;
}

Mat2 v_matrix(double mu, double nu) {
  double c = std::cos(0.5 * mu), s = std::sin(0.5 * mu);
  Complex ep = std::polar(1.0, 0.5 * nu), em = std::conj(ep);
  Mat2 v;
  v << c * ep, s * em, -s * ep, c * em;
  return v;
}

ExtensionSpec decompose(const ExtensionMatrix& u, double L0) {
  Eigen::ComplexEigenSolver<Mat2> es(u.matrix());
  Complex l0 = es.eigenvalues()(0), l1 = es.eigenvalues()(1);
  double t0 = wrap_angle(std::arg(l0)), t1 = wrap_angle(std::arg(l1));
  int first = t0 <= t1 ? 0 : 1;

  ExtensionSpec spec;
  spec.L0 = L0;
  spec.theta_plus = std::min(t0, t1);
  spec.theta_minus = std::max(t0, t1);
  if (std::abs(l0 - l1) < kDegenerateTol) {
    // Scalar matrix: V is arbitrary, take the identity.
    spec.theta_minus = spec.theta_plus;
    return spec;
  }
  // Eigenvector of theta+ is the first column of V^dagger,
  // (cos(mu/2) e^{-i nu/2}, sin(mu/2) e^{i nu/2}) up to a phase.
  Vec2 v = es.eigenvectors().col(first).normalized();
  spec.mu = 2.0 * std::atan2(std::abs(v(1)), std::abs(v(0)));
  if (std::abs(v(0)) < 1e-14 || std::abs(v(1)) < 1e-14) {
    spec.nu = 0.0;
  } else {
    spec.nu = wrap_angle(std::arg(v(1)) - std::arg(v(0)));
  }
  return spec;
}

ExtensionMatrix recompose(const ExtensionSpec& spec) {
  Mat2 v = v_matrix(spec.mu, spec.nu);
  Mat2 d = Mat2::Zero();
  d(0, 0) = std::polar(1.0, spec.theta_plus);
  d(1, 1) = std::polar(1.0, spec.theta_minus);
  Mat2 u = v.adjoint() * d * v;
  return ExtensionMatrix(u);
}

double scale_length(double theta, double L0) {
  double t = wrap_angle(theta);
  if (t == 0.0) return std::numeric_limits<double>::infinity();
  if (t == kPi) return 0.0;
  return L0 * std::cos(0.5 * t) / std::sin(0.5 * t);
}

ScaleParams scale_params(const ExtensionSpec& spec) {
  return {scale_length(spec.theta_plus, spec.L0), scale_length(spec.theta_minus, spec.L0)};
}

Vec2 connection_residual(const ExtensionMatrix& u, const BoundaryPair& bp, double L0) {
  const Mat2& m = u.matrix();
  Mat2 id = Mat2::Identity();
  return (m - id) * bp.psi + kI * L0 * ((m + id) * bp.psi_prime);
}

double spectral_condition(double theta, double L0, double xi) {
  return std::sin(0.5 * theta) + L0 * xi * std::cos(0.5 * theta);
}

bool is_separated(const ExtensionMatrix& u, double tol) {
  return std::abs(u(0, 1)) < tol && std::abs(u(1, 0)) < tol;
}

}  // namespace ssae
