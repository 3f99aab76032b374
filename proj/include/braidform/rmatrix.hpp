#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace braidform {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using Matrix8c = Eigen::Matrix<Complex, 8, 8>;

/// Residual checks default to this tolerance unless the caller overrides it.
inline constexpr double kDefaultTolerance = 1e-10;

enum class CatalogTag { ex1, ex2, ex3, ex4 };

std::string_view to_string(CatalogTag tag);
std::optional<CatalogTag> parse_catalog_tag(std::string_view s);

/// A phase angle θ in radians, q = exp(iθ).
///
/// Angles entered as rational multiples of π keep the exact fraction, so the
/// degeneracy test q² = 1 (θ a multiple of π) is decided without rounding.
class PhaseAngle {
 public:
  PhaseAngle() = default;

  static PhaseAngle radians(double value);
  static PhaseAngle pi_fraction(long numerator, long denominator);

  /// Accepts "1.0472", "pi", "-pi", "pi/3", "2pi/3", "2*pi/3", "3/4pi".
  static PhaseAngle parse(std::string_view text);

  double value() const { return radians_; }
  Complex q() const;
  bool is_exact() const { return exact_; }
  long numerator() const { return num_; }
  long denominator() const { return den_; }

  /// True when θ is an integer multiple of π.
  bool q_squared_is_one() const;

  std::string to_string() const;

 private:
  double radians_ = 0.0;
  bool exact_ = false;
  long num_ = 0;
  long den_ = 1;
};

struct Provenance {
  CatalogTag tag = CatalogTag::ex1;
  PhaseAngle theta;
  int epsilon = 1;
};

/// A 4×4 complex matrix on ℂ²⊗ℂ², basis order (00, 01, 10, 11).
struct RMatrix {
  Matrix4c entries = Matrix4c::Identity();
  std::optional<Provenance> provenance;

  static RMatrix from_entries(const Matrix4c& m) { return RMatrix{m, std::nullopt}; }
  std::string label() const;
};

struct ResidualReport {
  double frobenius_residual = 0.0;
  double tolerance = kDefaultTolerance;
  bool passes = true;

  static ResidualReport make(double residual, double tolerance) {
    return {residual, tolerance, residual <= tolerance};
  }
};

/// ‖(C⊗1)(1⊗C)(C⊗1) − (1⊗C)(C⊗1)(1⊗C)‖_F on the 8×8 lifts.
ResidualReport braid_residual(const RMatrix& c, double tolerance = kDefaultTolerance);

/// ‖C*C − I‖_F.
ResidualReport unitarity_residual(const RMatrix& c, double tolerance = kDefaultTolerance);

/// The flip Σ(e_i⊗e_j) = e_j⊗e_i.
RMatrix swap_sigma();

/// Residual of the constant Yang–Baxter equation R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂.
ResidualReport ybe_residual(const RMatrix& r, double tolerance = kDefaultTolerance);

/// R = CΣ, the Yang–Baxter solution paired with a braid-equation solution C.
/// The map is an involution since Σ² = I.
RMatrix times_sigma(const RMatrix& c);

/// The four example matrices. ex2, ex3 and ex4 reject θ with q² = 1; ε is
/// only read by ex1 and must be ±1.
RMatrix catalog(CatalogTag tag, PhaseAngle theta, int epsilon = 1);

bool is_involutive(const RMatrix& c, double tolerance = kDefaultTolerance);

/// Exactly one entry per row and per column with modulus above `tolerance`.
bool is_generalized_permutation(const RMatrix& c, double tolerance = kDefaultTolerance);

// Kronecker lifts used by the residual checks; exposed for tests.
Matrix8c lift_left(const Matrix4c& c);   // C ⊗ 1
Matrix8c lift_right(const Matrix4c& c);  // 1 ⊗ C

}  // namespace braidform
