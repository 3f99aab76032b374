#include "braidform/rmatrix.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <regex>
#include <sstream>

#include "braidform/errors.hpp"

namespace braidform {

std::string_view to_string(CatalogTag tag) {
  switch (tag) {
    case CatalogTag::ex1: return "ex1";
    case CatalogTag::ex2: return "ex2";
    case CatalogTag::ex3: return "ex3";
    case CatalogTag::ex4: return "ex4";
  }
  return "?";
}

std::optional<CatalogTag> parse_catalog_tag(std::string_view s) {
  if (s == "ex1") return CatalogTag::ex1;
  if (s == "ex2") return CatalogTag::ex2;
  if (s == "ex3") return CatalogTag::ex3;
  if (s == "ex4") return CatalogTag::ex4;
  return std::nullopt;
}

PhaseAngle PhaseAngle::radians(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("phase angle must be finite");
  PhaseAngle a;
  a.radians_ = value;
  return a;
}

PhaseAngle PhaseAngle::pi_fraction(long numerator, long denominator) {
  if (denominator == 0) throw InvalidArgument("zero denominator in phase angle");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const long g = std::gcd(numerator, denominator);
  PhaseAngle a;
  a.exact_ = true;
  a.num_ = numerator / (g ? g : 1);
  a.den_ = denominator / (g ? g : 1);
  a.radians_ = std::numbers::pi * static_cast<double>(a.num_) / static_cast<double>(a.den_);
  return a;
}

PhaseAngle PhaseAngle::parse(std::string_view text) {
  const std::string s(text);
  static const std::regex pi_form(R"(^\s*([+-])?(\d+)?\s*\*?\s*pi\s*(?:/\s*(\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(s, m, pi_form)) {
    long num = m[2].matched ? std::stol(m[2].str()) : 1;
    const long den = m[3].matched ? std::stol(m[3].str()) : 1;
    if (m[1].matched && m[1].str() == "-") num = -num;
    return pi_fraction(num, den);
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  while (end && *end == ' ') ++end;
  if (s.empty() || end == s.c_str() || *end != '\0') {
    throw InvalidArgument("cannot parse phase angle '" + s + "'");
  }
  return radians(v);
}

Complex PhaseAngle::q() const { return std::polar(1.0, radians_); }

bool PhaseAngle::q_squared_is_one() const {
  if (exact_) return num_ % den_ == 0;
  return std::abs(std::sin(radians_)) <= 1e-12;
}

std::string PhaseAngle::to_string() const {
  std::ostringstream os;
  if (exact_) {
    if (num_ == 0) return "0";
    if (num_ == -1) os << '-';
    else if (num_ != 1) os << num_;
    os << "pi";
    if (den_ != 1) os << '/' << den_;
  } else {
    os.precision(17);
    os << radians_;
  }
  return os.str();
}

std::string RMatrix::label() const {
  if (!provenance) return "custom";
  std::string out(braidform::to_string(provenance->tag));
  out += ":theta=" + provenance->theta.to_string();
  if (provenance->tag == CatalogTag::ex1) out += ",eps=" + std::to_string(provenance->epsilon);
  return out;
}

Matrix8c lift_left(const Matrix4c& c) {
  Matrix8c out = Matrix8c::Zero();
  for (int r = 0; r < 4; ++r) {
    for (int k = 0; k < 4; ++k) {
      for (int b = 0; b < 2; ++b) out(2 * r + b, 2 * k + b) = c(r, k);
    }
  }
  return out;
}

Matrix8c lift_right(const Matrix4c& c) {
  Matrix8c out = Matrix8c::Zero();
  for (int a = 0; a < 2; ++a) out.block<4, 4>(4 * a, 4 * a) = c;
  return out;
}

ResidualReport braid_residual(const RMatrix& c, double tolerance) {
  const Matrix8c l = lift_left(c.entries);
  const Matrix8c r = lift_right(c.entries);
  const Matrix8c diff = l * r * l - r * l * r;
  return ResidualReport::make(diff.norm(), tolerance);
}

ResidualReport unitarity_residual(const RMatrix& c, double tolerance) {
  const Matrix4c diff = c.entries.adjoint() * c.entries - Matrix4c::Identity();
  return ResidualReport::make(diff.norm(), tolerance);
}

RMatrix swap_sigma() {
  Matrix4c s = Matrix4c::Zero();
  s(0, 0) = 1.0;
  s(2, 1) = 1.0;
  s(1, 2) = 1.0;
  s(3, 3) = 1.0;
  return RMatrix::from_entries(s);
}

ResidualReport ybe_residual(const RMatrix& r, double tolerance) {
  const Matrix8c r12 = lift_left(r.entries);
  const Matrix8c r23 = lift_right(r.entries);
  // R₁₃ is R₁₂ conjugated by the flip of the second and third factors.
  const Matrix8c flip23 = lift_right(swap_sigma().entries);
  const Matrix8c r13 = flip23 * r12 * flip23;
  const Matrix8c diff = r12 * r13 * r23 - r23 * r13 * r12;
  return ResidualReport::make(diff.norm(), tolerance);
}

RMatrix times_sigma(const RMatrix& c) {
  return RMatrix::from_entries(c.entries * swap_sigma().entries);
}

RMatrix catalog(CatalogTag tag, PhaseAngle theta, int epsilon) {
  if (tag != CatalogTag::ex1 && theta.q_squared_is_one()) {
    throw InvalidArgument(std::string(to_string(tag)) + " requires q^2 != 1, got theta = " +
                          theta.to_string());
  }
  if (epsilon != 1 && epsilon != -1) throw InvalidArgument("epsilon must be +1 or -1");
  const Complex q = theta.q();
  Matrix4c m = Matrix4c::Zero();
  switch (tag) {
    case CatalogTag::ex1:
      m(0, 3) = q;
      m(1, 1) = static_cast<double>(epsilon);
      m(2, 2) = static_cast<double>(epsilon);
      m(3, 0) = std::conj(q);
      break;
    case CatalogTag::ex2:
      m(0, 3) = q;
      m(1, 1) = 1.0;
      m(2, 2) = 1.0;
      m(3, 0) = q;
      break;
    case CatalogTag::ex3:
      m(0, 0) = q;
      m(1, 2) = 1.0;
      m(2, 1) = 1.0;
      m(3, 3) = 1.0;
      break;
    case CatalogTag::ex4:
      m(0, 3) = 1.0;
      m(1, 1) = q;
      m(2, 2) = q;
      m(3, 0) = 1.0;
      break;
  }
  return RMatrix{m, Provenance{tag, theta, tag == CatalogTag::ex1 ? epsilon : 1}};
}

bool is_involutive(const RMatrix& c, double tolerance) {
  return (c.entries * c.entries - Matrix4c::Identity()).norm() <= tolerance;
}

bool is_generalized_permutation(const RMatrix& c, double tolerance) {
  for (int k = 0; k < 4; ++k) {
    int in_row = 0;
    int in_col = 0;
    for (int l = 0; l < 4; ++l) {
      if (std::abs(c.entries(k, l)) > tolerance) ++in_row;
      if (std::abs(c.entries(l, k)) > tolerance) ++in_col;
    }
    if (in_row != 1 || in_col != 1) return false;
  }
  return true;
}

}  // namespace braidform
