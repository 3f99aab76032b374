#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "braidform/rmatrix.hpp"

namespace braidform {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// "p/q" with q > 0; integers print as "p/1".
std::string to_fraction_string(const Rational& r);
double to_double(const Rational& r);

/// L²-Betti numbers β₀..β_d of the base manifold; user-supplied data.
struct BettiVector {
  std::vector<double> values;
  std::string source;

  /// Parses "0,2,0".
  static BettiVector parse(std::string_view text, std::string source = "cli");
  void validate() const;
  std::size_t degree() const { return values.empty() ? 0 : values.size() - 1; }
};

struct BraidedBettiResult {
  int n = 0;
  Rational c_n_pi;
  double c_n_pi_value = 0.0;
  std::vector<double> values;  // b_m(X^N), m = 0..N·d
};

enum class SeriesSign { plain, alternating };
enum class ConstantTerm { one, extrapolated };

std::string_view to_string(SeriesSign s);
std::string_view to_string(ConstantTerm c);
std::optional<SeriesSign> parse_series_sign(std::string_view s);
std::optional<ConstantTerm> parse_constant_term(std::string_view s);

/// Coefficients C_N^π for N = 1..by_n.size(), with an optional N = 0 value
/// obtained by evaluating a closed-form coefficient formula at N = 0.
struct CoefficientSeries {
  std::vector<Rational> by_n;  // by_n[N-1] = C_N^π
  std::optional<Rational> extrapolated_c0;
  std::optional<CatalogTag> tag;
};

/// The commonly displayed and series-derived closed forms of the supertrace.
struct ClosedFormReference {
  std::string displayed_expression;
  double displayed_value = 0.0;
  std::string derived_expression;
  double derived_value = 0.0;
  bool agree = true;
};

struct SupertraceReport {
  double chi = 0.0;
  int n_max = 0;
  SeriesSign sign = SeriesSign::alternating;
  ConstantTerm constant_term = ConstantTerm::extrapolated;
  double constant_value = 0.0;
  std::vector<double> partial_sums;  // s_n for n = 1..n_max
  double limit_estimate = 0.0;
  std::optional<ClosedFormReference> closed_form;
  /// Set when the series limit differs from the commonly displayed expression
  /// by more than 1e−9.
  bool deviates_from_displayed = false;
};

/// C_N^π = inv_dim / (N! · alg_dim), exact.
Rational c_n_pi(std::uint64_t inv_dim, int n, std::uint64_t alg_dim);

/// Coefficients of (Σ_k β_k t^k)^N.
std::vector<double> kunneth_convolve(const BettiVector& beta, int n);

/// b_m(X^N) = C_N^π · (N-fold convolution of β)_m with alg_dim = 2^N.
BraidedBettiResult braided_betti(const BettiVector& beta, int n, std::uint64_t inv_dim);

/// Σ (−1)^m β_m.
double euler_characteristic(const BettiVector& beta);

/// dim A_N^π predicted by the closed-form dimension formulas: 2^N, 2, N+1, 0.
BigInt catalog_invariant_dimension(CatalogTag tag, int n);

/// C_N^π for N = 1..n_max from the catalog dimension formulas, with the
/// closed-form coefficient evaluated at N = 0 as the extrapolated constant.
CoefficientSeries catalog_coefficients(CatalogTag tag, int n_max);

/// Throws InvalidArgument for ex4, which has no displayed closed form.
ClosedFormReference closed_form_reference(CatalogTag tag, double chi);

/// Partial sums of c0 + Σ_{N=1}^{n} s^N C_N^π χ^N for n = 1..n_max.
SupertraceReport supertrace_partial(double chi, const CoefficientSeries& series, int n_max,
                                    SeriesSign sign = SeriesSign::alternating,
                                    ConstantTerm c0 = ConstantTerm::extrapolated);

}  // namespace braidform
