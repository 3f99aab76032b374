#include "braidform/betti.hpp"

#include <cmath>
#include <sstream>

#include "braidform/errors.hpp"

namespace braidform {

std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BettiVector BettiVector::parse(std::string_view text, std::string source) {
  BettiVector out;
  out.source = std::move(source);
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse Betti entry '" + item + "'");
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (used != item.size()) throw InvalidArgument("cannot parse Betti entry '" + item + "'");
    out.values.push_back(v);
  }
  out.validate();
  return out;
}

void BettiVector::validate() const {
  if (values.empty()) throw InvalidArgument("Betti vector is empty");
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidArgument("Betti numbers must be finite and nonnegative");
    }
  }
}

std::string_view to_string(SeriesSign s) { return s == SeriesSign::plain ? "plain" : "alternating"; }

std::string_view to_string(ConstantTerm c) { return c == ConstantTerm::one ? "one" : "extrapolated"; }

std::optional<SeriesSign> parse_series_sign(std::string_view s) {
  if (s == "plain") return SeriesSign::plain;
  if (s == "alternating") return SeriesSign::alternating;
  return std::nullopt;
}

std::optional<ConstantTerm> parse_constant_term(std::string_view s) {
  if (s == "one") return ConstantTerm::one;
  if (s == "extrapolated") return ConstantTerm::extrapolated;
  return std::nullopt;
}

namespace {

BigInt factorial(int n) {
  BigInt out = 1;
  for (int k = 2; k <= n; ++k) out *= k;
  return out;
}

BigInt pow2(int n) { return BigInt(1) << n; }

}  // namespace

Rational c_n_pi(std::uint64_t inv_dim, int n, std::uint64_t alg_dim) {
  if (n < 0) throw InvalidArgument("N must be nonnegative");
  if (alg_dim == 0) throw InvalidArgument("algebra dimension must be positive");
  if (inv_dim > alg_dim) {
    throw InvalidArgument("invariant dimension " + std::to_string(inv_dim) +
                          " exceeds algebra dimension " + std::to_string(alg_dim));
  }
  const Rational c(BigInt(inv_dim), factorial(n) * BigInt(alg_dim));
  if (c > Rational(BigInt(1), factorial(n))) throw VerificationFailure("C_N^pi exceeds 1/N!");
  return c;
}

std::vector<double> kunneth_convolve(const BettiVector& beta, int n) {
  beta.validate();
  if (n < 1) throw InvalidArgument("convolution power N must be at least 1");
  std::vector<double> out = beta.values;
  for (int k = 1; k < n; ++k) {
    std::vector<double> next(out.size() + beta.values.size() - 1, 0.0);
    for (std::size_t a = 0; a < out.size(); ++a) {
      for (std::size_t b = 0; b < beta.values.size(); ++b) next[a + b] += out[a] * beta.values[b];
    }
    out = std::move(next);
  }
  return out;
}

BraidedBettiResult braided_betti(const BettiVector& beta, int n, std::uint64_t inv_dim) {
  if (n < 1 || n > 62) throw InvalidArgument("N out of range for braided Betti numbers");
  BraidedBettiResult out;
  out.n = n;
  out.c_n_pi = c_n_pi(inv_dim, n, std::uint64_t{1} << n);
  out.c_n_pi_value = to_double(out.c_n_pi);
  out.values = kunneth_convolve(beta, n);
  for (double& v : out.values) v *= out.c_n_pi_value;
  return out;
}

double euler_characteristic(const BettiVector& beta) {
  beta.validate();
  double chi = 0.0;
  for (std::size_t m = 0; m < beta.values.size(); ++m) {
    chi += (m % 2 == 0 ? 1.0 : -1.0) * beta.values[m];
  }
  return chi;
}

BigInt catalog_invariant_dimension(CatalogTag tag, int n) {
  if (n < 0) throw InvalidArgument("N must be nonnegative");
  switch (tag) {
    case CatalogTag::ex1: return pow2(n);
    case CatalogTag::ex2: return 2;
    case CatalogTag::ex3: return n + 1;
    case CatalogTag::ex4: return 0;
  }
  return 0;
}

CoefficientSeries catalog_coefficients(CatalogTag tag, int n_max) {
  if (n_max < 0) throw InvalidArgument("n_max must be nonnegative");
  CoefficientSeries out;
  out.tag = tag;
  for (int n = 1; n <= n_max; ++n) {
    out.by_n.emplace_back(catalog_invariant_dimension(tag, n), factorial(n) * pow2(n));
  }
  out.extrapolated_c0 = Rational(catalog_invariant_dimension(tag, 0));
  return out;
}

ClosedFormReference closed_form_reference(CatalogTag tag, double chi) {
  const double half = std::exp(-chi / 2.0);
  switch (tag) {
    case CatalogTag::ex1:
      return {"exp(-chi)", std::exp(-chi), "exp(-chi)", std::exp(-chi), true};
    case CatalogTag::ex2:
      return {"2*exp(-chi/2)", 2.0 * half, "2*exp(-chi/2)", 2.0 * half, true};
    case CatalogTag::ex3: {
      const double displayed = 1.0 - (chi / 2.0) * half + half;
      const double derived = (1.0 - chi / 2.0) * half;
      return {"1 - (chi/2)*exp(-chi/2) + exp(-chi/2)", displayed, "(1 - chi/2)*exp(-chi/2)", derived,
              std::abs(displayed - derived) <= 1e-9};
    }
    case CatalogTag::ex4:
      break;
  }
  throw InvalidArgument("ex4 has no closed-form supertrace; all C_N^pi vanish");
}

SupertraceReport supertrace_partial(double chi, const CoefficientSeries& series, int n_max,
                                    SeriesSign sign, ConstantTerm c0) {
  if (n_max < 1) throw InvalidArgument("n_max must be at least 1");
  if (static_cast<std::size_t>(n_max) > series.by_n.size()) {
    throw InvalidArgument("coefficient series has only " + std::to_string(series.by_n.size()) +
                          " terms, n_max = " + std::to_string(n_max));
  }
  if (!std::isfinite(chi)) throw InvalidArgument("chi must be finite");
  SupertraceReport out;
  out.chi = chi;
  out.n_max = n_max;
  out.sign = sign;
  out.constant_term = c0;
  if (c0 == ConstantTerm::extrapolated) {
    if (!series.extrapolated_c0) {
      throw InvalidArgument("no closed-form coefficient available to extrapolate to N = 0");
    }
    out.constant_value = to_double(*series.extrapolated_c0);
  } else {
    out.constant_value = 1.0;
  }

  const double x = sign == SeriesSign::alternating ? -chi : chi;
  double power = 1.0;
  double sum = out.constant_value;
  out.partial_sums.reserve(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    power *= x;
    sum += to_double(series.by_n[static_cast<std::size_t>(n - 1)]) * power;
    out.partial_sums.push_back(sum);
  }
  out.limit_estimate = sum;

  if (series.tag && *series.tag != CatalogTag::ex4 && sign == SeriesSign::alternating &&
      c0 == ConstantTerm::extrapolated) {
    out.closed_form = closed_form_reference(*series.tag, chi);
    out.deviates_from_displayed = std::abs(out.limit_estimate - out.closed_form->displayed_value) > 1e-9;
  }
  return out;
}

}  // namespace braidform
