#include "braidform/app.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "braidform/betti.hpp"
#include "braidform/errors.hpp"
#include "braidform/json_io.hpp"
#include "braidform/projection.hpp"

namespace braidform::app {

namespace {

constexpr double kCertificateTolerance = 1e-8;
constexpr double kProjectionDistanceTolerance = 1e-8;
constexpr double kProjectorResidualTolerance = 1e-10;
constexpr double kIndexIdentityTolerance = 1e-9;
constexpr int kSupertraceSolverMaxN = 12;

enum class Format { human, json, csv, jsonl };

Format parse_format(const std::string& s, bool json_flag) {
  if (json_flag) return Format::json;
  if (s == "human") return Format::human;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "jsonl") return Format::jsonl;
  throw UsageError("unknown output format '" + s + "'");
}

std::string scalar_text(const ordered_json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string csv_field(const ordered_json& v) {
  const std::string text = scalar_text(v);
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

void emit_human(std::ostream& out, const ordered_json& j, const std::string& indent = "") {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      out << indent << key << ":\n";
      emit_human(out, value, indent + "  ");
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      out << indent << key << ":\n";
      for (const auto& item : value) {
        out << indent << "  -\n";
        emit_human(out, item, indent + "    ");
      }
    } else {
      out << indent << key << ": " << scalar_text(value) << '\n';
    }
  }
}

void emit_records_csv(std::ostream& out, const ordered_json& records) {
  if (records.empty()) return;
  bool first = true;
  for (const auto& [key, value] : records.front().items()) {
    out << (first ? "" : ",") << key;
    first = false;
  }
  out << '\n';
  for (const auto& rec : records) {
    first = true;
    for (const auto& [key, value] : rec.items()) {
      out << (first ? "" : ",") << csv_field(value);
      first = false;
    }
    out << '\n';
  }
}

// Single report: JSON document, or key/value lines. `records`, when present
// in the report, is what csv and jsonl render.
void emit(std::ostream& out, Format format, const ordered_json& report) {
  switch (format) {
    case Format::json:
      out << report.dump(2) << '\n';
      break;
    case Format::human:
      emit_human(out, report);
      break;
    case Format::csv:
      if (report.contains("records")) {
        emit_records_csv(out, report["records"]);
      } else {
        emit_records_csv(out, ordered_json::array({report}));
      }
      break;
    case Format::jsonl:
      if (report.contains("records")) {
        for (const auto& rec : report["records"]) out << rec.dump() << '\n';
      } else {
        out << report.dump() << '\n';
      }
      break;
  }
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("cannot parse " + what + " '" + s + "'");
  }
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("cannot parse " + what + " '" + s + "'");
  }
}

std::vector<std::uint64_t> parse_expect_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split(s, ',')) {
    const int v = parse_int(item, "expected dimension");
    if (v < 0) throw UsageError("expected dimensions must be nonnegative");
    out.push_back(static_cast<std::uint64_t>(v));
  }
  return out;
}

std::optional<SolverMethod> parse_method(const std::string& s) {
  if (s == "dense") return SolverMethod::dense;
  if (s == "phased") return SolverMethod::phased;
  if (s == "auto") return std::nullopt;
  throw UsageError("unknown method '" + s + "' (expected dense, phased or auto)");
}

SolverMethod resolve_method(const RMatrix& c, std::optional<SolverMethod> requested) {
  if (requested) return *requested;
  return is_generalized_permutation(c) ? SolverMethod::phased : SolverMethod::dense;
}

void check_guard(const RMatrix& c, SolverMethod method, NRange range) {
  if (range.lo < 1) throw UsageError("N must be at least 1");
  if (method == SolverMethod::phased) {
    if (!is_generalized_permutation(c)) {
      throw UsageError("phased method needs a generalized permutation matrix");
    }
    if (range.hi > kPhasedMaxSites) {
      throw UsageError("N = " + std::to_string(range.hi) + " exceeds the phased guard " +
                       std::to_string(kPhasedMaxSites));
    }
  } else if (range.hi > kDenseMaxSites) {
    throw UsageError("N = " + std::to_string(range.hi) + " exceeds the dense guard " +
                     std::to_string(kDenseMaxSites));
  }
}

InvariantSubspace solve(const RMatrix& c, int n, SolverMethod method) {
  return method == SolverMethod::phased ? invariant_subspace_phased(c, n)
                                        : invariant_subspace_dense(c, n);
}

ordered_json base_report(const std::string& command, double tolerance) {
  return {{"schema", kSchemaVersion}, {"command", command}, {"tolerance", tolerance}};
}

ordered_json matrix_field(const RMatrix& c) {
  ordered_json j = rmatrix_to_json(c);
  j["label"] = c.label();
  return j;
}

std::string bits_of(std::uint64_t index, int sites) {
  std::string s(static_cast<std::size_t>(sites), '0');
  for (int k = 0; k < sites; ++k) {
    if ((index >> (sites - 1 - k)) & 1U) s[static_cast<std::size_t>(k)] = '1';
  }
  return s;
}

// Catalog-tagged matrix with its θ replaced; sweeps use this for θ grids.
RMatrix with_theta(const RMatrix& c, PhaseAngle theta) {
  if (!c.provenance) throw UsageError("a theta grid needs catalog matrices");
  return catalog(c.provenance->tag, theta, c.provenance->epsilon);
}

struct Runner {
  std::ostream& out;
  std::ostream& err;
  double tolerance = kDefaultTolerance;
  Format format = Format::human;

  int catalog_cmd(const std::string& theta_text, int eps) {
    const auto theta = PhaseAngle::parse(theta_text);
    auto report = base_report("catalog", tolerance);
    ordered_json entries = ordered_json::array();
    bool ok = true;
    for (auto tag : {CatalogTag::ex1, CatalogTag::ex2, CatalogTag::ex3, CatalogTag::ex4}) {
      const RMatrix c = catalog(tag, theta, eps);
      const auto u = unitarity_residual(c, tolerance);
      const auto b = braid_residual(c, tolerance);
      const auto y = ybe_residual(times_sigma(c), tolerance);
      ok = ok && u.passes && b.passes && y.passes;
      entries.push_back({{"matrix", matrix_field(c)},
                         {"unitarity_residual", u.frobenius_residual},
                         {"braid_residual", b.frobenius_residual},
                         {"ybe_residual", y.frobenius_residual},
                         {"involutive", is_involutive(c, tolerance)},
                         {"generalized_permutation", is_generalized_permutation(c, tolerance)}});
    }
    report["entries"] = std::move(entries);
    report["passes"] = ok;
    emit(out, format, report);
    return ok ? kExitOk : kExitVerificationFailed;
  }

  int check_braid_cmd(const RMatrix& c) {
    const auto b = braid_residual(c, tolerance);
    const auto u = unitarity_residual(c, tolerance);
    auto report = base_report("check-braid-eq", tolerance);
    report["matrix"] = matrix_field(c);
    report["residual"] = b.frobenius_residual;
    report["unitarity_residual"] = u.frobenius_residual;
    report["passes"] = b.passes;
    emit(out, format, report);
    return b.passes ? kExitOk : kExitVerificationFailed;
  }

  int check_ybe_cmd(const RMatrix& c, bool as_r) {
    const RMatrix r = as_r ? c : times_sigma(c);
    const auto y = ybe_residual(r, tolerance);
    auto report = base_report("check-ybe", tolerance);
    report["matrix"] = matrix_field(c);
    report["r_matrix"] = as_r ? "input" : "C*Sigma";
    report["residual"] = y.frobenius_residual;
    report["passes"] = y.passes;
    emit(out, format, report);
    return y.passes ? kExitOk : kExitVerificationFailed;
  }

  ordered_json dim_record(const RMatrix& c, const InvariantSubspace& s) {
    return {{"matrix", c.label()},
            {"n", s.sites},
            {"dimension", s.dimension},
            {"method", std::string(to_string(s.method))},
            {"residual_max", s.residual_max},
            {"tolerance", s.tolerance}};
  }

  int invariant_dim_cmd(const RMatrix& c, NRange range, std::optional<SolverMethod> requested,
                        const std::string& expect) {
    const auto method = resolve_method(c, requested);
    check_guard(c, method, range);
    const auto expected = expect.empty() ? std::vector<std::uint64_t>{} : parse_expect_list(expect);
    const auto count = static_cast<std::size_t>(range.hi - range.lo + 1);
    if (!expected.empty() && expected.size() != count && expected.size() != 1) {
      throw UsageError("--expect needs one value or one per N");
    }
    ordered_json records = ordered_json::array();
    ordered_json dims = ordered_json::array();
    bool ok = true;
    for (int n = range.lo; n <= range.hi; ++n) {
      const auto s = solve(c, n, method);
      ok = ok && s.residual_max <= kCertificateTolerance;
      if (!expected.empty()) {
        const auto want = expected.size() == 1 ? expected[0]
                                               : expected[static_cast<std::size_t>(n - range.lo)];
        if (want != s.dimension) {
          err << "N = " << n << ": dimension " << s.dimension << ", expected " << want << '\n';
          ok = false;
        }
      }
      dims.push_back(s.dimension);
      records.push_back(dim_record(c, s));
    }
    ordered_json report;
    if (count == 1 && format != Format::csv && format != Format::jsonl) {
      report = {{"schema", kSchemaVersion}};
      for (const auto& [k, v] : records.front().items()) report[k] = v;
    } else {
      report = base_report("invariant-dim", tolerance);
      report["matrix"] = c.label();
      report["dimensions"] = std::move(dims);
      report["records"] = std::move(records);
    }
    emit(out, format, report);
    return ok ? kExitOk : kExitVerificationFailed;
  }

  int invariant_basis_cmd(const RMatrix& c, int n, std::optional<SolverMethod> requested) {
    const auto method = resolve_method(c, requested);
    check_guard(c, method, {n, n});
    if (n > kMaterializeMaxSites) throw UsageError("invariant-basis is limited to N <= 12");
    const auto s = solve(c, n, method);
    auto report = base_report("invariant-basis", tolerance);
    report["matrix"] = c.label();
    report["n"] = n;
    report["dimension"] = s.dimension;
    report["method"] = std::string(to_string(s.method));
    report["solver_tolerance"] = s.tolerance;
    report["residual_max"] = s.residual_max;
    ordered_json vectors = ordered_json::array();
    for (Eigen::Index k = 0; k < s.basis.outerSize(); ++k) {
      ordered_json entries = ordered_json::array();
      for (SparseMatrixXc::InnerIterator it(s.basis, k); it; ++it) {
        const auto idx = static_cast<std::uint64_t>(it.row());
        entries.push_back({{"index", idx + 1},
                           {"bits", bits_of(idx, n)},
                           {"re", it.value().real()},
                           {"im", it.value().imag()}});
      }
      vectors.push_back(std::move(entries));
    }
    report["basis"] = std::move(vectors);
    const auto rep = induced_sym_rep(c, s);
    report["compression_error"] = rep.compression_error;
    report["subalgebra"] = subalgebra_check(s);
    emit(out, format == Format::human ? Format::json : format, report);
    return s.residual_max <= kCertificateTolerance ? kExitOk : kExitVerificationFailed;
  }

  int verify_projection_cmd(const RMatrix& c, int h0, int n) {
    ProductSpaceSpec spec{h0, n, c};
    try {
      spec.validate();
    } catch (const GuardExceeded& e) {
      throw UsageError(e.what());
    }
    if (n > kFormulaMaxSites) throw UsageError("verify-projection enumerates N!; N must be <= 6");
    const auto cmp = compare_projections(spec);
    const bool ok = cmp.frobenius_distance <= kProjectionDistanceTolerance &&
                    cmp.formula_rank == cmp.bruteforce_rank &&
                    cmp.idempotency_residual <= kProjectorResidualTolerance &&
                    cmp.hermiticity_residual <= kProjectorResidualTolerance;
    auto report = base_report("verify-projection", kProjectionDistanceTolerance);
    report["matrix"] = c.label();
    report["h0"] = h0;
    report["n"] = n;
    report["formula_rank"] = cmp.formula_rank;
    report["bruteforce_rank"] = cmp.bruteforce_rank;
    report["frobenius_distance"] = cmp.frobenius_distance;
    report["idempotency_residual"] = cmp.idempotency_residual;
    report["hermiticity_residual"] = cmp.hermiticity_residual;
    report["factorization_discrepancy"] = cmp.factorization_discrepancy;
    report["projector_tolerance"] = kProjectorResidualTolerance;
    report["passes"] = ok;
    emit(out, format, report);
    return ok ? kExitOk : kExitVerificationFailed;
  }

  int betti_cmd(const RMatrix& c, const std::string& beta_text, NRange range,
                std::optional<SolverMethod> requested, const std::string& expect_c) {
    const auto beta = BettiVector::parse(beta_text);
    const auto method = resolve_method(c, requested);
    check_guard(c, method, range);
    const double chi = euler_characteristic(beta);
    ordered_json records = ordered_json::array();
    bool ok = true;
    for (int n = range.lo; n <= range.hi; ++n) {
      const auto s = solve(c, n, method);
      const auto res = braided_betti(beta, n, s.dimension);
      double alt = 0.0;
      for (std::size_t m = 0; m < res.values.size(); ++m) {
        alt += (m % 2 == 0 ? 1.0 : -1.0) * res.values[m];
      }
      const double identity_residual = std::abs(alt - res.c_n_pi_value * std::pow(chi, n));
      ok = ok && identity_residual <= kIndexIdentityTolerance;
      if (!expect_c.empty() && expect_c != to_fraction_string(res.c_n_pi)) {
        err << "N = " << n << ": C_N^pi = " << to_fraction_string(res.c_n_pi) << ", expected "
            << expect_c << '\n';
        ok = false;
      }
      records.push_back({{"n", n},
                         {"inv_dim", s.dimension},
                         {"method", std::string(to_string(s.method))},
                         {"c_n_pi", to_fraction_string(res.c_n_pi)},
                         {"c_n_pi_value", res.c_n_pi_value},
                         {"values", res.values},
                         {"index_identity_residual", identity_residual}});
    }
    auto report = base_report("betti", kIndexIdentityTolerance);
    report["matrix"] = c.label();
    report["beta"] = beta.values;
    report["chi"] = chi;
    report["records"] = std::move(records);
    report["passes"] = ok;
    emit(out, format == Format::csv ? Format::json : format, report);
    return ok ? kExitOk : kExitVerificationFailed;
  }

  int supertrace_cmd(const RMatrix& c, double chi, int n_max, const std::string& sign_text,
                     const std::string& c0_text, std::optional<double> expect_limit) {
    const auto sign = parse_series_sign(sign_text);
    if (!sign) throw UsageError("--sign must be plain or alternating");
    const auto c0 = parse_constant_term(c0_text);
    if (!c0) throw UsageError("--c0 must be one or extrapolated");
    if (n_max < 1) throw UsageError("--nmax must be at least 1");

    // Coefficients come from the solver where it can run; catalog matrices
    // fall back to the dimension formulas beyond that, and every solver value
    // is compared with the formula.
    CoefficientSeries series;
    const auto method = resolve_method(c, std::nullopt);
    const int solver_max = method == SolverMethod::phased ? kSupertraceSolverMaxN : kDenseMaxSites;
    if (!c.provenance) {
      if (*c0 == ConstantTerm::extrapolated) {
        throw UsageError("--c0 extrapolated needs a catalog matrix with a closed-form coefficient");
      }
      check_guard(c, method, {1, n_max});
      if (n_max > solver_max) {
        throw UsageError("--nmax exceeds the solver range " + std::to_string(solver_max) +
                         " for a non-catalog matrix");
      }
    }
    CoefficientSeries formula;
    if (c.provenance) {
      formula = catalog_coefficients(c.provenance->tag, n_max);
      series.tag = formula.tag;
      series.extrapolated_c0 = formula.extrapolated_c0;
    }
    ordered_json sources = ordered_json::array();
    ordered_json mismatches = ordered_json::array();
    for (int n = 1; n <= n_max; ++n) {
      if (n <= solver_max) {
        const auto s = solve(c, n, method);
        series.by_n.push_back(c_n_pi(s.dimension, n, std::uint64_t{1} << n));
        sources.push_back("solver");
        if (c.provenance && series.by_n.back() != formula.by_n[static_cast<std::size_t>(n - 1)]) {
          mismatches.push_back({{"n", n},
                                {"solver", to_fraction_string(series.by_n.back())},
                                {"formula", to_fraction_string(formula.by_n[static_cast<std::size_t>(n - 1)])}});
        }
      } else {
        series.by_n.push_back(formula.by_n[static_cast<std::size_t>(n - 1)]);
        sources.push_back("formula");
      }
    }
    bool ok = true;

    const auto rep = supertrace_partial(chi, series, n_max, *sign, *c0);
    auto report = base_report("supertrace", 1e-9);
    report["matrix"] = c.label();
    report["chi"] = rep.chi;
    report["n_max"] = rep.n_max;
    report["sign_convention"] = std::string(to_string(rep.sign));
    report["constant_term"] = std::string(to_string(rep.constant_term));
    report["constant_value"] = rep.constant_value;
    ordered_json coeffs = ordered_json::array();
    for (std::size_t k = 0; k < series.by_n.size(); ++k) {
      coeffs.push_back({{"n", k + 1},
                        {"c_n_pi", to_fraction_string(series.by_n[k])},
                        {"value", to_double(series.by_n[k])},
                        {"source", sources[k]}});
    }
    report["coefficients"] = std::move(coeffs);
    report["formula_mismatches"] = std::move(mismatches);
    report["partial_sums"] = rep.partial_sums;
    report["limit_estimate"] = rep.limit_estimate;
    if (rep.closed_form) {
      report["closed_form_reference"] = {{"displayed_expression", rep.closed_form->displayed_expression},
                                         {"displayed_value", rep.closed_form->displayed_value},
                                         {"derived_expression", rep.closed_form->derived_expression},
                                         {"derived_value", rep.closed_form->derived_value},
                                         {"agree", rep.closed_form->agree}};
      report["deviates_from_displayed"] = rep.deviates_from_displayed;
    }
    if (expect_limit) {
      const bool hit = std::abs(rep.limit_estimate - *expect_limit) <= 1e-9;
      if (!hit) {
        err << "limit " << rep.limit_estimate << " differs from expected " << *expect_limit << '\n';
      }
      ok = ok && hit;
    }
    report["passes"] = ok;
    emit(out, format == Format::csv ? Format::json : format, report);
    return ok ? kExitOk : kExitVerificationFailed;
  }

  int sweep_cmd(const std::vector<std::string>& matrix_specs, NRange range,
                const std::string& theta_list, int random_thetas, std::uint64_t seed,
                std::optional<SolverMethod> requested, const std::string& expect) {
    std::vector<RMatrix> bases;
    for (const auto& spec : matrix_specs) {
      if (spec == "all") {
        for (auto tag : {CatalogTag::ex1, CatalogTag::ex2, CatalogTag::ex3, CatalogTag::ex4}) {
          bases.push_back(catalog(tag, PhaseAngle::pi_fraction(1, 3)));
        }
      } else {
        bases.push_back(parse_matrix_spec(spec));
      }
    }
    if (bases.empty()) throw UsageError("sweep needs at least one --matrix");

    std::vector<PhaseAngle> thetas;
    if (!theta_list.empty()) {
      for (const auto& t : split(theta_list, ',')) thetas.push_back(PhaseAngle::parse(t));
    }
    if (random_thetas > 0) {
      // θ uniform in (0, π) from the top 53 bits of mt19937_64, which is
      // bit-reproducible across standard libraries.
      std::mt19937_64 gen(seed);
      const std::size_t wanted = thetas.size() + static_cast<std::size_t>(random_thetas);
      while (thetas.size() < wanted) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        if (u <= 1e-6 || u >= 1.0 - 1e-6) continue;
        thetas.push_back(PhaseAngle::radians(u * std::numbers::pi));
      }
    }

    std::vector<RMatrix> cells;
    for (const auto& base : bases) {
      if (thetas.empty()) {
        cells.push_back(base);
      } else {
        for (const auto& t : thetas) cells.push_back(with_theta(base, t));
      }
    }
    for (const auto& c : cells) check_guard(c, resolve_method(c, requested), range);

    const auto expected = expect.empty() ? std::vector<std::uint64_t>{} : parse_expect_list(expect);
    if (expected.size() > 1) throw UsageError("sweep --expect takes a single dimension");

    ordered_json records = ordered_json::array();
    bool ok = true;
    for (const auto& c : cells) {
      const auto method = resolve_method(c, requested);
      for (int n = range.lo; n <= range.hi; ++n) {
        const auto s = solve(c, n, method);
        ok = ok && s.residual_max <= kCertificateTolerance;
        if (!expected.empty() && expected[0] != s.dimension) ok = false;
        ordered_json rec = {{"schema", kSchemaVersion},
                            {"matrix", c.label()},
                            {"tag", c.provenance ? std::string(to_string(c.provenance->tag)) : "custom"},
                            {"theta", c.provenance ? c.provenance->theta.value() : 0.0},
                            {"epsilon", c.provenance ? c.provenance->epsilon : 0},
                            {"n", n},
                            {"dimension", s.dimension},
                            {"method", std::string(to_string(s.method))},
                            {"tolerance", s.tolerance},
                            {"residual_max", s.residual_max}};
        records.push_back(std::move(rec));
      }
    }
    ordered_json report = base_report("sweep", tolerance);
    report["seed"] = seed;
    report["records"] = std::move(records);
    report["passes"] = ok;
    emit(out, format == Format::human ? Format::jsonl : format, report);
    return ok ? kExitOk : kExitVerificationFailed;
  }
};

}  // namespace

NRange parse_n_range(std::string_view text) {
  const std::string s(text);
  static const std::regex range_form(R"(^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+)\s*)?$)");
  std::smatch m;
  if (!std::regex_match(s, m, range_form)) throw UsageError("cannot parse N range '" + s + "'");
  NRange r;
  r.lo = parse_int(m[1].str(), "N");
  r.hi = m[2].matched ? parse_int(m[2].str(), "N") : r.lo;
  if (r.hi < r.lo) throw UsageError("empty N range '" + s + "'");
  if (r.lo < 1) throw UsageError("N must be at least 1");
  return r;
}

RMatrix parse_matrix_spec(std::string_view spec_view) {
  const std::string spec(spec_view);
  if (spec.empty()) throw UsageError("empty matrix spec");
  if (spec.front() == '{') {
    try {
      return rmatrix_from_json(nlohmann::json::parse(spec));
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("malformed matrix JSON: ") + e.what());
    }
  }
  if (spec == "swap" || spec == "sigma") return swap_sigma();
  if (spec == "identity") return RMatrix{};

  const auto colon = spec.find(':');
  if (const auto tag = parse_catalog_tag(spec.substr(0, colon))) {
    PhaseAngle theta = PhaseAngle::pi_fraction(1, 3);
    int eps = 1;
    if (colon != std::string::npos) {
      for (const auto& kv : split(spec.substr(colon + 1), ',')) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("matrix parameter '" + kv + "' needs key=value");
        const auto key = kv.substr(0, eq);
        const auto value = kv.substr(eq + 1);
        if (key == "theta") {
          theta = PhaseAngle::parse(value);
        } else if (key == "eps" || key == "epsilon") {
          eps = parse_int(value, "epsilon");
        } else {
          throw UsageError("unknown matrix parameter '" + key + "'");
        }
      }
    }
    return catalog(*tag, theta, eps);
  }

  std::ifstream file(spec);
  if (!file) throw UsageError("'" + spec + "' is neither a catalog spec nor a readable matrix file");
  try {
    return rmatrix_from_json(nlohmann::json::parse(file));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("malformed matrix JSON in '" + spec + "': " + e.what());
  }
}

double default_tolerance() {
  const char* env = std::getenv("BRAIDFORM_TOLERANCE");
  if (!env || !*env) return kDefaultTolerance;
  const double v = parse_double(env, "BRAIDFORM_TOLERANCE");
  if (v <= 0.0) throw UsageError("BRAIDFORM_TOLERANCE must be positive");
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App cli{"Braid-group representations from 4x4 braid-equation solutions", "braidform"};
  cli.require_subcommand(1);

  std::string format_text = "human";
  bool json_flag = false;
  std::optional<double> tol;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format_text, "human, json, csv or jsonl");
    sub->add_flag("--json", json_flag, "Shorthand for --format json");
    sub->add_option("--tol", tol, "Residual tolerance (default 1e-10 or BRAIDFORM_TOLERANCE)");
  };

  std::string matrix_spec;
  std::string matrix_file;
  auto add_matrix = [&](CLI::App* sub) {
    sub->add_option("--matrix", matrix_spec, "Catalog spec (ex3:theta=pi/3), inline JSON or file");
    sub->add_option("--matrix-file", matrix_file, "Path to a matrix JSON file");
  };

  std::string theta_text = "pi/3";
  int eps = 1;
  auto* cat = cli.add_subcommand("catalog", "List the four catalog matrices with their residuals");
  cat->add_option("--theta", theta_text, "Phase angle in radians or as k*pi/m");
  cat->add_option("--eps", eps, "Sign for ex1");
  add_common(cat);

  auto* braid = cli.add_subcommand("check-braid-eq", "Braid-equation residual of a matrix");
  add_matrix(braid);
  add_common(braid);

  bool as_r = false;
  auto* ybe = cli.add_subcommand("check-ybe", "Yang-Baxter residual of R = C*Sigma");
  add_matrix(ybe);
  ybe->add_flag("--as-r", as_r, "Treat the matrix itself as R");
  add_common(ybe);

  std::string n_text;
  std::string method_text = "auto";
  std::string expect_text;
  auto* idim = cli.add_subcommand("invariant-dim", "Dimension of the pure-braid invariant subspace");
  add_matrix(idim);
  idim->add_option("--n", n_text, "N or a range lo..hi")->required();
  idim->add_option("--method", method_text, "dense, phased or auto");
  idim->add_option("--expect", expect_text, "Expected dimension(s); mismatch exits 1");
  add_common(idim);

  int basis_n = 0;
  auto* ibasis = cli.add_subcommand("invariant-basis", "Orthonormal basis of the invariant subspace");
  add_matrix(ibasis);
  ibasis->add_option("--n", basis_n, "N")->required();
  ibasis->add_option("--method", method_text, "dense, phased or auto");
  add_common(ibasis);

  int h0 = 1;
  int proj_n = 0;
  auto* proj = cli.add_subcommand("verify-projection", "Compare the projection formula with brute force");
  add_matrix(proj);
  proj->add_option("--h0", h0, "Dimension of the single-particle space")->required();
  proj->add_option("--n", proj_n, "N")->required();
  add_common(proj);

  std::string beta_text;
  std::string expect_c;
  auto* betti = cli.add_subcommand("betti", "Braided L2-Betti numbers from an L2-Betti vector");
  add_matrix(betti);
  betti->add_option("--beta", beta_text, "Comma-separated beta_0..beta_d")->required();
  betti->add_option("--n", n_text, "N or a range lo..hi")->required();
  betti->add_option("--method", method_text, "dense, phased or auto");
  betti->add_option("--expect-c", expect_c, "Expected C_N^pi as p/q");
  add_common(betti);

  double chi = 0.0;
  int n_max = 30;
  std::string sign_text = "alternating";
  std::string c0_text = "extrapolated";
  std::optional<double> expect_limit;
  auto* str = cli.add_subcommand("supertrace", "Partial sums of the supertrace series");
  add_matrix(str);
  str->add_option("--chi", chi, "Euler characteristic")->required();
  str->add_option("--nmax", n_max, "Number of terms");
  str->add_option("--sign", sign_text, "plain or alternating");
  str->add_option("--c0", c0_text, "one or extrapolated");
  str->add_option("--expect-limit", expect_limit, "Expected limit within 1e-9");
  add_common(str);

  std::vector<std::string> sweep_matrices;
  std::string theta_list;
  int random_thetas = 0;
  std::uint64_t seed = 0;
  auto* sweep = cli.add_subcommand("sweep", "Invariant dimensions over matrices, N and theta");
  sweep->add_option("--matrix", sweep_matrices, "Matrix spec, repeatable; 'all' for the catalog")
      ->take_all();
  sweep->add_option("--n", n_text, "N or a range lo..hi")->required();
  sweep->add_option("--theta", theta_list, "Comma-separated theta grid");
  sweep->add_option("--random-thetas", random_thetas, "Additional seeded random thetas in (0, pi)");
  sweep->add_option("--seed", seed, "Seed for --random-thetas");
  sweep->add_option("--method", method_text, "dense, phased or auto");
  sweep->add_option("--expect", expect_text, "Expected dimension for every record");
  add_common(sweep);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    cli.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Runner r{out, err};
    r.format = parse_format(format_text, json_flag);
    r.tolerance = tol ? *tol : default_tolerance();
    if (r.tolerance <= 0.0) throw UsageError("tolerance must be positive");

    auto matrix = [&]() {
      if (matrix_spec.empty() == matrix_file.empty()) {
        throw UsageError("specify exactly one of --matrix or --matrix-file");
      }
      return parse_matrix_spec(matrix_spec.empty() ? matrix_file : matrix_spec);
    };

    if (cat->parsed()) return r.catalog_cmd(theta_text, eps);
    if (braid->parsed()) return r.check_braid_cmd(matrix());
    if (ybe->parsed()) return r.check_ybe_cmd(matrix(), as_r);
    if (idim->parsed()) {
      return r.invariant_dim_cmd(matrix(), parse_n_range(n_text), parse_method(method_text),
                                 expect_text);
    }
    if (ibasis->parsed()) return r.invariant_basis_cmd(matrix(), basis_n, parse_method(method_text));
    if (proj->parsed()) return r.verify_projection_cmd(matrix(), h0, proj_n);
    if (betti->parsed()) {
      return r.betti_cmd(matrix(), beta_text, parse_n_range(n_text), parse_method(method_text),
                         expect_c);
    }
    if (str->parsed()) return r.supertrace_cmd(matrix(), chi, n_max, sign_text, c0_text, expect_limit);
    if (sweep->parsed()) {
      return r.sweep_cmd(sweep_matrices, parse_n_range(n_text), theta_list, random_thetas, seed,
                         parse_method(method_text), expect_text);
    }
    throw UsageError("unknown subcommand");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GuardExceeded& e) {
    err << "size guard: " << e.what() << '\n';
    return kExitUsage;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerificationFailed;
  }
}

}  // namespace braidform::app
