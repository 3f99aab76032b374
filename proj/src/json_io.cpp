#include "braidform/json_io.hpp"

#include <cmath>

#include "braidform/errors.hpp"

namespace braidform {

ordered_json braid_word_to_json(const BraidWord& w) {
  ordered_json letters = ordered_json::array();
  for (const auto& l : w.letters()) letters.push_back({l.generator, l.exponent});
  return {{"strands", w.strands()}, {"letters", std::move(letters)}};
}

BraidWord braid_word_from_json(const nlohmann::json& j) {
  try {
    std::vector<Letter> letters;
    for (const auto& item : j.at("letters")) {
      if (!item.is_array() || item.size() != 2) throw InvalidArgument("letter must be [i, s]");
      letters.push_back({item[0].get<int>(), item[1].get<int>()});
    }
    return BraidWord(j.at("strands").get<int>(), std::move(letters));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed braid word JSON: ") + e.what());
  }
}

ordered_json rmatrix_to_json(const RMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < 4; ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < 4; ++c) row.push_back({m.entries(r, c).real(), m.entries(r, c).imag()});
    rows.push_back(std::move(row));
  }
  ordered_json out = {{"entries", std::move(rows)}};
  if (m.provenance) {
    out["tag"] = std::string(to_string(m.provenance->tag));
    out["theta"] = m.provenance->theta.value();
    out["epsilon"] = m.provenance->epsilon;
  }
  return out;
}

RMatrix rmatrix_from_json(const nlohmann::json& j) {
  RMatrix m;
  try {
    const auto& rows = j.at("entries");
    if (!rows.is_array() || rows.size() != 4) throw InvalidArgument("entries must be a 4x4 array");
    for (int r = 0; r < 4; ++r) {
      const auto& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || row.size() != 4) throw InvalidArgument("entries must be a 4x4 array");
      for (int c = 0; c < 4; ++c) {
        const auto& z = row[static_cast<std::size_t>(c)];
        if (z.is_number()) {
          m.entries(r, c) = Complex(z.get<double>(), 0.0);
        } else if (z.is_array() && z.size() == 2) {
          m.entries(r, c) = Complex(z[0].get<double>(), z[1].get<double>());
        } else {
          throw InvalidArgument("matrix entry must be [re, im]");
        }
        if (!std::isfinite(m.entries(r, c).real()) || !std::isfinite(m.entries(r, c).imag())) {
          throw InvalidArgument("matrix entries must be finite");
        }
      }
    }
    if (j.contains("tag")) {
      const auto tag = parse_catalog_tag(j.at("tag").get<std::string>());
      if (!tag) throw InvalidArgument("unknown catalog tag in matrix JSON");
      const double theta = j.value("theta", 0.0);
      const int eps = j.value("epsilon", 1);
      const RMatrix expected = catalog(*tag, PhaseAngle::radians(theta), eps);
      if ((expected.entries - m.entries).norm() > 1e-12) {
        throw InvalidArgument("matrix entries disagree with catalog tag " +
                              std::string(to_string(*tag)));
      }
      m.provenance = expected.provenance;
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed matrix JSON: ") + e.what());
  }
  return m;
}

}  // namespace braidform
