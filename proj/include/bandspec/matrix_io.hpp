#ifndef BANDSPEC_MATRIX_IO_HPP
#define BANDSPEC_MATRIX_IO_HPP

#include <cstddef>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bandspec/banded.hpp"
#include "bandspec/errors.hpp"

namespace bandspec {

/// Matrix description read from a JSON file:
///
///   { "N": 1, "case": "A", "bound": 2.5,
///     "diagonals": { "-1": {"const": [1, 0]}, "0": {"head": [[0.3, 0.4]], "const": [0, 0]},
///                    "1": [[1, 0], [1, 0], ...] },
///     "rows": { "3": { "4": [0, 0] } } }
///
/// A diagonal is either a list (entry i is g_{n,n+o} for the i-th row that has
/// column n+o >= 0) or {"const": z} optionally preceded by "head" values. Missing
/// offsets are zero. List diagonals make the row range finite. "rows" overrides
/// single entries; entries outside the band are kept for validation.
template <class Real>
struct MatrixSpec {
  std::size_t N = 1;
  std::optional<Case> case_tag;
  std::optional<double> bound;
  BandedMatrix<Real> matrix;
};

namespace detail {

template <class Real>
Complex<Real> parse_complex(const nlohmann::json& v, const std::string& where) {
  if (v.is_number()) return Complex<Real>(Real(v.get<double>()));
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return Complex<Real>(Real(v[0].get<double>()), Real(v[1].get<double>()));
  throw ParseError(where + ": expected a complex number [re, im]");
}

template <class Real>
struct DiagonalData {
  std::vector<Complex<Real>> head;
  std::optional<Complex<Real>> tail;  ///< constant continuation; none for list diagonals
};

inline std::size_t parse_index(const std::string& key, const std::string& where) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(key, &pos);
  } catch (const std::exception&) {
    throw ParseError(where + ": '" + key + "' is not an integer");
  }
  if (pos != key.size() || v < 0) throw ParseError(where + ": '" + key + "' is not a nonnegative integer");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

template <class Real>
MatrixSpec<Real> parse_matrix_spec(const nlohmann::json& doc) {
  using detail::parse_complex;
  if (!doc.is_object()) throw ParseError("matrix file: top level must be an object");
  if (!doc.contains("N") || !doc["N"].is_number_integer() || doc["N"].get<long>() < 1)
    throw ParseError("matrix file: \"N\" must be a positive integer");
  const std::size_t N = doc["N"].get<std::size_t>();
  const int n = static_cast<int>(N);

  std::optional<Case> case_tag;
  if (doc.contains("case")) {
    if (!doc["case"].is_string()) throw ParseError("matrix file: \"case\" must be \"A\" or \"B\"");
    try {
      case_tag = parse_case(doc["case"].get<std::string>());
    } catch (const ArgumentError& e) {
      throw ParseError(std::string("matrix file: ") + e.what());
    }
  }
  std::optional<double> bound;
  if (doc.contains("bound")) {
    if (!doc["bound"].is_number() || !(doc["bound"].get<double>() > 0))
      throw ParseError("matrix file: \"bound\" must be a positive number");
    bound = doc["bound"].get<double>();
  }

  if (!doc.contains("diagonals") || !doc["diagonals"].is_object())
    throw ParseError("matrix file: \"diagonals\" object is required");
  std::map<int, detail::DiagonalData<Real>> diags;
  std::optional<std::size_t> extent;
  for (const auto& [key, value] : doc["diagonals"].items()) {
    std::size_t pos = 0;
    int offset = 0;
    try {
      offset = std::stoi(key, &pos);
    } catch (const std::exception&) {
      throw ParseError("matrix file: diagonal key '" + key + "' is not an integer");
    }
    if (pos != key.size()) throw ParseError("matrix file: diagonal key '" + key + "' is not an integer");
    if (offset < -n || offset > n)
      throw ParseError("matrix file: diagonal offset " + key + " lies outside -N..N");
    const std::string where = "diagonal " + key;
    detail::DiagonalData<Real> d;
    if (value.is_array()) {
      for (const auto& v : value) d.head.push_back(parse_complex<Real>(v, where));
      const std::size_t rows = d.head.size() + static_cast<std::size_t>(offset < 0 ? -offset : 0);
      extent = extent ? std::min(*extent, rows) : rows;
    } else if (value.is_object()) {
      if (!value.contains("const")) throw ParseError(where + ": object form needs \"const\"");
      d.tail = parse_complex<Real>(value["const"], where);
      if (value.contains("head")) {
        if (!value["head"].is_array()) throw ParseError(where + ": \"head\" must be a list");
        for (const auto& v : value["head"]) d.head.push_back(parse_complex<Real>(v, where));
      }
    } else {
      throw ParseError(where + ": expected a list or {\"const\": ...}");
    }
    diags[offset] = std::move(d);
  }

  std::map<std::pair<std::size_t, int>, Complex<Real>> overrides;
  std::vector<OffBandEntry<Real>> off_band;
  if (doc.contains("rows")) {
    if (!doc["rows"].is_object()) throw ParseError("matrix file: \"rows\" must be an object");
    for (const auto& [rkey, row] : doc["rows"].items()) {
      const std::size_t r = detail::parse_index(rkey, "rows");
      if (!row.is_object()) throw ParseError("matrix file: row " + rkey + " must be an object");
      if (extent && r >= *extent) throw ParseError("matrix file: row override " + rkey + " lies beyond the data");
      for (const auto& [ckey, v] : row.items()) {
        const std::size_t col = detail::parse_index(ckey, "row " + rkey);
        const auto value = parse_complex<Real>(v, "row " + rkey + " column " + ckey);
        const long offset = static_cast<long>(col) - static_cast<long>(r);
        if (offset > n || -offset > n)
          off_band.push_back({r, col, value});
        else
          overrides[{r, static_cast<int>(offset)}] = value;
      }
    }
  }

  auto shared_diags = std::make_shared<const std::map<int, detail::DiagonalData<Real>>>(std::move(diags));
  auto shared_over = std::make_shared<const std::map<std::pair<std::size_t, int>, Complex<Real>>>(std::move(overrides));
  auto generator = [shared_diags, shared_over](std::size_t row, int offset) {
    if (auto it = shared_over->find({row, offset}); it != shared_over->end()) return it->second;
    const auto d = shared_diags->find(offset);
    if (d == shared_diags->end()) return Complex<Real>(0);
    const std::size_t first = offset < 0 ? static_cast<std::size_t>(-offset) : 0;
    const std::size_t i = row - first;
    if (i < d->second.head.size()) return d->second.head[i];
    return d->second.tail ? *d->second.tail : Complex<Real>(0);
  };
  const double C = bound ? *bound : std::numeric_limits<double>::infinity();
  return MatrixSpec<Real>{N, case_tag, bound, BandedMatrix<Real>(N, generator, C, extent, std::move(off_band))};
}

template <class Real>
MatrixSpec<Real> load_matrix_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("matrix file '" + path + "': " + e.what());
  }
  return parse_matrix_spec<Real>(doc);
}

}  // namespace bandspec

#endif  // BANDSPEC_MATRIX_IO_HPP
