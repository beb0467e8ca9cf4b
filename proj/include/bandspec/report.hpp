#ifndef BANDSPEC_REPORT_HPP
#define BANDSPEC_REPORT_HPP

#include <charconv>
#include <complex>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bandspec/dense.hpp"
#include "bandspec/errors.hpp"
#include "bandspec/polynomial.hpp"

namespace bandspec {

/// Shortest decimal that round-trips to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline nlohmann::json complex_json(std::complex<double> z) { return nlohmann::json::array({z.real(), z.imag()}); }

template <class Real>
nlohmann::json complex_json(const Complex<Real>& z) {
  return complex_json(to_double(z));
}

template <class Real>
nlohmann::json matrix_json(const CMatrix<Real>& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class Real>
nlohmann::json polynomial_json(const Polynomial<Real>& p) {
  auto out = nlohmann::json::array();
  for (const auto& c : p.coeffs()) out.push_back(complex_json(c));
  return out;
}

/// Comma separated table written row by row.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw ParseError("cannot write '" + path + "'");
    write_row(header);
  }

  void write_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

inline void write_json_file(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace bandspec

#endif  // BANDSPEC_REPORT_HPP
