#include <complex>
#include <string>

#include <gtest/gtest.h>

#include "bandspec/matrix_io.hpp"

using namespace bandspec;
using C = std::complex<double>;
using nlohmann::json;

TEST(MatrixSpec, ConstantDiagonals) {
  const auto spec = parse_matrix_spec<double>(json::parse(R"({"N": 1, "case": "A", "bound": 2,
      "diagonals": {"-1": {"const": [1, 0]}, "1": {"const": [1, 0]}}})"));
  EXPECT_EQ(spec.N, 1u);
  EXPECT_EQ(spec.case_tag, Case::A);
  EXPECT_EQ(spec.matrix.bound(), 2.0);
  EXPECT_FALSE(spec.matrix.row_extent().has_value());
  EXPECT_EQ(spec.matrix(0, 0), C(0));
  EXPECT_EQ(spec.matrix(0, 1), C(1));
  EXPECT_EQ(spec.matrix(7, 6), C(1));
  EXPECT_EQ(spec.matrix(100, 101), C(1));
}

TEST(MatrixSpec, HeadThenConstant) {
  const auto spec = parse_matrix_spec<double>(json::parse(R"({"N": 1,
      "diagonals": {"0": {"head": [[0.3, 0.4]], "const": 0}, "1": {"const": 1}, "-1": {"const": 1}}})"));
  EXPECT_FALSE(spec.case_tag.has_value());
  EXPECT_EQ(spec.matrix(0, 0), C(0.3, 0.4));
  EXPECT_EQ(spec.matrix(1, 1), C(0));
  EXPECT_TRUE(std::isinf(spec.matrix.bound()));
}

TEST(MatrixSpec, ListDiagonalsBoundTheRows) {
  const auto spec = parse_matrix_spec<double>(json::parse(R"({"N": 1,
      "diagonals": {"-1": [[2, 0], [3, 0]], "0": [1, 1, 1, 1], "1": [[5, 0], [6, 0], [7, 0]]}})"));
  ASSERT_TRUE(spec.matrix.row_extent().has_value());
  EXPECT_EQ(*spec.matrix.row_extent(), 3u);
  EXPECT_EQ(spec.matrix(1, 0), C(2));
  EXPECT_EQ(spec.matrix(2, 1), C(3));
  EXPECT_EQ(spec.matrix(2, 3), C(7));
}

TEST(MatrixSpec, RowOverrides) {
  const auto spec = parse_matrix_spec<double>(json::parse(R"({"N": 1,
      "diagonals": {"-1": {"const": 1}, "1": {"const": 1}},
      "rows": {"2": {"3": [0, 2], "6": [1, 0]}}})"));
  EXPECT_EQ(spec.matrix(2, 3), C(0, 2));
  EXPECT_EQ(spec.matrix(3, 2), C(1));
  ASSERT_EQ(spec.matrix.off_band_entries().size(), 1u);
  const auto r = validate(spec.matrix, Case::A, 5);
  EXPECT_FALSE(r.valid());
}

TEST(MatrixSpec, Errors) {
  const char* bad[] = {
      R"([1, 2])",
      R"({"diagonals": {}})",
      R"({"N": 0, "diagonals": {}})",
      R"({"N": 1})",
      R"({"N": 1, "case": "C", "diagonals": {}})",
      R"({"N": 1, "diagonals": {"2": {"const": 1}}})",
      R"({"N": 1, "diagonals": {"x": {"const": 1}}})",
      R"({"N": 1, "diagonals": {"0": {"head": [1]}}})",
      R"({"N": 1, "diagonals": {"0": [[1, 2, 3]]}})",
      R"({"N": 1, "diagonals": {"0": "one"}})",
      R"({"N": 1, "bound": -1, "diagonals": {}})",
      R"({"N": 1, "diagonals": {}, "rows": {"-1": {"0": 1}}})",
      R"({"N": 1, "diagonals": {"0": [1, 1]}, "rows": {"5": {"5": 1}}})",
  };
  for (const char* text : bad) EXPECT_THROW(parse_matrix_spec<double>(json::parse(text)), ParseError) << text;
}

TEST(MatrixSpec, MissingFile) {
  EXPECT_THROW(load_matrix_spec<double>("/nonexistent/matrix.json"), ParseError);
}

TEST(MatrixSpec, SampleFiles) {
  const std::string dir = BANDSPEC_SAMPLES_DIR;
  const auto fj = load_matrix_spec<Extended>(dir + "/free_jacobi.json");
  EXPECT_TRUE(validate(fj.matrix, Case::A, 40).valid());
  const auto broken = load_matrix_spec<double>(dir + "/broken.json");
  EXPECT_FALSE(validate(broken.matrix, Case::A, 6).valid());
  const auto monic = load_matrix_spec<double>(dir + "/monic_pentadiagonal.json");
  EXPECT_EQ(monic.case_tag, Case::B);
  EXPECT_TRUE(validate(monic.matrix, Case::B, 40).valid());
}
