#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "onmf/onmf.hpp"

using namespace onmf;
namespace fs = std::filesystem;

namespace {

DataMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return read_matrix_market(in, "mem");
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "onmf_io_test";
  fs::create_directories(dir);
  return dir / name;
}

IterationTrace sample_trace(int n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  IterationTrace t;
  for (int k = 0; k < n; ++k) {
    t.entries.push_back({k, u(rng) / 3.0, {k % 2, k % 3, 0}, k % 4 == 1, {}});
  }
  return t;
}

}  // namespace

TEST(MatrixMarket, CoordinateIdentity) {
  const DataMatrix A = parse(
      "%%MatrixMarket matrix coordinate real general\n% comment\n2 2 2\n1 1 1.0\n2 2 1.0\n");
  EXPECT_EQ(A.to_dense(), Matrix::Identity(2, 2));
}

TEST(MatrixMarket, NegativeValueIsDomainError) {
  EXPECT_THROW(parse("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 -1\n"),
               DomainError);
}

TEST(MatrixMarket, DuplicatesAreSummed) {
  const DataMatrix A =
      parse("%%MatrixMarket matrix coordinate real general\n2 3 3\n1 2 0.25\n2 3 4\n1 2 1.5\n");
  const Matrix d = A.to_dense();
  EXPECT_EQ(d(0, 1), 0.25 + 1.5);
  EXPECT_EQ(d(1, 2), 4.0);
  EXPECT_EQ(A.rows(), 2);
  EXPECT_EQ(A.cols(), 3);
}

TEST(MatrixMarket, ArrayIntegerPatternAndSymmetric) {
  const Matrix arr = parse("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n")
                         .to_dense();
  Matrix expect(2, 2);
  expect << 1, 3, 2, 4;
  EXPECT_EQ(arr, expect);

  const Matrix pat =
      parse("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n2 1\n").to_dense();
  EXPECT_EQ(pat(1, 0), 1.0);

  const Matrix sym =
      parse("%%MatrixMarket matrix coordinate integer symmetric\n2 2 2\n1 1 5\n2 1 7\n")
          .to_dense();
  EXPECT_EQ(sym(0, 1), 7.0);
  EXPECT_EQ(sym(1, 0), 7.0);
  EXPECT_EQ(sym(0, 0), 5.0);
}

TEST(MatrixMarket, MalformedInputReportsLine) {
  EXPECT_EQ(parse_error_line("%%MatrixMarket matrix coordinate complex general\n1 1 1\n"), 1u);
  EXPECT_EQ(parse_error_line("%%MatrixMarket matrix coordinate real general\n2 2\n"), 2u);
  EXPECT_EQ(
      parse_error_line("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n1 x 2\n"),
      4u);
  EXPECT_EQ(
      parse_error_line("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n"), 3u);
  EXPECT_EQ(parse_error_line("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n"),
            4u);
  EXPECT_EQ(parse_error_line(
                "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1\n2 2 2\n"),
            4u);
  EXPECT_EQ(parse_error_line("not a header\n"), 1u);
  EXPECT_EQ(parse_error_line("%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 nan\n"),
            3u);
}

TEST(MatrixMarket, MissingFileIsIoError) {
  EXPECT_THROW(read_matrix_market(fs::path("/nonexistent/x.mtx")), IoError);
}

TEST(DenseFiles, RoundTripIsBitExact) {
  std::mt19937_64 rng(3);
  const Matrix X = oracle::random_matrix(7, 3, rng, 0.0, 1e3) / 7.0;
  const fs::path p = scratch("x.mtx");
  write_dense_matrix(X, p);
  EXPECT_EQ(read_dense_matrix(p), X);
  std::ifstream in(p);
  std::string header, dims;
  std::getline(in, header);
  std::getline(in, dims);
  EXPECT_EQ(dims, "7 3");
}

TEST(Factors, RoundTripWithAndWithoutS) {
  std::mt19937_64 rng(4);
  FactorSet F{oracle::random_matrix(5, 2, rng), oracle::random_matrix(2, 6, rng),
              oracle::random_matrix(2, 2, rng)};
  const fs::path dir = scratch("factors");
  write_factors(F, dir);
  FactorSet G = read_factors(dir);
  EXPECT_EQ(G.B, F.B);
  EXPECT_EQ(G.C, F.C);
  ASSERT_TRUE(G.S.has_value());
  EXPECT_EQ(*G.S, *F.S);

  F.S.reset();
  write_factors(F, dir);
  EXPECT_FALSE(fs::exists(dir / "S.mtx"));
  G = read_factors(dir);
  EXPECT_FALSE(G.S.has_value());
  EXPECT_THROW(read_factors(scratch("no_such_dir")), IoError);
}

TEST(Labels, FirstAppearanceOrder) {
  std::istringstream a("a\nb\na\n");
  const LabelSet s = read_labels(a, "mem");
  EXPECT_EQ(s.indices, (std::vector<int>{0, 1, 0}));
  EXPECT_EQ(s.names, (std::vector<std::string>{"a", "b"}));
  std::istringstream x("x");
  EXPECT_EQ(read_labels(x, "mem").indices, (std::vector<int>{0}));
  std::istringstream trailing("x\ny\n\n\n");
  EXPECT_EQ(read_labels(trailing, "mem").indices.size(), 2u);
}

TEST(Labels, BlankInteriorLineAndEmptyFile) {
  std::istringstream gap("a\n\nb\n");
  try {
    read_labels(gap, "labels.txt");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("labels.txt:2"), std::string::npos);
  }
  std::istringstream empty("");
  EXPECT_THROW(read_labels(empty, "mem"), DegenerateInputError);
}

TEST(Labels, DatasetValidation) {
  LabeledDataset d{DataMatrix::from_dense(Matrix::Ones(2, 3)), LabelSet{{0, 1}, {"a", "b"}},
                   std::nullopt};
  EXPECT_THROW(d.validate(), ShapeError);
  d.doc_labels->indices.push_back(0);
  EXPECT_NO_THROW(d.validate());
}

TEST(TraceCsv, LineCountsAndRoundTrip) {
  for (int n : {1, 21}) {
    const IterationTrace t = sample_trace(n);
    const fs::path p = scratch("trace" + std::to_string(n) + ".csv");
    write_trace_csv(t, p);
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "iter,objective,inner_iters,violation");
    int lines = 1;
    while (std::getline(in, line)) ++lines;
    EXPECT_EQ(lines, n + 1);

    const std::vector<TraceRow> rows = read_trace_csv(p);
    ASSERT_EQ(rows.size(), t.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      EXPECT_EQ(rows[k].iter, t.entries[k].iter);
      EXPECT_EQ(rows[k].objective, t.entries[k].objective);
      EXPECT_EQ(rows[k].inner_iters, t.entries[k].total_inner());
      EXPECT_EQ(rows[k].violation, t.entries[k].violation);
    }
  }
  EXPECT_THROW(write_trace_csv(IterationTrace{}, scratch("empty.csv")), DegenerateInputError);
  EXPECT_THROW(write_trace_csv(sample_trace(2), fs::path("/nonexistent/t.csv")), IoError);
}
