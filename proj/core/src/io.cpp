#include "onmf/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "onmf/errors.hpp"

namespace onmf {

namespace {

enum class Layout { Coordinate, Array };
enum class Field { Real, Integer, Pattern };
enum class Symmetry { General, Symmetric };

struct MmHeader {
  Layout layout = Layout::Coordinate;
  Field field = Field::Real;
  Symmetry symmetry = Symmetry::General;
};

// An entry of a parsed file plus the line it came from.
struct MmEntry {
  Index row;
  Index col;
  double value;
  std::size_t line;
};

struct MmFile {
  Index rows = 0;
  Index cols = 0;
  std::vector<MmEntry> entries;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string t; is >> t;) {
    out.push_back(t);
  }
  return out;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

double parse_double(const std::string& tok, const std::string& source, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = first + tok.size();
  if (!tok.empty() && *first == '+') {
    ++first;
  }
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(source, line, "invalid number '" + tok + "'");
  }
  return v;
}

long long parse_int(const std::string& tok, const std::string& source, std::size_t line) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(source, line, "invalid integer '" + tok + "'");
  }
  return v;
}

MmHeader parse_header(const std::string& line, const std::string& source) {
  const auto t = tokens(line);
  if (t.size() != 5 || lower(t[0]) != "%%matrixmarket" || lower(t[1]) != "matrix") {
    throw ParseError(source, 1, "expected '%%MatrixMarket matrix <format> <field> <symmetry>'");
  }
  MmHeader h;
  const std::string layout = lower(t[2]);
  const std::string field = lower(t[3]);
  const std::string symmetry = lower(t[4]);
  if (layout == "coordinate") {
    h.layout = Layout::Coordinate;
  } else if (layout == "array") {
    h.layout = Layout::Array;
  } else {
    throw ParseError(source, 1, "unsupported format '" + t[2] + "'");
  }
  if (field == "real" || field == "double") {
    h.field = Field::Real;
  } else if (field == "integer") {
    h.field = Field::Integer;
  } else if (field == "pattern" && h.layout == Layout::Coordinate) {
    h.field = Field::Pattern;
  } else {
    throw ParseError(source, 1, "unsupported field '" + t[3] + "'");
  }
  if (symmetry == "general") {
    h.symmetry = Symmetry::General;
  } else if (symmetry == "symmetric") {
    h.symmetry = Symmetry::Symmetric;
  } else {
    throw ParseError(source, 1, "unsupported symmetry '" + t[4] + "'");
  }
  return h;
}

double parse_value(const std::string& tok, Field field, const std::string& source,
                   std::size_t line) {
  const double v = field == Field::Integer ? static_cast<double>(parse_int(tok, source, line))
                                           : parse_double(tok, source, line);
  if (!std::isfinite(v)) {
    throw ParseError(source, line, "non-finite value '" + tok + "'");
  }
  return v;
}

MmFile parse_matrix_market(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) {
    throw ParseError(source, 1, "empty file");
  }
  ++lineno;
  const MmHeader h = parse_header(line, source);

  // Skip comments and blank lines up to the size line.
  std::vector<std::string> size_tok;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || line[line.find_first_not_of(" \t")] == '%') {
      continue;
    }
    size_tok = tokens(line);
    break;
  }
  const std::size_t expected_size_tokens = h.layout == Layout::Coordinate ? 3 : 2;
  if (size_tok.size() != expected_size_tokens) {
    throw ParseError(source, lineno, "malformed size line");
  }
  MmFile f;
  f.rows = parse_int(size_tok[0], source, lineno);
  f.cols = parse_int(size_tok[1], source, lineno);
  if (f.rows < 0 || f.cols < 0) {
    throw ParseError(source, lineno, "negative dimension");
  }
  if (h.symmetry == Symmetry::Symmetric && f.rows != f.cols) {
    throw ParseError(source, lineno, "symmetric matrix must be square");
  }
  long long count = 0;
  if (h.layout == Layout::Coordinate) {
    count = parse_int(size_tok[2], source, lineno);
    if (count < 0) {
      throw ParseError(source, lineno, "negative entry count");
    }
  } else if (h.symmetry == Symmetry::Symmetric) {
    count = static_cast<long long>(f.rows) * (f.rows + 1) / 2;
  } else {
    count = static_cast<long long>(f.rows) * f.cols;
  }

  const std::size_t value_tokens = h.field == Field::Pattern ? 0 : 1;
  const std::size_t entry_tokens = (h.layout == Layout::Coordinate ? 2 : 0) + value_tokens;
  // Array files walk the (lower-triangle for symmetric) columns in order.
  Index ai = 0;
  Index aj = 0;
  long long seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) {
      continue;
    }
    if (line[line.find_first_not_of(" \t")] == '%') {
      continue;
    }
    if (seen == count) {
      throw ParseError(source, lineno, "more entries than declared");
    }
    const auto t = tokens(line);
    if (t.size() != entry_tokens) {
      throw ParseError(source, lineno, "expected " + std::to_string(entry_tokens) + " fields");
    }
    MmEntry e{0, 0, 1.0, lineno};
    if (h.layout == Layout::Coordinate) {
      const long long i = parse_int(t[0], source, lineno);
      const long long j = parse_int(t[1], source, lineno);
      if (i < 1 || i > f.rows || j < 1 || j > f.cols) {
        throw ParseError(source, lineno, "index out of range");
      }
      e.row = static_cast<Index>(i - 1);
      e.col = static_cast<Index>(j - 1);
      if (h.field != Field::Pattern) {
        e.value = parse_value(t[2], h.field, source, lineno);
      }
    } else {
      e.row = ai;
      e.col = aj;
      e.value = parse_value(t[0], h.field, source, lineno);
      if (++ai == f.rows) {
        ++aj;
        ai = h.symmetry == Symmetry::Symmetric ? aj : 0;
      }
    }
    if (h.symmetry == Symmetry::Symmetric && e.row < e.col) {
      throw ParseError(source, lineno, "symmetric file lists an upper-triangle entry");
    }
    f.entries.push_back(e);
    if (h.symmetry == Symmetry::Symmetric && e.row != e.col) {
      f.entries.push_back({e.col, e.row, e.value, lineno});
    }
    ++seen;
  }
  if (seen != count) {
    throw ParseError(source, lineno + 1,
                     "expected " + std::to_string(count) + " entries, found " +
                         std::to_string(seen));
  }
  return f;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw IoError("write to '" + path.string() + "' failed");
  }
}

std::string format17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void LabeledDataset::validate() const {
  if (doc_labels && static_cast<Index>(doc_labels->indices.size()) != matrix.cols()) {
    throw ShapeError("document labels: expected " + std::to_string(matrix.cols()) + ", got " +
                     std::to_string(doc_labels->indices.size()));
  }
  if (word_labels && static_cast<Index>(word_labels->indices.size()) != matrix.rows()) {
    throw ShapeError("word labels: expected " + std::to_string(matrix.rows()) + ", got " +
                     std::to_string(word_labels->indices.size()));
  }
}

DataMatrix read_matrix_market(std::istream& in, const std::string& source) {
  const MmFile f = parse_matrix_market(in, source);
  std::vector<Triplet> triplets;
  triplets.reserve(f.entries.size());
  for (const MmEntry& e : f.entries) {
    if (e.value < 0.0) {
      throw DomainError(source + ":" + std::to_string(e.line) + ": negative value " +
                        format17(e.value));
    }
    if (e.value != 0.0) {
      triplets.emplace_back(e.row, e.col, e.value);
    }
  }
  return DataMatrix::from_triplets(f.rows, f.cols, triplets);
}

DataMatrix read_matrix_market(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_matrix_market(in, path.string());
}

Matrix read_dense_matrix(std::istream& in, const std::string& source) {
  const MmFile f = parse_matrix_market(in, source);
  Matrix X = Matrix::Zero(f.rows, f.cols);
  for (const MmEntry& e : f.entries) {
    X(e.row, e.col) += e.value;
  }
  return X;
}

Matrix read_dense_matrix(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_dense_matrix(in, path.string());
}

void write_dense_matrix(const Matrix& X, std::ostream& out) {
  out << "%%MatrixMarket matrix array real general\n" << X.rows() << ' ' << X.cols() << '\n';
  for (Index j = 0; j < X.cols(); ++j) {
    for (Index i = 0; i < X.rows(); ++i) {
      out << format17(X(i, j)) << '\n';
    }
  }
}

void write_dense_matrix(const Matrix& X, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_dense_matrix(X, out);
  finish(out, path);
}

LabelSet read_labels(std::istream& in, const std::string& source) {
  LabelSet set;
  std::unordered_map<std::string, int> index;
  std::string line;
  std::size_t lineno = 0;
  std::size_t first_blank = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = tokens(line);
    if (t.empty()) {
      if (first_blank == 0) {
        first_blank = lineno;
      }
      continue;
    }
    if (first_blank != 0) {
      throw ParseError(source, first_blank, "blank line between labels");
    }
    if (t.size() != 1) {
      throw ParseError(source, lineno, "expected one label per line");
    }
    auto [it, inserted] = index.emplace(t[0], static_cast<int>(set.names.size()));
    if (inserted) {
      set.names.push_back(t[0]);
    }
    set.indices.push_back(it->second);
  }
  if (set.indices.empty()) {
    throw DegenerateInputError(source + ": no labels");
  }
  return set;
}

LabelSet read_labels(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_labels(in, path.string());
}

void write_trace_csv(const IterationTrace& trace, std::ostream& out) {
  if (trace.empty()) {
    throw DegenerateInputError("cannot write an empty trace");
  }
  out << "iter,objective,inner_iters,violation\n";
  for (const TraceEntry& e : trace.entries) {
    out << e.iter << ',' << format17(e.objective) << ',' << e.total_inner() << ','
        << (e.violation ? 1 : 0) << '\n';
  }
}

void write_trace_csv(const IterationTrace& trace, const std::filesystem::path& path) {
  if (trace.empty()) {
    throw DegenerateInputError("cannot write an empty trace");
  }
  auto out = open_out(path);
  write_trace_csv(trace, out);
  finish(out, path);
}

std::vector<TraceRow> read_trace_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line) || line != "iter,objective,inner_iters,violation") {
    throw ParseError(source, 1, "expected trace header");
  }
  std::vector<TraceRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> f;
    std::istringstream is(line);
    for (std::string cell; std::getline(is, cell, ',');) {
      f.push_back(cell);
    }
    if (f.size() != 4) {
      throw ParseError(source, lineno, "expected 4 fields");
    }
    TraceRow r;
    r.iter = static_cast<int>(parse_int(f[0], source, lineno));
    r.objective = parse_double(f[1], source, lineno);
    r.inner_iters = static_cast<int>(parse_int(f[2], source, lineno));
    const long long v = parse_int(f[3], source, lineno);
    if (v != 0 && v != 1) {
      throw ParseError(source, lineno, "violation flag must be 0 or 1");
    }
    r.violation = v == 1;
    rows.push_back(r);
  }
  return rows;
}

std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_trace_csv(in, path.string());
}

void write_factors(const FactorSet& F, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  }
  write_dense_matrix(F.B, dir / "B.mtx");
  write_dense_matrix(F.C, dir / "C.mtx");
  if (F.S) {
    write_dense_matrix(*F.S, dir / "S.mtx");
  } else {
    std::filesystem::remove(dir / "S.mtx", ec);
  }
}

FactorSet read_factors(const std::filesystem::path& dir) {
  FactorSet F;
  F.B = read_dense_matrix(dir / "B.mtx");
  F.C = read_dense_matrix(dir / "C.mtx");
  if (std::filesystem::exists(dir / "S.mtx")) {
    F.S = read_dense_matrix(dir / "S.mtx");
  }
  if (F.B.cols() != F.C.rows() ||
      (F.S && (F.S->rows() != F.B.cols() || F.S->cols() != F.C.rows()))) {
    throw ShapeError("factor files in '" + dir.string() + "' have inconsistent ranks");
  }
  return F;
}

void write_scores_csv(const ClusteringScores& scores, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "mi,entropy,purity,fmeasure\n"
      << format17(scores.mutual_information) << ',' << format17(scores.entropy) << ','
      << format17(scores.purity) << ',' << format17(scores.fmeasure) << '\n';
  finish(out, path);
}

}  // namespace onmf
