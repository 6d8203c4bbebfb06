#include <algorithm>
#include <sstream>
#include <tuple>

#include "exact.hpp"

namespace stratacode {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::UnknownStratum: return "UnknownStratum";
    case ErrorCode::TransitivityViolation: return "TransitivityViolation";
    case ErrorCode::MissingCover: return "MissingCover";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::NotAComplex: return "NotAComplex";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::TorsionChainModule: return "TorsionChainModule";
    case ErrorCode::IncompatibleCocone: return "IncompatibleCocone";
    case ErrorCode::NotAChainMap: return "NotAChainMap";
    case ErrorCode::EmbeddingNotFull: return "EmbeddingNotFull";
    case ErrorCode::DegeneratePairing: return "DegeneratePairing";
    case ErrorCode::SizeExceeded: return "SizeExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

std::string_view ring_name(Ring ring) { return ring == Ring::GF2 ? "F2" : "Z"; }

std::optional<Ring> parse_ring(std::string_view name) {
  if (name == "F2" || name == "GF2") return Ring::GF2;
  if (name == "Z" || name == "INT") return Ring::INT;
  return std::nullopt;
}

Integer normalize(Ring ring, const Integer& value) {
  if (ring == Ring::INT) return value;
  return mpz_odd_p(value.get_mpz_t()) ? Integer(1) : Integer(0);
}

Integer dot(Ring ring, std::span<const Integer> a, std::span<const Integer> b) {
  if (a.size() != b.size()) {
    fail(ErrorCode::DimensionMismatch, "dot product of vectors with different lengths");
  }
  Integer acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
  }
  return normalize(ring, acc);
}

bool is_zero_vector(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

namespace {

bool entry_less(const Entry& a, const Entry& b) {
  return std::tie(a.row, a.col) < std::tie(b.row, b.col);
}

void check_same_ring(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.ring() != b.ring()) fail(ErrorCode::RingMismatch, "matrix rings differ");
}

}  // namespace

SparseMatrix::SparseMatrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols) {}

SparseMatrix SparseMatrix::from_triples(Ring ring, std::size_t rows, std::size_t cols,
                                        std::vector<Entry> entries) {
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols) {
      fail(ErrorCode::DimensionMismatch,
           "entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
               ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    }
  }
  std::sort(entries.begin(), entries.end(), entry_less);
  SparseMatrix m(ring, rows, cols);
  m.entries_.reserve(entries.size());
  for (auto& e : entries) {
    if (!m.entries_.empty() && m.entries_.back().row == e.row &&
        m.entries_.back().col == e.col) {
      m.entries_.back().value += e.value;
    } else {
      m.entries_.push_back(std::move(e));
    }
  }
  std::erase_if(m.entries_, [ring](Entry& e) {
    e.value = normalize(ring, e.value);
    return e.value == 0;
  });
  return m;
}

SparseMatrix SparseMatrix::from_rows(Ring ring,
                                     std::initializer_list<std::initializer_list<long>> rows,
                                     std::size_t cols_if_empty) {
  std::size_t cols = rows.size() == 0 ? cols_if_empty : rows.begin()->size();
  std::vector<Entry> entries;
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != cols) fail(ErrorCode::DimensionMismatch, "ragged matrix literal");
    std::size_t c = 0;
    for (long v : row) {
      if (v != 0) entries.push_back({r, c, Integer(v)});
      ++c;
    }
    ++r;
  }
  return from_triples(ring, rows.size(), cols, std::move(entries));
}

SparseMatrix SparseMatrix::from_dense(Ring ring, std::size_t rows, std::size_t cols,
                                      std::span<const Integer> row_major) {
  if (row_major.size() != rows * cols) {
    fail(ErrorCode::DimensionMismatch, "dense data does not match shape");
  }
  std::vector<Entry> entries;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Integer& v = row_major[r * cols + c];
      if (v != 0) entries.push_back({r, c, v});
    }
  }
  return from_triples(ring, rows, cols, std::move(entries));
}

SparseMatrix SparseMatrix::identity(Ring ring, std::size_t n) {
  SparseMatrix m(ring, n, n);
  m.entries_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) m.entries_.push_back({i, i, Integer(1)});
  return m;
}

SparseMatrix SparseMatrix::column_vector(Ring ring, std::span<const Integer> v) {
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) entries.push_back({i, 0, v[i]});
  }
  return from_triples(ring, v.size(), 1, std::move(entries));
}

SparseMatrix SparseMatrix::from_columns(Ring ring, std::size_t rows,
                                        const std::vector<Vector>& columns) {
  std::vector<Entry> entries;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) {
      fail(ErrorCode::DimensionMismatch, "column length does not match row count");
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (columns[c][r] != 0) entries.push_back({r, c, columns[c][r]});
    }
  }
  return from_triples(ring, rows, columns.size(), std::move(entries));
}

Integer SparseMatrix::at(std::size_t row, std::size_t col) const {
  Entry key{row, col, Integer(0)};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key, entry_less);
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return 0;
}

Vector SparseMatrix::column(std::size_t col) const {
  Vector v(rows_, Integer(0));
  for (const auto& e : entries_) {
    if (e.col == col) v[e.row] = e.value;
  }
  return v;
}

Vector SparseMatrix::row(std::size_t row) const {
  Vector v(cols_, Integer(0));
  for (const auto& e : entries_) {
    if (e.row == row) v[e.col] = e.value;
  }
  return v;
}

std::vector<Vector> SparseMatrix::column_list() const {
  std::vector<Vector> cols(cols_, Vector(rows_, Integer(0)));
  for (const auto& e : entries_) cols[e.col][e.row] = e.value;
  return cols;
}

std::vector<Integer> SparseMatrix::to_dense() const {
  std::vector<Integer> d(rows_ * cols_, Integer(0));
  for (const auto& e : entries_) d[e.row * cols_ + e.col] = e.value;
  return d;
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<Entry> t;
  t.reserve(entries_.size());
  for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
  std::sort(t.begin(), t.end(), entry_less);
  SparseMatrix m(ring_, cols_, rows_);
  m.entries_ = std::move(t);
  return m;
}

SparseMatrix SparseMatrix::negated() const {
  SparseMatrix m = *this;
  if (ring_ == Ring::INT) {
    for (auto& e : m.entries_) e.value = -e.value;
  }
  return m;
}

SparseMatrix SparseMatrix::select_columns(std::span<const std::size_t> cols) const {
  std::vector<std::size_t> position(cols_, SIZE_MAX);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] >= cols_) fail(ErrorCode::DimensionMismatch, "column index out of range");
    position[cols[i]] = i;
  }
  std::vector<Entry> out;
  for (const auto& e : entries_) {
    if (position[e.col] != SIZE_MAX) out.push_back({e.row, position[e.col], e.value});
  }
  // A column index listed twice is allowed; handle it by a slow path.
  std::vector<std::size_t> sorted(cols.begin(), cols.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    out.clear();
    for (std::size_t i = 0; i < cols.size(); ++i) {
      for (const auto& e : entries_) {
        if (e.col == cols[i]) out.push_back({e.row, i, e.value});
      }
    }
  }
  return from_triples(ring_, rows_, cols.size(), std::move(out));
}

SparseMatrix SparseMatrix::select_rows(std::span<const std::size_t> rows) const {
  return transpose().select_columns(rows).transpose();
}

SparseMatrix SparseMatrix::with_ring(Ring ring) const {
  std::vector<Entry> out(entries_.begin(), entries_.end());
  return from_triples(ring, rows_, cols_, std::move(out));
}

SparseMatrix SparseMatrix::embedded(std::size_t rows, std::size_t cols,
                                    std::size_t row_offset, std::size_t col_offset) const {
  if (row_offset + rows_ > rows || col_offset + cols_ > cols) {
    fail(ErrorCode::DimensionMismatch, "embedding does not fit");
  }
  SparseMatrix m(ring_, rows, cols);
  m.entries_.reserve(entries_.size());
  for (const auto& e : entries_) {
    m.entries_.push_back({e.row + row_offset, e.col + col_offset, e.value});
  }
  return m;
}

Vector SparseMatrix::apply(std::span<const Integer> v) const {
  if (v.size() != cols_) fail(ErrorCode::DimensionMismatch, "vector length mismatch");
  Vector out(rows_, Integer(0));
  for (const auto& e : entries_) {
    if (v[e.col] != 0) out[e.row] += e.value * v[e.col];
  }
  for (auto& x : out) x = normalize(ring_, x);
  return out;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& other) const {
  check_same_ring(*this, other);
  if (cols_ != other.rows_) {
    fail(ErrorCode::DimensionMismatch,
         "cannot multiply " + std::to_string(rows_) + "x" + std::to_string(cols_) +
             " by " + std::to_string(other.rows_) + "x" + std::to_string(other.cols_));
  }
  std::vector<std::size_t> row_start(other.rows_ + 1, 0);
  for (const auto& e : other.entries_) ++row_start[e.row + 1];
  for (std::size_t i = 0; i < other.rows_; ++i) row_start[i + 1] += row_start[i];

  SparseMatrix out(ring_, rows_, other.cols_);
  std::vector<Integer> acc(other.cols_, Integer(0));
  std::vector<std::uint8_t> touched(other.cols_, 0);
  std::vector<std::size_t> touched_list;
  std::size_t i = 0;
  while (i < entries_.size()) {
    const std::size_t row = entries_[i].row;
    for (; i < entries_.size() && entries_[i].row == row; ++i) {
      const Entry& a = entries_[i];
      for (std::size_t j = row_start[a.col]; j < row_start[a.col + 1]; ++j) {
        const Entry& b = other.entries_[j];
        if (!touched[b.col]) {
          touched[b.col] = 1;
          touched_list.push_back(b.col);
        }
        if (ring_ == Ring::GF2) {
          acc[b.col] += 1;
        } else {
          acc[b.col] += a.value * b.value;
        }
      }
    }
    std::sort(touched_list.begin(), touched_list.end());
    for (std::size_t c : touched_list) {
      Integer v = normalize(ring_, acc[c]);
      if (v != 0) out.entries_.push_back({row, c, std::move(v)});
      acc[c] = 0;
      touched[c] = 0;
    }
    touched_list.clear();
  }
  return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& other) const {
  check_same_ring(*this, other);
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    fail(ErrorCode::DimensionMismatch, "cannot add matrices of different shapes");
  }
  std::vector<Entry> all(entries_.begin(), entries_.end());
  all.insert(all.end(), other.entries_.begin(), other.entries_.end());
  return from_triples(ring_, rows_, cols_, std::move(all));
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& other) const {
  return *this + other.negated();
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.ring_ != b.ring_ || a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  if (a.entries_.size() != b.entries_.size()) return false;
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    const Entry& x = a.entries_[i];
    const Entry& y = b.entries_[i];
    if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
  }
  return true;
}

std::string SparseMatrix::debug_string() const {
  std::ostringstream os;
  os << ring_name(ring_) << " " << rows_ << "x" << cols_;
  if (rows_ * cols_ <= 400) {
    auto d = to_dense();
    os << " [";
    for (std::size_t r = 0; r < rows_; ++r) {
      os << (r ? "; " : "");
      for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << d[r * cols_ + c].get_str();
    }
    os << "]";
  } else {
    os << " nnz=" << entries_.size();
  }
  return os.str();
}

}  // namespace stratacode
