#pragma once

// Exact linear algebra over GF(2) and the integers.
//
// SparseMatrix is the exchange type used by every other module. Heavy
// elimination happens on dense working copies: BitMatrix for GF(2) and
// IntMatrix (arbitrary precision) for the integers.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace stratacode {

using Integer = mpz_class;
using Vector = std::vector<Integer>;

enum class Ring { GF2, INT };

std::string_view ring_name(Ring ring);  // "F2" or "Z"
std::optional<Ring> parse_ring(std::string_view name);

struct Entry {
  std::size_t row = 0;
  std::size_t col = 0;
  Integer value;
};

/// Coordinate-list matrix in canonical row-major order. Over GF2 every stored
/// coefficient is 1; no zero is ever stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(Ring ring, std::size_t rows, std::size_t cols);

  /// Duplicate coordinates are summed (mod 2 over GF2); zeros are dropped.
  static SparseMatrix from_triples(Ring ring, std::size_t rows,
                                   std::size_t cols, std::vector<Entry> entries);
  /// Dense literal, convenient for small fixed matrices.
  static SparseMatrix from_rows(Ring ring,
                                std::initializer_list<std::initializer_list<long>> rows,
                                std::size_t cols_if_empty = 0);
  static SparseMatrix from_dense(Ring ring, std::size_t rows, std::size_t cols,
                                 std::span<const Integer> row_major);
  static SparseMatrix identity(Ring ring, std::size_t n);
  static SparseMatrix column_vector(Ring ring, std::span<const Integer> v);
  static SparseMatrix from_columns(Ring ring, std::size_t rows,
                                   const std::vector<Vector>& columns);

  Ring ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  bool empty_shape() const noexcept { return rows_ == 0 || cols_ == 0; }
  bool is_zero() const noexcept { return entries_.empty(); }
  std::span<const Entry> entries() const noexcept { return entries_; }

  Integer at(std::size_t row, std::size_t col) const;
  Vector column(std::size_t col) const;
  Vector row(std::size_t row) const;
  std::vector<Vector> column_list() const;
  std::vector<Integer> to_dense() const;  // row-major

  SparseMatrix transpose() const;
  SparseMatrix negated() const;
  SparseMatrix select_columns(std::span<const std::size_t> cols) const;
  SparseMatrix select_rows(std::span<const std::size_t> rows) const;
  /// Reinterpret coefficients in another ring (reduction mod 2 when GF2).
  SparseMatrix with_ring(Ring ring) const;
  /// Place this matrix at (row_offset, col_offset) inside a larger zero matrix.
  SparseMatrix embedded(std::size_t rows, std::size_t cols,
                        std::size_t row_offset, std::size_t col_offset) const;

  Vector apply(std::span<const Integer> v) const;

  SparseMatrix operator*(const SparseMatrix& other) const;
  SparseMatrix operator+(const SparseMatrix& other) const;
  SparseMatrix operator-(const SparseMatrix& other) const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

  std::string debug_string() const;

 private:
  Ring ring_ = Ring::GF2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;
};

/// Reduce a coefficient into the ring's canonical representative.
Integer normalize(Ring ring, const Integer& value);
Integer dot(Ring ring, std::span<const Integer> a, std::span<const Integer> b);
bool is_zero_vector(std::span<const Integer> v);

// ---------------------------------------------------------------------------
// Dense GF(2) working matrix.

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix from_sparse(const SparseMatrix& m);
  SparseMatrix to_sparse() const;

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return words_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool value = true);
  void flip(std::size_t r, std::size_t c) {
    bits_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64);
  }

  std::uint64_t* row_data(std::size_t r) { return bits_.data() + r * words_; }
  const std::uint64_t* row_data(std::size_t r) const {
    return bits_.data() + r * words_;
  }

  void xor_row(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);
  bool row_is_zero(std::size_t r) const;
  void append_row(std::span<const std::uint64_t> words);

  BitMatrix transposed() const;
  BitMatrix multiply(const BitMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// In-place reduced row echelon form. Columns are scanned in `column_order`
/// (all columns ascending when empty). Returns the pivot column of each
/// nonzero row; nonzero rows are moved to the top.
std::vector<std::size_t> gf2_rref(BitMatrix& m,
                                  std::span<const std::size_t> column_order = {});

// ---------------------------------------------------------------------------
// Dense integer working matrix and Smith normal form.

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix from_sparse(const SparseMatrix& m);
  static IntMatrix identity(std::size_t n);
  SparseMatrix to_sparse(Ring ring = Ring::INT) const;

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Integer& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& q);
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& q);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

  IntMatrix multiply(const IntMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct DenseSmith {
  IntMatrix s;
  IntMatrix u, u_inv;  // rows x rows, populated when transforms requested
  IntMatrix v, v_inv;  // cols x cols
  std::vector<Integer> diagonal;  // nonzero diagonal entries d_1 | d_2 | ...
};

/// Smith normal form with minimal-absolute-value pivoting: u * a * v = s.
DenseSmith smith_dense(const IntMatrix& a, bool with_transforms);

// ---------------------------------------------------------------------------
// Public operations.

struct RrefResult {
  SparseMatrix reduced;             // nonzero rows only
  std::vector<std::size_t> pivots;  // strictly increasing
};

struct SmithDecomposition {
  SparseMatrix u;
  SparseMatrix s;
  SparseMatrix v;
  std::vector<Integer> invariant_factors;
};

/// Structure of a finitely generated abelian group (or GF(2) vector space).
struct ModuleInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> factors;  // invariant factors > 1, in divisibility order

  friend bool operator==(const ModuleInvariants&, const ModuleInvariants&) = default;
};

std::size_t rank(const SparseMatrix& m);
RrefResult rref_gf2(const SparseMatrix& m);
SparseMatrix kernel_basis(const SparseMatrix& m);
SparseMatrix image_basis(const SparseMatrix& m);
SmithDecomposition smith_normal_form(const SparseMatrix& m);
std::optional<Vector> in_span(const SparseMatrix& m, std::span<const Integer> v);
ModuleInvariants cokernel_invariants(const SparseMatrix& m);

/// Preprocesses a generating set once, then answers many membership queries.
class SpanTester {
 public:
  explicit SpanTester(const SparseMatrix& generators);

  bool contains(std::span<const Integer> v) const;
  std::optional<Vector> solve(std::span<const Integer> v) const;

 private:
  Ring ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  // GF2: echelon rows of [generators^T | identity] for coefficient recovery.
  BitMatrix echelon_;
  std::vector<std::size_t> pivots_;
  // INT
  DenseSmith smith_;
};

}  // namespace stratacode
