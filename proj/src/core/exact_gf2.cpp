#include <algorithm>
#include <bit>

#include "exact.hpp"

namespace stratacode {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

BitMatrix BitMatrix::from_sparse(const SparseMatrix& m) {
  BitMatrix b(m.rows(), m.cols());
  for (const auto& e : m.entries()) {
    if (mpz_odd_p(e.value.get_mpz_t())) b.flip(e.row, e.col);
  }
  return b;
}

SparseMatrix BitMatrix::to_sparse() const {
  std::vector<Entry> entries;
  for (std::size_t r = 0; r < rows_; ++r) {
    const std::uint64_t* row = row_data(r);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = row[w];
      while (word) {
        int bit = std::countr_zero(word);
        entries.push_back({r, w * 64 + static_cast<std::size_t>(bit), Integer(1)});
        word &= word - 1;
      }
    }
  }
  return SparseMatrix::from_triples(Ring::GF2, rows_, cols_, std::move(entries));
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) {
  std::uint64_t mask = std::uint64_t{1} << (c % 64);
  if (value) {
    bits_[r * words_ + c / 64] |= mask;
  } else {
    bits_[r * words_ + c / 64] &= ~mask;
  }
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) {
  std::uint64_t* d = row_data(dst);
  const std::uint64_t* s = row_data(src);
  for (std::size_t w = 0; w < words_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(row_data(a), row_data(a) + words_, row_data(b));
}

bool BitMatrix::row_is_zero(std::size_t r) const {
  const std::uint64_t* row = row_data(r);
  return std::all_of(row, row + words_, [](std::uint64_t w) { return w == 0; });
}

void BitMatrix::append_row(std::span<const std::uint64_t> words) {
  if (words.size() != words_) fail(ErrorCode::DimensionMismatch, "bit row width mismatch");
  bits_.insert(bits_.end(), words.begin(), words.end());
  ++rows_;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    const std::uint64_t* row = row_data(r);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = row[w];
      while (word) {
        int bit = std::countr_zero(word);
        t.flip(w * 64 + static_cast<std::size_t>(bit), r);
        word &= word - 1;
      }
    }
  }
  return t;
}

BitMatrix BitMatrix::multiply(const BitMatrix& other) const {
  if (cols_ != other.rows_) fail(ErrorCode::DimensionMismatch, "bit matrix product shape");
  BitMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t* dst = out.row_data(r);
    const std::uint64_t* row = row_data(r);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = row[w];
      while (word) {
        std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
        const std::uint64_t* src = other.row_data(k);
        for (std::size_t v = 0; v < out.words_; ++v) dst[v] ^= src[v];
        word &= word - 1;
      }
    }
  }
  return out;
}

std::vector<std::size_t> gf2_rref(BitMatrix& m, std::span<const std::size_t> column_order) {
  std::vector<std::size_t> order;
  if (column_order.empty()) {
    order.resize(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) order[c] = c;
    column_order = order;
  }
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c : column_order) {
    if (next == m.rows()) break;
    std::size_t found = m.rows();
    for (std::size_t r = next; r < m.rows(); ++r) {
      if (m.get(r, c)) {
        found = r;
        break;
      }
    }
    if (found == m.rows()) continue;
    m.swap_rows(next, found);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r != next && m.get(r, c)) m.xor_row(r, next);
    }
    pivots.push_back(c);
    ++next;
  }
  return pivots;
}

}  // namespace stratacode
