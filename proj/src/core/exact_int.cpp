#include <algorithm>

#include "exact.hpp"

namespace stratacode {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::from_sparse(const SparseMatrix& m) {
  IntMatrix a(m.rows(), m.cols());
  for (const auto& e : m.entries()) a.at(e.row, e.col) = e.value;
  return a;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a.at(i, i) = 1;
  return a;
}

SparseMatrix IntMatrix::to_sparse(Ring ring) const {
  return SparseMatrix::from_dense(ring, rows_, cols_, data_);
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap(at(r, a), at(r, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (at(src, c) != 0) at(dst, c) += q * at(src, c);
  }
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (at(r, src) != 0) at(r, dst) += q * at(r, src);
  }
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) at(r, c) = -at(r, c);
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) at(r, c) = -at(r, c);
}

IntMatrix IntMatrix::multiply(const IntMatrix& other) const {
  if (cols_ != other.rows_) fail(ErrorCode::DimensionMismatch, "integer product shape");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        if (other.at(k, j) != 0) out.at(i, j) += a * other.at(k, j);
      }
    }
  }
  return out;
}

namespace {

class SmithWorker {
 public:
  SmithWorker(const IntMatrix& a, bool transforms) : transforms_(transforms) {
    out_.s = a;
    if (transforms_) {
      out_.u = IntMatrix::identity(a.rows());
      out_.u_inv = IntMatrix::identity(a.rows());
      out_.v = IntMatrix::identity(a.cols());
      out_.v_inv = IntMatrix::identity(a.cols());
    }
  }

  DenseSmith run() {
    IntMatrix& s = out_.s;
    const std::size_t m = s.rows();
    const std::size_t n = s.cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      auto [pi, pj] = smallest(t, t, m, n);
      if (pi == m) break;
      row_swap(t, pi);
      col_swap(t, pj);
      for (;;) {
        if (clear_line(t)) continue;
        if (fix_divisibility(t)) continue;
        break;
      }
      if (s.at(t, t) < 0) row_negate(t);
      out_.diagonal.push_back(s.at(t, t));
    }
    return std::move(out_);
  }

 private:
  // Smallest nonzero |entry| with row >= r0 and col >= c0; (rows, cols) when none.
  std::pair<std::size_t, std::size_t> smallest(std::size_t r0, std::size_t c0,
                                               std::size_t m, std::size_t n) const {
    const IntMatrix& s = out_.s;
    std::pair<std::size_t, std::size_t> best{m, n};
    Integer best_abs;
    for (std::size_t i = r0; i < m; ++i) {
      for (std::size_t j = c0; j < n; ++j) {
        const Integer& x = s.at(i, j);
        if (x == 0) continue;
        Integer ax = abs(x);
        if (best.first == m || ax < best_abs) {
          best = {i, j};
          best_abs = ax;
          if (best_abs == 1) return best;
        }
      }
    }
    return best;
  }

  // Reduce column t below and row t right of the pivot. Returns true when a
  // smaller remainder was swapped into the pivot position.
  bool clear_line(std::size_t t) {
    IntMatrix& s = out_.s;
    const std::size_t m = s.rows();
    const std::size_t n = s.cols();
    bool dirty = false;
    for (std::size_t i = t + 1; i < m; ++i) {
      if (s.at(i, t) == 0) continue;
      Integer q = s.at(i, t) / s.at(t, t);
      row_add(i, t, -q);
      if (s.at(i, t) != 0) dirty = true;
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (s.at(t, j) == 0) continue;
      Integer q = s.at(t, j) / s.at(t, t);
      col_add(j, t, -q);
      if (s.at(t, j) != 0) dirty = true;
    }
    if (!dirty) return false;
    std::size_t best_i = m, best_j = n;
    Integer best_abs = abs(s.at(t, t));
    for (std::size_t i = t + 1; i < m; ++i) {
      if (s.at(i, t) != 0 && abs(s.at(i, t)) < best_abs) {
        best_abs = abs(s.at(i, t));
        best_i = i;
        best_j = n;
      }
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (s.at(t, j) != 0 && abs(s.at(t, j)) < best_abs) {
        best_abs = abs(s.at(t, j));
        best_j = j;
        best_i = m;
      }
    }
    if (best_i != m) row_swap(t, best_i);
    if (best_j != n) col_swap(t, best_j);
    return true;
  }

  bool fix_divisibility(std::size_t t) {
    IntMatrix& s = out_.s;
    for (std::size_t i = t + 1; i < s.rows(); ++i) {
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        if (s.at(i, j) != 0 && s.at(i, j) % s.at(t, t) != 0) {
          row_add(t, i, Integer(1));
          return true;
        }
      }
    }
    return false;
  }

  void row_swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    out_.s.swap_rows(a, b);
    if (transforms_) {
      out_.u.swap_rows(a, b);
      out_.u_inv.swap_cols(a, b);
    }
  }
  void col_swap(std::size_t a, std::size_t b) {
    if (a == b) return;
    out_.s.swap_cols(a, b);
    if (transforms_) {
      out_.v.swap_cols(a, b);
      out_.v_inv.swap_rows(a, b);
    }
  }
  void row_add(std::size_t dst, std::size_t src, const Integer& q) {
    out_.s.add_row_multiple(dst, src, q);
    if (transforms_) {
      out_.u.add_row_multiple(dst, src, q);
      out_.u_inv.add_col_multiple(src, dst, -q);
    }
  }
  void col_add(std::size_t dst, std::size_t src, const Integer& q) {
    out_.s.add_col_multiple(dst, src, q);
    if (transforms_) {
      out_.v.add_col_multiple(dst, src, q);
      out_.v_inv.add_row_multiple(src, dst, -q);
    }
  }
  void row_negate(std::size_t r) {
    out_.s.negate_row(r);
    if (transforms_) {
      out_.u.negate_row(r);
      out_.u_inv.negate_col(r);
    }
  }

  bool transforms_;
  DenseSmith out_;
};

}  // namespace

DenseSmith smith_dense(const IntMatrix& a, bool with_transforms) {
  return SmithWorker(a, with_transforms).run();
}

}  // namespace stratacode
