#pragma once

// CSS codes read off a chain complex at a chosen qubit degree.

#include <optional>

#include "homology.hpp"

namespace stratacode {

struct CSSCode {
  int qubit_degree = 1;
  std::size_t n = 0;
  SparseMatrix hx;  // rows: X checks, d_k
  SparseMatrix hz;  // rows: Z checks, transpose(d_{k+1})
  std::size_t k_logical = 0;
  SparseMatrix logical_z;  // columns: cycle representatives
  SparseMatrix logical_x;  // columns: cocycle representatives
};

/// Over GF2 only. With `independent_checks`, redundant stabilizer rows are dropped.
CSSCode css_extract(const ChainComplex& c, int k, bool independent_checks = false);
CSSCode css_extract(const ColimitComplex& c, int k, bool independent_checks = false);

struct PairingMatrix {
  int degree = 0;
  SparseMatrix matrix;     // entry (i, j) = <alpha_i, beta_j>
  SparseMatrix cocycles;   // alpha_i as columns
  SparseMatrix cycles;     // beta_j as columns
};

PairingMatrix pairing_matrix(const SparseMatrix& cocycles, const SparseMatrix& cycles, int degree);
PairingMatrix pairing_matrix(const ChainComplex& c, int k);
PairingMatrix pairing_matrix(const ColimitComplex& c, int k);
PairingMatrix pairing_matrix(const CSSCode& code);

/// Replace the cocycle basis so the pairing becomes the identity. Cycles are kept.
PairingMatrix dualize_bases(const PairingMatrix& p);

/// GF(2) inverse of a square matrix; nullopt when singular.
std::optional<SparseMatrix> inverse_gf2(const SparseMatrix& m);

/// +1 when X(alpha) and Z(beta) commute, -1 otherwise.
int commutation_sign(std::span<const Integer> alpha, std::span<const Integer> beta);

enum class LogicalKind { Z, X };

struct DistanceResult {
  bool has_logicals = false;
  bool exact = false;
  std::size_t value = 0;            // exact distance, or the best upper bound
  std::size_t cosets_enumerated = 0;
};

inline constexpr std::size_t kDefaultDistanceBudget = std::size_t{1} << 24;

DistanceResult min_distance(const CSSCode& code, LogicalKind kind,
                            std::size_t budget = kDefaultDistanceBudget);

}  // namespace stratacode
