#pragma once

#include <vector>

#include "colimit.hpp"

namespace stratacode {

struct HomologyResult {
  int degree = 0;
  Ring ring = Ring::GF2;
  std::size_t chain_rank = 0;
  std::size_t free_rank = 0;
  std::vector<Integer> invariant_factors;  // factors > 1; empty over GF2
  /// Columns: free-part representatives, then one per torsion factor.
  SparseMatrix representatives;

  ModuleInvariants invariants() const { return {free_rank, invariant_factors}; }
};

/// H = ker(d_out) / im(d_in) inside a free module of rank n.
HomologyResult subquotient(Ring ring, std::size_t n, const SparseMatrix& d_out,
                           const SparseMatrix& d_in);

HomologyResult homology_at(const ChainComplex& c, int k);
HomologyResult homology_at(const ColimitComplex& c, int k);
/// Cohomology with delta^k = transpose(d_{k+1}); representatives are functionals
/// in the dual basis of C_k.
HomologyResult cohomology_at(const ChainComplex& c, int k);
HomologyResult cohomology_at(const ColimitComplex& c, int k);

struct UctRow {
  int degree = 0;
  std::size_t hom_free_rank = 0;        // free rank of H_k
  std::vector<Integer> ext_factors;     // torsion of H_{k-1}
  ModuleInvariants observed;            // H^k
  bool consistent = false;
};

struct UctReport {
  std::vector<UctRow> rows;
  bool consistent() const;
};

UctReport uct_check(const ChainComplex& c);
UctReport uct_check(const ColimitComplex& c);

struct BettiRow {
  int degree = 0;
  std::size_t chain_rank = 0;
  ModuleInvariants homology;
  ModuleInvariants cohomology;
};

std::vector<BettiRow> betti_table(const ChainComplex& c);
std::vector<BettiRow> betti_table(const ColimitComplex& c);

}  // namespace stratacode
