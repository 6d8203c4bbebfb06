#pragma once

// Brute-force cross-checks for tests and `--oracle` reports. Everything here
// is written from the cell formulas directly; the only shared piece with the
// pipeline is the SparseMatrix container.

#include <json.hpp>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exact.hpp"

namespace stratacode::oracles {

/// Cellular complex given by global matrices. boundaries[k] maps degree k to
/// degree k-1; boundaries[0] is an empty 0 x dims[0] matrix.
struct DirectComplex {
  Ring ring = Ring::GF2;
  std::vector<std::size_t> dims;
  std::vector<SparseMatrix> boundaries;
};

struct HomologyDims {
  int degree = 0;
  std::size_t free_rank = 0;
  std::vector<Integer> factors;
};

struct OracleResult {
  std::string name;
  std::map<std::string, long> inputs;
  nlohmann::json value;
};

inline constexpr std::size_t kExhaustiveLimit = 20;
inline constexpr std::size_t kNaiveSnfLimit = 6;

SparseMatrix direct_twisted_boundary(long n, long a, long b);

DirectComplex direct_twisted_torus(long n, long a, long b);
DirectComplex direct_fracton(long L, bool delete_top_faces);
DirectComplex direct_rp2(Ring ring);
DirectComplex direct_rp2_split();
DirectComplex direct_dangling_square();
DirectComplex direct_segment(Ring ring);
DirectComplex direct_grid(long m, Ring ring);
DirectComplex direct_repaired_triangle();

std::size_t dense_rank_gf2(const SparseMatrix& m);
bool composes_to_zero_gf2(const SparseMatrix& outer, const SparseMatrix& inner);

/// Counts every vector of every chain module; sum of dims must be <= 20.
std::vector<std::size_t> exhaustive_homology_gf2(const DirectComplex& c);
/// Rank-nullity on dense GF(2) elimination.
std::vector<std::size_t> elimination_homology_gf2(const DirectComplex& c);
/// Integer homology from naive_snf of each boundary; every matrix <= 6 x 6.
std::vector<HomologyDims> naive_homology_int(const DirectComplex& c);

/// X-string alpha against Z-string beta, position by position.
int pauli_commutation_oracle(std::span<const Integer> alpha, std::span<const Integer> beta);

/// Diagonal of the Smith form by plain row/column reduction, nonzero entries only.
std::vector<Integer> naive_snf(const SparseMatrix& m);

/// Oracle for a catalog example, keyed by name and parameters as in make_example.
std::optional<OracleResult> catalog_oracle(const std::string& name,
                                           const std::map<std::string, long>& params);

}  // namespace stratacode::oracles
