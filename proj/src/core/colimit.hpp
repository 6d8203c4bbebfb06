#pragma once

// Colimit of a stratified diagram: direct sum of the local complexes modulo
// the identifications x ~ phi(x), with the induced boundary.

#include <map>
#include <string>
#include <vector>

#include "diagram.hpp"

namespace stratacode {

/// A bounded chain complex of free modules in degrees 0..top.
/// boundaries[k] is d_k : C_k -> C_{k-1}; boundaries[0] is the 0 x ranks[0] map.
struct ChainComplex {
  Ring ring = Ring::GF2;
  std::vector<std::size_t> ranks;
  std::vector<SparseMatrix> boundaries;

  int top_degree() const { return static_cast<int>(ranks.size()) - 1; }
  std::size_t rank(int k) const;
  /// Full-shape d_k for any k (zero outside the populated range).
  SparseMatrix boundary(int k) const;
  /// Throws NotAComplex when some d_{k-1} d_k is nonzero.
  void check() const;
};

struct ScaffoldLayout {
  int degree = 0;
  std::size_t total_rank = 0;
  std::vector<std::size_t> offsets;  // by stratum index, in canonical order
};

struct ColimitDegree {
  ScaffoldLayout layout;
  SparseMatrix scaffold_boundary;  // block diagonal d_k on the scaffold
  SparseMatrix relations;          // N_k, one column per generator
  std::size_t quotient_rank = 0;
  SparseMatrix reduce;             // quotient_rank x scaffold
  SparseMatrix lift;               // scaffold x quotient_rank, reduce * lift = 1
  /// Scaffold coordinates kept as quotient coordinates. Filled only when
  /// lift is a plain coordinate selection.
  std::vector<std::size_t> section;
  SparseMatrix boundary;           // induced d_k
};

class ColimitComplex {
 public:
  Ring ring() const noexcept { return diagram_.ring(); }
  const StratifiedDiagram& diagram() const noexcept { return diagram_; }
  int top_degree() const noexcept { return static_cast<int>(degrees_.size()) - 1; }
  const ColimitDegree& degree(int k) const { return degrees_.at(static_cast<std::size_t>(k)); }

  std::size_t quotient_rank(int k) const;
  SparseMatrix boundary(int k) const;
  /// q_sigma = reduce * iota_sigma in degree k.
  SparseMatrix structure_map(std::string_view stratum, int k) const;
  SparseMatrix structure_map(std::size_t stratum, int k) const;
  ChainComplex chain_complex() const;

 private:
  friend ColimitComplex build(const StratifiedDiagram& d);

  StratifiedDiagram diagram_;
  std::vector<ColimitDegree> degrees_;
};

struct CompatibilityFailure {
  int degree = 0;             // degree k of the generator g whose boundary fails
  std::size_t generator = 0;  // column of N_k
  std::string from;
  std::string to;
  std::string message;
};

struct CompatibilityReport {
  std::vector<CompatibilityFailure> failures;
  std::size_t generators_checked = 0;
  bool ok() const noexcept { return failures.empty(); }
};

/// Scaffold layout in degree k: blocks ordered by stratum index.
ScaffoldLayout scaffold_layout(const StratifiedDiagram& d, int k);

/// Columns iota_sigma(x) - iota_tau(phi(x)), ordered by pair then basis index.
SparseMatrix relation_generators(const StratifiedDiagram& d, int k);

/// Checks that the scaffold boundary of every relation lies in the span of the
/// relations one degree down.
CompatibilityReport boundary_compatibility_check(const StratifiedDiagram& d);

/// Builds and self-checks the colimit complex. Throws PreconditionFailed when
/// the boundary does not descend, TorsionChainModule when an integer quotient
/// is not free.
ColimitComplex build(const StratifiedDiagram& d);

/// A cocone over the diagram with vertex `target`:
/// maps[sigma][k] : C_k(sigma) -> target_k.
struct Cocone {
  ChainComplex target;
  std::map<std::string, std::vector<SparseMatrix>> maps;
};

/// The unique chain map Psi out of the colimit with Psi q_sigma = psi_sigma.
/// Returns Psi_k for k = 0..top.
std::vector<SparseMatrix> mediating_map(const ColimitComplex& c, const Cocone& cocone);

/// The structure maps of the colimit, viewed as a cocone with vertex the colimit.
Cocone canonical_cocone(const ColimitComplex& c);

struct SharedStratum {
  std::string left;   // id in the first diagram
  std::string right;  // id in the second diagram
};

/// Glues two diagrams along a common full sub-diagram. Strata of the first
/// diagram are renamed left_prefix + id, those of the second right_prefix + id,
/// except that shared strata keep their left name.
Diagram pushout(const Diagram& left, const Diagram& right,
                const std::vector<SharedStratum>& shared,
                const std::string& left_prefix = "", const std::string& right_prefix = "r.");

}  // namespace stratacode
