#pragma once

// Named diagrams: the worked examples plus small fixtures for gluing tests.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "diagram.hpp"

namespace stratacode {

enum class ClaimKind { Homology, BoundaryRank, KernelDim };

std::string_view claim_kind_name(ClaimKind kind);
std::optional<ClaimKind> parse_claim_kind(std::string_view name);

/// A published value recorded next to a diagram. Never asserted by the
/// builders; reports print it beside the measured value.
struct Claim {
  ClaimKind kind = ClaimKind::Homology;
  int degree = 0;
  std::size_t free_rank = 0;       // Betti number, rank, or kernel dimension
  std::vector<Integer> factors;    // torsion, Homology claims only
  std::string note;

  friend bool operator==(const Claim&, const Claim&) = default;
};

struct Annotations {
  std::string name;
  std::map<std::string, long> params;
  int default_qubit_degree = 1;
  std::vector<Claim> claims;
  std::vector<std::string> notes;
  bool expect_invalid = false;

  friend bool operator==(const Annotations&, const Annotations&) = default;
};

struct CatalogEntry {
  Annotations annotations;
  Diagram diagram;
};

/// One cell of a cell complex. Boundary terms may repeat or cancel; every
/// listed face still belongs to the closure.
struct Cell {
  std::string id;
  int dim = 0;
  std::vector<std::pair<std::string, long>> boundary;
};

/// One stratum per cell carrying the complex of its closure, glued to each
/// listed face by inclusion. Pairs in `dropped` (face, cell) get no gluing.
Diagram cells_to_diagram(Ring ring, const std::vector<Cell>& cells,
                         const std::set<std::pair<std::string, std::string>>& dropped = {});

CatalogEntry rp2(Ring ring = Ring::INT);
/// RP2 with the face doubled: d_2 = [1 1].
CatalogEntry rp2_split();
CatalogEntry twisted_torus(long n, long a, long b);
CatalogEntry toric(long n);
CatalogEntry fracton_cube(long L, bool delete_top_faces = true);
CatalogEntry dangling_square();
CatalogEntry nontransitive_counterexample(bool repaired = false);
CatalogEntry segment(Ring ring = Ring::GF2);
/// Open m x m square grid (a disk), for surgery fixtures.
CatalogEntry grid_patch(long m, Ring ring = Ring::GF2);

/// Twisted-torus global d_1 d_2 vanishes; otherwise the builder drops degree 0.
bool twisted_torus_is_complex(long n, long a, long b);

std::vector<std::string> example_names();
/// Dispatch by name; unknown params or names throw.
CatalogEntry make_example(const std::string& name, const std::map<std::string, long>& params);
/// Every entry used by the test matrix, at small parameters.
std::vector<CatalogEntry> standard_entries();

}  // namespace stratacode
