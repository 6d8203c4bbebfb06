#pragma once

// Stratified diagrams: a finite poset of strata, a chain complex on each
// stratum and chain maps along the order relation.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "exact.hpp"

namespace stratacode {

class Poset {
 public:
  Poset() = default;

  /// Reflexive-transitive closure of `pairs` (each pair reads first <= second).
  /// Elements are stored in lexicographic order.
  static Poset close(std::vector<std::string> elements,
                     const std::vector<std::pair<std::string, std::string>>& pairs);

  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<std::string>& elements() const noexcept { return elements_; }
  std::optional<std::size_t> find(std::string_view id) const;
  std::size_t index(std::string_view id) const;  // throws UnknownStratum

  bool leq(std::size_t a, std::size_t b) const {
    return (leq_[a * words_ + b / 64] >> (b % 64)) & 1u;
  }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }

  /// All (a, b) with a < b, in lexicographic order of (a, b).
  std::vector<std::pair<std::size_t, std::size_t>> strict_pairs() const;
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;
  std::vector<std::size_t> between(std::size_t a, std::size_t b) const;
  std::size_t relation_count() const;  // reflexive pairs included
  /// Length of the longest strict chain ending at `a`.
  std::size_t height(std::size_t a) const { return heights_[a]; }

 private:
  std::vector<std::string> elements_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> leq_;
  std::vector<std::size_t> heights_;
};

struct Stratum {
  std::string id;
  std::optional<long> dim;
  std::map<int, std::size_t> modules;       // degree -> rank of C_k
  std::map<int, SparseMatrix> boundaries;   // degree k -> d_k : C_k -> C_{k-1}

  std::size_t rank(int k) const;
  int top_degree() const;  // -1 when every module is zero

  friend bool operator==(const Stratum&, const Stratum&) = default;
};

struct Gluing {
  std::string from;
  std::string to;
  std::map<int, SparseMatrix> maps;  // degree k -> phi^k : C_k(from) -> C_k(to)

  friend bool operator==(const Gluing&, const Gluing&) = default;
};

/// The diagram as supplied: maps on a generating set of pairs.
struct Diagram {
  Ring ring = Ring::GF2;
  std::vector<Stratum> strata;
  std::vector<Gluing> gluings;
  // Order relations carrying no map. Only reachable through the library API.
  std::vector<std::pair<std::string, std::string>> relations;

  const Stratum* find(std::string_view id) const;
  /// Sort strata by id and gluings by (from, to).
  void canonicalize();
  /// Same diagram with every coefficient reinterpreted in `ring`.
  Diagram with_ring(Ring ring) const;

  friend bool operator==(const Diagram&, const Diagram&) = default;
};

struct Finding {
  ErrorCode code = ErrorCode::ValidationFailed;
  std::string stratum;  // set for local-complex findings
  std::string from;     // set for pair findings
  std::string to;
  std::optional<int> degree;
  std::string message;

  std::string describe() const;
};

struct ValidationReport {
  std::vector<Finding> findings;
  bool ok() const noexcept { return findings.empty(); }
};

/// A diagram with one resolved chain map for every comparable pair.
class StratifiedDiagram {
 public:
  Ring ring() const noexcept { return ring_; }
  const Poset& poset() const noexcept { return poset_; }
  const std::vector<Stratum>& strata() const noexcept { return strata_; }
  const Stratum& stratum(std::size_t i) const { return strata_[i]; }
  std::size_t index(std::string_view id) const { return poset_.index(id); }
  const Diagram& source() const noexcept { return source_; }
  bool forced() const noexcept { return forced_; }

  int top_degree() const noexcept { return top_; }
  std::size_t rank(std::size_t s, int k) const { return strata_[s].rank(k); }
  /// d_k of stratum s with its full shape; zero when not supplied.
  SparseMatrix boundary(std::size_t s, int k) const;
  /// phi^k for s <= t (identity when s == t).
  SparseMatrix map(std::size_t s, std::size_t t, int k) const;

 private:
  friend class DiagramResolver;

  Ring ring_ = Ring::GF2;
  Poset poset_;
  std::vector<Stratum> strata_;
  Diagram source_;
  int top_ = -1;
  bool forced_ = false;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<SparseMatrix>> maps_;
};

Poset close_poset(std::vector<std::string> elements,
                  const std::vector<std::pair<std::string, std::string>>& pairs);

/// Checks poset, local complexes, shapes, chain maps and transitivity in that
/// order. Never throws for diagram defects.
ValidationReport validate(const Diagram& d);

/// Resolve maps on every comparable pair; throws the first violation.
StratifiedDiagram resolve_gluings(const Diagram& d);

/// Resolve without the nilpotence, chain-map and transitivity checks.
/// Explicit maps win over composites. Structural defects still throw.
StratifiedDiagram resolve_unchecked(const Diagram& d);

}  // namespace stratacode
