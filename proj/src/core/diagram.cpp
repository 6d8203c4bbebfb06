#include "diagram.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <tuple>

namespace stratacode {

// ---------------------------------------------------------------------------
// Poset

Poset Poset::close(std::vector<std::string> elements,
                   const std::vector<std::pair<std::string, std::string>>& pairs) {
  Poset p;
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
    fail(ErrorCode::InvalidArgument, "duplicate element " +
                                         *std::adjacent_find(elements.begin(), elements.end()));
  }
  p.elements_ = std::move(elements);
  const std::size_t n = p.elements_.size();
  p.words_ = (n + 63) / 64;
  p.leq_.assign(n * p.words_, 0);
  auto set_bit = [&](std::size_t a, std::size_t b) {
    p.leq_[a * p.words_ + b / 64] |= std::uint64_t{1} << (b % 64);
  };
  for (std::size_t i = 0; i < n; ++i) set_bit(i, i);
  for (const auto& [a, b] : pairs) set_bit(p.index(a), p.index(b));
  // Warshall on bit rows: if i <= k then i <= everything above k.
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t* row_k = p.leq_.data() + k * p.words_;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || !p.leq(i, k)) continue;
      std::uint64_t* row_i = p.leq_.data() + i * p.words_;
      for (std::size_t w = 0; w < p.words_; ++w) row_i[w] |= row_k[w];
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (p.leq(a, b) && p.leq(b, a)) {
        fail(ErrorCode::CycleDetected,
             "order cycle through " + p.elements_[a] + " and " + p.elements_[b]);
      }
    }
  }
  // Elements with fewer predecessors come first in any linear extension.
  std::vector<std::size_t> below(n, 0), order(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) below[b] += p.less(a, b) ? 1 : 0;
    order[a] = a;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return below[x] < below[y]; });
  p.heights_.assign(n, 0);
  for (std::size_t b : order) {
    for (std::size_t a = 0; a < n; ++a) {
      if (p.less(a, b)) p.heights_[b] = std::max(p.heights_[b], p.heights_[a] + 1);
    }
  }
  return p;
}

std::optional<std::size_t> Poset::find(std::string_view id) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), id);
  if (it == elements_.end() || *it != id) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

std::size_t Poset::index(std::string_view id) const {
  auto i = find(id);
  if (!i) fail(ErrorCode::UnknownStratum, "unknown stratum '" + std::string(id) + "'");
  return *i;
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::strict_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < size(); ++a) {
    for (std::size_t b = 0; b < size(); ++b) {
      if (less(a, b)) out.emplace_back(a, b);
    }
  }
  return out;
}

std::vector<std::size_t> Poset::between(std::size_t a, std::size_t b) const {
  std::vector<std::size_t> out;
  if (!less(a, b)) return out;
  for (std::size_t r = 0; r < size(); ++r) {
    if (less(a, r) && less(r, b)) out.push_back(r);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (auto [a, b] : strict_pairs()) {
    if (between(a, b).empty()) out.emplace_back(a, b);
  }
  return out;
}

std::size_t Poset::relation_count() const {
  std::size_t count = 0;
  for (std::uint64_t w : leq_) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

Poset close_poset(std::vector<std::string> elements,
                  const std::vector<std::pair<std::string, std::string>>& pairs) {
  return Poset::close(std::move(elements), pairs);
}

// ---------------------------------------------------------------------------
// Plain data

std::size_t Stratum::rank(int k) const {
  auto it = modules.find(k);
  return it == modules.end() ? 0 : it->second;
}

int Stratum::top_degree() const {
  int top = -1;
  for (const auto& [k, r] : modules) {
    if (r > 0) top = std::max(top, k);
  }
  return top;
}

const Stratum* Diagram::find(std::string_view id) const {
  for (const auto& s : strata) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

void Diagram::canonicalize() {
  std::sort(strata.begin(), strata.end(),
            [](const Stratum& a, const Stratum& b) { return a.id < b.id; });
  std::sort(gluings.begin(), gluings.end(), [](const Gluing& a, const Gluing& b) {
    return std::tie(a.from, a.to) < std::tie(b.from, b.to);
  });
  std::sort(relations.begin(), relations.end());
}

Diagram Diagram::with_ring(Ring target) const {
  Diagram out = *this;
  out.ring = target;
  for (auto& s : out.strata) {
    for (auto& [k, m] : s.boundaries) m = m.with_ring(target);
  }
  for (auto& g : out.gluings) {
    for (auto& [k, m] : g.maps) m = m.with_ring(target);
  }
  return out;
}

std::string Finding::describe() const {
  std::string out(error_code_name(code));
  if (!stratum.empty()) {
    out += " at " + stratum;
  } else if (!from.empty() || !to.empty()) {
    out += " at (" + from + "," + to + ")";
  }
  if (degree) out += " degree " + std::to_string(*degree);
  if (!message.empty()) out += ": " + message;
  return out;
}

SparseMatrix StratifiedDiagram::boundary(std::size_t s, int k) const {
  const Stratum& st = strata_[s];
  auto it = st.boundaries.find(k);
  if (it != st.boundaries.end()) return it->second;
  return SparseMatrix(ring_, st.rank(k - 1), st.rank(k));
}

SparseMatrix StratifiedDiagram::map(std::size_t s, std::size_t t, int k) const {
  if (s == t) return SparseMatrix::identity(ring_, rank(s, k));
  auto it = maps_.find({s, t});
  if (it == maps_.end()) {
    fail(ErrorCode::InvalidArgument,
         strata_[s].id + " is not below " + strata_[t].id);
  }
  if (k < 0 || k > top_) return SparseMatrix(ring_, rank(t, k), rank(s, k));
  return it->second[static_cast<std::size_t>(k)];
}

// ---------------------------------------------------------------------------
// Resolution and validation

class DiagramResolver {
 public:
  DiagramResolver(const Diagram& d, std::vector<Finding>& findings)
      : d_(d), findings_(findings) {}

  bool structure() {
    const std::size_t before = findings_.size();
    std::vector<std::string> ids;
    std::set<std::string> seen;
    for (const auto& s : d_.strata) {
      if (s.id.empty()) add(ErrorCode::InvalidArgument, "", "", "", {}, "empty stratum id");
      if (!seen.insert(s.id).second) {
        add(ErrorCode::InvalidArgument, s.id, "", "", {}, "duplicate stratum id");
      }
      ids.push_back(s.id);
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    std::set<std::pair<std::string, std::string>> seen_pairs;
    for (const auto& g : d_.gluings) {
      bool known = true;
      for (const auto* id : {&g.from, &g.to}) {
        if (!seen.count(*id)) {
          add(ErrorCode::UnknownStratum, "", g.from, g.to, {},
              "gluing names unknown stratum '" + *id + "'");
          known = false;
        }
      }
      if (!known) continue;
      if (g.from == g.to) {
        add(ErrorCode::InvalidArgument, "", g.from, g.to, {}, "gluing of a stratum to itself");
        continue;
      }
      if (!seen_pairs.insert({g.from, g.to}).second) {
        add(ErrorCode::InvalidArgument, "", g.from, g.to, {}, "duplicate gluing");
        continue;
      }
      pairs.emplace_back(g.from, g.to);
    }
    for (const auto& [a, b] : d_.relations) {
      if (!seen.count(a) || !seen.count(b)) {
        add(ErrorCode::UnknownStratum, "", a, b, {}, "relation names an unknown stratum");
        continue;
      }
      pairs.emplace_back(a, b);
    }
    if (findings_.size() != before) return false;
    try {
      out_.poset_ = Poset::close(ids, pairs);
    } catch (const Error& e) {
      add(e.code(), "", "", "", {}, e.what());
      return false;
    }
    out_.ring_ = d_.ring;
    out_.source_ = d_;
    out_.strata_.resize(ids.size());
    for (const auto& s : d_.strata) out_.strata_[out_.poset_.index(s.id)] = s;
    for (const auto& g : d_.gluings) {
      explicit_[{out_.poset_.index(g.from), out_.poset_.index(g.to)}] = &g;
    }
    out_.top_ = -1;
    for (const auto& s : out_.strata_) out_.top_ = std::max(out_.top_, s.top_degree());
    return true;
  }

  bool local_shapes() {
    const std::size_t before = findings_.size();
    for (const auto& s : out_.strata_) {
      for (const auto& [k, r] : s.modules) {
        if (k < 0) add(ErrorCode::InvalidArgument, s.id, "", "", k, "negative degree");
      }
      for (const auto& [k, m] : s.boundaries) {
        if (k < 1) {
          add(ErrorCode::InvalidArgument, s.id, "", "", k, "boundary degree must be at least 1");
          continue;
        }
        if (m.ring() != d_.ring) {
          add(ErrorCode::RingMismatch, s.id, "", "", k, "boundary over the wrong ring");
        }
        if (m.rows() != s.rank(k - 1) || m.cols() != s.rank(k)) {
          add(ErrorCode::DimensionMismatch, s.id, "", "", k,
              "boundary is " + shape(m) + ", expected " + std::to_string(s.rank(k - 1)) + "x" +
                  std::to_string(s.rank(k)));
        }
      }
    }
    return findings_.size() == before;
  }

  void nilpotence() {
    for (std::size_t i = 0; i < out_.strata_.size(); ++i) {
      for (int k = 2; k <= out_.top_; ++k) {
        if (!(out_.boundary(i, k - 1) * out_.boundary(i, k)).is_zero()) {
          add(ErrorCode::NotAComplex, out_.strata_[i].id, "", "", k,
              "d_" + std::to_string(k - 1) + " d_" + std::to_string(k) + " is not zero");
        }
      }
    }
  }

  bool gluing_shapes() {
    const std::size_t before = findings_.size();
    for (const auto& [key, g] : explicit_) {
      for (const auto& [k, m] : g->maps) {
        if (k < 0) {
          add(ErrorCode::InvalidArgument, "", g->from, g->to, k, "negative degree");
          continue;
        }
        if (m.ring() != d_.ring) {
          add(ErrorCode::RingMismatch, "", g->from, g->to, k, "map over the wrong ring");
        }
        const std::size_t rows = out_.rank(key.second, k);
        const std::size_t cols = out_.rank(key.first, k);
        if (m.rows() != rows || m.cols() != cols) {
          add(ErrorCode::DimensionMismatch, "", g->from, g->to, k,
              "map is " + shape(m) + ", expected " + std::to_string(rows) + "x" +
                  std::to_string(cols));
        }
      }
    }
    return findings_.size() == before;
  }

  void chain_maps() {
    for (const auto& [key, g] : explicit_) {
      auto [s, t] = key;
      for (int k = 1; k <= out_.top_; ++k) {
        SparseMatrix lhs = out_.boundary(t, k) * explicit_map(*g, s, t, k);
        SparseMatrix rhs = explicit_map(*g, s, t, k - 1) * out_.boundary(s, k);
        if (!(lhs == rhs)) {
          add(ErrorCode::NotAChainMap, "", g->from, g->to, k,
              "boundary does not commute with the gluing map");
        }
      }
    }
  }

  /// Fill maps for every strict pair. With `check`, every composite and every
  /// explicit map must agree; otherwise explicit maps win.
  bool resolve(bool check) {
    const std::size_t before = findings_.size();
    const Poset& p = out_.poset_;
    struct Work {
      std::size_t s, t;
      std::vector<std::size_t> mid;
    };
    std::vector<Work> work;
    for (auto [s, t] : p.strict_pairs()) work.push_back({s, t, p.between(s, t)});
    std::stable_sort(work.begin(), work.end(), [](const Work& a, const Work& b) {
      return a.mid.size() < b.mid.size();
    });
    const int top = out_.top_;
    for (const auto& w : work) {
      auto ex = explicit_.find({w.s, w.t});
      const Gluing* g = ex == explicit_.end() ? nullptr : ex->second;
      const std::string& from = out_.strata_[w.s].id;
      const std::string& to = out_.strata_[w.t].id;
      if (!g && w.mid.empty()) {
        add(ErrorCode::MissingCover, "", from, to, {}, "covering pair has no gluing map");
        if (!check) return false;
      }
      std::vector<SparseMatrix> resolved;
      for (int k = 0; k <= top; ++k) {
        std::optional<SparseMatrix> value;
        std::string value_source;
        if (g) {
          value = explicit_map(*g, w.s, w.t, k);
          value_source = "the supplied map";
        }
        for (std::size_t r : w.mid) {
          if (value && !check) break;
          SparseMatrix composite = out_.maps_.at({r, w.t})[static_cast<std::size_t>(k)] *
                                   out_.maps_.at({w.s, r})[static_cast<std::size_t>(k)];
          if (!value) {
            value = std::move(composite);
            value_source = "the composite through " + out_.strata_[r].id;
          } else if (!(composite == *value)) {
            add(ErrorCode::TransitivityViolation, "", from, to, k,
                value_source + " differs from the composite through " + out_.strata_[r].id);
            break;
          }
        }
        if (!value) value = SparseMatrix(d_.ring, out_.rank(w.t, k), out_.rank(w.s, k));
        resolved.push_back(std::move(*value));
      }
      out_.maps_[{w.s, w.t}] = std::move(resolved);
    }
    return findings_.size() == before;
  }

  StratifiedDiagram take(bool forced) {
    out_.forced_ = forced;
    return std::move(out_);
  }

 private:
  static std::string shape(const SparseMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
  }

  SparseMatrix explicit_map(const Gluing& g, std::size_t s, std::size_t t, int k) const {
    auto it = g.maps.find(k);
    if (it != g.maps.end()) return it->second;
    return SparseMatrix(d_.ring, out_.rank(t, k), out_.rank(s, k));
  }

  void add(ErrorCode code, const std::string& stratum, const std::string& from,
           const std::string& to, std::optional<int> degree, std::string message) {
    findings_.push_back({code, stratum, from, to, degree, std::move(message)});
  }

  const Diagram& d_;
  std::vector<Finding>& findings_;
  std::map<std::pair<std::size_t, std::size_t>, const Gluing*> explicit_;
  StratifiedDiagram out_;
};

ValidationReport validate(const Diagram& d) {
  ValidationReport report;
  DiagramResolver r(d, report.findings);
  if (!r.structure()) return report;
  bool local_ok = r.local_shapes();
  if (local_ok) r.nilpotence();
  bool maps_ok = r.gluing_shapes();
  if (local_ok && maps_ok) {
    r.chain_maps();
    r.resolve(true);
  }
  return report;
}

StratifiedDiagram resolve_gluings(const Diagram& d) {
  ValidationReport report = validate(d);
  if (!report.ok()) {
    const Finding& first = report.findings.front();
    std::string message = first.describe();
    if (report.findings.size() > 1) {
      message += " (and " + std::to_string(report.findings.size() - 1) + " more)";
    }
    fail(first.code, message);
  }
  std::vector<Finding> none;
  DiagramResolver r(d, none);
  r.structure();
  r.resolve(false);
  return r.take(false);
}

StratifiedDiagram resolve_unchecked(const Diagram& d) {
  std::vector<Finding> findings;
  DiagramResolver r(d, findings);
  bool ok = r.structure() && r.local_shapes() && r.gluing_shapes() && r.resolve(false);
  if (!ok) fail(findings.front().code, findings.front().describe());
  return r.take(true);
}

}  // namespace stratacode
