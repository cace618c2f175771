// Copyright 2026 The multicon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "multicon/synthesis.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace multicon {

namespace {

std::string node_pair(Node from, Node to) {
  return "(" + std::to_string(from + 1) + "->" + std::to_string(to + 1) + ")";
}

void require_laplacian_and_partition(const IntMatrix& l, const Partition& p) {
  validate_laplacian(l);
  if (l.rows() != p.node_count())
    throw DimensionMismatch("Laplacian has " + std::to_string(l.rows()) + " nodes but the partition covers " +
                            std::to_string(p.node_count()));
}

}  // namespace

std::string_view to_string(LayerMode mode) {
  switch (mode) {
    case LayerMode::AddOnly:
      return "add";
    case LayerMode::Signed:
      return "signed";
    case LayerMode::SignedConnected:
      return "signed-connected";
  }
  return "?";
}

std::optional<LayerMode> parse_layer_mode(std::string_view text) {
  if (text == "add") return LayerMode::AddOnly;
  if (text == "signed") return LayerMode::Signed;
  if (text == "signed-connected") return LayerMode::SignedConnected;
  return std::nullopt;
}

// --- ControlLayer -----------------------------------------------------------

ControlLayer ControlLayer::empty(std::size_t n, LayerMode mode) { return ControlLayer{IntMatrix(n, n), mode}; }

ControlLayer ControlLayer::from_changes(std::size_t n, std::span<const LinkChange> changes, LayerMode mode) {
  ControlLayer layer = empty(n, mode);
  for (const auto& c : changes) {
    if (c.from >= n || c.to >= n) throw InvalidNode("link " + node_pair(c.from, c.to) + " is outside the graph");
    if (c.from == c.to) throw InvalidGraph("link " + node_pair(c.from, c.to) + " is a self-loop");
    if (layer.delta(c.to, c.from) != 0) throw InvalidGraph("link " + node_pair(c.from, c.to) + " changed twice");
    const std::int64_t v = c.added ? -1 : 1;
    layer.delta(c.to, c.from) = v;
    layer.delta(c.to, c.to) -= v;
  }
  return layer;
}

std::size_t ControlLayer::cost() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < delta.rows(); ++i)
    for (std::size_t j = 0; j < delta.cols(); ++j)
      if (i != j && delta(i, j) != 0) ++c;
  return c;
}

std::vector<LinkChange> ControlLayer::changes() const {
  std::vector<LinkChange> out;
  for (std::size_t i = 0; i < delta.rows(); ++i)
    for (std::size_t j = 0; j < delta.cols(); ++j)
      if (i != j && delta(i, j) != 0) out.push_back({j, i, delta(i, j) < 0});
  return out;
}

void validate_layer(const IntMatrix& laplacian, const ControlLayer& layer) {
  const IntMatrix& u = layer.delta;
  if (!u.square() || u.rows() != laplacian.rows())
    throw DimensionMismatch("control layer is " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                            " but the graph has " + std::to_string(laplacian.rows()) + " nodes");
  for (std::size_t i = 0; i < u.rows(); ++i) {
    std::int64_t off = 0;
    for (std::size_t j = 0; j < u.cols(); ++j) {
      if (i == j) continue;
      const std::int64_t v = u(i, j);
      off += v;
      const bool linked = laplacian(i, j) != 0;
      if (v == 0) continue;
      if (v == -1 && linked) throw SignViolation("layer adds existing link " + node_pair(j, i));
      if (v == 1 && !linked) throw SignViolation("layer removes missing link " + node_pair(j, i));
      if (v == 1 && layer.mode == LayerMode::AddOnly)
        throw SignViolation("add-only layer removes link " + node_pair(j, i));
      if (v != -1 && v != 1)
        throw SignViolation("layer entry for " + node_pair(j, i) + " is " + std::to_string(v));
    }
    if (u(i, i) != -off)
      throw SignViolation("layer row " + std::to_string(i + 1) + " does not sum to zero");
  }
}

AppliedLayer apply_layer(const IntMatrix& laplacian, const ControlLayer& layer) {
  validate_layer(laplacian, layer);
  IntMatrix total = laplacian + layer.delta;
  for (std::size_t i = 0; i < total.rows(); ++i)
    for (std::size_t j = 0; j < total.cols(); ++j)
      if (i != j && total(i, j) != 0 && total(i, j) != -1)
        throw SignViolation("L + L^u has entry " + std::to_string(total(i, j)) + " at " + node_pair(j, i));
  Digraph g = Digraph::from_laplacian(total);
  return AppliedLayer{std::move(total), std::move(g)};
}

// --- problem construction ---------------------------------------------------

ControlLayer BipProblem::layer_from(std::span<const std::uint8_t> y) const {
  if (y.size() != variables.size()) throw DimensionMismatch("assignment length differs from the variable count");
  const std::size_t n = base.rows();
  std::vector<LinkChange> changes;
  for (std::size_t v = 0; v < variables.size(); ++v)
    if (y[v]) changes.push_back({variables[v].col, variables[v].row, variables[v].sign > 0});
  return ControlLayer::from_changes(n, changes, mode);
}

namespace {

// Scales a rational row to coprime integers with a positive leading
// coefficient. Returns false for an all-zero row.
bool normalize_row(const std::map<std::size_t, Rational>& coeffs, const Rational& rhs, LinearRow& out) {
  mpz_class lcm = 1;
  for (const auto& [v, q] : coeffs) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), rhs.get_den_mpz_t());

  std::vector<std::pair<std::size_t, mpz_class>> ints;
  mpz_class g = 0;
  for (const auto& [v, q] : coeffs) {
    if (q == 0) continue;
    mpz_class z = q.get_num() * (lcm / q.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    ints.emplace_back(v, std::move(z));
  }
  mpz_class r = rhs.get_num() * (lcm / rhs.get_den());
  if (ints.empty()) {
    out.terms.clear();
    out.rhs = r == 0 ? 0 : 1;
    return r != 0;
  }
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.get_mpz_t());
  if (ints.front().second < 0) g = -g;

  out.terms.clear();
  for (auto& [v, z] : ints) {
    z /= g;
    if (!z.fits_slong_p()) throw InternalError("BIP coefficient overflows 64 bits");
    out.terms.emplace_back(v, z.get_si());
  }
  r /= g;
  if (!r.fits_slong_p()) throw InternalError("BIP right-hand side overflows 64 bits");
  out.rhs = r.get_si();
  return true;
}

}  // namespace

BipProblem build_bip(const IntMatrix& laplacian, const Partition& target, LayerMode mode) {
  require_laplacian_and_partition(laplacian, target);
  const std::size_t n = laplacian.rows();

  BipProblem p{laplacian, target, mode, {}, {}, {}, std::nullopt};

  for (Node i = 0; i < n; ++i) {
    for (Node j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool linked = laplacian(i, j) != 0;
      if (mode == LayerMode::AddOnly && linked) continue;
      p.variables.push_back({i, j, linked ? -1 : 1, i * n + j});
    }
  }
  std::vector<std::vector<std::size_t>> var_of_row(n);
  for (std::size_t v = 0; v < p.variables.size(); ++v) var_of_row[p.variables[v].row].push_back(v);

  const RatMatrix ph = projector(characteristic_matrix(target));
  const RatMatrix l = to_rational(laplacian);
  const RatMatrix lph = l * ph;
  const RatMatrix rhs_matrix = ph * lph - lph;

  // y_v moves sign * (E_ii - E_ij) into L^u. The (r, c) entry of
  // E_ab P_H - P_H E_ab P_H is R(r, a) P_H(b, c), so the coefficient of y_v
  // in row (r, c) is sign * R(r, i) * (P_H(i, c) - P_H(j, c)).
  std::set<LinearRow> seen;
  bool contradiction = false;
  for (Node c = 0; c < n; ++c) {
    for (Node r = 0; r < n; ++r) {
      std::map<std::size_t, Rational> coeffs;
      for (Node i : target.cell(target.cell_of(r))) {
        const Rational rr = (i == r ? Rational(1) : Rational(0)) - ph(r, i);
        if (rr == 0) continue;
        for (std::size_t v : var_of_row[i]) {
          const Rational diff = ph(i, c) - ph(p.variables[v].col, c);
          if (diff == 0) continue;
          coeffs[v] += p.variables[v].sign * rr * diff;
        }
      }
      LinearRow row;
      if (!normalize_row(coeffs, rhs_matrix(r, c), row)) continue;
      if (row.terms.empty()) contradiction = true;
      if (seen.insert(row).second) p.equalities.push_back(std::move(row));
    }
  }
  if (contradiction) {
    // Keep only the unsatisfiable row so the solver fails immediately.
    p.equalities.erase(std::remove_if(p.equalities.begin(), p.equalities.end(),
                                      [](const LinearRow& r) { return !r.terms.empty(); }),
                       p.equalities.end());
  }

  if (mode == LayerMode::SignedConnected) {
    const std::size_t m = target.cell_count();
    for (std::size_t cm = 0; cm < m; ++cm) {
      for (std::size_t ck = 0; ck < m; ++ck) {
        if (cm == ck) continue;
        std::int64_t existing = 0;
        for (Node i : target.cell(cm))
          for (Node j : target.cell(ck)) existing += laplacian(i, j);
        if (existing == 0) continue;  // pair was never connected; nothing to preserve
        CellPairConstraint con{cm, ck, {}};
        for (std::size_t v = 0; v < p.variables.size(); ++v) {
          const auto& var = p.variables[v];
          if (target.cell_of(var.row) == cm && target.cell_of(var.col) == ck) con.row.terms.emplace_back(v, var.sign);
        }
        con.row.rhs = existing + 1;
        p.at_least.push_back(std::move(con));
      }
    }
    p.max_weak_components = weak_component_count(Digraph::from_laplacian(laplacian));
  }
  return p;
}

// --- branch and bound -------------------------------------------------------

namespace {

constexpr std::int8_t kFree = -1;

class Search {
 public:
  Search(const BipProblem& p, std::uint64_t node_limit, bool use_at_least, bool use_weak)
      : p_(p), node_limit_(node_limit), use_weak_(use_weak && p.max_weak_components.has_value()) {
    for (const auto& r : p.equalities) add_row(r, true);
    if (use_at_least)
      for (const auto& c : p.at_least) add_row(c.row, false);
    value_.assign(p.variables.size(), kFree);
    occurs_.resize(p.variables.size());
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (const auto& [v, a] : rows_[r].terms) occurs_[v].emplace_back(r, a);

    // Variables in no row only matter to the lazy connectivity check.
    for (std::size_t v = 0; v < occurs_.size(); ++v)
      if (occurs_[v].empty() && !use_weak_) fixed_zero_.push_back(v);
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

  /// Least cost with branch order `order`; nullopt when infeasible.
  std::optional<std::size_t> minimize(std::vector<std::size_t> order) {
    best_.reset();
    bound_ = std::numeric_limits<std::size_t>::max();
    first_only_ = false;
    run(std::move(order));
    if (!best_) return std::nullopt;
    return best_cost_;
  }

  /// First assignment in `order` with value 0 tried first whose cost does not
  /// exceed `cost`.
  std::optional<std::vector<std::uint8_t>> first_within(std::vector<std::size_t> order, std::size_t cost) {
    best_.reset();
    bound_ = cost + 1;
    first_only_ = true;
    run(std::move(order));
    return best_;
  }

 private:
  struct Row {
    std::vector<std::pair<std::size_t, std::int64_t>> terms;
    std::int64_t rhs = 0;
    bool equality = true;
    std::int64_t fixed = 0;     // sum over variables set to 1
    std::int64_t free_pos = 0;  // sum of positive coefficients still free
    std::int64_t free_neg = 0;  // sum of negative coefficients still free
  };

  void add_row(const LinearRow& r, bool equality) {
    Row row;
    row.terms = r.terms;
    row.rhs = r.rhs;
    row.equality = equality;
    for (const auto& [v, a] : r.terms) (a > 0 ? row.free_pos : row.free_neg) += a;
    rows_.push_back(std::move(row));
  }

  void run(std::vector<std::size_t> order) {
    order_ = std::move(order);
    trail_.clear();
    std::fill(value_.begin(), value_.end(), kFree);
    for (auto& r : rows_) {
      r.fixed = 0;
      r.free_pos = r.free_neg = 0;
      for (const auto& [v, a] : r.terms) (a > 0 ? r.free_pos : r.free_neg) += a;
    }
    cost_ = 0;
    for (std::size_t v : fixed_zero_) assign(v, 0);
    bool ok = true;
    for (std::size_t r = 0; r < rows_.size() && ok; ++r) ok = row_possible(rows_[r]);
    if (ok) ok = propagate_all();
    if (ok) dfs(0);
  }

  void assign(std::size_t v, std::int8_t val) {
    value_[v] = val;
    trail_.push_back(v);
    if (val) ++cost_;
    for (const auto& [r, a] : occurs_[v]) {
      Row& row = rows_[r];
      (a > 0 ? row.free_pos : row.free_neg) -= a;
      if (val) row.fixed += a;
    }
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const std::size_t v = trail_.back();
      trail_.pop_back();
      const std::int8_t val = value_[v];
      if (val) --cost_;
      for (const auto& [r, a] : occurs_[v]) {
        Row& row = rows_[r];
        (a > 0 ? row.free_pos : row.free_neg) += a;
        if (val) row.fixed -= a;
      }
      value_[v] = kFree;
    }
  }

  static bool row_possible(const Row& r) {
    const std::int64_t hi = r.fixed + r.free_pos;
    if (!r.equality) return hi >= r.rhs;
    const std::int64_t lo = r.fixed + r.free_neg;
    return lo <= r.rhs && r.rhs <= hi;
  }

  // Forces free variables of `r` whose other value makes the row
  // unsatisfiable. Returns false on conflict.
  bool propagate_row(std::size_t ri, std::vector<std::size_t>& touched) {
    const Row& r = rows_[ri];
    if (!row_possible(r)) return false;
    const std::int64_t hi = r.fixed + r.free_pos;
    const std::int64_t lo = r.fixed + r.free_neg;
    for (const auto& [v, a] : r.terms) {
      if (value_[v] != kFree) continue;
      const std::int64_t hi0 = hi - std::max<std::int64_t>(a, 0);
      const std::int64_t lo0 = lo - std::min<std::int64_t>(a, 0);
      const std::int64_t hi1 = hi0 + a;
      const std::int64_t lo1 = lo0 + a;
      bool can0 = hi0 >= r.rhs;
      bool can1 = hi1 >= r.rhs;
      if (r.equality) {
        can0 = can0 && lo0 <= r.rhs;
        can1 = can1 && lo1 <= r.rhs;
      }
      if (!can0 && !can1) return false;
      if (can0 && can1) continue;
      if (can1 && cost_ + 1 >= bound_) return false;
      assign(v, can1 ? 1 : 0);
      touched.push_back(v);
      // Row sums changed; re-run this row from scratch.
      return propagate_row(ri, touched);
    }
    return true;
  }

  bool propagate_from(std::vector<std::size_t> queue) {
    std::vector<std::size_t> touched;
    while (!queue.empty()) {
      const std::size_t v = queue.back();
      queue.pop_back();
      for (const auto& [r, a] : occurs_[v]) {
        touched.clear();
        if (!propagate_row(r, touched)) return false;
        queue.insert(queue.end(), touched.begin(), touched.end());
      }
    }
    return true;
  }

  bool propagate_all() {
    std::vector<std::size_t> touched;
    std::vector<std::size_t> queue;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      touched.clear();
      if (!propagate_row(r, touched)) return false;
      queue.insert(queue.end(), touched.begin(), touched.end());
    }
    return propagate_from(std::move(queue));
  }

  // Ones still needed: sum over rows with pairwise disjoint free supports of
  // ceil(deficit / largest usable coefficient).
  std::size_t remaining_bound() {
    needs_.clear();
    for (std::size_t ri = 0; ri < rows_.size(); ++ri) {
      const Row& r = rows_[ri];
      const std::int64_t d = r.rhs - r.fixed;
      if (d == 0 || (!r.equality && d < 0)) continue;
      std::int64_t best = 0;
      for (const auto& [v, a] : r.terms)
        if (value_[v] == kFree && ((d > 0 && a > 0) || (d < 0 && a < 0))) best = std::max(best, a > 0 ? a : -a);
      if (best == 0) continue;  // caught by row_possible
      const std::int64_t need = ((d > 0 ? d : -d) + best - 1) / best;
      needs_.emplace_back(need, ri);
    }
    if (needs_.empty()) return 0;
    std::sort(needs_.begin(), needs_.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    ++stamp_;
    if (mark_.size() != value_.size()) mark_.assign(value_.size(), 0);
    std::size_t total = 0;
    for (const auto& [need, ri] : needs_) {
      const Row& r = rows_[ri];
      bool disjoint = true;
      for (const auto& [v, a] : r.terms)
        if (value_[v] == kFree && mark_[v] == stamp_) {
          disjoint = false;
          break;
        }
      if (!disjoint) continue;
      for (const auto& [v, a] : r.terms)
        if (value_[v] == kFree) mark_[v] = stamp_;
      total += static_cast<std::size_t>(need);
    }
    return total;
  }

  bool leaf_accepts() {
    if (!use_weak_) return true;
    std::vector<std::uint8_t> y(value_.size());
    for (std::size_t v = 0; v < y.size(); ++v) y[v] = value_[v] == 1;
    const AppliedLayer applied = apply_layer(p_.base, p_.layer_from(y));
    return weak_component_count(applied.graph) <= *p_.max_weak_components;
  }

  // Returns true when the search should stop.
  bool dfs(std::size_t pos) {
    if (++nodes_ > node_limit_)
      throw BudgetExceeded("branch-and-bound exceeded " + std::to_string(node_limit_) + " nodes");
    if (cost_ + remaining_bound() >= bound_) return false;
    while (pos < order_.size() && value_[order_[pos]] != kFree) ++pos;
    if (pos == order_.size()) {
      for (const auto& r : rows_)
        if (r.fixed != r.rhs && (r.equality || r.fixed < r.rhs)) return false;
      if (!leaf_accepts()) return false;
      best_.emplace(value_.size());
      for (std::size_t v = 0; v < value_.size(); ++v) (*best_)[v] = value_[v] == 1;
      best_cost_ = cost_;
      bound_ = cost_;
      return first_only_;
    }
    const std::size_t v = order_[pos];
    for (std::int8_t val : {std::int8_t{0}, std::int8_t{1}}) {
      if (val == 1 && cost_ + 1 >= bound_) break;
      const std::size_t mark = trail_.size();
      assign(v, val);
      if (propagate_from({v}) && dfs(pos + 1)) return true;
      undo_to(mark);
    }
    return false;
  }

  const BipProblem& p_;
  std::uint64_t node_limit_;
  bool use_weak_;
  std::vector<Row> rows_;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> occurs_;  // variable -> (row, coeff)
  std::vector<std::size_t> fixed_zero_;
  std::vector<std::int8_t> value_;
  std::vector<std::size_t> trail_;
  std::vector<std::size_t> order_;
  std::size_t cost_ = 0;
  std::size_t bound_ = 0;  // exclusive upper bound on cost
  bool first_only_ = false;
  std::optional<std::vector<std::uint8_t>> best_;
  std::size_t best_cost_ = 0;
  std::uint64_t nodes_ = 0;
  std::vector<std::pair<std::int64_t, std::size_t>> needs_;
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
};

std::vector<std::size_t> mass_order(const BipProblem& p) {
  std::vector<std::int64_t> mass(p.variables.size(), 0);
  for (const auto& r : p.equalities)
    for (const auto& [v, a] : r.terms) mass[v] += a > 0 ? a : -a;
  std::vector<std::size_t> order(p.variables.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return mass[x] > mass[y]; });
  return order;
}

std::vector<std::size_t> index_order(const BipProblem& p) {
  std::vector<std::size_t> order(p.variables.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

std::string describe_pair(const BipProblem& p, const CellPairConstraint& c) {
  auto cell = [&](std::size_t k) {
    std::string s = "{";
    const auto& members = p.target.cell(k);
    for (std::size_t i = 0; i < members.size(); ++i) s += (i ? "," : "") + std::to_string(members[i] + 1);
    return s + "}";
  };
  return "keep a link from " + cell(c.source) + " into " + cell(c.receiver);
}

[[noreturn]] void report_infeasible(const BipProblem& p, const SolveOptions& options) {
  if (p.mode != LayerMode::SignedConnected)
    throw Infeasible("no " + std::string(to_string(p.mode)) + " layer makes the target an EEP");

  Search relaxed(p, options.node_limit, false, false);
  if (!relaxed.minimize(mass_order(p)))
    throw Infeasible("the EEP equalities alone have no signed solution");

  std::vector<std::string> culprits;
  for (std::size_t k = 0; k < p.at_least.size(); ++k) {
    BipProblem drop = p;
    drop.at_least.erase(drop.at_least.begin() + static_cast<std::ptrdiff_t>(k));
    Search s(drop, options.node_limit, true, true);
    if (s.minimize(mass_order(drop))) culprits.push_back(describe_pair(p, p.at_least[k]));
  }
  {
    BipProblem drop = p;
    drop.max_weak_components.reset();
    Search s(drop, options.node_limit, true, false);
    if (s.minimize(mass_order(drop))) culprits.push_back("do not split weakly connected components");
  }
  std::string msg = "the connectivity constraints conflict with the EEP equalities";
  if (!culprits.empty()) {
    msg += "; dropping any one of these restores feasibility:";
    for (const auto& c : culprits) msg += " [" + c + "]";
  }
  throw Infeasible(msg);
}

}  // namespace

ControlLayer solve_bip(const BipProblem& problem, const SolveOptions& options, SolveStats* stats) {
  Search search(problem, options.node_limit, true, true);
  const auto cost = search.minimize(mass_order(problem));
  if (!cost) report_infeasible(problem, options);
  const auto y = search.first_within(index_order(problem), *cost);
  if (!y) throw InternalError("optimal cost found but no assignment reaches it in index order");
  if (stats) {
    stats->nodes = search.nodes();
    stats->cost = *cost;
  }
  return problem.layer_from(*y);
}

// --- constructive algorithm -------------------------------------------------

namespace {

// In-count of node j from cell `source`.
std::int64_t in_count(const IntMatrix& l, Node j, const NodeSet& source) {
  std::int64_t c = 0;
  for (Node i : source) c -= l(j, i);
  return c;
}

std::int64_t pair_max(const IntMatrix& l, const NodeSet& receiver, const NodeSet& source) {
  std::int64_t b = 0;
  for (Node j : receiver) b = std::max(b, in_count(l, j, source));
  return b;
}

}  // namespace

std::size_t constructive_link_count(const IntMatrix& laplacian, const Partition& target) {
  require_laplacian_and_partition(laplacian, target);
  std::size_t total = 0;
  for (std::size_t k = 0; k < target.cell_count(); ++k) {
    for (std::size_t h = 0; h < target.cell_count(); ++h) {
      if (h == k) continue;
      const std::int64_t b = pair_max(laplacian, target.cell(k), target.cell(h));
      for (Node j : target.cell(k)) total += static_cast<std::size_t>(b - in_count(laplacian, j, target.cell(h)));
    }
  }
  return total;
}

ControlLayer constructive_add(const IntMatrix& laplacian, const Partition& target) {
  require_laplacian_and_partition(laplacian, target);
  const std::size_t n = laplacian.rows();
  ControlLayer layer = ControlLayer::empty(n, LayerMode::AddOnly);
  for (std::size_t k = 0; k < target.cell_count(); ++k) {
    for (std::size_t h = 0; h < target.cell_count(); ++h) {
      if (h == k) continue;
      const NodeSet& source = target.cell(h);
      const std::int64_t b = pair_max(laplacian, target.cell(k), source);
      for (Node j : target.cell(k)) {
        std::int64_t need = b - in_count(laplacian, j, source);
        for (Node i : source) {
          if (need == 0) break;
          if (laplacian(j, i) != 0) continue;
          layer.delta(j, i) = -1;
          layer.delta(j, j) += 1;
          --need;
        }
        if (need > 0)
          throw InsufficientSources("node " + std::to_string(j + 1) + " needs " + std::to_string(need) +
                                    " more links from cell of node " + std::to_string(source.front() + 1));
      }
    }
  }
  return layer;
}

}  // namespace multicon
