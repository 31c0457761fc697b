#include "noisekit/select.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "noisekit/curve.hpp"

namespace noisekit {

namespace {

constexpr int kFreeMarker = std::numeric_limits<int>::max();
constexpr double kBoundSlack = 1e-9;

// ---------------------------------------------------------------------------
// Dense two-phase simplex for  max c.x  subject to  A x <= b, x >= 0.
// Returns -inf when infeasible, +inf when unbounded.  Pivot selection
// breaks ties on variable index, which keeps the solver deterministic and
// free of cycling in practice.

class DenseSimplex {
 public:
  DenseSimplex(const std::vector<std::vector<double>>& A,
               const std::vector<double>& b, const std::vector<double>& c)
      : m_(static_cast<int>(b.size())),
        n_(static_cast<int>(c.size())),
        nonbasic_(n_ + 1),
        basic_(m_),
        tab_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) tab_[i][j] = A[i][j];
    }
    for (int i = 0; i < m_; ++i) {
      basic_[i] = n_ + i;
      tab_[i][n_] = -1.0;
      tab_[i][n_ + 1] = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      tab_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;
    tab_[m_ + 1][n_] = 1.0;
  }

  double solve(std::vector<double>& x) {
    int r = 0;
    for (int i = 1; i < m_; ++i) {
      if (tab_[i][n_ + 1] < tab_[r][n_ + 1]) r = i;
    }
    if (tab_[r][n_ + 1] < -kEps) {
      pivot(r, n_);
      if (!run(2) || tab_[m_ + 1][n_ + 1] < -kEps) {
        return -std::numeric_limits<double>::infinity();
      }
      for (int i = 0; i < m_; ++i) {
        if (basic_[i] == -1) {
          int s = 0;
          for (int j = 1; j <= n_; ++j) {
            if (prefer(tab_[i], j, s)) s = j;
          }
          pivot(i, s);
        }
      }
    }
    const bool bounded = run(1);
    x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basic_[i] < n_) x[basic_[i]] = tab_[i][n_ + 1];
    }
    return bounded ? tab_[m_][n_ + 1] : std::numeric_limits<double>::infinity();
  }

 private:
  static constexpr double kEps = 1e-10;

  bool prefer(const std::vector<double>& row, int j, int s) const {
    return std::make_pair(row[j], nonbasic_[j]) <
           std::make_pair(row[s], nonbasic_[s]);
  }

  void pivot(int r, int s) {
    std::vector<double>& prow = tab_[r];
    const double inv = 1.0 / prow[s];
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || std::fabs(tab_[i][s]) <= kEps) continue;
      std::vector<double>& row = tab_[i];
      const double factor = row[s] * inv;
      for (int j = 0; j < n_ + 2; ++j) row[j] -= prow[j] * factor;
      row[s] = prow[s] * factor;
    }
    for (int j = 0; j < n_ + 2; ++j) {
      if (j != s) prow[j] *= inv;
    }
    for (int i = 0; i < m_ + 2; ++i) {
      if (i != r) tab_[i][s] *= -inv;
    }
    prow[s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  bool run(int phase) {
    const int goal = m_ + phase - 1;
    for (;;) {
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (s == -1 || prefer(tab_[goal], j, s)) s = j;
      }
      if (tab_[goal][s] >= -kEps) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (tab_[i][s] <= kEps) continue;
        if (r == -1 ||
            std::make_pair(tab_[i][n_ + 1] / tab_[i][s], basic_[i]) <
                std::make_pair(tab_[r][n_ + 1] / tab_[r][s], basic_[r])) {
          r = i;
        }
      }
      if (r == -1) return false;
      pivot(r, s);
    }
  }

  int m_, n_;
  std::vector<int> nonbasic_, basic_;
  std::vector<std::vector<double>> tab_;
};

// ---------------------------------------------------------------------------
// Min-max linear program for one coordinate:
//   minimize t  s.t.  |d_j + sum_s w[j][s] phi_s| <= t,  |phi_s| <= box_s.
// Variables are rescaled to [0, 2] and each constraint row is normalized,
// so the simplex works on O(1) numbers regardless of the problem scale.

struct MinimaxResult {
  double value = 0.0;
  std::vector<double> phi;
};

MinimaxResult solve_minimax_box(const std::vector<double>& d,
                                const std::vector<std::vector<double>>& w,
                                const std::vector<double>& boxes) {
  const int rows = static_cast<int>(d.size());
  const int vars = static_cast<int>(boxes.size());
  const int t_idx = vars;

  // Substituted rows in the shifted variables: row_j(u) = shifted_j +
  // sum_s scaled[j][s] u_s with u in [0, 2].
  std::vector<std::vector<double>> scaled(rows, std::vector<double>(vars));
  std::vector<double> shifted(rows);
  double magnitude = 0.0;
  for (int j = 0; j < rows; ++j) {
    double reach = 0.0;
    shifted[j] = d[j];
    for (int s = 0; s < vars; ++s) {
      scaled[j][s] = w[j][s] * boxes[s];
      shifted[j] -= scaled[j][s];
      reach += std::fabs(scaled[j][s]);
    }
    magnitude = std::max(magnitude, std::fabs(shifted[j]) + reach);
  }

  MinimaxResult result;
  result.phi.assign(vars, 0.0);
  if (magnitude == 0.0) return result;

  // One global scale keeps every tableau entry O(1); the objective variable
  // is tau = t / magnitude.
  const double inv_mag = 1.0 / magnitude;
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  A.reserve(2 * rows + vars);
  for (int s = 0; s < vars; ++s) {
    std::vector<double> row(vars + 1, 0.0);
    row[s] = 1.0;
    A.push_back(std::move(row));
    b.push_back(2.0);
  }
  for (int j = 0; j < rows; ++j) {
    std::vector<double> upper(vars + 1), lower(vars + 1);
    for (int s = 0; s < vars; ++s) {
      upper[s] = scaled[j][s] * inv_mag;
      lower[s] = -upper[s];
    }
    upper[t_idx] = -1.0;
    lower[t_idx] = -1.0;
    A.push_back(std::move(upper));
    b.push_back(-shifted[j] * inv_mag);
    A.push_back(std::move(lower));
    b.push_back(shifted[j] * inv_mag);
  }

  std::vector<double> c(vars + 1, 0.0);
  c[t_idx] = -1.0;

  std::vector<double> x;
  const double opt = DenseSimplex(A, b, c).solve(x);
  if (!std::isfinite(opt)) {
    throw std::runtime_error("minimax subproblem did not solve");
  }
  for (int s = 0; s < vars; ++s) {
    result.phi[s] = boxes[s] * (std::clamp(x[s], 0.0, 2.0) - 1.0);
  }

  // Polish: report the exact row maximum at the returned placement instead of
  // the tableau's tau, and snap placements that are zero up to solver noise.
  // This keeps value 0 exact when the base point alone is optimal.
  const auto exact_at = [&](const std::vector<double>& phi) {
    double worst = 0.0;
    for (int j = 0; j < rows; ++j) {
      double row = d[j];
      for (int s = 0; s < vars; ++s) row += w[j][s] * phi[s];
      worst = std::max(worst, std::fabs(row));
    }
    return worst;
  };
  std::vector<double> snapped = result.phi;
  bool any_snapped = false;
  for (int s = 0; s < vars; ++s) {
    if (snapped[s] != 0.0 && std::fabs(snapped[s]) < 1e-12 * boxes[s]) {
      snapped[s] = 0.0;
      any_snapped = true;
    }
  }
  result.value = exact_at(result.phi);
  if (any_snapped) {
    const double snapped_value = exact_at(snapped);
    if (snapped_value <= result.value) {
      result.value = snapped_value;
      result.phi = std::move(snapped);
    }
  }
  return result;
}

// Newton weight of slot k in the order-j divided difference over unit
// nodes: [c^0..c^j] = sum_k (-1)^(j-k) / (k! (j-k)!) c^k.
std::vector<std::vector<double>> newton_weights(int m) {
  std::vector<double> inv_fact(m + 1, 1.0);
  for (int k = 1; k <= m; ++k) inv_fact[k] = inv_fact[k - 1] / k;
  std::vector<std::vector<double>> a(m + 1);
  for (int j = 0; j <= m; ++j) {
    a[j].resize(j + 1);
    for (int k = 0; k <= j; ++k) {
      const double mag = inv_fact[k] * inv_fact[j - k];
      a[j][k] = ((j - k) % 2 == 0) ? mag : -mag;
    }
  }
  return a;
}

void validate_problem(const SelectionProblem& p) {
  const int n = static_cast<int>(p.base.size());
  if (n < 1) throw std::invalid_argument("selection base must be non-empty");
  for (const auto& q : p.pool) {
    if (static_cast<int>(q.size()) != n) {
      throw std::invalid_argument("pool point dimension mismatch");
    }
  }
  if (p.slots < 1) throw std::invalid_argument("selection requires slots >= 1");
  if (p.reuse_budget < 0 || p.reuse_budget > p.slots) {
    throw std::invalid_argument("reuse budget must lie in [0, slots]");
  }
  if (p.reuse_budget > static_cast<int>(p.pool.size())) {
    throw std::invalid_argument("reuse budget exceeds pool size");
  }
  if (p.reuse_budget < p.slots && p.box_radius <= 0.0) {
    throw std::invalid_argument("free slots require a positive box radius");
  }
  if (p.limits.max_nodes < 1 || p.limits.max_seconds <= 0.0) {
    throw std::invalid_argument("search limits must be positive");
  }
}

std::vector<std::vector<double>> translated_pool(const SelectionProblem& p) {
  std::vector<std::vector<double>> off(p.pool.size());
  for (std::size_t q = 0; q < p.pool.size(); ++q) {
    off[q].resize(p.base.size());
    for (std::size_t i = 0; i < p.base.size(); ++i) {
      off[q][i] = p.pool[q][i] - p.base[i];
    }
  }
  return off;
}

double max_norm(const std::vector<double>& v) {
  double norm = 0.0;
  for (double vi : v) norm = std::max(norm, std::fabs(vi));
  return norm;
}

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// True when the first `len` entries of a compare lexicographically greater
// than the same prefix of b.
bool prefix_greater(const std::vector<int>& a, const std::vector<int>& b,
                    int len) {
  for (int j = 0; j < len; ++j) {
    if (a[j] != b[j]) return a[j] > b[j];
  }
  return false;
}

// ---------------------------------------------------------------------------
// Branch and bound.

class Searcher {
 public:
  explicit Searcher(const SelectionProblem& p)
      : prob_(p),
        n_(static_cast<int>(p.base.size())),
        m_(p.slots),
        reuse_(p.reuse_budget),
        free_total_(p.slots - p.reuse_budget),
        pool_size_(static_cast<int>(p.pool.size())),
        off_(translated_pool(p)),
        weights_(newton_weights(p.slots)) {
    norms_.resize(pool_size_);
    for (int q = 0; q < pool_size_; ++q) norms_[q] = max_norm(off_[q]);
    by_norm_.resize(pool_size_);
    std::iota(by_norm_.begin(), by_norm_.end(), 0);
    std::sort(by_norm_.begin(), by_norm_.end(), [&](int a, int b) {
      return std::make_pair(norms_[a], a) < std::make_pair(norms_[b], b);
    });
    diag_.resize(m_ + 1);
    for (int j = 0; j <= m_; ++j) diag_[j].assign(n_ * (j + 1), 0.0);
    chosen_.assign(m_, -2);
    used_.assign(pool_size_, 0);
  }

  SelectionSolution run() {
    start_ = std::chrono::steady_clock::now();
    seed_incumbent();
    SelectionSolution solution;
    if (reuse_ == 0) {
      solution.warnings.push_back(
          "reuse budget is 0: every slot is free and the optimum is the "
          "degenerate all-at-base placement");
    }
    dfs(1, 0.0);
    solution.assignment = inc_assignment_;
    solution.objective = inc_obj_;
    solution.optimal = !aborted_;
    solution.nodes_visited = nodes_;
    solution.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    if (aborted_) {
      solution.warnings.push_back(
          "search budget exhausted; best incumbent returned");
    }
    return solution;
  }

 private:
  // Exact extension of the per-coordinate divided-difference diagonals with
  // pool point q at depth j.  Returns the largest new order-j coefficient.
  double extend_diagonals(int depth, int q, bool store) {
    const std::vector<double>& prev = diag_[depth - 1];
    std::vector<double>& next = diag_[depth];
    double worst = 0.0;
    const int stride = depth + 1;
    for (int i = 0; i < n_; ++i) {
      double nd_prev = off_[q][i];
      if (store) next[i * stride] = nd_prev;
      for (int k = 1; k <= depth; ++k) {
        const double nd = (nd_prev - prev[i * depth + (k - 1)]) / k;
        if (store) next[i * stride + k] = nd;
        nd_prev = nd;
      }
      worst = std::max(worst, std::fabs(nd_prev));
    }
    return worst;
  }

  // Lower bound for a prefix holding free slots: the exact min-max value
  // of the orders the prefix fully determines (j <= depth), with the free
  // coordinates chosen optimally.  Orders touching unassigned slots are
  // dropped, which keeps the bound sound for every completion.  Stores the
  // free placements for leaves (depth == m_), where every order is
  // determined and the bound is the exact free-point optimum.
  double partial_bound(int depth, std::vector<std::vector<double>>* phi_out) {
    std::vector<int> var_slot;  // slot index per variable
    for (int j = 1; j <= depth; ++j) {
      if (chosen_[j - 1] == kFreeMarker) var_slot.push_back(j);
    }
    const int vars = static_cast<int>(var_slot.size());

    // One free coordinate per row: |alpha_j + beta_j phi| over a box is
    // minimized at a two-row balance point, so the unconstrained pairwise
    // value max |a_j b_k - a_k b_j| / (|b_j| + |b_k|) is an exact lower
    // bound and needs no simplex.
    if (vars == 1 && !phi_out) {
      const int slot = var_slot[0];
      double bound = 0.0;
      std::vector<double> alpha(depth), beta(depth);
      for (int i = 0; i < n_; ++i) {
        for (int j = 1; j <= depth; ++j) {
          double acc = 0.0;
          for (int k = 1; k <= j; ++k) {
            const int entry = chosen_[k - 1];
            if (entry != kFreeMarker) acc += weights_[j][k] * off_[entry][i];
          }
          alpha[j - 1] = acc;
          beta[j - 1] = slot <= j ? weights_[j][slot] : 0.0;
        }
        double best = 0.0;
        for (int j = 0; j < depth; ++j) {
          if (beta[j] == 0.0) {
            best = std::max(best, std::fabs(alpha[j]));
            continue;
          }
          for (int k = j + 1; k < depth; ++k) {
            const double value = std::fabs(alpha[j] * beta[k] - alpha[k] * beta[j]) /
                                 (std::fabs(beta[j]) + std::fabs(beta[k]));
            best = std::max(best, value);
          }
        }
        bound = std::max(bound, best);
      }
      return bound;
    }

    std::vector<std::vector<double>> w(depth, std::vector<double>(vars, 0.0));
    for (int j = 1; j <= depth; ++j) {
      for (int s = 0; s < vars; ++s) {
        if (var_slot[s] <= j) w[j - 1][s] = weights_[j][var_slot[s]];
      }
    }
    const std::vector<double> boxes(vars, prob_.box_radius);

    double bound = 0.0;
    std::vector<double> d(depth);
    for (int i = 0; i < n_; ++i) {
      for (int j = 1; j <= depth; ++j) {
        double acc = 0.0;
        for (int k = 1; k <= j; ++k) {
          const int entry = chosen_[k - 1];
          if (entry != kFreeMarker) acc += weights_[j][k] * off_[entry][i];
        }
        d[j - 1] = acc;
      }
      MinimaxResult lp = solve_minimax_box(d, w, boxes);
      bound = std::max(bound, lp.value);
      if (phi_out) {
        for (int s = 0; s < vars; ++s) (*phi_out)[s].push_back(lp.phi[s]);
      }
    }
    return bound;
  }

  void seed_incumbent() {
    std::vector<int> seq(m_, kFreeMarker);
    for (int r = 0; r < reuse_; ++r) seq[r] = by_norm_[r];
    inc_assignment_ = assemble(seq);
    inc_obj_ = selection_objective(prob_, inc_assignment_);
    inc_seq_ = encode(inc_assignment_);
  }

  // Builds the full assignment for a slot sequence, solving for the free
  // placements when the sequence holds free markers.
  std::vector<SlotAssignment> assemble(const std::vector<int>& seq) const {
    std::vector<SlotAssignment> assignment(m_);
    bool any_free = false;
    for (int j = 0; j < m_; ++j) {
      if (seq[j] == kFreeMarker) {
        any_free = true;
      } else {
        assignment[j].pool_index = seq[j];
      }
    }
    if (any_free) {
      std::vector<std::optional<std::vector<double>>> slots(m_);
      for (int j = 0; j < m_; ++j) {
        if (seq[j] != kFreeMarker) slots[j] = off_[seq[j]];
      }
      FreePointResult placed =
          free_point_subproblem(n_, slots, prob_.box_radius);
      int next = 0;
      for (int j = 0; j < m_; ++j) {
        if (seq[j] == kFreeMarker) {
          assignment[j].free_offset = placed.free_offsets[next++];
        }
      }
    }
    return assignment;
  }

  static std::vector<int> encode(const std::vector<SlotAssignment>& assignment) {
    std::vector<int> seq(assignment.size());
    for (std::size_t j = 0; j < assignment.size(); ++j) {
      seq[j] = assignment[j].is_free() ? kFreeMarker : assignment[j].pool_index;
    }
    return seq;
  }

  bool out_of_budget() {
    if (nodes_ > prob_.limits.max_nodes) return true;
    if ((nodes_ & 511) == 0) {
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start_)
              .count();
      if (elapsed > prob_.limits.max_seconds) return true;
    }
    return false;
  }

  void update_incumbent(double objective,
                        std::vector<SlotAssignment> assignment) {
    const std::vector<int> seq = encode(assignment);
    if (objective < inc_obj_ ||
        (objective == inc_obj_ && lex_less(seq, inc_seq_))) {
      inc_obj_ = objective;
      inc_assignment_ = std::move(assignment);
      inc_seq_ = seq;
    }
  }

  void visit(int depth, double parent_value, int entry, bool pure_prefix) {
    if (aborted_) return;
    ++nodes_;
    if (out_of_budget()) {
      aborted_ = true;
      return;
    }
    chosen_[depth - 1] = entry;

    double value = 0.0;
    std::vector<std::vector<double>> leaf_phi;
    if (pure_prefix) {
      value = std::max(parent_value, extend_diagonals(depth, entry, true));
      assert(value >= parent_value);
      if (value > inc_obj_ ||
          (value == inc_obj_ && prefix_greater(chosen_, inc_seq_, depth))) {
        return;
      }
    } else {
      if (depth == m_) {
        leaf_phi.assign(free_total_, {});
        value = partial_bound(depth, &leaf_phi);
      } else {
        value = partial_bound(depth, nullptr);
      }
      assert(value >= parent_value * (1.0 - 1e-9) - 1e-300);
      if (value > inc_obj_ * (1.0 + kBoundSlack)) return;
    }

    if (depth == m_) {
      if (pure_prefix) {
        std::vector<SlotAssignment> assignment(m_);
        for (int j = 0; j < m_; ++j) assignment[j].pool_index = chosen_[j];
        update_incumbent(value, std::move(assignment));
      } else {
        // leaf_phi holds one row per free slot, one entry per coordinate,
        // assembled coordinate by coordinate above
        std::vector<SlotAssignment> assignment(m_);
        int next = 0;
        for (int j = 0; j < m_; ++j) {
          if (chosen_[j] == kFreeMarker) {
            assignment[j].free_offset = leaf_phi[next++];
          } else {
            assignment[j].pool_index = chosen_[j];
          }
        }
        const double exact = selection_objective(prob_, assignment);
        update_incumbent(exact, std::move(assignment));
      }
      return;
    }
    dfs(depth + 1, value);
  }

  void dfs(int depth, double parent_value) {
    if (aborted_) return;
    const int pool_used = count_pool(depth - 1);
    const int free_used = depth - 1 - pool_used;
    const bool pure_prefix = free_used == 0;

    if (free_used < free_total_) {
      visit(depth, parent_value, kFreeMarker, false);
      if (!aborted_) chosen_[depth - 1] = -2;
    }
    if (pool_used < reuse_) {
      if (pure_prefix) {
        // order the pool children by their exact new partial value
        std::vector<std::pair<double, int>> children;
        for (int q : by_norm_) {
          if (used_[q]) continue;
          const double value =
              std::max(parent_value, extend_diagonals(depth, q, false));
          if (value > inc_obj_) continue;
          children.emplace_back(value, q);
        }
        std::sort(children.begin(), children.end());
        for (const auto& [value, q] : children) {
          if (aborted_) return;
          used_[q] = 1;
          visit(depth, parent_value, q, true);
          used_[q] = 0;
          chosen_[depth - 1] = -2;
        }
      } else {
        for (int q : by_norm_) {
          if (aborted_) return;
          if (used_[q]) continue;
          used_[q] = 1;
          visit(depth, parent_value, q, false);
          used_[q] = 0;
          chosen_[depth - 1] = -2;
        }
      }
    }
  }

  int count_pool(int prefix_len) const {
    int count = 0;
    for (int j = 0; j < prefix_len; ++j) {
      if (chosen_[j] != kFreeMarker) ++count;
    }
    return count;
  }

  const SelectionProblem& prob_;
  int n_, m_, reuse_, free_total_, pool_size_;
  std::vector<std::vector<double>> off_;
  std::vector<std::vector<double>> weights_;
  std::vector<double> norms_;
  std::vector<int> by_norm_;
  std::vector<std::vector<double>> diag_;
  std::vector<int> chosen_;
  std::vector<char> used_;

  std::vector<SlotAssignment> inc_assignment_;
  std::vector<int> inc_seq_;
  double inc_obj_ = std::numeric_limits<double>::infinity();

  std::int64_t nodes_ = 0;
  bool aborted_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

double selection_objective(const SelectionProblem& problem,
                           const std::vector<SlotAssignment>& assignment) {
  validate_problem(problem);
  const int n = static_cast<int>(problem.base.size());
  const int m = problem.slots;
  if (static_cast<int>(assignment.size()) != m) {
    throw std::invalid_argument("assignment must cover every slot");
  }
  std::vector<char> seen(problem.pool.size(), 0);
  for (const SlotAssignment& slot : assignment) {
    if (slot.is_free()) {
      if (static_cast<int>(slot.free_offset.size()) != n) {
        throw std::invalid_argument("free offset dimension mismatch");
      }
    } else {
      if (slot.pool_index >= static_cast<int>(problem.pool.size())) {
        throw std::invalid_argument("pool index out of range");
      }
      if (seen[slot.pool_index]) {
        throw std::invalid_argument("pool point used twice");
      }
      seen[slot.pool_index] = 1;
    }
  }

  double objective = 0.0;
  std::vector<double> samples(m + 1);
  for (int i = 0; i < n; ++i) {
    samples[0] = 0.0;
    for (int j = 0; j < m; ++j) {
      const SlotAssignment& slot = assignment[j];
      samples[j + 1] = slot.is_free()
                           ? slot.free_offset[i]
                           : problem.pool[slot.pool_index][i] - problem.base[i];
    }
    const std::vector<double> dd = divided_differences(samples);
    for (int k = 1; k <= m; ++k) {
      objective = std::max(objective, std::fabs(dd[k]));
    }
  }
  return objective;
}

FreePointResult free_point_subproblem(
    int dim, const std::vector<std::optional<std::vector<double>>>& slots,
    double box_radius) {
  if (dim < 1) throw std::invalid_argument("dimension must be at least 1");
  if (box_radius <= 0.0) {
    throw std::invalid_argument("box radius must be positive");
  }
  const int m = static_cast<int>(slots.size());
  if (m < 1) throw std::invalid_argument("at least one slot is required");

  std::vector<int> free_slots;
  for (int j = 0; j < m; ++j) {
    if (!slots[j].has_value()) {
      free_slots.push_back(j + 1);
    } else if (static_cast<int>(slots[j]->size()) != dim) {
      throw std::invalid_argument("fixed slot dimension mismatch");
    }
  }
  if (free_slots.empty()) {
    throw std::domain_error("free_point_subproblem requires a free slot");
  }
  const int vars = static_cast<int>(free_slots.size());

  const std::vector<std::vector<double>> weights = newton_weights(m);
  std::vector<std::vector<double>> w(m, std::vector<double>(vars, 0.0));
  for (int j = 1; j <= m; ++j) {
    for (int s = 0; s < vars; ++s) {
      if (free_slots[s] <= j) w[j - 1][s] = weights[j][free_slots[s]];
    }
  }
  const std::vector<double> boxes(vars, box_radius);

  FreePointResult result;
  result.free_offsets.assign(vars, std::vector<double>(dim, 0.0));
  std::vector<double> d(m);
  for (int i = 0; i < dim; ++i) {
    for (int j = 1; j <= m; ++j) {
      double acc = 0.0;
      for (int k = 1; k <= j; ++k) {
        if (slots[k - 1].has_value()) acc += weights[j][k] * (*slots[k - 1])[i];
      }
      d[j - 1] = acc;
    }
    MinimaxResult lp = solve_minimax_box(d, w, boxes);
    result.objective = std::max(result.objective, lp.value);
    for (int s = 0; s < vars; ++s) result.free_offsets[s][i] = lp.phi[s];
  }
  return result;
}

SelectionSolution solve_selection(const SelectionProblem& problem) {
  validate_problem(problem);
  return Searcher(problem).run();
}

SelectionSolution brute_force_selection(const SelectionProblem& problem) {
  validate_problem(problem);
  const int m = problem.slots;
  const int reuse = problem.reuse_budget;
  const int free_total = m - reuse;
  const int pool_size = static_cast<int>(problem.pool.size());
  if (free_total > 2) {
    throw std::invalid_argument(
        "brute force supports at most 2 free slots");
  }
  double patterns = 1.0;  // C(m, reuse)
  for (int i = 0; i < free_total; ++i) {
    patterns = patterns * (m - i) / (i + 1);
  }
  double ordered = patterns;
  for (int i = 0; i < reuse; ++i) ordered *= pool_size - i;
  if (ordered > 1e6) {
    throw std::invalid_argument(
        "brute force instance too large: more than 1e6 ordered subsets");
  }

  const auto start = std::chrono::steady_clock::now();
  const int n = static_cast<int>(problem.base.size());
  const std::vector<std::vector<double>> off = translated_pool(problem);

  SelectionSolution best;
  best.objective = std::numeric_limits<double>::infinity();
  std::vector<int> best_seq;
  std::int64_t leaves = 0;

  std::vector<int> seq(m, -2);
  std::vector<char> used(pool_size, 0);

  // Objective over a one- or two-dimensional grid of free placements for
  // one coordinate.  The order-k coefficients are affine in the free
  // values, so three divided-difference sweeps recover base and gradients.
  const auto grid_minimize = [&](const std::vector<int>& pattern)
      -> std::vector<SlotAssignment> {
    std::vector<int> free_pos;
    for (int j = 0; j < m; ++j) {
      if (pattern[j] == kFreeMarker) free_pos.push_back(j);
    }
    const int frees = static_cast<int>(free_pos.size());
    const double h = problem.box_radius;
    std::vector<SlotAssignment> assignment(m);
    for (int j = 0; j < m; ++j) {
      if (pattern[j] != kFreeMarker) {
        assignment[j].pool_index = pattern[j];
      } else {
        assignment[j].free_offset.assign(n, 0.0);
      }
    }
    std::vector<double> samples(m + 1);
    for (int i = 0; i < n; ++i) {
      const auto sweep = [&](double phi0, double phi1) {
        samples[0] = 0.0;
        for (int j = 0; j < m; ++j) {
          if (pattern[j] == kFreeMarker) {
            samples[j + 1] = (j == free_pos[0]) ? phi0 : phi1;
          } else {
            samples[j + 1] = off[pattern[j]][i];
          }
        }
        return divided_differences(samples);
      };
      const std::vector<double> base = sweep(0.0, 0.0);
      const std::vector<double> g0 = sweep(1.0, 0.0);
      std::vector<double> g1;
      if (frees == 2) g1 = sweep(0.0, 1.0);

      const int steps0 = 10000;
      const int steps1 = frees == 2 ? 200 : 0;
      double best_value = std::numeric_limits<double>::infinity();
      double best_phi0 = 0.0, best_phi1 = 0.0;
      const int outer = frees == 2 ? 200 : steps0;
      for (int ia = 0; ia <= outer; ++ia) {
        const double phi0 = -h + 2.0 * h * ia / outer;
        for (int ib = 0; ib <= steps1; ++ib) {
          const double phi1 = frees == 2 ? -h + 2.0 * h * ib / steps1 : 0.0;
          double value = 0.0;
          for (int k = 1; k <= m; ++k) {
            double coeff = base[k] + (g0[k] - base[k]) * phi0;
            if (frees == 2) coeff += (g1[k] - base[k]) * phi1;
            value = std::max(value, std::fabs(coeff));
          }
          if (value < best_value) {
            best_value = value;
            best_phi0 = phi0;
            best_phi1 = phi1;
          }
        }
      }
      assignment[free_pos[0]].free_offset[i] = best_phi0;
      if (frees == 2) assignment[free_pos[1]].free_offset[i] = best_phi1;
    }
    return assignment;
  };

  const auto consider_leaf = [&]() {
    ++leaves;
    std::vector<SlotAssignment> assignment;
    bool any_free = false;
    for (int j = 0; j < m; ++j) any_free |= seq[j] == kFreeMarker;
    if (any_free) {
      assignment = grid_minimize(seq);
    } else {
      assignment.resize(m);
      for (int j = 0; j < m; ++j) assignment[j].pool_index = seq[j];
    }
    const double objective = selection_objective(problem, assignment);
    if (objective < best.objective ||
        (objective == best.objective && lex_less(seq, best_seq))) {
      best.objective = objective;
      best.assignment = std::move(assignment);
      best_seq = seq;
    }
  };

  const auto recurse = [&](auto&& self, int depth, int pool_used,
                           int free_used) -> void {
    if (depth > m) {
      consider_leaf();
      return;
    }
    if (pool_used < reuse) {
      for (int q = 0; q < pool_size; ++q) {
        if (used[q]) continue;
        used[q] = 1;
        seq[depth - 1] = q;
        self(self, depth + 1, pool_used + 1, free_used);
        used[q] = 0;
      }
    }
    if (free_used < free_total) {
      seq[depth - 1] = kFreeMarker;
      self(self, depth + 1, pool_used, free_used + 1);
    }
    seq[depth - 1] = -2;
  };
  recurse(recurse, 1, 0, 0);

  best.optimal = true;
  best.nodes_visited = leaves;
  best.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (reuse == 0) {
    best.warnings.push_back(
        "reuse budget is 0: every slot is free and the optimum is the "
        "degenerate all-at-base placement");
  }
  return best;
}

}  // namespace noisekit
