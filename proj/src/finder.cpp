#include "nelbri/finder.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace nelbri {

namespace {

using Clock = std::chrono::steady_clock;

// ---------------------------------------------------------------------------
// Ground-instance compilation
//
// Every constant interpretation and every operation-table entry is a "cell"
// with value in {0..n-1} or open (-1). Must-hold equations are compiled per
// ground variable tuple; each must-fail equation gets fresh witness cells in
// place of its variables (searched like Skolem constants) plus a disequality
// instance over them.
// ---------------------------------------------------------------------------

struct Step {
  enum Kind { Var, Cell, Apply } kind;
  int a;          // Var: tuple slot | Cell: cell id | Apply: op index
  int arity = 0;  // Apply only
};

struct CompiledEq {
  std::vector<Step> lhs, rhs;
  int num_vars = 0;
};

struct OpInfo {
  std::string name;
  int arity;
  int base;  // first cell id of this op's table
  long table_size;
};

struct Instance {
  int eq = -1;        // index into compiled equations
  long tuple = -1;    // flattened variable tuple (radix n), -1 for must-fail
  bool diseq = false; // true: conflict when both sides determined and EQUAL
};

std::string model_key(const FiniteAlgebra& a) {
  std::string key;
  key.push_back(static_cast<char>(a.size));
  for (const auto& [op, arity] : a.signature.operations)
    for (int v : a.tables.at(op)) key.push_back(static_cast<char>(v));
  for (const std::string& c : a.signature.constants)
    key.push_back(static_cast<char>(a.constant_values.at(c)));
  return key;
}

class Searcher {
 public:
  Searcher(const SearchProblem& p, const SearchLimits& limits,
           std::atomic<long>& shared_nodes, Clock::time_point deadline)
      : p_(p), limits_(limits), shared_nodes_(shared_nodes), deadline_(deadline) {
    n_ = p.size;
    // Cell layout: constants, then must-fail witness cells, then op tables.
    num_const_cells_ = static_cast<int>(p.signature.constants.size());
    int next = num_const_cells_;
    for (const Equation& e : p.must_fail) {
      std::set<std::string> vars = e.lhs.variables();
      e.rhs.collect_variables(vars);
      witness_bases_.push_back(next);
      witness_vars_.emplace_back(vars.begin(), vars.end());
      next += static_cast<int>(vars.size());
    }
    for (const auto& [name, arity] : p.signature.operations) {
      long ts = 1;
      for (int i = 0; i < arity; ++i) ts *= n_;
      ops_.push_back({name, arity, next, ts});
      next += static_cast<int>(ts);
    }
    num_cells_ = next;
    value_.assign(num_cells_, -1);
    cell_max_coord_.assign(num_cells_, -1);
    for (const OpInfo& op : ops_)
      for (long idx = 0; idx < op.table_size; ++idx) {
        int mx = -1;
        long rem = idx;
        for (int k = 0; k < op.arity; ++k) {
          mx = std::max(mx, static_cast<int>(rem % n_));
          rem /= n_;
        }
        cell_max_coord_[op.base + idx] = mx;
      }
    compile_instances();
    watchers_.assign(num_cells_, {});
    watched_.assign(static_cast<std::size_t>(instances_.size()) * num_cells_, 0);
    decision_order_.resize(num_cells_);
    std::iota(decision_order_.begin(), decision_order_.end(), 0);
  }

  enum class Status { Complete, Exhausted, Capped };

  /// preassign: forced (cell, value) pairs applied before the search (used for
  /// worker partitioning). Returns Complete when the subtree was exhausted.
  Status run(const std::vector<std::pair<int, int>>& preassign = {}) {
    if (limits_.symmetry_breaking)
      for (int c = 0; c < num_const_cells_; ++c)
        if (!assign(c, 0)) return Status::Complete;
    for (auto [cell, val] : preassign)
      if (!assign(cell, val)) return Status::Complete;
    // Initial pass registers watches and catches immediate propagations.
    for (int i = 0; i < static_cast<int>(instances_.size()); ++i)
      if (!reeval(i)) return Status::Complete;
    if (!propagate()) return Status::Complete;
    return dfs();
  }

  /// First open cell in decision order with its least-number value bound, for
  /// top-level worker partitioning. Must be called on a fresh searcher after
  /// the same preamble as run(); here recomputed conservatively: the first
  /// cell overall and the full value range (workers prune internally).
  int first_decision_cell() const {
    for (int c : decision_order_)
      if (!(limits_.symmetry_breaking && c < num_const_cells_)) return c;
    return -1;
  }

  std::vector<FiniteAlgebra> models;
  std::vector<std::string> model_keys;  // canonical keys, parallel to models
  SearchStats stats;

 private:
  int compile_term(const Term& t, const std::vector<std::string>& vars,
                   std::vector<Step>& out, int witness_base) {
    switch (t.kind()) {
      case TermKind::Variable: {
        int slot = static_cast<int>(
            std::find(vars.begin(), vars.end(), t.head()) - vars.begin());
        if (witness_base >= 0)
          out.push_back({Step::Cell, witness_base + slot, 0});
        else
          out.push_back({Step::Var, slot, 0});
        return 0;
      }
      case TermKind::Constant: {
        int ci = static_cast<int>(std::find(p_.signature.constants.begin(),
                                            p_.signature.constants.end(), t.head()) -
                                  p_.signature.constants.begin());
        out.push_back({Step::Cell, ci, 0});
        return 0;
      }
      case TermKind::Application: {
        for (const Term& sub : t.args()) compile_term(sub, vars, out, witness_base);
        int oi = -1;
        for (int i = 0; i < static_cast<int>(ops_.size()); ++i)
          if (ops_[i].name == t.head()) oi = i;
        if (oi < 0) throw std::runtime_error("search equation uses unknown operation " + t.head());
        out.push_back({Step::Apply, oi, ops_[oi].arity});
        return 0;
      }
    }
    return 0;
  }

  void compile_instances() {
    for (const Equation& e : p_.must_hold) {
      std::set<std::string> varset = e.lhs.variables();
      e.rhs.collect_variables(varset);
      std::vector<std::string> vars(varset.begin(), varset.end());
      CompiledEq ce;
      ce.num_vars = static_cast<int>(vars.size());
      compile_term(e.lhs, vars, ce.lhs, -1);
      compile_term(e.rhs, vars, ce.rhs, -1);
      int eq = static_cast<int>(eqs_.size());
      eqs_.push_back(std::move(ce));
      long tuples = 1;
      for (int i = 0; i < eqs_[eq].num_vars; ++i) tuples *= n_;
      for (long t = 0; t < tuples; ++t) instances_.push_back({eq, t, false});
    }
    for (std::size_t f = 0; f < p_.must_fail.size(); ++f) {
      const Equation& e = p_.must_fail[f];
      CompiledEq ce;
      ce.num_vars = 0;
      compile_term(e.lhs, witness_vars_[f], ce.lhs, witness_bases_[f]);
      compile_term(e.rhs, witness_vars_[f], ce.rhs, witness_bases_[f]);
      int eq = static_cast<int>(eqs_.size());
      eqs_.push_back(std::move(ce));
      instances_.push_back({eq, -1, true});
    }
  }

  void watch(int inst, int cell) {
    std::size_t bit = static_cast<std::size_t>(inst) * num_cells_ + cell;
    if (watched_[bit]) return;
    watched_[bit] = 1;
    watchers_[cell].push_back(inst);
  }

  struct EvalRes {
    int value;        // >= 0 when determined
    int direct_cell;  // open cell the side equals, or -1
  };

  EvalRes eval_side(const std::vector<Step>& steps, const int* tuple, int inst) {
    vals_.clear();
    cells_.clear();
    for (const Step& s : steps) {
      switch (s.kind) {
        case Step::Var:
          vals_.push_back(tuple[s.a]);
          cells_.push_back(-1);
          break;
        case Step::Cell: {
          int v = value_[s.a];
          if (v < 0) watch(inst, s.a);
          vals_.push_back(v);
          cells_.push_back(v < 0 ? s.a : -1);
          break;
        }
        case Step::Apply: {
          int ar = s.arity;
          std::size_t base = vals_.size() - ar;
          bool known = true;
          long idx = 0;
          for (std::size_t k = base; k < vals_.size(); ++k) {
            if (vals_[k] < 0) {
              known = false;
              break;
            }
            idx = idx * n_ + vals_[k];
          }
          int resv = -1, resc = -1;
          if (known) {
            int cell = ops_[s.a].base + static_cast<int>(idx);
            resv = value_[cell];
            if (resv < 0) {
              watch(inst, cell);
              resc = cell;
            }
          }
          vals_.resize(base);
          cells_.resize(base);
          vals_.push_back(resv);
          cells_.push_back(resc);
          break;
        }
      }
    }
    return {vals_[0], vals_[0] >= 0 ? -1 : cells_[0]};
  }

  bool reeval(int inst) {
    const Instance& in = instances_[inst];
    const CompiledEq& ce = eqs_[in.eq];
    int tuple[8] = {0};
    if (in.tuple >= 0) {
      long rem = in.tuple;
      for (int k = ce.num_vars - 1; k >= 0; --k) {
        tuple[k] = static_cast<int>(rem % n_);
        rem /= n_;
      }
    }
    EvalRes l = eval_side(ce.lhs, tuple, inst);
    EvalRes r = eval_side(ce.rhs, tuple, inst);
    if (in.diseq) return !(l.value >= 0 && r.value >= 0 && l.value == r.value);
    if (l.value >= 0 && r.value >= 0) return l.value == r.value;
    if (l.value >= 0 && r.direct_cell >= 0) {
      ++stats.propagations;
      return assign(r.direct_cell, l.value);
    }
    if (r.value >= 0 && l.direct_cell >= 0) {
      ++stats.propagations;
      return assign(l.direct_cell, r.value);
    }
    return true;
  }

  bool assign(int cell, int val) {
    int cur = value_[cell];
    if (cur >= 0) return cur == val;
    value_[cell] = val;
    trail_.push_back(cell);
    if (limits_.symmetry_breaking)
      mdn_ = std::max({mdn_, val, cell_max_coord_[cell]});
    queue_.push_back(cell);
    return true;
  }

  bool propagate() {
    while (qhead_ < queue_.size()) {
      int cell = queue_[qhead_++];
      const std::vector<int>& ws = watchers_[cell];
      for (std::size_t i = 0; i < ws.size(); ++i)  // ws may grow elsewhere
        if (!reeval(ws[i])) {
          queue_.clear();
          qhead_ = 0;
          return false;
        }
    }
    queue_.clear();
    qhead_ = 0;
    return true;
  }

  void undo(std::size_t mark, int saved_mdn) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = -1;
      trail_.pop_back();
    }
    mdn_ = saved_mdn;
    queue_.clear();
    qhead_ = 0;
  }

  // Prefer the open cell the most instances are blocked on (watch lists are
  // append-only, so counts are upper bounds — good enough as a heuristic);
  // fall back to the first open cell so the search stays complete.
  int select_cell() const {
    int best = -1;
    std::size_t best_watchers = 0;
    for (int c : decision_order_) {
      if (value_[c] >= 0) continue;
      if (best < 0) best = c;
      if (watchers_[c].size() > best_watchers) {
        best = c;
        best_watchers = watchers_[c].size();
      }
    }
    return best;
  }

  bool out_of_budget() {
    long nodes = shared_nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
    if (nodes > limits_.node_budget) return true;
    if ((nodes & 1023) == 0 && Clock::now() > deadline_) return true;
    return false;
  }

  Status dfs() {
    int cell = select_cell();
    if (cell < 0) return record_leaf();
    int hi = n_ - 1;
    if (limits_.symmetry_breaking)
      hi = std::min(hi, std::max(mdn_, cell_max_coord_[cell]) + 1);
    for (int v = 0; v <= hi; ++v) {
      ++stats.nodes;
      if (out_of_budget()) {
        stats.budget_exhausted = true;
        return Status::Exhausted;
      }
      std::size_t mark = trail_.size();
      int saved_mdn = mdn_;
      if (assign(cell, v) && propagate()) {
        Status st = dfs();
        if (st != Status::Complete) {
          undo(mark, saved_mdn);
          return st;
        }
      }
      undo(mark, saved_mdn);
    }
    return Status::Complete;
  }

  Status record_leaf() {
    FiniteAlgebra a = build_algebra();
    // Independent re-verification: every emitted model must pass the
    // brute-force checker, and every must-fail equation must have a witness.
    for (const Equation& e : p_.must_hold)
      if (!check_identity(a, e).holds) return Status::Complete;
    for (const Equation& e : p_.must_fail)
      if (check_identity(a, e).holds) return Status::Complete;
    if (limits_.iso_dedup) {
      FiniteAlgebra canon = canonical_form(a);
      std::string key = model_key(canon);
      if (std::find(model_keys.begin(), model_keys.end(), key) != model_keys.end())
        return Status::Complete;
      model_keys.push_back(key);
      models.push_back(std::move(canon));
    } else {
      models.push_back(std::move(a));
      model_keys.push_back(model_key(models.back()));
    }
    if (limits_.max_solutions > 0 &&
        static_cast<long>(models.size()) >= limits_.max_solutions)
      return Status::Capped;
    return Status::Complete;
  }

  FiniteAlgebra build_algebra() const {
    FiniteAlgebra a;
    a.name = "model";
    a.size = n_;
    a.signature = p_.signature;
    for (int i = 0; i < n_; ++i) a.element_names.push_back(std::to_string(i));
    for (const OpInfo& op : ops_) {
      std::vector<int> table(op.table_size);
      for (long idx = 0; idx < op.table_size; ++idx) table[idx] = value_[op.base + idx];
      a.tables.emplace(op.name, std::move(table));
    }
    for (int c = 0; c < num_const_cells_; ++c)
      a.constant_values.emplace(p_.signature.constants[c], value_[c]);
    return a;
  }

  const SearchProblem& p_;
  const SearchLimits& limits_;
  std::atomic<long>& shared_nodes_;
  Clock::time_point deadline_;

  int n_ = 0;
  int num_cells_ = 0;
  int num_const_cells_ = 0;
  std::vector<OpInfo> ops_;
  std::vector<int> witness_bases_;
  std::vector<std::vector<std::string>> witness_vars_;
  std::vector<CompiledEq> eqs_;
  std::vector<Instance> instances_;

  std::vector<int> value_;
  std::vector<int> cell_max_coord_;
  std::vector<std::vector<int>> watchers_;
  std::vector<unsigned char> watched_;
  std::vector<int> decision_order_;
  std::vector<int> trail_;
  std::vector<int> queue_;
  std::size_t qhead_ = 0;
  int mdn_ = -1;
  std::vector<int> vals_, cells_;  // evaluation scratch
};

}  // namespace

FiniteAlgebra canonical_form(const FiniteAlgebra& a) {
  std::vector<int> p(a.size);
  std::iota(p.begin(), p.end(), 0);
  std::optional<std::string> best_key;
  std::vector<int> best_p;
  do {
    FiniteAlgebra r = relabel(a, p);
    std::string key = model_key(r);
    if (!best_key || key < *best_key) {
      best_key = key;
      best_p = p;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return relabel(a, best_p);
}

SearchResult enumerate_models(const SearchProblem& p, const SearchLimits& limits) {
  auto start = Clock::now();
  auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(limits.time_budget_seconds));
  std::atomic<long> nodes{0};
  SearchResult result;

  if (limits.workers <= 1) {
    Searcher s(p, limits, nodes, deadline);
    Searcher::Status st = s.run();
    result.models = std::move(s.models);
    result.stats = s.stats;
    result.stats.budget_exhausted = st == Searcher::Status::Exhausted;
  } else {
    // Partition the first decision cell's values across workers.
    Searcher probe(p, limits, nodes, deadline);
    int first = probe.first_decision_cell();
    if (first < 0) {
      Searcher s(p, limits, nodes, deadline);
      Searcher::Status st = s.run();
      result.models = std::move(s.models);
      result.stats = s.stats;
      result.stats.budget_exhausted = st == Searcher::Status::Exhausted;
    } else {
      struct Branch {
        std::vector<FiniteAlgebra> models;
        std::vector<std::string> keys;
        SearchStats stats;
        bool exhausted = false;
      };
      std::vector<Branch> branches(p.size);
      std::vector<std::thread> threads;
      std::atomic<int> next_branch{0};
      int nworkers = std::min(limits.workers, p.size);
      for (int w = 0; w < nworkers; ++w)
        threads.emplace_back([&] {
          for (int v = next_branch.fetch_add(1); v < p.size;
               v = next_branch.fetch_add(1)) {
            Searcher s(p, limits, nodes, deadline);
            Searcher::Status st = s.run({{first, v}});
            branches[v].models = std::move(s.models);
            branches[v].keys = std::move(s.model_keys);
            branches[v].stats = s.stats;
            branches[v].exhausted = st == Searcher::Status::Exhausted;
          }
        });
      for (std::thread& t : threads) t.join();
      std::vector<std::string> seen;
      for (Branch& b : branches) {
        result.stats.nodes += b.stats.nodes;
        result.stats.propagations += b.stats.propagations;
        if (b.exhausted) result.stats.budget_exhausted = true;
        for (std::size_t i = 0; i < b.models.size(); ++i) {
          if (limits.iso_dedup &&
              std::find(seen.begin(), seen.end(), b.keys[i]) != seen.end())
            continue;
          seen.push_back(b.keys[i]);
          result.models.push_back(std::move(b.models[i]));
        }
      }
      if (limits.max_solutions > 0 &&
          static_cast<long>(result.models.size()) > limits.max_solutions)
        result.models.resize(limits.max_solutions);
    }
  }
  if (limits.iso_dedup)
    std::sort(result.models.begin(), result.models.end(),
              [](const FiniteAlgebra& x, const FiniteAlgebra& y) {
                return model_key(x) < model_key(y);
              });
  result.stats.nodes = nodes.load();
  result.stats.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return result;
}

CounterexampleResult find_counterexample(const std::vector<Equation>& hold,
                                         const std::vector<Equation>& fail,
                                         const Signature& sig, int max_n,
                                         const SearchLimits& limits) {
  CounterexampleResult r;
  for (int n = 1; n <= max_n; ++n) {
    SearchProblem p;
    p.signature = sig;
    p.size = n;
    p.must_hold = hold;
    p.must_fail = fail;
    SearchLimits lim = limits;
    lim.max_solutions = 1;
    SearchResult sr = enumerate_models(p, lim);
    r.size_reached = n;
    r.stats.nodes += sr.stats.nodes;
    r.stats.propagations += sr.stats.propagations;
    r.stats.seconds += sr.stats.seconds;
    if (!sr.models.empty()) {
      r.model = std::move(sr.models.front());
      return r;
    }
    if (sr.stats.budget_exhausted) {
      r.budget_exhausted = true;
      r.stats.budget_exhausted = true;
      return r;
    }
  }
  return r;
}

EquationSet parse_equation_set(std::istream& in, const Signature& sig) {
  EquationSet out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string text = line.substr(first, last - first + 1);
    bool must_fail = false;
    std::string id;
    if (text.front() == '!') {
      must_fail = true;
      text.erase(0, 1);
      if (auto f2 = text.find_first_not_of(" \t"); f2 != std::string::npos)
        text.erase(0, f2);
    }
    if (auto colon = text.find(':'); colon != std::string::npos) {
      id = text.substr(0, colon);
      if (auto idend = id.find_last_not_of(" \t"); idend != std::string::npos)
        id.erase(idend + 1);
      text.erase(0, colon + 1);
    }
    try {
      out.entries.push_back({std::move(id), parse_equation(text, sig), must_fail});
    } catch (const ParseError& e) {
      throw std::runtime_error("equation file line " + std::to_string(lineno) + ": " +
                               e.what());
    }
  }
  return out;
}

EquationSet load_equation_set(const std::string& path, const Signature& sig) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open equation file: " + path);
  return parse_equation_set(in, sig);
}

}  // namespace nelbri
