#pragma once

#include <memory>
#include <unordered_set>
#include <vector>

#include "densestream/dense_sampler.hpp"
#include "densestream/dynamic_density.hpp"
#include "densestream/sparse_recoverer.hpp"

namespace densestream {

enum class Regime { Sparse, Dense };

// Hysteresis classification of time-steps by live edge count: sparse->dense
// only above enter_dense, dense->sparse only below exit_dense. Opposite
// transitions are therefore at least enter-exit updates apart.
class RegimeClassifier {
 public:
  RegimeClassifier(long long enter_dense, long long exit_dense)
      : enter_(enter_dense), exit_(exit_dense) {}

  Regime step(long long m) {
    if (regime_ == Regime::Sparse) {
      if (m > enter_) regime_ = Regime::Dense;
    } else {
      if (m < exit_) regime_ = Regime::Sparse;
    }
    return regime_;
  }

  Regime regime() const { return regime_; }
  long long enter_dense() const { return enter_; }
  long long exit_dense() const { return exit_; }

 private:
  long long enter_, exit_;
  Regime regime_ = Regime::Sparse;
};

// Per-rung sampled decomposition for the dense path. Each of the L-1 sample
// indices carries its own sampled edge set; lists are partitioned per node by
// the capped index r = min(i, level(u), level(v)). Degree_i(v) tracks the
// size of the list (i, v, i). Dirty nodes are drained level by level, FIFO
// within a level: at level i, nodes sitting at i with sampled degree above
// the promote bar rise one level, nodes above i whose sampled degree at i
// fell under the demote bar drop straight down to i.
class LevelSampleState {
 public:
  LevelSampleState(NodeId n, int L, double promote_above, double demote_below,
                   WorkLedger* ledger, int tag,
                   std::vector<LevelChange>* changelog);

  void clear();
  // Bulk-load current samples (levels are all 1 afterwards).
  void initialize(const std::vector<std::vector<uint64_t>>& samples, NodeId n);
  void sample_update(int i, uint64_t key, int delta);
  void recover_pass();

  int level(NodeId v) const { return level_[v]; }
  const std::vector<uint16_t>& levels() const { return level_; }
  int32_t degree(int i, NodeId v) const { return degree_[dn(i, v)]; }
  bool top_nonempty() const { return nodes_at_level_[L_] > 0; }
  int L() const { return L_; }
  bool active() const { return active_; }

 private:
  struct Slot {
    NodeId node[2];
    int32_t next[2];
    int32_t prev[2];
    int16_t sample;  // which S_i this edge belongs to
    int16_t r;
    bool live = false;
  };

  size_t dn(int i, NodeId v) const {
    return static_cast<size_t>(i - 1) * n_ + v;
  }
  size_t list_index(int i, NodeId v, int j) const {
    return (static_cast<size_t>(i - 1) * n_ + v) * L_ + (j - 1);
  }
  void link(int32_t slot, int b, int j);
  void unlink(int32_t slot, int b, int j);
  void place(int32_t slot, int r);
  void displace(int32_t slot);
  void touch_dirty(int i, NodeId v);
  bool dirty_at(int i, NodeId v) const;
  void promote(NodeId y, int i);
  void demote(NodeId y, int i);
  void set_level(NodeId v, int to);

  NodeId n_;
  int L_;
  double hi_, lo_;
  WorkLedger* ledger_;
  int tag_;
  std::vector<LevelChange>* changelog_;
  bool active_ = false;

  std::vector<uint16_t> level_;
  std::vector<int32_t> head_;    // (i, v, j)
  std::vector<int32_t> degree_;  // (i, v)
  std::vector<long long> nodes_at_level_;
  std::vector<Slot> slots_;
  std::vector<int32_t> free_slots_;
  std::vector<std::unordered_map<uint64_t, int32_t>> slot_of_;  // per i
  std::vector<std::deque<NodeId>> dirty_;
  std::vector<char> in_dirty_;  // (i, v)
};

// Space/time-efficient dynamic estimator: a sparse-recovery path feeding an
// embedded full-space engine while the graph is small, and per-rung sampled
// decompositions over bucketed edge samplers while it is large, with
// hysteresis switching between the two.
class CombinedEngine {
 public:
  CombinedEngine(NodeId n, const Config& cfg);

  void apply(const UpdateEvent& e);
  double query() const;

  Regime regime() const { return classifier_.regime(); }
  long long m() const { return m_; }
  NodeId n() const { return n_; }
  uint64_t events() const { return events_; }
  uint64_t sampler_failures() const;
  uint64_t ledger_total() const;
  const Config& config() const { return cfg_; }
  double alpha() const { return alpha_; }

  int dense_rungs() const { return K_; }
  int dense_levels_per_rung() const { return L_; }
  double dense_d(int k) const;  // rung threshold at the current m
  // Rungs whose prescribed sampler budget stays well under the dense-regime
  // edge count run the sampled machinery; lower rungs sample everything and
  // are maintained on exact degrees against the moving thresholds.
  bool rung_sampled(int k) const { return k > exact_rungs_; }
  int first_sampled_rung() const { return exact_rungs_ + 1; }
  const LevelSampleState& dense_state(int k) const { return *states_[k - 1]; }
  const LevelStructure& exact_rung(int k) const { return *exact_[k - 1]; }
  int dense_level(int k, NodeId v) const {
    return rung_sampled(k) ? states_[k - 1]->level(v) : exact_[k - 1]->level(v);
  }
  bool dense_top_nonempty(int k) const {
    return rung_sampled(k) ? states_[k - 1]->top_nonempty()
                           : exact_[k - 1]->top_nonempty();
  }
  const DenseSampler& dense_sampler(int k, int i) const {
    return bank_[bank_index(k, i)];
  }
  const SparseRecoverer& sparse() const { return sr_; }
  const FullDynamicEngine* sparse_engine() const {
    return sparse_engine_.get();
  }
  const std::vector<LevelChange>& last_dense_changes() const {
    return dense_changes_;
  }
  bool initialized_this_event() const { return initialized_this_event_; }
  long long enter_dense() const { return classifier_.enter_dense(); }
  long long exit_dense() const { return classifier_.exit_dense(); }

 private:
  size_t bank_index(int k, int i) const {
    return static_cast<size_t>(k - 1) * (L_ - 1) + (i - 1);
  }
  void enter_dense_interval();
  void enter_sparse_interval();

  NodeId n_;
  Config cfg_;
  double alpha_;
  int L_, K_;
  int exact_rungs_ = 0;
  long long m_ = 0;
  uint64_t events_ = 0;
  std::unordered_set<uint64_t> present_;
  RegimeClassifier classifier_;
  SparseRecoverer sr_;
  std::vector<DenseSampler> bank_;  // sampled rungs only
  std::vector<std::unique_ptr<LevelSampleState>> states_;
  std::vector<std::unique_ptr<LevelStructure>> exact_;
  bool exact_active_ = false;
  std::unordered_map<uint64_t, int32_t> exact_slot_of_;
  std::vector<int32_t> exact_free_slots_;
  int32_t exact_next_slot_ = 0;
  std::unique_ptr<FullDynamicEngine> sparse_engine_;
  WorkLedger dense_ledger_;
  uint64_t retired_ledger_ = 0;
  std::vector<LevelChange> dense_changes_;
  std::vector<SparseRecoverer::Diff> fdiff_;
  std::vector<DenseSampler::Diff> sdiff_;
  bool initialized_this_event_ = false;
};

}  // namespace densestream
