#include "densestream/dynamic_streaming.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace densestream {

LevelSampleState::LevelSampleState(NodeId n, int L, double promote_above,
                                   double demote_below, WorkLedger* ledger,
                                   int tag,
                                   std::vector<LevelChange>* changelog)
    : n_(n),
      L_(L),
      hi_(promote_above),
      lo_(demote_below),
      ledger_(ledger),
      tag_(tag),
      changelog_(changelog) {}

void LevelSampleState::clear() {
  active_ = false;
  level_.clear();
  head_.clear();
  degree_.clear();
  nodes_at_level_.clear();
  slots_.clear();
  free_slots_.clear();
  slot_of_.clear();
  dirty_.clear();
  in_dirty_.clear();
}

void LevelSampleState::initialize(
    const std::vector<std::vector<uint64_t>>& samples, NodeId n) {
  clear();
  active_ = true;
  level_.assign(n_, 1);
  head_.assign(static_cast<size_t>(L_ - 1) * n_ * L_, -1);
  degree_.assign(static_cast<size_t>(L_ - 1) * n_, 0);
  nodes_at_level_.assign(L_ + 1, 0);
  nodes_at_level_[1] = n_;
  slot_of_.resize(L_);
  dirty_.resize(L_);
  in_dirty_.assign(static_cast<size_t>(L_ - 1) * n_, 0);
  for (int i = 1; i <= L_ - 1 && i <= static_cast<int>(samples.size()); ++i)
    for (uint64_t key : samples[i - 1]) sample_update(i, key, +1);
  (void)n;
}

bool LevelSampleState::dirty_at(int i, NodeId v) const {
  // When the promote and demote bars overlap (possible at coarse epsilon),
  // the drop rule wins: a node qualifying for both stays where it is.
  int l = level_[v];
  int32_t deg = degree_[dn(i, v)];
  if (l == i && deg > hi_ && !(deg < lo_)) return true;
  if (l > i && deg < lo_) return true;
  return false;
}

void LevelSampleState::touch_dirty(int i, NodeId v) {
  if (!in_dirty_[dn(i, v)] && dirty_at(i, v)) {
    in_dirty_[dn(i, v)] = 1;
    dirty_[i].push_back(v);
  }
}

void LevelSampleState::link(int32_t slot, int b, int j) {
  Slot& s = slots_[slot];
  int i = s.sample;
  NodeId v = s.node[b];
  int32_t& h = head_[list_index(i, v, j)];
  s.prev[b] = -1;
  s.next[b] = h;
  if (h != -1) slots_[h >> 1].prev[h & 1] = slot * 2 + b;
  h = slot * 2 + b;
  if (j == i) ++degree_[dn(i, v)];
}

void LevelSampleState::unlink(int32_t slot, int b, int j) {
  Slot& s = slots_[slot];
  int i = s.sample;
  NodeId v = s.node[b];
  if (s.prev[b] == -1)
    head_[list_index(i, v, j)] = s.next[b];
  else
    slots_[s.prev[b] >> 1].next[s.prev[b] & 1] = s.next[b];
  if (s.next[b] != -1) slots_[s.next[b] >> 1].prev[s.next[b] & 1] = s.prev[b];
  if (j == i) --degree_[dn(i, v)];
}

void LevelSampleState::place(int32_t slot, int r) {
  Slot& s = slots_[slot];
  s.r = static_cast<int16_t>(r);
  link(slot, 0, r);
  link(slot, 1, r);
}

void LevelSampleState::displace(int32_t slot) {
  Slot& s = slots_[slot];
  unlink(slot, 0, s.r);
  unlink(slot, 1, s.r);
}

void LevelSampleState::sample_update(int i, uint64_t key, int delta) {
  auto [u, v] = edge_from_key(key, n_);
  if (delta > 0) {
    int32_t slot;
    if (!free_slots_.empty()) {
      slot = free_slots_.back();
      free_slots_.pop_back();
    } else {
      slot = static_cast<int32_t>(slots_.size());
      slots_.emplace_back();
    }
    Slot& s = slots_[slot];
    s.node[0] = u;
    s.node[1] = v;
    s.sample = static_cast<int16_t>(i);
    s.live = true;
    slot_of_[i][key] = slot;
    place(slot, std::min({i, static_cast<int>(level_[u]),
                          static_cast<int>(level_[v])}));
  } else {
    auto it = slot_of_[i].find(key);
    if (it == slot_of_[i].end()) return;
    int32_t slot = it->second;
    slot_of_[i].erase(it);
    displace(slot);
    slots_[slot].live = false;
    free_slots_.push_back(slot);
  }
  if (ledger_) ledger_->add(1);
  touch_dirty(i, u);
  touch_dirty(i, v);
}

void LevelSampleState::set_level(NodeId v, int to) {
  int from = level_[v];
  --nodes_at_level_[from];
  ++nodes_at_level_[to];
  level_[v] = static_cast<uint16_t>(to);
  if (changelog_)
    changelog_->push_back({tag_, v, static_cast<uint16_t>(from),
                           static_cast<uint16_t>(to)});
}

void LevelSampleState::promote(NodeId y, int i) {
  uint64_t work = 1;
  // Edges of y at capped index i move to i+1 wherever the neighbor sits
  // above i; only sample indices beyond i can hold such edges.
  for (int ip = i + 1; ip <= L_ - 1; ++ip) {
    int32_t cur = head_[list_index(ip, y, i)];
    while (cur != -1) {
      int32_t slot = cur >> 1;
      int b = cur & 1;
      Slot& s = slots_[slot];
      cur = s.next[b];
      NodeId x = s.node[b ^ 1];
      ++work;
      if (level_[x] > i) {
        displace(slot);
        place(slot, i + 1);
        if (ip == i + 1) touch_dirty(ip, x);
      }
    }
  }
  set_level(y, i + 1);
  if (ledger_) ledger_->add(work);
  if (i + 1 <= L_ - 1) touch_dirty(i + 1, y);
}

void LevelSampleState::demote(NodeId y, int i) {
  int j = level_[y];
  uint64_t work = 1;
  for (int ip = i + 1; ip <= L_ - 1; ++ip) {
    for (int r = i + 1; r <= std::min(ip, j); ++r) {
      int32_t cur = head_[list_index(ip, y, r)];
      while (cur != -1) {
        int32_t slot = cur >> 1;
        int b = cur & 1;
        Slot& s = slots_[slot];
        cur = s.next[b];
        NodeId x = s.node[b ^ 1];
        ++work;
        displace(slot);
        place(slot, i);
        touch_dirty(ip, x);
      }
    }
  }
  set_level(y, i);
  if (ledger_) ledger_->add(work);
  touch_dirty(i, y);
}

void LevelSampleState::recover_pass() {
  for (int i = 1; i <= L_ - 1; ++i) {
    auto& q = dirty_[i];
    while (!q.empty()) {
      NodeId y = q.front();
      q.pop_front();
      in_dirty_[dn(i, y)] = 0;
      int l = level_[y];
      int32_t deg = degree_[dn(i, y)];
      if (l == i && deg > hi_ && !(deg < lo_))
        promote(y, i);
      else if (l > i && deg < lo_)
        demote(y, i);
    }
  }
}

CombinedEngine::CombinedEngine(NodeId n, const Config& cfg)
    : n_(n),
      cfg_(cfg),
      alpha_(cfg.resolved_alpha(Mode::Stream)),
      L_(levels_undirected(n, cfg.epsilon)),
      K_(stream_rungs(n, cfg.epsilon, alpha_)),
      classifier_(regime_thresholds(sparse_params(n, cfg)).enter_dense,
                  regime_thresholds(sparse_params(n, cfg)).exit_dense),
      sr_(n, sparse_params(n, cfg), mix64(cfg.seed, 0x5fa2), cfg.hash_mode,
          cfg.sketch_subs) {
  // A rung is run on samples only when its prescribed bucket count keeps the
  // sampling rate at most ~1/4 throughout the dense regime. Below that the
  // prescription exceeds the edge count, the sample degenerates to the edge
  // set itself, and the rung is maintained on exact degrees instead.
  long long budget = classifier_.exit_dense() / 4;
  exact_rungs_ = 0;
  for (int k = 1; k <= K_; ++k)
    if (dense_buckets(k, n, cfg.epsilon, alpha_, cfg) > budget)
      exact_rungs_ = k;
  double theta = theta_unit(n, cfg_);
  double hi = (1 - cfg.epsilon) * (1 - cfg.epsilon) * alpha_ * theta;
  double lo = (1 + cfg.epsilon) * (1 + cfg.epsilon) * theta;
  bank_.reserve(static_cast<size_t>(K_) * (L_ - 1));
  for (int k = 1; k <= K_; ++k) {
    long long s = dense_buckets(k, n, cfg.epsilon, alpha_, cfg);
    for (int i = 1; i <= L_ - 1; ++i)
      bank_.emplace_back(n, s, mix64(cfg.seed, 0xde5e, k * 1024 + i),
                         cfg.dense_variant, cfg.hash_mode, cfg.sketch_subs);
  }
  states_.reserve(K_);
  for (int k = 1; k <= K_; ++k)
    states_.push_back(std::make_unique<LevelSampleState>(
        n, L_, hi, lo, &dense_ledger_, k, &dense_changes_));
  exact_.resize(exact_rungs_);
  enter_sparse_interval();
}

double CombinedEngine::dense_d(int k) const {
  double pi = static_cast<double>(m_) / (2 * alpha_ * n_);
  return pi * std::pow(1 + cfg_.epsilon, k - 1);
}

void CombinedEngine::enter_dense_interval() {
  sparse_engine_.reset();
  std::vector<std::vector<uint64_t>> samples(L_ - 1);
  for (int k = first_sampled_rung(); k <= K_; ++k) {
    for (int i = 1; i <= L_ - 1; ++i)
      samples[i - 1] = bank_[bank_index(k, i)].snapshot();
    states_[k - 1]->initialize(samples, n_);
    states_[k - 1]->recover_pass();
  }
  // Exact-degree rungs restart from level 1 on the true edge set.
  exact_active_ = true;
  exact_slot_of_.clear();
  exact_free_slots_.clear();
  exact_next_slot_ = 0;
  for (int k = 1; k <= exact_rungs_; ++k) {
    double d = dense_d(k);
    exact_[k - 1] = std::make_unique<LevelStructure>(
        n_, L_, alpha_ * d, d, &dense_ledger_, k, &dense_changes_);
  }
  for (uint64_t key : present_) {
    auto [u, v] = edge_from_key(key, n_);
    int32_t slot = exact_next_slot_++;
    exact_slot_of_[key] = slot;
    for (int k = 1; k <= exact_rungs_; ++k)
      exact_[k - 1]->insert_edge(u, v, slot);
  }
  for (int k = 1; k <= exact_rungs_; ++k) exact_[k - 1]->recover();
}

void CombinedEngine::enter_sparse_interval() {
  for (auto& st : states_) st->clear();
  for (auto& ex : exact_) ex.reset();
  exact_active_ = false;
  exact_slot_of_.clear();
  exact_free_slots_.clear();
  exact_next_slot_ = 0;
  if (sparse_engine_) retired_ledger_ += sparse_engine_->ledger().total;
  sparse_engine_ = std::make_unique<FullDynamicEngine>(n_, cfg_);
  for (uint64_t key : sr_.snapshot()) {
    auto [u, v] = edge_from_key(key, n_);
    sparse_engine_->insert(u, v);
  }
}

void CombinedEngine::apply(const UpdateEvent& e) {
  if (e.kind == EventKind::Query) return;
  bool insert = e.kind == EventKind::Insert;
  if (e.u == e.v) throw SelfLoopError(e.u);
  if (e.u >= n_ || e.v >= n_)
    throw GraphError("node id out of range: " +
                     std::to_string(std::max(e.u, e.v)));
  uint64_t key = edge_key(e.u, e.v, n_);
  if (insert && present_.count(key)) throw DuplicateInsertError(e.u, e.v);
  if (!insert && !present_.count(key)) throw MissingDeleteError(e.u, e.v);
  int delta = insert ? 1 : -1;
  if (insert)
    present_.insert(key);
  else
    present_.erase(key);
  m_ += delta;

  dense_changes_.clear();
  initialized_this_event_ = false;

  fdiff_.clear();
  sr_.update(key, delta, &fdiff_);

  Regime before = classifier_.regime();
  Regime now = classifier_.step(m_);

  bool dense_active = now == Regime::Dense;
  // The bucketed samplers of the sampled rungs run at all times; their diffs
  // only drive the level states while the dense path is live.
  for (int k = first_sampled_rung(); k <= K_; ++k) {
    auto& state = *states_[k - 1];
    for (int i = 1; i <= L_ - 1; ++i) {
      sdiff_.clear();
      bank_[bank_index(k, i)].update(key, delta, &sdiff_);
      assert(sdiff_.size() <= 2);
      if (dense_active && before == Regime::Dense)
        for (const auto& d : sdiff_) state.sample_update(i, d.key, d.delta);
    }
  }

  // Sampler maintenance itself is part of the per-update work.
  dense_ledger_.add(static_cast<uint64_t>(K_ - exact_rungs_) * (L_ - 1) +
                    sr_.reps());

  if (now == Regime::Dense && before == Regime::Sparse) {
    enter_dense_interval();
    initialized_this_event_ = true;
  } else if (now == Regime::Sparse && before == Regime::Dense) {
    enter_sparse_interval();
  } else if (now == Regime::Sparse) {
    for (const auto& d : fdiff_) {
      auto [u, v] = edge_from_key(d.key, n_);
      if (d.delta > 0)
        sparse_engine_->insert(u, v);
      else
        sparse_engine_->erase(u, v);
    }
  } else {
    // Exact rungs consume the true event; thresholds track the edge count.
    int32_t slot;
    if (insert) {
      if (!exact_free_slots_.empty()) {
        slot = exact_free_slots_.back();
        exact_free_slots_.pop_back();
      } else {
        slot = exact_next_slot_++;
      }
      exact_slot_of_[key] = slot;
    } else {
      auto it = exact_slot_of_.find(key);
      slot = it->second;
      exact_slot_of_.erase(it);
      exact_free_slots_.push_back(slot);
    }
    for (int k = 1; k <= exact_rungs_; ++k) {
      auto& rung = *exact_[k - 1];
      if (insert)
        rung.insert_edge(e.u, e.v, slot);
      else
        rung.delete_edge(slot);
      double d = dense_d(k);
      rung.set_thresholds(alpha_ * d, d);
      rung.recover();
    }
    for (int k = first_sampled_rung(); k <= K_; ++k)
      states_[k - 1]->recover_pass();
  }
  ++events_;
  dense_ledger_.close_event(events_);
}

double CombinedEngine::query() const {
  if (m_ == 0) return 0.0;
  if (classifier_.regime() == Regime::Sparse)
    return sparse_engine_ ? sparse_engine_->query_value() : 0.0;
  for (int k = K_; k >= 1; --k)
    if (dense_top_nonempty(k)) {
      double e = cfg_.epsilon;
      return dense_d(k) / (2 * (1 + e) * (1 + e));
    }
  return 0.0;
}

uint64_t CombinedEngine::sampler_failures() const {
  uint64_t total = sr_.fail_count();
  for (const auto& b : bank_) total += b.fail_count();
  return total;
}

uint64_t CombinedEngine::ledger_total() const {
  uint64_t total = dense_ledger_.total + retired_ledger_;
  if (sparse_engine_) total += sparse_engine_->ledger().total;
  return total;
}

}  // namespace densestream
