#include "densestream/validity_audit.hpp"

namespace densestream {

DecompositionAudit::DecompositionAudit(const DynamicGraph* g, int L, Mode mode,
                                       double promote_above,
                                       double demote_below)
    : g_(g),
      L_(L),
      mode_(mode),
      hi_(promote_above),
      lo_(demote_below),
      level_(g->n(), 1),
      c_own_(g->n(), 0),
      c_below_(g->n(), 0) {}

void DecompositionAudit::track(NodeId v, int delta) {
  int l = level_[v];
  if (mode_ == Mode::Fixed) {
    bool bad = (l < L_ && c_own_[v] > hi_) || (l > 1 && c_below_[v] < lo_);
    if (bad) violation_count_ += delta;
    return;
  }
  if (l < L_) {
    size_t d = static_cast<size_t>(c_own_[v]);
    if (hist_own_.size() <= d) hist_own_.resize(d + 1, 0);
    hist_own_[d] += delta;
  }
  if (l > 1) {
    size_t d = static_cast<size_t>(c_below_[v]);
    if (hist_below_.size() <= d) hist_below_.resize(d + 1, 0);
    hist_below_[d] += delta;
  }
}

void DecompositionAudit::add_own(NodeId v, int delta) {
  track(v, -1);
  c_own_[v] += delta;
  track(v, +1);
}

void DecompositionAudit::add_below(NodeId v, int delta) {
  track(v, -1);
  c_below_[v] += delta;
  track(v, +1);
}

void DecompositionAudit::on_edge(NodeId u, NodeId v, bool inserted) {
  int delta = inserted ? 1 : -1;
  if (level_[v] >= level_[u]) add_own(u, delta);
  if (level_[v] >= level_[u] - 1) add_below(u, delta);
  if (level_[u] >= level_[v]) add_own(v, delta);
  if (level_[u] >= level_[v] - 1) add_below(v, delta);
}

void DecompositionAudit::on_level_change(NodeId v, int from, int to) {
  (void)from;
  track(v, -1);
  level_[v] = static_cast<uint16_t>(to);
  int own = 0, below = 0;
  for (NodeId u : g_->neighbors(v)) {
    int lu = level_[u];
    if (lu >= to) ++own;
    if (lu >= to - 1) ++below;
  }
  c_own_[v] = own;
  c_below_[v] = below;
  track(v, +1);
  // Neighbors count v against their own boundaries.
  for (NodeId u : g_->neighbors(v)) {
    int lu = level_[u];
    int was_own = from >= lu, is_own = to >= lu;
    if (was_own != is_own) add_own(u, is_own ? 1 : -1);
    int was_below = from >= lu - 1, is_below = to >= lu - 1;
    if (was_below != is_below) add_below(u, is_below ? 1 : -1);
  }
}

long long DecompositionAudit::violations() const { return violation_count_; }

long long DecompositionAudit::violations(double promote_above,
                                         double demote_below) const {
  long long bad = 0;
  for (size_t d = hist_own_.size(); d-- > 0;) {
    if (static_cast<double>(d) > promote_above)
      bad += hist_own_[d];
    else
      break;
  }
  for (size_t d = 0; d < hist_below_.size(); ++d) {
    if (static_cast<double>(d) < demote_below)
      bad += hist_below_[d];
    else
      break;
  }
  return bad;
}

}  // namespace densestream
