#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace densestream {

using NodeId = uint32_t;

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SelfLoopError : GraphError {
  explicit SelfLoopError(NodeId u)
      : GraphError("self-loop at node " + std::to_string(u)) {}
};
struct DuplicateInsertError : GraphError {
  DuplicateInsertError(NodeId u, NodeId v)
      : GraphError("duplicate insert of edge (" + std::to_string(u) + "," +
                   std::to_string(v) + ")") {}
};
struct MissingDeleteError : GraphError {
  MissingDeleteError(NodeId u, NodeId v)
      : GraphError("delete of absent edge (" + std::to_string(u) + "," +
                   std::to_string(v) + ")") {}
};

enum class EventKind { Insert, Delete, Query };

struct UpdateEvent {
  EventKind kind;
  NodeId u = 0;
  NodeId v = 0;

  static UpdateEvent insert(NodeId u, NodeId v) {
    return {EventKind::Insert, u, v};
  }
  static UpdateEvent remove(NodeId u, NodeId v) {
    return {EventKind::Delete, u, v};
  }
  static UpdateEvent query() { return {EventKind::Query}; }
};

// Simple undirected graph on a fixed node set [0, n). Hashed neighbor sets
// give expected O(1) insert/delete/membership.
class DynamicGraph {
 public:
  explicit DynamicGraph(NodeId n) : adj_(n) {}

  NodeId n() const { return static_cast<NodeId>(adj_.size()); }
  uint64_t m() const { return m_; }
  uint32_t degree(NodeId v) const { return adj_[v].size(); }
  const std::unordered_set<NodeId>& neighbors(NodeId v) const {
    return adj_[v];
  }
  bool has_edge(NodeId u, NodeId v) const {
    return u < n() && adj_[u].count(v) > 0;
  }

  void insert_edge(NodeId u, NodeId v) {
    check_pair(u, v);
    if (adj_[u].count(v)) throw DuplicateInsertError(u, v);
    adj_[u].insert(v);
    adj_[v].insert(u);
    ++m_;
  }

  void delete_edge(NodeId u, NodeId v) {
    check_pair(u, v);
    if (!adj_[u].count(v)) throw MissingDeleteError(u, v);
    adj_[u].erase(v);
    adj_[v].erase(u);
    --m_;
  }

  void apply(const UpdateEvent& e) {
    if (e.kind == EventKind::Insert)
      insert_edge(e.u, e.v);
    else if (e.kind == EventKind::Delete)
      delete_edge(e.u, e.v);
  }

 private:
  void check_pair(NodeId u, NodeId v) const {
    if (u == v) throw SelfLoopError(u);
    if (u >= n() || v >= n())
      throw GraphError("node id out of range: " +
                       std::to_string(u > v ? u : v));
  }

  std::vector<std::unordered_set<NodeId>> adj_;
  uint64_t m_ = 0;
};

// Directed counterpart; (u,v) in out_adj[u] iff (u,v) in in_adj[v].
class DirectedDynamicGraph {
 public:
  explicit DirectedDynamicGraph(NodeId n) : out_(n), in_(n) {}

  NodeId n() const { return static_cast<NodeId>(out_.size()); }
  uint64_t m() const { return m_; }
  const std::unordered_set<NodeId>& out_neighbors(NodeId v) const {
    return out_[v];
  }
  const std::unordered_set<NodeId>& in_neighbors(NodeId v) const {
    return in_[v];
  }
  bool has_edge(NodeId u, NodeId v) const {
    return u < n() && out_[u].count(v) > 0;
  }

  void insert_edge(NodeId u, NodeId v) {
    check_pair(u, v);
    if (out_[u].count(v)) throw DuplicateInsertError(u, v);
    out_[u].insert(v);
    in_[v].insert(u);
    ++m_;
  }

  void delete_edge(NodeId u, NodeId v) {
    check_pair(u, v);
    if (!out_[u].count(v)) throw MissingDeleteError(u, v);
    out_[u].erase(v);
    in_[v].erase(u);
    --m_;
  }

  void apply(const UpdateEvent& e) {
    if (e.kind == EventKind::Insert)
      insert_edge(e.u, e.v);
    else if (e.kind == EventKind::Delete)
      delete_edge(e.u, e.v);
  }

 private:
  void check_pair(NodeId u, NodeId v) const {
    if (u == v) throw SelfLoopError(u);
    if (u >= n() || v >= n())
      throw GraphError("node id out of range: " +
                       std::to_string(u > v ? u : v));
  }

  std::vector<std::unordered_set<NodeId>> out_;
  std::vector<std::unordered_set<NodeId>> in_;
  uint64_t m_ = 0;
};

}  // namespace densestream
