#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "densestream/dynamic_density.hpp"
#include "densestream/generators.hpp"
#include "densestream/oracles.hpp"
#include "densestream/validity_audit.hpp"
#include "helpers.hpp"

using namespace densestream;
using testutil::random_edges;

namespace {

Config test_config(double eps = 0.1) {
  Config cfg;
  cfg.epsilon = eps;
  return cfg;
}

// Brute-force validity of every rung of the engine.
bool all_rungs_valid(const FullDynamicEngine& eng) {
  for (int k = 1; k <= eng.rungs(); ++k) {
    auto dec = eng.rung_decomposition(k);
    if (!check_valid(eng.graph(), dec).valid()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("single edge: no rung with threshold >= 1 promotes anyone") {
  FullDynamicEngine eng(8, test_config());
  eng.insert(0, 1);
  for (int k = 1; k <= eng.rungs(); ++k) {
    if (eng.ladder().d(k) < 1.0) continue;
    for (NodeId v = 0; v < 8; ++v) CHECK(eng.rung(k).level(v) == 1);
  }
  CHECK(eng.query_value() > 0);
  CHECK(all_rungs_valid(eng));
}

TEST_CASE("clique buildup brackets the known optimum") {
  FullDynamicEngine eng(10, test_config(0.1));
  for (NodeId u = 0; u < 10; ++u)
    for (NodeId v = u + 1; v < 10; ++v) eng.insert(u, v);
  double opt = 4.5;
  double bound = 2 * eng.alpha() * std::pow(1.1, 3);
  CHECK(eng.query_value() <= opt * (1 + 1e-9));
  CHECK(eng.query_value() >= opt / bound);
}

TEST_CASE("random insert stream stays valid at every step") {
  FullDynamicEngine eng(40, test_config());
  auto edges = random_edges(40, 0.35, 17);
  int step = 0;
  for (auto [u, v] : edges) {
    eng.insert(u, v);
    if (++step % 25 == 0) CHECK(all_rungs_valid(eng));
  }
  CHECK(all_rungs_valid(eng));
}

TEST_CASE("incremental audit agrees with brute validity") {
  Config cfg = test_config(0.2);
  FullDynamicEngine eng(30, cfg);
  std::vector<std::unique_ptr<DecompositionAudit>> audits;
  for (int k = 1; k <= eng.rungs(); ++k) {
    double d = eng.ladder().d(k);
    audits.push_back(std::make_unique<DecompositionAudit>(
        &eng.graph(), levels_undirected(30, cfg.epsilon),
        DecompositionAudit::Mode::Fixed, eng.alpha() * d, d));
  }
  auto stream = gen::churn({.n = 30, .steps = 600, .seed = 5});
  int step = 0;
  for (const auto& e : stream.events) {
    if (e.kind == EventKind::Query) continue;
    eng.apply(e);
    for (auto& a : audits)
      a->on_edge(e.u, e.v, e.kind == EventKind::Insert);
    for (const auto& ch : eng.last_changes())
      audits[ch.tag - 1]->on_level_change(ch.node, ch.from, ch.to);
    for (auto& a : audits) CHECK(a->violations() == 0);
    if (++step % 100 == 0) CHECK(all_rungs_valid(eng));
  }
}

TEST_CASE("deletion keeps validity and teardown returns all levels to 1") {
  FullDynamicEngine eng(4, test_config());
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < 4; ++u)
    for (NodeId v = u + 1; v < 4; ++v) {
      eng.insert(u, v);
      edges.emplace_back(u, v);
    }
  eng.erase(0, 1);
  CHECK(all_rungs_valid(eng));
  eng.insert(0, 1);
  for (auto [u, v] : edges) eng.erase(u, v);
  CHECK(eng.m() == 0);
  CHECK(eng.query_value() == 0.0);
  for (int k = 1; k <= eng.rungs(); ++k)
    for (NodeId v = 0; v < 4; ++v) CHECK(eng.rung(k).level(v) == 1);
}

TEST_CASE("ledger breakdown records per-event work when enabled") {
  FullDynamicEngine eng(12, test_config());
  eng.ledger().record_breakdown = true;
  eng.insert(0, 1);
  eng.insert(1, 2);
  eng.erase(0, 1);
  REQUIRE(eng.ledger().breakdown.size() == 3);
  uint64_t sum = 0;
  for (auto [idx, ops] : eng.ledger().breakdown) sum += ops;
  CHECK(sum == eng.ledger().total);
  CHECK(eng.ledger().breakdown[2].first == 3);
}

TEST_CASE("recover is a no-op when nothing is dirty") {
  FullDynamicEngine eng(6, test_config());
  eng.insert(0, 1);
  uint64_t before = eng.ledger().total;
  // A query plus an untouched engine performs no maintenance work.
  (void)eng.query_value();
  CHECK(eng.ledger().total == before);
}

TEST_CASE("star center deletion cascade terminates clean") {
  FullDynamicEngine eng(20, test_config());
  for (NodeId v = 1; v < 20; ++v) eng.insert(0, v);
  for (NodeId v = 1; v < 12; ++v) eng.insert(v, v + 1 == 12 ? 13 : v + 1);
  for (NodeId v = 1; v < 20; ++v) eng.erase(0, v);
  CHECK(all_rungs_valid(eng));
}

TEST_CASE("alternating insert/delete has bounded amortized ledger work") {
  Config cfg = test_config();
  FullDynamicEngine eng(16, cfg);
  int t = 2000;
  for (int i = 0; i < t / 2; ++i) {
    eng.insert(3, 7);
    eng.erase(3, 7);
  }
  int L = levels_undirected(16, cfg.epsilon);
  double budget = static_cast<double>(t) * L / cfg.epsilon;
  // One rung costs O(L/eps) amortized; K rungs cost K times that.
  CHECK(static_cast<double>(eng.ledger().total) <=
        budget * eng.rungs());
}

TEST_CASE("query value against the exact oracle") {
  Config cfg = test_config(0.1);
  double bound = 2 * cfg.resolved_alpha(Mode::Full) * std::pow(1.1, 3);
  for (uint64_t seed = 1; seed <= 4; ++seed) {
    FullDynamicEngine eng(60, cfg);
    auto edges = random_edges(60, 0.3, seed);
    for (auto [u, v] : edges) eng.insert(u, v);
    auto opt = oracle::exact_undirected(eng.graph()).density.value();
    double out = eng.query_value();
    CHECK(out <= opt * (1 + 1e-9));
    CHECK(opt <= bound * out * (1 + 1e-9));
  }
}

TEST_CASE("query value is zero exactly when the graph is empty") {
  FullDynamicEngine eng(10, test_config());
  CHECK(eng.query_value() == 0.0);
  eng.insert(4, 5);
  CHECK(eng.query_value() > 0.0);
  eng.erase(4, 5);
  CHECK(eng.query_value() == 0.0);
}

TEST_CASE("query_subgraph finds a planted clique among isolated nodes") {
  FullDynamicEngine eng(100, test_config());
  for (NodeId u = 0; u < 10; ++u)
    for (NodeId v = u + 1; v < 10; ++v) eng.insert(u, v);
  auto sub = eng.query_subgraph();
  REQUIRE(sub.size() == 10);
  for (NodeId v = 0; v < 10; ++v) CHECK(sub[v] == v);
  CHECK(oracle::subset_density(eng.graph(), sub).value() >=
        eng.query_value() - 1e-12);
}

TEST_CASE("query_subgraph on the empty graph is empty") {
  FullDynamicEngine eng(5, test_config());
  CHECK(eng.query_subgraph().empty());
}

TEST_CASE("query_subgraph meets the value guarantee on a planted instance") {
  Config cfg = test_config(0.1);
  FullDynamicEngine eng(200, cfg);
  auto stream = gen::planted_clique(
      {.n = 200, .clique = 15, .p = 0.05, .seed = 21});
  for (const auto& e : stream.events)
    if (e.kind != EventKind::Query) eng.apply(e);
  auto sub = eng.query_subgraph();
  double sub_density = oracle::subset_density(eng.graph(), sub).value();
  double opt = oracle::exact_undirected(eng.graph()).density.value();
  double bound = 2 * eng.alpha() * std::pow(1.1, 3);
  CHECK(sub_density >= opt / bound);
  CHECK(sub_density >= eng.query_value() - 1e-12);
}
