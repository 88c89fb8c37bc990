#include "densestream/decomposition.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace densestream {

Rational rational_from_double(double x) {
  if (x == 0) return Rational(0);
  bool neg = x < 0;
  double ax = neg ? -x : x;
  int exp;
  double frac = std::frexp(ax, &exp);  // ax = frac * 2^exp, frac in [0.5, 1)
  // 40 mantissa bits keep num/den inside int64 for every threshold in use.
  long long num = static_cast<long long>(std::llround(frac * (1ll << 40)));
  int e2 = exp - 40;
  while (e2 > 0 && num <= (1ll << 60)) {
    num <<= 1;
    --e2;
  }
  long long den = 1;
  while (e2 < 0 && den <= (1ll << 60)) {
    den <<= 1;
    ++e2;
  }
  return Rational(neg ? -num : num, den);
}

Decomposition build_peeling(const DynamicGraph& g, const Rational& alpha,
                            const Rational& d, int L) {
  Decomposition dec;
  dec.L = L;
  dec.alpha = alpha.value();
  dec.d = d.value();
  dec.level.assign(g.n(), 1);

  std::vector<char> in_prefix(g.n(), 1);
  std::vector<long long> deg(g.n());
  for (NodeId v = 0; v < g.n(); ++v) deg[v] = g.degree(v);

  for (int i = 1; i < L; ++i) {
    // Z_{i+1} = { v in Z_i : deg of v within Z_i > alpha*d } (maximal
    // peeling). Selection uses degrees w.r.t. the current prefix only;
    // removals take effect for the next round.
    std::vector<NodeId> removed;
    for (NodeId v = 0; v < g.n(); ++v)
      if (in_prefix[v] && !degree_gt(deg[v], alpha, d)) {
        in_prefix[v] = 0;
        removed.push_back(v);
      }
    if (removed.empty()) {
      // Prefix is stable from here on: survivors reach the top level.
      for (NodeId v = 0; v < g.n(); ++v)
        if (in_prefix[v]) dec.level[v] = static_cast<uint16_t>(L);
      break;
    }
    for (NodeId v : removed)
      for (NodeId u : g.neighbors(v))
        if (in_prefix[u]) --deg[u];
    bool any = false;
    for (NodeId v = 0; v < g.n(); ++v)
      if (in_prefix[v]) {
        dec.level[v] = static_cast<uint16_t>(i + 1);
        any = true;
      }
    if (!any) break;
  }
  return dec;
}

namespace {

ViolationReport check_valid_impl(const DynamicGraph& g,
                                 const Decomposition& dec,
                                 const Rational& alpha, const Rational& d) {
  ViolationReport report;
  // Per node, the count of neighbors at level >= i is a suffix sum of the
  // neighbor level histogram; prefix degree at i is that suffix.
  std::vector<long long> hist(dec.L + 2, 0);
  for (NodeId v = 0; v < g.n(); ++v) {
    int lv = dec.level[v];
    std::fill(hist.begin(), hist.end(), 0);
    for (NodeId u : g.neighbors(v)) ++hist[dec.level[u]];
    long long suffix = 0;
    std::vector<long long> deg_at(dec.L + 1, 0);
    for (int i = dec.L; i >= 1; --i) {
      suffix += hist[i];
      deg_at[i] = suffix;
    }
    for (int i = 1; i <= std::min(lv, dec.L - 1); ++i) {
      if (i == lv && degree_gt(deg_at[i], alpha, d))
        report.violations.push_back(
            {v, i, deg_at[i], "degree > alpha*d must promote"});
      if (i < lv && degree_lt(deg_at[i], d))
        report.violations.push_back(
            {v, i, deg_at[i], "degree < d must not stay"});
    }
  }
  return report;
}

}  // namespace

ViolationReport check_valid(const DynamicGraph& g, const Decomposition& dec,
                            const Rational& alpha, const Rational& d) {
  return check_valid_impl(g, dec, alpha, d);
}

ViolationReport check_valid(const DynamicGraph& g, const Decomposition& dec) {
  return check_valid_impl(g, dec, rational_from_double(dec.alpha),
                          rational_from_double(dec.d));
}

std::pair<int, Rational> densest_prefix(const DynamicGraph& g,
                                        const Decomposition& dec) {
  // edges_rmin[i] = #edges whose endpoint levels have minimum i;
  // |E(Z_j)| is then a suffix sum, as is |Z_j|.
  std::vector<long long> edges_rmin(dec.L + 1, 0), nodes_at(dec.L + 1, 0);
  for (NodeId v = 0; v < g.n(); ++v) {
    ++nodes_at[dec.level[v]];
    for (NodeId u : g.neighbors(v))
      if (u > v) ++edges_rmin[std::min(dec.level[u], dec.level[v])];
  }
  int best_j = 1;
  Rational best(0);
  long long esuf = 0, nsuf = 0;
  std::vector<Rational> density(dec.L + 1, Rational(0));
  for (int j = dec.L; j >= 1; --j) {
    esuf += edges_rmin[j];
    nsuf += nodes_at[j];
    density[j] = nsuf ? Rational(esuf, nsuf) : Rational(0);
  }
  for (int j = 1; j <= dec.L - 1; ++j)
    if (density[j] > best) {
      best = density[j];
      best_j = j;
    }
  return {best_j, best};
}

std::string decomposition_to_json(const Decomposition& dec) {
  nlohmann::json j;
  j["alpha"] = dec.alpha;
  j["d"] = dec.d;
  j["L"] = dec.L;
  j["levels"] = dec.level;
  return j.dump();
}

Decomposition decomposition_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Decomposition dec;
  dec.alpha = j.at("alpha").get<double>();
  dec.d = j.at("d").get<double>();
  dec.L = j.at("L").get<int>();
  dec.level = j.at("levels").get<std::vector<uint16_t>>();
  return dec;
}

}  // namespace densestream
