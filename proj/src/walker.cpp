#include "walkplot/walker.hpp"

#include "walkplot/parallel.hpp"

#include <mutex>
#include <unordered_set>

namespace walkplot {

void WalkParams::validate() const {
  if (!(d > 0.0) || !(b > 0.0)) throw Error("walk biases d and b must be positive");
  if (l < 0) throw Error("walk length must be >= 0");
  if (k < 1) throw Error("walks per subgraph must be >= 1");
  if (n < 1) throw Error("attempts per node must be >= 1");
  if (max_nodes < 1) throw Error("max_nodes must be >= 1");
}

std::vector<int> random_walk(const Graph& graph, int start, const WalkParams& params, Rng& rng) {
  if (start < 0 || start >= graph.node_count())
    throw Error("walk start node out of range: " + std::to_string(start));
  std::vector<int> walk;
  walk.reserve(static_cast<size_t>(params.l) + 1);
  walk.push_back(start);
  if (params.l == 0 || graph.degree(start) == 0) return walk;

  // first step: uniform over neighbors
  auto nbrs = graph.neighbors(start);
  walk.push_back(nbrs[rng.uniform_below(nbrs.size())]);

  std::vector<double> weights;
  for (int step = 1; step < params.l; ++step) {
    const int current = walk.back();
    const int prev = walk[walk.size() - 2];
    auto candidates = graph.neighbors(current);
    // a non-start node always has the predecessor as a neighbor, so the walk
    // can only stall at an isolated start node
    weights.resize(candidates.size());
    double total = 0.0;
    for (size_t i = 0; i < candidates.size(); ++i) {
      const int x = candidates[i];
      double w;
      if (x == prev)
        w = 1.0 / params.d;
      else if (graph.has_edge(x, prev))
        w = 1.0;
      else
        w = 1.0 / params.b;
      weights[i] = w;
      total += w;
    }
    double r = rng.uniform() * total;
    size_t pick = candidates.size() - 1;
    double acc = 0.0;
    for (size_t i = 0; i < candidates.size(); ++i) {
      acc += weights[i];
      if (r < acc) {
        pick = i;
        break;
      }
    }
    walk.push_back(candidates[pick]);
  }
  return walk;
}

std::vector<NeighborhoodSubgraph> neighborhood_subgraphs(const Graph& graph, int node,
                                                         const WalkParams& params) {
  params.validate();
  if (node < 0 || node >= graph.node_count())
    throw Error("node out of range: " + std::to_string(node));
  std::vector<NeighborhoodSubgraph> result;
  std::unordered_set<int> member_set;
  for (int attempt = 0; attempt < params.n; ++attempt) {
    Rng rng = derive_stream(params.seed, "walks", static_cast<std::uint64_t>(node),
                            static_cast<std::uint64_t>(attempt));
    member_set.clear();
    for (int w = 0; w < params.k; ++w) {
      auto walk = random_walk(graph, node, params, rng);
      member_set.insert(walk.begin(), walk.end());
    }
    if (static_cast<int>(member_set.size()) < params.max_nodes) {
      std::vector<int> members(member_set.begin(), member_set.end());
      auto sub = induce_subgraph(graph, node, std::move(members));
      sub.attempt = attempt;
      result.push_back(std::move(sub));
    }
  }
  return result;
}

std::vector<NeighborhoodSubgraph> generate_all_subgraphs(const Graph& graph,
                                                         const WalkParams& params,
                                                         int n_threads) {
  params.validate();
  const size_t n = static_cast<size_t>(graph.node_count());
  std::vector<std::vector<NeighborhoodSubgraph>> per_node(n);
  parallel_for(n, [&](size_t v) {
    per_node[v] = neighborhood_subgraphs(graph, static_cast<int>(v), params);
  }, n_threads);
  std::vector<NeighborhoodSubgraph> flat;
  for (auto& group : per_node)
    for (auto& sub : group) flat.push_back(std::move(sub));
  return flat;
}

}  // namespace walkplot
