#pragma once

#include "walkplot/graph.hpp"
#include "walkplot/rng.hpp"

#include <cstdint>
#include <vector>

namespace walkplot {

// phi = (d, b, l, k, n) plus the subgraph size bound and the walk seed.
// d biases returning to the predecessor (depth control), b biases moving
// outside the predecessor's neighborhood (breadth control).
struct WalkParams {
  double d = 1.0;
  double b = 1.0;
  int l = 32;          // edges per walk
  int k = 4;           // walks per subgraph
  int n = 4;           // subgraph attempts per node
  int max_nodes = 256; // accept a union only while strictly below this
  std::uint64_t seed = 42;

  void validate() const;
};

// Second-order biased walk: from current node v with predecessor t, candidate
// x gets unnormalized weight 1/d if x == t, 1 if x is adjacent to t, and 1/b
// otherwise. The first step is uniform. Returns at most l+1 nodes starting at
// `start`; shorter only when start has degree 0.
std::vector<int> random_walk(const Graph& graph, int start, const WalkParams& params, Rng& rng);

// One generation attempt: union of k walks from `node`, kept only if the
// union stays strictly below max_nodes. Attempts are numbered regardless of
// acceptance, so the list holds between 0 and n subgraphs.
std::vector<NeighborhoodSubgraph> neighborhood_subgraphs(const Graph& graph, int node,
                                                         const WalkParams& params);

// All nodes' subgraphs in (node, attempt) order; parallel across nodes.
std::vector<NeighborhoodSubgraph> generate_all_subgraphs(const Graph& graph,
                                                         const WalkParams& params,
                                                         int n_threads = 0);

}  // namespace walkplot
