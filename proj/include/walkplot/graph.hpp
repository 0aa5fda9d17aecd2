#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace walkplot {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Immutable undirected simple graph with optional node class labels.
// Node ids are contiguous 0..n-1; adjacency lists are sorted, symmetric,
// deduplicated and free of self-loops. Safe for concurrent reads.
class Graph {
public:
  Graph() = default;

  // Takes arbitrary (u, v) pairs; symmetrizes, merges duplicates, drops
  // self-loops. Node count is fixed to n.
  Graph(int node_count, const std::vector<std::pair<int, int>>& edges);

  int node_count() const { return static_cast<int>(adjacency_.size()); }
  int edge_count() const { return edge_count_; }

  std::span<const int> neighbors(int v) const { return adjacency_[static_cast<size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(adjacency_[static_cast<size_t>(v)].size()); }
  bool has_edge(int u, int v) const;

  bool has_labels() const { return !labels_.empty(); }
  int label(int v) const { return labels_[static_cast<size_t>(v)]; }
  const std::vector<int>& labels() const { return labels_; }
  int class_count() const { return class_count_; }
  void set_labels(std::vector<int> labels, int class_count);

  // External id of a compacted node (identity unless load_edge_list mapped it).
  std::int64_t external_id(int v) const {
    return external_ids_.empty() ? v : external_ids_[static_cast<size_t>(v)];
  }
  bool has_external_id(std::int64_t id) const;
  int internal_id(std::int64_t external) const;  // throws on unknown id

  bool connected() const;

private:
  friend Graph load_edge_list(std::istream& in, struct LoadReport* report);

  std::vector<std::vector<int>> adjacency_;
  std::vector<int> labels_;
  int class_count_ = 0;
  int edge_count_ = 0;
  std::vector<std::int64_t> external_ids_;
  std::unordered_map<std::int64_t, int> external_to_internal_;
};

struct LoadReport {
  int line_count = 0;
  int edges_kept = 0;
  int duplicates_merged = 0;  // counts repeated or reversed pairs beyond the first
  int self_loops_dropped = 0;
};

// Edge-list text: "u v" per line, `#` comments, blank lines ignored. Ids are
// compacted to 0..n-1 in first-appearance order. Throws Error with the line
// number on malformed input and on empty input.
Graph load_edge_list(std::istream& in, LoadReport* report = nullptr);
Graph load_edge_list_file(const std::string& path, LoadReport* report = nullptr);

// Labels text: "node_id class_id" per line, external node ids. Every node
// must be covered exactly once; class_count becomes 1 + max class id.
void load_labels(std::istream& in, Graph& graph);
void load_labels_file(const std::string& path, Graph& graph);

// Canonical edge-list serialization: one "u v" line per undirected edge,
// u < v, ascending. load_edge_list round-trips it to identical adjacency.
void write_edge_list(std::ostream& out, const Graph& graph);
void write_labels(std::ostream& out, const Graph& graph);

// Connected induced subgraph from a walk union, with focus tracking and an
// original <-> local id remap.
struct NeighborhoodSubgraph {
  int focus = 0;             // original id
  int attempt = 0;           // which generation attempt produced it
  std::vector<int> members;  // sorted original ids, focus included
  Graph local;               // adjacency over local ids 0..|members|-1
  int local_focus = 0;

  int size() const { return static_cast<int>(members.size()); }
  int local_id(int original) const;  // throws if not a member
  int original_id(int local) const { return members[static_cast<size_t>(local)]; }
};

// members must be a subset of the graph's nodes and contain focus; the local
// adjacency holds exactly the parent edges internal to members.
NeighborhoodSubgraph induce_subgraph(const Graph& graph, int focus, std::vector<int> members);

// All-pairs hop counts of a connected subgraph, plus its diameter.
struct DistanceMatrix {
  Eigen::MatrixXi p;  // p(i, j) = shortest-path length, p(i, i) = 0
  int lambda = 0;     // max entry
};

DistanceMatrix all_pairs_distances(const NeighborhoodSubgraph& sub);

struct GraphStats {
  int nodes = 0;
  long long edges_undirected = 0;
  long long edges_directed_pairs = 0;
  double density_undirected = 0.0;
  double density_directed = 0.0;
  double avg_degree = 0.0;           // 2m/n
  double avg_degree_directed = 0.0;  // in+out convention, 4m/n
  double avg_neighbor_degree = 0.0;
  double avg_triangles = 0.0;        // triangles through a node, averaged
  int class_count = 0;               // 0 when unlabeled
};

GraphStats compute_stats(const Graph& graph);

}  // namespace walkplot
