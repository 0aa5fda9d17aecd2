#include "walkplot/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace walkplot {

Graph::Graph(int node_count, const std::vector<std::pair<int, int>>& edges) {
  if (node_count < 0) throw Error("negative node count");
  adjacency_.assign(static_cast<size_t>(node_count), {});
  for (auto [u, v] : edges) {
    if (u < 0 || u >= node_count || v < 0 || v >= node_count)
      throw Error("edge endpoint out of range: " + std::to_string(u) + " " + std::to_string(v));
    if (u == v) continue;
    adjacency_[static_cast<size_t>(u)].push_back(v);
    adjacency_[static_cast<size_t>(v)].push_back(u);
  }
  for (auto& nbrs : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    edge_count_ += static_cast<int>(nbrs.size());
  }
  edge_count_ /= 2;
}

bool Graph::has_edge(int u, int v) const {
  const auto& nbrs = adjacency_[static_cast<size_t>(u)];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

void Graph::set_labels(std::vector<int> labels, int class_count) {
  if (static_cast<int>(labels.size()) != node_count())
    throw Error("label count does not match node count");
  for (int c : labels)
    if (c < 0 || c >= class_count) throw Error("label outside class range");
  labels_ = std::move(labels);
  class_count_ = class_count;
}

bool Graph::has_external_id(std::int64_t id) const {
  if (external_ids_.empty()) return id >= 0 && id < node_count();
  return external_to_internal_.count(id) > 0;
}

int Graph::internal_id(std::int64_t external) const {
  if (external_ids_.empty()) {
    if (external < 0 || external >= node_count())
      throw Error("unknown node id " + std::to_string(external));
    return static_cast<int>(external);
  }
  auto it = external_to_internal_.find(external);
  if (it == external_to_internal_.end())
    throw Error("unknown node id " + std::to_string(external));
  return it->second;
}

bool Graph::connected() const {
  const int n = node_count();
  if (n == 0) return true;
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : neighbors(u)) {
      if (!seen[static_cast<size_t>(v)]) {
        seen[static_cast<size_t>(v)] = 1;
        ++reached;
        queue.push_back(v);
      }
    }
  }
  return reached == n;
}

namespace {

bool parse_i64(std::string_view token, std::int64_t& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// Splits a line into whitespace-separated tokens; `#` starts a comment.
std::vector<std::string_view> tokenize(std::string_view line) {
  if (auto pos = line.find('#'); pos != std::string_view::npos) line = line.substr(0, pos);
  std::vector<std::string_view> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

}  // namespace

Graph load_edge_list(std::istream& in, LoadReport* report) {
  std::string line;
  int line_no = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::int64_t> external_ids;
  std::unordered_map<std::int64_t, int> id_map;
  LoadReport rep;

  auto intern = [&](std::int64_t ext) {
    auto [it, inserted] = id_map.try_emplace(ext, static_cast<int>(external_ids.size()));
    if (inserted) external_ids.push_back(ext);
    return it->second;
  };

  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    std::int64_t a = 0, b = 0;
    if (tokens.size() != 2 || !parse_i64(tokens[0], a) || !parse_i64(tokens[1], b))
      throw Error("malformed edge at line " + std::to_string(line_no) + ": '" + line + "'");
    ++rep.line_count;
    int u = intern(a);
    int v = intern(b);
    if (u == v) {
      ++rep.self_loops_dropped;
      continue;
    }
    edges.emplace_back(u, v);
  }
  if (external_ids.empty()) throw Error("empty edge list");

  Graph g(static_cast<int>(external_ids.size()), edges);
  rep.edges_kept = g.edge_count();
  rep.duplicates_merged = static_cast<int>(edges.size()) - g.edge_count();
  g.external_ids_ = std::move(external_ids);
  g.external_to_internal_ = std::move(id_map);
  if (report) *report = rep;
  return g;
}

Graph load_edge_list_file(const std::string& path, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open edge list: " + path);
  return load_edge_list(in, report);
}

void load_labels(std::istream& in, Graph& graph) {
  std::string line;
  int line_no = 0;
  std::vector<int> labels(static_cast<size_t>(graph.node_count()), -1);
  int max_class = -1;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    std::int64_t node = 0, cls = 0;
    if (tokens.size() != 2 || !parse_i64(tokens[0], node) || !parse_i64(tokens[1], cls))
      throw Error("malformed label at line " + std::to_string(line_no) + ": '" + line + "'");
    if (cls < 0) throw Error("negative class id at line " + std::to_string(line_no));
    int v = graph.internal_id(node);  // throws on unknown node
    if (labels[static_cast<size_t>(v)] != -1)
      throw Error("duplicate label for node " + std::to_string(node) + " at line " +
                  std::to_string(line_no));
    labels[static_cast<size_t>(v)] = static_cast<int>(cls);
    max_class = std::max(max_class, static_cast<int>(cls));
  }
  for (int v = 0; v < graph.node_count(); ++v)
    if (labels[static_cast<size_t>(v)] == -1)
      throw Error("missing label for node with external id " +
                  std::to_string(graph.external_id(v)));
  graph.set_labels(std::move(labels), max_class + 1);
}

void load_labels_file(const std::string& path, Graph& graph) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open labels: " + path);
  load_labels(in, graph);
}

void write_edge_list(std::ostream& out, const Graph& graph) {
  for (int u = 0; u < graph.node_count(); ++u)
    for (int v : graph.neighbors(u))
      if (u < v) out << u << ' ' << v << '\n';
}

void write_labels(std::ostream& out, const Graph& graph) {
  for (int v = 0; v < graph.node_count(); ++v) out << v << ' ' << graph.label(v) << '\n';
}

int NeighborhoodSubgraph::local_id(int original) const {
  auto it = std::lower_bound(members.begin(), members.end(), original);
  if (it == members.end() || *it != original)
    throw Error("node " + std::to_string(original) + " is not a subgraph member");
  return static_cast<int>(it - members.begin());
}

NeighborhoodSubgraph induce_subgraph(const Graph& graph, int focus, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!std::binary_search(members.begin(), members.end(), focus))
    throw Error("focus node " + std::to_string(focus) + " not in member set");
  for (int m : members)
    if (m < 0 || m >= graph.node_count())
      throw Error("member " + std::to_string(m) + " outside graph");

  NeighborhoodSubgraph sub;
  sub.focus = focus;
  sub.members = std::move(members);
  const int n = sub.size();
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    // intersect the parent adjacency with the member set
    for (int nbr : graph.neighbors(sub.members[static_cast<size_t>(i)])) {
      auto it = std::lower_bound(sub.members.begin(), sub.members.end(), nbr);
      if (it != sub.members.end() && *it == nbr) {
        int j = static_cast<int>(it - sub.members.begin());
        if (i < j) edges.emplace_back(i, j);
      }
    }
  }
  sub.local = Graph(n, edges);
  sub.local_focus = sub.local_id(focus);
  return sub;
}

DistanceMatrix all_pairs_distances(const NeighborhoodSubgraph& sub) {
  const int n = sub.size();
  DistanceMatrix dm;
  dm.p = Eigen::MatrixXi::Constant(n, n, -1);
  std::vector<int> queue;
  queue.reserve(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) {
    queue.assign(1, s);
    dm.p(s, s) = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
      int u = queue[head];
      int du = dm.p(s, u);
      for (int v : sub.local.neighbors(u)) {
        if (dm.p(s, v) == -1) {
          dm.p(s, v) = du + 1;
          queue.push_back(v);
        }
      }
    }
  }
  if ((dm.p.array() < 0).any())
    throw Error("subgraph is not connected; distances undefined");
  dm.lambda = dm.p.maxCoeff();
  return dm;
}

GraphStats compute_stats(const Graph& graph) {
  GraphStats s;
  s.nodes = graph.node_count();
  s.edges_undirected = graph.edge_count();
  s.edges_directed_pairs = 2LL * graph.edge_count();
  const double n = static_cast<double>(s.nodes);
  if (s.nodes > 1) {
    s.density_undirected = static_cast<double>(s.edges_undirected) / (n * (n - 1.0) / 2.0);
    s.density_directed = static_cast<double>(s.edges_directed_pairs) / (n * (n - 1.0));
  }
  if (s.nodes > 0) {
    s.avg_degree = 2.0 * static_cast<double>(s.edges_undirected) / n;
    s.avg_degree_directed = 2.0 * s.avg_degree;  // in+out convention
    double nbr_deg_sum = 0.0;
    long long triangle_sum = 0;
    for (int u = 0; u < s.nodes; ++u) {
      auto nbrs = graph.neighbors(u);
      if (!nbrs.empty()) {
        double acc = 0.0;
        for (int v : nbrs) acc += static_cast<double>(graph.degree(v));
        nbr_deg_sum += acc / static_cast<double>(nbrs.size());
      }
      // triangles through u: adjacent neighbor pairs
      for (size_t i = 0; i < nbrs.size(); ++i)
        for (size_t j = i + 1; j < nbrs.size(); ++j)
          if (graph.has_edge(nbrs[i], nbrs[j])) ++triangle_sum;
    }
    s.avg_neighbor_degree = nbr_deg_sum / n;
    s.avg_triangles = static_cast<double>(triangle_sum) / n;
  }
  s.class_count = graph.has_labels() ? graph.class_count() : 0;
  return s;
}

}  // namespace walkplot
