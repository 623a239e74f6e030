#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kazhdan {

struct Edge {
  int u = 0;
  int v = 0;  // u <= v after normalization

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Undirected multigraph with loops. A loop adds 2 to its vertex's degree.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int vertex_count, std::vector<std::string> labels = {});

  int vertex_count() const { return vertex_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int v) const;

  void add_edge(int u, int v, int multiplicity = 1);

  std::vector<int> degrees() const;
  int loop_count() const;

  // Edge multiset in sorted order; convenient for comparisons.
  std::vector<Edge> sorted_edges() const;

 private:
  int vertex_count_ = 0;
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
};

// Union-find connectivity; isolated vertices are their own components.
int component_count(const Multigraph& g);
bool is_connected(const Multigraph& g);
bool is_bipartite(const Multigraph& g);

// `vertices=<n>` then one `u v` per line, 0-indexed.
void write_graph(std::ostream& out, const Multigraph& g);
Multigraph read_graph(std::istream& in);

}  // namespace kazhdan
