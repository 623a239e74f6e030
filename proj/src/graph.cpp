#include "kazhdan/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace kazhdan {

Multigraph::Multigraph(int vertex_count, std::vector<std::string> labels)
    : vertex_count_(vertex_count), labels_(std::move(labels)) {
  if (vertex_count < 0) throw GraphError("negative vertex count");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != vertex_count) {
    throw GraphError("label count does not match vertex count");
  }
}

std::string Multigraph::label(int v) const {
  return labels_.empty() ? std::to_string(v) : labels_[static_cast<std::size_t>(v)];
}

void Multigraph::add_edge(int u, int v, int multiplicity) {
  if (u < 0 || v < 0 || u >= vertex_count_ || v >= vertex_count_) {
    throw GraphError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                     ") out of range for " + std::to_string(vertex_count_) + " vertices");
  }
  if (u > v) std::swap(u, v);
  for (int i = 0; i < multiplicity; ++i) edges_.push_back({u, v});
}

std::vector<int> Multigraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(vertex_count_), 0);
  for (const Edge& e : edges_) {
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
  }
  return deg;
}

int Multigraph::loop_count() const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                        [](const Edge& e) { return e.u == e.v; }));
}

std::vector<Edge> Multigraph::sorted_edges() const {
  std::vector<Edge> out = edges_;
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct DisjointSets {
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(b)] = a;
    return true;
  }
  std::vector<int> parent;
};

}  // namespace

int component_count(const Multigraph& g) {
  DisjointSets sets(g.vertex_count());
  int components = g.vertex_count();
  for (const Edge& e : g.edges()) {
    if (sets.unite(e.u, e.v)) --components;
  }
  return components;
}

bool is_connected(const Multigraph& g) { return component_count(g) == 1; }

bool is_bipartite(const Multigraph& g) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) return false;
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  std::vector<int> color(n, -1);
  std::vector<int> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    stack.push_back(static_cast<int>(s));
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[static_cast<std::size_t>(x)]) {
        auto& cy = color[static_cast<std::size_t>(y)];
        if (cy == -1) {
          cy = 1 - color[static_cast<std::size_t>(x)];
          stack.push_back(y);
        } else if (cy == color[static_cast<std::size_t>(x)]) {
          return false;
        }
      }
    }
  }
  return true;
}

void write_graph(std::ostream& out, const Multigraph& g) {
  out << "vertices=" << g.vertex_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Multigraph read_graph(std::istream& in) {
  std::string line;
  while (std::getline(in, line) && (line.empty() || line[0] == '#')) {
  }
  if (line.rfind("vertices=", 0) != 0) throw GraphError("expected 'vertices=<int>' header");
  int n = 0;
  try {
    n = std::stoi(line.substr(9));
  } catch (const std::exception&) {
    throw GraphError("bad vertex count in '" + line + "'");
  }
  Multigraph g(n);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    int u = 0;
    int v = 0;
    if (!(row >> u >> v)) throw GraphError("bad edge line '" + line + "'");
    g.add_edge(u, v);
  }
  return g;
}

}  // namespace kazhdan
