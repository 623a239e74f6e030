#include "kazhdan/linkgraph.hpp"

namespace kazhdan {

namespace {

std::vector<std::string> symbol_labels(int m) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(2 * m));
  for (int s = 0; s < 2 * m; ++s) labels.push_back(to_string(Letter::from_symbol_index(s, m)));
  return labels;
}

template <typename Visit>
int for_each_triangle(const Presentation& p, Visit&& visit) {
  const int m = p.generator_count;
  int ignored = 0;
  for (const Word& r : p.relators) {
    if (r.size() != 3) {
      ++ignored;
      continue;
    }
    if (!is_cyclically_reduced(r)) {
      throw GraphError("relator '" + to_string(r) + "' is not cyclically reduced");
    }
    for (Letter l : r) {
      if (l.generator() > m) throw GraphError("letter " + to_string(l) + " exceeds m");
    }
    for (int i = 0; i < 3; ++i) {
      const Letter x = r[static_cast<std::size_t>(i)];
      const Letter y = r[static_cast<std::size_t>((i + 1) % 3)];
      visit(i, x.symbol_index(m), y.inverse().symbol_index(m));
    }
  }
  return ignored;
}

}  // namespace

LinkGraph build_link_graph(const Presentation& p) {
  LinkGraph out{Multigraph(2 * p.generator_count, symbol_labels(p.generator_count)), 0};
  out.ignored_relators =
      for_each_triangle(p, [&](int, int u, int v) { out.graph.add_edge(u, v); });
  return out;
}

LinkParts split_link_parts(const Presentation& p) {
  LinkParts out;
  for (auto& part : out.parts) {
    part = Multigraph(2 * p.generator_count, symbol_labels(p.generator_count));
  }
  out.ignored_relators = for_each_triangle(
      p, [&](int i, int u, int v) { out.parts[static_cast<std::size_t>(i)].add_edge(u, v); });
  return out;
}

CollapsedGraph collapse_duplicates(const Multigraph& g) {
  CollapsedGraph out{Multigraph(g.vertex_count(), g.labels()),
                     Multigraph(g.vertex_count(), g.labels())};
  const auto edges = g.sorted_edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i > 0 && edges[i] == edges[i - 1]) {
      out.removed.add_edge(edges[i].u, edges[i].v);
    } else {
      out.simple.add_edge(edges[i].u, edges[i].v);
    }
  }
  return out;
}

}  // namespace kazhdan
