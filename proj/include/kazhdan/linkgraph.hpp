#pragma once

#include <array>

#include "kazhdan/graph.hpp"
#include "kazhdan/models.hpp"

namespace kazhdan {

struct LinkGraph {
  Multigraph graph;
  int ignored_relators = 0;  // relators of length != 3
};

struct LinkParts {
  std::array<Multigraph, 3> parts;
  int ignored_relators = 0;
};

// Vertex i-1 is a_i, vertex m+i-1 is a_i^-1. Each length-3 relator xyz adds
// (x, y^-1), (y, z^-1), (z, x^-1). Throws GraphError on a length-3 relator
// that is not cyclically reduced.
LinkGraph build_link_graph(const Presentation& p);
LinkParts split_link_parts(const Presentation& p);

struct CollapsedGraph {
  Multigraph simple;
  Multigraph removed;  // excess multiplicity
};

CollapsedGraph collapse_duplicates(const Multigraph& g);

}  // namespace kazhdan
