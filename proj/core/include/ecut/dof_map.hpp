#pragma once

#include <vector>

namespace ecut {

// Numbering of the vertices carrying unknowns at one step. Local indices
// follow ascending vertex ids, so equal dof sets give equal numberings.
struct DofMap {
  std::vector<int> to_global;  // local -> vertex id
  std::vector<int> to_local;   // vertex id -> local index or -1

  int size() const { return static_cast<int>(to_global.size()); }

  static DofMap from_vertices(const std::vector<int>& vertex_ids,
                              int vertex_count) {
    DofMap m;
    m.to_global = vertex_ids;
    m.to_local.assign(vertex_count, -1);
    for (int l = 0; l < static_cast<int>(vertex_ids.size()); ++l)
      m.to_local[vertex_ids[l]] = l;
    return m;
  }
};

}  // namespace ecut
