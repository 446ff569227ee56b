#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ecut/mesh.hpp"

namespace ecut {

using NamedPointData = std::pair<std::string, std::vector<double>>;
using NamedCellData = std::pair<std::string, std::vector<double>>;

// Legacy ASCII unstructured-grid snapshot of the whole background mesh.
// Written atomically.
void write_vtk(const std::string& path, const BackgroundMesh& mesh,
               const std::vector<NamedPointData>& point_data = {},
               const std::vector<NamedCellData>& cell_data = {});

}  // namespace ecut
