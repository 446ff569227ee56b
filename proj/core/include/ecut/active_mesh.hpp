#pragma once

#include <cstdint>
#include <vector>

#include "ecut/levelset.hpp"
#include "ecut/mesh.hpp"

namespace ecut {

// How the dilated sets are determined.
//  Proxy:    nodal level-set values stand in for distances. Valid whenever
//            |d/dt phi| <= w_inf along trajectories, which holds for all
//            built-in cases.
//  Geodesic: Dijkstra over facet neighbors accumulating element diameters,
//            for level sets with no distance-like structure.
enum class DilationMode { Proxy, Geodesic };

struct ActiveMeshData {
  int step_index = 0;
  double delta_h = 0.0;

  std::vector<int> active_elements;    // sorted
  std::vector<int> strip_elements;     // sorted, subset of active
  std::vector<int> stabilized_facets;  // sorted interior facet ids
  std::vector<int> active_dofs;        // sorted vertex ids

  std::vector<std::uint8_t> is_active;  // per element
  std::vector<std::uint8_t> is_strip;   // per element
};

ActiveMeshData build_active_mesh(const LevelSetFrame& frame,
                                 const BackgroundMesh& mesh, double delta_h,
                                 DilationMode mode = DilationMode::Proxy,
                                 int step_index = 0);

// Every element meeting the previous physical domain (class Neg or Cut in
// `old_frame`) must belong to the new active set, otherwise the discrete
// mass of the old step is not representable on the new one. Throws with the
// offending element on violation.
void check_containment(const LevelSetFrame& old_frame,
                       const ActiveMeshData& fresh, const BackgroundMesh& mesh,
                       int step);

// True when every strip element can reach an interior uncut element through
// stabilized facets.
bool strip_reachable(const LevelSetFrame& frame, const ActiveMeshData& act,
                     const BackgroundMesh& mesh);

}  // namespace ecut
