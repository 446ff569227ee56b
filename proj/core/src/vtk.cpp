#include "ecut/vtk.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "ecut/io.hpp"

namespace ecut {

namespace {

void append_number(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  out += buf;
}

void append_field(std::string& out, const std::string& name,
                  const std::vector<double>& values, std::size_t expected) {
  if (values.size() != expected)
    throw std::invalid_argument("vtk field '" + name + "' has " +
                                std::to_string(values.size()) +
                                " values, expected " +
                                std::to_string(expected));
  out += "SCALARS " + name + " double 1\nLOOKUP_TABLE default\n";
  for (double v : values) {
    append_number(out, v);
    out += '\n';
  }
}

}  // namespace

void write_vtk(const std::string& path, const BackgroundMesh& mesh,
               const std::vector<NamedPointData>& point_data,
               const std::vector<NamedCellData>& cell_data) {
  std::string out;
  out.reserve(64 * mesh.vertices.size());
  out += "# vtk DataFile Version 3.0\nsnapshot\nASCII\n";
  out += "DATASET UNSTRUCTURED_GRID\n";

  out += "POINTS " + std::to_string(mesh.vertices.size()) + " double\n";
  for (const Vec2& p : mesh.vertices) {
    append_number(out, p.x);
    out += ' ';
    append_number(out, p.y);
    out += " 0\n";
  }

  const std::size_t ne = mesh.elements.size();
  out += "CELLS " + std::to_string(ne) + ' ' + std::to_string(4 * ne) + '\n';
  for (const auto& el : mesh.elements)
    out += "3 " + std::to_string(el[0]) + ' ' + std::to_string(el[1]) + ' ' +
           std::to_string(el[2]) + '\n';
  out += "CELL_TYPES " + std::to_string(ne) + '\n';
  for (std::size_t i = 0; i < ne; ++i) out += "5\n";

  if (!point_data.empty()) {
    out += "POINT_DATA " + std::to_string(mesh.vertices.size()) + '\n';
    for (const auto& [name, values] : point_data)
      append_field(out, name, values, mesh.vertices.size());
  }
  if (!cell_data.empty()) {
    out += "CELL_DATA " + std::to_string(ne) + '\n';
    for (const auto& [name, values] : cell_data)
      append_field(out, name, values, ne);
  }
  atomic_write(path, out);
}

}  // namespace ecut
