#pragma once

#include <string>
#include <vector>

namespace ecut {

// Compressed sparse row matrix. Column indices are strictly increasing
// within each row.
struct CsrMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_offsets;  // size rows + 1
  std::vector<int> col_indices;
  std::vector<double> values;

  int nnz() const { return static_cast<int>(values.size()); }
  double at(int r, int c) const;  // 0 for entries outside the pattern

  std::vector<double> apply(const std::vector<double>& x) const;
  std::vector<double> apply_transpose(const std::vector<double>& x) const;
  std::vector<double> column_sums() const;
  double max_abs() const;
};

// Accumulates (row, col, value) contributions in assembly order. compress()
// sums duplicates in insertion order, so repeated runs produce bitwise
// identical matrices.
struct TripletBuffer {
  struct Entry {
    int row, col;
    double value;
  };
  std::vector<Entry> entries;

  void add(int row, int col, double value) {
    entries.push_back({row, col, value});
  }
  void reserve(std::size_t n) { entries.reserve(n); }
  CsrMatrix compress(int rows, int cols) const;
};

// sum_k coeff_k * M_k, all with identical dimensions.
CsrMatrix csr_linear_combination(
    const std::vector<std::pair<double, const CsrMatrix*>>& terms);

void write_matrix_market(const std::string& path, const CsrMatrix& m);

}  // namespace ecut
