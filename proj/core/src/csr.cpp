#include "ecut/csr.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "ecut/io.hpp"

namespace ecut {

double CsrMatrix::at(int r, int c) const {
  for (int k = row_offsets[r]; k < row_offsets[r + 1]; ++k)
    if (col_indices[k] == c) return values[k];
  return 0.0;
}

std::vector<double> CsrMatrix::apply(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != cols)
    throw std::invalid_argument("CsrMatrix::apply: size mismatch");
  std::vector<double> y(rows, 0.0);
  for (int r = 0; r < rows; ++r) {
    double acc = 0.0;
    for (int k = row_offsets[r]; k < row_offsets[r + 1]; ++k)
      acc += values[k] * x[col_indices[k]];
    y[r] = acc;
  }
  return y;
}

std::vector<double> CsrMatrix::apply_transpose(
    const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != rows)
    throw std::invalid_argument("CsrMatrix::apply_transpose: size mismatch");
  std::vector<double> y(cols, 0.0);
  for (int r = 0; r < rows; ++r)
    for (int k = row_offsets[r]; k < row_offsets[r + 1]; ++k)
      y[col_indices[k]] += values[k] * x[r];
  return y;
}

std::vector<double> CsrMatrix::column_sums() const {
  std::vector<double> s(cols, 0.0);
  for (int r = 0; r < rows; ++r)
    for (int k = row_offsets[r]; k < row_offsets[r + 1]; ++k)
      s[col_indices[k]] += values[k];
  return s;
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

CsrMatrix TripletBuffer::compress(int rows, int cols) const {
  CsrMatrix m;
  m.rows = rows;
  m.cols = cols;
  m.row_offsets.assign(rows + 1, 0);

  for (const Entry& e : entries) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
      throw std::out_of_range("TripletBuffer::compress: index out of range");
    ++m.row_offsets[e.row + 1];
  }
  for (int r = 0; r < rows; ++r) m.row_offsets[r + 1] += m.row_offsets[r];

  // Bucket by row keeping insertion order, then order columns stably so
  // duplicate contributions are summed in the order they were added.
  std::vector<int> order(entries.size());
  {
    std::vector<int> cursor(m.row_offsets.begin(), m.row_offsets.end() - 1);
    for (std::size_t i = 0; i < entries.size(); ++i)
      order[cursor[entries[i].row]++] = static_cast<int>(i);
  }
  std::vector<int> cols_out;
  std::vector<double> vals_out;
  cols_out.reserve(entries.size());
  vals_out.reserve(entries.size());
  std::vector<int> row_nnz(rows, 0);
  std::vector<int> scratch;
  for (int r = 0; r < rows; ++r) {
    const int begin = m.row_offsets[r], end = m.row_offsets[r + 1];
    scratch.assign(order.begin() + begin, order.begin() + end);
    std::stable_sort(scratch.begin(), scratch.end(), [&](int a, int b) {
      return entries[a].col < entries[b].col;
    });
    for (std::size_t i = 0; i < scratch.size();) {
      const int c = entries[scratch[i]].col;
      double acc = 0.0;
      while (i < scratch.size() && entries[scratch[i]].col == c)
        acc += entries[scratch[i++]].value;
      cols_out.push_back(c);
      vals_out.push_back(acc);
    }
    row_nnz[r] = static_cast<int>(cols_out.size());
  }
  for (int r = 0; r < rows; ++r) m.row_offsets[r + 1] = row_nnz[r];
  m.col_indices = std::move(cols_out);
  m.values = std::move(vals_out);
  return m;
}

CsrMatrix csr_linear_combination(
    const std::vector<std::pair<double, const CsrMatrix*>>& terms) {
  if (terms.empty())
    throw std::invalid_argument("csr_linear_combination: no terms");
  const int rows = terms[0].second->rows, cols = terms[0].second->cols;
  for (const auto& [c, m] : terms)
    if (m->rows != rows || m->cols != cols)
      throw std::invalid_argument("csr_linear_combination: shape mismatch");

  CsrMatrix out;
  out.rows = rows;
  out.cols = cols;
  out.row_offsets.assign(rows + 1, 0);
  std::vector<double> acc(cols, 0.0);
  std::vector<char> seen(cols, 0);
  std::vector<int> touched;
  for (int r = 0; r < rows; ++r) {
    touched.clear();
    for (const auto& [coeff, m] : terms) {
      for (int k = m->row_offsets[r]; k < m->row_offsets[r + 1]; ++k) {
        const int c = m->col_indices[k];
        if (!seen[c]) {
          seen[c] = 1;
          touched.push_back(c);
        }
        acc[c] += coeff * m->values[k];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (int c : touched) {
      out.col_indices.push_back(c);
      out.values.push_back(acc[c]);
      acc[c] = 0.0;
      seen[c] = 0;
    }
    out.row_offsets[r + 1] = static_cast<int>(out.col_indices.size());
  }
  return out;
}

void write_matrix_market(const std::string& path, const CsrMatrix& m) {
  std::string out = "%%MatrixMarket matrix coordinate real general\n";
  char line[128];
  std::snprintf(line, sizeof line, "%d %d %d\n", m.rows, m.cols, m.nnz());
  out += line;
  for (int r = 0; r < m.rows; ++r)
    for (int k = m.row_offsets[r]; k < m.row_offsets[r + 1]; ++k) {
      std::snprintf(line, sizeof line, "%d %d %.17g\n", r + 1,
                    m.col_indices[k] + 1, m.values[k]);
      out += line;
    }
  atomic_write(path, out);
}

}  // namespace ecut
