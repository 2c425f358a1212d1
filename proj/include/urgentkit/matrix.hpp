// Copyright 2025 urgentkit authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstddef>
#include <vector>

namespace urgentkit {

// Dense row-major matrix of doubles. Feature streams are rows = frames.
struct RowMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> data;

  RowMatrix() = default;
  RowMatrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(size_t r, size_t c) { return data[r * cols + c]; }
  double at(size_t r, size_t c) const { return data[r * cols + c]; }
  double* row(size_t r) { return data.data() + r * cols; }
  const double* row(size_t r) const { return data.data() + r * cols; }
  bool empty() const { return rows == 0 || cols == 0; }
};

}  // namespace urgentkit
