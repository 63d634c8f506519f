#pragma once

// Dense exact-rational matrices with a sparsity-aware Gauss-Jordan
// elimination. Pivots are chosen as the first non-zero entry in column order,
// so results are deterministic for a fixed column basis.

#include <cstddef>
#include <vector>

#include "apolar/ring.hpp"

namespace apolar {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(const std::vector<Rational>& row);
  std::vector<Rational> row(std::size_t r) const;

  RationalMatrix transposed() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct Echelon {
  RationalMatrix reduced;            // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;   // pivot column of each row of `reduced`
  std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination to reduced row echelon form.
Echelon row_reduce(RationalMatrix m);

std::size_t rank(const RationalMatrix& m);

/// Basis (as rows) of { x : M x = 0 }.
RationalMatrix null_space(const RationalMatrix& m);

/// Basis (as rows) of { v : v M = 0 }.
RationalMatrix left_null_space(const RationalMatrix& m);

/// Stacks the rows of a and b (same column count).
RationalMatrix stack(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace apolar
