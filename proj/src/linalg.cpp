#include "apolar/linalg.hpp"

#include "apolar/error.hpp"

namespace apolar {

void RationalMatrix::append_row(const std::vector<Rational>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw DimensionMismatch("row length does not match matrix width");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

std::vector<Rational> RationalMatrix::row(std::size_t r) const {
  return std::vector<Rational>(data_.begin() + static_cast<long>(r * cols_),
                               data_.begin() + static_cast<long>((r + 1) * cols_));
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Echelon row_reduce(RationalMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> support;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows; ++c) {
    std::size_t p = next;
    while (p < rows && sgn(m(p, c)) == 0) ++p;
    if (p == rows) continue;
    if (p != next)
      for (std::size_t k = 0; k < cols; ++k) swap(m(p, k), m(next, k));

    const Rational inv = 1 / m(next, c);
    support.clear();
    for (std::size_t k = c; k < cols; ++k) {
      if (sgn(m(next, k)) != 0) {
        m(next, k) *= inv;
        support.push_back(k);
      }
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == next || sgn(m(r, c)) == 0) continue;
      const Rational f = m(r, c);
      for (std::size_t k : support) m(r, k) -= f * m(next, k);
    }
    pivots.push_back(c);
    ++next;
  }
  RationalMatrix reduced(pivots.size(), cols);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t k = 0; k < cols; ++k) reduced(r, k) = m(r, k);
  return Echelon{std::move(reduced), std::move(pivots)};
}

std::size_t rank(const RationalMatrix& m) { return row_reduce(m).rank(); }

RationalMatrix null_space(const RationalMatrix& m) {
  const Echelon e = row_reduce(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  RationalMatrix basis(0, cols);
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(cols);
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.append_row(v);
  }
  return basis;
}

RationalMatrix left_null_space(const RationalMatrix& m) {
  if (m.cols() == 0) {
    // Every vector is in the left kernel of a map into the zero space.
    RationalMatrix id(m.rows(), m.rows());
    for (std::size_t k = 0; k < m.rows(); ++k) id(k, k) = 1;
    return id;
  }
  return null_space(m.transposed());
}

RationalMatrix stack(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw DimensionMismatch("cannot stack matrices of different widths");
  RationalMatrix out(0, a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) out.append_row(a.row(r));
  for (std::size_t r = 0; r < b.rows(); ++r) out.append_row(b.row(r));
  return out;
}

}  // namespace apolar
