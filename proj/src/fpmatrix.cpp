#include "cremona/fpmatrix.hpp"

#include <algorithm>

namespace cremona {

FpMatrix::FpMatrix(PrimeField field, size_t rows, size_t cols)
    : field_(field), rows_(rows), cols_(cols), a_(rows * cols, 0) {
  if (field.p() >= (1u << 15)) throw Error("FpMatrix: prime too large for uint16 storage");
}

std::vector<size_t> FpMatrix::rref() {
  std::vector<size_t> pivots;
  const uint32_t p = field_.p();
  size_t r = 0;
  for (size_t c = 0; c < cols_ && r < rows_; ++c) {
    size_t sel = r;
    while (sel < rows_ && at(sel, c) == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != r)
      for (size_t j = 0; j < cols_; ++j) std::swap(at(r, j), at(sel, j));
    uint32_t inv = field_.inv(at(r, c));
    for (size_t j = c; j < cols_; ++j)
      at(r, j) = static_cast<uint16_t>(field_.mul(at(r, j), inv));
    for (size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      uint32_t f = at(i, c);
      if (!f) continue;
      uint16_t* row = &a_[i * cols_];
      const uint16_t* piv = &a_[r * cols_];
      for (size_t j = c; j < cols_; ++j) {
        uint32_t v = row[j] + f * (p - piv[j]) % p;
        row[j] = static_cast<uint16_t>(v >= p ? v - p : v);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

size_t FpMatrix::rank() const {
  FpMatrix copy = *this;
  return copy.rref().size();
}

std::vector<std::vector<uint16_t>> FpMatrix::kernel_basis() const {
  FpMatrix m = *this;
  std::vector<size_t> pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (size_t c : pivots) is_pivot[c] = true;

  std::vector<std::vector<uint16_t>> basis;
  for (size_t free_col = 0; free_col < cols_; ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<uint16_t> v(cols_, 0);
    v[free_col] = 1;
    // pivot rows give: x_pivot = -sum(free coefficients)
    for (size_t r = 0; r < pivots.size(); ++r) {
      uint32_t c = m.at(r, free_col);
      if (c) v[pivots[r]] = static_cast<uint16_t>(field_.neg(c));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix t(field_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

// ---------------------------------------------------------------------------

EchelonSpan::EchelonSpan(PrimeField field, size_t width) : field_(field), width_(width) {
  if (field.p() >= (1u << 15)) throw Error("EchelonSpan: prime too large");
}

void EchelonSpan::reduce(std::vector<uint16_t>& row) const {
  const uint32_t p = field_.p();
  for (size_t k = 0; k < rows_.size(); ++k) {
    uint32_t c = row[pivots_[k]];
    if (!c) continue;
    const uint16_t* piv = rows_[k].data();
    uint16_t* r = row.data();
    for (size_t j = pivots_[k]; j < width_; ++j) {
      uint32_t v = r[j] + c * (p - piv[j]) % p;
      r[j] = static_cast<uint16_t>(v >= p ? v - p : v);
    }
  }
}

bool EchelonSpan::add(std::vector<uint16_t> row) {
  if (row.size() != width_) throw Error("EchelonSpan: row width mismatch");
  reduce(row);
  size_t piv = width_;
  for (size_t j = 0; j < width_; ++j)
    if (row[j]) {
      piv = j;
      break;
    }
  if (piv == width_) return false;
  uint32_t inv = field_.inv(row[piv]);
  for (size_t j = piv; j < width_; ++j)
    row[j] = static_cast<uint16_t>(field_.mul(row[j], inv));
  // keep rows sorted by pivot so reduce() sees pivots in ascending order
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(row));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

bool EchelonSpan::contains(std::vector<uint16_t> row) const {
  if (row.size() != width_) throw Error("EchelonSpan: row width mismatch");
  reduce(row);
  return std::all_of(row.begin(), row.end(), [](uint16_t v) { return v == 0; });
}

std::vector<std::vector<uint16_t>> EchelonSpan::rref_basis() const {
  // back-substitute to clear entries above pivots
  std::vector<std::vector<uint16_t>> rows = rows_;
  const uint32_t p = field_.p();
  for (size_t k = rows.size(); k-- > 0;) {
    size_t piv = pivots_[k];
    for (size_t i = 0; i < k; ++i) {
      uint32_t c = rows[i][piv];
      if (!c) continue;
      for (size_t j = piv; j < width_; ++j) {
        uint32_t v = rows[i][j] + c * (p - rows[k][j]) % p;
        rows[i][j] = static_cast<uint16_t>(v >= p ? v - p : v);
      }
    }
  }
  return rows;
}

std::vector<std::vector<uint16_t>> intersect_spans(
    const PrimeField& field, size_t width,
    const std::vector<std::vector<uint16_t>>& a,
    const std::vector<std::vector<uint16_t>>& b) {
  // Solve sum_i s_i a_i = sum_j t_j b_j: kernel of the stacked transpose.
  const size_t na = a.size(), nb = b.size();
  FpMatrix m(field, width, na + nb);
  for (size_t i = 0; i < na; ++i)
    for (size_t r = 0; r < width; ++r) m.at(r, i) = a[i][r];
  for (size_t j = 0; j < nb; ++j)
    for (size_t r = 0; r < width; ++r)
      m.at(r, na + j) = static_cast<uint16_t>(field.neg(b[j][r]));
  EchelonSpan span(field, width);
  for (const auto& k : m.kernel_basis()) {
    std::vector<uint16_t> v(width, 0);
    for (size_t i = 0; i < na; ++i) {
      if (!k[i]) continue;
      for (size_t r = 0; r < width; ++r)
        v[r] = static_cast<uint16_t>(field.add(v[r], field.mul(k[i], a[i][r])));
    }
    span.add(std::move(v));
  }
  return span.rref_basis();
}

}  // namespace cremona
