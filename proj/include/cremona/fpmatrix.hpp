#pragma once

#include <cstdint>
#include <vector>

#include "cremona/ffpoly.hpp"

namespace cremona {

// Dense matrix over F_p with row reduction utilities. Entries are canonical
// residues stored in uint16 (primes used here are small).
class FpMatrix {
 public:
  FpMatrix(PrimeField field, size_t rows, size_t cols);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const PrimeField& field() const { return field_; }

  uint16_t& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  uint16_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
  void set(size_t r, size_t c, int64_t v) { at(r, c) = static_cast<uint16_t>(field_.reduce(v)); }

  // In-place reduced row echelon form; returns pivot column per pivot row.
  std::vector<size_t> rref();
  size_t rank() const;

  // Basis of the right kernel {x : A x = 0}, deterministic (RREF-based),
  // one vector per free column in ascending column order.
  std::vector<std::vector<uint16_t>> kernel_basis() const;

  FpMatrix transposed() const;

 private:
  PrimeField field_;
  size_t rows_, cols_;
  std::vector<uint16_t> a_;
};

// Incremental echelon container for rank/span computations over F_p: rows are
// reduced against current pivots and kept when independent.
class EchelonSpan {
 public:
  EchelonSpan(PrimeField field, size_t width);

  // Returns true when the row extended the span. The row is consumed.
  bool add(std::vector<uint16_t> row);
  bool contains(std::vector<uint16_t> row) const;

  size_t dim() const { return rows_.size(); }
  size_t width() const { return width_; }

  // Reduced row echelon basis of the span (deterministic canonical form).
  std::vector<std::vector<uint16_t>> rref_basis() const;

 private:
  PrimeField field_;
  size_t width_;
  std::vector<std::vector<uint16_t>> rows_;  // echelon rows, monic pivots
  std::vector<size_t> pivots_;               // pivot column of each row

  void reduce(std::vector<uint16_t>& row) const;
};

// Intersection of two row spans given by their bases (each a list of
// width-sized vectors). Returns an RREF basis of the intersection.
std::vector<std::vector<uint16_t>> intersect_spans(
    const PrimeField& field, size_t width,
    const std::vector<std::vector<uint16_t>>& a,
    const std::vector<std::vector<uint16_t>>& b);

}  // namespace cremona
