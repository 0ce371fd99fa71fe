#pragma once

// Dense linear algebra over a prime field F_p: matrices, reduced row echelon
// form, kernels and the subspace calculus (sum, intersection, quotients).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "brickchain/errors.hpp"

namespace brickchain {

using Residue = std::uint32_t;
using Vector = std::vector<Residue>;

class Field {
 public:
  explicit Field(std::uint32_t p = 2) : p_(p) {
    if (p < 2) throw MalformedInput("field modulus must be at least 2");
    for (std::uint32_t d = 2; d * d <= p; ++d)
      if (p % d == 0) throw MalformedInput("field modulus " + std::to_string(p) + " is not prime");
    if (p > 65521) throw MalformedInput("field modulus too large");
  }

  std::uint32_t prime() const { return p_; }

  Residue reduce(std::int64_t x) const {
    const auto p = static_cast<std::int64_t>(p_);
    x %= p;
    return static_cast<Residue>(x < 0 ? x + p : x);
  }
  Residue add(Residue a, Residue b) const { return (a + b) % p_; }
  Residue sub(Residue a, Residue b) const { return (a + p_ - b) % p_; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue inv(Residue a) const {
    if (a == 0) throw Error("inverse of zero");
    // Fermat: a^(p-2)
    Residue result = 1, base = a;
    for (std::uint32_t e = p_ - 2; e; e >>= 1) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
    }
    return result;
  }

  friend bool operator==(const Field&, const Field&) = default;

 private:
  std::uint32_t p_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(Field field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds a matrix from rows of arbitrary integers, reducing mod p.
  static Matrix from_rows(Field field, std::size_t rows, std::size_t cols,
                          const std::vector<std::vector<std::int64_t>>& entries) {
    if (entries.size() != rows) throw MalformedInput("row count mismatch");
    Matrix m(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      if (entries[i].size() != cols) throw MalformedInput("column count mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = field.reduce(entries[i][j]);
    }
    return m;
  }

  static Matrix from_row_vectors(Field field, std::size_t cols, const std::vector<Vector>& rows) {
    Matrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    return m;
  }

  static Matrix from_column_vectors(Field field, std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(field, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Residue>& data() const { return data_; }

  Residue& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Residue operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Residue r) { return r == 0; });
  }
  bool is_square() const { return rows_ == cols_; }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& other) {
    check_same_shape(other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_.add(data_[k], other.data_[k]);
    return *this;
  }
  Matrix& operator-=(const Matrix& other) {
    check_same_shape(other);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_.sub(data_[k], other.data_[k]);
    return *this;
  }
  Matrix scaled(Residue c) const {
    Matrix m = *this;
    for (auto& x : m.data_) x = field_.mul(x, c);
    return m;
  }
  /// this += c * other
  void add_scaled(const Matrix& other, Residue c) {
    check_same_shape(other);
    if (c == 0) return;
    for (std::size_t k = 0; k < data_.size(); ++k)
      data_[k] = field_.add(data_[k], field_.mul(c, other.data_[k]));
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
    const std::uint64_t p = a.field_.prime();
    Matrix c(a.field_, a.rows_, b.cols_);
    std::vector<std::uint64_t> acc(b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const std::uint64_t aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) acc[j] = (acc[j] + aik * b(k, j)) % p;
      }
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) = static_cast<Residue>(acc[j]);
    }
    return c;
  }

  Vector apply(const Vector& v) const {
    if (v.size() != cols_) throw Error("matrix-vector shape mismatch");
    Vector out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc += static_cast<std::uint64_t>((*this)(i, j)) * v[j];
      out[i] = static_cast<Residue>(acc % field_.prime());
    }
    return out;
  }

  /// Rows stacked: [top; bottom]
  static Matrix vstack(const Matrix& top, const Matrix& bottom) {
    if (top.cols_ != bottom.cols_) throw Error("vstack column mismatch");
    Matrix m(top.field_, top.rows_ + bottom.rows_, top.cols_);
    std::copy(top.data_.begin(), top.data_.end(), m.data_.begin());
    std::copy(bottom.data_.begin(), bottom.data_.end(),
              m.data_.begin() + static_cast<std::ptrdiff_t>(top.data_.size()));
    return m;
  }
  static Matrix hstack(const Matrix& left, const Matrix& right) {
    return vstack(left.transpose(), right.transpose()).transpose();
  }
  static Matrix block_diagonal(const Matrix& a, const Matrix& b) {
    Matrix m(a.field_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    m.set_block(0, 0, a);
    m.set_block(a.rows_, a.cols_, b);
    return m;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
  Matrix block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
    Matrix m(field_, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const Matrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw Error("matrix shape mismatch");
  }

  Field field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
};

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination. Nonzero rows come first; pivots are the pivot
/// column of each nonzero row, increasing.
inline RrefResult rref_with_pivots(Matrix m) {
  const Field& f = m.field();
  RrefResult out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < m.rows() && m(pivot, c) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(r, j));
    const Residue s = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), s);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Residue factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.reduced = std::move(m);
  return out;
}

inline std::pair<Matrix, std::size_t> rref(const Matrix& m) {
  auto res = rref_with_pivots(m);
  return {std::move(res.reduced), res.rank};
}

inline std::size_t rank(const Matrix& m) { return rref_with_pivots(m).rank; }

inline bool is_invertible(const Matrix& m) { return m.is_square() && rank(m) == m.rows(); }

inline Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw Error("inverse of non-square matrix");
  const std::size_t n = m.rows();
  auto res = rref_with_pivots(Matrix::hstack(m, Matrix::identity(m.field(), n)));
  if (res.rank < n || (n > 0 && res.pivots[n - 1] != n - 1)) throw Error("matrix is singular");
  return res.reduced.block(0, n, n, n);
}

/// A linear subspace of F_p^n, stored as the reduced row echelon basis of its
/// row space. Equal subspaces have identical encodings.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(Field field, std::size_t ambient) { return Subspace(Matrix(field, 0, ambient)); }
  static Subspace full(Field field, std::size_t ambient) {
    return Subspace(Matrix::identity(field, ambient));
  }
  /// Row space of the given matrix.
  static Subspace row_space(const Matrix& m) {
    auto res = rref_with_pivots(m);
    return Subspace(res.reduced.block(0, 0, res.rank, m.cols()), std::move(res.pivots));
  }
  static Subspace span(Field field, std::size_t ambient, const std::vector<Vector>& vectors) {
    return row_space(Matrix::from_row_vectors(field, ambient, vectors));
  }
  /// Column space of m, a subspace of F_p^{rows(m)}.
  static Subspace image(const Matrix& m) { return row_space(m.transpose()); }

  const Field& field() const { return basis_.field(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  Vector vector(std::size_t i) const { return basis_.row(i); }
  std::vector<Vector> vectors() const {
    std::vector<Vector> out;
    for (std::size_t i = 0; i < dim(); ++i) out.push_back(basis_.row(i));
    return out;
  }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_dim(); }

  /// Coordinates of v in the echelon basis; v must lie in the subspace.
  Vector coordinates(const Vector& v) const {
    Vector c(dim());
    for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  bool contains(const Vector& v) const {
    const Field& f = field();
    Vector residual = v;
    for (std::size_t i = 0; i < dim(); ++i) {
      const Residue c = residual[pivots_[i]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < ambient_dim(); ++j)
        residual[j] = f.sub(residual[j], f.mul(c, basis_(i, j)));
    }
    return std::all_of(residual.begin(), residual.end(), [](Residue r) { return r == 0; });
  }
  bool contains(const Subspace& other) const {
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.vector(i))) return false;
    return true;
  }

  /// Standard unit vectors at the non-pivot columns, as the columns of an
  /// ambient x (ambient - dim) matrix. Spans a complement.
  Matrix complement_section() const {
    Matrix s(field(), ambient_dim(), ambient_dim() - dim());
    std::size_t k = 0;
    for (std::size_t c : non_pivots()) s(c, k++) = 1;
    return s;
  }

  std::vector<std::size_t> non_pivots() const {
    std::vector<std::size_t> out;
    std::size_t next = 0;
    for (std::size_t c = 0; c < ambient_dim(); ++c) {
      if (next < pivots_.size() && pivots_[next] == c) {
        ++next;
        continue;
      }
      out.push_back(c);
    }
    return out;
  }

  /// Surjection F_p^n -> F_p^{n - dim} whose kernel is exactly this subspace:
  /// subtract the echelon combination, read off the non-pivot coordinates.
  Matrix quotient_projection() const {
    const Field& f = field();
    const auto free = non_pivots();
    Matrix proj(f, free.size(), ambient_dim());
    for (std::size_t r = 0; r < free.size(); ++r) {
      const std::size_t j = free[r];
      proj(r, j) = 1;
      for (std::size_t i = 0; i < dim(); ++i) proj(r, pivots_[i]) = f.neg(basis_(i, j));
    }
    return proj;
  }

  /// {x : <x, w> = 0 for all w in this subspace} under the standard pairing.
  Subspace annihilator() const;

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

 private:
  explicit Subspace(Matrix basis) : basis_(std::move(basis)) {
    for (std::size_t i = 0; i < basis_.rows(); ++i)
      for (std::size_t j = 0; j < basis_.cols(); ++j)
        if (basis_(i, j) != 0) {
          pivots_.push_back(j);
          break;
        }
  }
  Subspace(Matrix basis, std::vector<std::size_t> pivots)
      : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// {v : m v = 0}
inline Subspace solve_kernel(const Matrix& m) {
  const Field& f = m.field();
  auto res = rref_with_pivots(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : res.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < res.rank; ++i) v[res.pivots[i]] = f.neg(res.reduced(i, free));
    basis.push_back(std::move(v));
  }
  return Subspace::span(f, m.cols(), basis);
}

inline Subspace Subspace::annihilator() const { return solve_kernel(basis_); }

enum class SubspaceOp { sum, intersect };

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error("subspace ambient mismatch");
  return Subspace::row_space(Matrix::vstack(a.basis(), b.basis()));
}

/// a ∩ b = ann(ann(a) + ann(b)); the pairing is nondegenerate on F_p^n.
inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw Error("subspace ambient mismatch");
  return subspace_sum(a.annihilator(), b.annihilator()).annihilator();
}

inline Subspace subspace_calc(SubspaceOp op, const Subspace& a, const Subspace& b) {
  return op == SubspaceOp::sum ? subspace_sum(a, b) : subspace_intersect(a, b);
}

/// Image of a subspace under a linear map given as a matrix acting on columns.
inline Subspace map_subspace(const Matrix& m, const Subspace& s) {
  if (s.ambient_dim() != m.cols()) throw Error("map_subspace shape mismatch");
  return Subspace::image(m * s.basis().transpose());
}

/// Preimage {x : m x ∈ s}.
inline Subspace preimage(const Matrix& m, const Subspace& s) {
  if (s.ambient_dim() != m.rows()) throw Error("preimage shape mismatch");
  return solve_kernel(s.quotient_projection() * m);
}

}  // namespace brickchain
