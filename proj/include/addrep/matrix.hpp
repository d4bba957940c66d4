#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "addrep/errors.hpp"
#include "addrep/numeric.hpp"

namespace addrep {

/// Dense matrix over exact rationals. No tolerances exist anywhere in this
/// module: equality is exact equality.
struct RationalMatrix {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<Rational> a;  // row-major

  RationalMatrix() = default;
  RationalMatrix(std::uint32_t r, std::uint32_t c) : rows(r), cols(c), a(std::size_t(r) * c) {}

  Rational& at(std::uint32_t r, std::uint32_t c) { return a[std::size_t(r) * cols + c]; }
  const Rational& at(std::uint32_t r, std::uint32_t c) const { return a[std::size_t(r) * cols + c]; }

  static RationalMatrix identity(std::uint32_t n) {
    RationalMatrix m(n, n);
    for (std::uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  RationalMatrix operator*(const RationalMatrix& o) const {
    if (cols != o.rows) throw PreconditionError("matrix dimension mismatch");
    RationalMatrix r(rows, o.cols);
    for (std::uint32_t i = 0; i < rows; ++i)
      for (std::uint32_t k = 0; k < cols; ++k) {
        const Rational& x = at(i, k);
        if (x == 0) continue;
        for (std::uint32_t j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
      }
    return r;
  }

  bool operator==(const RationalMatrix& o) const = default;
};

/// Row vector times matrix.
inline std::vector<Rational> vec_mat(const std::vector<Rational>& v, const RationalMatrix& m) {
  if (v.size() != m.rows) throw PreconditionError("vector/matrix dimension mismatch");
  std::vector<Rational> r(m.cols);
  for (std::uint32_t i = 0; i < m.rows; ++i) {
    if (v[i] == 0) continue;
    for (std::uint32_t j = 0; j < m.cols; ++j) r[j] += v[i] * m.at(i, j);
  }
  return r;
}

/// Matrix times column vector.
inline std::vector<Rational> mat_vec(const RationalMatrix& m, const std::vector<Rational>& v) {
  if (v.size() != m.cols) throw PreconditionError("matrix/vector dimension mismatch");
  std::vector<Rational> r(m.rows);
  for (std::uint32_t i = 0; i < m.rows; ++i)
    for (std::uint32_t j = 0; j < m.cols; ++j)
      if (!(m.at(i, j) == 0)) r[i] += m.at(i, j) * v[j];
  return r;
}

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw PreconditionError("dot dimension mismatch");
  Rational r = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == 0 || b[i] == 0)) r += a[i] * b[i];
  return r;
}

inline bool is_zero(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (!(x == 0)) return false;
  return true;
}

/// Incremental basis of a subspace of Q^dim with coordinate recovery.
/// Basis vectors are kept in insertion (discovery) order; internally a reduced
/// echelon copy plus the expressing combinations are maintained, with exact
/// pivoting on the first nonzero column.
class SpanBasis {
public:
  explicit SpanBasis(std::uint32_t dim) : dim_(dim) {}

  std::uint32_t size() const { return static_cast<std::uint32_t>(basis_.size()); }
  const std::vector<Rational>& basis_vector(std::uint32_t i) const { return basis_[i]; }

  /// Adds u as a new basis vector when independent; returns whether it was added.
  bool insert(const std::vector<Rational>& u) {
    std::vector<Rational> res;
    std::vector<Rational> mu;
    reduce(u, res, mu);
    if (is_zero(res)) return false;
    std::size_t pc = 0;
    while (res[pc] == 0) ++pc;
    // combo for the new echelon row: u - sum mu_i * echelon_i, in basis terms.
    std::vector<Rational> combo(basis_.size() + 1);
    combo.back() = 1;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (mu[i] == 0) continue;
      for (std::size_t j = 0; j < combo_[i].size(); ++j) combo[j] -= mu[i] * combo_[i][j];
    }
    basis_.push_back(u);
    echelon_.push_back(std::move(res));
    pivot_.push_back(static_cast<std::uint32_t>(pc));
    combo_.push_back(std::move(combo));
    return true;
  }

  /// Coordinates of u with respect to the basis vectors, or nothing when u is
  /// outside the span.
  std::optional<std::vector<Rational>> coordinates(const std::vector<Rational>& u) const {
    std::vector<Rational> res;
    std::vector<Rational> mu;
    reduce(u, res, mu);
    if (!is_zero(res)) return std::nullopt;
    std::vector<Rational> coords(basis_.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (mu[i] == 0) continue;
      for (std::size_t j = 0; j < combo_[i].size(); ++j) coords[j] += mu[i] * combo_[i][j];
    }
    return coords;
  }

private:
  void reduce(const std::vector<Rational>& u, std::vector<Rational>& res,
              std::vector<Rational>& mu) const {
    if (u.size() != dim_) throw PreconditionError("basis dimension mismatch");
    res = u;
    mu.assign(echelon_.size(), Rational(0));
    for (std::size_t i = 0; i < echelon_.size(); ++i) {
      const Rational& p = res[pivot_[i]];
      if (p == 0) continue;
      Rational lambda = p / echelon_[i][pivot_[i]];
      for (std::size_t j = pivot_[i]; j < dim_; ++j) {
        if (echelon_[i][j] == 0) continue;
        res[j] -= lambda * echelon_[i][j];
      }
      mu[i] = lambda;
    }
  }

  std::uint32_t dim_;
  std::vector<std::vector<Rational>> basis_;
  std::vector<std::vector<Rational>> echelon_;
  std::vector<std::uint32_t> pivot_;
  std::vector<std::vector<Rational>> combo_;  // echelon_[i] = sum combo_[i][j] * basis_[j]
};

}  // namespace addrep
