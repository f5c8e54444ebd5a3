#pragma once

// Exact linear algebra over Q: reduced row echelon form, kernels and
// subspace comparison for sparse rational matrices.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "pss/rational.hpp"

namespace pss {

using VectorQ = std::vector<Rational>;

class SparseMatQ {
 public:
  using Row = std::map<std::size_t, Rational>;

  SparseMatQ() = default;
  SparseMatQ(std::size_t n_rows, std::size_t n_cols) : n_cols_(n_cols), rows_(n_rows) {}

  static SparseMatQ identity(std::size_t n) {
    SparseMatQ m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace(i, Rational(1));
    return m;
  }

  static SparseMatQ from_dense(const std::vector<VectorQ>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    SparseMatQ m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("from_dense: ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  // Matrix whose columns are the given vectors; `n_rows` is needed when the list is empty.
  static SparseMatQ from_columns(std::span<const VectorQ> cols, std::size_t n_rows) {
    SparseMatQ m(n_rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != n_rows) throw std::invalid_argument("from_columns: dimension mismatch");
      for (std::size_t i = 0; i < n_rows; ++i) m.set(i, j, cols[j][i]);
    }
    return m;
  }

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return n_cols_; }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  void set(std::size_t i, std::size_t j, const Rational& v) {
    check_bounds(i, j);
    if (v == 0)
      rows_[i].erase(j);
    else
      rows_[i][j] = v;
  }

  Rational get(std::size_t i, std::size_t j) const {
    check_bounds(i, j);
    auto it = rows_[i].find(j);
    return it == rows_[i].end() ? Rational(0) : it->second;
  }

  const Row& row(std::size_t i) const { return rows_.at(i); }

  SparseMatQ transpose() const {
    SparseMatQ t(n_cols_, rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (const auto& [j, v] : rows_[i]) t.rows_[j].emplace(i, v);
    return t;
  }

  VectorQ apply(const VectorQ& x) const {
    if (x.size() != n_cols_) throw std::invalid_argument("apply: dimension mismatch");
    VectorQ y(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (const auto& [j, v] : rows_[i]) y[i] += v * x[j];
    return y;
  }

  VectorQ column(std::size_t j) const {
    VectorQ c(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = get(i, j);
    return c;
  }

  friend SparseMatQ operator*(const SparseMatQ& a, const SparseMatQ& b) {
    if (a.n_cols_ != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
    SparseMatQ c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      Row acc;
      for (const auto& [k, av] : a.rows_[i])
        for (const auto& [j, bv] : b.rows_[k]) acc[j] += av * bv;
      for (auto& [j, v] : acc)
        if (v != 0) c.rows_[i].emplace(j, std::move(v));
    }
    return c;
  }

  friend bool operator==(const SparseMatQ&, const SparseMatQ&) = default;

 private:
  void check_bounds(std::size_t i, std::size_t j) const {
    if (i >= rows_.size() || j >= n_cols_) throw std::out_of_range("SparseMatQ index out of range");
  }

  std::size_t n_cols_ = 0;
  std::vector<Row> rows_;
};

struct RrefResult {
  SparseMatQ matrix;
  std::vector<std::size_t> pivot_cols;

  std::size_t rank() const { return pivot_cols.size(); }
};

// rref plus the invertible row-operation matrix T with T * input == rref.
struct RrefTransformResult {
  RrefResult rref;
  SparseMatQ transform;
};

namespace detail {

// Row storage with the handful of operations Gauss-Jordan elimination needs.
struct SparseRows {
  std::vector<std::map<std::size_t, Rational>> rows;
  std::size_t n_cols = 0;

  const Rational* find(std::size_t i, std::size_t j) const {
    auto it = rows[i].find(j);
    return it == rows[i].end() ? nullptr : &it->second;
  }
  void scale(std::size_t i, const Rational& s) {
    for (auto& [j, v] : rows[i]) v *= s;
  }
  // rows[dst] -= f * rows[src]
  void axpy(std::size_t dst, std::size_t src, const Rational& f) {
    auto& d = rows[dst];
    for (const auto& [j, v] : rows[src]) {
      auto [it, inserted] = d.try_emplace(j, 0);
      it->second -= f * v;
      if (it->second == 0) d.erase(it);
    }
  }
  void swap(std::size_t a, std::size_t b) { std::swap(rows[a], rows[b]); }
  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.size();
    return n;
  }
};

struct DenseRows {
  std::vector<VectorQ> rows;
  std::size_t n_cols = 0;

  const Rational* find(std::size_t i, std::size_t j) const {
    return rows[i][j] == 0 ? nullptr : &rows[i][j];
  }
  void scale(std::size_t i, const Rational& s) {
    for (auto& v : rows[i])
      if (v != 0) v *= s;
  }
  void axpy(std::size_t dst, std::size_t src, const Rational& f) {
    for (std::size_t j = 0; j < n_cols; ++j)
      if (rows[src][j] != 0) rows[dst][j] -= f * rows[src][j];
  }
  void swap(std::size_t a, std::size_t b) { std::swap(rows[a], rows[b]); }
};

inline DenseRows densify(const SparseRows& s) {
  DenseRows d{std::vector<VectorQ>(s.rows.size(), VectorQ(s.n_cols)), s.n_cols};
  for (std::size_t i = 0; i < s.rows.size(); ++i)
    for (const auto& [j, v] : s.rows[i]) d.rows[i][j] = v;
  return d;
}

inline SparseRows sparsify(const DenseRows& d) {
  SparseRows s{std::vector<std::map<std::size_t, Rational>>(d.rows.size()), d.n_cols};
  for (std::size_t i = 0; i < d.rows.size(); ++i)
    for (std::size_t j = 0; j < d.n_cols; ++j)
      if (d.rows[i][j] != 0) s.rows[i].emplace(j, d.rows[i][j]);
  return s;
}

struct ElimState {
  std::size_t col = 0;
  std::vector<std::size_t> pivots;
};

// Gauss-Jordan elimination from `st.col` onward. Stops early (returning false)
// when `fill_limit` is set and the store's fill exceeds it after a column.
template <class Store>
bool eliminate(Store& m, ElimState& st, SparseRows* transform, std::optional<std::size_t> fill_limit) {
  const std::size_t n_rows = m.rows.size();
  for (; st.col < m.n_cols; ++st.col) {
    const std::size_t c = st.col;
    const std::size_t top = st.pivots.size();
    if (top == n_rows) break;

    // smallest bit length in column c; ties go to the lowest row index
    std::size_t best = n_rows;
    std::size_t best_bits = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = top; i < n_rows; ++i) {
      if (const Rational* v = m.find(i, c)) {
        std::size_t bits = bit_length(*v);
        if (bits < best_bits) {
          best_bits = bits;
          best = i;
        }
      }
    }
    if (best == n_rows) continue;

    if (best != top) {
      m.swap(best, top);
      if (transform) transform->swap(best, top);
    }
    const Rational inv = 1 / *m.find(top, c);
    m.scale(top, inv);
    if (transform) transform->scale(top, inv);

    for (std::size_t i = 0; i < n_rows; ++i) {
      if (i == top) continue;
      const Rational* v = m.find(i, c);
      if (!v) continue;
      const Rational f = *v;
      m.axpy(i, top, f);
      if (transform) transform->axpy(i, top, f);
    }
    st.pivots.push_back(c);

    if constexpr (std::is_same_v<Store, SparseRows>) {
      if (fill_limit && m.nnz() > *fill_limit) {
        ++st.col;
        return false;
      }
    }
  }
  return true;
}

class RrefBuilder {
 public:
  static RrefTransformResult run(const SparseMatQ& input, bool with_transform) {
    SparseRows store{{}, input.cols()};
    store.rows.reserve(input.rows());
    for (std::size_t i = 0; i < input.rows(); ++i) store.rows.push_back(input.row(i));

    SparseRows transform;
    if (with_transform) {
      transform.n_cols = input.rows();
      transform.rows.resize(input.rows());
      for (std::size_t i = 0; i < input.rows(); ++i) transform.rows[i].emplace(i, Rational(1));
    }
    SparseRows* tp = with_transform ? &transform : nullptr;

    ElimState st;
    // dense fallback once more than half of the entries are filled in
    const std::size_t fill_limit = input.rows() * input.cols() / 2;
    if (!eliminate(store, st, tp, fill_limit)) {
      DenseRows dense = densify(store);
      eliminate(dense, st, tp, std::nullopt);
      store = sparsify(dense);
    }

    RrefTransformResult out;
    out.rref.matrix = to_matrix(store, input.rows(), input.cols());
    out.rref.pivot_cols = std::move(st.pivots);
    if (with_transform) out.transform = to_matrix(transform, input.rows(), input.rows());
    return out;
  }

 private:
  static SparseMatQ to_matrix(const SparseRows& s, std::size_t rows, std::size_t cols) {
    SparseMatQ m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (const auto& [j, v] : s.rows[i]) m.set(i, j, v);
    return m;
  }
};

}  // namespace detail

inline RrefResult rref(const SparseMatQ& m) { return detail::RrefBuilder::run(m, false).rref; }

inline RrefTransformResult rref_with_transform(const SparseMatQ& m) {
  return detail::RrefBuilder::run(m, true);
}

inline std::size_t rank(const SparseMatQ& m) { return rref(m).rank(); }

/// Basis of the right null space, one vector per non-pivot column; the free
/// coordinate is 1 and the other free coordinates are 0.
inline std::vector<VectorQ> kernel_basis(const SparseMatQ& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivot_cols) is_pivot[c] = true;

  std::vector<VectorQ> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    VectorQ v(m.cols());
    v[f] = 1;
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) v[r.pivot_cols[i]] = -r.matrix.get(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::size_t rank_of_vectors(std::span<const VectorQ> vs, std::size_t dim) {
  if (vs.empty()) return 0;
  SparseMatQ m(vs.size(), dim);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].size() != dim) throw std::invalid_argument("vector dimension mismatch");
    for (std::size_t j = 0; j < dim; ++j) m.set(i, j, vs[i][j]);
  }
  return rank(m);
}

/// span(a) ⊆ span(b), decided by rank(b) == rank(b ∪ a).
inline bool subspace_leq(std::span<const VectorQ> a, std::span<const VectorQ> b) {
  if (a.empty()) return true;
  const std::size_t dim = a.front().size();
  for (const auto& v : a)
    if (v.size() != dim) throw std::invalid_argument("subspace_leq: dimension mismatch");
  for (const auto& v : b)
    if (v.size() != dim) throw std::invalid_argument("subspace_leq: dimension mismatch");

  std::vector<VectorQ> stacked(b.begin(), b.end());
  stacked.insert(stacked.end(), a.begin(), a.end());
  return rank_of_vectors(b, dim) == rank_of_vectors(stacked, dim);
}

inline bool subspace_eq(std::span<const VectorQ> a, std::span<const VectorQ> b) {
  return subspace_leq(a, b) && subspace_leq(b, a);
}

}  // namespace pss
