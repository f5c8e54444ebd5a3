#pragma once

// The commutative polynomial algebra C[x(m) : m in Z] that models the
// enveloping algebra of the abelian loop algebra, with its weight/charge
// bigrading and the structural maps used by the presentation checks:
// translation tau^s, the projection rho dropping x(-1), and the derivation D
// induced by L(-1).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pss/exact_linalg.hpp"
#include "pss/rational.hpp"

namespace pss {

struct BigradedIndex {
  int weight = 0;
  int charge = 0;

  friend auto operator<=>(const BigradedIndex&, const BigradedIndex&) = default;
};

/// A product x(m_1) ... x(m_k), stored as the non-decreasing index sequence.
class Monomial {
 public:
  Monomial() = default;
  Monomial(std::initializer_list<int> idx) : idx_(idx) { std::sort(idx_.begin(), idx_.end()); }
  explicit Monomial(std::vector<int> idx) : idx_(std::move(idx)) { std::sort(idx_.begin(), idx_.end()); }

  const std::vector<int>& indices() const { return idx_; }
  int charge() const { return static_cast<int>(idx_.size()); }
  int weight() const { return -std::accumulate(idx_.begin(), idx_.end(), 0); }
  BigradedIndex grade() const { return {weight(), charge()}; }
  bool is_unit() const { return idx_.empty(); }

  bool contains(int m) const { return std::binary_search(idx_.begin(), idx_.end(), m); }
  // every index <= floor
  bool below(int floor) const { return idx_.empty() || idx_.back() <= floor; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.idx_.reserve(a.idx_.size() + b.idx_.size());
    std::merge(a.idx_.begin(), a.idx_.end(), b.idx_.begin(), b.idx_.end(), std::back_inserter(out.idx_));
    return out;
  }

  Monomial shifted(int s) const {
    Monomial out = *this;
    for (int& m : out.idx_) m -= s;
    return out;
  }

  // Graded-lexicographic: charge, then weight, then the sorted index sequence.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.charge() <=> b.charge(); c != 0) return c;
    if (auto c = a.weight() <=> b.weight(); c != 0) return c;
    return a.idx_ <=> b.idx_;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;

  std::string str() const {
    if (idx_.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < idx_.size();) {
      std::size_t j = i;
      while (j < idx_.size() && idx_[j] == idx_[i]) ++j;
      if (!out.empty()) out += '*';
      out += "x(" + std::to_string(idx_[i]) + ")";
      if (j - i > 1) out += "^" + std::to_string(j - i);
      i = j;
    }
    return out;
  }

 private:
  std::vector<int> idx_;
};

/// Finite Q-linear combination of monomials; zero coefficients are never stored.
class PolyQ {
 public:
  using Terms = std::map<Monomial, Rational>;

  PolyQ() = default;
  PolyQ(const Monomial& m, const Rational& c = 1) { add(m, c); }

  static PolyQ one() { return PolyQ(Monomial{}); }
  static PolyQ x(int m) { return PolyQ(Monomial{m}); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  PolyQ& operator+=(const PolyQ& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  PolyQ& operator-=(const PolyQ& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  PolyQ& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }

  friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
  friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
  friend PolyQ operator*(const Rational& s, PolyQ p) { return p *= s; }
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b) {
    PolyQ out;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add(ma * mb, ca * cb);
    return out;
  }

  friend bool operator==(const PolyQ&, const PolyQ&) = default;

  /// Single bidegree shared by every term; nullopt for zero or mixed input.
  std::optional<BigradedIndex> homogeneous_grade() const {
    if (terms_.empty()) return std::nullopt;
    const BigradedIndex g = terms_.begin()->first.grade();
    for (const auto& [m, c] : terms_)
      if (m.grade() != g) return std::nullopt;
    return g;
  }

  bool supported_below(int floor) const {
    return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first.below(floor); });
  }

  /// e.g. "2*x(-3)*x(-1) + x(-2)^2"
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      Rational mag = abs(c);
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      first = false;
      if (m.is_unit()) {
        out += to_string(mag);
      } else {
        if (mag != 1) out += to_string(mag) + "*";
        out += m.str();
      }
    }
    return out;
  }

 private:
  Terms terms_;
};

inline PolyQ mono_mul(const PolyQ& a, const PolyQ& b) { return a * b; }

/// tau^s: every generator index m goes to m - s.
inline PolyQ tau_power(const PolyQ& p, int s) {
  PolyQ out;
  for (const auto& [m, c] : p.terms()) out.add(m.shifted(s), c);
  return out;
}

/// Projection onto indices <= -2: drop every term containing x(-1).
inline PolyQ rho_project(const PolyQ& p) {
  if (!p.supported_below(-1)) throw std::domain_error("rho_project: input has indices >= 0");
  PolyQ out;
  for (const auto& [m, c] : p.terms())
    if (!m.contains(-1)) out.add(m, c);
  return out;
}

/// Derivation with D(x(m)) = -m x(m-1), extended by the Leibniz rule.
inline PolyQ derivation_D(const PolyQ& p) {
  PolyQ out;
  for (const auto& [mono, c] : p.terms()) {
    const auto& idx = mono.indices();
    for (std::size_t i = 0; i < idx.size(); ++i) {
      // identical factors are visited once each, which supplies the multiplicity
      const int m = idx[i];
      if (m == 0) continue;
      std::vector<int> next = idx;
      next[i] = m - 1;
      out.add(Monomial(std::move(next)), c * -m);
    }
  }
  return out;
}

namespace detail {

inline void enumerate_rec(int weight_left, int parts_left, int max_index, std::vector<int>& cur,
                          std::vector<Monomial>& out) {
  if (parts_left == 0) {
    if (weight_left == 0) out.emplace_back(cur);
    return;
  }
  // indices are non-decreasing; choose the smallest (most negative) index
  // first, so the remaining ones are >= it
  const int lo = cur.empty() ? -(weight_left - (parts_left - 1) * -max_index) : cur.back();
  for (int m = lo; m <= max_index; ++m) {
    const int remaining = weight_left + m;  // weight still owed after x(m)
    // the other parts_left-1 factors each carry weight in [-max_index, -m]
    if (remaining < (parts_left - 1) * -max_index) continue;
    if (remaining > (parts_left - 1) * -m) continue;
    cur.push_back(m);
    enumerate_rec(remaining, parts_left - 1, max_index, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// Every monomial of the given bidegree with all indices <= floor, in
/// ascending lexicographic order of the sorted index sequence.
inline std::vector<Monomial> enumerate_monomials(BigradedIndex idx, int floor) {
  if (floor > -1) throw std::invalid_argument("enumerate_monomials: floor must be <= -1");
  std::vector<Monomial> out;
  if (idx.charge < 0) return out;
  if (idx.charge == 0) {
    if (idx.weight == 0) out.emplace_back();
    return out;
  }
  if (idx.weight < idx.charge * -floor) return out;
  std::vector<int> cur;
  detail::enumerate_rec(idx.weight, idx.charge, floor, cur, out);
  return out;
}

/// Coordinates of p in the given monomial basis; throws if p has support outside it.
inline VectorQ coordinates(const PolyQ& p, std::span<const Monomial> basis) {
  VectorQ v(basis.size());
  for (const auto& [m, c] : p.terms()) {
    auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || *it != m) throw std::invalid_argument("coordinates: monomial " + m.str() + " outside basis");
    v[static_cast<std::size_t>(it - basis.begin())] = c;
  }
  return v;
}

inline PolyQ from_coordinates(const VectorQ& v, std::span<const Monomial> basis) {
  PolyQ p;
  for (std::size_t i = 0; i < v.size(); ++i) p.add(basis[i], v[i]);
  return p;
}

}  // namespace pss
