#pragma once

// Lattice Fock space realization of L(Lambda0) + L(Lambda1) for sl(2)^ at
// level one: states are (mu; r) with mu a partition recording Heisenberg
// modes alpha(-n) and r in (1/2)Z the lattice label of e^{r alpha}.
//
// The vertex operator Y(e^alpha, x) = E^-(x) E^+(x) e_alpha x^{alpha(0)} acts
// with the trivial cocycle. E^+ = exp(-sum alpha(n) x^{-n} / n) acts on the
// polynomial in p_n = alpha(-n) as the substitution p_n -> p_n - 2 x^{-n},
// and E^- = exp(sum p_n x^n / n) multiplies by a known symmetric-function
// series, so x_alpha(m) reduces to finite binomial bookkeeping.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pss/polynomial.hpp"
#include "pss/rational.hpp"

namespace pss {

/// Basis state (mu; r). `parts` is sorted ascending; r is stored doubled.
class FockState {
 public:
  FockState() = default;
  FockState(std::vector<int> parts, int twice_r) : parts_(std::move(parts)), twice_r_(twice_r) {
    std::sort(parts_.begin(), parts_.end());
    if (!parts_.empty() && parts_.front() <= 0) throw std::invalid_argument("FockState: parts must be positive");
    size_ = std::accumulate(parts_.begin(), parts_.end(), 0);
  }

  static FockState vacuum(int twice_r) { return FockState({}, twice_r); }

  const std::vector<int>& parts() const { return parts_; }
  int twice_r() const { return twice_r_; }
  int size() const { return size_; }

  Rational r() const { return make_rational(twice_r_, 2); }
  // weight |mu| + r^2 and charge r, both exact
  Rational weight() const { return Rational(size()) + r() * r(); }
  Rational charge() const { return r(); }

  int multiplicity(int n) const {
    auto [lo, hi] = std::equal_range(parts_.begin(), parts_.end(), n);
    return static_cast<int>(hi - lo);
  }

  FockState relabeled(int twice_dr) const {
    FockState s = *this;
    s.twice_r_ += twice_dr;
    return s;
  }

  friend std::strong_ordering operator<=>(const FockState& a, const FockState& b) {
    if (auto c = a.twice_r_ <=> b.twice_r_; c != 0) return c;
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    return a.parts_ <=> b.parts_;
  }
  friend bool operator==(const FockState&, const FockState&) = default;

  std::string lattice_str() const {
    if (twice_r_ % 2 == 0) return "e{" + std::to_string(twice_r_ / 2) + "}";
    return "e{" + std::to_string(twice_r_) + "/2}";
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size();) {
      std::size_t j = i;
      while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
      if (!out.empty()) out += '*';
      out += "a(" + std::to_string(-parts_[i]) + ")";
      if (j - i > 1) out += "^" + std::to_string(j - i);
      i = j;
    }
    if (!out.empty()) out += ' ';
    return out + lattice_str();
  }

 private:
  std::vector<int> parts_;
  int twice_r_ = 0;
  int size_ = 0;
};

class FockVector {
 public:
  using Terms = std::map<FockState, Rational>;

  FockVector() = default;
  FockVector(const FockState& s, const Rational& c = 1) { add(s, c); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const FockState& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const FockState& s, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(s, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  FockVector& operator+=(const FockVector& o) {
    for (const auto& [s, c] : o.terms_) add(s, c);
    return *this;
  }
  FockVector& operator-=(const FockVector& o) {
    for (const auto& [s, c] : o.terms_) add(s, -c);
    return *this;
  }
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(const Rational& k, const FockVector& v) {
    FockVector out;
    for (const auto& [s, c] : v.terms_) out.add(s, k * c);
    return out;
  }
  friend bool operator==(const FockVector&, const FockVector&) = default;

  /// e.g. "1/2*a(-1)^2 e{1} + 1/2*a(-2) e{1}"
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [s, c] : terms_) {
      const Rational mag = abs(c);
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      first = false;
      if (mag != 1) out += to_string(mag) + "*";
      out += s.str();
    }
    return out;
  }

 private:
  Terms terms_;
};

/// Weight and charge of a bihomogeneous vector; weight lies in (1/4)Z, charge in (1/2)Z.
struct FockGrade {
  Rational weight;
  Rational charge;

  friend bool operator==(const FockGrade&, const FockGrade&) = default;
};

inline FockGrade weight_charge(const FockVector& v) {
  if (v.is_zero()) throw std::invalid_argument("weight_charge: zero vector");
  const auto& first = v.terms().begin()->first;
  FockGrade g{first.weight(), first.charge()};
  for (const auto& [s, c] : v.terms())
    if (s.weight() != g.weight || s.charge() != g.charge)
      throw std::invalid_argument("weight_charge: vector is not bihomogeneous");
  return g;
}

/// Partitions of n, parts ascending within each, listed in ascending
/// lexicographic order ({1,1} before {2}).
inline std::vector<std::vector<int>> partitions_of(int n) {
  std::vector<std::vector<int>> out;
  if (n < 0) return out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int left, int min_part) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = min_part; p <= left; ++p) {
      if (left - p != 0 && left - p < p) continue;
      cur.push_back(p);
      self(self, left - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, 1);
  return out;
}

/// Heisenberg action with [alpha(m), alpha(n)] = 2m delta_{m+n,0}.
inline FockVector heis_act(int n, const FockVector& v) {
  if (n == 0) throw std::invalid_argument("heis_act: n = 0 is the charge operator");
  FockVector out;
  for (const auto& [s, c] : v.terms()) {
    if (n < 0) {
      std::vector<int> parts = s.parts();
      parts.push_back(-n);
      out.add(FockState(std::move(parts), s.twice_r()), c);
    } else {
      const int mult = s.multiplicity(n);
      if (mult == 0) continue;
      std::vector<int> parts = s.parts();
      parts.erase(std::find(parts.begin(), parts.end(), n));
      out.add(FockState(std::move(parts), s.twice_r()), c * (2 * n * mult));
    }
  }
  return out;
}

/// alpha(0) acts by 2r.
inline FockVector alpha_zero_act(const FockVector& v) {
  FockVector out;
  for (const auto& [s, c] : v.terms()) out.add(s, c * s.twice_r());
  return out;
}

namespace detail {

struct CreationTerm {
  std::vector<int> parts;
  Rational coeff;
};

// Coefficient of x^i in E^-(x) = exp(sum_{n>=1} p_n x^n / n):
// sum over partitions lambda of i of p_lambda / prod_n (n^{k_n} k_n!).
inline const std::vector<CreationTerm>& creation_series(int i) {
  thread_local std::vector<std::vector<CreationTerm>> cache;
  if (static_cast<int>(cache.size()) <= i) {
    for (int d = static_cast<int>(cache.size()); d <= i; ++d) {
      std::vector<CreationTerm> terms;
      for (auto& lambda : partitions_of(d)) {
        mpz_class denom = 1;
        for (std::size_t a = 0; a < lambda.size();) {
          std::size_t b = a;
          while (b < lambda.size() && lambda[b] == lambda[a]) ++b;
          const unsigned long k = b - a;
          mpz_class kfact;
          mpz_fac_ui(kfact.get_mpz_t(), k);
          mpz_class npow;
          mpz_ui_pow_ui(npow.get_mpz_t(), static_cast<unsigned long>(lambda[a]), k);
          denom *= kfact * npow;
          a = b;
        }
        terms.push_back({std::move(lambda), Rational(mpz_class(1), denom)});
      }
      cache.push_back(std::move(terms));
    }
  }
  return cache[static_cast<std::size_t>(i)];
}

// E^+ on p^mu: prod_n (p_n - 2 x^{-n})^{a_n}. Invokes f(remaining parts, j, coeff)
// for each term c * p^{remaining} x^{-j}.
template <class F>
void annihilation_expand(const std::vector<int>& parts, F&& f) {
  std::vector<std::pair<int, int>> groups;  // (n, multiplicity)
  for (int p : parts) {
    if (!groups.empty() && groups.back().first == p)
      ++groups.back().second;
    else
      groups.emplace_back(p, 1);
  }
  std::vector<int> kept;
  auto rec = [&](auto&& self, std::size_t g, int j, Rational coeff) -> void {
    if (g == groups.size()) {
      f(kept, j, coeff);
      return;
    }
    const auto [n, a] = groups[g];
    mpz_class binom;
    for (int b = 0; b <= a; ++b) {
      // choose b of the a factors to contribute -2 x^{-n}
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
      mpz_class sign_pow;
      mpz_ui_pow_ui(sign_pow.get_mpz_t(), 2, static_cast<unsigned long>(b));
      if (b % 2 == 1) sign_pow = -sign_pow;
      for (int k = 0; k < a - b; ++k) kept.push_back(n);
      self(self, g + 1, j + n * b, coeff * Rational(binom * sign_pow));
      kept.resize(kept.size() - static_cast<std::size_t>(a - b));
    }
  };
  rec(rec, 0, 0, Rational(1));
}

// x_alpha(m) stopped before the E^- factor: coefficient of the term
// p^{kept} * E^-_i on lattice label twice_r, keyed by (twice_r, kept, i).
using PendingCreation = std::map<std::tuple<int, std::vector<int>, int>, Rational>;

inline void xalpha_pending(int m, const FockVector& v, const Rational& scale, PendingCreation& pending) {
  for (const auto& [s, c] : v.terms()) {
    // x^{2r} E^- E^+ on (mu; r+1): need E^- degree i and E^+ degree -j with
    // 2r + i - j = -m - 1
    const int target = -m - 1 - s.twice_r();
    if (target + s.size() < 0) continue;  // j <= |mu|
    const Rational sc = scale * c;
    annihilation_expand(s.parts(), [&](const std::vector<int>& kept, int j, const Rational& ac) {
      const int i = target + j;
      if (i < 0) return;
      auto [it, inserted] = pending.try_emplace({s.twice_r() + 2, kept, i}, 0);
      it->second += sc * ac;
      if (it->second == 0) pending.erase(it);
    });
  }
}

inline FockVector apply_creation(const PendingCreation& pending) {
  FockVector out;
  for (const auto& [key, c] : pending) {
    const auto& [twice_r, kept, i] = key;
    for (const auto& term : creation_series(i)) {
      std::vector<int> parts = kept;
      parts.insert(parts.end(), term.parts.begin(), term.parts.end());
      out.add(FockState(std::move(parts), twice_r), c * term.coeff);
    }
  }
  return out;
}

}  // namespace detail

/// x_alpha(m): coefficient of x^{-m-1} in Y(e^alpha, x).
inline FockVector xalpha_act(int m, const FockVector& v) {
  detail::PendingCreation pending;
  detail::xalpha_pending(m, v, Rational(1), pending);
  return detail::apply_creation(pending);
}

/// Largest m with x_alpha(m) s possibly nonzero: m <= |mu| - 1 - 2r.
inline int xalpha_annihilation_bound(const FockState& s) { return s.size() - 1 - s.twice_r(); }

/// e^{alpha/2}: relabel (mu; r) -> (mu; r + 1/2).
inline FockVector e_half_act(const FockVector& v) {
  FockVector out;
  for (const auto& [s, c] : v.terms()) out.add(s.relabeled(1), c);
  return out;
}

/// Highest weight vectors v_Lambda0 = (0; 0) and v_Lambda1 = (0; 1/2).
inline FockVector v_lambda0() { return FockVector(FockState::vacuum(0)); }
inline FockVector v_lambda1() { return FockVector(FockState::vacuum(1)); }

/// The action a . v of a polynomial, generators applied right to left.
inline FockVector poly_act(const PolyQ& p, const FockVector& v) {
  FockVector out;
  for (const auto& [mono, c] : p.terms()) {
    FockVector w = v;
    const auto& idx = mono.indices();
    for (auto it = idx.rbegin(); it != idx.rend() && !w.is_zero(); ++it) w = xalpha_act(*it, w);
    out += c * w;
  }
  return out;
}

/// Basis states with weight <= bound in both cosets r in Z and r in 1/2 + Z.
inline std::vector<FockState> states_up_to_weight(int bound) {
  std::vector<FockState> out;
  for (int twice_r = -2 * bound - 1; twice_r <= 2 * bound + 1; ++twice_r) {
    // |mu| <= bound - r^2, i.e. 4|mu| <= 4 bound - (2r)^2
    const int quarter_room = 4 * bound - twice_r * twice_r;
    if (quarter_room < 0) continue;
    for (int size = 0; 4 * size <= quarter_room; ++size)
      for (auto& parts : partitions_of(size)) out.emplace_back(std::move(parts), twice_r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// R_t = sum_{m1+m2=-t} x_alpha(m1) x_alpha(m2) on a basis state. Only pairs
/// with both m1, m2 <= the annihilation bound of s contribute, because the
/// components commute; each unordered pair is evaluated once, larger mode
/// first, and counted twice off the diagonal. The outer x_alpha of every pair
/// lands on the same lattice label, so their E^- factors are applied once to
/// the accumulated sum.
inline FockVector R_act(int t, const FockState& s) {
  const int bound = xalpha_annihilation_bound(s);
  // R_t s sits at charge r + 2 and weight wt(s) + t
  const int quarter = 4 * (s.size() + t) + s.twice_r() * s.twice_r() - (s.twice_r() + 4) * (s.twice_r() + 4);
  if (quarter < 0) return {};
  const FockVector v(s);
  detail::PendingCreation pending;
  for (int large = bound; 2 * large >= -t; --large) {
    const int small = -t - large;
    const FockVector first = xalpha_act(large, v);
    if (first.is_zero()) continue;
    detail::xalpha_pending(small, first, Rational(small == large ? 1 : 2), pending);
  }
  return detail::apply_creation(pending);
}

/// Y(e^alpha, x)^2 = 0: every R_t with |t| <= 2 weight_bound kills every basis
/// state of weight <= weight_bound, in both cosets.
inline bool check_square_zero(int weight_bound) {
  if (weight_bound < 1) throw std::invalid_argument("check_square_zero: weight_bound >= 1 required");
  for (const auto& s : states_up_to_weight(weight_bound))
    for (int t = -2 * weight_bound; t <= 2 * weight_bound; ++t)
      if (!R_act(t, s).is_zero()) return false;
  return true;
}

}  // namespace pss
