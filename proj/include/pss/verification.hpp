#pragma once

// Degree-by-degree verification of the presentations
//   Ker f_Lambda0 = I_Lambda0,  Ker f_Lambda1 = I_Lambda1,  Ker f'_Lambda1 = I'_Lambda1
// where f(a) = a . v is evaluation on the highest weight vector of the lattice
// realization. Each bigraded piece becomes one exact matrix whose kernel is
// compared with the span of the ideal's spanning set.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pss/exact_linalg.hpp"
#include "pss/fock.hpp"
#include "pss/polynomial.hpp"
#include "pss/relations.hpp"

namespace pss {

enum class ModuleTag { Lambda0, Lambda1, Lambda1Prime };

inline std::string_view module_name(ModuleTag t) {
  switch (t) {
    case ModuleTag::Lambda0: return "Lambda0";
    case ModuleTag::Lambda1: return "Lambda1";
    case ModuleTag::Lambda1Prime: return "Lambda1_prime";
  }
  return "?";
}

inline int module_floor(ModuleTag t) { return t == ModuleTag::Lambda1Prime ? -2 : -1; }

inline IdealTag module_ideal(ModuleTag t) {
  switch (t) {
    case ModuleTag::Lambda0: return IdealTag::Lambda0;
    case ModuleTag::Lambda1: return IdealTag::Lambda1;
    case ModuleTag::Lambda1Prime: return IdealTag::Lambda1Prime;
  }
  throw std::invalid_argument("unknown module tag");
}

// doubled lattice label of the highest weight vector
inline int module_twice_r(ModuleTag t) { return t == ModuleTag::Lambda0 ? 0 : 1; }

inline FockVector highest_weight_vector(ModuleTag t) {
  return FockVector(FockState::vacuum(module_twice_r(t)));
}

/// Bigraded pieces (n, k) of the domain, n <= max_weight. Charge 0 only at n = 0.
inline std::vector<BigradedIndex> domain_pieces(ModuleTag t, int max_weight) {
  std::vector<BigradedIndex> out;
  const int step = -module_floor(t);
  for (int n = 0; n <= max_weight; ++n) {
    if (n == 0) out.push_back({0, 0});
    for (int k = 1; k * step <= n; ++k) out.push_back({n, k});
  }
  return out;
}

/// Computes a . v for monomials a, memoizing on the monomial. One instance per
/// highest weight vector; not shared between threads.
class Evaluator {
 public:
  explicit Evaluator(ModuleTag tag) : tag_(tag), hw_(highest_weight_vector(tag)) {}

  ModuleTag tag() const { return tag_; }

  const FockVector& act(const Monomial& mono) {
    if (mono.is_unit()) return hw_;
    if (auto it = cache_.find(mono); it != cache_.end()) return it->second;
    const auto& idx = mono.indices();
    const Monomial rest(std::vector<int>(idx.begin() + 1, idx.end()));
    FockVector v = xalpha_act(idx.front(), act(rest));
    return cache_.emplace(mono, std::move(v)).first->second;
  }

  /// Target basis for the (n, k) piece: all (mu; r + k) with weight n + wt(v).
  std::vector<FockState> target_basis(BigradedIndex idx) const {
    const int twice_r = module_twice_r(tag_) + 2 * idx.charge;
    // 4|mu| = 4(n + wt v) - (2r)^2 with 4 wt v = (2 r_v)^2
    const int r0 = module_twice_r(tag_);
    const int quarter = 4 * idx.weight + r0 * r0 - twice_r * twice_r;
    std::vector<FockState> out;
    if (quarter < 0 || quarter % 4 != 0) return out;
    for (auto& parts : partitions_of(quarter / 4)) out.emplace_back(std::move(parts), twice_r);
    return out;
  }

  SparseMatQ eval_matrix(BigradedIndex idx) {
    const auto domain = enumerate_monomials(idx, module_floor(tag_));
    const auto rows = target_basis(idx);
    SparseMatQ m(rows.size(), domain.size());
    for (std::size_t j = 0; j < domain.size(); ++j) {
      for (const auto& [state, c] : act(domain[j]).terms()) {
        auto it = std::lower_bound(rows.begin(), rows.end(), state);
        if (it == rows.end() || *it != state)
          throw std::logic_error("eval_matrix: image state " + state.str() + " outside target bidegree");
        m.set(static_cast<std::size_t>(it - rows.begin()), j, c);
      }
    }
    return m;
  }

 private:
  ModuleTag tag_;
  FockVector hw_;
  std::map<Monomial, FockVector> cache_;
};

/// Columns: domain monomials in canonical order. Rows: target Fock states.
inline SparseMatQ eval_matrix(ModuleTag tag, BigradedIndex idx) { return Evaluator(tag).eval_matrix(idx); }

struct PieceReport {
  BigradedIndex idx;
  ModuleTag module_tag = ModuleTag::Lambda0;
  std::size_t dim_domain = 0;
  std::size_t rank_eval = 0;
  std::size_t dim_kernel = 0;
  std::size_t dim_ideal_piece = 0;
  bool containment_ok = false;
  bool equality_ok = false;
  // set when the piece fails: an ideal element not killed, or a kernel
  // element outside the ideal span
  std::optional<std::string> witness;
};

using DimsTable = std::map<BigradedIndex, std::size_t>;

struct VerificationRun {
  ModuleTag module_tag = ModuleTag::Lambda0;
  int max_weight = 0;
  std::vector<PieceReport> pieces;
  std::map<std::string, bool> lemma_results;
  DimsTable dims_table;

  bool all_pass() const {
    for (const auto& p : pieces)
      if (!p.equality_ok) return false;
    for (const auto& [name, ok] : lemma_results)
      if (!ok) return false;
    return true;
  }
};

/// Compares the kernel of the evaluation map on `idx` with the span of `ideal`.
inline PieceReport verify_piece(Evaluator& ev, BigradedIndex idx, const std::vector<PolyQ>& ideal) {
  const ModuleTag tag = ev.tag();
  const int floor = module_floor(tag);
  const auto domain = enumerate_monomials(idx, floor);
  const SparseMatQ m = ev.eval_matrix(idx);

  PieceReport rep;
  rep.idx = idx;
  rep.module_tag = tag;
  rep.dim_domain = domain.size();
  rep.rank_eval = rank(m);
  rep.dim_kernel = rep.dim_domain - rep.rank_eval;

  std::vector<VectorQ> ideal_vecs;
  ideal_vecs.reserve(ideal.size());
  for (const auto& p : ideal) ideal_vecs.push_back(coordinates(p, domain));
  rep.dim_ideal_piece = rank_of_vectors(ideal_vecs, domain.size());

  rep.containment_ok = true;
  for (std::size_t i = 0; i < ideal.size(); ++i) {
    const VectorQ image = m.apply(ideal_vecs[i]);
    if (std::any_of(image.begin(), image.end(), [](const Rational& q) { return q != 0; })) {
      rep.containment_ok = false;
      rep.witness = ideal[i].str();
      break;
    }
  }
  rep.equality_ok = rep.containment_ok && rep.dim_kernel == rep.dim_ideal_piece;
  if (rep.containment_ok && !rep.equality_ok) {
    for (const auto& k : kernel_basis(m)) {
      const std::vector<VectorQ> one{k};
      if (!subspace_leq(one, ideal_vecs)) {
        rep.witness = from_coordinates(k, domain).str();
        break;
      }
    }
  }
  return rep;
}

inline PieceReport verify_piece(Evaluator& ev, BigradedIndex idx) {
  return verify_piece(ev, idx, ideal_piece(module_ideal(ev.tag()), idx));
}

/// Kernel of f_Lambda0 is contained in the kernel of f_Lambda1, piece by piece.
inline bool kernel_containment_L0_in_L1(int max_weight) {
  if (max_weight < 1) throw std::invalid_argument("kernel_containment_L0_in_L1: max_weight >= 1 required");
  Evaluator ev0(ModuleTag::Lambda0);
  Evaluator ev1(ModuleTag::Lambda1);
  for (const auto& idx : domain_pieces(ModuleTag::Lambda0, max_weight)) {
    const auto k0 = kernel_basis(ev0.eval_matrix(idx));
    const auto k1 = kernel_basis(ev1.eval_matrix(idx));
    if (!subspace_leq(k0, k1)) return false;
  }
  return true;
}

/// Charge-1 kernel pieces vanish and each charge-2 kernel piece of weight t is
/// spanned by R_t (Lambda0, floor -1) or R_t restricted to indices <= -2
/// (Lambda1_prime). Only meaningful for those two modules.
inline bool check_kernel_low_charge(ModuleTag tag, int max_weight) {
  if (tag == ModuleTag::Lambda1) throw std::invalid_argument("check_kernel_low_charge: not defined for Lambda1");
  const int floor = module_floor(tag);
  Evaluator ev(tag);
  for (int n = 1; n <= max_weight; ++n) {
    if (n >= -floor && !kernel_basis(ev.eval_matrix({n, 1})).empty()) return false;
    if (n < 2 * -floor) continue;
    const auto kernel = kernel_basis(ev.eval_matrix({n, 2}));
    if (kernel.size() != 1) return false;
    const auto domain = enumerate_monomials({n, 2}, floor);
    const std::vector<VectorQ> r{coordinates(build_R(n, floor), domain)};
    if (!subspace_eq(kernel, r)) return false;
  }
  return true;
}

/// rank of the evaluation map on every piece up to max_weight.
inline DimsTable graded_dims(ModuleTag tag, int max_weight) {
  if (max_weight < 0) throw std::invalid_argument("graded_dims: max_weight >= 0 required");
  Evaluator ev(tag);
  DimsTable dims;
  for (const auto& idx : domain_pieces(tag, max_weight)) dims[idx] = rank(ev.eval_matrix(idx));
  return dims;
}

/// Total dimension per weight 0..max_weight.
inline std::vector<std::size_t> weight_totals(const DimsTable& dims, int max_weight) {
  std::vector<std::size_t> totals(static_cast<std::size_t>(max_weight + 1), 0);
  for (const auto& [idx, d] : dims)
    if (idx.weight <= max_weight) totals[static_cast<std::size_t>(idx.weight)] += d;
  return totals;
}

/// Partitions of n into exactly k parts, each >= min_part, consecutive parts
/// differing by at least 2. Direct recursive count.
inline std::size_t partition_oracle(int n, int k, int min_part) {
  if (n < 0 || k < 0 || min_part < 1) throw std::invalid_argument("partition_oracle: bad arguments");
  auto count = [](auto&& self, int left, int parts, int smallest) -> std::size_t {
    if (parts == 0) return left == 0 ? 1 : 0;
    std::size_t total = 0;
    for (int p = smallest; p <= left; ++p) total += self(self, left - p, parts - 1, p + 2);
    return total;
  };
  return count(count, n, k, min_part);
}

/// D maps each piece (n,k) of I_Lambda0 into the piece (n+1,k).
inline bool check_ideal_D_stability(int max_weight) {
  if (max_weight < 2) throw std::invalid_argument("check_ideal_D_stability: max_weight >= 2 required");
  for (const auto& idx : domain_pieces(ModuleTag::Lambda0, max_weight)) {
    if (idx.charge < 2) continue;
    std::vector<PolyQ> image;
    for (const auto& p : ideal_piece(IdealTag::Lambda0, idx)) image.push_back(derivation_D(p));
    const BigradedIndex target{idx.weight + 1, idx.charge};
    const auto a = to_coordinates(image, target, -1);
    const auto b = to_coordinates(ideal_piece(IdealTag::Lambda0, target), target, -1);
    if (!subspace_leq(a, b)) return false;
  }
  return true;
}

inline VerificationRun verify_presentation(ModuleTag tag, int max_weight) {
  if (max_weight < 1) throw std::invalid_argument("verify_presentation: max_weight >= 1 required");
  VerificationRun run;
  run.module_tag = tag;
  run.max_weight = max_weight;
  Evaluator ev(tag);
  for (const auto& idx : domain_pieces(tag, max_weight)) {
    run.pieces.push_back(verify_piece(ev, idx));
    run.dims_table[idx] = run.pieces.back().rank_eval;
  }
  if (tag == ModuleTag::Lambda1)
    run.lemma_results["kernel_containment_L0_in_L1"] = kernel_containment_L0_in_L1(max_weight);
  else
    run.lemma_results["kernel_low_charge_structure"] = check_kernel_low_charge(tag, max_weight);
  return run;
}

}  // namespace pss
