#pragma once

// Quadratic relations R_t and the finite bigraded pieces of the three
// presentation ideals, together with the polynomial identities relating them
// under tau, rho and D.

#include <stdexcept>
#include <string_view>
#include <vector>

#include "pss/exact_linalg.hpp"
#include "pss/polynomial.hpp"

namespace pss {

struct RelationFamily {
  int floor = -1;  // -1 for R^0, -2 for R^1

  int t_min() const { return 2 * -floor; }
};

inline constexpr RelationFamily kR0{-1};
inline constexpr RelationFamily kR1{-2};

enum class IdealTag { Lambda0, Lambda1, Lambda1Prime };

inline std::string_view ideal_name(IdealTag t) {
  switch (t) {
    case IdealTag::Lambda0: return "I_Lambda0";
    case IdealTag::Lambda1: return "I_Lambda1";
    case IdealTag::Lambda1Prime: return "I_Lambda1_prime";
  }
  return "?";
}

struct IdealSpec {
  IdealTag tag;
  int floor;                // ambient algebra: indices <= floor
  RelationFamily family;    // quadratic generators
  bool with_x_minus_one;    // x(-1) is an extra generator

  static IdealSpec of(IdealTag tag) {
    switch (tag) {
      case IdealTag::Lambda0: return {tag, -1, kR0, false};
      case IdealTag::Lambda1: return {tag, -1, kR0, true};
      case IdealTag::Lambda1Prime: return {tag, -2, kR1, false};
    }
    throw std::invalid_argument("unknown ideal tag");
  }
};

/// R_t with both indices <= floor, summed over ordered pairs (m1, m2) with
/// m1 + m2 = -t: distinct indices get coefficient 2, a repeated index 1.
inline PolyQ build_R(int t, int floor) {
  if (floor != -1 && floor != -2) throw std::invalid_argument("build_R: floor must be -1 or -2");
  if (t < 2 * -floor) throw std::invalid_argument("build_R: t below the family minimum");
  PolyQ r;
  for (int m1 = floor; -t - m1 <= floor; --m1) r.add(Monomial{m1, -t - m1}, 1);
  return r;
}

/// Spanning set (not reduced) of the bidegree-`idx` piece of the ideal:
/// products u*g for g a generator and u a monomial of complementary bidegree.
inline std::vector<PolyQ> ideal_piece(const IdealSpec& spec, BigradedIndex idx) {
  std::vector<PolyQ> out;
  if (idx.charge < 1 || idx.weight < 0) return out;

  for (int t = spec.family.t_min(); t <= idx.weight; ++t) {
    const PolyQ r = build_R(t, spec.family.floor);
    for (const auto& u : enumerate_monomials({idx.weight - t, idx.charge - 2}, spec.floor))
      out.push_back(PolyQ(u) * r);
  }
  if (spec.with_x_minus_one) {
    const PolyQ x1 = PolyQ::x(-1);
    for (const auto& u : enumerate_monomials({idx.weight - 1, idx.charge - 1}, spec.floor))
      out.push_back(PolyQ(u) * x1);
  }
  return out;
}

inline std::vector<PolyQ> ideal_piece(IdealTag tag, BigradedIndex idx) {
  return ideal_piece(IdealSpec::of(tag), idx);
}

/// tau(R_t^0) = R_{t+2}^0 - 2 x(-t-1) x(-1)
inline bool check_tau_R_identity(int t) {
  if (t < 2) throw std::invalid_argument("check_tau_R_identity: t >= 2 required");
  PolyQ lhs = tau_power(build_R(t, -1), 1) + Rational(2) * PolyQ(Monomial{-t - 1, -1});
  return (lhs - build_R(t + 2, -1)).is_zero();
}

/// tau(R_t^1) x(-1) = R_{t+2}^0 x(-1) - x(-t) R_3^0 - 2 x(-t-1) R_2^0
inline bool check_lift_identity(int t) {
  if (t < 4) throw std::invalid_argument("check_lift_identity: t >= 4 required");
  const PolyQ x1 = PolyQ::x(-1);
  const PolyQ lhs = tau_power(build_R(t, -2), 1) * x1;
  const PolyQ rhs = build_R(t + 2, -1) * x1 - PolyQ::x(-t) * build_R(3, -1) -
                    Rational(2) * (PolyQ::x(-t - 1) * build_R(2, -1));
  return lhs == rhs;
}

/// D(R_t^0) = (t - 1) R_{t+1}^0
inline bool check_D_R_identity(int t) {
  if (t < 2) throw std::invalid_argument("check_D_R_identity: t >= 2 required");
  return derivation_D(build_R(t, -1)) == Rational(t - 1) * build_R(t + 1, -1);
}

/// Coordinates of each polynomial in the monomial basis of `idx` (indices <= floor).
inline std::vector<VectorQ> to_coordinates(const std::vector<PolyQ>& polys, BigradedIndex idx, int floor) {
  const auto basis = enumerate_monomials(idx, floor);
  std::vector<VectorQ> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(coordinates(p, basis));
  return out;
}

/// tau maps the (n,k) piece of I_Lambda0 into the (n+k,k) piece of I_Lambda1.
inline bool check_tau_ideal_inclusion(BigradedIndex idx) {
  std::vector<PolyQ> image;
  for (const auto& p : ideal_piece(IdealTag::Lambda0, idx)) image.push_back(tau_power(p, 1));
  const BigradedIndex target{idx.weight + idx.charge, idx.charge};
  const auto a = to_coordinates(image, target, -1);
  const auto b = to_coordinates(ideal_piece(IdealTag::Lambda1, target), target, -1);
  return subspace_leq(a, b);
}

/// rho(tau(piece (n,k) of I_Lambda0)) spans exactly the (n+k,k) piece of I'_Lambda1.
inline bool check_tau_onto_prime(BigradedIndex idx) {
  std::vector<PolyQ> image;
  for (const auto& p : ideal_piece(IdealTag::Lambda0, idx)) image.push_back(rho_project(tau_power(p, 1)));
  const BigradedIndex target{idx.weight + idx.charge, idx.charge};
  const auto a = to_coordinates(image, target, -2);
  const auto b = to_coordinates(ideal_piece(IdealTag::Lambda1Prime, target), target, -2);
  return subspace_eq(a, b);
}

}  // namespace pss
