#pragma once

// Fixed-point data of t^i for a C_M action given by a smooth epimorphism:
// isolated fixed points of every power (Macbeath), ovals of the involution
// t^N when M = 2N, their twist type, and the Scherrer bound |F| + 2|V| <= p + 2.

#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "klein/epimorphism.hpp"

namespace klein {

struct PowerFixedPoints {
  Int i = 0;
  Int order = 0;
  Int isolated_count = 0;
};

struct CycleOvals {
  Int v = 0;
  Int oval_count = 0;
  bool twisted = false;
};

struct ScherrerStatus {
  bool holds = false;
  Int slack = 0;
  bool equality = false;
};

struct InvolutionData {
  Int oval_total = 0;
  Int isolated_total = 0;
  std::vector<CycleOvals> per_cycle;
  Int scherrer_lhs = 0;
  Int scherrer_rhs = 0;
  bool scherrer_equality = false;
};

struct FixedPointReport {
  Int modulus = 0;
  Int kernel_genus = 0;
  std::vector<PowerFixedPoints> per_power;
  std::optional<InvolutionData> involution;
};

class InvalidEpimorphism : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// M * sum over periods m_j divisible by d = ord(t^i) of 1/m_j, summed as M/m_j.
inline Int isolated_fixed_points(const NecSignature& sig, Int modulus, Int i) {
  if (modulus <= 0 || mod(i, modulus) == 0) {
    throw std::invalid_argument("isolated_fixed_points: t^i must not be the identity");
  }
  Int d = image_order(modulus, i);
  Int total = 0;
  for (Int m : sig.periods) {
    if (m % d == 0) {
      if (modulus % m != 0) {
        throw std::invalid_argument("period " + std::to_string(m) + " does not divide M = " + std::to_string(modulus));
      }
      total += modulus / m;
    }
  }
  return total;
}

namespace detail {

inline void require_involution_data(const CyclicEpimorphism& epi) {
  if (epi.modulus % 2 != 0) throw InvalidEpimorphism("M is odd: C_M has no involution");
  if (!validate(epi).valid) throw InvalidEpimorphism("not a valid smooth epimorphism");
}

}  // namespace detail

inline std::vector<CycleOvals> twist_classification(const CyclicEpimorphism& epi) {
  detail::require_involution_data(epi);
  const Int n = epi.modulus / 2;
  std::vector<CycleOvals> out;
  out.reserve(epi.e_images.size());
  for (Int v : epi.e_images) {
    Int ovals = std::gcd(n, v);
    Int full = std::gcd(2 * n, v);
    if (full != ovals && full != 2 * ovals) {
      throw std::logic_error("gcd(2N, v) is neither gcd(N, v) nor 2 gcd(N, v)");
    }
    out.push_back({v, ovals, full == ovals});
  }
  return out;
}

inline Int oval_count(const CyclicEpimorphism& epi) {
  Int total = 0;
  for (const auto& c : twist_classification(epi)) total += c.oval_count;
  return total;
}

inline ScherrerStatus scherrer_check(Int isolated, Int ovals, Int genus) {
  Int slack = genus + 2 - isolated - 2 * ovals;
  return {slack >= 0, slack, slack == 0};
}

inline FixedPointReport full_report(const CyclicEpimorphism& epi) {
  ValidationReport vr = validate(epi);
  if (!vr.valid) throw InvalidEpimorphism("not a valid smooth epimorphism");
  FixedPointReport r;
  r.modulus = epi.modulus;
  r.kernel_genus = *vr.kernel_genus;
  for (Int i = 1; i < epi.modulus; ++i) {
    r.per_power.push_back({i, image_order(epi.modulus, i), isolated_fixed_points(epi.sig, epi.modulus, i)});
  }
  if (epi.modulus % 2 == 0) {
    InvolutionData inv;
    inv.per_cycle = twist_classification(epi);
    for (const auto& c : inv.per_cycle) inv.oval_total += c.oval_count;
    inv.isolated_total = isolated_fixed_points(epi.sig, epi.modulus, epi.modulus / 2);
    inv.scherrer_lhs = inv.isolated_total + 2 * inv.oval_total;
    inv.scherrer_rhs = r.kernel_genus + 2;
    inv.scherrer_equality = inv.scherrer_lhs == inv.scherrer_rhs;
    r.involution = std::move(inv);
  }
  return r;
}

inline std::optional<ScherrerStatus> scherrer_status(const FixedPointReport& r) {
  if (!r.involution) return std::nullopt;
  return scherrer_check(r.involution->isolated_total, r.involution->oval_total, r.kernel_genus);
}

}  // namespace klein
