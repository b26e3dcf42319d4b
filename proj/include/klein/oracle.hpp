#pragma once

// Brute-force re-derivation of the fixed-point counts inside the finite
// quotient Gamma/K = Z_M. Nothing on this path calls gcd: subgroup sizes come
// from closure enumeration, exponents from linear search, fixed points from
// explicit coset enumeration. Lambda = theta^-1(<t^N>) is modelled by the
// subgroup {0, N} of Z_M.

#include <stdexcept>
#include <string>
#include <vector>

#include "klein/epimorphism.hpp"
#include "klein/fixedpoints.hpp"

namespace klein::oracle {

struct Exponents {
  Int delta = 0;    // least d >= 1 with d*v in {0, N}  (exponent of e_j mod Lambda)
  Int epsilon = 0;  // least d >= 1 with d*v = 0       (exponent of e_j mod K)
};

struct CycleTranscript {
  Int v = 0;
  Int delta = 0;
  Int epsilon = 0;
  Int class_count_doublecoset = 0;
  Int class_count_exponent = 0;
  bool twisted_by_theta_prime = false;
};

struct PowerCycleFixed {
  Int i = 0;
  Int j = 0;  // 1-based period index
  Int fixed = 0;
};

struct OracleTranscript {
  std::vector<CycleTranscript> per_cycle;
  std::vector<PowerCycleFixed> per_power_fixed;
  bool agreement = false;
  std::string first_disagreement;
};

namespace detail {

inline void require_even(Int modulus) {
  if (modulus <= 0 || modulus % 2 != 0) throw std::invalid_argument("oracle: M must be even and positive");
}

}  // namespace detail

// Lambda-conjugacy classes of c_j: |Lambda \ Gamma / C(c_j)| = [Z_M : <M/2, v>].
inline Int oval_classes_doublecoset(Int modulus, Int v) {
  detail::require_even(modulus);
  auto h = subgroup_generated(modulus, {modulus / 2, mod(v, modulus)});
  return modulus / static_cast<Int>(h.size());
}

inline Exponents exponents(Int modulus, Int v) {
  detail::require_even(modulus);
  const Int n = modulus / 2;
  v = mod(v, modulus);
  Exponents ex;
  Int acc = 0;
  for (Int d = 1; d <= modulus; ++d) {
    acc = mod(acc + v, modulus);
    if (ex.delta == 0 && (acc == 0 || acc == n)) ex.delta = d;
    if (acc == 0) {
      ex.epsilon = d;
      break;
    }
  }
  if (ex.delta == 0 || ex.epsilon == 0 || n % ex.delta != 0 || modulus % ex.epsilon != 0) {
    throw std::logic_error("oracle: exponent search out of range");
  }
  return ex;
}

// theta'(e^delta) = xi, i.e. epsilon = 2 delta.
inline bool twist_oracle(Int modulus, Int v) {
  Exponents ex = exponents(modulus, v);
  return ex.epsilon == 2 * ex.delta;
}

// Points over the j-th cone point form Z_M / <u_j>, with t acting by +1.
// Count cosets C with C + i = C, for the j-th period alone.
inline Int coset_orbit_fixed_points_single(Int modulus, Int u, Int i) {
  auto h = subgroup_generated(modulus, {u});
  std::vector<char> in_h(static_cast<std::size_t>(modulus), 0);
  for (Int x : h) in_h[static_cast<std::size_t>(x)] = 1;
  std::vector<char> seen(static_cast<std::size_t>(modulus), 0);
  Int fixed = 0;
  for (Int rep = 0; rep < modulus; ++rep) {
    if (seen[static_cast<std::size_t>(rep)]) continue;
    for (Int x : h) seen[static_cast<std::size_t>(mod(rep + x, modulus))] = 1;
    Int shifted = mod(rep + i, modulus);
    // shifted lies in rep + H iff shifted - rep in H
    if (in_h[static_cast<std::size_t>(mod(shifted - rep, modulus))]) ++fixed;
  }
  return fixed;
}

inline Int coset_orbit_fixed_points(const NecSignature& sig, Int modulus, const std::vector<Int>& x_images, Int i) {
  if (static_cast<Int>(x_images.size()) != sig.period_count()) {
    throw std::invalid_argument("oracle: one image per period required");
  }
  Int total = 0;
  for (std::size_t j = 0; j < x_images.size(); ++j) {
    Int size = static_cast<Int>(subgroup_generated(modulus, {x_images[j]}).size());
    if (size != sig.periods[j]) {
      throw std::invalid_argument("oracle: smoothness violated at x" + std::to_string(j + 1));
    }
    total += coset_orbit_fixed_points_single(modulus, x_images[j], i);
  }
  return total;
}

inline OracleTranscript cross_check(const CyclicEpimorphism& epi) {
  if (!validate(epi).valid) throw InvalidEpimorphism("oracle: not a valid smooth epimorphism");
  const Int m = epi.modulus;
  OracleTranscript t;
  t.agreement = true;
  auto disagree = [&](const std::string& what) {
    if (t.agreement) t.first_disagreement = what;
    t.agreement = false;
  };

  if (m % 2 == 0) {
    const Int n = m / 2;
    auto formula = twist_classification(epi);
    for (std::size_t j = 0; j < epi.e_images.size(); ++j) {
      Int v = epi.e_images[j];
      CycleTranscript c;
      c.v = v;
      Exponents ex = exponents(m, v);
      c.delta = ex.delta;
      c.epsilon = ex.epsilon;
      c.class_count_doublecoset = oval_classes_doublecoset(m, v);
      c.class_count_exponent = n / ex.delta;
      c.twisted_by_theta_prime = mod(ex.delta * v, m) == n;
      std::string tag = "cycle " + std::to_string(j + 1) + " (M=" + std::to_string(m) + ", v=" + std::to_string(v) + ")";
      if (c.epsilon != c.delta && c.epsilon != 2 * c.delta) disagree(tag + ": epsilon not in {delta, 2 delta}");
      if (c.class_count_doublecoset != c.class_count_exponent) disagree(tag + ": double-coset count != N/delta");
      if (c.class_count_doublecoset != formula[j].oval_count) disagree(tag + ": class count != gcd(N, v)");
      if (c.twisted_by_theta_prime != (c.epsilon == 2 * c.delta)) disagree(tag + ": theta'(e^delta) != epsilon test");
      if (c.twisted_by_theta_prime != formula[j].twisted) disagree(tag + ": twist disagrees with gcd criterion");
      t.per_cycle.push_back(c);
    }
  }

  for (Int i = 1; i < m; ++i) {
    Int total = 0;
    for (std::size_t j = 0; j < epi.x_images.size(); ++j) {
      Int f = coset_orbit_fixed_points_single(m, epi.x_images[j], i);
      t.per_power_fixed.push_back({i, static_cast<Int>(j + 1), f});
      total += f;
    }
    Int expected = isolated_fixed_points(epi.sig, m, i);
    if (total != expected) {
      disagree("power i=" + std::to_string(i) + ": coset count " + std::to_string(total) + " != Macbeath " +
               std::to_string(expected));
    }
  }
  return t;
}

struct SweepFailure {
  Int modulus = 0;
  Int v = 0;
  std::string what;
};

// Exhaustive check over v in [0, M) of the double-coset count, N/delta,
// gcd(N, v), and the twist criteria. Returns the first failure, if any.
inline std::optional<SweepFailure> sweep_modulus(Int modulus, std::vector<CycleTranscript>* rows = nullptr) {
  detail::require_even(modulus);
  const Int n = modulus / 2;
  for (Int v = 0; v < modulus; ++v) {
    Exponents ex = exponents(modulus, v);
    CycleTranscript c{v, ex.delta, ex.epsilon, oval_classes_doublecoset(modulus, v), n / ex.delta,
                      mod(ex.delta * v, modulus) == n};
    if (rows) rows->push_back(c);
    Int g_half = std::gcd(n, v);
    Int g_full = std::gcd(modulus, v);
    if (c.epsilon != c.delta && c.epsilon != 2 * c.delta) return SweepFailure{modulus, v, "epsilon not in {delta, 2 delta}"};
    if (c.class_count_doublecoset != c.class_count_exponent || c.class_count_doublecoset != g_half) {
      return SweepFailure{modulus, v, "class counts disagree"};
    }
    if (c.twisted_by_theta_prime != (c.epsilon == 2 * c.delta) || c.twisted_by_theta_prime != (g_full == g_half)) {
      return SweepFailure{modulus, v, "twist criteria disagree"};
    }
  }
  return std::nullopt;
}

}  // namespace klein::oracle
