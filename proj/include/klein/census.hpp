#pragma once

// Exhaustive enumeration of signatures and smooth epimorphisms onto C_M for
// bounded kernel genus, with the fixed-point report attached to every row.
//
// Search space for (M, max_genus): mu = M^-1 (p - 2) <= B := (max_genus - 2)/M,
// so alpha*g + k + sum(1 - 1/m_i) <= B + 2. Each period contributes >= 1/2,
// which caps n at 2(B + 2); g and k are capped the same way. Periods must
// divide M (an element of order m_i must exist in C_M).

#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "klein/epimorphism.hpp"
#include "klein/fixedpoints.hpp"
#include "klein/oracle.hpp"
#include "klein/signature.hpp"

namespace klein {

inline std::vector<NecSignature> enumerate_signatures(Int modulus, Int max_genus) {
  std::vector<NecSignature> out;
  if (modulus <= 0 || max_genus < 3) return out;
  const Rational budget = Rational(max_genus - 2, modulus) + Rational(2);

  std::vector<Int> divisors;
  for (Int m = 2; m <= modulus; ++m) {
    if (modulus % m == 0) divisors.push_back(m);
  }

  auto consider = [&](const NecSignature& sig) {
    Rational mu = orbifold_measure(sig);
    if (mu <= Rational(0)) return;
    Rational p = Rational(modulus) * mu + Rational(2);
    if (p.is_integer() && p.numerator() >= 3 && p.numerator() <= max_genus) out.push_back(sig);
  };

  for (Sign sign : {Sign::Plus, Sign::Minus}) {
    const Int alpha = sign == Sign::Plus ? 2 : 1;
    for (Int g = sign == Sign::Minus ? 1 : 0; Rational(alpha * g) <= budget; ++g) {
      for (Int k = 0; Rational(alpha * g + k) <= budget; ++k) {
        NecSignature sig;
        sig.genus = g;
        sig.sign = sign;
        sig.empty_cycles = k;
        // DFS over non-decreasing period lists; prefixes come first, so the
        // output is lexicographic in the period list.
        std::function<void(std::size_t, Rational)> extend = [&](std::size_t from, Rational used) {
          consider(sig);
          for (std::size_t d = from; d < divisors.size(); ++d) {
            Rational next = used + Rational(divisors[d] - 1, divisors[d]);
            if (next > budget) break;
            sig.periods.push_back(divisors[d]);
            extend(d, next);
            sig.periods.pop_back();
          }
        };
        extend(0, Rational(alpha * g + k));
      }
    }
  }
  return out;
}

inline std::vector<Int> units_mod(Int modulus) {
  std::vector<Int> units;
  for (Int u = 1; u <= std::max<Int>(modulus - 1, 1); ++u) {
    if (std::gcd(u, modulus) == 1) units.push_back(u);
  }
  return units;
}

inline CyclicEpimorphism scale(const CyclicEpimorphism& epi, Int unit) {
  auto mul = [&](std::vector<Int> v) {
    for (Int& x : v) x = mod(x * unit, epi.modulus);
    return v;
  };
  return {epi.sig, epi.modulus, mul(epi.x_images), mul(epi.e_images), mul(epi.c_images), mul(epi.orient_images)};
}

// Lexicographically least image tuple in the Aut(C_M) orbit.
inline bool is_canonical(const CyclicEpimorphism& epi) {
  const auto base = epi.image_tuple();
  for (Int u : units_mod(epi.modulus)) {
    if (scale(epi, u).image_tuple() < base) return false;
  }
  return true;
}

namespace detail {

// Calls visit(epi) for every valid epimorphism in lexicographic tuple order;
// stops early when visit returns false.
template <class Visit>
void for_each_epimorphism(const NecSignature& sig, Int modulus, Visit&& visit) {
  if (modulus <= 0 || sig.has_nonempty_cycles()) return;
  if (orbifold_measure(sig) <= Rational(0)) return;
  if (sig.empty_cycles > 0 && modulus % 2 != 0) return;

  std::vector<std::vector<Int>> choices;
  for (Int m : sig.periods) {
    std::vector<Int> c;
    for (Int u = 0; u < modulus; ++u) {
      if (image_order(modulus, u) == m) c.push_back(u);
    }
    if (c.empty()) return;
    choices.push_back(std::move(c));
  }
  std::vector<Int> all(static_cast<std::size_t>(modulus));
  std::iota(all.begin(), all.end(), 0);
  for (Int j = 0; j < sig.empty_cycles; ++j) choices.push_back(all);
  const std::size_t fixed_prefix = choices.size();
  for (Int l = 0; l < sig.orientation_generator_count(); ++l) choices.push_back(all);

  const std::size_t n = static_cast<std::size_t>(sig.period_count());
  const std::size_t k = static_cast<std::size_t>(sig.empty_cycles);
  const std::vector<Int> reflections(k, modulus / 2);
  std::vector<Int> current(choices.size());
  bool keep_going = true;

  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (!keep_going) return;
    if (depth == choices.size()) {
      Int sum = 0;
      for (std::size_t i = 0; i < fixed_prefix; ++i) sum += current[i];
      for (std::size_t i = fixed_prefix; i < current.size(); ++i) sum += sig.sign == Sign::Minus ? 2 * current[i] : 0;
      if (mod(sum, modulus) != 0) return;
      CyclicEpimorphism epi(sig, modulus, {current.begin(), current.begin() + static_cast<std::ptrdiff_t>(n)},
                            {current.begin() + static_cast<std::ptrdiff_t>(n),
                             current.begin() + static_cast<std::ptrdiff_t>(n + k)},
                            reflections, {current.begin() + static_cast<std::ptrdiff_t>(fixed_prefix), current.end()});
      if (validate(epi).valid) keep_going = visit(std::move(epi));
      return;
    }
    for (Int u : choices[depth]) {
      current[depth] = u;
      rec(depth + 1);
      if (!keep_going) return;
    }
  };
  rec(0);
}

}  // namespace detail

inline std::vector<CyclicEpimorphism> enumerate_epimorphisms(const NecSignature& sig, Int modulus, bool up_to_aut) {
  std::vector<CyclicEpimorphism> out;
  detail::for_each_epimorphism(sig, modulus, [&](CyclicEpimorphism epi) {
    if (!up_to_aut || is_canonical(epi)) out.push_back(std::move(epi));
    return true;
  });
  return out;
}

inline bool epimorphism_exists(const NecSignature& sig, Int modulus) {
  bool found = false;
  detail::for_each_epimorphism(sig, modulus, [&](const CyclicEpimorphism&) {
    found = true;
    return false;
  });
  return found;
}

struct CensusRow {
  CyclicEpimorphism epi;
  Int kernel_genus = 0;
  FixedPointReport report;
  bool scherrer_equality = false;
  bool canonical = false;
  std::optional<bool> oracle_agreement;

  const NecSignature& signature() const { return epi.sig; }
  Int modulus() const { return epi.modulus; }

  // Signature plus (period, image) pairs and e images sorted, so rows that
  // differ only by permuting equal periods or cycles share a key.
  std::string shadow_key() const {
    std::vector<std::pair<Int, Int>> xs;
    for (std::size_t i = 0; i < epi.x_images.size(); ++i) xs.emplace_back(epi.sig.periods[i], epi.x_images[i]);
    std::sort(xs.begin(), xs.end());
    CyclicEpimorphism sorted = epi;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sorted.sig.periods[i] = xs[i].first;
      sorted.x_images[i] = xs[i].second;
    }
    std::sort(sorted.e_images.begin(), sorted.e_images.end());
    return format_signature(sorted.sig) + "|" + std::to_string(epi.modulus) + "|" + format_map(sorted);
  }
};

inline CensusRow make_row(CyclicEpimorphism epi, bool verify) {
  CensusRow row;
  row.report = full_report(epi);
  row.kernel_genus = row.report.kernel_genus;
  row.scherrer_equality = row.report.involution && row.report.involution->scherrer_equality;
  row.canonical = is_canonical(epi);
  if (verify) row.oracle_agreement = oracle::cross_check(epi).agreement;
  row.epi = std::move(epi);
  return row;
}

struct CensusOptions {
  std::vector<Int> moduli;
  Int max_genus = 3;
  bool up_to_aut = false;
  bool verify = false;
  unsigned workers = 1;
};

class ScherrerViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Rows ordered by the position of M in opts.moduli, then signature
// enumeration order, then image tuple; independent of worker count.
inline std::vector<CensusRow> run_census(const CensusOptions& opts) {
  struct Task {
    Int modulus;
    NecSignature sig;
  };
  std::vector<Task> tasks;
  for (Int m : opts.moduli) {
    for (auto& sig : enumerate_signatures(m, opts.max_genus)) tasks.push_back({m, std::move(sig)});
  }
  std::vector<std::vector<CensusRow>> blocks(tasks.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      for (auto& epi : enumerate_epimorphisms(tasks[t].sig, tasks[t].modulus, opts.up_to_aut)) {
        blocks[t].push_back(make_row(std::move(epi), opts.verify));
      }
    }
  };
  unsigned workers = std::max(1u, opts.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  std::vector<CensusRow> rows;
  for (auto& b : blocks) {
    for (auto& r : b) {
      auto status = scherrer_status(r.report);
      if (status && !status->holds) {
        throw ScherrerViolation("Scherrer bound violated by " + format_signature(r.epi.sig) + " M=" +
                                std::to_string(r.epi.modulus) + " " + format_map(r.epi));
      }
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

inline std::vector<CensusRow> scherrer_extremal(Int modulus, Int max_genus, unsigned workers = 1) {
  CensusOptions opts;
  opts.moduli = {modulus};
  opts.max_genus = max_genus;
  opts.workers = workers;
  auto rows = run_census(opts);
  std::erase_if(rows, [](const CensusRow& r) { return !r.scherrer_equality; });
  return rows;
}

inline constexpr Int kDefaultMaxOrderGenusCap = 12;

// Largest M <= 2p + 2 admitting a valid action on the genus-p surface.
inline Int max_cyclic_order(Int genus, Int cap = kDefaultMaxOrderGenusCap) {
  if (genus < 3) throw std::invalid_argument("max_cyclic_order: genus must be >= 3");
  if (genus > cap) {
    throw std::invalid_argument("max_cyclic_order: genus " + std::to_string(genus) + " exceeds cap " +
                                std::to_string(cap));
  }
  for (Int m = 2 * genus + 2; m >= 2; --m) {
    for (const auto& sig : enumerate_signatures(m, genus)) {
      if (kernel_genus(sig, m) == genus && epimorphism_exists(sig, m)) return m;
    }
  }
  throw std::logic_error("max_cyclic_order: no action found for genus " + std::to_string(genus));
}

}  // namespace klein
