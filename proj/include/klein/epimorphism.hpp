#pragma once

// Homomorphisms theta: Gamma -> C_M = <t>, stored as exponents of t on the
// canonical generators, and the checks that make theta a smooth epimorphism
// whose kernel is a non-orientable surface group.

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "klein/signature.hpp"

namespace klein {

inline Int mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

struct CyclicEpimorphism {
  NecSignature sig;
  Int modulus = 1;
  std::vector<Int> x_images;       // u_i, one per proper period
  std::vector<Int> e_images;       // v_j, one per empty period cycle
  std::vector<Int> c_images;       // one per empty period cycle
  std::vector<Int> orient_images;  // a_1,b_1,...,a_g,b_g (PLUS) or d_1..d_g (MINUS)

  CyclicEpimorphism() = default;
  CyclicEpimorphism(NecSignature s, Int m, std::vector<Int> x, std::vector<Int> e, std::vector<Int> c,
                    std::vector<Int> o)
      : sig(std::move(s)),
        modulus(m),
        x_images(std::move(x)),
        e_images(std::move(e)),
        c_images(std::move(c)),
        orient_images(std::move(o)) {
    if (modulus <= 0) throw std::invalid_argument("modulus must be positive");
    if (static_cast<Int>(x_images.size()) != sig.period_count() ||
        static_cast<Int>(e_images.size()) != sig.empty_cycles ||
        static_cast<Int>(c_images.size()) != sig.empty_cycles ||
        static_cast<Int>(orient_images.size()) != sig.orientation_generator_count()) {
      throw std::invalid_argument("image lists do not match signature " + format_signature(sig));
    }
    for (auto* v : {&x_images, &e_images, &c_images, &orient_images}) {
      for (Int& u : *v) u = mod(u, modulus);
    }
  }

  // x, e, c, orientation images concatenated; the order used for
  // lexicographic comparison in the census.
  std::vector<Int> image_tuple() const {
    std::vector<Int> t;
    t.reserve(x_images.size() + e_images.size() + c_images.size() + orient_images.size());
    for (const auto* v : {&x_images, &e_images, &c_images, &orient_images}) t.insert(t.end(), v->begin(), v->end());
    return t;
  }

  friend bool operator==(const CyclicEpimorphism&, const CyclicEpimorphism&) = default;
};

// Order of t^u in C_M.
inline Int image_order(Int modulus, Int u) { return modulus / std::gcd(modulus, mod(u, modulus)); }

// Sorted elements of <gens> in Z_M, by closure under addition. Deliberately
// free of gcd reasoning: the oracle builds on this routine.
inline std::vector<Int> subgroup_generated(Int modulus, const std::vector<Int>& gens) {
  std::vector<char> member(static_cast<std::size_t>(modulus), 0);
  std::vector<Int> frontier{0};
  member[0] = 1;
  while (!frontier.empty()) {
    Int h = frontier.back();
    frontier.pop_back();
    for (Int g : gens) {
      Int s = mod(h + g, modulus);
      if (!member[static_cast<std::size_t>(s)]) {
        member[static_cast<std::size_t>(s)] = 1;
        frontier.push_back(s);
      }
    }
  }
  std::vector<Int> out;
  for (Int i = 0; i < modulus; ++i) {
    if (member[static_cast<std::size_t>(i)]) out.push_back(i);
  }
  return out;
}

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  bool valid = false;
  std::vector<Check> checks;
  std::optional<Int> kernel_genus;

  const Check* find(std::string_view name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

namespace check_names {
inline constexpr std::string_view kReflections = "REFLECTIONS";
inline constexpr std::string_view kSmoothElliptic = "SMOOTH-ELLIPTIC";
inline constexpr std::string_view kLongRelation = "LONG-RELATION";
inline constexpr std::string_view kSurjective = "SURJECTIVE";
inline constexpr std::string_view kKernelNonOrientable = "KERNEL-NON-ORIENTABLE";
inline constexpr std::string_view kGenus = "GENUS";
}  // namespace check_names

// Images generating theta(Gamma+) in Z_M: orientation-preserving generators
// plus every sum of two orientation-reversing images (including doubles).
inline std::vector<Int> orientation_preserving_images(const CyclicEpimorphism& epi) {
  const Int m = epi.modulus;
  std::vector<Int> gens = epi.x_images;
  gens.insert(gens.end(), epi.e_images.begin(), epi.e_images.end());
  std::vector<Int> reversing = epi.c_images;
  if (epi.sig.sign == Sign::Plus) {
    gens.insert(gens.end(), epi.orient_images.begin(), epi.orient_images.end());
  } else {
    reversing.insert(reversing.end(), epi.orient_images.begin(), epi.orient_images.end());
  }
  for (std::size_t i = 0; i < reversing.size(); ++i) {
    for (std::size_t j = i; j < reversing.size(); ++j) gens.push_back(mod(reversing[i] + reversing[j], m));
  }
  return gens;
}

inline ValidationReport validate(const CyclicEpimorphism& epi) {
  using namespace check_names;
  const Int m = epi.modulus;
  const NecSignature& sig = epi.sig;
  ValidationReport report;
  auto record = [&](std::string_view name, bool pass, std::string detail) {
    report.checks.push_back({std::string(name), pass, std::move(detail)});
  };

  // (a) every reflection must go to the unique involution t^(M/2).
  {
    std::string detail;
    bool pass = true;
    if (sig.has_nonempty_cycles()) {
      pass = false;
      detail = "non-empty period cycle: two reflections with finite-order product cannot both map to t^(M/2)";
    } else if (sig.empty_cycles > 0 && m % 2 != 0) {
      pass = false;
      detail = "M odd: no involution available for reflections";
    } else {
      for (std::size_t j = 0; j < epi.c_images.size(); ++j) {
        if (epi.c_images[j] != m / 2) {
          pass = false;
          detail = "c" + std::to_string(j + 1) + " -> t^" + std::to_string(epi.c_images[j]) + ", expected t^" +
                   std::to_string(m / 2);
          break;
        }
      }
    }
    record(kReflections, pass, pass ? "ok" : detail);
  }

  // (b) smoothness on elliptic generators.
  {
    bool pass = true;
    std::string detail = "ok";
    for (std::size_t i = 0; i < epi.x_images.size(); ++i) {
      Int ord = image_order(m, epi.x_images[i]);
      if (ord != sig.periods[i]) {
        pass = false;
        detail = "x" + std::to_string(i + 1) + " -> t^" + std::to_string(epi.x_images[i]) + " has order " +
                 std::to_string(ord) + ", period is " + std::to_string(sig.periods[i]);
        break;
      }
    }
    record(kSmoothElliptic, pass, detail);
  }

  // (c) abelianized long relation.
  {
    Int sum = 0;
    for (Int u : epi.x_images) sum += u;
    for (Int v : epi.e_images) sum += v;
    if (sig.sign == Sign::Minus) {
      for (Int w : epi.orient_images) sum += 2 * w;
    }
    Int r = mod(sum, m);
    record(kLongRelation, r == 0,
           "sum = " + std::to_string(sum) + " = " + std::to_string(r) + " (mod " + std::to_string(m) + ")");
  }

  // (d) surjectivity.
  {
    auto all = epi.image_tuple();
    Int size = static_cast<Int>(subgroup_generated(m, all).size());
    record(kSurjective, size == m, "image has order " + std::to_string(size) + " of " + std::to_string(m));
  }

  // (e) theta(Gamma+) = C_M, i.e. the kernel contains orientation-reversing
  // elements. Without reversing generators Gamma+ = Gamma and K is orientable.
  {
    bool has_reversing = sig.empty_cycles > 0 || sig.has_nonempty_cycles() || sig.sign == Sign::Minus;
    if (!has_reversing) {
      record(kKernelNonOrientable, false, "no orientation-reversing generators: kernel is orientable");
    } else {
      Int size = static_cast<Int>(subgroup_generated(m, orientation_preserving_images(epi)).size());
      record(kKernelNonOrientable, size == m,
             "theta(Gamma+) has order " + std::to_string(size) + " of " + std::to_string(m));
    }
  }

  // (f) kernel genus is an integer >= 3.
  {
    try {
      Int p = kernel_genus(sig, m);
      bool pass = p >= 3;
      if (pass) report.kernel_genus = p;
      record(kGenus, pass, "p = " + std::to_string(p));
    } catch (const GenusError& err) {
      record(kGenus, false, err.what());
    }
  }

  report.valid = std::all_of(report.checks.begin(), report.checks.end(), [](const Check& c) { return c.pass; });
  if (!report.valid) report.kernel_genus.reset();
  return report;
}

// --- map text form: "x=7,2; e=5; c=7; d=" ---------------------------------

class MapError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Sections x, e, c, a, b, d. Omitted c defaults to M/2 for each empty cycle;
// for PLUS the a and b lists are interleaved as a_1,b_1,a_2,b_2,...
inline CyclicEpimorphism parse_map(const NecSignature& sig, Int modulus, std::string_view text) {
  std::optional<std::vector<Int>> x, e, c, a, b, d;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) {
    throw MapError("map position " + std::to_string(pos + 1) + ": " + what);
  };
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  while (true) {
    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] == ';') {
      ++pos;
      continue;
    }
    char key = text[pos++];
    std::optional<std::vector<Int>>* slot = nullptr;
    switch (key) {
      case 'x': slot = &x; break;
      case 'e': slot = &e; break;
      case 'c': slot = &c; break;
      case 'a': slot = &a; break;
      case 'b': slot = &b; break;
      case 'd': slot = &d; break;
      default: --pos; fail(std::string("unknown section '") + key + "'");
    }
    if (slot->has_value()) fail(std::string("duplicate section '") + key + "'");
    skip_ws();
    if (pos >= text.size() || text[pos] != '=') fail("expected '='");
    ++pos;
    std::vector<Int> values;
    skip_ws();
    while (pos < text.size() && text[pos] != ';') {
      bool neg = false;
      if (text[pos] == '-') {
        neg = true;
        ++pos;
      }
      std::size_t start = pos;
      Int v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        v = v * 10 + (text[pos] - '0');
        if (v > (Int{1} << 40)) fail("exponent too large");
        ++pos;
      }
      if (pos == start) fail("expected integer");
      values.push_back(neg ? -v : v);
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        skip_ws();
      } else {
        break;
      }
    }
    skip_ws();
    if (pos < text.size() && text[pos] != ';') fail("expected ';' or ','");
    *slot = std::move(values);
  }

  auto need = [&](const std::optional<std::vector<Int>>& v, Int count, char key) {
    std::vector<Int> out = v.value_or(std::vector<Int>{});
    if (static_cast<Int>(out.size()) != count) {
      throw MapError(std::string("section '") + key + "' needs " + std::to_string(count) + " value(s), got " +
                     std::to_string(out.size()));
    }
    return out;
  };

  std::vector<Int> xs = need(x, sig.period_count(), 'x');
  std::vector<Int> es = need(e, sig.empty_cycles, 'e');
  std::vector<Int> cs = c ? need(c, sig.empty_cycles, 'c') : std::vector<Int>(sig.empty_cycles, modulus / 2);
  std::vector<Int> orient;
  if (sig.sign == Sign::Plus) {
    if (d && !d->empty()) throw MapError("section 'd' is only valid for sign '-'");
    auto as = need(a, sig.genus, 'a');
    auto bs = need(b, sig.genus, 'b');
    for (Int i = 0; i < sig.genus; ++i) {
      orient.push_back(as[i]);
      orient.push_back(bs[i]);
    }
  } else {
    if ((a && !a->empty()) || (b && !b->empty())) throw MapError("sections 'a'/'b' are only valid for sign '+'");
    orient = need(d, sig.genus, 'd');
  }
  return {sig, modulus, std::move(xs), std::move(es), std::move(cs), std::move(orient)};
}

inline std::string format_map(const CyclicEpimorphism& epi) {
  auto list = [](const std::vector<Int>& v) {
    std::string s;
    detail::append_list(s, v);
    return s;
  };
  std::string out = "x=" + list(epi.x_images) + ";e=" + list(epi.e_images) + ";c=" + list(epi.c_images);
  if (epi.sig.sign == Sign::Plus) {
    std::vector<Int> as, bs;
    for (std::size_t i = 0; i + 1 < epi.orient_images.size(); i += 2) {
      as.push_back(epi.orient_images[i]);
      bs.push_back(epi.orient_images[i + 1]);
    }
    out += ";a=" + list(as) + ";b=" + list(bs);
  } else {
    out += ";d=" + list(epi.orient_images);
  }
  return out;
}

}  // namespace klein
