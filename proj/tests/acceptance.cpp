// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure. All comparisons are exact integer equalities.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "klein/klein.hpp"

using namespace klein;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

unsigned worker_count() { return std::max(1u, std::min(8u, std::thread::hardware_concurrency())); }

CyclicEpimorphism example_one(Int p) {
  if (p % 2) {
    return {parse_signature("(0;+;[2," + std::to_string(p) + "];{()})"), 2 * p, {p, 2}, {p - 2}, {p}, {}};
  }
  Int m = 2 * (p - 1);
  return {parse_signature("(0;+;[2," + std::to_string(m) + "];{()})"), m, {p - 1, 1}, {p - 2}, {p - 1}, {}};
}

// (0;+;[2^(r),4,4];{()^k}) with order-2 generators -> t^2, the order-4 pair
// -> t, t^-1, connecting generators -> 1.
CyclicEpimorphism example_two(Int r, Int k) {
  NecSignature sig;
  sig.periods.assign(static_cast<std::size_t>(r), 2);
  sig.periods.push_back(4);
  sig.periods.push_back(4);
  sig.empty_cycles = k;
  std::vector<Int> x(static_cast<std::size_t>(r), 2);
  x.push_back(1);
  x.push_back(3);
  return {sig, 4, x, std::vector<Int>(static_cast<std::size_t>(k), 0), std::vector<Int>(static_cast<std::size_t>(k), 2),
          {}};
}

Outcome example_one_family(const std::vector<Int>& genera, bool expect_twisted) {
  Outcome o;
  for (Int p : genera) {
    auto epi = example_one(p);
    auto vr = validate(epi);
    if (!vr.valid) {
      o.fail("p=" + std::to_string(p) + ": map does not validate");
      continue;
    }
    auto r = full_report(epi);
    const auto& inv = *r.involution;
    auto s = scherrer_status(r);
    if (r.kernel_genus != p || inv.isolated_total != p || inv.oval_total != 1 || inv.per_cycle.size() != 1 ||
        inv.per_cycle[0].twisted != expect_twisted || s->slack != 0) {
      o.fail("p=" + std::to_string(p) + ": genus " + std::to_string(r.kernel_genus) + ", F=" +
             std::to_string(inv.isolated_total) + ", V=" + std::to_string(inv.oval_total) + ", slack " +
             std::to_string(s->slack));
    }
  }
  return o;
}

Outcome criterion_example_one_odd() { return example_one_family({3, 5, 7, 9, 11}, true); }

Outcome criterion_example_one_even() { return example_one_family({4, 6, 8, 10}, false); }

Outcome criterion_example_two() {
  Outcome o;
  for (Int r : {0, 2, 4}) {
    for (Int k : {1, 2, 3}) {
      auto epi = example_two(r, k);
      std::string tag = "r=" + std::to_string(r) + " k=" + std::to_string(k);
      if (!validate(epi).valid) {
        o.fail(tag + ": map does not validate");
        continue;
      }
      auto rep = full_report(epi);
      const auto& inv = *rep.involution;
      if (inv.isolated_total != 2 * r + 2 || inv.oval_total != 2 * k || rep.kernel_genus != 4 * k + 2 * r ||
          !inv.scherrer_equality) {
        o.fail(tag + ": F=" + std::to_string(inv.isolated_total) + " V=" + std::to_string(inv.oval_total) +
               " p=" + std::to_string(rep.kernel_genus));
      }
    }
  }
  return o;
}

Outcome criterion_oval_count_oracle() {
  Outcome o;
  for (Int m = 2; m <= 100; m += 2) {
    const Int n = m / 2;
    for (Int v = 0; v < m; ++v) {
      Int doublecoset = oracle::oval_classes_doublecoset(m, v);
      Int via_delta = n / oracle::exponents(m, v).delta;
      if (doublecoset != std::gcd(n, v) || via_delta != doublecoset) {
        o.fail("M=" + std::to_string(m) + " v=" + std::to_string(v));
      }
    }
  }
  return o;
}

Outcome criterion_twist_oracle() {
  Outcome o;
  for (Int m = 2; m <= 100; m += 2) {
    for (Int v = 0; v < m; ++v) {
      auto ex = oracle::exponents(m, v);
      bool dichotomy = ex.epsilon == ex.delta || ex.epsilon == 2 * ex.delta;
      bool criterion = std::gcd(m, v) == std::gcd(m / 2, v);
      if (!dichotomy || oracle::twist_oracle(m, v) != criterion) {
        o.fail("M=" + std::to_string(m) + " v=" + std::to_string(v));
      }
    }
  }
  return o;
}

std::vector<CensusRow> small_census() {
  CensusOptions opts;
  for (Int m = 2; m <= 20; ++m) opts.moduli.push_back(m);
  opts.max_genus = 12;
  opts.verify = true;
  opts.workers = worker_count();
  return run_census(opts);
}

Outcome criterion_macbeath_oracle(const std::vector<CensusRow>& rows) {
  Outcome o;
  if (rows.empty()) o.fail("census produced no rows");
  std::size_t checked = 0;
  for (const auto& r : rows) {
    for (Int i = 1; i < r.modulus(); ++i) {
      Int brute = oracle::coset_orbit_fixed_points(r.signature(), r.modulus(), r.epi.x_images, i);
      if (brute != isolated_fixed_points(r.signature(), r.modulus(), i)) {
        o.fail(format_signature(r.signature()) + " M=" + std::to_string(r.modulus()) + " i=" + std::to_string(i));
      }
      ++checked;
    }
    if (!r.oracle_agreement.value_or(false)) o.fail("cross_check disagreement on " + format_map(r.epi));
  }
  if (o.pass) o.detail = std::to_string(rows.size()) + " epimorphisms, " + std::to_string(checked) + " powers";
  return o;
}

Outcome criterion_max_order() {
  Outcome o;
  for (Int p = 3; p <= 8; ++p) {
    Int expected = p % 2 ? 2 * p : 2 * (p - 1);
    Int got = max_cyclic_order(p);
    if (got != expected) {
      o.fail("p=" + std::to_string(p) + ": " + std::to_string(got) + " != " + std::to_string(expected));
    }
  }
  return o;
}

Outcome criterion_scherrer_global(const std::vector<CensusRow>& rows) {
  Outcome o;
  std::size_t with_involution = 0;
  for (const auto& r : rows) {
    auto s = scherrer_status(r.report);
    if (!s) continue;
    ++with_involution;
    if (!s->holds) o.fail("violated by " + format_signature(r.signature()) + " " + format_map(r.epi));
  }
  for (Int m = 1; m <= 3; ++m) {
    Int order = 4 * m;
    auto fam = parse_signature("(0;+;[" + std::to_string(order) + "," + std::to_string(order) + "];{()})");
    bool found = false;
    for (const auto& r : rows) {
      if (r.modulus() == order && r.signature() == fam && r.scherrer_equality) found = true;
    }
    if (!found) o.fail("no equality row for M=" + std::to_string(order));
  }
  if (o.pass) o.detail = std::to_string(with_involution) + " rows with an involution";
  return o;
}

Outcome criterion_parser() {
  Outcome o;
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    NecSignature sig;
    sig.sign = rng() % 2 ? Sign::Plus : Sign::Minus;
    sig.genus = static_cast<Int>(rng() % 6) + (sig.sign == Sign::Minus ? 1 : 0);
    for (Int n = static_cast<Int>(rng() % 7); n > 0; --n) sig.periods.push_back(2 + static_cast<Int>(rng() % 50));
    sig.empty_cycles = static_cast<Int>(rng() % 5);
    if (rng() % 5 == 0) sig.nonempty_cycles.push_back({2 + static_cast<Int>(rng() % 6), 2});
    if (!(parse_signature(format_signature(sig)) == sig)) o.fail("round trip failed for " + format_signature(sig));
  }
  const char* malformed[] = {"", "(0;+;[2,7];{()}", "(0;+;[1];{})", "(0;-;[];{})", "(x;+;[];{})", "(0;+;[2,7];{()})z"};
  for (const char* text : malformed) {
    try {
      parse_signature(text);
      o.fail(std::string("accepted ") + text);
    } catch (const SignatureError& e) {
      if (e.position() == 0 || std::string(e.what()).find("position") == std::string::npos) {
        o.fail(std::string("no position for ") + text);
      }
    }
  }
  return o;
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  int failures = 0;
  auto report = [&](int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
    auto start = Clock::now();
    Outcome o = body();
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (secs >= limit_s) o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(limit_s) + " s");
    std::printf("[%s] %d. %s (%.3f s)%s%s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  };

  report(1, "Example 1, odd genus: F = p, one twisted oval, Scherrer slack 0", 1.0, criterion_example_one_odd);
  report(2, "Example 1, even genus: F = p, one untwisted oval", 1.0, criterion_example_one_even);
  report(3, "Example 2: F = 2r+2, V = 2k, p = 4k+2r, Scherrer equality", 1.0, criterion_example_two);
  report(4, "Oval count: double cosets = gcd(N, v) = N/delta, even M <= 100", 10.0, criterion_oval_count_oracle);
  report(5, "Twist: theta' criterion = gcd criterion, epsilon in {delta, 2 delta}", 10.0, criterion_twist_oracle);

  std::vector<CensusRow> rows;
  double census_secs = 0;
  report(6, "Macbeath formula = coset enumeration, census M <= 20, p <= 12", 120.0, [&] {
    auto start = Clock::now();
    try {
      rows = small_census();
    } catch (const ScherrerViolation& e) {
      Outcome o;
      o.fail(e.what());
      return o;
    }
    census_secs = std::chrono::duration<double>(Clock::now() - start).count();
    return criterion_macbeath_oracle(rows);
  });
  report(7, "Maximal order: 2p (p odd), 2(p-1) (p even), p = 3..8", 300.0, criterion_max_order);
  report(8, "Scherrer bound on every census row; M = 4m equality rows", 120.0 - census_secs,
         [&] { return criterion_scherrer_global(rows); });
  report(9, "Parser: 1000 random round trips, positioned errors", 1.0, criterion_parser);

  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
