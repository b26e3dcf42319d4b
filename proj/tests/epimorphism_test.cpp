#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "klein/epimorphism.hpp"

using namespace klein;

namespace {

CyclicEpimorphism epi(const char* sig, Int m, std::vector<Int> x, std::vector<Int> e, std::vector<Int> c,
                      std::vector<Int> o = {})
{
  return {parse_signature(sig), m, std::move(x), std::move(e), std::move(c), std::move(o)};
}

bool passed(const ValidationReport& r, std::string_view name)
{
  const Check* c = r.find(name);
  return c && c->pass;
}

}  // namespace

TEST(EpimorphismTest, ImageOrder)
{
  EXPECT_EQ(2, image_order(14, 7));
  EXPECT_EQ(7, image_order(14, 2));
  EXPECT_EQ(1, image_order(4, 0));
  EXPECT_EQ(14, image_order(14, 3));
}

TEST(EpimorphismTest, SubgroupGenerated)
{
  EXPECT_EQ((std::vector<Int>{0, 4, 8}), subgroup_generated(12, {8}));
  EXPECT_EQ(14u, subgroup_generated(14, {7, 2}).size());
  EXPECT_EQ((std::vector<Int>{0}), subgroup_generated(4, {}));
}

TEST(EpimorphismTest, SubgroupGeneratedIsASubgroup)
{
  for (Int m = 1; m <= 40; ++m) {
    for (Int u = 0; u < m; ++u) {
      for (Int w : {Int{0}, Int{1}, m / 2, m - 1}) {
        auto h = subgroup_generated(m, {u, w});
        std::vector<char> in(static_cast<std::size_t>(m), 0);
        for (Int x : h) in[static_cast<std::size_t>(x)] = 1;
        ASSERT_TRUE(in[0]);
        ASSERT_EQ(0, m % static_cast<Int>(h.size()));
        for (Int a : h) {
          for (Int b : h) ASSERT_TRUE(in[static_cast<std::size_t>((a + b) % m)]);
        }
      }
      // cyclic subgroup size times gcd recovers M
      EXPECT_EQ(m, static_cast<Int>(subgroup_generated(m, {u}).size()) * std::gcd(m, u)) << m << " " << u;
    }
  }
}

TEST(EpimorphismTest, ConstructorReducesAndChecksShape)
{
  auto e = epi("(0;+;[2,7];{()})", 14, {21, -12}, {19}, {7});
  EXPECT_EQ((std::vector<Int>{7, 2}), e.x_images);
  EXPECT_EQ((std::vector<Int>{5}), e.e_images);
  EXPECT_THROW(epi("(0;+;[2,7];{()})", 14, {7}, {5}, {7}), std::invalid_argument);
  EXPECT_THROW(epi("(1;+;[];{()})", 4, {}, {0}, {2}, {1}), std::invalid_argument);
}

TEST(EpimorphismTest, ExampleOneOddIsValid)
{
  auto r = validate(epi("(0;+;[2,7];{()})", 14, {7, 2}, {5}, {7}));
  EXPECT_TRUE(r.valid);
  ASSERT_TRUE(r.kernel_genus);
  EXPECT_EQ(7, *r.kernel_genus);
  EXPECT_EQ(6u, r.checks.size());
}

TEST(EpimorphismTest, ExampleTwoOddRFailsLongRelation)
{
  auto r = validate(epi("(0;+;[2,2,2,4,4];{()})", 4, {2, 2, 2, 1, 3}, {0}, {2}));
  EXPECT_FALSE(r.valid);
  EXPECT_FALSE(passed(r, check_names::kLongRelation));
  EXPECT_NE(r.find(check_names::kLongRelation)->detail.find("sum = 10 = 2"), std::string::npos);
  EXPECT_TRUE(passed(r, check_names::kSmoothElliptic));
  EXPECT_FALSE(r.kernel_genus);
}

TEST(EpimorphismTest, ExampleTwoOddRRepair)
{
  auto r = validate(epi("(0;+;[2,2,2,4,4];{()})", 4, {2, 2, 2, 1, 1}, {0}, {2}));
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(10, r.kernel_genus.value_or(0));
}

TEST(EpimorphismTest, SmoothnessFailure)
{
  auto r = validate(epi("(0;+;[2,7];{()})", 14, {7, 3}, {4}, {7}));
  EXPECT_FALSE(r.valid);
  EXPECT_FALSE(passed(r, check_names::kSmoothElliptic));
  EXPECT_NE(r.find(check_names::kSmoothElliptic)->detail.find("order 14"), std::string::npos);
}

TEST(EpimorphismTest, ReflectionChecks)
{
  auto r = validate(epi("(0;+;[2,7];{()})", 14, {7, 2}, {5}, {0}));
  EXPECT_FALSE(passed(r, check_names::kReflections));
  NecSignature odd = parse_signature("(1;-;[3];{()})");
  r = validate(CyclicEpimorphism(odd, 3, {1}, {0}, {1}, {1}));
  EXPECT_FALSE(passed(r, check_names::kReflections));
  NecSignature link = parse_signature("(0;+;[2,7];{(2)})");
  r = validate(CyclicEpimorphism(link, 14, {7, 2}, {}, {}, {}));
  EXPECT_FALSE(passed(r, check_names::kReflections));
  EXPECT_FALSE(r.valid);
}

TEST(EpimorphismTest, OrientableKernelIsRejected)
{
  // (1;-;[];{}) at M=2 with w=1: Gamma+ maps to <2w> = {0}.
  auto r = validate(epi("(1;-;[];{})", 2, {}, {}, {}, {1}));
  EXPECT_FALSE(passed(r, check_names::kKernelNonOrientable));
  // Fuchsian-type signature: no orientation-reversing generators at all.
  r = validate(epi("(0;+;[3,3,3,3];{})", 3, {1, 1, 2, 2}, {}, {}));
  EXPECT_TRUE(passed(r, check_names::kLongRelation));
  EXPECT_FALSE(passed(r, check_names::kKernelNonOrientable));
  EXPECT_FALSE(r.valid);
}

TEST(EpimorphismTest, SurjectivityFailure)
{
  auto r = validate(epi("(2;-;[];{()})", 4, {}, {0}, {2}, {0, 0}));
  EXPECT_FALSE(passed(r, check_names::kSurjective));
}

TEST(EpimorphismTest, GenusCheck)
{
  // measure -1/2
  auto r = validate(epi("(1;-;[2];{})", 4, {2}, {}, {}, {1}));
  EXPECT_FALSE(passed(r, check_names::kGenus));
  // 3 * 5/14 + 2 is not an integer
  r = validate(epi("(0;+;[2,7];{()})", 3, {0, 0}, {0}, {1}));
  EXPECT_FALSE(passed(r, check_names::kGenus));
  // (0;+;[2,2,2];{()}) at M=2 has p = 3
  r = validate(epi("(0;+;[2,2,2];{()})", 2, {1, 1, 1}, {1}, {1}));
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(3, r.kernel_genus.value_or(0));
}

TEST(EpimorphismTest, ValidityIsUnitEquivariant)
{
  std::mt19937_64 rng(7);
  const char* sigs[] = {"(0;+;[2,7];{()})", "(1;-;[2,2];{})", "(0;+;[4,4];{()})", "(1;-;[];{()})"};
  const Int mods[] = {14, 2, 4, 6, 8, 12};
  int valid_seen = 0;
  for (const char* text : sigs) {
    auto sig = parse_signature(text);
    for (Int m : mods) {
      for (int trial = 0; trial < 300; ++trial) {
        std::vector<Int> x, e, c, o;
        for (Int i = 0; i < sig.period_count(); ++i) x.push_back(static_cast<Int>(rng() % m));
        for (Int j = 0; j < sig.empty_cycles; ++j) e.push_back(static_cast<Int>(rng() % m));
        c.assign(sig.empty_cycles, m / 2);
        for (Int l = 0; l < sig.orientation_generator_count(); ++l) o.push_back(static_cast<Int>(rng() % m));
        CyclicEpimorphism base(sig, m, x, e, c, o);
        bool valid = validate(base).valid;
        valid_seen += valid;
        for (Int u = 1; u < m; ++u) {
          if (std::gcd(u, m) != 1) continue;
          auto mul = [&](std::vector<Int> v) {
            for (Int& a : v) a *= u;
            return v;
          };
          CyclicEpimorphism scaled(sig, m, mul(x), mul(e), mul(c), mul(o));
          ASSERT_EQ(valid, validate(scaled).valid) << text << " M=" << m << " u=" << u;
        }
      }
    }
  }
  EXPECT_GT(valid_seen, 0);
}

TEST(EpimorphismTest, PermutingEqualPeriodsKeepsValidity)
{
  auto a = validate(epi("(0;+;[2,2,4,4];{()})", 4, {2, 2, 1, 3}, {0}, {2}));
  auto b = validate(epi("(0;+;[2,2,4,4];{()})", 4, {2, 2, 3, 1}, {0}, {2}));
  EXPECT_TRUE(a.valid);
  EXPECT_EQ(a.valid, b.valid);
}

TEST(EpimorphismTest, ParseMap)
{
  auto sig = parse_signature("(0;+;[2,7];{()})");
  auto e = parse_map(sig, 14, "x=7,2; e=5; c=7; d=");
  EXPECT_EQ((std::vector<Int>{7, 2}), e.x_images);
  EXPECT_EQ((std::vector<Int>{5}), e.e_images);
  EXPECT_EQ((std::vector<Int>{7}), e.c_images);
  auto defaulted = parse_map(sig, 14, "x=7,2;e=5");
  EXPECT_EQ(e, defaulted);
  auto negative = parse_map(parse_signature("(0;+;[4,4];{()})"), 4, "x=1,-1;e=0");
  EXPECT_EQ((std::vector<Int>{1, 3}), negative.x_images);

  auto minus = parse_map(parse_signature("(2;-;[3];{})"), 3, "x=1;d=1,2");
  EXPECT_EQ((std::vector<Int>{1, 2}), minus.orient_images);
  auto plus = parse_map(parse_signature("(1;+;[];{()})"), 4, "e=0;a=1;b=3");
  EXPECT_EQ((std::vector<Int>{1, 3}), plus.orient_images);
  EXPECT_EQ(plus, parse_map(plus.sig, 4, format_map(plus)));
  EXPECT_EQ(minus, parse_map(minus.sig, 3, format_map(minus)));
}

TEST(EpimorphismTest, ParseMapErrors)
{
  auto sig = parse_signature("(0;+;[2,7];{()})");
  EXPECT_THROW(parse_map(sig, 14, "x=7;e=5"), MapError);
  EXPECT_THROW(parse_map(sig, 14, "x=7,2"), MapError);
  EXPECT_THROW(parse_map(sig, 14, "x=7,2;e=5;q=1"), MapError);
  EXPECT_THROW(parse_map(sig, 14, "x=7,2;x=1;e=5"), MapError);
  EXPECT_THROW(parse_map(sig, 14, "x=7,,2;e=5"), MapError);
  EXPECT_THROW(parse_map(sig, 14, "x=7,2;e=5;d=1"), MapError);
}
