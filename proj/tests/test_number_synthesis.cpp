#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "sixbar/error.hpp"
#include "sixbar/number_synthesis.hpp"

namespace ns = sixbar::number_synthesis;

namespace {

std::set<std::array<int, 5>> as_set(const std::vector<ns::LinkComposition>& v) {
  std::set<std::array<int, 5>> out;
  for (const auto& c : v) out.insert({c.binary, c.ternary, c.quaternary, c.pentagonal, c.hexagonal});
  return out;
}

}  // namespace

TEST(NumberSynthesis, SixLinksOneDof) {
  const auto result = ns::enumerate_compositions({6, 1});
  ASSERT_EQ(result.size(), 2u);
  EXPECT_EQ(as_set(result), (std::set<std::array<int, 5>>{{4, 2, 0, 0, 0}, {5, 0, 1, 0, 0}}));
}

TEST(NumberSynthesis, FourLinksIsAllBinary) {
  const auto result = ns::enumerate_compositions({4, 1});
  ASSERT_EQ(result.size(), 1u);
  EXPECT_EQ(result[0], (ns::LinkComposition{4, 0, 0, 0, 0}));
}

TEST(NumberSynthesis, EightLinksHasFiveCompositions) {
  const auto result = ns::enumerate_compositions({8, 1});
  EXPECT_EQ(result.size(), 5u);
  EXPECT_EQ(as_set(result), oracle::brute_force_compositions(8, 1));
}

TEST(NumberSynthesis, InfeasibleSpecIsEmpty) {
  EXPECT_TRUE(ns::enumerate_compositions({3, 1}).empty());
  EXPECT_TRUE(ns::enumerate_compositions({4, 2}).empty());
}

TEST(NumberSynthesis, NonPositiveInputsThrow) {
  EXPECT_THROW(ns::enumerate_compositions({0, 1}), sixbar::Error);
  EXPECT_THROW(ns::enumerate_compositions({6, 0}), sixbar::Error);
  EXPECT_THROW(ns::enumerate_compositions({-6, 1}), sixbar::Error);
}

TEST(NumberSynthesis, MatchesBruteForceAndIsLexicographic) {
  for (int links = 1; links <= 12; ++links) {
    for (int dof = 1; dof <= 3; ++dof) {
      const auto result = ns::enumerate_compositions({links, dof});
      EXPECT_EQ(as_set(result), oracle::brute_force_compositions(links, dof))
          << "L=" << links << " M=" << dof;
      EXPECT_EQ(as_set(result).size(), result.size()) << "duplicates for L=" << links;
      const auto key = [](const ns::LinkComposition& c) {
        return std::array<int, 4>{c.ternary, c.quaternary, c.pentagonal, c.hexagonal};
      };
      EXPECT_TRUE(std::is_sorted(result.begin(), result.end(),
                                 [&](const auto& x, const auto& y) { return key(x) < key(y); }));
      for (const auto& c : result) {
        EXPECT_EQ(c.total(), links);
        EXPECT_EQ(c.higher_order_weight(), links - 3 - dof);
      }
    }
  }
}

TEST(NumberSynthesis, Gruebler) {
  EXPECT_EQ(ns::gruebler_dof(6, 7), 1);
  EXPECT_EQ(ns::gruebler_dof(4, 4), 1);
  EXPECT_EQ(ns::gruebler_dof(3, 3), 0);
  EXPECT_THROW(ns::gruebler_dof(1, 1), sixbar::Error);
}
