#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>

#include "oracles.hpp"
#include "rmstuck/mask_set.hpp"
#include "rmstuck/reed_muller.hpp"

using namespace rmstuck;

namespace {

std::set<std::string> as_strings(const MaskSet& set) {
  std::set<std::string> out;
  for (const auto& w : set) out.insert(w.to_string());
  return out;
}

}  // namespace

TEST(MaskSet, SingleDefectSetIsTheTwoConstants) {
  const MaskSet set = build_mask_set(1, 3);
  ASSERT_EQ(set.size(), 2u);
  EXPECT_EQ(set[0].to_string(), "00000000");
  EXPECT_EQ(set[1].to_string(), "11111111");
}

TEST(MaskSet, TwoDefectsLengthEightMatchesCoordinateRowsAndComplements) {
  const MaskSet set = build_mask_set(2, 3);
  const std::set<std::string> expected = {"00000000", "00001111", "00110011", "01010101",
                                          "11111111", "11110000", "11001100", "10101010"};
  EXPECT_EQ(as_strings(set), expected);
  // canonical order is lexicographic
  EXPECT_EQ(set[0].to_string(), "00000000");
  EXPECT_EQ(set[3].to_string(), "01010101");
  EXPECT_EQ(set[7].to_string(), "11111111");
}

TEST(MaskSet, ThreeDefectsLengthEightHas34DistinctOf40) {
  const MaskSet set = build_mask_set(3, 3);
  EXPECT_EQ(set.size(), 34u);
  EXPECT_EQ(set.pre_dedup_size(), 40u);
  EXPECT_EQ(oracle::union_multiset_size(3, 3), 40u);
}

TEST(MaskSet, MatchesStringOracle) {
  for (int s = 1; s <= 4; ++s) {
    for (int m = ceil_log2(static_cast<std::uint64_t>(s)); m <= 7; ++m) {
      SCOPED_TRACE("s=" + std::to_string(s) + " m=" + std::to_string(m));
      EXPECT_EQ(as_strings(build_mask_set(s, m)), oracle::mask_set(s, m));
    }
  }
}

TEST(MaskSet, ReferenceCounts) {
  EXPECT_EQ(mask_count(2, 12), 26u);
  // the worked text mentions 132 for this set; enumeration gives 136
  EXPECT_EQ(mask_count(3, 6), 136u);
  EXPECT_EQ(mask_count(4, 9), 3796u);
}

TEST(MaskSet, TwoDefectCountIsTwoMPlusTwo) {
  for (int m = 1; m <= 14; ++m) EXPECT_EQ(mask_count(2, m), static_cast<std::size_t>(2 * (m + 1)));
}

TEST(MaskSet, InvalidParameters) {
  EXPECT_THROW((void)build_mask_set(0, 3), ParameterError);
  EXPECT_THROW((void)build_mask_set(3, 1), ParameterError);  // ceil(log2 3) = 2 > 1
  EXPECT_THROW((void)build_mask_set(5, 2), ParameterError);
  EXPECT_NO_THROW((void)build_mask_set(4, 2));
}

TEST(MaskSet, CountBounds) {
  EXPECT_EQ(count_upper_bound(3, 3), 72u);
  EXPECT_EQ(count_upper_bound(2, 5), 20u);
  EXPECT_EQ(count_lower_bound(3, 3), 14u);
  EXPECT_EQ(count_lower_bound(2, 3), 8u);
  EXPECT_LE(mask_count(3, 3), count_upper_bound(3, 3));
  EXPECT_EQ(mask_count(2, 3), count_lower_bound(2, 3));
  MaskSetBuilder b;
  for (int s = 1; s <= 4; ++s) {
    for (int m = std::max(1, s); m <= 9; ++m) {
      const auto n = b.build(s, m)->size();
      EXPECT_GE(n, count_lower_bound(s, m)) << s << "," << m;
      EXPECT_LE(n, count_upper_bound(s, m)) << s << "," << m;
    }
  }
}

TEST(MaskSet, Invariants) {
  MaskSetBuilder b;
  for (int s = 1; s <= 4; ++s) {
    for (int m = std::max(1, ceil_log2(static_cast<std::uint64_t>(s))); m <= 8; ++m) {
      SCOPED_TRACE("s=" + std::to_string(s) + " m=" + std::to_string(m));
      const auto set = b.build(s, m);
      const std::size_t n = set->word_length();
      EXPECT_TRUE(set->contains(BitWord(n)));
      EXPECT_TRUE(set->contains(BitWord::ones(n)));
      for (const auto& w : *set) {
        EXPECT_TRUE(set->contains(w.complement()));
        EXPECT_LE(anf_degree(w), s - 1);
      }
      for (std::size_t i = 1; i < set->size(); ++i) EXPECT_LT((*set)[i - 1], (*set)[i]);
      if (s >= 2) {
        for (const auto& w : *b.build(s - 1, m)) EXPECT_TRUE(set->contains(w));
      }
    }
  }
}

TEST(MaskSet, BuildIsDeterministic) {
  const MaskSet a = build_mask_set(4, 6);
  const MaskSet b = build_mask_set(4, 6);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(MaskSet, Covers) {
  const auto mask = BitWord::from_string("00001111");
  EXPECT_TRUE(covers(mask, StuckPattern{{2, false}, {5, true}}));
  EXPECT_TRUE(covers(mask, StuckPattern{}));
  EXPECT_FALSE(covers(BitWord(8), StuckPattern{{0, true}}));
}

TEST(MaskSet, StuckPatternRejectsDuplicates) {
  EXPECT_THROW((StuckPattern{{3, true}, {3, false}}), ParameterError);
}

TEST(MaskSet, IsMember) {
  const MaskSet m23 = build_mask_set(2, 3);
  EXPECT_TRUE(is_member(m23, BitWord::from_string("01010101")));
  EXPECT_FALSE(is_member(m23, BitWord::from_string("01010100")));
  EXPECT_TRUE(is_member(build_mask_set(1, 3), BitWord::from_string("00000000")));
  EXPECT_THROW((void)is_member(m23, BitWord(16)), ParameterError);
}

TEST(SynthesizeMask, WorkedExampleSplitsAcrossHalves) {
  const auto mask = synthesize_mask(2, 3, StuckPattern{{2, false}, {5, true}});
  EXPECT_EQ(mask.to_string(), "00001111");
}

TEST(SynthesizeMask, SimpleCases) {
  EXPECT_EQ(synthesize_mask(1, 3, StuckPattern{{4, true}}).to_string(), "11111111");
  EXPECT_EQ(synthesize_mask(3, 3, StuckPattern{}).to_string(), "00000000");
  EXPECT_THROW((void)synthesize_mask(2, 3, StuckPattern{{0, true}, {1, true}, {2, true}}), ParameterError);
  EXPECT_THROW((void)synthesize_mask(2, 3, StuckPattern{{8, true}}), ParameterError);
}

TEST(SynthesizeMask, ExhaustiveSmallCases) {
  // every pattern of up to s cells, for small (s, m): output is a member and covers
  MaskSetBuilder b;
  for (int s = 1; s <= 4; ++s) {
    for (int m = std::max(1, ceil_log2(static_cast<std::uint64_t>(s))); m <= 4; ++m) {
      const auto set = b.build(s, m);
      const std::size_t n = set->word_length();
      std::vector<std::size_t> pos;
      auto visit = [&](auto&& self, std::size_t start) -> void {
        for (std::uint32_t v = 0; v < (1U << pos.size()); ++v) {
          std::vector<StuckCell> cells;
          for (std::size_t i = 0; i < pos.size(); ++i) cells.push_back({pos[i], ((v >> i) & 1U) != 0});
          const StuckPattern pattern(cells);
          const BitWord mask = synthesize_mask(s, m, pattern);
          ASSERT_TRUE(covers(mask, pattern));
          ASSERT_TRUE(set->contains(mask)) << mask.to_string();
        }
        if (pos.size() == static_cast<std::size_t>(s)) return;
        for (std::size_t p = start; p < n; ++p) {
          pos.push_back(p);
          self(self, p + 1);
          pos.pop_back();
        }
      };
      visit(visit, 0);
    }
  }
}

TEST(SynthesizeMask, RandomLargePatternsAreMembersAndDeterministic) {
  MaskSetBuilder b;
  std::mt19937_64 rng(2024);
  for (auto [s, m] : {std::pair{3, 10}, std::pair{4, 9}, std::pair{4, 12}}) {
    const auto set = b.build(s, m);
    const std::size_t n = set->word_length();
    for (int rep = 0; rep < 300; ++rep) {
      std::set<std::size_t> pos;
      while (pos.size() < static_cast<std::size_t>(s)) pos.insert(rng() % n);
      std::vector<StuckCell> cells;
      for (std::size_t p : pos) cells.push_back({p, (rng() & 1U) != 0});
      const StuckPattern pattern(cells);
      const BitWord mask = synthesize_mask(s, m, pattern);
      ASSERT_TRUE(covers(mask, pattern));
      ASSERT_TRUE(set->contains(mask));
      ASSERT_EQ(mask, synthesize_mask(s, m, pattern));
    }
  }
}
