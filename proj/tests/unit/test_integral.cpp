#include <gtest/gtest.h>

#include "mql/mql.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using mql::integral::BigInt;
using mql::integral::IntegerQuad;

namespace {

IntegerQuad iq(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) { return {a, b, c, d}; }

const std::vector<IntegerQuad> kEight{iq(1, 5, 24, 30), iq(1, 6, 14, 21), iq(1, 8, 9, 18), iq(1, 9, 10, 10),
                                      iq(2, 3, 10, 15), iq(2, 5, 5, 8),   iq(3, 3, 6, 6),  iq(4, 4, 4, 4)};

}  // namespace

TEST(IntFlip, Examples) {
  EXPECT_EQ(mql::integral::int_flip(iq(4, 4, 4, 4), 3), iq(4, 4, 4, 36));
  EXPECT_EQ(mql::integral::int_flip(iq(1, 5, 24, 30), 0), iq(3481, 5, 24, 30));
  EXPECT_EQ(BigInt(3540) * 3540, BigInt(3481) * 3600);
}

TEST(IntFlip, InvolutionAndClosureFarOut) {
  gen::Rng rng(51);
  for (const auto& root : kEight) {
    IntegerQuad q = root;
    for (std::uint8_t i : gen::reduced_word(rng, 14)) {
      const IntegerQuad next = mql::integral::int_flip(q, i);
      ASSERT_TRUE(mql::integral::is_valid(next));
      EXPECT_EQ(mql::integral::int_flip(next, i), q);
      q = next;
    }
    // fourteen flips out the entries are far beyond double precision
    EXPECT_GT(q.sorted()[3], BigInt(1) << 100);
    EXPECT_EQ(mql::integral::classify(q).root, root);
  }
}

TEST(IntReduce, Examples) {
  auto r = mql::integral::int_reduce(iq(4, 4, 4, 36));
  EXPECT_EQ(r.quad, iq(4, 4, 4, 4));
  EXPECT_EQ(r.word, mql::FlipWord({3}));
  r = mql::integral::int_reduce(iq(3481, 5, 24, 30));
  EXPECT_EQ(r.quad, iq(1, 5, 24, 30));
  EXPECT_EQ(r.word, mql::FlipWord({0}));
  r = mql::integral::int_reduce(iq(2, 5, 5, 8));
  EXPECT_EQ(r.quad, iq(2, 5, 5, 8));
  EXPECT_TRUE(r.word.empty());
  // self-flip tie is terminal
  r = mql::integral::int_reduce(iq(1, 5, 24, 30));
  EXPECT_TRUE(r.word.empty());
  EXPECT_THROW(mql::integral::int_reduce(iq(0, 0, 0, 0)), mql::PreconditionViolation);
}

TEST(IntReduce, ConfluentUnderPermutations) {
  gen::Rng rng(52);
  for (int n = 0; n < 200; ++n) {
    IntegerQuad q = kEight[static_cast<std::size_t>(gen::uniform_int(rng, 0, 7))];
    for (std::uint8_t i : gen::reduced_word(rng, gen::uniform_int(rng, 0, 12))) q = mql::integral::int_flip(q, i);
    const IntegerQuad expected = mql::integral::int_reduce(q).quad;
    std::array<std::size_t, 4> perm{0, 1, 2, 3};
    do {
      const IntegerQuad p{q[perm[0]], q[perm[1]], q[perm[2]], q[perm[3]]};
      EXPECT_EQ(mql::integral::int_reduce(p).quad, expected);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(Fundamental, ContainsTheEightAndOneMore) {
  const auto found = mql::integral::enumerate_fundamental();
  for (const auto& q : kEight) EXPECT_NE(std::find(found.begin(), found.end(), q), found.end()) << q;
  // The case-table search also turns up (2,4,6,12): 24^2 = 576 = 2*4*6*12,
  // 12 <= 2+4+6, and flipping 12 returns 12.
  std::vector<IntegerQuad> extra;
  for (const auto& q : found)
    if (std::find(kEight.begin(), kEight.end(), q) == kEight.end()) extra.push_back(q);
  ASSERT_EQ(extra.size(), 1u);
  EXPECT_EQ(extra[0], iq(2, 4, 6, 12));
  EXPECT_EQ(mql::integral::flipped_value(iq(2, 4, 6, 12), 3), BigInt(12));
}

TEST(Fundamental, FixedPointsOfReduction) {
  for (const auto& q : mql::integral::fundamental_quads()) {
    EXPECT_TRUE(mql::integral::is_valid(q));
    const auto r = mql::integral::int_reduce(q);
    EXPECT_EQ(r.quad, q);
    EXPECT_TRUE(r.word.empty());
    EXPECT_LE(q[3], q[0] + q[1] + q[2]);
    const mql::MarkoffQuad fq{q[0].convert_to<double>(), q[1].convert_to<double>(), q[2].convert_to<double>(),
                              q[3].convert_to<double>()};
    EXPECT_TRUE(mql::in_fundamental_domain(mql::quad_to_horocyclic(fq)).inside) << q;
  }
}

TEST(Fundamental, ReducedQuadsAgainstBruteForce) {
  // every reduced quad from the brute-force table lies in the fundamental list
  const auto all = oracle::integral_brute_force(400);
  std::set<IntegerQuad> reduced;
  for (const auto& t : all) {
    const IntegerQuad q = iq(t[0], t[1], t[2], t[3]);
    if (q[3] <= q[0] + q[1] + q[2]) reduced.insert(q);
  }
  const auto& table = mql::integral::fundamental_quads();
  EXPECT_EQ(reduced, std::set<IntegerQuad>(table.begin(), table.end()));
}

TEST(CaseTable, DerivedBoundsDoNotExceedTabulated) {
  for (const auto& row : mql::integral::kCaseTable) {
    const auto d = mql::integral::derived_d_bound(row.a, std::max(row.bMin, row.a), row.bMax);
    EXPECT_LE(d, row.dMax) << "a=" << row.a;
  }
  EXPECT_EQ(mql::integral::derived_d_bound(1, 5, 36), 337);
  EXPECT_EQ(mql::integral::derived_d_bound(2, 3, 18), 101);
  EXPECT_EQ(mql::integral::derived_d_bound(3, 3, 12), 40);
}

TEST(Classify, Examples) {
  auto c = mql::integral::classify(iq(4, 4, 4, 36));
  EXPECT_EQ(c.root, iq(4, 4, 4, 4));
  c = mql::integral::classify(iq(3481, 5, 24, 30));
  EXPECT_EQ(c.root, iq(1, 5, 24, 30));
  c = mql::integral::classify(iq(3, 3, 6, 6));
  EXPECT_EQ(c.root, iq(3, 3, 6, 6));
  EXPECT_TRUE(c.word.empty());
  // the word replays from the input to the root
  IntegerQuad q = iq(4, 4, 4, 4);
  for (std::uint8_t i : {3, 0, 2, 1}) q = mql::integral::int_flip(q, i);
  c = mql::integral::classify(q);
  IntegerQuad back = q;
  for (auto i : c.word) back = mql::integral::int_flip(back, i);
  EXPECT_EQ(back.sorted(), c.root);
  EXPECT_THROW(mql::integral::classify(iq(1, 2, 3, 4)), mql::InvalidQuad);
}

TEST(EnumerateBelow, SmallBounds) {
  auto v = mql::integral::enumerate_integral_below(4);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0], iq(4, 4, 4, 4));
  EXPECT_THROW(mql::integral::enumerate_integral_below(3), mql::PreconditionViolation);

  v = mql::integral::enumerate_integral_below(36);
  for (const auto& q : kEight) EXPECT_NE(std::find(v.begin(), v.end(), q), v.end()) << q;
  EXPECT_NE(std::find(v.begin(), v.end(), iq(4, 4, 4, 36)), v.end());
}

TEST(EnumerateBelow, MatchesBruteForce) {
  for (std::int64_t B : {4, 10, 36, 100, 250, 500}) {
    const auto got = mql::integral::enumerate_integral_below(B);
    std::set<IntegerQuad> expected;
    for (const auto& t : oracle::integral_brute_force(B)) expected.insert(iq(t[0], t[1], t[2], t[3]));
    EXPECT_EQ(std::set<IntegerQuad>(got.begin(), got.end()), expected) << "B=" << B;
    EXPECT_EQ(got.size(), expected.size()) << "B=" << B;
  }
}

TEST(IntegerQuad, TextForms) {
  EXPECT_EQ(mql::integral::to_string(iq(1, 5, 24, 30)), "1,5,24,30");
  std::ostringstream os;
  os << iq(4, 4, 4, 36);
  EXPECT_EQ(os.str(), "4,4,4,36");
}
