#include <gtest/gtest.h>

#include "mql/mql.hpp"
#include "support/generators.hpp"

using mql::Complex;
using mql::MarkoffQuad;

TEST(ParseComplex, Forms) {
  EXPECT_EQ(mql::parse_complex("4"), Complex(4, 0));
  EXPECT_EQ(mql::parse_complex(" -2.5 "), Complex(-2.5, 0));
  EXPECT_EQ(mql::parse_complex("1+2i"), Complex(1, 2));
  EXPECT_EQ(mql::parse_complex("1-2i"), Complex(1, -2));
  EXPECT_EQ(mql::parse_complex("1-2j"), Complex(1, -2));
  EXPECT_EQ(mql::parse_complex("3i"), Complex(0, 3));
  EXPECT_EQ(mql::parse_complex("-3i"), Complex(0, -3));
  EXPECT_EQ(mql::parse_complex("i"), Complex(0, 1));
  EXPECT_EQ(mql::parse_complex("-i"), Complex(0, -1));
  EXPECT_EQ(mql::parse_complex("2+i"), Complex(2, 1));
  EXPECT_EQ(mql::parse_complex("1e-3+2e+2i"), Complex(1e-3, 200));
  EXPECT_EQ(mql::parse_complex("+5"), Complex(5, 0));
  for (const char* bad : {"", "abc", "1+", "1+2k", "nan", "inf", "1..2"})
    EXPECT_THROW(mql::parse_complex(bad), std::invalid_argument) << bad;
}

TEST(ParseQuad, IntegerFastPath) {
  auto p = mql::parse_quad_text("4,4,4,36");
  EXPECT_EQ(p.quad, MarkoffQuad(4, 4, 4, 36));
  ASSERT_TRUE(p.exact.has_value());
  EXPECT_EQ(*p.exact, mql::integral::IntegerQuad(4, 4, 4, 36));

  p = mql::parse_quad_text("(1, 5, 24, 30)");
  ASSERT_TRUE(p.exact.has_value());
  EXPECT_EQ(*p.exact, mql::integral::IntegerQuad(1, 5, 24, 30));

  // beyond double precision the exact path keeps every digit
  p = mql::parse_quad_text("1,1,1,123456789012345678901234567890");
  ASSERT_TRUE(p.exact.has_value());
  EXPECT_EQ((*p.exact)[3], mql::integral::BigInt("123456789012345678901234567890"));

  for (const char* inexact : {"4.0,4,4,4", "-4,4,4,4", "4,4,4,4+0i"})
    EXPECT_FALSE(mql::parse_quad_text(inexact).exact.has_value()) << inexact;
}

TEST(ParseQuad, ComplexAndErrors) {
  const auto p = mql::parse_quad_text("1+2i, 3, -i, 0.5");
  EXPECT_EQ(p.quad, MarkoffQuad(Complex(1, 2), 3, Complex(0, -1), 0.5));
  EXPECT_FALSE(p.exact.has_value());
  for (const char* bad : {"1,2,3", "1,2,3,4,5", "", "1,,3,4", "1,2,3,x"})
    EXPECT_THROW(mql::parse_quad_text(bad), std::invalid_argument) << bad;
}

TEST(Format, Examples) {
  EXPECT_EQ(mql::format_real(4.0), "4");
  EXPECT_EQ(mql::format_real(-0.0), "0");
  EXPECT_EQ(mql::format_real(2.0 * std::asinh(2.0)), "2.88727095035762");
  EXPECT_EQ(mql::format_real(0.1, 17), "0.10000000000000001");
  EXPECT_EQ(mql::format_complex({1, 2}), "1+2i");
  EXPECT_EQ(mql::format_complex({1, -2}), "1-2i");
  EXPECT_EQ(mql::format_complex({0, -1}), "-1i");
  EXPECT_EQ(mql::format_complex({3, 0}), "3");
  EXPECT_EQ(mql::format_quad({4, 4, 4, 36}), "4,4,4,36");
  EXPECT_EQ(mql::format_word({3, 0}), "f4 f1");
  EXPECT_EQ(mql::format_word({}), "-");
}

TEST(Format, SeventeenDigitsRoundTrip) {
  gen::Rng rng(71);
  for (int n = 0; n < 500; ++n) {
    const MarkoffQuad q = n % 2 ? gen::fuchsian(rng) : gen::complex_quad(rng, 4.0);
    EXPECT_EQ(mql::parse_quad_text(mql::format_quad(q, 17)).quad, q) << mql::format_quad(q, 17);
  }
}
