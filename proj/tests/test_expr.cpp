#include <gtest/gtest.h>

#include <cmath>

#include "interperc/expr.hpp"

using namespace interperc;

TEST(SequenceExpr, EvaluatesCommonGenerators) {
  EXPECT_EQ(SequenceExpr("n^2")(7), 49.0);
  EXPECT_EQ(SequenceExpr("1/n")(4), 0.25);
  EXPECT_DOUBLE_EQ(SequenceExpr("0.9/n")(3), 0.3);
  EXPECT_DOUBLE_EQ(SequenceExpr("n*log(n)")(10), 10 * std::log(10.0));
  EXPECT_EQ(SequenceExpr("1/(2*n^2)")(5), 0.02);
  EXPECT_EQ(SequenceExpr("3")(100), 3.0);
  EXPECT_EQ(SequenceExpr(" 2 * ( n + 1 ) ")(4), 10.0);
  EXPECT_DOUBLE_EQ(SequenceExpr("exp(-n)")(2), std::exp(-2.0));
  EXPECT_DOUBLE_EQ(SequenceExpr("sqrt(n)+abs(-n)")(9), 12.0);
  EXPECT_DOUBLE_EQ(SequenceExpr("1e-3*n")(5), 0.005);
}

TEST(SequenceExpr, PrecedenceAndAssociativity) {
  EXPECT_EQ(SequenceExpr("2^3^2")(1), 512.0);
  EXPECT_EQ(SequenceExpr("-n^2")(3), -9.0);
  EXPECT_EQ(SequenceExpr("8/2/2")(1), 2.0);
  EXPECT_EQ(SequenceExpr("1-2-3")(1), -4.0);
  EXPECT_EQ(SequenceExpr("2*n^-1")(4), 0.5);
}

TEST(SequenceExpr, RejectsMalformedInput) {
  for (const char* bad : {"", "n^", "(n", "n)", "foo(n)", "m", "2 3", "log n", "*n"}) {
    EXPECT_THROW(SequenceExpr{bad}, InvalidArgument) << bad;
  }
}
