#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "qga/qga.hpp"

using namespace qga;

namespace {

const AmalgamConfig& cfg() {
  static const AmalgamConfig c = fixtures::two_cyclic();
  return c;
}

Term x() { return Term::leaf(1, 1); }
Term y() { return Term::leaf(2, 1); }

}  // namespace

TEST(Parse, MulOfTwoLeaves) {
  EXPECT_EQ(cfg().parse("*(a1.x, a2.y)"), mul(x(), y()));
}

TEST(Parse, SingleLeaf) { EXPECT_EQ(cfg().parse("a1.x"), x()); }

TEST(Parse, LeftSideOfLdivMul) {
  EXPECT_EQ(cfg().parse("ld(a1.x, *(a1.x, a2.y))"), ldiv(x(), mul(x(), y())));
}

TEST(Parse, WhitespaceIsInsignificant) {
  EXPECT_EQ(cfg().parse("  rd ( a1 . x ,\n\t*( a2.y ,a1.x) ) "), rdiv(x(), mul(y(), x())));
}

TEST(Parse, BaseImagesAreCanonical) {
  EXPECT_EQ(cfg().parse("a1.e"), Term::leaf(0, 0));
  EXPECT_EQ(cfg().parse("a2.e"), cfg().parse("b.e"));
}

TEST(Parse, ErrorsCarryPositions) {
  try {
    cfg().parse("*(a1.x a2.y)");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.position(), 7u);
  }
  EXPECT_THROW(cfg().parse(""), parse_error);
  EXPECT_THROW(cfg().parse("*(a1.x,a2.y))"), parse_error);
  EXPECT_THROW(cfg().parse("a1."), parse_error);
}

TEST(Parse, UnknownLeaf) {
  EXPECT_THROW(cfg().parse("a3.x"), parse_error);
  EXPECT_THROW(cfg().parse("a1.y"), parse_error);
}

TEST(Parse, ArityViolations) {
  try {
    cfg().parse("ld(a1.x)");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_NE(std::string(e.what()).find("got one"), std::string::npos);
  }
  try {
    cfg().parse("*(a1.x,a1.x,a1.x)");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_NE(std::string(e.what()).find("got more"), std::string::npos);
  }
  EXPECT_THROW(cfg().parse("sq(a1.x,a1.x)"), parse_error);
}

TEST(Format, CompactPrefix) {
  EXPECT_EQ(cfg().format(ldiv(x(), mul(x(), y()))), "ld(a1.x,*(a1.x,a2.y))");
  EXPECT_EQ(cfg().format(Term::leaf(0, 0)), "b.e");
}

TEST(NodeCount, Examples) {
  EXPECT_EQ(node_count(x()), 1u);
  EXPECT_EQ(node_count(mul(x(), y())), 3u);
  EXPECT_EQ(node_count(ldiv(x(), mul(x(), y()))), 5u);
}

TEST(ReplaceAt, Examples) {
  const Term l3 = Term::leaf(2, 2);
  EXPECT_EQ(replace_at(mul(x(), y()), {Dir::left}, l3), mul(l3, y()));
  EXPECT_EQ(replace_at(mul(x(), y()), {}, l3), l3);
}

TEST(ReplaceAt, ContractingLdivMulSavesTwiceTheFirstArgumentPlusTwo) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Term t1 = random_term(cfg(), rng, {9, 2});
    const Term t2 = random_term(cfg(), rng, {9, 2});
    const Term redex = ldiv(t1, mul(t1, t2));
    const Term host = mul(redex, y());
    const Term out = replace_at(host, {Dir::left}, t2);
    EXPECT_EQ(host.node_count() - out.node_count(), 2 * t1.node_count() + 2);
  }
}

TEST(ReplaceAt, UnresolvablePathThrows) {
  EXPECT_THROW(replace_at(x(), {Dir::left}, y()), std::out_of_range);
  EXPECT_THROW(subterm_at(mul(x(), y()), {Dir::right, Dir::left}), std::out_of_range);
  EXPECT_FALSE(try_subterm_at(x(), {Dir::right}).has_value());
}

TEST(Paths, Format) {
  EXPECT_EQ(format_path({}), "root");
  EXPECT_EQ(format_path({Dir::left, Dir::right}), "LR");
}

TEST(TermProperties, RoundTripAndReplacement) {
  Rng rng(2024);
  const auto amalgams = [&] {
    std::vector<AmalgamConfig> v{cfg(), fixtures::z4_klein()};
    for (int i = 0; i < 8; ++i) v.push_back(random_amalgam(rng));
    return v;
  }();
  for (const auto& a : amalgams)
    for (int i = 0; i < 60; ++i) {
      const Term t = random_term(a, rng, {25, 3});
      EXPECT_EQ(a.parse(a.format(t)), t);
      std::vector<Path> paths;
      for_each_subterm(t, [&](const Term&, const Path& p) { paths.push_back(p); });
      ASSERT_EQ(paths.size(), t.node_count());
      const Path& p = rng.pick(paths);
      EXPECT_EQ(replace_at(t, p, subterm_at(t, p)), t);
      const Term s = random_term(a, rng, {7, 2});
      EXPECT_EQ(replace_at(t, p, s).node_count(), t.node_count() - subterm_at(t, p).node_count() + s.node_count());
      EXPECT_EQ(subterm_at(replace_at(t, p, s), p), s);
    }
}

TEST(TermProperties, StructuralEqualityIsSyntactic) {
  EXPECT_NE(mul(x(), y()), mul(y(), x()));
  EXPECT_NE(mul(x(), y()), ldiv(x(), y()));
  EXPECT_EQ(mul(x(), y()), mul(Term::leaf(1, 1), Term::leaf(2, 1)));
}

TEST(TermProperties, LeavesInOrder) {
  const auto ls = leaves_of(cfg().parse("*(ld(a1.x,a2.y),a1.x2)"));
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0], (Leaf{1, 1}));
  EXPECT_EQ(ls[1], (Leaf{2, 1}));
  EXPECT_EQ(ls[2], (Leaf{1, 2}));
}
