#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qga/qga.hpp"

using namespace qga;

namespace {

// B = {0, 2} in d = Z4, and B -> e = Z2 x Z2 sending 1 to (0,1).
GroupAmalgam z4_klein() {
  const auto b = FiniteGroup::cyclic(2, "b");
  const auto z2 = FiniteGroup::cyclic(2);
  return GroupAmalgam(GroupEmbedding::make(b, FiniteGroup::cyclic(4, "d"), {0, 2}),
                      GroupEmbedding::make(b, FiniteGroup::direct_product(z2, z2, "e"), {0, 1}));
}

Letter d(std::size_t x) { return {1, x}; }
Letter e(std::size_t x) { return {2, x}; }
Letter b(std::size_t x) { return {0, x}; }

// Rewrites w into a longer word for the same element: splits letters, inserts
// g g^-1 pairs and passes base elements across letters.
Word scramble(const GroupAmalgam& a, const Word& w, Rng& rng, std::size_t moves) {
  Word out = w;
  for (std::size_t m = 0; m < moves && out.size() + 2 <= 8; ++m) {
    const std::size_t i = rng.below(out.size() + 1);
    switch (rng.below(3)) {
      case 0: {
        const auto side = static_cast<std::uint8_t>(rng.between(1, 2));
        const auto& g = a.factor(side);
        const std::size_t x = rng.below(g.size());
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(i), {{side, x}, {side, g.inv(x)}});
        break;
      }
      case 1: {
        if (i == out.size() || out[i].side == 0) break;
        const auto& g = a.factor(out[i].side);
        const std::size_t x = rng.below(g.size());
        const Letter first{out[i].side, x};
        out[i].element = g.mul(g.inv(x), out[i].element);
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(i), first);
        break;
      }
      default: {
        const std::size_t y = rng.below(a.base().size());
        out.insert(out.begin() + static_cast<std::ptrdiff_t>(i), {{0, y}, {0, a.base().inv(y)}});
      }
    }
  }
  return out;
}

}  // namespace

TEST(FiniteGroup, Validation) {
  EXPECT_THROW(FiniteGroup::from_mul_table({}), invalid_input);
  EXPECT_THROW(FiniteGroup::from_mul_table({{0, 1}}), invalid_input);
  // Z3 under subtraction is a quasigroup but not associative
  EXPECT_THROW(FiniteGroup::from_mul_table({{0, 2, 1}, {1, 0, 2}, {2, 1, 0}}), invalid_input);
  // associative without identity
  EXPECT_THROW(FiniteGroup::from_mul_table({{0, 0}, {0, 0}}), invalid_input);
  // a monoid that is not a group
  EXPECT_THROW(FiniteGroup::from_mul_table({{0, 1}, {1, 1}}), invalid_input);
  EXPECT_THROW(FiniteGroup::from_mul_table({{0, 3}, {1, 0}}), invalid_input);
  const auto z2 = FiniteGroup::from_mul_table({{1, 0}, {0, 1}});
  EXPECT_EQ(z2.id(), 1u);
}

TEST(FiniteGroup, Catalogue) {
  const auto groups = small_groups();
  ASSERT_EQ(groups.size(), 14u);
  auto abelian = [](const FiniteGroup& g) {
    for (std::size_t x = 0; x < g.size(); ++x)
      for (std::size_t y = 0; y < g.size(); ++y)
        if (g.mul(x, y) != g.mul(y, x)) return false;
    return true;
  };
  EXPECT_FALSE(abelian(FiniteGroup::dihedral(3)));
  EXPECT_FALSE(abelian(FiniteGroup::dihedral(4)));
  EXPECT_FALSE(abelian(FiniteGroup::quaternion()));
  // Q8 has a single element of order 2, D4 has five
  auto involutions = [](const FiniteGroup& g) {
    std::size_t n = 0;
    for (std::size_t x = 0; x < g.size(); ++x) n += (x != g.id() && g.mul(x, x) == g.id()) ? 1 : 0;
    return n;
  };
  EXPECT_EQ(involutions(FiniteGroup::quaternion()), 1u);
  EXPECT_EQ(involutions(FiniteGroup::dihedral(4)), 5u);
  EXPECT_EQ(all_subgroups(FiniteGroup::dihedral(4)).size(), 10u);
  EXPECT_EQ(all_subgroups(FiniteGroup::quaternion()).size(), 6u);
}

TEST(FiniteGroup, SubgroupsAndEmbeddings) {
  const auto z4 = FiniteGroup::cyclic(4);
  EXPECT_TRUE(is_subgroup(z4, {0, 2}));
  EXPECT_FALSE(is_subgroup(z4, {0, 1}));
  EXPECT_EQ(generated_subgroup(z4, {1}), (IndexSet{0, 1, 2, 3}));
  EXPECT_EQ(group_embeddings(FiniteGroup::cyclic(2), z4).size(), 1u);
  EXPECT_THROW(GroupEmbedding::make(FiniteGroup::cyclic(2), z4, {0, 1}), invalid_input);
  EXPECT_THROW(subgroup(z4, {0, 3}, "s"), invalid_input);
}

TEST(CosetSystem, MinimumRepresentatives) {
  const auto a = z4_klein();
  const auto& cd = a.cosets(1);
  EXPECT_EQ(cd.coset_count(), 2u);
  EXPECT_EQ(cd.representatives(), (IndexSet{1}));
  EXPECT_EQ(cd.decompose(3), (std::pair<std::size_t, std::optional<std::size_t>>{1, 1}));
  EXPECT_EQ(cd.decompose(2), (std::pair<std::size_t, std::optional<std::size_t>>{1, std::nullopt}));
  EXPECT_EQ(a.cosets(2).representatives(), (IndexSet{2}));
}

TEST(CosetSystem, PreferredRepresentatives) {
  const auto b = FiniteGroup::cyclic(2, "b");
  const auto emb = GroupEmbedding::make(b, FiniteGroup::cyclic(4, "d"), {0, 2});
  EXPECT_EQ(CosetSystem(emb, {3}).representatives(), (IndexSet{3}));
  EXPECT_THROW(CosetSystem(emb, {1, 3}), invalid_input);
  EXPECT_THROW(CosetSystem(emb, {2}), invalid_input);
}

TEST(GroupAmalgam, Construction) {
  const auto b = FiniteGroup::cyclic(2, "b");
  const auto z4 = GroupEmbedding::make(b, FiniteGroup::cyclic(4, "d"), {0, 2});
  EXPECT_THROW(GroupAmalgam(z4, z4), invalid_input);
  EXPECT_THROW(GroupAmalgam(z4, GroupEmbedding::make(FiniteGroup::cyclic(3, "b"), FiniteGroup::cyclic(3, "e"), {0, 1, 2})),
               invalid_input);
  EXPECT_THROW(z4_klein().canonical_form({{1, 4}}), invalid_input);
  EXPECT_THROW(z4_klein().canonical_form({{3, 0}}), invalid_input);
}

TEST(CanonicalForm, Examples) {
  const auto a = z4_klein();
  EXPECT_EQ(a.canonical_form({b(1)}), (CanonicalWord{1, {}}));
  EXPECT_EQ(a.canonical_form({d(2)}), (CanonicalWord{1, {}}));
  EXPECT_EQ(a.canonical_form({}), (CanonicalWord{0, {}}));
  // 3 = 2 + 1 in Z4
  EXPECT_EQ(a.canonical_form({d(3)}), (CanonicalWord{1, {d(1)}}));
  // e.3 = e.1 e.2
  EXPECT_EQ(a.canonical_form({e(3)}), (CanonicalWord{1, {e(2)}}));
  // d.3 e.3 = d.3 e.1 e.2 = d.1 e.2 (d.3 d.2 = d.1)
  EXPECT_EQ(a.canonical_form({d(3), e(3)}), (CanonicalWord{0, {d(1), e(2)}}));
  EXPECT_EQ(a.format(a.canonical_form({d(3), e(3), d(1)})), "b.0 d.1 e.2 d.1");
  EXPECT_EQ(a.format(Word{b(1), d(3)}), "b.1 d.3");
}

TEST(CanonicalForm, AlternatingWordsAgainstOracle) {
  const auto a = z4_klein();
  std::vector<Word> words;
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y)
      for (std::size_t z = 0; z < 4; ++z) words.push_back({d(x), e(y), d(z)});
  for (const auto& u : words)
    for (const auto& v : words)
      EXPECT_EQ(a.canonical_form(u) == a.canonical_form(v), oracle::equal_words(a, u, v));
}

TEST(CanonicalForm, Idempotent) {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_group_amalgam(rng);
    const auto cw = a.canonical_form(random_word(a, rng, rng.below(9)));
    EXPECT_EQ(a.canonical_form(cw.to_word()), cw);
    for (std::size_t j = 0; j < cw.letters.size(); ++j) {
      EXPECT_TRUE(a.cosets(cw.letters[j].side).is_representative(cw.letters[j].element));
      if (j > 0) {
        EXPECT_NE(cw.letters[j].side, cw.letters[j - 1].side);
      }
    }
  }
}

TEST(CanonicalForm, ConcatenationIsHomomorphic) {
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_group_amalgam(rng);
    const Word u = random_word(a, rng, rng.below(5));
    const Word v = random_word(a, rng, rng.below(5));
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    Word cat = a.canonical_form(u).to_word();
    const Word cv = a.canonical_form(v).to_word();
    cat.insert(cat.end(), cv.begin(), cv.end());
    EXPECT_EQ(a.canonical_form(cat), a.canonical_form(uv));
  }
}

TEST(CanonicalForm, UniquenessAgainstOracle) {
  Rng rng(19);
  std::size_t equal = 0;
  for (int i = 0; i < 300; ++i) {
    const auto a = random_group_amalgam(rng);
    ASSERT_LE(a.base().size(), 4u);
    const Word u = random_word(a, rng, rng.below(6));
    const Word v = rng.chance(1, 2) ? scramble(a, u, rng, 4) : random_word(a, rng, rng.below(9));
    ASSERT_LE(v.size(), 8u);
    const bool ours = a.canonical_form(u) == a.canonical_form(v);
    EXPECT_EQ(ours, oracle::equal_words(a, u, v)) << a.format(u) << " vs " << a.format(v);
    equal += ours ? 1 : 0;
  }
  EXPECT_GT(equal, 100u);
}

TEST(GroupStar, WholeFactorIsVacuous) {
  const auto a = z4_klein();
  const auto v = group_condition_star_check({d(1), e(2), d(3)}, {0, 1, 2, 3}, a);
  EXPECT_TRUE(v.verified());
  EXPECT_EQ(v.slots, 2u);
  EXPECT_EQ(v.tuples_checked, 16u);
}

TEST(GroupStar, BaseElementHasNoSlots) {
  const auto a = z4_klein();
  const auto v = group_condition_star_check({b(1)}, {0, 2}, a);
  EXPECT_TRUE(v.verified());
  EXPECT_EQ(v.witness, (CanonicalWord{1, {}}));
  EXPECT_EQ(v.slots, 0u);
}

// With C = B the only element with a D-letter slot is d.2 = b.1, so the sweep
// is done by hand: of the four words d.x e.2, only x = 2 (the image of b.1, in C)
// gives the element b.1 e.2.
TEST(GroupStar, SubgroupEqualToBase) {
  const auto a = z4_klein();
  const Word alpha{d(2), e(2)};
  const auto v = group_condition_star_check(alpha, {0, 2}, a);
  EXPECT_TRUE(v.verified());
  EXPECT_EQ(v.slots, 0u);
  EXPECT_EQ(a.format(v.witness), "b.1 e.2");
  std::vector<std::size_t> matching;
  for (std::size_t x = 0; x < 4; ++x)
    if (a.canonical_form({d(x), e(2)}) == v.witness) matching.push_back(x);
  EXPECT_EQ(matching, (std::vector<std::size_t>{2}));
}

TEST(GroupStar, IntermediateSubgroup) {
  // B = {0,4} in C = {0,2,4,6} in D = Z8
  const auto bg = FiniteGroup::cyclic(2, "b");
  const GroupAmalgam a(GroupEmbedding::make(bg, FiniteGroup::cyclic(8, "d"), {0, 4}),
                       GroupEmbedding::make(bg, FiniteGroup::cyclic(4, "e"), {0, 2}));
  const auto v = group_condition_star_check({d(6), e(1), d(2), e(3)}, {0, 2, 4, 6}, a);
  EXPECT_TRUE(v.verified());
  EXPECT_TRUE(v.compatible);
  EXPECT_EQ(v.slots, 2u);
  EXPECT_EQ(v.tuples_checked, 64u);
}

TEST(GroupStar, Preconditions) {
  const auto a = z4_klein();
  EXPECT_THROW(group_condition_star_check({d(1)}, {0, 2}, a), invalid_input);
  EXPECT_THROW(group_condition_star_check({b(1)}, {0, 1}, a), invalid_input);
  EXPECT_THROW(group_condition_star_check({b(1)}, {0}, a), invalid_input);
  EXPECT_THROW(group_condition_star_check({d(1), e(2), d(1), e(2)}, {0, 1, 2, 3}, a, 1), bound_exceeded);
}

TEST(GroupStar, RandomInstances) {
  Rng rng(23);
  std::size_t with_slots = 0;
  for (int i = 0; i < 60; ++i) {
    const auto a = random_group_amalgam(rng);
    const auto c = random_intermediate_subgroup(a, rng);
    Word w = random_sub_word(a, c, rng, rng.between(1, 7));
    while (a.canonical_form(w).letters.size() > 6) w.pop_back();
    const auto v = group_condition_star_check(w, c, a, 3);
    EXPECT_TRUE(v.verified());
    EXPECT_TRUE(v.compatible);
    with_slots += v.slots > 0 ? 1 : 0;
  }
  EXPECT_GT(with_slots, 10u);
}
