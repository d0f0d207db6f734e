#include "qexlab/error.hpp"
#include "qexlab/groups.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

using namespace qexlab;

namespace {

std::vector<std::size_t> class_sizes(const FiniteGroup& g) {
  std::vector<std::size_t> sizes;
  for (const auto& c : conjugacy_classes(g)) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace

TEST(Cyclic, TrivialGroup) {
  auto g = make_cyclic(1);
  EXPECT_EQ(g.order(), 1u);
  EXPECT_EQ(g.identity(), 0u);
  EXPECT_EQ(g.inv(0), 0u);
}

TEST(Cyclic, SmallCases) {
  EXPECT_EQ(make_cyclic(2).mul(1, 1), 0u);
  auto z5 = make_cyclic(5);
  EXPECT_EQ(z5.inv(2), 3u);
  for (Element a = 0; a < 5; ++a)
    for (Element b = 0; b < 5; ++b) EXPECT_EQ(z5.mul(a, b), (a + b) % 5);
  EXPECT_TRUE(check_group_axioms(z5, 1).ok());
  EXPECT_TRUE(z5.is_abelian());
}

TEST(Dihedral, Relations) {
  auto d3 = make_dihedral(3);
  ASSERT_EQ(d3.order(), 6u);
  const Element r = 1, s = 3;
  EXPECT_EQ(d3.mul(d3.mul(s, r), s), d3.pow(r, 2));
  EXPECT_EQ(d3.inv(r), d3.pow(r, 2));
  EXPECT_EQ(d3.mul(s, s), d3.identity());

  auto d5 = make_dihedral(5);
  const Element rs = d5.mul(1, 5);
  EXPECT_EQ(d5.mul(rs, rs), d5.identity());
  EXPECT_FALSE(d5.is_abelian());

  auto ax = check_group_axioms(make_dihedral(9), 3);
  EXPECT_TRUE(ax.ok());
  EXPECT_TRUE(ax.exhaustive);
}

TEST(Dihedral, RejectsSmallM) { EXPECT_THROW(make_dihedral(2), Error); }

TEST(FiniteField, Arithmetic) {
  FqElement a(3, 7), b(5, 7);
  EXPECT_EQ((a + b).value(), 1u);
  EXPECT_EQ((a - b).value(), 5u);
  EXPECT_EQ((a * b).value(), 1u);
  EXPECT_EQ(a.inverse().value(), 5u);
  EXPECT_EQ((-a).value(), 4u);
  EXPECT_THROW(FqElement(0, 7).inverse(), Error);
  for (std::uint32_t x = 1; x < 13; ++x) EXPECT_EQ((FqElement(x, 13) * FqElement(x, 13).inverse()).value(), 1u);
}

TEST(FiniteField, LegendreAndSqrtMinusOne) {
  // squares mod 13: 1 3 4 9 10 12
  std::set<int> squares;
  for (int x = 1; x < 13; ++x) squares.insert(x * x % 13);
  for (int a = 1; a < 13; ++a) EXPECT_EQ(legendre_symbol(a, 13), squares.count(a) ? 1 : -1) << a;
  EXPECT_EQ(legendre_symbol(26, 13), 0);
  const auto i = sqrt_minus_one(13);
  EXPECT_EQ((i * i) % 13, 12u);
}

TEST(ProjectiveMat2, CanonicalForm) {
  ProjectiveMat2 m(2, 4, 6, 1, 7);
  ProjectiveMat2 scaled(4, 1, 5, 2, 7);  // 2 * m mod 7
  EXPECT_EQ(m, scaled);
  EXPECT_EQ(m.a(), 1u);
  ProjectiveMat2 lead_b(0, 3, 2, 5, 7);
  EXPECT_EQ(lead_b.b(), 1u);
  EXPECT_THROW(ProjectiveMat2(1, 2, 2, 4, 7), Error);
}

TEST(Pgl2, OrdersAndTower) {
  for (std::uint32_t q : {3u, 5u}) {
    auto p = make_pgl2(q);
    const auto& g = *p.group;
    EXPECT_EQ(g.order(), static_cast<std::size_t>(q) * (q - 1) * (q + 1));
    const auto& t = p.tower;
    ASSERT_EQ(t.levels.size(), 4u);
    EXPECT_EQ(t.levels[0].size(), 1u);
    EXPECT_EQ(t.levels[1].size(), q);
    EXPECT_EQ(t.levels[2].size(), 2 * q);
    EXPECT_EQ(t.levels[3].size(), g.order());
    for (const auto& level : t.levels) EXPECT_TRUE(is_subgroup(g, level));
    EXPECT_EQ(t.transversal2.size(), (q - 1) * (q + 1) / 2);
    EXPECT_EQ(t.transversal1.size(), 2 * t.transversal2.size());
    EXPECT_TRUE(right_cosets_partition(g, t.levels[2], t.transversal2));
    EXPECT_TRUE(right_cosets_partition(g, t.levels[1], t.transversal1));
    EXPECT_EQ(g.mul(t.s, t.s), g.identity());
    EXPECT_EQ(g.mul(g.mul(t.s, t.r), t.s), g.inv(t.r));
    EXPECT_TRUE(check_group_axioms(g, 5, 24).ok());
  }
}

TEST(Pgl2, RejectsBadModulus) {
  EXPECT_THROW(make_pgl2(4), Error);
  EXPECT_THROW(make_pgl2(2), Error);
  EXPECT_THROW(make_pgl2(11), Error);  // 1320 > default cap
}

TEST(Psl2, IndexTwo) {
  auto p = make_psl2(5);
  EXPECT_EQ(p.group->order(), 60u);
  EXPECT_TRUE(check_group_axioms(*p.group, 2).ok());
}

TEST(ConjugacyClasses, KnownCounts) {
  EXPECT_EQ(conjugacy_classes(make_cyclic(7)).size(), 7u);
  EXPECT_EQ(class_sizes(make_dihedral(3)), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(conjugacy_classes(*make_pgl2(3).group).size(), 5u);
  // class equation
  auto classes = conjugacy_classes(*make_pgl2(5).group);
  std::size_t total = 0;
  for (const auto& c : classes) total += c.size();
  EXPECT_EQ(total, 120u);
}

TEST(Generators, SymmetricAndDeterministic) {
  auto z2 = make_cyclic(2);
  auto g2 = random_symmetric_generators(z2, 2, 11);
  EXPECT_EQ(g2.elements, (std::vector<Element>{1, 1}));

  auto z5 = make_cyclic(5);
  for (std::uint64_t seed = 1; seed < 20; ++seed) {
    auto g = random_symmetric_generators(z5, 2, seed);
    ASSERT_EQ(g.degree(), 2u);
    EXPECT_EQ((g.elements[0] + g.elements[1]) % 5, 0u);
  }
  auto d = make_dihedral(7);
  auto a = random_symmetric_generators(d, 6, 42);
  auto b = random_symmetric_generators(d, 6, 42);
  EXPECT_EQ(a.elements, b.elements);
  EXPECT_TRUE(is_inverse_closed(d, a));
}

TEST(Specs, Parsing) {
  auto s = parse_group_spec("dihedral:7");
  EXPECT_EQ(s.family, GroupFamily::dihedral);
  EXPECT_EQ(s.parameter, 7u);
  EXPECT_THROW(parse_group_spec("dihedral"), Error);
  EXPECT_THROW(parse_group_spec("torus:3"), Error);
  EXPECT_THROW(parse_group_spec("cyclic:x"), Error);

  auto b = build_group(parse_group_spec("pgl2:3"));
  EXPECT_TRUE(b.tower.has_value());
  auto z6 = make_cyclic(6);
  EXPECT_EQ(parse_generator_spec("1,5", z6).elements, (std::vector<Element>{1, 5}));
  EXPECT_EQ(parse_generator_spec("all", z6).degree(), 6u);
  EXPECT_THROW(parse_generator_spec("1,2", z6), Error);  // not inverse closed
  EXPECT_THROW(parse_generator_spec("9", z6), Error);
}
