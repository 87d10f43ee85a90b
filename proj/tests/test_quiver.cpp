#include <qha/quiver.hpp>
#include <qha/rng.hpp>

#include <gtest/gtest.h>

using namespace qha;

namespace {

Quiver a2() { return Quiver("A2", {"1", "2"}, {{"a", "1", "2"}}); }
Quiver a3() { return Quiver("A3", {"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}}); }

// Random acyclic quiver: arrows only go from lower to higher rank in a
// shuffled order, with occasional parallel arrows.
Quiver random_dag(Rng& rng, std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    names.push_back("v" + std::to_string(i));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i)
    order[i] = i;
  for (std::size_t i = n; i > 1; --i)
    std::swap(order[i - 1], order[rng.below(i)]);
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  int k = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      int mult = rng.coin(35) ? 1 + (rng.coin(15) ? 1 : 0) : 0;
      for (int m = 0; m < mult; ++m)
        arrows.emplace_back("x" + std::to_string(k++), names[order[i]], names[order[j]]);
    }
  return Quiver("R", names, arrows);
}

// Transitive-closure style DP over a topological order.
std::size_t dp_path_count(const Quiver& q) {
  const std::size_t n = q.vertex_count();
  std::size_t total = 0;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> count(n, 0);
    count[s] = 1;
    for (auto v : q.topological_order())
      for (const auto& a : q.arrows())
        if (a.tail == v)
          count[a.head] += count[v];
    for (auto c : count)
      total += c;
  }
  return total;
}

}  // namespace

TEST(Quiver, RejectsInvalid) {
  EXPECT_THROW(Quiver("C", {"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}}), std::invalid_argument);
  EXPECT_THROW(Quiver("L", {"1"}, {{"a", "1", "1"}}), std::invalid_argument);
  EXPECT_THROW(Quiver("D", {"1", "1"}, {}), std::invalid_argument);
  EXPECT_THROW(Quiver("D", {"1", "2"}, {{"a", "1", "2"}, {"a", "1", "2"}}), std::invalid_argument);
  EXPECT_THROW(Quiver("U", {"1"}, {{"a", "1", "9"}}), std::invalid_argument);
}

TEST(Quiver, MorphismCounts) {
  EXPECT_EQ(morphism_count(a2()), 3u);
  EXPECT_EQ(morphism_count(Quiver("pt", {"1"}, {})), 1u);
  EXPECT_EQ(morphism_count(a3()), 6u);
  auto m = enumerate_morphisms(a3());
  ASSERT_EQ(m.at({0, 2}).size(), 1u);
  EXPECT_EQ(m.at({0, 2})[0].label(a3()), "ba");
}

TEST(Quiver, EnumerationOrderIsDeterministic) {
  Quiver k("K", {"1", "2", "3"}, {{"b", "1", "2"}, {"a", "1", "2"}, {"c", "2", "3"}});
  auto ps = paths_between(k, 0, 1);
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0].label(k), "a");
  EXPECT_EQ(ps[1].label(k), "b");
  auto long_ps = paths_between(k, 0, 2);
  ASSERT_EQ(long_ps.size(), 2u);
  EXPECT_EQ(long_ps[0].label(k), "ca");
}

TEST(Path, Compose) {
  Quiver q = a3();
  Path a = Path::of_arrow(q, 0), b = Path::of_arrow(q, 1);
  EXPECT_EQ(compose(Path::trivial_at(1), a), a);
  Path ba = compose(b, a);
  EXPECT_EQ(ba.source, 0u);
  EXPECT_EQ(ba.target, 2u);
  EXPECT_EQ(ba.label(q), "ba");
  EXPECT_TRUE(ba.valid(q));
  EXPECT_THROW(compose(a, b), std::invalid_argument);
}

TEST(Quiver, OppositeIsInvolutive) {
  Quiver q = a3();
  EXPECT_EQ(q.opposite().opposite(), q);
  EXPECT_EQ(q.opposite().arrow(0).tail, 1u);
}

TEST(QuiverProperties, PathCountMatchesDp) {
  Rng rng(99);
  for (int it = 0; it < 200; ++it) {
    Quiver q = random_dag(rng, rng.below(6) + 1);
    EXPECT_EQ(morphism_count(q), dp_path_count(q));
  }
}

TEST(QuiverProperties, AssociativityAndUnits) {
  Rng rng(3);
  for (int it = 0; it < 40; ++it) {
    Quiver q = random_dag(rng, rng.below(5) + 1);
    std::vector<Path> all;
    for (auto& [k, v] : enumerate_morphisms(q))
      all.insert(all.end(), v.begin(), v.end());
    for (const auto& p : all) {
      ASSERT_TRUE(p.valid(q));
      EXPECT_EQ(compose(Path::trivial_at(p.target), p), p);
      EXPECT_EQ(compose(p, Path::trivial_at(p.source)), p);
    }
    for (const auto& p : all)
      for (const auto& qq : all) {
        if (qq.target != p.source)
          continue;
        for (const auto& r : all) {
          if (r.source != p.target)
            continue;
          EXPECT_EQ(compose(compose(r, p), qq), compose(r, compose(p, qq)));
        }
      }
  }
}
