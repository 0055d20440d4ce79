#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "../support/check.hpp"
#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "hoed/topology.hpp"

using namespace hoed;

namespace {

std::vector<double> deaths(const PersistenceDiagram& pd) {
  std::vector<double> d;
  for (const auto& p : pd.pairs) d.push_back(p.death);
  return d;
}

}  // namespace

TEST_CASE("H0 worked examples") {
  const auto pd = rips_h0({{0.0}, {1.0}, {3.0}});
  CHECK(deaths(pd) == std::vector<double>{1.0, 2.0});
  CHECK(pd.infinite_births == std::vector<double>{0.0});
  CHECK(pd.n_points == 3);
  for (const auto& p : pd.pairs) CHECK(p.birth == 0.0);

  const auto one = rips_h0({{4.0, 2.0}});
  CHECK(one.pairs.empty());
  CHECK(one.infinite_births.size() == 1);

  const auto twin = rips_h0({{1.0, 1.0}, {1.0, 1.0}});
  CHECK(deaths(twin) == std::vector<double>{0.0});
  CHECK(twin.infinite_births.size() == 1);

  CHECK_ERROR_KIND(rips_h0({{1.0}, {1.0, 2.0}}), ErrorKind::Shape);
  CHECK_ERROR_KIND(rips_h0({}), ErrorKind::InsufficientData);
}

TEST_CASE("H0 summary") {
  const auto s = persistence_summary(rips_h0({{0.0}, {1.0}, {3.0}}));
  CHECK(s.total_persistence == 3.0);
  CHECK(s.max_death == 2.0);
  CHECK(s.finite_pairs == 2);
  const auto single = persistence_summary(rips_h0({{0.0}}));
  CHECK(single.total_persistence == 0.0);
  CHECK(single.finite_pairs == 0);

  testing::Gen gen(3);
  const auto cloud = gen.cloud(20, 2, 0.5);
  std::vector<std::vector<double>> unit;
  for (const auto& p : cloud) unit.push_back({p[0] + 0.5, p[1] + 0.5});
  const auto got = persistence_summary(rips_h0(unit));
  const auto heights = testing::kruskal_merge_heights(unit);
  double total = 0.0;
  for (double h : heights) total += h;
  CHECK(got.total_persistence == total);
  CHECK(got.max_death == heights.back());
  CHECK(got.finite_pairs == 19);
}

TEST_CASE("H0 deaths equal union-find merge heights") {
  testing::Gen gen(808);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 64));
    const auto dim = static_cast<std::size_t>(gen.integer(1, 3));
    auto cloud = gen.cloud(n, dim);
    if (gen.integer(0, 4) == 0 && n > 2) cloud[1] = cloud[0];  // coincident points
    const auto pd = rips_h0(cloud);
    CHECK(deaths(pd) == testing::kruskal_merge_heights(cloud));
    CHECK(pd.pairs.size() == n - 1);
  }
}

TEST_CASE("H0 scale equivariance and permutation invariance") {
  testing::Gen gen(909);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(gen.integer(2, 40));
    const auto cloud = gen.cloud(n, static_cast<std::size_t>(gen.integer(1, 3)));
    const auto base = deaths(rips_h0(cloud));

    for (double c : {0.25, 4.0}) {
      auto scaled = cloud;
      for (auto& p : scaled)
        for (auto& v : p) v *= c;
      const auto d = deaths(rips_h0(scaled));
      for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == c * base[i]);
    }
    const double c = gen.uniform(0.1, 10);
    auto scaled = cloud;
    for (auto& p : scaled)
      for (auto& v : p) v *= c;
    const auto d = deaths(rips_h0(scaled));
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(std::abs(d[i] - c * base[i]) <= 1e-12 * c * base[i]);

    auto shuffled = cloud;
    std::shuffle(shuffled.begin(), shuffled.end(), gen.engine());
    CHECK(deaths(rips_h0(shuffled)) == base);
  }
}
