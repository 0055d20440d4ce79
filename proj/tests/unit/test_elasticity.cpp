#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "../support/check.hpp"
#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "hoed/elasticity.hpp"
#include "hoed/synthetic.hpp"

using namespace hoed;
using hoed::testing::rel_err;

namespace {

MaybeSeries maybe(const std::vector<double>& v, int start = 0) {
  MaybeSeries s;
  for (std::size_t i = 0; i < v.size(); ++i) s.push_back({start + static_cast<int>(i), v[i]});
  return s;
}

}  // namespace

TEST_CASE("ols_fit worked examples") {
  const std::vector<double> x{0, 1, 2}, y{1, 3, 5};
  const auto f = ols_fit(x, y, 1);
  CHECK(std::abs(f.intercept() - 1.0) < 1e-12);
  CHECK(std::abs(f.slope() - 2.0) < 1e-12);
  CHECK(f.rmse < 1e-12);
  CHECK(f.r2 == doctest::Approx(1.0));

  const std::vector<double> x2{1, 2, 3, 4}, y2{7, 7, 7, 7};
  const auto g = ols_fit(x2, y2, 1);
  CHECK(std::abs(g.slope()) < 1e-12);
  CHECK(std::abs(g.intercept() - 7.0) < 1e-12);

  const std::vector<double> x3{0, 1, 2, 3, 4};
  auto noise = normal_noise(5, 0.01, 42);
  std::vector<double> y3;
  for (std::size_t i = 0; i < 5; ++i) y3.push_back(x3[i] * x3[i] + noise[i]);
  const auto q = ols_fit(x3, y3, 2);
  const auto oracle = testing::exact_polyfit(x3, y3, 2);
  CHECK(std::abs(q.coefficients[2] - 1.0) < 0.02);
  for (int k = 0; k <= 2; ++k) CHECK(rel_err(q.coefficients[k], oracle[k]) < 1e-10);
}

TEST_CASE("ols_fit agrees with the exact-arithmetic oracle on random designs") {
  testing::Gen gen(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int degree = gen.integer(1, 3);
    const int n = gen.integer(degree + 2, 30);
    const double centre = gen.uniform(-50, 50);
    std::vector<double> x, y;
    for (int i = 0; i < n; ++i) {
      x.push_back(centre + gen.uniform(-3, 3));
      y.push_back(gen.normal(2.0));
    }
    const auto fit = ols_fit(x, y, degree);
    const auto oracle = testing::exact_polyfit(x, y, degree);
    // Compare fitted values: coefficients of an off-centre polynomial are ill-conditioned by construction.
    for (int i = 0; i < n; ++i) {
      double want = 0;
      for (int k = degree; k >= 0; --k) want = want * x[i] + oracle[k];
      const double yscale = std::max(1.0, std::abs(y[i]));
      CHECK(std::abs(fit.evaluate(x[i]) - want) / yscale < 1e-8);
    }
    if (degree == 1 && std::abs(centre) < 10) {
      CHECK(rel_err(fit.slope(), oracle[1]) < 1e-10);
      CHECK(rel_err(fit.intercept(), oracle[0]) < 1e-10);
    }
    double ssr = 0;
    for (double r : fit.residuals) ssr += r * r;
    CHECK(std::abs(fit.rmse * fit.rmse * n - ssr) <= 1e-12 * std::max(ssr, 1e-300) + 1e-300);
    CHECK(fit.r2 <= 1.0 + 1e-12);
  }
}

TEST_CASE("ols_fit invariances") {
  testing::Gen gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x, y;
    for (int i = 0; i < 12; ++i) {
      x.push_back(gen.uniform(0, 10));
      y.push_back(gen.uniform(-5, 5));
    }
    const auto base = ols_fit(x, y, 1);
    const double c = gen.uniform(-100, 100);
    auto shifted = y;
    for (auto& v : shifted) v += c;
    const auto fs = ols_fit(x, shifted, 1);
    CHECK(std::abs(fs.slope() - base.slope()) < 1e-12 * std::max(1.0, std::abs(c)));
    CHECK(std::abs(fs.intercept() - base.intercept() - c) < 1e-11 * std::max(1.0, std::abs(c)));
    const double s = gen.uniform(0.5, 4);
    auto ys = y, xs = x;
    for (auto& v : ys) v *= s;
    for (auto& v : xs) v *= s;
    CHECK(rel_err(ols_fit(x, ys, 1).slope(), s * base.slope()) < 1e-12);
    CHECK(rel_err(ols_fit(xs, y, 1).slope(), base.slope() / s) < 1e-12);
  }
}

TEST_CASE("ols_fit errors") {
  const std::vector<double> x{1, 1, 1, 1}, y{1, 2, 3, 4};
  CHECK_ERROR_KIND(ols_fit(x, y, 1), ErrorKind::Degenerate);
  const std::vector<double> shorter{1, 2, 3};
  CHECK_ERROR_KIND(ols_fit(shorter, y, 1), ErrorKind::Shape);
  const std::vector<double> two{1, 2};
  CHECK_ERROR_KIND(ols_fit(two, two, 1), ErrorKind::InsufficientData);
}

TEST_CASE("rolling_elasticity worked examples") {
  const auto es = rolling_elasticity(maybe({0, 1, 2, 3, 4}), maybe({0, 1, 2, 4, 8}), 3, "A");
  REQUIRE(es.points.size() == 3);
  CHECK(es.points[0].year == 2);
  CHECK(std::abs(es.points[0].epsilon - 1.0) < 1e-12);
  CHECK(std::abs(es.points[1].epsilon - 1.5) < 1e-12);
  CHECK(std::abs(es.points[2].epsilon - 3.0) < 1e-12);
  for (int i = 0; i < 3; ++i) {
    const std::vector<double> xs{double(i), double(i + 1), double(i + 2)};
    const std::vector<double> ys{std::vector<double>{0, 1, 2, 4, 8}[i], std::vector<double>{0, 1, 2, 4, 8}[i + 1],
                                 std::vector<double>{0, 1, 2, 4, 8}[i + 2]};
    CHECK(rel_err(es.points[i].epsilon, testing::exact_polyfit(xs, ys, 1)[1]) < 1e-12);
  }

  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(0.3 * i + 1);
    y.push_back(0.8 * x.back() + 2);
  }
  const auto ten = rolling_elasticity(maybe(x, 1), maybe(y, 1), 5);
  REQUIRE(ten.points.size() == 6);
  CHECK(ten.points.front().year == 5);
  CHECK(ten.points.back().year == 10);
  for (const auto& p : ten.points) CHECK(std::abs(p.epsilon - 0.8) < 1e-10);
}

TEST_CASE("rolling_elasticity skips windows with a missing value or a flat driver") {
  auto x = maybe({1, 2, 3, 4, 5, 6, 7, 8});
  auto y = maybe({1, 2, 3, 4, 5, 6, 7, 8});
  y[3].value.reset();
  const auto es = rolling_elasticity(x, y, 3);
  CHECK(es.points.size() == 3);
  CHECK(es.omitted_missing == 3);
  auto flat = maybe({1, 1, 1, 4, 5, 6});
  const auto fd = rolling_elasticity(flat, maybe({1, 2, 3, 4, 5, 6}), 3);
  CHECK(fd.omitted_degenerate == 1);
  CHECK(fd.points.size() == 3);
}

TEST_CASE("rolling_elasticity errors") {
  CHECK_ERROR_KIND(rolling_elasticity(maybe({1, 2, 3}), maybe({1, 2, 3}), 5), ErrorKind::InsufficientData);
  CHECK_ERROR_KIND(rolling_elasticity(maybe({1, 2, 3}), maybe({1, 2, 3}), 2), ErrorKind::Parameter);
  CHECK_ERROR_KIND(rolling_elasticity(maybe({1, 2, 3, 4}), maybe({1, 2, 3}), 3), ErrorKind::Shape);
}

TEST_CASE("score_windows on an exact log-linear panel") {
  SyntheticSpec spec;
  spec.kind = SyntheticSpec::Kind::LoglinearPanel;
  spec.entities = 5;
  spec.years = 30;
  const auto panel = log_transform(generate_panel(spec), {"gdp", "co2"});
  const auto segs = paired_segments(panel, "log_gdp", "log_co2");
  const auto table = score_windows(segs, {3, 5, 7, 10, 15});
  REQUIRE(table.rows.size() == 5);
  for (const auto& r : table.rows) {
    CHECK(r.feasible);
    CHECK(r.rmse < 1e-10);
  }
  // Every candidate sits below the floor, so the smallest feasible one is taken and flagged.
  CHECK(table.floor_fallback);
  CHECK(table.selected_window == 3);
  const auto unfloored = score_windows(segs, {7, 5}, 0.0);
  CHECK(std::find(std::begin({5, 7}), std::end({5, 7}), unfloored.selected_window) != std::end({5, 7}));
}

TEST_CASE("score_windows on a noisy panel degrades with w and ignores entity order") {
  SyntheticSpec spec;
  spec.kind = SyntheticSpec::Kind::LoglinearPanel;
  spec.entities = 20;
  spec.years = 40;
  spec.noise_sigma = 0.1;
  spec.seed = 7;
  const auto panel = log_transform(generate_panel(spec), {"gdp", "co2"});
  auto segs = paired_segments(panel, "log_gdp", "log_co2");
  const auto table = score_windows(segs, {3, 5, 7, 10, 15});
  for (std::size_t i = 1; i < table.rows.size(); ++i) CHECK(table.rows[i].rmse >= table.rows[i - 1].rmse);
  CHECK(table.selected_window == 3);
  CHECK_FALSE(table.floor_fallback);

  // Brute-force refit of one candidate: pool the residuals of every window by hand.
  double ssr = 0;
  std::size_t count = 0;
  for (const auto& s : segs)
    for (std::size_t end = 4; end < s.x.size(); ++end) {
      std::vector<double> xs, ys;
      for (std::size_t k = end - 4; k <= end; ++k) {
        xs.push_back(*s.x[k].value);
        ys.push_back(*s.y[k].value);
      }
      const auto b = testing::exact_polyfit(xs, ys, 1);
      for (std::size_t k = 0; k < 5; ++k) {
        const double r = ys[k] - (b[0] + b[1] * xs[k]);
        ssr += r * r;
        ++count;
      }
    }
  CHECK(rel_err(table.rows[1].rmse, std::sqrt(ssr / count)) < 1e-9);

  std::reverse(segs.begin(), segs.end());
  const auto reversed = score_windows(segs, {3, 5, 7, 10, 15});
  for (std::size_t i = 0; i < table.rows.size(); ++i) CHECK(reversed.rows[i].rmse == table.rows[i].rmse);
}

TEST_CASE("score_windows errors") {
  std::vector<PairedSegment> segs{{"A", maybe({1, 2, 3}), maybe({1, 2, 3})}};
  CHECK_ERROR_KIND(score_windows(segs, {}), ErrorKind::Parameter);
  CHECK_ERROR_KIND(score_windows(segs, {2}), ErrorKind::Parameter);
  CHECK_ERROR_KIND(score_windows(segs, {5}), ErrorKind::InsufficientData);
  std::vector<PairedSegment> flat{{"A", maybe({1, 1, 1, 1}), maybe({1, 2, 3, 4})}};
  CHECK_ERROR_KIND(score_windows(flat, {3}), ErrorKind::Degenerate);
}

TEST_CASE("paired_segments splits at year gaps") {
  const auto p = load_panel("entity,year,gdp,co2\nA,2000,1,1\nA,2001,1,1\nA,2003,1,1\nB,2000,1,1\n");
  const auto segs = paired_segments(p, "gdp", "co2");
  REQUIRE(segs.size() == 3);
  CHECK(segs[0].x.size() == 2);
  CHECK(segs[1].x.front().year == 2003);
}

TEST_CASE("ekc_curve turning points") {
  std::vector<double> x, y;
  for (int i = 0; i <= 4; ++i) {
    x.push_back(i);
    y.push_back(-(i - 2.0) * (i - 2.0) + 5);
  }
  auto c = ekc_curve(x, y, 2);
  REQUIRE(c.turning_points.size() == 1);
  CHECK(std::abs(c.turning_points[0] - 2.0) < 1e-10);
  for (auto& v : y) v += 123.0;
  CHECK(std::abs(ekc_curve(x, y, 2).turning_points.at(0) - 2.0) < 1e-10);

  std::vector<double> lin;
  for (double v : x) lin.push_back(3 * v + 1);
  const auto l = ekc_curve(x, lin, 2);
  CHECK(std::abs(l.fit.coefficients[2]) < 1e-10);
  CHECK(l.turning_points.empty());

  std::vector<double> cx, cy;
  for (int i = 0; i <= 40; ++i) {
    cx.push_back(-2 + 0.1 * i);
    cy.push_back(cx.back() * cx.back() * cx.back() - 3 * cx.back());
  }
  const auto cubic = ekc_curve(cx, cy, 3);
  REQUIRE(cubic.turning_points.size() == 2);
  CHECK(std::abs(cubic.turning_points[0] + 1.0) < 1e-9);
  CHECK(std::abs(cubic.turning_points[1] - 1.0) < 1e-9);

  CHECK_ERROR_KIND(ekc_curve(x, y, 4), ErrorKind::Parameter);
}

TEST_CASE("ekc_panel generator's vertex is recovered") {
  SyntheticSpec spec;
  spec.kind = SyntheticSpec::Kind::EkcPanel;
  spec.noise_sigma = 0.01;
  spec.seed = 3;
  const auto panel = log_transform(generate_panel(spec), {"gdp", "co2"});
  std::vector<double> x, y;
  for (const auto& o : panel.observations) {
    x.push_back(*o.values[panel.variable_index("log_gdp")]);
    y.push_back(*o.values[panel.variable_index("log_co2")]);
  }
  const auto c = ekc_curve(x, y, 2);
  REQUIRE(c.turning_points.size() == 1);
  CHECK(std::abs(c.turning_points[0] - 2.0) < 0.05);
}
