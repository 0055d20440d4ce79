#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "../support/check.hpp"
#include "../support/generators.hpp"
#include "hoed/phase_space.hpp"

using namespace hoed;
using hoed::testing::rel_err;

namespace {

Series tabulate(int n, double (*f)(double)) {
  Series s;
  for (int i = 0; i < n; ++i) s.push_back({i, f(i)});
  return s;
}

PhaseTrajectory cloud_trajectory(std::vector<std::vector<double>> pts) {
  PhaseTrajectory t;
  t.points = std::move(pts);
  for (std::size_t i = 0; i < t.points.size(); ++i) t.years.push_back(static_cast<int>(i));
  return t;
}

}  // namespace

TEST_CASE("delay embedding point counts and coordinates") {
  Series s;
  for (int i = 0; i < 10; ++i) s.push_back({2000 + i, double(i)});
  Embedding spec{Embedding::Kind::Delay, 2, 3};
  const auto t = embed(s, spec, false);
  REQUIRE(t.points.size() == 6);
  CHECK(t.years.front() == 2004);
  CHECK(t.points.front() == std::vector<double>{4, 2, 0});
  CHECK(t.embedding.label() == "delay(2,3)");
  CHECK_ERROR_KIND(embed(s, Embedding{Embedding::Kind::Delay, 5, 3}, false), ErrorKind::InsufficientData);
  CHECK_ERROR_KIND(embed(s, Embedding{Embedding::Kind::Delay, 0, 3}, false), ErrorKind::Parameter);
  CHECK(embed(s, Embedding{Embedding::Kind::Delay, 3, 4}, false).points.size() == 1);
}

TEST_CASE("direct embedding of a sinusoid traces an ellipse") {
  const auto s = tabulate(200, [](double t) { return std::cos(0.1 * t); });
  const auto raw = embed(s, Embedding{}, false);
  CHECK(raw.embedding.label() == "direct(eps,v)");
  REQUIRE(raw.points.size() == 198);
  const double c = std::sin(0.1);  // central difference of cos(0.1 t) is -sin(0.1) sin(0.1 t)
  for (const auto& p : raw.points) CHECK(std::abs(p[0] * p[0] + (p[1] / c) * (p[1] / c) - 1.0) < 1e-12);

  // Standardized points are an affine image of that ellipse: fit a general conic and check residuals.
  const auto z = embed(s, Embedding{}, true);
  Eigen::MatrixXd design(z.points.size(), 5);
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(z.points.size());
  for (std::size_t i = 0; i < z.points.size(); ++i) {
    const double x = z.points[i][0], y = z.points[i][1];
    design.row(static_cast<Eigen::Index>(i)) << x * x, x * y, y * y, x, y;
  }
  const Eigen::VectorXd conic = design.colPivHouseholderQr().solve(ones);
  CHECK((design * conic - ones).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(conic(0) * conic(2) - 0.25 * conic(1) * conic(1) > 0.0);  // ellipse, not hyperbola
}

TEST_CASE("direct embedding of a constant is a fixed point") {
  Series s;
  for (int i = 0; i < 8; ++i) s.push_back({i, 3.5});
  const auto t = embed(s, Embedding{}, false);
  for (const auto& p : t.points) CHECK(p == std::vector<double>{3.5, 0.0});
  for (const auto& p : embed(s, Embedding{}, true).points) CHECK(p == std::vector<double>{0.0, 0.0});
}

TEST_CASE("embedding a kinematic stack uses its velocity field") {
  Series s;
  for (int i = 0; i < 8; ++i) s.push_back({i, 0.5 * i});
  const auto t = embed(kinematic_stack(s, "A"), false);
  CHECK(t.id == "A");
  REQUIRE(t.points.size() == 6);
  CHECK(t.points[0] == std::vector<double>{0.5, 0.5});
}

TEST_CASE("standardize_coordinates uses the population spread") {
  std::vector<std::vector<double>> pts{{1, 5}, {3, 5}};
  standardize_coordinates(pts);
  CHECK(pts[0] == std::vector<double>{-1, 0});
  CHECK(pts[1] == std::vector<double>{1, 0});
}

TEST_CASE("trajectory metrics worked examples") {
  const auto sq = cloud_trajectory({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto m = trajectory_metrics(sq, 0.5);
  CHECK(m.path_length == 3.0);
  CHECK(m.bounding_box_area == 1.0);
  CHECK(m.net_displacement == 1.0);
  CHECK(m.recurrence_rate == 0.0);
  CHECK(trajectory_metrics(sq, 1.0).recurrence_rate == doctest::Approx(1.0 / 3.0));

  const auto same = cloud_trajectory({{2, 2}, {2, 2}, {2, 2}, {2, 2}});
  const auto s = trajectory_metrics(same, 0.1);
  CHECK(s.path_length == 0.0);
  CHECK(s.recurrence_rate == 1.0);

  CHECK_ERROR_KIND(trajectory_metrics(sq, 0.0), ErrorKind::Parameter);
  CHECK_ERROR_KIND(trajectory_metrics(cloud_trajectory({{1, 1}}), 1.0), ErrorKind::InsufficientData);
  CHECK_ERROR_KIND(trajectory_metrics(cloud_trajectory({{1, 1}, {1}}), 1.0), ErrorKind::Shape);
}

TEST_CASE("recurrence rate on a circle matches an angular pair count") {
  testing::Gen gen(100);
  std::vector<double> theta(100);
  for (auto& t : theta) t = gen.uniform(0, 2 * std::numbers::pi);
  std::vector<std::vector<double>> pts;
  for (double t : theta) pts.push_back({std::cos(t), std::sin(t)});
  const double r = 0.1;
  // Chord length 2 sin(d/2) <= r with d the wrapped angular gap.
  const double max_gap = 2 * std::asin(r / 2);
  std::size_t pairs = 0, close = 0;
  for (std::size_t i = 0; i < theta.size(); ++i)
    for (std::size_t j = i + 2; j < theta.size(); ++j) {
      double d = std::fmod(std::abs(theta[i] - theta[j]), 2 * std::numbers::pi);
      d = std::min(d, 2 * std::numbers::pi - d);
      ++pairs;
      if (d <= max_gap) ++close;
    }
  const double oracle = double(close) / double(pairs);
  const double got = trajectory_metrics(cloud_trajectory(pts), r).recurrence_rate;
  CHECK(std::abs(got - oracle) < 0.02);
  CHECK(std::abs(got - oracle) < 1e-3);
}

TEST_CASE("trajectory metric invariances") {
  testing::Gen gen(55);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(gen.integer(3, 40));
    const auto pts = gen.cloud(n, 2);
    const double r = gen.uniform(0.1, 1.0);
    const auto base = trajectory_metrics(cloud_trajectory(pts), r);
    CHECK(base.net_displacement <= base.path_length + 1e-12);
    CHECK(trajectory_metrics(cloud_trajectory(pts), 2 * r).recurrence_rate >= base.recurrence_rate);

    const double dx = gen.uniform(-5, 5), dy = gen.uniform(-5, 5), phi = gen.uniform(0, 6.28);
    auto moved = pts;
    for (auto& p : moved) {
      const double x = p[0], y = p[1];
      p = {std::cos(phi) * x - std::sin(phi) * y + dx, std::sin(phi) * x + std::cos(phi) * y + dy};
    }
    const auto mm = trajectory_metrics(cloud_trajectory(moved), r);
    CHECK(rel_err(mm.path_length, base.path_length) < 1e-12);
    CHECK(rel_err(mm.net_displacement, base.net_displacement) < 1e-12);

    auto shifted = pts;
    for (auto& p : shifted) p = {p[0] + dx, p[1] + dy};
    const auto ms = trajectory_metrics(cloud_trajectory(shifted), r);
    CHECK(rel_err(ms.path_length, base.path_length) < 1e-12);
    CHECK(rel_err(ms.bounding_box_area, base.bounding_box_area) < 1e-12);

    const double s = 4.0;  // power of two keeps the pair tests exact
    auto scaled = pts;
    for (auto& p : scaled) p = {s * p[0], s * p[1]};
    const auto sc = trajectory_metrics(cloud_trajectory(scaled), s * r);
    CHECK(rel_err(sc.path_length, s * base.path_length) < 1e-12);
    CHECK(rel_err(sc.net_displacement, s * base.net_displacement) < 1e-12);
    CHECK(rel_err(sc.bounding_box_area, s * s * base.bounding_box_area) < 1e-12);
    CHECK(sc.recurrence_rate == base.recurrence_rate);

    auto reversed = pts;
    std::reverse(reversed.begin(), reversed.end());
    const auto rv = trajectory_metrics(cloud_trajectory(reversed), r);
    CHECK(rel_err(rv.path_length, base.path_length) < 1e-12);
    CHECK(rv.bounding_box_area == base.bounding_box_area);
    CHECK(rv.recurrence_rate == base.recurrence_rate);
  }
}
