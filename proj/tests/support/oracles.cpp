#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include <boost/math/special_functions/beta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace hoed::testing {

namespace mp = boost::multiprecision;
using Rational = mp::cpp_rational;
using Float50 = mp::cpp_bin_float_50;

namespace {

template <class T>
std::vector<T> solve(std::vector<std::vector<T>> a, std::vector<T> b) {
  const auto n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col; r < n; ++r)
      if (abs(a[r][col]) > abs(a[pivot][col])) pivot = r;
    if (a[pivot][col] == 0) throw std::runtime_error("singular normal equations");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const T f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<T> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = b[i] / a[i][i];
  return out;
}

}  // namespace

std::vector<double> exact_polyfit(const std::vector<double>& x, const std::vector<double>& y, int degree) {
  const auto p = static_cast<std::size_t>(degree) + 1;
  std::vector<std::vector<Rational>> ata(p, std::vector<Rational>(p, 0));
  std::vector<Rational> aty(p, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Rational xi(x[i]);
    const Rational yi(y[i]);
    std::vector<Rational> pow(p, 1);
    for (std::size_t k = 1; k < p; ++k) pow[k] = pow[k - 1] * xi;
    for (std::size_t r = 0; r < p; ++r) {
      aty[r] += pow[r] * yi;
      for (std::size_t c = 0; c < p; ++c) ata[r][c] += pow[r] * pow[c];
    }
  }
  const auto sol = solve(ata, aty);
  std::vector<double> out;
  for (const auto& v : sol) out.push_back(v.convert_to<double>());
  return out;
}

double precise_rss(const std::vector<std::vector<double>>& design, const std::vector<double>& y) {
  const auto p = design.front().size();
  std::vector<std::vector<Float50>> ata(p, std::vector<Float50>(p, 0));
  std::vector<Float50> aty(p, 0);
  for (std::size_t i = 0; i < design.size(); ++i)
    for (std::size_t r = 0; r < p; ++r) {
      aty[r] += Float50(design[i][r]) * y[i];
      for (std::size_t c = 0; c < p; ++c) ata[r][c] += Float50(design[i][r]) * design[i][c];
    }
  const auto b = solve(ata, aty);
  Float50 rss = 0;
  for (std::size_t i = 0; i < design.size(); ++i) {
    Float50 fit = 0;
    for (std::size_t r = 0; r < p; ++r) fit += b[r] * design[i][r];
    const Float50 e = Float50(y[i]) - fit;
    rss += e * e;
  }
  return rss.convert_to<double>();
}

double f_sf_reference(double f, double d1, double d2) {
  if (!(f > 0)) return 1.0;
  const Float50 x = Float50(d1) * f / (Float50(d1) * f + d2);
  return boost::math::ibetac(Float50(d1) / 2, Float50(d2) / 2, x).convert_to<double>();
}

double ibeta_reference(double a, double b, double x) {
  return boost::math::ibeta(Float50(a), Float50(b), Float50(x)).convert_to<double>();
}

std::vector<double> kruskal_merge_heights(const std::vector<std::vector<double>>& points) {
  const auto n = points.size();
  std::vector<std::tuple<double, std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < points[i].size(); ++k) {
        const double d = points[i][k] - points[j][k];
        s += d * d;
      }
      edges.emplace_back(std::sqrt(s), i, j);
    }
  std::sort(edges.begin(), edges.end());
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<double> heights;
  for (const auto& [d, i, j] : edges) {
    const auto a = find(i), b = find(j);
    if (a == b) continue;
    parent[a] = b;
    heights.push_back(d);
  }
  return heights;
}

double granger_f_reference(const std::vector<double>& x, const std::vector<double>& y, int p, int start) {
  std::vector<std::vector<double>> restricted, unrestricted;
  std::vector<double> target;
  for (std::size_t t = static_cast<std::size_t>(start); t < y.size(); ++t) {
    std::vector<double> r{1.0};
    for (int k = 1; k <= p; ++k) r.push_back(y[t - k]);
    auto u = r;
    for (int k = 1; k <= p; ++k) u.push_back(x[t - k]);
    restricted.push_back(r);
    unrestricted.push_back(u);
    target.push_back(y[t]);
  }
  const double rss_r = precise_rss(restricted, target);
  const double rss_u = precise_rss(unrestricted, target);
  const double n = static_cast<double>(target.size());
  return ((rss_r - rss_u) / p) / (rss_u / (n - 2.0 * p - 1.0));
}

}  // namespace hoed::testing
