#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hoed/series.hpp"

namespace hoed {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

/// Upper tail P(F > f) of the F(d1, d2) distribution.
double f_distribution_sf(double f, double d1, double d2);

struct GrangerResult {
  std::string source;
  std::string target;
  int lag = 1;
  double f_statistic = 0.0;
  double p_value = 1.0;
  std::size_t n_effective = 0;
};

/// Does the past of x improve a linear prediction of y beyond y's own past?
/// Lag p <= max_lag minimizes the unrestricted model's BIC on a common sample.
GrangerResult granger_test(const Series& x, const Series& y, int max_lag, std::string source = "x",
                           std::string target = "y");

struct CausalEdge {
  std::string source;
  std::string target;
  double p_value = 1.0;
  int lag = 1;
  double f_statistic = 0.0;
};

struct UntestedPair {
  std::string source;
  std::string target;
  std::string reason;
};

struct CausalGraph {
  std::vector<std::string> nodes;  ///< lexicographic
  std::vector<CausalEdge> edges;   ///< p_value < alpha_level, ordered by (source, target)
  std::vector<GrangerResult> tests;
  std::vector<UntestedPair> untested;
  double alpha_level = 0.05;
  int max_lag = 1;
};

/// Pairwise Granger tests over every ordered pair of `vars`.
CausalGraph build_graph(const std::map<std::string, Series>& frame, const std::vector<std::string>& vars,
                        double alpha_level, int max_lag);

/// "dot" or "json"; output is byte-stable for a given graph.
std::string export_graph(const CausalGraph& graph, std::string_view format);

/// True when the spread of the values is at rounding level relative to their magnitude.
bool is_effectively_constant(const std::vector<double>& values);

}  // namespace hoed
