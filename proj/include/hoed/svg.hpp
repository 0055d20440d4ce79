#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hoed/causality.hpp"
#include "hoed/elasticity.hpp"
#include "hoed/kinematics.hpp"
#include "hoed/phase_space.hpp"
#include "hoed/spectra.hpp"
#include "hoed/topology.hpp"

namespace hoed::svg {

enum class PlotKind { Elasticity, Indicators, Phase, Scalogram, Persistence, Graph };

PlotKind parse_plot_kind(std::string_view name);  // throws Parameter
std::string to_string(PlotKind kind);

std::string render_elasticity(const std::vector<ElasticitySeries>& series);
/// Six small multiples; with several frames the per-year mean is drawn over faint member lines.
std::string render_indicators(const std::vector<IndicatorFrame>& frames);
std::string render_phase(const std::vector<PhaseTrajectory>& trajectories);
/// Heat map with one <g class="row" data-scale=...> per scale and hatched cells outside the cone of influence.
std::string render_scalogram(const Scalogram& scalogram);
std::string render_persistence(const PersistenceDiagram& diagram, std::string_view title = {});
std::string render_graph(const CausalGraph& graph);

using PlotArtifact = std::variant<std::vector<ElasticitySeries>, std::vector<IndicatorFrame>,
                                  std::vector<PhaseTrajectory>, Scalogram, PersistenceDiagram, CausalGraph>;

PlotKind kind_of(const PlotArtifact& artifact);

/// Dispatches on the artifact type. Empty artifacts throw EmptyPlot.
std::string render_svg(const PlotArtifact& artifact);

}  // namespace hoed::svg
