#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hoed/causality.hpp"
#include "hoed/elasticity.hpp"
#include "hoed/hamiltonian.hpp"
#include "hoed/kinematics.hpp"
#include "hoed/panel.hpp"
#include "hoed/phase_space.hpp"
#include "hoed/spectra.hpp"
#include "hoed/topology.hpp"
#include "json.hpp"

/// Bundle file formats. CSV writers emit a header row and "NA" for undefined values;
/// JSON objects use sorted keys so output is byte-stable.
namespace hoed::io {

using Json = nlohmann::json;

Json to_json(const ValidationReport& report);
Json to_json(const WindowMetricsTable& table);
Json to_json(const FitResult& fit);
Json to_json(const EkcCurve& curve);
Json to_json(const Alpha& alpha);
Json to_json(const PhaseMetrics& metrics);
Json to_json(const Scalogram& scalogram);
Json to_json(const PersistenceDiagram& diagram);
Json to_json(const PersistenceSummary& summary);
Json to_json(const CausalGraph& graph);

/// JSON sidecar of a Hamiltonian run: {alpha, k, mode, provenance}.
Json hamiltonian_sidecar(const Alpha& alpha, double stiffness, PowerScheme scheme);

std::string elasticity_csv(const std::vector<ElasticitySeries>& series);
std::string kinematics_csv(const std::vector<KinematicStack>& stacks);
std::string indicators_csv(const std::vector<IndicatorFrame>& frames);
std::string hamiltonian_csv(const std::vector<HamiltonianTrace>& traces);
std::string phase_csv(const std::vector<PhaseTrajectory>& trajectories);

std::vector<ElasticitySeries> read_elasticity_csv(std::string_view csv);
std::vector<IndicatorFrame> read_indicators_csv(std::string_view csv);
std::vector<PhaseTrajectory> read_phase_csv(std::string_view csv);
Scalogram scalogram_from_json(const Json& j);
PersistenceDiagram persistence_from_json(const Json& j);
CausalGraph graph_from_json(const Json& j);

/// JSON number or null for NaN/inf/absent.
Json number_or_null(double v);
Json number_or_null(const std::optional<double>& v);

}  // namespace hoed::io
