#include <doctest.h>

#include <cmath>
#include <numbers>
#include <regex>

#include "../support/check.hpp"
#include "../support/generators.hpp"
#include "hoed/io.hpp"
#include "hoed/svg.hpp"

using namespace hoed;
using namespace hoed::io;

namespace {

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

Scalogram tone_scalogram() {
  Series s;
  for (int t = 0; t < 128; ++t) s.push_back({2000 + t, std::sin(2 * std::numbers::pi * t / 8.0)});
  return morlet_cwt(s, dyadic_scales(128), kDefaultOmega0, "tone");
}

CausalGraph sample_graph() {
  CausalGraph g;
  g.nodes = {"H", "kei", "power"};
  g.edges = {{"power", "kei", 0.0012, 1, 14.2}, {"kei", "H", 0.031, 2, 3.9}};
  g.tests = {{"power", "kei", 1, 14.2, 0.0012, 38}, {"kei", "H", 2, 3.9, 0.031, 38}};
  g.untested = {{"H", "power", "degenerate: H is constant on the overlap"}};
  g.alpha_level = 0.05;
  g.max_lag = 2;
  return g;
}

}  // namespace

TEST_CASE("persistence SVG markers") {
  PersistenceDiagram pd;
  pd.pairs = {{0, 1}, {0, 2}};
  pd.infinite_births = {0};
  pd.n_points = 3;
  const auto svg = svg::render_persistence(pd, "demo");
  CHECK(count(svg, "<circle class=\"finite\"") == 2);
  CHECK(count(svg, "<path class=\"infinite\"") == 1);
  CHECK(count(svg, "class=\"diagonal\"") == 1);
  CHECK(svg == svg::render_persistence(pd, "demo"));
  CHECK(svg.find("<svg") != std::string::npos);
}

TEST_CASE("scalogram SVG: brightest row sits at the Morlet-corrected scale") {
  const auto sg = tone_scalogram();
  const auto svg = svg::render_scalogram(sg);
  const std::regex row(R"re(<g class="row" data-scale="([^"]+)" data-sum="([^"]+)">)re");
  double best_scale = 0, best_sum = -1;
  std::size_t rows = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), row); it != std::sregex_iterator(); ++it, ++rows) {
    const double sum = std::stod((*it)[2]);
    if (sum > best_sum) {
      best_sum = sum;
      best_scale = std::stod((*it)[1]);
    }
  }
  CHECK(rows == sg.scales.size());
  double nearest = sg.scales.front();
  for (double s : sg.scales)
    if (std::abs(s - 7.74) < std::abs(nearest - 7.74)) nearest = s;
  CHECK(best_scale == nearest);
  CHECK(count(svg, "class=\"cell\"") == sg.scales.size() * sg.times.size());
  CHECK(count(svg, "class=\"outside-coi\"") > 0);
  CHECK(svg == svg::render_scalogram(sg));
}

TEST_CASE("every plot kind renders deterministically and rejects empty input") {
  testing::Gen gen(2);
  std::vector<ElasticitySeries> es(1);
  es[0].entity = "A";
  es[0].window = 5;
  for (int y = 0; y < 20; ++y) es[0].points.push_back({2000 + y, gen.uniform(0, 1)});
  Series eps;
  for (const auto& p : es[0].points) eps.push_back({p.year, p.epsilon});
  const auto stack = kinematic_stack(eps, "A");
  std::vector<IndicatorFrame> frames{indicators(stack, 3)};
  std::vector<PhaseTrajectory> traj{embed(stack)};

  const std::vector<svg::PlotArtifact> artifacts{es, frames, traj, tone_scalogram(), rips_h0(gen.cloud(10, 2)),
                                                 sample_graph()};
  for (const auto& a : artifacts) {
    const auto once = svg::render_svg(a);
    CHECK(once == svg::render_svg(a));
    CHECK(once.find("</svg>") != std::string::npos);
    CHECK(svg::parse_plot_kind(svg::to_string(svg::kind_of(a))) == svg::kind_of(a));
  }
  CHECK(count(svg::render_svg(frames), "class=\"panel\"") == 6);
  const auto graph = svg::render_graph(sample_graph());
  CHECK(count(graph, "class=\"node\"") == 3);
  CHECK(count(graph, "class=\"edge\"") == 2);
  CHECK(graph.find("p=0.0012") != std::string::npos);

  CHECK_ERROR_KIND(svg::render_svg(std::vector<ElasticitySeries>{}), ErrorKind::EmptyPlot);
  CHECK_ERROR_KIND(svg::render_svg(Scalogram{}), ErrorKind::EmptyPlot);
  CHECK_ERROR_KIND(svg::render_svg(PersistenceDiagram{}), ErrorKind::EmptyPlot);
  CHECK_ERROR_KIND(svg::render_svg(CausalGraph{}), ErrorKind::EmptyPlot);
  CHECK_ERROR_KIND(svg::parse_plot_kind("pie"), ErrorKind::Parameter);
}

TEST_CASE("JSON round trips") {
  const auto sg = tone_scalogram();
  const auto back = scalogram_from_json(to_json(sg));
  CHECK(back.times == sg.times);
  CHECK(back.scales == sg.scales);
  CHECK(back.power == sg.power);
  CHECK(back.coi == sg.coi);

  testing::Gen gen(4);
  const auto pd = rips_h0(gen.cloud(15, 3));
  const auto pj = to_json(pd);
  CHECK(pj["infinite"][0][1].is_null());
  const auto pb = persistence_from_json(pj);
  CHECK(pb.pairs == pd.pairs);
  CHECK(pb.infinite_births == pd.infinite_births);
  CHECK(pb.n_points == 15);

  const auto g = sample_graph();
  const auto gb = graph_from_json(to_json(g));
  CHECK(to_json(gb).dump() == to_json(g).dump());
  CHECK(export_graph(gb, "dot") == export_graph(g, "dot"));

  CHECK_ERROR_KIND(scalogram_from_json(Json::parse("{\"times\": 3}")), ErrorKind::Schema);
  CHECK(number_or_null(std::nan("")).is_null());
  CHECK(number_or_null(std::optional<double>{}).is_null());
}

TEST_CASE("CSV round trips") {
  testing::Gen gen(6);
  std::vector<ElasticitySeries> es(2);
  es[0].entity = "A";
  es[1].entity = "B, quoted";
  for (auto& s : es) {
    s.window = 5;
    for (int y = 0; y < 12; ++y) s.points.push_back({1990 + y, gen.normal()});
  }
  const auto csv = elasticity_csv(es);
  const auto back = read_elasticity_csv(csv);
  REQUIRE(back.size() == 2);
  CHECK(back[1].entity == "B, quoted");
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < 12; ++i) CHECK(back[k].points[i].epsilon == es[k].points[i].epsilon);
  CHECK(elasticity_csv(back).substr(csv.find('\n')) == csv.substr(csv.find('\n')));

  const auto stack = gen.random_stack(10);
  std::vector<IndicatorFrame> frames{indicators(stack, 2)};
  const auto icsv = indicators_csv(frames);
  CHECK(icsv.rfind("entity,year,power,kei,inertia,smoothness,drift,shock\n", 0) == 0);
  CHECK(icsv.find(",NA,") != std::string::npos);  // drift before the window fills
  CHECK(indicators_csv(read_indicators_csv(icsv)) == icsv);

  std::vector<PhaseTrajectory> traj{embed(stack, false)};
  traj[0].id = "gen";
  const auto pcsv = phase_csv(traj);
  CHECK(phase_csv(read_phase_csv(pcsv)) == pcsv);

  CHECK(kinematics_csv({stack}).rfind("entity,year,epsilon,velocity,acceleration,jerk\n", 0) == 0);
  const auto trace = generalized_hamiltonian(stack, Alpha{});
  CHECK(hamiltonian_csv({trace}).rfind("entity,year,H,system_power,marginal_response,policy_sensitivity\n", 0) == 0);
  const auto side = hamiltonian_sidecar(Alpha{}, 1.0, PowerScheme::Central);
  CHECK(side["mode"] == "generalized");
  CHECK(side["alpha"]["alpha1"] == 1.0);
}
