#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaplab/game.hpp"

namespace gaplab {

struct CertificateCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct NamedValue {
  std::string name;
  double value = 0.0;
};

struct TracePoint {
  double gamma = 0.0;
  double gap = 0.0;
};

// Self-check record of a generated instance. Replayable without
// re-running the search.
struct Certificate {
  std::string construction;
  std::vector<NamedValue> parameters;
  std::vector<double> pairwise_misalignment;  // pairs (0,1), (0,2), (1,2)
  std::vector<double> gaps_direct;            // per player
  std::vector<TracePoint> search_trace;       // sorted by gamma
  std::vector<CertificateCheck> checks;       // all must pass
  std::vector<NamedValue> comparisons;        // reported, never asserted
  std::vector<std::string> notes;

  bool passed() const;
  std::optional<double> parameter(const std::string& name) const;
};

struct Construction {
  ConjectureProfile profile;
  Certificate certificate;
};

// Gap of every player in the three-player shock cycle, in closed form:
// γ(γ²+γ+β)(1-β)(1-γ²)/(1-γ³)².
double shock_cycle_gap(double gamma, double beta);

// Three scalar players on a directed γ-cycle; player j over-predicts its own
// shock by 1-β relative to the others. β defaults to the midpoint of
// (max(1-δ/√2, 0), 1); `beta` may pick another point of that interval. γ is
// found by bisection so that every gap exceeds M, unless `gamma` forces it.
// Throws InputError for δ, M <= 0 or β outside the interval, and
// NumericalError when M cannot be exceeded below γ = 1 - 1e-12.
Construction build_shock_cycle(double delta, double big_m,
                               std::optional<double> gamma = std::nullopt,
                               std::optional<double> beta = std::nullopt);

enum class GraphShockPattern {
  uniform,      // ε = γ·(1, 1, 1): equal positive gap for all three players
  alternating,  // ε = γ·(1, -1, -1): only player 1 (0-based) has a gap
};

const char* to_string(GraphShockPattern pattern);
GraphShockPattern parse_graph_shock_pattern(const std::string& name);

// Unit 3-cycle with one edge weakened to 1 - δ/√2, a different edge per
// player, so that every pair of conjectures is exactly δ apart in Frobenius
// norm. Requires 0 < δ < √2.
Construction build_graph_cycle(
    double delta, double big_m, std::optional<double> gamma = std::nullopt,
    GraphShockPattern pattern = GraphShockPattern::uniform);

// Conjectured networks of the graph cycle for weakening δ.
std::vector<InteractionMatrix> graph_cycle_networks(double delta);

}  // namespace gaplab
