#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gaplab/game.hpp"
#include "gaplab/quadrature.hpp"

namespace gaplab {

// Closed forms must agree with the direct gap within
// kAlgebraicTolerance·(1 + |gap|); the quadrature path within
// kQuadratureTolerance.
inline constexpr double kAlgebraicTolerance = 1e-9;
inline constexpr double kQuadratureTolerance = 1e-7;
// Below this |Δα| the mean-Leontief divided differences use their limits.
inline constexpr double kDegenerateAlphaGap = 1e-8;
// |predicted cost| below this leaves the relative gap undefined.
inline constexpr double kRelativeGapFloor = 1e-12;

struct PairTerm {
  int j = 0;
  double contribution = 0.0;
};

struct ClosedFormGap {
  double value = 0.0;
  std::vector<PairTerm> per_pair;  // every j != i, zero terms included
};

enum class ClosedFormKind { shock, graph, combined };
const char* to_string(ClosedFormKind kind);

struct GapReport {
  int player = 0;
  double predicted_cost = 0.0;  // J_i(u^(i)) in player i's conjectured game
  double realized_cost = 0.0;   // J_i(u°) in player i's conjectured game
  double gap_direct = 0.0;      // realized_cost - predicted_cost
  std::optional<double> gap_closed_form;
  std::optional<ClosedFormKind> closed_form_kind;
  std::optional<double> bound;
  std::optional<double> delta;
  std::vector<PairTerm> per_pair_terms;
};

// Realized minus predicted cost, by simulation. The oracle for every
// closed form below.
GapReport gap_direct(const ConjectureProfile& profile, int player);
std::vector<GapReport> gap_direct_all(const ConjectureProfile& profile);

// max_{i,j} ‖ε^(i) - ε^(j)‖₂ and the pair attaining it.
struct PairDistance {
  int i = 0;
  int j = 0;
  double distance = 0.0;
};
PairDistance max_pairwise_distance(std::span<const Eigen::VectorXd> shocks);

// Shared network P, heterogeneous shocks:
//   Σ_{j≠i} ε^(i)ᵀ 𝓑_{i,j} (ε^(i) - ε^(j)).
ClosedFormGap gap_shock_closed_form(const InteractionMatrix& p,
                                    std::span<const Eigen::VectorXd> shocks,
                                    int player);

// (δ‖ε^(i)‖₂ Σ_{j≠i}‖P_{i,j}‖₂) / σ_min(I-P)². Throws InputError naming the
// pair when some ‖ε^(a) - ε^(b)‖₂ exceeds delta.
double gap_shock_bound(const InteractionMatrix& p,
                       std::span<const Eigen::VectorXd> shocks, int player,
                       double delta);

// Scaled networks α^(j)·P, common shock ε:  -Σ_{j≠i} εᵀ 𝓒_{i,j} ε.
ClosedFormGap gap_graph_closed_form(const InteractionMatrix& base,
                                    std::span<const double> alphas,
                                    const Eigen::VectorXd& epsilon, int player);

enum class BoundForm {
  scaled_by_shock_norm,  // unscaled expression times ‖ε‖₂²; a valid bound
  unscaled,              // no ε dependence; fails for large shocks
};

double gap_graph_bound(const InteractionMatrix& base,
                       std::span<const double> alphas,
                       const Eigen::VectorXd& epsilon, int player, double delta,
                       BoundForm form = BoundForm::scaled_by_shock_norm);

// Scaled networks and heterogeneous shocks at once. The mean Leontief
// matrix over [α^(i), α^(j)] is integrated by adaptive Simpson.
ClosedFormGap gap_combined_closed_form(const InteractionMatrix& base,
                                       std::span<const double> alphas,
                                       std::span<const Eigen::VectorXd> shocks,
                                       int player,
                                       const QuadratureOptions& opts = {});

// ∫_a^b (I - xP)⁻¹ dx by adaptive Simpson.
Eigen::MatrixXd leontief_integral(const Eigen::MatrixXd& p, double a, double b,
                                  const QuadratureOptions& opts = {},
                                  QuadratureStats* stats = nullptr);

// P⁻¹(L(a) - L(b)), for comparison with leontief_integral. Its derivative
// in b is -L(b)², so it is not an antiderivative of L. Throws
// NumericalError if P is singular.
Eigen::MatrixXd leontief_integral_candidate_form(const Eigen::MatrixXd& p,
                                                 double a, double b);

// (realized - predicted) / |predicted|; nullopt when |predicted| < floor.
std::optional<double> relative_gap(const GapReport& report);

struct GapOptions {
  bool closed_form = false;
  bool bound = false;
  // Misalignment bound; defaults to the profile's measured misalignment.
  std::optional<double> delta;
  QuadratureOptions quadrature{};
};

// Direct gaps for every player plus whichever closed form the profile's
// shape supports. Throws InputError when a closed form or bound is
// requested for a shape that has none.
std::vector<GapReport> analyze_gaps(const ConjectureProfile& profile,
                                    const GapOptions& options);

}  // namespace gaplab
