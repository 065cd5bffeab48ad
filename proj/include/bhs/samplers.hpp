#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "bhs/flows.hpp"
#include "bhs/model.hpp"

namespace bhs {

enum class EventKind { Start, Bounce, Refresh, WallHit, CoordFlip, End };

const char* event_kind_name(EventKind kind);

//! Which event mechanism produced a skeleton: one joint bounce/refresh clock
//! (bouncy family) or per-coordinate flip clocks (factorized family). The
//! two families have different generators, so diagnostics need the tag.
enum class SamplerFamily { Joint, Factorized };

//! One skeleton entry. Position is the flow state at the event time (the
//! position component is always continuous); velocity_after is the velocity
//! once the event's kernel has been applied. coord is the flipped coordinate
//! (factorized runs) or the contacted wall (WallHit), -1 otherwise.
//! seg_coord identifies the candidate flow active on the segment ending at
//! this event; -1 for samplers whose segments share one flow.
struct EventRecord {
  double time = 0.0;
  Eigen::VectorXd position;
  Eigen::VectorXd velocity_after;
  EventKind kind = EventKind::Start;
  int coord = -1;
  int seg_coord = -1;
};

struct BounceKernelSpec {
  enum class Variant { Deterministic, Stochastic };
  Variant variant = Variant::Deterministic;
};

//! Run parameters shared by the continuous-time samplers.
struct SamplerConfig {
  double lambda0 = 1.0;        // refreshment rate (>= 0)
  double T_total = 100.0;      // chain length in process time (> 0)
  double delta = 0.1;          // discretization step used downstream (> 0)
  std::uint64_t seed = 1;
  BounceKernelSpec bounce_kernel;
  double refresh_angle = std::numbers::pi / 2.0;  // phi in (0, pi/2]
  GuideField guide = GuideField::zero();
  std::vector<double> cbhs_gamma;  // per-coordinate extra flip rates; empty = 0
  bool corrupt_kernel = false;     // validation hook: bounce leaves v unchanged

  void validate() const;
};

//! How inter-event segments evolve, carrying exactly the data needed to
//! re-solve any segment's flow from its start state.
struct FlowSpec {
  enum class Kind {
    Linear,               // straight lines
    Univariate,           // 1-d standard normal with linear guide
    Quadratic,            // componentwise flow in transformed coordinates
    CoordinateOscillator  // factorized: the active coordinate oscillates,
                          // xddot_i = kappa_i x_i + forcing_i, others linear
  };
  Kind kind = Kind::Linear;
  double a = 0.0;          // Univariate guide coefficient
  Eigen::MatrixXd P;       // Quadratic
  Eigen::VectorXd a_diag;  // Quadratic
  Eigen::VectorXd kappa;   // CoordinateOscillator (all entries < 0)
  Eigen::VectorXd forcing;
};

//! Event skeleton of one chain: Start at time 0, strictly increasing event
//! times, End at T_total. Between consecutive events the state follows the
//! recorded flow exactly, so any intermediate state is reconstructible
//! without stored dense samples.
class Skeleton {
 public:
  Skeleton(std::vector<EventRecord> events, FlowSpec flow, SamplerConfig config,
           std::optional<GaussianTarget> target, SamplerFamily family,
           bool constrained);

  const std::vector<EventRecord>& events() const { return events_; }
  const FlowSpec& flow() const { return flow_; }
  const SamplerConfig& config() const { return config_; }
  const std::optional<GaussianTarget>& target() const { return target_; }
  SamplerFamily family() const { return family_; }
  double total_time() const { return events_.back().time; }
  int dim() const { return static_cast<int>(events_.front().position.size()); }
  bool constrained() const { return constrained_; }

  //! Exact state at any t in [0, T_total] via the segment's closed-form flow.
  State state_at(double t) const;

 private:
  std::vector<EventRecord> events_;
  FlowSpec flow_;
  SamplerConfig config_;
  std::optional<GaussianTarget> target_;  // needed to re-solve Quadratic segments
  SamplerFamily family_ = SamplerFamily::Joint;
  bool constrained_ = false;
};

//! Sequential walker over skeleton segments for monotone time queries;
//! solves each segment's flow once.
class SegmentCursor {
 public:
  explicit SegmentCursor(const Skeleton& skeleton);
  //! State at t; successive calls must not decrease t.
  State state_at(double t);

 private:
  void prepare(std::size_t seg);

  const Skeleton& skel_;
  std::size_t seg_ = 0;
  double last_t_ = 0.0;
  // Cached per-segment closed forms; only the fields for the skeleton's flow
  // kind are meaningful.
  Eigen::VectorXd x0_, v0_;
  double t0_ = 0.0;
  UnivariateFlow univariate_;
  std::optional<QuadraticFlow> quadratic_;
  Eigen::VectorXd osc_center_, osc_rho_, osc_omega_, osc_psi_;
};

//! Bouncy hybrid sampler on an exactly solvable target/guide pair:
//! univariate standard normal with linear guide, Gaussian with g = grad U
//! (straight lines), Gaussian with g = 0 or g = A x (componentwise flow).
Skeleton run_bhs(const TargetModel& target, const SamplerConfig& config,
                 const State& initial);

//! Constrained sampler on a truncated Gaussian: componentwise flow with
//! A_d = a I (a < 0), guide A = Sigma^{-1} + a I, specular wall reflections.
Skeleton run_qbhs(const GaussianTarget& target, const ConstraintSet& constraints,
                  const Eigen::MatrixXd& P, double a,
                  const SamplerConfig& config, const State& initial);

//! Factorized sampler: one coordinate flips per event, no refreshment.
//! Supported: g = grad U on a Gaussian target (zig-zag, straight lines) and
//! diagonal linear guide on a diagonal Gaussian (per-coordinate oscillators,
//! each requiring kappa_i = A_ii - 1/sigma_i^2 < 0).
Skeleton run_cbhs(const TargetModel& target, const SamplerConfig& config,
                  const State& initial);

//! Systematic-scan Gibbs sampler for the Gaussian truncated to the
//! constraint polytope; returns one position per full sweep.
std::vector<Eigen::VectorXd> run_gibbs_truncated_mvn(
    const GaussianTarget& target, const ConstraintSet& constraints,
    int n_samples, std::uint64_t seed, const Eigen::VectorXd& initial);

}  // namespace bhs
