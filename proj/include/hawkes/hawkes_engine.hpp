#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "hawkes/errors.hpp"
#include "hawkes/model.hpp"
#include "hawkes/rng.hpp"

namespace hawkes {

// Exact event-driven simulation of the N-component system. Between jumps the
// state follows the deterministic decay x(t) = x(s) e^{-alpha (t-s)}; jumps are
// produced by thinning against the dominating rate N F(|x|), which dominates the
// true aggregate rate N f(x(t)) along the whole downward flow. Acceptance uses
// the flowed (pre-jump) state, so the intensity is evaluated at the left limit.

struct EventRecord {
    double t = 0.0;
    std::uint64_t component = 0;  // 1-based
    double mark = 0.0;
};

struct EventLog {
    std::vector<EventRecord> events;
    double horizon = 0.0;
    std::uint64_t n_components = 0;
};

struct SkeletonAnchor {
    double t = 0.0;
    double x_post = 0.0;
};

// Anchors at time 0 and at every jump; between anchors the path is exactly
// x_post e^{-alpha (t - t_anchor)}.
struct SkeletonPath {
    std::vector<SkeletonAnchor> anchors;
    double alpha = 0.0;
    double horizon = 0.0;
};

struct SimulationResult {
    SkeletonPath path;
    EventLog log;
};

inline constexpr std::uint64_t kDefaultEventCap = 100'000'000;

// Full record of one run: the skeleton and every (t, component, mark) event.
SimulationResult simulate(const ModelSpec& spec, double horizon, RngStream& rng,
                          std::uint64_t event_cap = kDefaultEventCap);

// Terminal state only; skips component attribution and event storage, which the
// law of X does not need.
double simulate_terminal(const ModelSpec& spec, double horizon, RngStream& rng,
                         std::uint64_t event_cap = kDefaultEventCap);

// States at the given sorted observation times (all <= horizon), one run.
void simulate_observed(const ModelSpec& spec, std::span<const double> times,
                       RngStream& rng, std::span<double> out,
                       std::uint64_t event_cap = kDefaultEventCap);

// Event counts of components 1 and 2 at the horizon, one run.
std::pair<std::uint64_t, std::uint64_t> simulate_pair_counts(
    const ModelSpec& spec, double horizon, RngStream& rng,
    std::uint64_t event_cap = kDefaultEventCap);

// Exact flow evaluation; at an event time the default is the post-jump value and
// left_limit requests the left limit instead.
double state_at(const SkeletonPath& path, double t, bool left_limit = false);

// Step function t -> number of events of one component up to t.
struct CountingPath {
    std::vector<double> jump_times;

    std::uint64_t value_at(double t) const;
};

// Components 1..k; components beyond the system size have no events.
std::vector<CountingPath> counting_paths(const EventLog& log, std::uint64_t k);

void write_events_csv(const EventLog& log, std::ostream& os);
void write_skeleton_csv(const SkeletonPath& path, std::ostream& os);

}  // namespace hawkes
