#include "hawkes/hawkes_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace hawkes {

namespace {

constexpr double kHalfPi = 1.5707963267948966;

// Rate views keep the proposal loop free of indirect calls for the builtin
// kinds; the generic view covers user-defined rates.
struct QuadraticView {
    double eval(double x) const { return 1.0 + x * x; }
    double envelope(double r) const { return 1.0 + r * r; }
};

struct RootQuadraticView {
    double eval(double x) const { return std::sqrt(1.0 + x * x); }
    double envelope(double r) const { return std::sqrt(1.0 + r * r); }
};

struct ArctanSqView {
    double eval(double x) const {
        const double v = kHalfPi + std::atan(x);
        return v * v;
    }
    double envelope(double r) const { return eval(r); }
};

struct ConstantView {
    double c;
    double eval(double) const { return c; }
    double envelope(double) const { return c; }
};

struct GenericView {
    const RateFunction* f;
    double eval(double x) const { return (*f)(x); }
    double envelope(double r) const { return f->envelope(r); }
};

// Sinks receive accepted events. needs_component controls whether a component
// index is drawn at all; the law of X does not depend on it.
struct NullSink {
    static constexpr bool needs_component = false;
    void on_event(double, std::uint64_t, double, double) {}
};

struct RecordSink {
    static constexpr bool needs_component = true;
    EventLog* log;
    SkeletonPath* path;
    void on_event(double t, std::uint64_t component, double mark, double x_post) {
        log->events.push_back(EventRecord{t, component, mark});
        path->anchors.push_back(SkeletonAnchor{t, x_post});
    }
};

struct PairCountSink {
    static constexpr bool needs_component = true;
    std::uint64_t count1 = 0;
    std::uint64_t count2 = 0;
    void on_event(double, std::uint64_t component, double, double) {
        if (component == 1) ++count1;
        if (component == 2) ++count2;
    }
};

template <typename Rate, typename Sink>
void thin_core(const Rate& rate, const ModelSpec& spec, double horizon,
               RngStream& rng, std::span<const double> obs_times,
               std::span<double> obs_out, Sink& sink, std::uint64_t event_cap) {
    const double alpha = spec.alpha;
    const std::uint64_t n = spec.n_components;
    const double n_real = static_cast<double>(n);
    const double inv_sqrt_n = 1.0 / std::sqrt(n_real);
    double x = spec.x0;
    double s = 0.0;
    std::size_t obs_i = 0;
    std::uint64_t events = 0;
    while (true) {
        const double dominating = rate.envelope(std::abs(x));
        const double wait = rng.exponential(n_real * dominating);
        const double s_next = s + wait;
        while (obs_i < obs_times.size() && obs_times[obs_i] <= s_next) {
            obs_out[obs_i] = x * std::exp(-alpha * (obs_times[obs_i] - s));
            ++obs_i;
        }
        if (s_next > horizon) return;
        // Flow to the proposal time; the envelope taken at |x| still dominates
        // because the flow only shrinks |x|.
        x *= std::exp(-alpha * wait);
        const double intensity = rate.eval(x);
        if (intensity > dominating * (1.0 + 1e-12)) {
            throw SimulationError(SimulationError::Kind::envelope_violation,
                                  "envelope below rate along the flow");
        }
        if (rng.uniform() * dominating <= intensity) {
            const double mark = spec.mu.sample(rng);
            std::uint64_t component = 1;
            if constexpr (Sink::needs_component) {
                component = rng.uniform_index(n) + 1;
            }
            x += mark * inv_sqrt_n;
            if (++events > event_cap) {
                throw SimulationError(SimulationError::Kind::event_cap_exceeded,
                                      "event cap exceeded (runaway intensity)");
            }
            sink.on_event(s_next, component, mark, x);
        }
        s = s_next;
    }
}

template <typename Sink>
void dispatch(const ModelSpec& spec, double horizon, RngStream& rng,
              std::span<const double> obs_times, std::span<double> obs_out,
              Sink& sink, std::uint64_t event_cap) {
    switch (spec.f.kind()) {
        case RateFunction::Kind::quadratic: {
            QuadraticView view;
            thin_core(view, spec, horizon, rng, obs_times, obs_out, sink, event_cap);
            return;
        }
        case RateFunction::Kind::root_quadratic: {
            RootQuadraticView view;
            thin_core(view, spec, horizon, rng, obs_times, obs_out, sink, event_cap);
            return;
        }
        case RateFunction::Kind::arctan_sq: {
            ArctanSqView view;
            thin_core(view, spec, horizon, rng, obs_times, obs_out, sink, event_cap);
            return;
        }
        case RateFunction::Kind::constant: {
            ConstantView view{spec.f.constant_value()};
            thin_core(view, spec, horizon, rng, obs_times, obs_out, sink, event_cap);
            return;
        }
        case RateFunction::Kind::user_defined: {
            GenericView view{&spec.f};
            thin_core(view, spec, horizon, rng, obs_times, obs_out, sink, event_cap);
            return;
        }
    }
}

}  // namespace

SimulationResult simulate(const ModelSpec& spec, double horizon, RngStream& rng,
                          std::uint64_t event_cap) {
    SimulationResult result;
    result.log.horizon = horizon;
    result.log.n_components = spec.n_components;
    result.path.alpha = spec.alpha;
    result.path.horizon = horizon;
    result.path.anchors.push_back(SkeletonAnchor{0.0, spec.x0});
    RecordSink sink{&result.log, &result.path};
    dispatch(spec, horizon, rng, {}, {}, sink, event_cap);
    return result;
}

double simulate_terminal(const ModelSpec& spec, double horizon, RngStream& rng,
                         std::uint64_t event_cap) {
    double out = 0.0;
    const double times[1] = {horizon};
    NullSink sink;
    dispatch(spec, horizon, rng, std::span<const double>(times, 1),
             std::span<double>(&out, 1), sink, event_cap);
    return out;
}

void simulate_observed(const ModelSpec& spec, std::span<const double> times,
                       RngStream& rng, std::span<double> out,
                       std::uint64_t event_cap) {
    if (times.size() != out.size()) {
        throw std::invalid_argument("observation buffers must match");
    }
    if (!std::is_sorted(times.begin(), times.end())) {
        throw std::invalid_argument("observation times must be sorted");
    }
    const double horizon = times.empty() ? 0.0 : times.back();
    NullSink sink;
    dispatch(spec, horizon, rng, times, out, sink, event_cap);
}

std::pair<std::uint64_t, std::uint64_t> simulate_pair_counts(
    const ModelSpec& spec, double horizon, RngStream& rng,
    std::uint64_t event_cap) {
    PairCountSink sink;
    dispatch(spec, horizon, rng, {}, {}, sink, event_cap);
    return {sink.count1, sink.count2};
}

double state_at(const SkeletonPath& path, double t, bool left_limit) {
    if (t < 0.0 || t > path.horizon) {
        throw std::out_of_range("time outside the simulated horizon");
    }
    // Last anchor with anchor time <= t (strictly < t for the left limit).
    auto it = std::upper_bound(
        path.anchors.begin(), path.anchors.end(), t,
        [left_limit](double value, const SkeletonAnchor& a) {
            return left_limit ? value <= a.t : value < a.t;
        });
    if (it == path.anchors.begin()) {
        // Only reachable via the left limit at t = 0; the state starts at x0.
        return path.anchors.front().x_post;
    }
    --it;
    return it->x_post * std::exp(-path.alpha * (t - it->t));
}

std::uint64_t CountingPath::value_at(double t) const {
    return static_cast<std::uint64_t>(
        std::upper_bound(jump_times.begin(), jump_times.end(), t) -
        jump_times.begin());
}

std::vector<CountingPath> counting_paths(const EventLog& log, std::uint64_t k) {
    if (k < 1) throw std::invalid_argument("need at least one component");
    std::vector<CountingPath> paths(k);
    for (const EventRecord& e : log.events) {
        if (e.component >= 1 && e.component <= k) {
            paths[e.component - 1].jump_times.push_back(e.t);
        }
    }
    return paths;
}

namespace {

void write_float(std::ostream& os, double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    os << buffer;
}

}  // namespace

void write_events_csv(const EventLog& log, std::ostream& os) {
    os << "t,component,mark\n";
    for (const EventRecord& e : log.events) {
        write_float(os, e.t);
        os << ',' << e.component << ',';
        write_float(os, e.mark);
        os << '\n';
    }
}

void write_skeleton_csv(const SkeletonPath& path, std::ostream& os) {
    os << "t,x_post\n";
    for (const SkeletonAnchor& a : path.anchors) {
        write_float(os, a.t);
        os << ',';
        write_float(os, a.x_post);
        os << '\n';
    }
}

}  // namespace hawkes
