#pragma once

// Fixed-step marching with event bracketing, shared by both solvers.

#include <algorithm>
#include <cmath>
#include <optional>

#include "prandtl/errors.hpp"

namespace prandtl::detail {

template <class State>
struct MarchOutcome {
    State last;                    // final state (t_end) or last state before the crossing
    std::optional<State> crossed;  // first state past the crossing, if any
    int bisections = 0;
    std::size_t steps = 0;
};

/// Steps `state` from t0 to t_end with step dt.  `step(s, h)` returns the state
/// after a step of size h, `has_crossed(s)` tests the event condition and
/// `accept(s, k)` is called for every accepted regular step k = 1, 2, ...
///
/// On a crossing the step is re-done from the last good state with halved
/// steps (at most max_bisections times), so the bracket shrinks to
/// dt / 2^max_bisections.  The bisection states are not passed to `accept`.
template <class State, class Step, class Crossed, class Accept, class TimeOf>
MarchOutcome<State> march(State state, double t_end, double dt, bool detect, int max_bisections, Step&& step,
                          Crossed&& has_crossed, Accept&& accept, TimeOf&& time_of) {
    MarchOutcome<State> out{state, std::nullopt, 0, 0};
    if (detect && has_crossed(state)) {
        throw DataError("run: wall shear already non-positive at the initial time");
    }
    const double eps = 1e-12 * std::max(std::abs(t_end), dt);
    while (time_of(out.last) < t_end - eps) {
        const double h = std::min(dt, t_end - time_of(out.last));
        State next = step(out.last, h);
        if (detect && has_crossed(next)) {
            State good = out.last;
            State bad = std::move(next);
            int k = 0;
            for (; k < max_bisections; ++k) {
                const double half = 0.5 * (time_of(bad) - time_of(good));
                State mid = step(good, half);
                if (has_crossed(mid)) {
                    bad = std::move(mid);
                } else {
                    good = std::move(mid);
                }
            }
            out.last = std::move(good);
            out.crossed = std::move(bad);
            out.bisections = k;
            return out;
        }
        out.last = std::move(next);
        ++out.steps;
        accept(out.last, out.steps);
    }
    return out;
}

}  // namespace prandtl::detail
