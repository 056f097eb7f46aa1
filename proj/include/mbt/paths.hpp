#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "mbt/amplitudes.hpp"
#include "mbt/scatter.hpp"

namespace mbt {

// Classical bounce paths through the chain.  A path starts in front of
// barrier 1 moving right and branches at every barrier face into a
// transmission (factor T) or a reflection (factor R e^{+2ik a} from the
// left face at a, R e^{-2ik b} from the right face at b).  It ends when it
// leaves the structure on either side.

enum class EventKind { Transmit, ReflectFront, ReflectBack };

struct PathEvent {
    EventKind kind;
    int barrier; // 1-based
};

enum class ExitSide { Reflected, Transmitted };

// Every path amplitude is a monomial T^t R^r e^{2ik (m lambda + p delta)};
// paths sharing (r, t, p) share m as well and interfere coherently.
struct Monomial {
    int r = 0; // reflection events
    int t = 0; // transmission events
    int p = 0; // power of e^{2 i k delta}
    int m = 0; // power of e^{2 i k lambda}

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct PathTerm {
    std::vector<PathEvent> events;
    cplx amplitude;
    ExitSide exit_side;
    Monomial monomial;
};

// Exhaustive list of paths with at most max_events reflections.
// max_events > 40 is refused (combinatorial explosion guard), as is any
// enumeration that would exceed path_cap terms.
std::vector<PathTerm> enumerate_paths(const ScatterParams& params,
                                      const BarrierAmplitudes& amps,
                                      int max_events,
                                      std::size_t path_cap = 2000000);

struct GroupedTerm {
    ExitSide exit_side;
    Monomial monomial;
    long long coefficient; // number of coherent paths in the group
    cplx amplitude;        // their summed amplitude
};

// Group a path list by (exit side, r, t, p); canonical order: transmitted
// first, then ascending (r, t, p).
std::vector<GroupedTerm> grouped_series_terms(const std::vector<PathTerm>& paths);

// Same grouping computed by a layered walk over (barrier, direction,
// reflections used) without materializing individual paths, so it stays
// cheap at reflection orders where the explicit list explodes.
std::vector<GroupedTerm> grouped_series(const ScatterParams& params,
                                        const BarrierAmplitudes& amps,
                                        int max_events);

// Coherent transmitted amplitude contributed by paths with exactly r
// reflections, r = 0..max_events (same layered walk, amplitudes summed).
std::vector<cplx> transmitted_by_reflection_order(const ScatterParams& params,
                                                  const BarrierAmplitudes& amps,
                                                  int max_events);

// Sum of the above: the partial bounce sum with <= max_events reflections.
cplx transmitted_partial_sum(const ScatterParams& params,
                             const BarrierAmplitudes& amps,
                             int max_events);

} // namespace mbt
