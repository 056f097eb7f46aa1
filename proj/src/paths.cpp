#include "mbt/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>

namespace mbt {

namespace {

// Path bookkeeping walks every (barrier, direction) branch, so the state
// tables grow with n_barriers; the closed forms and M^N cover long chains.
constexpr int max_path_barriers = 8;
constexpr int max_reflections = 40;

void check_path_params(const ScatterParams& params, int max_events) {
    validate(params);
    if (params.n_barriers > max_path_barriers)
        throw std::domain_error("path bookkeeping supports at most 8 barriers");
    if (max_events < 0) throw std::domain_error("max_events must be >= 0");
    if (max_events > max_reflections)
        throw std::domain_error("max_events > 40 refused: path count explodes");
}

cplx ipow(cplx base, int n) {
    cplx out(1.0, 0.0);
    for (int i = 0; i < n; ++i) out *= base;
    return out;
}

cplx monomial_value(const Monomial& mono, const BarrierAmplitudes& amps,
                    const ScatterParams& params) {
    const double k = k_hat(params);
    return ipow(amps.T, mono.t) * ipow(amps.R, mono.r) *
           std::polar(1.0, 2.0 * k * (mono.m * params.lambda + mono.p * params.delta));
}

// Every group of paths sharing (exit side, r, t) also shares the phase
// monomial: each leftward transmission must be undone, so m counts them
// (m = (t - N)/2 transmitted, t/2 reflected), and reflections alternate
// front/back, fixing the number of back-face events at floor(r/2).
Monomial monomial_for(ExitSide side, int r, int t, int n_barriers) {
    Monomial mono;
    mono.r = r;
    mono.t = t;
    mono.m = (side == ExitSide::Transmitted) ? (t - n_barriers) / 2 : t / 2;
    mono.p = mono.m + r / 2;
    return mono;
}

struct DfsContext {
    const ScatterParams* params;
    const BarrierAmplitudes* amps;
    int max_r;
    std::size_t cap;
    std::vector<PathTerm>* out;
    std::vector<PathEvent> events;
};

void record_path(DfsContext& ctx, ExitSide side, int r, int t) {
    if (ctx.out->size() >= ctx.cap)
        throw std::length_error("path enumeration exceeds path_cap");

    // Positional phase straight from the event list (independent of the
    // (r, t) shortcut, which the grouped walk relies on): a front face at
    // (j-1)(lambda+delta) adds its position, a back face subtracts
    // position + lambda.
    int span = 0; // multiples of (lambda + delta)
    int backs = 0;
    for (const PathEvent& ev : ctx.events) {
        if (ev.kind == EventKind::ReflectFront) span += ev.barrier - 1;
        if (ev.kind == EventKind::ReflectBack) {
            span -= ev.barrier - 1;
            ++backs;
        }
    }

    PathTerm term;
    term.events = ctx.events;
    term.exit_side = side;
    term.monomial.r = r;
    term.monomial.t = t;
    term.monomial.p = span;
    term.monomial.m = span - backs;
    term.amplitude = monomial_value(term.monomial, *ctx.amps, *ctx.params);
    ctx.out->push_back(std::move(term));
}

void dfs(DfsContext& ctx, int region, bool rightward, int r, int t) {
    const int n = ctx.params->n_barriers;
    if (rightward) {
        if (region == n) {
            record_path(ctx, ExitSide::Transmitted, r, t);
            return;
        }
        const int j = region + 1;
        ctx.events.push_back({EventKind::Transmit, j});
        dfs(ctx, region + 1, true, r, t + 1);
        ctx.events.pop_back();
        if (r < ctx.max_r) {
            ctx.events.push_back({EventKind::ReflectFront, j});
            dfs(ctx, region, false, r + 1, t);
            ctx.events.pop_back();
        }
        return;
    }
    if (region == 0) {
        record_path(ctx, ExitSide::Reflected, r, t);
        return;
    }
    const int j = region;
    ctx.events.push_back({EventKind::Transmit, j});
    dfs(ctx, region - 1, false, r, t + 1);
    ctx.events.pop_back();
    if (r < ctx.max_r) {
        ctx.events.push_back({EventKind::ReflectBack, j});
        dfs(ctx, region, true, r + 1, t);
        ctx.events.pop_back();
    }
}

using count_t = unsigned __int128;

long long to_coefficient(count_t c) {
    if (c > static_cast<count_t>(std::numeric_limits<long long>::max()))
        throw std::overflow_error("path multiplicity exceeds 64-bit range");
    return static_cast<long long>(c);
}

// Exit multiplicities per (reflections, transmissions), computed by pushing
// occupation counts through the same branching rule the DFS follows.
struct WalkCounts {
    // [r][t] tables; t <= (max_r + 1) * n per prefix.
    std::vector<std::vector<count_t>> transmitted;
    std::vector<std::vector<count_t>> reflected;
};

WalkCounts layered_walk(const ScatterParams& params, int max_r) {
    const int n = params.n_barriers;
    // An active prefix with r reflections has crossed at most (r + 1) * n
    // barriers; one more column absorbs the exiting transmission.
    const int t_cap = (max_r + 2) * n + 2;

    // occupancy[region][dir][r][t], dir 0 = rightward.
    const auto idx = [&](int region, int dir, int r, int t) {
        return ((static_cast<std::size_t>(region) * 2 + dir) * (max_r + 1) + r) * t_cap + t;
    };
    std::vector<count_t> cur((n + 1) * 2 * (max_r + 1) * t_cap, 0);
    std::vector<count_t> next(cur.size(), 0);

    WalkCounts out;
    out.transmitted.assign(max_r + 1, std::vector<count_t>(t_cap, 0));
    out.reflected.assign(max_r + 1, std::vector<count_t>(t_cap, 0));

    cur[idx(0, 0, 0, 0)] = 1;
    bool alive = true;
    while (alive) {
        alive = false;
        std::fill(next.begin(), next.end(), 0);
        for (int region = 0; region <= n; ++region)
            for (int dir = 0; dir < 2; ++dir)
                for (int r = 0; r <= max_r; ++r)
                    for (int t = 0; t < t_cap; ++t) {
                        const count_t c = cur[idx(region, dir, r, t)];
                        if (c == 0) continue;
                        if (dir == 0 && region == n) {
                            out.transmitted[r][t] += c;
                            continue;
                        }
                        if (dir == 1 && region == 0) {
                            out.reflected[r][t] += c;
                            continue;
                        }
                        alive = true;
                        if (dir == 0) {
                            next[idx(region + 1, 0, r, t + 1)] += c;
                            if (r < max_r) next[idx(region, 1, r + 1, t)] += c;
                        } else {
                            next[idx(region - 1, 1, r, t + 1)] += c;
                            if (r < max_r) next[idx(region, 0, r + 1, t)] += c;
                        }
                    }
        cur.swap(next);
    }
    return out;
}

} // namespace

std::vector<PathTerm> enumerate_paths(const ScatterParams& params,
                                      const BarrierAmplitudes& amps,
                                      int max_events, std::size_t path_cap) {
    check_path_params(params, max_events);
    std::vector<PathTerm> out;
    DfsContext ctx{&params, &amps, max_events, path_cap, &out, {}};
    dfs(ctx, 0, true, 0, 0);
    return out;
}

std::vector<GroupedTerm> grouped_series_terms(const std::vector<PathTerm>& paths) {
    std::map<std::tuple<int, int, int, int>, GroupedTerm> groups;
    for (const PathTerm& path : paths) {
        const auto key = std::make_tuple(path.exit_side == ExitSide::Transmitted ? 0 : 1,
                                         path.monomial.r, path.monomial.t, path.monomial.p);
        auto [it, fresh] = groups.try_emplace(key);
        GroupedTerm& g = it->second;
        if (fresh) {
            g.exit_side = path.exit_side;
            g.monomial = path.monomial;
            g.coefficient = 0;
        } else if (g.monomial.m != path.monomial.m) {
            throw std::logic_error("paths with equal (exit, r, t, p) but different m");
        }
        g.coefficient += 1;
        g.amplitude += path.amplitude;
    }
    std::vector<GroupedTerm> out;
    out.reserve(groups.size());
    for (auto& [key, g] : groups) out.push_back(std::move(g));
    return out;
}

std::vector<GroupedTerm> grouped_series(const ScatterParams& params,
                                        const BarrierAmplitudes& amps,
                                        int max_events) {
    check_path_params(params, max_events);
    const WalkCounts counts = layered_walk(params, max_events);

    std::vector<GroupedTerm> out;
    const auto emit = [&](ExitSide side, const std::vector<std::vector<count_t>>& table) {
        for (int r = 0; r <= max_events; ++r)
            for (int t = 0; t < static_cast<int>(table[r].size()); ++t) {
                if (table[r][t] == 0) continue;
                GroupedTerm g;
                g.exit_side = side;
                g.monomial = monomial_for(side, r, t, params.n_barriers);
                g.coefficient = to_coefficient(table[r][t]);
                g.amplitude = static_cast<double>(g.coefficient) *
                              monomial_value(g.monomial, amps, params);
                out.push_back(std::move(g));
            }
    };
    emit(ExitSide::Transmitted, counts.transmitted);
    emit(ExitSide::Reflected, counts.reflected);

    std::sort(out.begin(), out.end(), [](const GroupedTerm& a, const GroupedTerm& b) {
        const int sa = a.exit_side == ExitSide::Transmitted ? 0 : 1;
        const int sb = b.exit_side == ExitSide::Transmitted ? 0 : 1;
        return std::tie(sa, a.monomial.r, a.monomial.t, a.monomial.p) <
               std::tie(sb, b.monomial.r, b.monomial.t, b.monomial.p);
    });
    return out;
}

std::vector<cplx> transmitted_by_reflection_order(const ScatterParams& params,
                                                  const BarrierAmplitudes& amps,
                                                  int max_events) {
    check_path_params(params, max_events);
    const WalkCounts counts = layered_walk(params, max_events);

    std::vector<cplx> orders(max_events + 1, cplx(0.0, 0.0));
    for (int r = 0; r <= max_events; ++r)
        for (int t = 0; t < static_cast<int>(counts.transmitted[r].size()); ++t) {
            if (counts.transmitted[r][t] == 0) continue;
            const Monomial mono = monomial_for(ExitSide::Transmitted, r, t, params.n_barriers);
            orders[r] += static_cast<double>(counts.transmitted[r][t]) *
                         monomial_value(mono, amps, params);
        }
    return orders;
}

cplx transmitted_partial_sum(const ScatterParams& params,
                             const BarrierAmplitudes& amps, int max_events) {
    cplx sum(0.0, 0.0);
    for (const cplx& a : transmitted_by_reflection_order(params, amps, max_events))
        sum += a;
    return sum;
}

} // namespace mbt
