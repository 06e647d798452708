#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qlgt/statevector.hpp"

namespace qlgt {

namespace detail {

/// A maximal run of gates acting on one two-level target subspace with all
/// controls diagonal on other wires collapses to a table of 2x2 unitaries
/// indexed by the control-register word. Exact for every input: each gate is
/// diagonal on (or the identity off) the run's control wires and acts only
/// inside (lo, hi) on the target.
struct FusedRun {
    int target = 0, lo = 0, hi = 1;
    std::vector<int> ctrl_wires;            // ascending
    std::vector<std::array<cplx, 4>> table; // row-major 2x2 per control word
};

inline std::array<cplx, 4> gate_block(const GateOp& g, int run_lo) {
    switch (g.kind) {
        case GateKind::GCX:
        case GateKind::X: return {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
        case GateKind::GCZ: return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}};
        case GateKind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            return {cplx{s, 0}, cplx{s, 0}, cplx{s, 0}, cplx{-s, 0}};
        }
        case GateKind::RZ:
            return {std::polar(1.0, -g.angle / 2), cplx{0, 0}, cplx{0, 0},
                    std::polar(1.0, g.angle / 2)};
        case GateKind::RY: {
            const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            return {cplx{c, 0}, cplx{-s, 0}, cplx{s, 0}, cplx{c, 0}};
        }
        case GateKind::RX: {
            const double c = std::cos(g.angle / 2);
            const cplx is{0, -std::sin(g.angle / 2)};
            return {cplx{c, 0}, is, is, cplx{c, 0}};
        }
        case GateKind::PHASE: {
            if (g.sub_lo == run_lo)
                return {std::polar(1.0, g.angle), cplx{0, 0}, cplx{0, 0}, cplx{1, 0}};
            return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, std::polar(1.0, g.angle)};
        }
    }
    return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}};
}

inline void apply_fused_run(StateVector& sv, const FusedRun& run, int nthreads) {
    const auto strides = sv.strides();
    const int nw = static_cast<int>(sv.dims.size());
    std::vector<char> special(static_cast<std::size_t>(nw), 0);
    special[static_cast<std::size_t>(run.target)] = 1;
    for (int w : run.ctrl_wires) special[static_cast<std::size_t>(w)] = 1;

    std::vector<int> free_dims;
    std::vector<std::int64_t> free_strides;
    for (int w = 0; w < nw; ++w)
        if (!special[static_cast<std::size_t>(w)]) {
            free_dims.push_back(sv.dims[static_cast<std::size_t>(w)]);
            free_strides.push_back(strides[static_cast<std::size_t>(w)]);
        }
    std::int64_t free_total = 1;
    for (int d : free_dims) free_total *= d;

    std::vector<int> cdims;
    for (int w : run.ctrl_wires) cdims.push_back(sv.dims[static_cast<std::size_t>(w)]);
    const std::int64_t st = strides[static_cast<std::size_t>(run.target)];
    const std::int64_t off_lo = static_cast<std::int64_t>(run.lo) * st;
    const std::int64_t off_hi = static_cast<std::int64_t>(run.hi) * st;
    cplx* a = sv.amps.data();

    for (std::size_t wv = 0; wv < run.table.size(); ++wv) {
        const auto& u = run.table[wv];
        if (std::norm(u[0] - cplx{1, 0}) + std::norm(u[1]) + std::norm(u[2]) +
                std::norm(u[3] - cplx{1, 0}) <
            1e-30)
            continue; // identity word (blocked gating branch)
        std::int64_t base = 0;
        if (!cdims.empty()) {
            const Word word = int_to_word(static_cast<std::int64_t>(wv), cdims);
            for (std::size_t i = 0; i < word.size(); ++i)
                base += static_cast<std::int64_t>(word[i]) *
                        strides[static_cast<std::size_t>(run.ctrl_wires[i])];
        }
        detail::run_chunks(free_total, nthreads, [&](std::int64_t f0, std::int64_t f1) {
            detail::for_each_offset(free_dims, free_strides, base, f0, f1, [&](std::int64_t b) {
                const cplx lo = a[b + off_lo], hi = a[b + off_hi];
                a[b + off_lo] = u[0] * lo + u[1] * hi;
                a[b + off_hi] = u[2] * lo + u[3] * hi;
            });
        });
    }
}

} // namespace detail

/// Applies a circuit with two-level gate-run fusion. Long same-target runs
/// (the multiplexed-rotation blocks) become one sweep with per-control-word
/// 2x2 unitaries; gates on disjoint targets that commute with the whole run
/// are deferred past it, which untangles the interleaved opposite-face
/// blocks. Exact for every input state.
inline void apply_circuit_fast(StateVector& sv, const Circuit& c, int nthreads = 0) {
    if (nthreads <= 0) nthreads = worker_threads();
    constexpr std::size_t kMinRun = 12;
    constexpr std::size_t kScanWindow = 4096;

    std::vector<GateOp> pending = c.gates;
    std::size_t head = 0;
    while (head < pending.size()) {
        const GateOp& anchor = pending[head];
        bool anchor_fusable = true;
        int lo = anchor.sub_lo;
        int hi = (anchor.kind == GateKind::PHASE) ? anchor.sub_lo + 1 : anchor.sub_hi;
        if (hi >= sv.dims[static_cast<std::size_t>(anchor.target)]) {
            hi = lo;
            lo = hi - 1;
        }
        for (const auto& [cw, cv] : anchor.controls)
            if (cw == anchor.target) anchor_fusable = false;

        std::vector<std::size_t> absorbed;
        std::vector<std::size_t> deferred;
        std::size_t next = head;
        if (anchor_fusable) {
            std::vector<int> ctrl_wires;
            std::vector<char> deferred_target(sv.dims.size(), 0);
            std::int64_t words = 1;
            std::size_t scanned = 0;
            std::size_t q = head;
            for (; q < pending.size() && scanned < kScanWindow; ++q, ++scanned) {
                if (absorbed.size() <= 1 && scanned >= 64) break; // plain anchor, bail early
                const GateOp& g = pending[q];
                const bool same_target =
                    g.target == anchor.target &&
                    ((g.kind == GateKind::PHASE && (g.sub_lo == lo || g.sub_lo == hi)) ||
                     (g.kind != GateKind::PHASE && g.sub_lo == lo && g.sub_hi == hi));
                bool ok = same_target;
                std::vector<int> new_wires = ctrl_wires;
                std::int64_t new_words = words;
                if (ok) {
                    for (const auto& [cw, cv] : g.controls) {
                        if (cw == g.target) {
                            ok = false;
                            break;
                        }
                        if (std::find(new_wires.begin(), new_wires.end(), cw) ==
                            new_wires.end()) {
                            if (deferred_target[static_cast<std::size_t>(cw)] ||
                                new_wires.size() >= 6) {
                                ok = false;
                                break;
                            }
                            new_wires.push_back(cw);
                            new_words *= sv.dims[static_cast<std::size_t>(cw)];
                        }
                    }
                    if (ok && new_words > 4096) ok = false;
                }
                if (ok) {
                    absorbed.push_back(q);
                    ctrl_wires = std::move(new_wires);
                    words = new_words;
                    continue;
                }
                // Defer if g commutes with every gate of the run: its target
                // stays off the run's wires and the run target is not one of
                // its controls.
                bool can_defer = g.target != anchor.target &&
                                 std::find(ctrl_wires.begin(), ctrl_wires.end(), g.target) ==
                                     ctrl_wires.end();
                for (const auto& [cw, cv] : g.controls)
                    if (cw == anchor.target) can_defer = false;
                if (!can_defer) break;
                deferred.push_back(q);
                deferred_target[static_cast<std::size_t>(g.target)] = 1;
            }
            next = q;

            if (absorbed.size() >= kMinRun) {
                detail::FusedRun run;
                run.target = anchor.target;
                run.lo = lo;
                run.hi = hi;
                std::sort(ctrl_wires.begin(), ctrl_wires.end());
                run.ctrl_wires = ctrl_wires;
                std::vector<int> cdims;
                for (int w : ctrl_wires) cdims.push_back(sv.dims[static_cast<std::size_t>(w)]);
                run.table.assign(static_cast<std::size_t>(words),
                                 {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}});
                for (std::int64_t wv = 0; wv < words; ++wv) {
                    const Word word = cdims.empty() ? Word{} : int_to_word(wv, cdims);
                    auto& u = run.table[static_cast<std::size_t>(wv)];
                    for (std::size_t gi : absorbed) {
                        const GateOp& g = pending[gi];
                        bool fires = true;
                        for (const auto& [cw, cv] : g.controls) {
                            const auto pos =
                                std::lower_bound(run.ctrl_wires.begin(), run.ctrl_wires.end(),
                                                 cw) -
                                run.ctrl_wires.begin();
                            if (word[static_cast<std::size_t>(pos)] != cv) fires = false;
                        }
                        if (!fires) continue;
                        const std::array<cplx, 4> b = detail::gate_block(g, lo);
                        const std::array<cplx, 4> prev = u;
                        u[0] = b[0] * prev[0] + b[1] * prev[2];
                        u[1] = b[0] * prev[1] + b[1] * prev[3];
                        u[2] = b[2] * prev[0] + b[3] * prev[2];
                        u[3] = b[2] * prev[1] + b[3] * prev[3];
                    }
                }
                detail::apply_fused_run(sv, run, nthreads);

                // The deferred gates lead the remaining work.
                std::vector<GateOp> rest;
                rest.reserve(deferred.size() + pending.size() - next);
                for (std::size_t gi : deferred) rest.push_back(pending[gi]);
                rest.insert(rest.end(), pending.begin() + static_cast<std::ptrdiff_t>(next),
                            pending.end());
                pending = std::move(rest);
                head = 0;
                continue;
            }
        }
        apply_gate(sv, pending[head], nthreads);
        ++head;
    }
}

} // namespace qlgt
