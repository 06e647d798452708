#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "qlgt/circuit.hpp"

namespace qlgt {

/// Rewrites any run of d-1 single-control GCX gates sharing one control
/// wire, target and subspace whose control values are exactly {1..d-1} into
/// a control-on-0 GCX plus an X (unitary preserving).
inline Circuit gcx_run_optimize(const Circuit& c) {
    Circuit out;
    out.wires = c.wires;
    std::size_t i = 0;
    while (i < c.gates.size()) {
        const auto& g = c.gates[i];
        if (g.kind == GateKind::GCX && g.controls.size() == 1) {
            const int cw = g.controls[0].first;
            const int dc = c.wires[static_cast<std::size_t>(cw)].dim;
            std::size_t j = i;
            std::vector<int> values;
            while (j < c.gates.size()) {
                const auto& h = c.gates[j];
                if (h.kind != GateKind::GCX || h.controls.size() != 1 ||
                    h.controls[0].first != cw || h.target != g.target ||
                    h.sub_lo != g.sub_lo || h.sub_hi != g.sub_hi)
                    break;
                values.push_back(h.controls[0].second);
                ++j;
            }
            if (dc >= 3 && static_cast<int>(values.size()) >= dc - 1) {
                // Look for a window of dc-1 gates covering {1..dc-1}.
                bool rewritten = false;
                for (std::size_t w0 = 0; w0 + static_cast<std::size_t>(dc - 1) <= values.size();
                     ++w0) {
                    std::vector<int> win(values.begin() + static_cast<std::ptrdiff_t>(w0),
                                         values.begin() + static_cast<std::ptrdiff_t>(w0) + dc - 1);
                    std::sort(win.begin(), win.end());
                    bool full = true;
                    for (int v = 1; v < dc; ++v)
                        if (win[static_cast<std::size_t>(v - 1)] != v) full = false;
                    if (!full) continue;
                    for (std::size_t p = 0; p < w0; ++p) out.add(c.gates[i + p]);
                    out.add(make_gcx(cw, 0, g.target, g.sub_lo, g.sub_hi));
                    out.add(make_x(g.target, g.sub_lo, g.sub_hi));
                    for (std::size_t p = w0 + static_cast<std::size_t>(dc - 1); p < values.size();
                         ++p)
                        out.add(c.gates[i + p]);
                    i = j;
                    rewritten = true;
                    break;
                }
                if (rewritten) continue;
            }
        }
        out.add(c.gates[i]);
        ++i;
    }
    return out;
}

struct HadamardEliminateResult {
    Circuit circuit;
    int remaining_h = 0; // H gates left in non-rewritable positions
};

namespace detail {

struct PendingH {
    int lo = -1, hi = -1;
    bool active() const { return lo >= 0; }
    bool matches(int a, int b) const { return lo == a && hi == b; }
    bool overlaps(int a, int b) const {
        return active() && (lo == a || lo == b || hi == a || hi == b);
    }
    bool contains(int v) const { return active() && (lo == v || hi == v); }
};

} // namespace detail

/// Propagates H gates rightward, removing them via the GCX flip identities
/// (control/target exchange with subspace and control-value remap), turning
/// rotations between matching H pairs into the conjugate axis, X gates into
/// level phases, and GCX with an H-conjugated target into GCZ. H gates that
/// reach a position with no rewrite stay in place and are reported.
inline HadamardEliminateResult hadamard_eliminate(const Circuit& c) {
    HadamardEliminateResult res;
    res.circuit.wires = c.wires;
    std::vector<detail::PendingH> pending(c.wires.size());
    Circuit& out = res.circuit;

    const auto flush = [&](int wire) {
        auto& p = pending[static_cast<std::size_t>(wire)];
        if (!p.active()) return;
        out.add(make_h(wire, p.lo, p.hi));
        ++res.remaining_h;
        p = {};
    };

    for (const auto& g : c.gates) {
        auto& pt = pending[static_cast<std::size_t>(g.target)];
        switch (g.kind) {
            case GateKind::H: {
                if (pt.matches(g.sub_lo, g.sub_hi)) {
                    pt = {};
                } else {
                    if (pt.active()) flush(g.target);
                    pending[static_cast<std::size_t>(g.target)] = {g.sub_lo, g.sub_hi};
                }
                break;
            }
            case GateKind::RZ:
            case GateKind::RX:
            case GateKind::RY: {
                for (const auto& [cw, cv] : g.controls)
                    if (pending[static_cast<std::size_t>(cw)].contains(cv)) flush(cw);
                GateOp e = g;
                if (pt.matches(g.sub_lo, g.sub_hi)) {
                    if (g.kind == GateKind::RZ) e.kind = GateKind::RX;
                    else if (g.kind == GateKind::RX) e.kind = GateKind::RZ;
                    else e.angle = normalize_angle(-e.angle); // H Y H = -Y
                } else if (pt.overlaps(g.sub_lo, g.sub_hi)) {
                    flush(g.target);
                }
                out.add(std::move(e));
                break;
            }
            case GateKind::PHASE: {
                if (pt.contains(g.sub_lo)) flush(g.target);
                out.add(g);
                break;
            }
            case GateKind::X: {
                if (pt.matches(g.sub_lo, g.sub_hi)) {
                    out.add(make_phase(g.target, g.sub_hi, kPi)); // H X H = Z
                } else {
                    if (pt.overlaps(g.sub_lo, g.sub_hi)) flush(g.target);
                    out.add(g);
                }
                break;
            }
            case GateKind::GCX:
            case GateKind::GCZ: {
                GateOp e = g;
                // Controls on wires with an overlapping pending H block the
                // rewrite unless the flip rule below consumes them.
                bool target_match = pt.matches(g.sub_lo, g.sub_hi);
                if (!target_match && pt.overlaps(g.sub_lo, g.sub_hi)) flush(g.target);

                bool flipped = false;
                if (g.kind == GateKind::GCX && target_match && g.controls.size() == 1) {
                    const auto [cw, cv] = g.controls[0];
                    const auto& pc = pending[static_cast<std::size_t>(cw)];
                    if (pc.active() && cv == pc.hi) {
                        // (H (x) H) GCX(c=hi -> t X_ij) (H (x) H)
                        //   = GCX(t=j -> c X_{pc}).
                        out.add(make_gcx(g.target, g.sub_hi, cw, pc.lo, pc.hi));
                        flipped = true;
                    }
                }
                if (flipped) break;
                for (const auto& [cw, cv] : g.controls)
                    if (pending[static_cast<std::size_t>(cw)].contains(cv)) flush(cw);
                if (target_match) {
                    e.kind = (g.kind == GateKind::GCX) ? GateKind::GCZ : GateKind::GCX;
                }
                out.add(std::move(e));
                break;
            }
        }
    }
    for (int w = 0; w < out.num_wires(); ++w) flush(w);
    return res;
}

} // namespace qlgt
