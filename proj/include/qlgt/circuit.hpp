#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace qlgt {

inline constexpr double kPi = 3.14159265358979323846;

/// Elementary qudit gate kinds. GCX/GCZ are the two-qudit primitives; X, H
/// and the rotations act on a two-level subspace of a single qudit; PHASE is
/// a diagonal phase on one level.
enum class GateKind { GCX, GCZ, X, H, RZ, RY, RX, PHASE };

inline const char* to_string(GateKind k) {
    switch (k) {
        case GateKind::GCX: return "GCX";
        case GateKind::GCZ: return "GCZ";
        case GateKind::X: return "X";
        case GateKind::H: return "H";
        case GateKind::RZ: return "RZ";
        case GateKind::RY: return "RY";
        case GateKind::RX: return "RX";
        case GateKind::PHASE: return "PHASE";
    }
    return "?";
}

inline GateKind gate_kind_from_string(const std::string& s) {
    if (s == "GCX") return GateKind::GCX;
    if (s == "GCZ") return GateKind::GCZ;
    if (s == "X") return GateKind::X;
    if (s == "H") return GateKind::H;
    if (s == "RZ") return GateKind::RZ;
    if (s == "RY") return GateKind::RY;
    if (s == "RX") return GateKind::RX;
    if (s == "PHASE") return GateKind::PHASE;
    throw std::invalid_argument("unknown gate kind: " + s);
}

struct Wire {
    int index = 0;
    int dim = 2;
    std::string label;
};

/// Convention: R_a(theta) = exp(-i theta a / 2) on the (lo, hi) subspace.
/// PHASE(level, phi) multiplies amplitudes on `level` by exp(i phi).
struct GateOp {
    GateKind kind = GateKind::X;
    int sub_lo = 0;
    int sub_hi = 1;
    double angle = 0.0;
    int target = 0;
    std::vector<std::pair<int, int>> controls; // (wire, value)

    bool is_rotation() const {
        return kind == GateKind::RZ || kind == GateKind::RY || kind == GateKind::RX ||
               kind == GateKind::PHASE;
    }
};

/// Rotation angles are kept in (-2*pi, 2*pi]; zero-angle rotations are legal
/// gates (the synthesis paths rely on them for stable resource counts).
inline double normalize_angle(double a) {
    while (a > 2 * kPi) a -= 4 * kPi;
    while (a <= -2 * kPi) a += 4 * kPi;
    return a;
}

inline GateOp make_gcx(int control_wire, int control_value, int target, int lo, int hi) {
    GateOp g;
    g.kind = GateKind::GCX;
    g.sub_lo = lo;
    g.sub_hi = hi;
    g.target = target;
    g.controls = {{control_wire, control_value}};
    return g;
}

inline GateOp make_x(int target, int lo, int hi) {
    GateOp g;
    g.kind = GateKind::X;
    g.sub_lo = lo;
    g.sub_hi = hi;
    g.target = target;
    return g;
}

inline GateOp make_h(int target, int lo, int hi) {
    GateOp g;
    g.kind = GateKind::H;
    g.sub_lo = lo;
    g.sub_hi = hi;
    g.target = target;
    return g;
}

inline GateOp make_rotation(GateKind kind, int target, int lo, int hi, double angle) {
    GateOp g;
    g.kind = kind;
    g.sub_lo = lo;
    g.sub_hi = hi;
    g.target = target;
    g.angle = normalize_angle(angle);
    return g;
}

inline GateOp make_phase(int target, int level, double angle) {
    GateOp g;
    g.kind = GateKind::PHASE;
    g.sub_lo = level;
    g.sub_hi = level;
    g.target = target;
    g.angle = normalize_angle(angle);
    return g;
}

struct Circuit {
    std::vector<Wire> wires;
    std::vector<GateOp> gates;

    int num_wires() const { return static_cast<int>(wires.size()); }

    int add_wire(int dim, std::string label = {}) {
        const int idx = num_wires();
        wires.push_back(Wire{idx, dim, std::move(label)});
        return idx;
    }

    void add(GateOp g) { gates.push_back(std::move(g)); }

    void append(const Circuit& other) {
        for (const auto& g : other.gates) gates.push_back(g);
    }
};

struct Diagnostic {
    int gate_index = -1;
    std::string message;
};

/// Checks the structural gate invariants; returns the first violation.
inline std::optional<Diagnostic> validate(const Circuit& c) {
    const int n = c.num_wires();
    for (int i = 0; i < n; ++i) {
        if (c.wires[i].index != i) return Diagnostic{-1, "wire indices must be 0..n-1 in order"};
        if (c.wires[i].dim < 2) return Diagnostic{-1, "wire dim must be >= 2"};
    }
    for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
        const auto& g = c.gates[gi];
        const int idx = static_cast<int>(gi);
        if (g.target < 0 || g.target >= n) return Diagnostic{idx, "target wire out of range"};
        const int dt = c.wires[g.target].dim;
        if (g.kind == GateKind::PHASE) {
            if (g.sub_lo != g.sub_hi || g.sub_lo < 0 || g.sub_lo >= dt)
                return Diagnostic{idx, "phase level out of range"};
        } else {
            if (!(0 <= g.sub_lo && g.sub_lo < g.sub_hi && g.sub_hi < dt))
                return Diagnostic{idx, "subspace levels invalid for target dim"};
        }
        if ((g.kind == GateKind::GCX || g.kind == GateKind::GCZ) && g.controls.empty())
            return Diagnostic{idx, "GCX/GCZ requires at least one control"};
        for (const auto& [cw, cv] : g.controls) {
            if (cw < 0 || cw >= n) return Diagnostic{idx, "control wire out of range"};
            if (cw == g.target) return Diagnostic{idx, "control wire equals target"};
            if (cv < 0 || cv >= c.wires[cw].dim)
                return Diagnostic{idx, "control value exceeds wire dim"};
        }
    }
    return std::nullopt;
}

/// Reverses gate order and inverts each gate (rotation/phase angles negate;
/// GCX, GCZ, X and H are self-inverse).
inline Circuit invert(const Circuit& c) {
    Circuit out;
    out.wires = c.wires;
    out.gates.reserve(c.gates.size());
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        GateOp g = *it;
        if (g.is_rotation()) g.angle = normalize_angle(-g.angle);
        out.gates.push_back(std::move(g));
    }
    return out;
}

/// Reverses gate order only.
inline Circuit mirror(const Circuit& c) {
    Circuit out;
    out.wires = c.wires;
    out.gates.assign(c.gates.rbegin(), c.gates.rend());
    return out;
}

/// Concatenates two circuits; wires present in both must agree on dimension.
inline Circuit compose(const Circuit& a, const Circuit& b) {
    Circuit out = a;
    for (const auto& w : b.wires) {
        if (w.index < out.num_wires()) {
            if (out.wires[w.index].dim != w.dim)
                throw std::invalid_argument("compose: wire dimension mismatch at index " +
                                            std::to_string(w.index));
            if (out.wires[w.index].label.empty()) out.wires[w.index].label = w.label;
        } else {
            while (out.num_wires() < w.index) out.add_wire(2);
            out.wires.push_back(w);
        }
    }
    out.append(b);
    return out;
}

/// Returns a copy of `c` with every wire index mapped through `map`
/// (old index -> new index) onto the wire set `wires`.
inline Circuit remap_wires(const Circuit& c, const std::vector<int>& map,
                           const std::vector<Wire>& wires) {
    Circuit out;
    out.wires = wires;
    out.gates.reserve(c.gates.size());
    for (GateOp g : c.gates) {
        g.target = map[static_cast<std::size_t>(g.target)];
        for (auto& [cw, cv] : g.controls) cw = map[static_cast<std::size_t>(cw)];
        out.gates.push_back(std::move(g));
    }
    return out;
}

struct ResourceReport {
    long gcx = 0;
    long rz = 0; // every rotation axis, plus PHASE
    long x = 0;
    long h = 0;
    long depth = 0;
    int wires = 0;
    int aux_wires = 0;

    long total_gates() const { return gcx + rz + x + h; }
};

/// Gate counts plus circuit depth under greedy as-soon-as-possible layering,
/// where a gate occupies its target and all of its control wires.
inline ResourceReport resource_report(
    const Circuit& c, const std::function<bool(const Wire&)>& count_aux = nullptr) {
    ResourceReport r;
    r.wires = c.num_wires();
    if (count_aux)
        for (const auto& w : c.wires)
            if (count_aux(w)) ++r.aux_wires;

    std::vector<long> front(c.wires.size(), 0);
    for (const auto& g : c.gates) {
        switch (g.kind) {
            case GateKind::GCX:
            case GateKind::GCZ: ++r.gcx; break;
            case GateKind::X: ++r.x; break;
            case GateKind::H: ++r.h; break;
            default: ++r.rz; break;
        }
        long layer = front[static_cast<std::size_t>(g.target)];
        for (const auto& [cw, cv] : g.controls)
            layer = std::max(layer, front[static_cast<std::size_t>(cw)]);
        ++layer;
        front[static_cast<std::size_t>(g.target)] = layer;
        for (const auto& [cw, cv] : g.controls) front[static_cast<std::size_t>(cw)] = layer;
        r.depth = std::max(r.depth, layer);
    }
    return r;
}

// ---------------------------------------------------------------------------
// JSON serialization (bit-exact round trip; angles are IEEE-754 doubles).

inline nlohmann::json circuit_to_json(const Circuit& c) {
    nlohmann::json jw = nlohmann::json::array();
    for (const auto& w : c.wires) {
        nlohmann::json e{{"index", w.index}, {"dim", w.dim}};
        if (!w.label.empty()) e["label"] = w.label;
        jw.push_back(std::move(e));
    }
    nlohmann::json jg = nlohmann::json::array();
    for (const auto& g : c.gates) {
        nlohmann::json e;
        e["kind"] = to_string(g.kind);
        e["subspace"] = {g.sub_lo, g.sub_hi};
        if (g.is_rotation()) e["angle"] = g.angle;
        e["target"] = g.target;
        nlohmann::json ctrls = nlohmann::json::array();
        for (const auto& [cw, cv] : g.controls) ctrls.push_back({cw, cv});
        e["controls"] = std::move(ctrls);
        jg.push_back(std::move(e));
    }
    return nlohmann::json{{"wires", std::move(jw)}, {"gates", std::move(jg)}};
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
    Circuit c;
    for (const auto& e : j.at("wires")) {
        Wire w;
        w.index = e.at("index").get<int>();
        w.dim = e.at("dim").get<int>();
        if (e.contains("label")) w.label = e.at("label").get<std::string>();
        c.wires.push_back(std::move(w));
    }
    std::sort(c.wires.begin(), c.wires.end(),
              [](const Wire& a, const Wire& b) { return a.index < b.index; });
    for (const auto& e : j.at("gates")) {
        GateOp g;
        g.kind = gate_kind_from_string(e.at("kind").get<std::string>());
        g.sub_lo = e.at("subspace").at(0).get<int>();
        g.sub_hi = e.at("subspace").at(1).get<int>();
        if (e.contains("angle")) g.angle = e.at("angle").get<double>();
        g.target = e.at("target").get<int>();
        for (const auto& ce : e.at("controls"))
            g.controls.emplace_back(ce.at(0).get<int>(), ce.at(1).get<int>());
        c.gates.push_back(std::move(g));
    }
    return c;
}

} // namespace qlgt
