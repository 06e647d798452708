#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlgt/circuit.hpp"

namespace qlgt {

enum class GatingVariant { AND, OR, OR3_QUTRIT, OR_WIDE };

/// Specification of a gating subcircuit: each guarded wire carries the set
/// of levels it is checked against; the auxiliary qudit receives the result.
struct GatingSpec {
    std::vector<int> guarded;                 // wire indices
    std::vector<std::vector<int>> levels;     // per guarded wire, ascending
    int aux = -1;
    GatingVariant variant = GatingVariant::AND;
};

namespace detail {

inline void add_macro(Circuit& c, int wire, const std::vector<int>& values, int aux, int lo,
                      int hi) {
    for (int v : values) c.add(make_gcx(wire, v, aux, lo, hi));
}

} // namespace detail

/// Qudit Toffoli (2d-1 GCX, depth 2d-1): flips the target inside (0,1) when
/// the first control is at `a_value` and the scratch qudit is at |1>. For
/// d > 3 the scratch input must lie in {0, 1} (the combine-gate contract).
inline Circuit qudit_toffoli(int d, int a_value = 1) {
    if (d < 2) throw std::invalid_argument("qudit_toffoli: d must be >= 2");
    Circuit c;
    const int a = c.add_wire(d, "a");
    const int b = c.add_wire(d, "b");
    const int t = c.add_wire(d, "t");
    c.add(make_gcx(a, a_value, t, 0, 1));
    for (int m = 2; m <= d - 1; ++m) c.add(make_gcx(a, a_value, b, 0, m));
    c.add(make_gcx(b, 0, t, 0, 1));
    for (int m = d - 1; m >= 2; --m) c.add(make_gcx(a, a_value, b, 0, m));
    c.add(make_gcx(b, 0, t, 0, 1));
    return c;
}

/// AND-form input verification: writes |1> on the auxiliary qudit iff every
/// guarded wire is inside its level set. Uses |s|(2k-1) GCX gates and needs
/// aux dimension > k. The counting path climbs 0 -> 2 -> 3 -> ... -> k -> 1
/// and the downward half uncomputes partial prefixes.
inline Circuit and_verifier(const GatingSpec& spec, const std::vector<int>& wire_dims) {
    const int k = static_cast<int>(spec.guarded.size());
    if (k < 1) throw std::invalid_argument("and_verifier: no guarded wires");
    const int d_aux = wire_dims[static_cast<std::size_t>(spec.aux)];
    if (d_aux <= k) throw std::invalid_argument("and_verifier: aux dim must exceed input count");
    Circuit c;
    for (std::size_t w = 0; w < wire_dims.size(); ++w) c.add_wire(wire_dims[w]);

    const auto level_after = [k](int prefix) {
        if (prefix == 0) return 0;
        if (prefix == k) return 1;
        return prefix + 1;
    };
    for (int j = 1; j <= k; ++j)
        detail::add_macro(c, spec.guarded[static_cast<std::size_t>(j - 1)],
                          spec.levels[static_cast<std::size_t>(j - 1)], spec.aux,
                          std::min(level_after(j - 1), level_after(j)),
                          std::max(level_after(j - 1), level_after(j)));
    for (int j = k - 1; j >= 1; --j)
        detail::add_macro(c, spec.guarded[static_cast<std::size_t>(j - 1)],
                          spec.levels[static_cast<std::size_t>(j - 1)], spec.aux,
                          std::min(level_after(j - 1), level_after(j)),
                          std::max(level_after(j - 1), level_after(j)));
    return c;
}

/// Left-completion qudit OR (2k-1 GCX): writes |1> on the auxiliary qudit
/// iff any guarded wire is inside its level set; needs aux dimension > k.
inline Circuit or_left(const GatingSpec& spec, const std::vector<int>& wire_dims) {
    const int k = static_cast<int>(spec.guarded.size());
    if (k < 1) throw std::invalid_argument("or_left: no guarded wires");
    const int d_aux = wire_dims[static_cast<std::size_t>(spec.aux)];
    if (d_aux <= k) throw std::invalid_argument("or_left: aux dim must exceed input count");
    Circuit c;
    for (std::size_t w = 0; w < wire_dims.size(); ++w) c.add_wire(wire_dims[w]);

    // Park the j-th first-match at level j+1 (level 1 for the last input),
    // then funnel every parked level down to |1>.
    for (int j = 1; j <= k; ++j) {
        const int park = (j == k) ? 1 : j + 1;
        detail::add_macro(c, spec.guarded[static_cast<std::size_t>(j - 1)],
                          spec.levels[static_cast<std::size_t>(j - 1)], spec.aux, 0, park);
    }
    for (int j = k - 1; j >= 1; --j)
        detail::add_macro(c, spec.guarded[static_cast<std::size_t>(j - 1)],
                          spec.levels[static_cast<std::size_t>(j - 1)], spec.aux, 1, j + 1);
    return c;
}

/// Three-input qutrit OR (6 GCX, one X, depth as drawn 6): detects per-wire
/// values (va, vb, vc), using the third input as scratch. Writes |1> iff any
/// input matches; inputs are restored.
inline Circuit or3_qutrit(int va, int vb, int vc) {
    Circuit c;
    const int a = c.add_wire(3, "a");
    const int b = c.add_wire(3, "b");
    const int cc = c.add_wire(3, "c");
    const int aux = c.add_wire(3, "aux");
    int x3 = -1, x5 = -1;
    for (int v = 0; v < 3; ++v)
        if (v != vc) (x3 < 0 ? x3 : x5) = v;
    c.add(make_gcx(a, va, aux, 0, 2));
    c.add(make_gcx(b, vb, cc, x3, x5));
    c.add(make_gcx(cc, x3, aux, 0, 1));
    c.add(make_x(aux, 0, 1));
    c.add(make_gcx(b, vb, cc, x3, x5));
    c.add(make_gcx(cc, x5, aux, 0, 1));
    c.add(make_gcx(a, va, aux, 1, 2));
    return c;
}

/// Combine gate: assumes both inputs in {0, 1}; leaves a OR b on wire b and
/// wire a dirty. Two GCX plus one X, depth 3.
inline Circuit combine_gate() {
    Circuit c;
    const int a = c.add_wire(3, "a");
    const int b = c.add_wire(3, "b");
    c.add(make_x(a, 1, 2));
    c.add(make_gcx(b, 1, a, 1, 2));
    c.add(make_gcx(a, 2, b, 0, 1));
    return c;
}

/// Four-input qutrit OR via two two-input ORs and a combine gate: 8 GCX,
/// one X, depth 6, two auxiliary qutrits. The result lands on aux2 and aux1
/// is dirty (uncomputed by the mirrored half of a gating pair).
inline Circuit or_wide4_qutrit(const std::vector<int>& values) {
    if (values.size() != 4) throw std::invalid_argument("or_wide4_qutrit: need 4 detect values");
    Circuit c;
    for (int i = 0; i < 4; ++i) c.add_wire(3, "in" + std::to_string(i));
    const int a1 = c.add_wire(3, "aux1");
    const int a2 = c.add_wire(3, "aux2");
    c.add(make_gcx(0, values[0], a1, 0, 2));
    c.add(make_gcx(1, values[1], a1, 0, 1));
    c.add(make_gcx(0, values[0], a1, 1, 2));
    c.add(make_gcx(2, values[2], a2, 0, 2));
    c.add(make_gcx(3, values[3], a2, 0, 1));
    c.add(make_gcx(2, values[2], a2, 1, 2));
    c.add(make_x(a1, 1, 2));
    c.add(make_gcx(a2, 1, a1, 1, 2));
    c.add(make_gcx(a1, 2, a2, 0, 1));
    return c;
}

/// Dispatcher used by the CLI: builds the requested OR variant over k inputs
/// of dimension d with the given per-input detect values.
inline Circuit or_gate(int k, int d, int aux_dim, GatingVariant variant,
                       const std::vector<int>& values) {
    if (static_cast<int>(values.size()) != k)
        throw std::invalid_argument("or_gate: need one detect value per input");
    if (variant == GatingVariant::OR3_QUTRIT) {
        if (k != 3 || d != 3) throw std::invalid_argument("or_gate: OR3_QUTRIT needs k=3, d=3");
        return or3_qutrit(values[0], values[1], values[2]);
    }
    if (variant == GatingVariant::OR_WIDE) {
        if (k != 4 || d != 3) throw std::invalid_argument("or_gate: OR_WIDE implemented for k=4, d=3");
        return or_wide4_qutrit(values);
    }
    if (variant == GatingVariant::OR) {
        if (aux_dim > k) {
            GatingSpec spec;
            for (int i = 0; i < k; ++i) {
                spec.guarded.push_back(i);
                spec.levels.push_back({values[static_cast<std::size_t>(i)]});
            }
            std::vector<int> dims(static_cast<std::size_t>(k), d);
            dims.push_back(aux_dim);
            spec.aux = k;
            spec.variant = GatingVariant::OR;
            return or_left(spec, dims);
        }
        if (aux_dim == k && k == 3 && d == 3) {
            // Right completion at k = 3 (4k-5 = 7 GCX): the three-input
            // qutrit OR before the gcx-opt collapses the (c != x3) control
            // pair into a control-on-x3 GCX plus an X.
            Circuit c;
            for (int i = 0; i < 3; ++i) c.add_wire(3, "in" + std::to_string(i));
            const int aux = c.add_wire(3, "aux");
            int x3 = -1, x5 = -1;
            for (int v = 0; v < 3; ++v)
                if (v != values[2]) (x3 < 0 ? x3 : x5) = v;
            c.add(make_gcx(0, values[0], aux, 0, 2));
            c.add(make_gcx(1, values[1], 2, x3, x5));
            for (int v = 0; v < 3; ++v)
                if (v != x3) c.add(make_gcx(2, v, aux, 0, 1));
            c.add(make_gcx(1, values[1], 2, x3, x5));
            c.add(make_gcx(2, x5, aux, 0, 1));
            c.add(make_gcx(0, values[0], aux, 1, 2));
            return c;
        }
        throw std::invalid_argument("or_gate: unsupported (k, aux_dim) combination");
    }
    throw std::invalid_argument("or_gate: use and_verifier for the AND variant");
}

/// De Morgan dual of an AND-form gating subcircuit: an OR over the
/// complemented level sets followed by an X01 on the auxiliary qudit. The
/// dual writes the same |1>-iff-all-inside result on the aux wire.
inline Circuit demorgan_dual(const GatingSpec& and_spec, const std::vector<int>& wire_dims) {
    if (and_spec.variant != GatingVariant::AND)
        throw std::invalid_argument("demorgan_dual: input is not an AND-form gating subcircuit");
    GatingSpec dual = and_spec;
    dual.variant = GatingVariant::OR;
    for (std::size_t i = 0; i < dual.levels.size(); ++i) {
        std::vector<int> comp;
        const int dw = wire_dims[static_cast<std::size_t>(dual.guarded[i])];
        for (int v = 0; v < dw; ++v)
            if (std::find(and_spec.levels[i].begin(), and_spec.levels[i].end(), v) ==
                and_spec.levels[i].end())
                comp.push_back(v);
        dual.levels[i] = std::move(comp);
    }
    Circuit c = or_left(dual, wire_dims);
    c.add(make_x(dual.aux, 0, 1));
    return c;
}

} // namespace qlgt
