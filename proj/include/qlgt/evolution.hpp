#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "qlgt/circuit.hpp"
#include "qlgt/gating.hpp"
#include "qlgt/plaquette.hpp"
#include "qlgt/synthesis.hpp"

namespace qlgt {

struct EvolutionParams {
    double g2 = 0.2;
    double t = 0.0;
    int n_trotter = 1;

    double dt() const { return t / n_trotter; }
    double tau() const { return -t / (g2 * n_trotter); }
};

/// Additive (table-style) resource row: depth adds over subcircuits, so the
/// totals reproduce the published per-block accounting. The ASAP depth of
/// the emitted circuit is available separately through resource_report.
struct TableRow {
    long gcx = 0, rz = 0, x = 0, h = 0, depth = 0;

    TableRow& operator+=(const TableRow& o) {
        gcx += o.gcx;
        rz += o.rz;
        x += o.x;
        h += o.h;
        depth += o.depth;
        return *this;
    }
    TableRow times(long n, bool depth_too = true) const {
        return TableRow{gcx * n, rz * n, x * n, h * n, depth_too ? depth * n : depth};
    }
    bool operator==(const TableRow& o) const = default;
};

struct Compiled {
    Circuit circuit;
    TableRow additive;
};

// ---------------------------------------------------------------------------
// Cube wiring. Links live on the edges of a unit cube; faces are listed as
// opposite pairs (A, A'), (B, B'), (C, C') and each face records its four
// plaquette links (q_l, j_a^b, q_r, j_a^t) and four control links
// (j_l^t, j_l^b, j_r^b, j_r^t), i.e. control m touches plaquette links
// (m+3)%4 and m.

struct FaceWiring {
    std::array<int, 4> plaq{};
    std::array<int, 4> ctrl{};
    std::string label;
};

struct CubeWiring {
    int d = 3;
    std::vector<Wire> links; // 12 link wires
    std::array<FaceWiring, 6> faces{};

    static int xlink(int y, int z) { return 0 + y + 2 * z; }
    static int ylink(int x, int z) { return 4 + x + 2 * z; }
    static int zlink(int x, int y) { return 8 + x + 2 * y; }

    static CubeWiring make(int d) {
        CubeWiring w;
        w.d = d;
        const char* names[12] = {"x00", "x10", "x01", "x11", "y00", "y10",
                                 "y01", "y11", "z00", "z10", "z01", "z11"};
        for (int i = 0; i < 12; ++i) w.links.push_back(Wire{i, d, names[i]});
        w.faces[0] = {{ylink(0, 0), xlink(0, 0), ylink(1, 0), xlink(1, 0)},
                      {zlink(0, 1), zlink(0, 0), zlink(1, 0), zlink(1, 1)},
                      "A"};
        w.faces[1] = {{ylink(0, 1), xlink(0, 1), ylink(1, 1), xlink(1, 1)},
                      {zlink(0, 1), zlink(0, 0), zlink(1, 0), zlink(1, 1)},
                      "A'"};
        w.faces[2] = {{zlink(0, 0), ylink(0, 0), zlink(0, 1), ylink(0, 1)},
                      {xlink(0, 1), xlink(0, 0), xlink(1, 0), xlink(1, 1)},
                      "B"};
        w.faces[3] = {{zlink(1, 0), ylink(1, 0), zlink(1, 1), ylink(1, 1)},
                      {xlink(0, 1), xlink(0, 0), xlink(1, 0), xlink(1, 1)},
                      "B'"};
        w.faces[4] = {{zlink(0, 0), xlink(0, 0), zlink(1, 0), xlink(0, 1)},
                      {ylink(0, 1), ylink(0, 0), ylink(1, 0), ylink(1, 1)},
                      "C"};
        w.faces[5] = {{zlink(0, 1), xlink(1, 0), zlink(1, 1), xlink(1, 1)},
                      {ylink(0, 1), ylink(0, 0), ylink(1, 0), ylink(1, 1)},
                      "C'"};
        return w;
    }

    /// Eight vertices, each with its three incident links.
    static std::array<std::array<int, 3>, 8> vertices() {
        std::array<std::array<int, 3>, 8> out{};
        int n = 0;
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                for (int z = 0; z < 2; ++z)
                    out[static_cast<std::size_t>(n++)] = {xlink(y, z), ylink(x, z), zlink(x, y)};
        return out;
    }
};

enum class CompileStyle { QutritOr, GeneralAnd };

namespace detail {

inline int term_target_position(const Pqrs& pqrs) {
    int pos = 0;
    for (int m = 1; m < 4; ++m)
        if (pqrs[m] >= pqrs[pos]) pos = m;
    return pos;
}

inline Circuit remap_onto(const Circuit& local, const std::vector<int>& map,
                          const std::vector<Wire>& wires) {
    return remap_wires(local, map, wires);
}

} // namespace detail

/// X-parity subroutine: one H per plaquette wire in its term subspace and a
/// three-GCX fan moving the joint subspace parity onto the target wire.
inline Compiled xparity_subroutine(const Pqrs& pqrs, const std::array<int, 4>& plaq_wires,
                                   int target_pos, const std::vector<Wire>& wires) {
    Compiled out;
    out.circuit.wires = wires;
    std::array<int, 3> rest{};
    int n = 0;
    for (int m = 0; m < 4; ++m)
        if (m != target_pos) rest[static_cast<std::size_t>(n++)] = m;
    for (int m = 0; m < 4; ++m)
        out.circuit.add(make_h(plaq_wires[static_cast<std::size_t>(m)], pqrs[m], pqrs[m] + 1));
    const auto gcx_between = [&](int from_pos, int to_pos) {
        const int cw = plaq_wires[static_cast<std::size_t>(from_pos)];
        const int tw = plaq_wires[static_cast<std::size_t>(to_pos)];
        out.circuit.add(make_gcx(cw, pqrs[from_pos] + 1, tw, pqrs[to_pos], pqrs[to_pos] + 1));
    };
    gcx_between(rest[0], rest[1]);
    gcx_between(rest[2], target_pos);
    gcx_between(rest[1], target_pos);
    out.additive = TableRow{3, 0, 0, 4, 3};
    return out;
}

namespace detail {

/// Control sequence and angles for one term's multiplexed-rotation block.
/// `aux_first` matches the qutrit path (aux digit restricted to {0,1} with
/// rotations active on 0); the general path keeps the aux digit last with
/// rotations active on 1, which keeps the closing-run parity sound.
struct TermSequence {
    ControlSequence c;
    std::vector<double> thetas;
};

inline TermSequence qutrit_term_sequence(const GGGGTerm& term, double tau) {
    TermSequence out;
    out.c.dims = {2, 3, 3, 3, 3};
    std::vector<std::pair<Word, double>> sector = term.controls;
    std::size_t cursor = 0;
    std::sort(sector.begin(), sector.end(), [](const auto& a, const auto& b) {
        return word_to_int(a.first, 3) < word_to_int(b.first, 3);
    });
    for (int a = 0; a < 2; ++a) {
        cursor = 0;
        for (std::int64_t v = 0; v < 81; ++v) {
            Word w = int_to_word(v, {3, 3, 3, 3});
            if ((w[0] + w[1] + w[2] + w[3]) % 2 != 0) continue;
            Word full{a};
            full.insert(full.end(), w.begin(), w.end());
            out.c.words.push_back(std::move(full));
            double theta = 0.0;
            if (a == 0) {
                while (cursor < sector.size() &&
                       word_to_int(sector[cursor].first, 3) < v)
                    ++cursor;
                if (cursor < sector.size() && word_to_int(sector[cursor].first, 3) == v)
                    theta = 2.0 * tau * sector[cursor].second;
            }
            out.thetas.push_back(theta);
        }
    }
    return out;
}

inline TermSequence general_term_sequence(const GGGGTerm& term, double tau, int d) {
    TermSequence out;
    out.c.dims = {d, d, d, d, 2};
    std::vector<std::pair<Word, double>> sector = term.controls;
    std::sort(sector.begin(), sector.end(), [d](const auto& a, const auto& b) {
        return word_to_int(a.first, d) < word_to_int(b.first, d);
    });
    std::size_t cursor = 0;
    const std::int64_t n4 = static_cast<std::int64_t>(d) * d * d * d;
    for (std::int64_t v = 0; v < n4; ++v) {
        Word w = int_to_word(v, {d, d, d, d});
        while (cursor < sector.size() && word_to_int(sector[cursor].first, d) < v) ++cursor;
        const bool in_sector =
            cursor < sector.size() && word_to_int(sector[cursor].first, d) == v;
        for (int a = 0; a < 2; ++a) {
            Word full = w;
            full.push_back(a);
            out.c.words.push_back(std::move(full));
            out.thetas.push_back(a == 1 && in_sector ? 2.0 * tau * sector[cursor].second : 0.0);
        }
    }
    return out;
}

} // namespace detail

/// Compiles exp(-i tau (sum_Pi) XXXX) for one term on the given face.
/// Structure: [gating-on] X-parity, multiplexed rotations, X-parity mirror,
/// [gating-off]; at d = 3 the OR gating commutes inside the X-parity block
/// as drawn in the reference layout.
inline Compiled compile_term_evolution(const GGGGTerm& term, const FaceWiring& face,
                                       const EvolutionParams& params, int aux_wire,
                                       const std::vector<Wire>& wires, CompileStyle style) {
    const int d = wires[static_cast<std::size_t>(face.plaq[0])].dim;
    const int target_pos = detail::term_target_position(term.pqrs);
    const int target = face.plaq[static_cast<std::size_t>(target_pos)];
    const int lo = term.pqrs[target_pos], hi = lo + 1;

    Compiled xp = xparity_subroutine(term.pqrs, face.plaq, target_pos, wires);

    std::array<int, 3> guarded_pos{};
    int n = 0;
    for (int m = 0; m < 4; ++m)
        if (m != target_pos) guarded_pos[static_cast<std::size_t>(n++)] = m;

    Compiled out;
    out.circuit.wires = wires;

    if (style == CompileStyle::QutritOr) {
        if (d != 3) throw std::invalid_argument("compile_term_evolution: qutrit style needs d=3");
        std::array<int, 3> detect{};
        for (int i = 0; i < 3; ++i) {
            const int x = term.pqrs[guarded_pos[static_cast<std::size_t>(i)]];
            detect[static_cast<std::size_t>(i)] = (x == 0) ? 2 : 0;
        }
        Circuit lor = or3_qutrit(detect[0], detect[1], detect[2]);
        std::vector<int> map{face.plaq[static_cast<std::size_t>(guarded_pos[0])],
                             face.plaq[static_cast<std::size_t>(guarded_pos[1])],
                             face.plaq[static_cast<std::size_t>(guarded_pos[2])], aux_wire};
        Circuit lor_mapped = detail::remap_onto(lor, map, wires);

        auto seq = detail::qutrit_term_sequence(term, params.tau());
        auto cc = ccr_synthesize(seq.c, RotationAxis::Z, seq.thetas, lo, hi,
                                 {3, 3, 3, 3, 3}, d);
        std::vector<int> cc_map{aux_wire, face.ctrl[0], face.ctrl[1], face.ctrl[2], face.ctrl[3],
                                target};
        Circuit cc_mapped = detail::remap_onto(cc.circuit, cc_map, wires);

        out.circuit.append(xp.circuit);
        out.circuit.append(lor_mapped);
        out.circuit.append(cc_mapped);
        out.circuit.append(mirror(lor_mapped));
        out.circuit.append(mirror(xp.circuit));

        const auto cc_counts = resource_report(cc.circuit);
        const TableRow cc_row{cc_counts.gcx, cc_counts.rz, cc_counts.x, 0,
                              cc_counts.gcx + cc_counts.rz + cc_counts.x};
        const TableRow or_row{6, 0, 1, 0, 6};
        out.additive += cc_row;
        out.additive += or_row.times(2);
        out.additive += xp.additive.times(2);
    } else {
        GatingSpec spec;
        spec.variant = GatingVariant::AND;
        for (int i = 0; i < 3; ++i) {
            const int pos = guarded_pos[static_cast<std::size_t>(i)];
            spec.guarded.push_back(face.plaq[static_cast<std::size_t>(pos)]);
            spec.levels.push_back({term.pqrs[pos], term.pqrs[pos] + 1});
        }
        spec.aux = aux_wire;
        std::vector<int> wire_dims;
        for (const auto& w : wires) wire_dims.push_back(w.dim);
        Circuit land = and_verifier(spec, wire_dims);
        land.wires = wires;

        auto seq = detail::general_term_sequence(term, params.tau(), d);
        auto cc = ccr_synthesize(seq.c, RotationAxis::Z, seq.thetas, lo, hi,
                                 {d, d, d, d, wire_dims[static_cast<std::size_t>(aux_wire)]}, d,
                                 /*allow_corrections=*/false, ClosingStyle::AlphabetRuns);
        std::vector<int> cc_map{face.ctrl[0], face.ctrl[1], face.ctrl[2], face.ctrl[3], aux_wire,
                                target};
        Circuit cc_mapped = detail::remap_onto(cc.circuit, cc_map, wires);

        out.circuit.append(land);
        out.circuit.append(xp.circuit);
        out.circuit.append(cc_mapped);
        out.circuit.append(mirror(xp.circuit));
        out.circuit.append(mirror(land));

        const auto cc_counts = resource_report(cc.circuit);
        const auto and_counts = resource_report(land);
        out.additive += TableRow{cc_counts.gcx, cc_counts.rz, cc_counts.x, 0,
                                 cc_counts.gcx + cc_counts.rz + cc_counts.x};
        out.additive += TableRow{and_counts.gcx, 0, 0, 0, and_counts.gcx}.times(2);
        out.additive += xp.additive.times(2);
    }
    return out;
}

/// Full plaquette-operator evolution on one face: (d-1)^4 term circuits
/// ordered by increasing integer value of pqrs, sharing one auxiliary wire.
inline Compiled compile_plaquette_evolution(const PlaquetteOperator& op, const FaceWiring& face,
                                            const EvolutionParams& params, int aux_wire,
                                            const std::vector<Wire>& wires, CompileStyle style) {
    Compiled out;
    out.circuit.wires = wires;
    for (const auto& term : op.terms) {
        Compiled t = compile_term_evolution(term, face, params, aux_wire, wires, style);
        out.circuit.append(t.circuit);
        out.additive += t.additive;
    }
    return out;
}

/// Standalone 9-wire plaquette evolution (8 face links + one auxiliary).
inline Compiled compile_plaquette_standalone(const PlaquetteOperator& op,
                                             const EvolutionParams& params, CompileStyle style) {
    const int d = op.d;
    std::vector<Wire> wires;
    FaceWiring face;
    const char* plaq_names[4] = {"q_l", "j_a_b", "q_r", "j_a_t"};
    const char* ctrl_names[4] = {"j_l_t", "j_l_b", "j_r_b", "j_r_t"};
    for (int m = 0; m < 4; ++m) {
        face.plaq[static_cast<std::size_t>(m)] = m;
        wires.push_back(Wire{m, d, plaq_names[m]});
    }
    for (int m = 0; m < 4; ++m) {
        face.ctrl[static_cast<std::size_t>(m)] = 4 + m;
        wires.push_back(Wire{4 + m, d, ctrl_names[m]});
    }
    const int aux_dim = (style == CompileStyle::QutritOr) ? 3 : 4;
    wires.push_back(Wire{8, aux_dim, "aux0"});
    return compile_plaquette_evolution(op, face, params, 8, wires, style);
}

/// Two opposite faces evolved in parallel: the second face's gate order is
/// mirrored and the two gate lists are interleaved, so rotation and GCX
/// layers alternate across the shared control links. Gate counts double the
/// single-face row while the additive depth stays that of one face.
inline Compiled compile_parallel_faces(const PlaquetteOperator& op, const FaceWiring& face_a,
                                       const FaceWiring& face_b, const EvolutionParams& params,
                                       int aux_a, int aux_b, const std::vector<Wire>& wires,
                                       CompileStyle style) {
    if (!std::is_permutation(face_a.ctrl.begin(), face_a.ctrl.end(), face_b.ctrl.begin()))
        throw std::invalid_argument("compile_parallel_faces: faces are not opposite");
    Compiled a = compile_plaquette_evolution(op, face_a, params, aux_a, wires, style);
    Compiled b = compile_plaquette_evolution(op, face_b, params, aux_b, wires, style);
    Compiled out;
    out.circuit.wires = wires;
    const auto& ga = a.circuit.gates;
    std::vector<GateOp> gb(b.circuit.gates.rbegin(), b.circuit.gates.rend());
    const std::size_t n = std::max(ga.size(), gb.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (i < ga.size()) out.circuit.add(ga[i]);
        if (i < gb.size()) out.circuit.add(gb[i]);
    }
    out.additive = a.additive;
    out.additive.gcx += b.additive.gcx;
    out.additive.rz += b.additive.rz;
    out.additive.x += b.additive.x;
    out.additive.h += b.additive.h;
    return out;
}

/// Electric (Casimir) step: per link, exp(-i (g^2/2) dt sum_j j(j+1) Pi_2j)
/// as d-1 single-level phases (the j = 0 level needs none).
inline Compiled compile_electric_step(const EvolutionParams& params,
                                      const std::vector<int>& link_wires,
                                      const std::vector<Wire>& wires) {
    Compiled out;
    out.circuit.wires = wires;
    long per_wire = 0;
    for (int w : link_wires) {
        const int d = wires[static_cast<std::size_t>(w)].dim;
        per_wire = d - 1;
        for (int level = 1; level < d; ++level) {
            const double jj1 = 0.25 * level * (level + 2); // j(j+1) with 2j = level
            out.circuit.add(make_phase(w, level, -0.5 * params.g2 * params.dt() * jj1));
        }
    }
    out.additive = TableRow{0, static_cast<long>(link_wires.size()) * per_wire, 0, 0, per_wire};
    return out;
}

/// One first-order Trotter step on the cube: the electric step followed by
/// the three opposite-face pairs in the given order (default (A,A'), (B,B'),
/// (C,C')). Uses 12 link wires plus two auxiliary wires.
inline Compiled compile_trotter_step(const CubeWiring& cube, const PlaquetteOperator& op,
                                     const EvolutionParams& params, CompileStyle style,
                                     std::array<int, 3> pair_order = {0, 1, 2}) {
    std::vector<Wire> wires = cube.links;
    const int aux_dim = (style == CompileStyle::QutritOr) ? 3 : 4;
    const int aux_a = static_cast<int>(wires.size());
    wires.push_back(Wire{aux_a, aux_dim, "aux0"});
    const int aux_b = static_cast<int>(wires.size());
    wires.push_back(Wire{aux_b, aux_dim, "aux1"});

    std::vector<int> link_wires(12);
    for (int i = 0; i < 12; ++i) link_wires[static_cast<std::size_t>(i)] = i;

    Compiled out;
    out.circuit.wires = wires;
    Compiled elec = compile_electric_step(params, link_wires, wires);
    out.circuit.append(elec.circuit);
    out.additive += elec.additive;
    for (int p : pair_order) {
        Compiled pair = compile_parallel_faces(op, cube.faces[static_cast<std::size_t>(2 * p)],
                                               cube.faces[static_cast<std::size_t>(2 * p + 1)],
                                               params, aux_a, aux_b, wires, style);
        out.circuit.append(pair.circuit);
        out.additive += pair.additive;
    }
    return out;
}

/// Closed-form per-subcircuit resource rows for the general-d compilation.
struct QuditResourceTable {
    TableRow cc;        // CC over Z_2 x Z_d^4
    TableRow and_gate;  // per application
    TableRow xparity;   // per application
    TableRow term;      // one (sum_Pi) XXXX
    TableRow plaquette; // full face evolution
};

inline QuditResourceTable qudit_resource_formulas(int d) {
    if (d < 2) throw std::invalid_argument("qudit_resource_formulas: d >= 2");
    const long d4 = static_cast<long>(d) * d * d * d;
    const long c4 = static_cast<long>(d - 1) * (d - 1) * (d - 1) * (d - 1);
    QuditResourceTable t;
    t.cc = TableRow{2 * d4 + 4, 2 * d4, 1, 0, 4 * d4 + 5};
    t.and_gate = TableRow{10, 0, 0, 0, 10};
    t.xparity = TableRow{3, 0, 0, 4, 3};
    t.term = TableRow{2 * d4 + 30, 2 * d4, 1, 8, 4 * d4 + 31};
    t.plaquette = t.term.times(c4);
    return t;
}

} // namespace qlgt
