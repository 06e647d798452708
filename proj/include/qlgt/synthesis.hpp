#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "qlgt/angle_transform.hpp"
#include "qlgt/circuit.hpp"
#include "qlgt/sequencer.hpp"

namespace qlgt {

enum class RotationAxis { Y, Z };

inline GateKind rotation_kind(RotationAxis a) {
    return a == RotationAxis::Y ? GateKind::RY : GateKind::RZ;
}

/// Synthesized multiplexed-rotation block. Wires 0..k-1 are the controls in
/// word order and wire k is the rotation target.
struct MultiplexResult {
    Circuit circuit;
    std::vector<Word> b_words;
    std::vector<Word> g_words;
    Mat M; // corrected, full rank
    std::vector<double> beta;
    std::vector<Correction> corrections;
    long transition_gcx = 0;
    long closing_gcx = 0;
    long closing_x = 0;
};

/// Closing-gate convention. Both styles make every (wire, value) control
/// count even so the circuit applies no net X on reachable control words;
/// they differ in when a full odd run collapses to a control-on-0 GCX plus
/// an X (the gcx-opt).
///
/// PhysicalRuns collapses runs spanning the physical wire dimension (the
/// convention of the corrected restricted sequences, where a two-level
/// alphabet on a qutrit wire closes with one plain control gate).
/// AlphabetRuns collapses runs spanning the sequence alphabet, which is the
/// accounting of the general-qudit resource table; it is equivalent on the
/// restricted control domain the caller guarantees.
enum class ClosingStyle { PhysicalRuns, AlphabetRuns };

namespace detail {

struct ClosingPlan {
    std::vector<std::pair<int, int>> gcx; // (wire, value)
    bool plain_x = false;
};

inline ClosingPlan plan_closing(const CcSkeleton& skel, const std::vector<int>& dims,
                                const std::vector<int>& physical_dims, ClosingStyle style) {
    std::map<std::pair<int, int>, int> count;
    for (const auto& gates : skel.before)
        for (const auto& g : gates) ++count[g];
    ClosingPlan plan;
    int x_parity = 0;
    for (int w = 0; w < static_cast<int>(dims.size()); ++w) {
        const int d_alpha = dims[static_cast<std::size_t>(w)];
        const int d_phys = physical_dims[static_cast<std::size_t>(w)];
        std::vector<int> odd;
        for (int v = 0; v < d_alpha; ++v) {
            auto it = count.find({w, v});
            if (it != count.end() && it->second % 2 == 1) odd.push_back(v);
        }
        if (odd.empty()) continue;
        const int run_dim = (style == ClosingStyle::PhysicalRuns) ? d_phys : d_alpha;
        const bool full_run = static_cast<int>(odd.size()) == run_dim - 1 && odd.front() == 1;
        const bool collapse =
            full_run && (style == ClosingStyle::AlphabetRuns ? (d_phys > 2) : (run_dim > 2));
        if (collapse) {
            plan.gcx.emplace_back(w, 0);
            x_parity ^= 1;
        } else {
            for (int v : odd) plan.gcx.emplace_back(w, v);
        }
    }
    plan.plain_x = (x_parity == 1);
    return plan;
}

} // namespace detail

/// Conditionally-controlled multiplexed rotation over an arbitrary control
/// sequence C. The caller guarantees the control wires are restricted to
/// states in {C}; behavior outside {C} is unconstrained. If the sequencer's
/// angle-transform matrix is singular, rank-restoring GCX-pair corrections
/// are searched for (throws if the search is exhausted or corrections are
/// disallowed).
inline MultiplexResult ccr_synthesize(const ControlSequence& c, RotationAxis axis,
                                      const std::vector<double>& thetas, int sub_lo, int sub_hi,
                                      std::vector<int> physical_ctrl_dims = {},
                                      int target_dim = 0, bool allow_corrections = true,
                                      ClosingStyle closing_style = ClosingStyle::PhysicalRuns) {
    const int n = static_cast<int>(c.size());
    const int k = static_cast<int>(c.width());
    if (static_cast<int>(thetas.size()) != n)
        throw std::invalid_argument("ccr_synthesize: theta length mismatch");
    if (physical_ctrl_dims.empty()) physical_ctrl_dims = c.dims;
    if (target_dim == 0) target_dim = std::max(sub_hi + 1, *std::max_element(
                                                               physical_ctrl_dims.begin(),
                                                               physical_ctrl_dims.end()));

    MultiplexResult out;
    auto seq = sequencers(c);
    out.b_words = std::move(seq.b);
    out.g_words = std::move(seq.g);

    // The solver's sign matrix is computed from the physical control words:
    // the emitted GCX gates fire on the physical digits, and the relabeled
    // d-ary words agree with them only when the branch-adoption trick is
    // safe (it is for product and parity-restricted sequences).
    const auto skel = CcSkeleton::from_gray(out.g_words);
    out.M = skeleton_matrix(c.words, skel);

    if (matrix_rank(out.M) < n) {
        if (!allow_corrections)
            throw std::runtime_error("ccr_synthesize: singular angle transform");
        // The search depends only on the control sequence, which repeats
        // per term during plaquette compilation; memoize it.
        static std::map<std::string, std::vector<Correction>> cache;
        std::string key;
        for (int dim : c.dims) key += static_cast<char>('0' + dim);
        key += '|';
        for (const auto& w : c.words) key += word_to_string(w);
        const auto hit = cache.find(key);
        if (hit != cache.end()) {
            out.corrections = hit->second;
            for (const auto& cr : out.corrections) apply_correction(out.M, cr, c.words);
        } else {
            out.corrections = correct_singular_M(out.M, c.words, c.dims);
            cache.emplace(std::move(key), out.corrections);
        }
    }
    out.beta = solve_linear(out.M, thetas);

    Circuit& circ = out.circuit;
    for (int w = 0; w < k; ++w) circ.add_wire(physical_ctrl_dims[static_cast<std::size_t>(w)]);
    const int target = circ.add_wire(target_dim);
    const GateKind rot = rotation_kind(axis);

    std::map<int, std::vector<Correction>> corr_by_col;
    for (const auto& cr : out.corrections) corr_by_col[cr.column].push_back(cr);

    for (int j = 0; j < n; ++j) {
        for (const auto& [wire, value] : skel.before[static_cast<std::size_t>(j)]) {
            circ.add(make_gcx(wire, value, target, sub_lo, sub_hi));
            ++out.transition_gcx;
        }
        const auto it = corr_by_col.find(j);
        if (it != corr_by_col.end())
            for (const auto& cr : it->second)
                circ.add(make_gcx(cr.wire, cr.value, target, sub_lo, sub_hi));
        circ.add(make_rotation(rot, target, sub_lo, sub_hi, out.beta[static_cast<std::size_t>(j)]));
        if (it != corr_by_col.end())
            for (auto r = it->second.rbegin(); r != it->second.rend(); ++r)
                circ.add(make_gcx(r->wire, r->value, target, sub_lo, sub_hi));
    }

    const auto closing = detail::plan_closing(skel, c.dims, physical_ctrl_dims, closing_style);
    for (const auto& [wire, value] : closing.gcx) {
        circ.add(make_gcx(wire, value, target, sub_lo, sub_hi));
        ++out.closing_gcx;
    }
    if (closing.plain_x) {
        circ.add(make_x(target, sub_lo, sub_hi));
        out.closing_x = 1;
    }
    return out;
}

/// Uniformly-controlled rotation over all d^k control words (the full
/// product is always invertible, so no corrections arise).
inline MultiplexResult ucr_synthesize(int k, int d, RotationAxis axis,
                                      const std::vector<double>& thetas, int sub_lo, int sub_hi,
                                      int target_dim = 0) {
    auto c = ControlSequence::full_product(std::vector<int>(static_cast<std::size_t>(k), d));
    return ccr_synthesize(c, axis, thetas, sub_lo, sub_hi, {}, target_dim ? target_dim : d,
                          /*allow_corrections=*/false);
}

/// Mixed-dimension uniformly-controlled rotation (full product over the
/// given per-wire dimensions).
inline MultiplexResult ucr_synthesize_mixed(const std::vector<int>& dims, RotationAxis axis,
                                            const std::vector<double>& thetas, int sub_lo,
                                            int sub_hi, std::vector<int> physical_ctrl_dims = {},
                                            int target_dim = 0,
                                            ClosingStyle closing_style = ClosingStyle::PhysicalRuns) {
    auto c = ControlSequence::full_product(dims);
    return ccr_synthesize(c, axis, thetas, sub_lo, sub_hi, std::move(physical_ctrl_dims),
                          target_dim, /*allow_corrections=*/false, closing_style);
}

/// Paired-angle decomposition of exp(-i phi Pi^n Z01^(k+1)): 2^k rotations
/// on the last wire in +-phi pairs, each controlled on the n-qudit register
/// (at level 1) and one companion word.
inline Circuit alt_paired_angle_decompose(int n, int k, double phi, int d = 3) {
    Circuit c;
    for (int i = 0; i < n; ++i) c.add_wire(d, "pi" + std::to_string(i));
    for (int i = 0; i < k; ++i) c.add_wire(d, "z" + std::to_string(i));
    const int target = c.add_wire(d, "zt");
    const std::int64_t words = std::int64_t{1} << k;
    for (std::int64_t w = 0; w < words; ++w) {
        int ones = 0;
        GateOp g = make_rotation(GateKind::RZ, target, 0, 1, 0.0);
        for (int i = 0; i < n; ++i) g.controls.emplace_back(i, 1);
        for (int i = 0; i < k; ++i) {
            const int bit = static_cast<int>((w >> (k - 1 - i)) & 1);
            ones += bit;
            g.controls.emplace_back(n + i, bit);
        }
        g.angle = normalize_angle((ones % 2 == 0) ? 2 * phi : -2 * phi);
        c.add(g);
    }
    return c;
}

} // namespace qlgt
