#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "qlgt/gray.hpp"
#include "qlgt/half_int.hpp"

namespace qlgt {

/// Adjacent two-level subspace (x, x+1) of a qudit link register.
struct XSubspace {
    int low = 0;
    int high() const { return low + 1; }
};

/// Control set F(x, y) = {|x-y|, ..., x+y+1} intersected with [0, d-1].
inline std::vector<int> control_set(int x, int y, int d) {
    if (x < 0 || x > d - 2 || y < 0 || y > d - 2)
        throw std::invalid_argument("control_set: subspace index out of range");
    std::vector<int> out;
    for (int v = std::abs(x - y); v <= x + y + 1 && v <= d - 1; ++v) out.push_back(v);
    return out;
}

using Pqrs = std::array<int, 4>;

/// Control sector C_pqrs: all words ijkl with i in F(s,p), j in F(p,q),
/// k in F(q,r), l in F(r,s) and even digit sum, in increasing integer order.
inline std::vector<Word> control_sector(const Pqrs& pqrs, int d) {
    const auto [p, q, r, s] = pqrs;
    const std::array<std::vector<int>, 4> f{control_set(s, p, d), control_set(p, q, d),
                                            control_set(q, r, d), control_set(r, s, d)};
    std::vector<Word> out;
    for (int i : f[0])
        for (int j : f[1])
            for (int k : f[2])
                for (int l : f[3])
                    if ((i + j + k + l) % 2 == 0) out.push_back(Word{i, j, k, l});
    std::sort(out.begin(), out.end(),
              [d](const Word& a, const Word& b) { return word_to_int(a, d) < word_to_int(b, d); });
    return out;
}

// ---------------------------------------------------------------------------
// D4 symmetry of the plaquette.
//
// Plaquette links are indexed 0..3 in cycle order (q_l, j_a^b, q_r, j_a^t);
// control m sits at the vertex between links m-1 and m, so i = ctrl 0 lies
// between s = link 3 and p = link 0.

struct D4Perm {
    std::array<int, 4> link; // image[m] = source[link[m]]
    std::array<int, 4> ctrl; // image word[m] = source word[ctrl[m]]
};

inline const std::array<D4Perm, 8>& d4_permutations() {
    static const std::array<D4Perm, 8> perms = [] {
        std::array<D4Perm, 8> out{};
        int n = 0;
        for (int t = 0; t < 4; ++t) { // rotations
            D4Perm p{};
            for (int m = 0; m < 4; ++m) {
                p.link[m] = (m + t) % 4;
                p.ctrl[m] = (m + t) % 4;
            }
            out[n++] = p;
        }
        for (int t = 0; t < 4; ++t) { // reflections
            D4Perm p{};
            for (int m = 0; m < 4; ++m) {
                p.link[m] = ((t - m) % 4 + 4) % 4;
                p.ctrl[m] = ((t - m + 1) % 4 + 4) % 4;
            }
            out[n++] = p;
        }
        return out;
    }();
    return perms;
}

inline Pqrs apply_link_perm(const Pqrs& w, const D4Perm& p) {
    Pqrs out{};
    for (int m = 0; m < 4; ++m) out[m] = w[p.link[m]];
    return out;
}

inline Word apply_ctrl_perm(const Word& w, const D4Perm& p) {
    Word out(4);
    for (int m = 0; m < 4; ++m) out[m] = w[p.ctrl[m]];
    return out;
}

/// D4 orbit representatives (lexicographic minima) with orbit sizes, for the
/// (d-1)^4 ways of assigning X subspaces to the four plaquette links.
inline std::vector<std::pair<Pqrs, int>> d4_classes(int d) {
    if (d < 2) throw std::invalid_argument("d4_classes: d must be >= 2");
    const int c = d - 1;
    std::vector<std::pair<Pqrs, int>> out;
    std::vector<char> seen(static_cast<std::size_t>(c * c * c * c), 0);
    const auto to_idx = [c](const Pqrs& w) {
        return ((w[0] * c + w[1]) * c + w[2]) * c + w[3];
    };
    for (int idx = 0; idx < c * c * c * c; ++idx) {
        if (seen[static_cast<std::size_t>(idx)]) continue;
        Pqrs w{idx / (c * c * c), (idx / (c * c)) % c, (idx / c) % c, idx % c};
        std::vector<int> orbit;
        for (const auto& p : d4_permutations()) {
            const int im = to_idx(apply_link_perm(w, p));
            if (std::find(orbit.begin(), orbit.end(), im) == orbit.end()) orbit.push_back(im);
        }
        for (int im : orbit) seen[static_cast<std::size_t>(im)] = 1;
        out.emplace_back(w, static_cast<int>(orbit.size()));
    }
    return out;
}

/// Doubly triangular class count c(c+1)(c^2+c+2)/8 with c = d-1.
inline long d4_class_count_formula(int d) {
    const long c = d - 1;
    return c * (c + 1) * (c * c + c + 2) / 8;
}

// ---------------------------------------------------------------------------
// Transition amplitudes.

/// One plaquette's eight link values (doubled j) for a flux configuration:
/// four plaquette links in cycle order and four control links.
struct FluxConfig {
    std::array<int, 4> plaq{};
    std::array<int, 4> ctrl{};

    bool vertices_valid() const {
        // ctrl m joins plaq links (m+3)%4 and m.
        for (int m = 0; m < 4; ++m)
            if (!triad_valid(ctrl[m], plaq[(m + 3) % 4], plaq[m])) return false;
        return true;
    }
};

/// Reconstructs the initial/final flux-configuration pair for one
/// (pqrs, ijkl) term. The first plaquette link is seeded with p flux lines
/// and the rest follow from Gauss's law counter-clockwise; the final
/// configuration flips every plaquette link inside its X subspace.
inline std::pair<FluxConfig, FluxConfig> flux_pair(const Pqrs& pqrs, const Word& ijkl) {
    FluxConfig init{};
    init.ctrl = {ijkl[0], ijkl[1], ijkl[2], ijkl[3]};
    init.plaq[0] = pqrs[0];
    for (int m = 1; m < 4; ++m) {
        // Pick x or x+1 by parity at the vertex shared with link m-1.
        const int x = pqrs[m];
        const int v = (init.ctrl[m] + init.plaq[m - 1] + x) % 2 == 0 ? x : x + 1;
        init.plaq[m] = v;
    }
    if (!init.vertices_valid())
        throw std::invalid_argument("flux_pair: control word is not in the control sector");
    FluxConfig fin = init;
    for (int m = 0; m < 4; ++m) fin.plaq[m] = (init.plaq[m] == pqrs[m]) ? pqrs[m] + 1 : pqrs[m];
    return {init, fin};
}

/// Physical transition matrix element phi for (pqrs, ijkl): dimension
/// factors, sign factor and the product of four 6j symbols evaluated on the
/// reconstructed flux-configuration pair.
inline double transition_amplitude(const Pqrs& pqrs, const Word& ijkl, int d) {
    for (int m = 0; m < 4; ++m) {
        if (pqrs[m] < 0 || pqrs[m] > d - 2)
            throw std::invalid_argument("transition_amplitude: subspace out of range");
        if (ijkl[m] < 0 || ijkl[m] > d - 1)
            throw std::invalid_argument("transition_amplitude: control value out of range");
    }
    const auto [ini, fin] = flux_pair(pqrs, ijkl);

    // Cycle positions: 0 = q_l, 1 = j_a^b, 2 = q_r, 3 = j_a^t.
    const int ql_i = ini.plaq[0], ql_f = fin.plaq[0];
    const int ab_i = ini.plaq[1], ab_f = fin.plaq[1];
    const int qr_i = ini.plaq[2], qr_f = fin.plaq[2];
    const int at_i = ini.plaq[3], at_f = fin.plaq[3];
    const int i = ijkl[0], j = ijkl[1], k = ijkl[2], l = ijkl[3];

    double amp = std::sqrt(static_cast<double>(dim(HalfInt{at_i})) * dim(HalfInt{at_f}) *
                           dim(HalfInt{ab_i}) * dim(HalfInt{ab_f}));
    amp *= std::sqrt(static_cast<double>(dim(HalfInt{ql_i})) * dim(HalfInt{ql_f}) *
                     dim(HalfInt{qr_i}) * dim(HalfInt{qr_f}));

    const int sign_exp = (i + j + k + l) / 2 + (at_f + ab_f - ql_i - qr_i);
    if (((sign_exp % 2) + 2) % 2 == 1) amp = -amp;

    const HalfInt half{1};
    amp *= wigner_six_j(HalfInt{i}, HalfInt{at_i}, HalfInt{ql_i}, half, HalfInt{ql_f}, HalfInt{at_f});
    amp *= wigner_six_j(HalfInt{j}, HalfInt{ab_i}, HalfInt{ql_i}, half, HalfInt{ql_f}, HalfInt{ab_f});
    amp *= wigner_six_j(HalfInt{l}, HalfInt{at_i}, HalfInt{qr_i}, half, HalfInt{qr_f}, HalfInt{at_f});
    amp *= wigner_six_j(HalfInt{k}, HalfInt{ab_i}, HalfInt{qr_i}, half, HalfInt{qr_f}, HalfInt{ab_f});
    return amp;
}

// ---------------------------------------------------------------------------
// Operator assembly.

struct GGGGTerm {
    Pqrs pqrs{};
    std::vector<std::pair<Word, double>> controls; // (ijkl, phi), increasing word order
};

struct PlaquetteOperator {
    int d = 2;
    std::vector<GGGGTerm> terms;                       // ordered by pqrs integer value
    std::vector<std::pair<Pqrs, int>> d4_class_table;  // (representative, orbit order)

    long total_entries() const {
        long n = 0;
        for (const auto& t : terms) n += static_cast<long>(t.controls.size());
        return n;
    }

    const GGGGTerm* find(const Pqrs& pqrs) const {
        for (const auto& t : terms)
            if (t.pqrs == pqrs) return &t;
        return nullptr;
    }
};

/// Builds the GVC plaquette operator: phi and control sectors are computed
/// for D4 representatives only and orbits are expanded by index permutation.
inline PlaquetteOperator build_plaquette_operator(int d, int max_d = 9) {
    if (d < 2 || d > max_d) throw std::invalid_argument("build_plaquette_operator: d out of range");
    PlaquetteOperator op;
    op.d = d;
    op.d4_class_table = d4_classes(d);

    std::map<std::int64_t, GGGGTerm> by_index;
    const auto pqrs_key = [d](const Pqrs& w) {
        std::int64_t v = 0;
        for (int m = 0; m < 4; ++m) v = v * (d - 1) + w[m];
        return v;
    };

    for (const auto& [rep, order] : op.d4_class_table) {
        GGGGTerm base;
        base.pqrs = rep;
        for (auto& word : control_sector(rep, d))
            base.controls.emplace_back(word, transition_amplitude(rep, word, d));

        for (const auto& perm : d4_permutations()) {
            GGGGTerm image;
            image.pqrs = apply_link_perm(rep, perm);
            const auto key = pqrs_key(image.pqrs);
            if (by_index.count(key)) continue;
            image.controls.reserve(base.controls.size());
            for (const auto& [word, phi] : base.controls)
                image.controls.emplace_back(apply_ctrl_perm(word, perm), phi);
            std::sort(image.controls.begin(), image.controls.end(),
                      [d](const auto& a, const auto& b) {
                          return word_to_int(a.first, d) < word_to_int(b.first, d);
                      });
            by_index.emplace(key, std::move(image));
        }
    }
    op.terms.reserve(by_index.size());
    for (auto& [key, term] : by_index) op.terms.push_back(std::move(term));
    return op;
}

/// Non-zero column entries of the assembled operator for one 8-link basis
/// word (four control digits followed by four plaquette digits). Each term
/// whose control word matches flips all four plaquette digits inside its
/// subspaces; the amplitude is the term's phi.
inline std::vector<std::pair<Word, double>> plaquette_matrix_action(const PlaquetteOperator& op,
                                                                    const Word& word8) {
    if (word8.size() != 8) throw std::invalid_argument("plaquette_matrix_action: need 8 digits");
    for (int dgt : word8)
        if (dgt < 0 || dgt >= op.d)
            throw std::invalid_argument("plaquette_matrix_action: digit out of range");

    std::vector<std::pair<Word, double>> out;
    for (const auto& term : op.terms) {
        bool in_subspace = true;
        for (int m = 0; m < 4 && in_subspace; ++m) {
            const int v = word8[static_cast<std::size_t>(4 + m)];
            in_subspace = (v == term.pqrs[m] || v == term.pqrs[m] + 1);
        }
        if (!in_subspace) continue;
        const Word ctrl(word8.begin(), word8.begin() + 4);
        const auto it = std::lower_bound(
            term.controls.begin(), term.controls.end(), ctrl, [&](const auto& entry, const Word& w) {
                return word_to_int(entry.first, op.d) < word_to_int(w, op.d);
            });
        if (it == term.controls.end() || it->first != ctrl) continue;
        Word target = word8;
        for (int m = 0; m < 4; ++m) {
            const int v = word8[static_cast<std::size_t>(4 + m)];
            target[static_cast<std::size_t>(4 + m)] =
                (v == term.pqrs[m]) ? term.pqrs[m] + 1 : term.pqrs[m];
        }
        out.emplace_back(std::move(target), it->second);
    }
    return out;
}

inline nlohmann::json plaquette_operator_to_json(const PlaquetteOperator& op) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : op.terms) {
        nlohmann::json ctrls = nlohmann::json::array();
        for (const auto& [word, phi] : t.controls)
            ctrls.push_back({{"word", word}, {"phi", phi}});
        terms.push_back({{"pqrs", t.pqrs}, {"controls", std::move(ctrls)}});
    }
    return nlohmann::json{{"d", op.d}, {"terms", std::move(terms)}};
}

} // namespace qlgt
