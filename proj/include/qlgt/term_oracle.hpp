#pragma once

#include <complex>
#include <vector>

#include "qlgt/plaquette.hpp"

namespace qlgt {

/// Closed-form action of exp(-i tau (sum_Pi) XXXX) for one term on an
/// 8-link basis word (controls first, then plaquette digits): if the control
/// word lies in the term's sector and every plaquette digit is inside its X
/// subspace, the word mixes with its four-fold flip partner through a
/// cos/sin block with angle tau * phi; otherwise the action is the identity.
inline std::vector<std::pair<Word, std::complex<double>>> term_oracle_action(
    const GGGGTerm& term, double tau, const Word& word8, int d) {
    using cd = std::complex<double>;
    bool in_subspace = true;
    for (int m = 0; m < 4 && in_subspace; ++m) {
        const int v = word8[static_cast<std::size_t>(4 + m)];
        in_subspace = (v == term.pqrs[m] || v == term.pqrs[m] + 1);
    }
    if (in_subspace) {
        const Word ctrl(word8.begin(), word8.begin() + 4);
        for (const auto& [w, phi] : term.controls) {
            if (w != ctrl) continue;
            Word flipped = word8;
            for (int m = 0; m < 4; ++m) {
                const int v = word8[static_cast<std::size_t>(4 + m)];
                flipped[static_cast<std::size_t>(4 + m)] =
                    (v == term.pqrs[m]) ? term.pqrs[m] + 1 : term.pqrs[m];
            }
            const double angle = tau * phi;
            return {{word8, cd{std::cos(angle), 0.0}}, {flipped, cd{0.0, -std::sin(angle)}}};
        }
    }
    (void)d;
    return {{word8, cd{1.0, 0.0}}};
}

} // namespace qlgt
