#include <gtest/gtest.h>

#include "qlgt/evolution_alt.hpp"
#include "qlgt/term_oracle.hpp"
#include "sparse_sim.hpp"

using namespace qlgt;
using qlgt_test::SparseSim;

namespace {

// Face-local physicality: every vertex triad of one plaquette (control,
// neighbouring plaquette links) is a valid angular momentum triad.
bool face_physical(const Word& oracle_word) {
    for (int m = 0; m < 4; ++m) {
        const int c = oracle_word[static_cast<std::size_t>(m)];
        const int a = oracle_word[static_cast<std::size_t>(4 + (m + 3) % 4)];
        const int b = oracle_word[static_cast<std::size_t>(4 + m)];
        if (!triad_valid(c, a, b)) return false;
    }
    return true;
}

} // namespace

TEST(Alternate, GroupResourceRows) {
    const auto op = build_plaquette_operator(3);
    const CubeWiring cube = CubeWiring::make(3);
    std::vector<Wire> wires = cube.links;
    AltAuxLayout aux;
    for (int i = 12; i < 17; ++i) wires.push_back(Wire{i, 3, "aux" + std::to_string(i - 12)});
    EvolutionParams params{0.2, 0.1, 1};

    // Group membership by guarded control count: the 0000, 0001 and 0101
    // classes use four-input control ORs, the 0011 class three-input, the
    // 0111 class two-input, and 1111 none.
    const std::map<std::string, TableRow> rows{
        {"0000", {94, 32, 10, 16, 70}},  {"0001", {94, 32, 10, 16, 70}},
        {"0101", {94, 32, 10, 16, 70}},  {"0011", {106, 48, 10, 16, 86}},
        {"0111", {124, 72, 8, 16, 104}}, {"1111", {224, 164, 4, 16, 194}},
    };
    for (const auto& [pqrs, row] : rows) {
        const Pqrs key{pqrs[0] - '0', pqrs[1] - '0', pqrs[2] - '0', pqrs[3] - '0'};
        const auto* term = op.find(key);
        ASSERT_NE(term, nullptr);
        const Compiled t =
            compile_alternate_term(op, *term, cube.faces[0], cube.faces[1], params, wires, aux);
        EXPECT_EQ(t.additive, row) << pqrs << " got {" << t.additive.gcx << "," << t.additive.rz
                                   << "," << t.additive.x << "," << t.additive.h << ","
                                   << t.additive.depth << "}";
    }
}

TEST(Alternate, TwoFaceTotals) {
    const auto op = build_plaquette_operator(3);
    const CubeWiring cube = CubeWiring::make(3);
    EvolutionParams params{0.2, 0.1, 1};
    const Compiled pair = compile_alternate_pair(op, cube.faces[0], cube.faces[1], params);
    EXPECT_EQ(pair.circuit.num_wires(), 17);
    const auto rep = resource_report(pair.circuit,
                                     [](const Wire& w) { return w.label.rfind("aux", 0) == 0; });
    EXPECT_EQ(rep.aux_wires, 5);
    EXPECT_EQ(rep.gcx, 1802);
    EXPECT_EQ(rep.rz, 868);
    EXPECT_EQ(rep.x, 146);
    EXPECT_EQ(rep.h, 256);
    EXPECT_EQ(pair.additive, (TableRow{1802, 868, 146, 256, 1444}));
}

TEST(Alternate, MatchesOracleOnFacePhysicalInputs) {
    const auto op = build_plaquette_operator(3);
    const CubeWiring cube = CubeWiring::make(3);
    std::vector<Wire> wires = cube.links;
    AltAuxLayout aux;
    for (int i = 12; i < 17; ++i) wires.push_back(Wire{i, 3, "aux" + std::to_string(i - 12)});
    const double tau = 0.23;
    EvolutionParams params{1.0, -tau, 1};
    const FaceWiring& face = cube.faces[0];

    std::vector<int> dims;
    for (const auto& w : wires) dims.push_back(w.dim);
    SparseSim sim(dims);
    const std::vector<int> strides = [&] {
        std::vector<int> s(dims.size(), 1);
        for (std::size_t w = dims.size() - 1; w-- > 0;) s[w] = s[w + 1] * dims[w + 1];
        return s;
    }();

    long checked = 0, mismatched = 0;
    for (const auto* pqrs : {"0000", "0011", "0111", "1111"}) {
        const Pqrs key{pqrs[0] - '0', pqrs[1] - '0', pqrs[2] - '0', pqrs[3] - '0'};
        const auto* term = op.find(key);
        ASSERT_NE(term, nullptr);
        const Compiled t =
            compile_alternate_term(op, *term, cube.faces[0], cube.faces[1], params, wires, aux);

        // Park the opposite face's first plaquette link on its spectator
        // level so that face evolves trivially and face A isolates.
        const int park_wire = cube.faces[1].plaq[0];
        const int park_value = (key[0] == 0) ? 2 : 0;

        for (std::int64_t v = 0; v < 6561; ++v) {
            const Word w8 = int_to_word(v, std::vector<int>(8, 3)); // ctrl then plaq
            if (!face_physical(w8)) continue;
            ++checked;
            std::int64_t start = park_value * strides[static_cast<std::size_t>(park_wire)];
            for (int m = 0; m < 4; ++m) {
                start += w8[static_cast<std::size_t>(m)] *
                         strides[static_cast<std::size_t>(face.ctrl[static_cast<std::size_t>(m)])];
                start += w8[static_cast<std::size_t>(4 + m)] *
                         strides[static_cast<std::size_t>(face.plaq[static_cast<std::size_t>(m)])];
            }
            const auto state = sim.run(t.circuit, start);
            const auto expected = term_oracle_action(*term, tau, w8, 3);
            bool ok = true;
            for (const auto& [target8, amp] : expected) {
                std::int64_t idx = start;
                for (int m = 0; m < 4; ++m) {
                    const auto pw = static_cast<std::size_t>(face.plaq[static_cast<std::size_t>(m)]);
                    idx += (target8[static_cast<std::size_t>(4 + m)] -
                            w8[static_cast<std::size_t>(4 + m)]) *
                           strides[pw];
                }
                const auto it = state.find(idx);
                const auto got = (it == state.end()) ? qlgt_test::cplx{0, 0} : it->second;
                if (std::abs(got - qlgt_test::cplx(amp)) > 1e-10) ok = false;
            }
            if (!ok) ++mismatched;
        }
    }
    std::cout << "[ NOTE     ] alternate decomposition: " << checked
              << " face-physical inputs checked, " << mismatched << " mismatched\n";
    EXPECT_EQ(mismatched, 0);
}
