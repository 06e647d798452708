#include <gtest/gtest.h>

#include "qlgt/gating.hpp"
#include "qlgt/gray.hpp"
#include "qlgt/statevector.hpp"

using namespace qlgt;

namespace {

// Applies the gate to each basis input with aux = 0 and returns the aux
// output level (asserting it is a deterministic basis state and the inputs
// are unchanged where required).
int aux_output(const Circuit& c, const std::vector<int>& dims, const std::vector<int>& inputs,
               int aux_wire) {
    std::vector<int> word = inputs;
    word.insert(word.begin() + aux_wire, 0);
    StateVector sv = StateVector::basis_state(dims, word);
    apply_circuit(sv, c, 1);
    // Expect exactly one basis amplitude of modulus 1.
    int found = -1;
    for (std::int64_t i = 0; i < sv.size(); ++i) {
        if (std::norm(sv.amps[static_cast<std::size_t>(i)]) > 1e-12) {
            EXPECT_LT(found, 0) << "superposition from a classical gate";
            found = static_cast<int>(i);
            EXPECT_NEAR(std::abs(sv.amps[static_cast<std::size_t>(i)]), 1.0, 1e-12);
        }
    }
    std::int64_t rem = found;
    std::vector<int> out(dims.size());
    for (std::size_t w = dims.size(); w-- > 0;) {
        out[w] = static_cast<int>(rem % dims[w]);
        rem /= dims[w];
    }
    return out[static_cast<std::size_t>(aux_wire)];
}

} // namespace

TEST(Toffoli, QutritTruthTable) {
    const Circuit c = qudit_toffoli(3);
    const std::vector<int> dims{3, 3, 3};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int t = 0; t < 2; ++t) {
                StateVector sv = StateVector::basis_state(dims, {a, b, t});
                apply_circuit(sv, c, 1);
                const int expected_t = (a == 1 && b == 1) ? 1 - t : t;
                std::int64_t idx = (static_cast<std::int64_t>(a) * 3 + b) * 3 + expected_t;
                EXPECT_NEAR(std::abs(sv.amps[static_cast<std::size_t>(idx)]), 1.0, 1e-12)
                    << a << b << t;
            }
}

TEST(Toffoli, RestrictedScratchAtHigherD) {
    for (int d : {4, 5}) {
        const Circuit c = qudit_toffoli(d);
        const std::vector<int> dims{d, d, d};
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < 2; ++b) // combine-gate contract: scratch in {0, 1}
                for (int t = 0; t < 2; ++t) {
                    StateVector sv = StateVector::basis_state(dims, {a, b, t});
                    apply_circuit(sv, c, 1);
                    const int expected_t = (a == 1 && b == 1) ? 1 - t : t;
                    // The scratch is restored for these inputs as well.
                    std::int64_t idx = (static_cast<std::int64_t>(a) * d + b) * d + expected_t;
                    EXPECT_NEAR(std::abs(sv.amps[static_cast<std::size_t>(idx)]), 1.0, 1e-12)
                        << d << ": " << a << b << t;
                }
    }
}

TEST(AndVerifier, CountsAndTruth) {
    GatingSpec spec;
    spec.guarded = {0, 1, 2};
    spec.levels = {{0, 1}, {0, 1}, {0, 1}};
    spec.aux = 3;
    const std::vector<int> dims{3, 3, 3, 4};
    const Circuit c = and_verifier(spec, dims);
    const auto rep = resource_report(c);
    EXPECT_EQ(rep.gcx, 10); // |s|(2k-1) with |s|=2, k=3
    EXPECT_EQ(rep.depth, 10);

    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int cc = 0; cc < 3; ++cc) {
                const bool all_in = a < 2 && b < 2 && cc < 2;
                EXPECT_EQ(aux_output(c, dims, {a, b, cc}, 3), all_in ? 1 : 0) << a << b << cc;
            }
}

TEST(AndVerifier, SmallCases) {
    GatingSpec one;
    one.guarded = {0};
    one.levels = {{2}};
    one.aux = 1;
    const std::vector<int> dims1{4, 2};
    EXPECT_EQ(resource_report(and_verifier(one, dims1)).gcx, 1);
    EXPECT_EQ(aux_output(and_verifier(one, dims1), dims1, {2}, 1), 1);
    EXPECT_EQ(aux_output(and_verifier(one, dims1), dims1, {1}, 1), 0);

    GatingSpec bad = one;
    EXPECT_THROW(and_verifier(bad, {4, 1}), std::invalid_argument);

    GatingSpec two;
    two.guarded = {0, 1};
    two.levels = {{0, 1}, {0, 1}};
    two.aux = 2;
    const std::vector<int> dims2{3, 3, 3};
    const Circuit c2 = and_verifier(two, dims2);
    EXPECT_EQ(resource_report(c2).gcx, 6);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            EXPECT_EQ(aux_output(c2, dims2, {a, b}, 2), (a < 2 && b < 2) ? 1 : 0);
}

TEST(OrGates, TwoInputLeftCompletion) {
    const Circuit c = or_gate(2, 3, 3, GatingVariant::OR, {2, 2});
    const auto rep = resource_report(c);
    EXPECT_EQ(rep.gcx, 3);
    EXPECT_EQ(rep.depth, 3);
    const std::vector<int> dims{3, 3, 3};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            EXPECT_EQ(aux_output(c, dims, {a, b}, 2), (a == 2 || b == 2) ? 1 : 0) << a << b;
}

TEST(OrGates, ThreeInputQutrit) {
    for (int va : {0, 2})
        for (int vb : {0, 2})
            for (int vc : {0, 2}) {
                const Circuit c = or3_qutrit(va, vb, vc);
                const auto rep = resource_report(c);
                EXPECT_EQ(rep.gcx, 6);
                EXPECT_EQ(rep.x, 1);
                const std::vector<int> dims{3, 3, 3, 3};
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        for (int cc = 0; cc < 3; ++cc) {
                            const bool hit = (a == va || b == vb || cc == vc);
                            ASSERT_EQ(aux_output(c, dims, {a, b, cc}, 3), hit ? 1 : 0)
                                << va << vb << vc << " on " << a << b << cc;
                        }
            }
}

TEST(OrGates, ThreeInputRightCompletion) {
    const Circuit c = or_gate(3, 3, 3, GatingVariant::OR, {1, 1, 1});
    EXPECT_EQ(resource_report(c).gcx, 7); // 4k-5
    const std::vector<int> dims{3, 3, 3, 3};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int cc = 0; cc < 3; ++cc)
                ASSERT_EQ(aux_output(c, dims, {a, b, cc}, 3),
                          (a == 1 || b == 1 || cc == 1) ? 1 : 0);
}

TEST(OrGates, FourInputWide) {
    const Circuit c = or_wide4_qutrit({2, 2, 2, 2});
    const auto rep = resource_report(c);
    EXPECT_EQ(rep.gcx, 8);
    EXPECT_EQ(rep.x, 1);
    EXPECT_EQ(rep.depth, 6);
    EXPECT_EQ(c.num_wires(), 6);

    // Result lands on aux2 (the last wire); aux1 may be dirty.
    const std::vector<int> dims{3, 3, 3, 3, 3, 3};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int cc = 0; cc < 3; ++cc)
                for (int dd = 0; dd < 3; ++dd) {
                    StateVector sv = StateVector::basis_state(dims, {a, b, cc, dd, 0, 0});
                    apply_circuit(sv, c, 1);
                    int idx = -1;
                    for (std::int64_t i = 0; i < sv.size(); ++i)
                        if (std::norm(sv.amps[static_cast<std::size_t>(i)]) > 0.5)
                            idx = static_cast<int>(i);
                    ASSERT_GE(idx, 0);
                    const int aux2 = idx % 3;
                    const bool hit = (a == 2 || b == 2 || cc == 2 || dd == 2);
                    ASSERT_EQ(aux2, hit ? 1 : 0) << a << b << cc << dd;
                }
}

TEST(OrGates, UnsupportedCombinationThrows) {
    EXPECT_THROW(or_gate(4, 3, 3, GatingVariant::OR, {1, 1, 1, 1}), std::invalid_argument);
    EXPECT_THROW(or_gate(3, 3, 3, GatingVariant::OR3_QUTRIT, {1, 1}), std::invalid_argument);
}

TEST(GatingPairs, ComputeUncomputeRestoresEverything) {
    // A gating subcircuit followed by its mirror restores aux and all
    // guarded wires on every basis input.
    const Circuit lor = or_wide4_qutrit({2, 0, 2, 0});
    Circuit pair = lor;
    pair.append(mirror(lor));
    const std::vector<int> dims{3, 3, 3, 3, 3, 3};
    for (std::int64_t v = 0; v < 81; ++v) {
        Word in = int_to_word(v, {3, 3, 3, 3});
        std::vector<int> word(in.begin(), in.end());
        word.push_back(0);
        word.push_back(0);
        StateVector sv = StateVector::basis_state(dims, word);
        apply_circuit(sv, pair, 1);
        std::int64_t idx = 0;
        for (std::size_t w = 0; w < dims.size(); ++w) idx = idx * 3 + word[w];
        ASSERT_NEAR(std::abs(sv.amps[static_cast<std::size_t>(idx)]), 1.0, 1e-12);
    }
}

TEST(DeMorgan, DualMatchesAndVerifier) {
    GatingSpec spec;
    spec.guarded = {0, 1};
    spec.levels = {{0, 1}, {0, 1}};
    spec.aux = 2;
    const std::vector<int> dims{3, 3, 3};
    const Circuit land = and_verifier(spec, dims);
    const Circuit dual = demorgan_dual(spec, dims);
    // OR detecting the complement |2> plus the aux X01.
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            EXPECT_EQ(aux_output(dual, dims, {a, b}, 2), aux_output(land, dims, {a, b}, 2))
                << a << b;

    EXPECT_THROW(
        demorgan_dual(GatingSpec{{0}, {{0}}, 1, GatingVariant::OR}, std::vector<int>{3, 3}),
        std::invalid_argument);
}

TEST(Combine, TruthTableOnRestrictedInputs) {
    const Circuit c = combine_gate();
    const std::vector<int> dims{3, 3};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            StateVector sv = StateVector::basis_state(dims, {a, b});
            apply_circuit(sv, c, 1);
            int idx = -1;
            for (std::int64_t i = 0; i < 9; ++i)
                if (std::norm(sv.amps[static_cast<std::size_t>(i)]) > 0.5) idx = static_cast<int>(i);
            ASSERT_GE(idx, 0);
            EXPECT_EQ(idx % 3, (a | b)) << a << b; // result on wire b
        }
}
