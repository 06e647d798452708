#include <random>

#include <gtest/gtest.h>

#include "qlgt/rewrites.hpp"
#include "qlgt/statevector.hpp"

using namespace qlgt;

namespace {

void expect_same_unitary(const Circuit& a, const Circuit& b, double tol = 1e-10) {
    const auto ua = circuit_unitary(a);
    const auto ub = circuit_unitary(b);
    ASSERT_EQ(ua.size(), ub.size());
    for (std::size_t col = 0; col < ua.size(); ++col)
        for (std::size_t row = 0; row < ua.size(); ++row)
            ASSERT_NEAR(std::abs(ua[col][row] - ub[col][row]), 0.0, tol) << col << "," << row;
}

} // namespace

TEST(GcxRunOptimize, QutritRunCollapses) {
    Circuit c;
    c.add_wire(3);
    c.add_wire(3);
    c.add(make_gcx(0, 1, 1, 0, 1));
    c.add(make_gcx(0, 2, 1, 0, 1));
    const Circuit opt = gcx_run_optimize(c);
    const auto rep = resource_report(opt);
    EXPECT_EQ(rep.gcx, 1);
    EXPECT_EQ(rep.x, 1);
    EXPECT_EQ(opt.gates[0].controls[0].second, 0);
    expect_same_unitary(c, opt);
}

TEST(GcxRunOptimize, NoMatchingRunUnchanged) {
    Circuit c;
    c.add_wire(3);
    c.add_wire(3);
    c.add(make_gcx(0, 1, 1, 0, 1));
    c.add(make_gcx(0, 1, 1, 0, 1)); // duplicate value, not {1, 2}
    c.add(make_h(1, 0, 1));
    const Circuit opt = gcx_run_optimize(c);
    EXPECT_EQ(opt.gates.size(), c.gates.size());
}

TEST(GcxRunOptimize, RandomCircuitsPreserveUnitary) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Circuit c;
        for (int i = 0; i < 3; ++i) c.add_wire(3);
        for (int g = 0; g < 25; ++g) {
            const int t = static_cast<int>(rng() % 3);
            int cw = static_cast<int>(rng() % 3);
            if (cw == t) {
                c.add(make_x(t, 0, 1));
                continue;
            }
            if (rng() % 4 == 0) {
                // Deliberately seed value-1/value-2 runs.
                c.add(make_gcx(cw, 1, t, 1, 2));
                c.add(make_gcx(cw, 2, t, 1, 2));
            } else {
                c.add(make_gcx(cw, static_cast<int>(rng() % 3), t, 0, 1));
            }
        }
        expect_same_unitary(c, gcx_run_optimize(c));
    }
}

TEST(HadamardEliminate, FlipIdentities) {
    // (H01 (x) H01) GCX(c=1 -> X01) (H01 (x) H01) == flipped GCX.
    for (int rule = 0; rule < 4; ++rule) {
        const int c_lo = (rule == 2 || rule == 3) ? 1 : 0;
        const int t_lo = (rule == 1 || rule == 3) ? 1 : 0;
        Circuit c;
        c.add_wire(3);
        c.add_wire(3);
        c.add(make_h(0, c_lo, c_lo + 1));
        c.add(make_h(1, t_lo, t_lo + 1));
        c.add(make_gcx(0, c_lo + 1, 1, t_lo, t_lo + 1));
        c.add(make_h(0, c_lo, c_lo + 1));
        c.add(make_h(1, t_lo, t_lo + 1));
        const auto res = hadamard_eliminate(c);
        EXPECT_EQ(res.remaining_h, 0) << rule;
        ASSERT_EQ(res.circuit.gates.size(), 1u) << rule;
        const auto& g = res.circuit.gates[0];
        EXPECT_EQ(g.kind, GateKind::GCX);
        EXPECT_EQ(g.target, 0);
        EXPECT_EQ(g.controls[0].first, 1);
        EXPECT_EQ(g.controls[0].second, t_lo + 1);
        EXPECT_EQ(g.sub_lo, c_lo);
        expect_same_unitary(c, res.circuit);
    }
}

TEST(HadamardEliminate, RotationAxisChangeAndGcz) {
    Circuit c;
    c.add_wire(3);
    c.add_wire(3);
    c.add(make_h(1, 1, 2));
    c.add(make_gcx(0, 2, 1, 1, 2)); // control wire carries no H -> becomes GCZ
    c.add(make_rotation(GateKind::RZ, 1, 1, 2, 0.37));
    c.add(make_h(1, 1, 2));
    const auto res = hadamard_eliminate(c);
    EXPECT_EQ(res.remaining_h, 0);
    EXPECT_EQ(res.circuit.gates[0].kind, GateKind::GCZ);
    EXPECT_EQ(res.circuit.gates[1].kind, GateKind::RX);
    expect_same_unitary(c, res.circuit);
}

TEST(HadamardEliminate, PlainXBecomesLevelPhase) {
    Circuit c;
    c.add_wire(3);
    c.add(make_h(0, 0, 1));
    c.add(make_x(0, 0, 1));
    c.add(make_h(0, 0, 1));
    const auto res = hadamard_eliminate(c);
    EXPECT_EQ(res.remaining_h, 0);
    ASSERT_EQ(res.circuit.gates.size(), 1u);
    EXPECT_EQ(res.circuit.gates[0].kind, GateKind::PHASE);
    expect_same_unitary(c, res.circuit);
}

TEST(HadamardEliminate, NoHUnchanged) {
    Circuit c;
    c.add_wire(3);
    c.add_wire(3);
    c.add(make_gcx(0, 1, 1, 0, 1));
    c.add(make_rotation(GateKind::RY, 1, 0, 1, 0.2));
    const auto res = hadamard_eliminate(c);
    EXPECT_EQ(res.remaining_h, 0);
    EXPECT_EQ(res.circuit.gates.size(), 2u);
}

TEST(HadamardEliminate, StuckHReported) {
    Circuit c;
    c.add_wire(3);
    c.add_wire(3);
    c.add(make_h(0, 0, 1));
    c.add(make_gcx(0, 1, 1, 0, 1)); // control on max(H) but no target H: stuck
    const auto res = hadamard_eliminate(c);
    EXPECT_EQ(res.remaining_h, 1);
    expect_same_unitary(c, res.circuit);
}
