// Command-line front end: operator construction, subcircuit synthesis,
// evolution compilation, and cube simulation, with JSON/CSV outputs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlgt/evolution.hpp"
#include "qlgt/evolution_alt.hpp"
#include "qlgt/gating.hpp"
#include "qlgt/fused_apply.hpp"
#include "qlgt/physical.hpp"
#include "qlgt/plaquette.hpp"
#include "qlgt/rewrites.hpp"
#include "qlgt/synthesis.hpp"

namespace {

using namespace qlgt;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

void print_report(const ResourceReport& r) {
    std::printf("gcx %ld  rotations %ld  x %ld  h %ld  asap-depth %ld  wires %d\n", r.gcx, r.rz,
                r.x, r.h, r.depth, r.wires);
}

void print_report(const ResourceReport& r, const TableRow& additive) {
    std::printf("gcx %ld  rotations %ld  x %ld  h %ld  depth %ld (additive) / %ld (asap)\n",
                r.gcx, r.rz, r.x, r.h, additive.depth, r.depth);
}

void emit_circuit(const Circuit& c, const std::string& out_path) {
    if (!out_path.empty()) write_text(out_path, circuit_to_json(c).dump() + "\n");
}

std::vector<double> time_grid(double tmax, double dt) {
    std::vector<double> ts;
    for (double t = dt; t <= tmax + 1e-12; t += dt) ts.push_back(t);
    return ts;
}

std::string series_csv(const std::vector<double>& ts, const std::vector<double>& vals) {
    std::string out = "t,expectation\n";
    char buf[64];
    for (std::size_t i = 0; i < ts.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.10g,%.12g\n", ts[i], vals[i]);
        out += buf;
    }
    return out;
}

std::string series_json(const std::vector<double>& ts, const std::vector<double>& vals) {
    nlohmann::json j = nlohmann::json::array();
    for (std::size_t i = 0; i < ts.size(); ++i)
        j.push_back({{"t", ts[i]}, {"expectation", vals[i]}});
    return j.dump() + "\n";
}

ControlSequence eq9_sequence() {
    ControlSequence c;
    c.dims = {2, 3, 3, 3, 3};
    for (int a = 0; a < 2; ++a)
        for (std::int64_t v = 0; v < 81; ++v) {
            Word w = int_to_word(v, {3, 3, 3, 3});
            if ((w[0] + w[1] + w[2] + w[3]) % 2 != 0) continue;
            Word full{a};
            full.insert(full.end(), w.begin(), w.end());
            c.words.push_back(std::move(full));
        }
    return c;
}

int run(int argc, char** argv) {
    CLI::App app{"qudit lattice-gauge circuit toolkit"};
    app.require_subcommand(1);

    // ---- build-op ------------------------------------------------------
    auto* build = app.add_subcommand("build-op", "construct the plaquette operator GVC");
    int build_d = 3;
    std::string build_out;
    build->add_option("--d", build_d, "qudit dimension (2..9)")->required();
    build->add_option("--out", build_out, "operator JSON output path");
    build->callback([&] {
        const auto op = build_plaquette_operator(build_d);
        std::printf("%zu terms, %ld entries, %zu D4 classes\n", op.terms.size(),
                    op.total_entries(), op.d4_class_table.size());
        if (!build_out.empty())
            write_text(build_out, plaquette_operator_to_json(op).dump() + "\n");
    });

    // ---- synth ---------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "synthesize a subcircuit");
    synth->require_subcommand(1);

    auto* ucr = synth->add_subcommand("ucr", "uniformly-controlled rotation");
    int ucr_d = 3, ucr_k = 2;
    std::string ucr_axis = "z", ucr_out;
    unsigned ucr_seed = 1;
    ucr->add_option("--d", ucr_d)->required();
    ucr->add_option("--k", ucr_k)->required();
    ucr->add_option("--axis", ucr_axis, "y or z");
    ucr->add_option("--seed", ucr_seed, "seed for the random angle vector");
    ucr->add_option("--out", ucr_out);
    ucr->callback([&] {
        long n = 1;
        for (int i = 0; i < ucr_k; ++i) n *= ucr_d;
        std::mt19937 rng(ucr_seed);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        std::vector<double> thetas(static_cast<std::size_t>(n));
        for (auto& v : thetas) v = dist(rng);
        const auto res = ucr_synthesize(
            ucr_k, ucr_d, ucr_axis == "y" ? RotationAxis::Y : RotationAxis::Z, thetas, 0, 1);
        print_report(resource_report(res.circuit));
        emit_circuit(res.circuit, ucr_out);
    });

    auto* ccr = synth->add_subcommand("ccr", "conditionally-controlled rotation");
    std::string ccr_preset = "eq9", ccr_out;
    unsigned ccr_seed = 1;
    ccr->add_option("--preset", ccr_preset, "eq9: the 82-word corrected control sequence");
    ccr->add_option("--seed", ccr_seed);
    ccr->add_option("--out", ccr_out);
    ccr->callback([&] {
        if (ccr_preset != "eq9") throw CLI::ValidationError("--preset", "unknown preset");
        const auto c = eq9_sequence();
        std::mt19937 rng(ccr_seed);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        std::vector<double> thetas(c.words.size());
        for (auto& v : thetas) v = dist(rng);
        const auto res = ccr_synthesize(c, RotationAxis::Z, thetas, 1, 2, {3, 3, 3, 3, 3}, 3);
        std::printf("corrections: %zu (columns", res.corrections.size());
        for (const auto& cr : res.corrections) std::printf(" %d", cr.column);
        std::printf(")\n");
        print_report(resource_report(res.circuit));
        emit_circuit(res.circuit, ccr_out);
    });

    auto* gate = synth->add_subcommand("gate", "verification / gating gates");
    bool lor3 = false, lor4 = false;
    int toffoli_d = 0, and_k = 0, and_da = 4;
    std::string gate_out;
    gate->add_flag("--lor3-qutrit", lor3, "three-input qutrit OR");
    gate->add_flag("--lor4-qutrit", lor4, "four-input qutrit OR (combine construction)");
    gate->add_option("--toffoli", toffoli_d, "qudit Toffoli at dimension d");
    gate->add_option("--and", and_k, "AND verifier over k qutrit inputs");
    gate->add_option("--aux-dim", and_da, "auxiliary dimension for the AND verifier");
    gate->add_option("--out", gate_out);
    gate->callback([&] {
        Circuit c;
        if (lor3) {
            c = or3_qutrit(2, 2, 2);
        } else if (lor4) {
            c = or_wide4_qutrit({2, 2, 2, 2});
        } else if (toffoli_d > 0) {
            c = qudit_toffoli(toffoli_d);
        } else if (and_k > 0) {
            GatingSpec spec;
            for (int i = 0; i < and_k; ++i) {
                spec.guarded.push_back(i);
                spec.levels.push_back({0, 1});
            }
            spec.aux = and_k;
            std::vector<int> dims(static_cast<std::size_t>(and_k), 3);
            dims.push_back(and_da);
            c = and_verifier(spec, dims);
        } else {
            throw CLI::ValidationError(
                "gate", "select one of --lor3-qutrit, --lor4-qutrit, --toffoli, --and");
        }
        print_report(resource_report(c));
        emit_circuit(c, gate_out);
    });

    // ---- compile -------------------------------------------------------
    auto* compile = app.add_subcommand("compile", "compile evolution circuits");
    std::string scope, style = "primary", faces = "single", compile_out;
    int cd = 3;
    double cg2 = 0.2, ct = 0.1;
    int cnt = 1;
    bool eliminate_h = false;
    compile->add_option("scope", scope, "term | plaquette | trotter-step")->required();
    compile->add_option("--d", cd);
    compile->add_option("--g2", cg2);
    compile->add_option("--t", ct);
    compile->add_option("--nt", cnt)->check(CLI::PositiveNumber);
    compile->add_option("--style", style, "primary | general | alternate");
    compile->add_option("--faces", faces, "single | pair");
    compile->add_flag("--eliminate-h", eliminate_h, "run the Hadamard removal rewrites");
    compile->add_option("--out", compile_out);
    compile->callback([&] {
        const auto op = build_plaquette_operator(cd);
        EvolutionParams params{cg2, ct, cnt};
        const CompileStyle cstyle =
            (style == "general" || (cd != 3 && style == "primary")) ? CompileStyle::GeneralAnd
                                                                    : CompileStyle::QutritOr;
        Compiled out;
        if (scope == "term") {
            const int aux_dim = (cstyle == CompileStyle::QutritOr) ? 3 : 4;
            std::vector<Wire> wires;
            FaceWiring face;
            for (int m = 0; m < 4; ++m) {
                face.plaq[static_cast<std::size_t>(m)] = m;
                wires.push_back(Wire{m, cd, "p" + std::to_string(m)});
            }
            for (int m = 0; m < 4; ++m) {
                face.ctrl[static_cast<std::size_t>(m)] = 4 + m;
                wires.push_back(Wire{4 + m, cd, "c" + std::to_string(m)});
            }
            wires.push_back(Wire{8, aux_dim, "aux0"});
            out = compile_term_evolution(op.terms.front(), face, params, 8, wires, cstyle);
        } else if (scope == "plaquette") {
            if (style == "alternate") {
                if (faces != "pair")
                    throw CLI::ValidationError("--faces",
                                               "the alternate decomposition compiles face pairs");
                const CubeWiring cube = CubeWiring::make(cd);
                out = compile_alternate_pair(op, cube.faces[0], cube.faces[1], params);
            } else if (faces == "pair") {
                const CubeWiring cube = CubeWiring::make(cd);
                std::vector<Wire> wires = cube.links;
                const int aux_dim = (cstyle == CompileStyle::QutritOr) ? 3 : 4;
                wires.push_back(Wire{12, aux_dim, "aux0"});
                wires.push_back(Wire{13, aux_dim, "aux1"});
                out = compile_parallel_faces(op, cube.faces[0], cube.faces[1], params, 12, 13,
                                             wires, cstyle);
            } else {
                out = compile_plaquette_standalone(op, params, cstyle);
            }
        } else if (scope == "trotter-step") {
            const CubeWiring cube = CubeWiring::make(cd);
            out = compile_trotter_step(cube, op, params, cstyle);
        } else {
            throw CLI::ValidationError("scope", "unknown scope: " + scope);
        }
        if (eliminate_h) {
            const auto res = hadamard_eliminate(out.circuit);
            std::printf("hadamard removal: %d H gates remain\n", res.remaining_h);
            out.circuit = res.circuit;
        }
        print_report(resource_report(out.circuit), out.additive);
        emit_circuit(out.circuit, compile_out);
    });

    // ---- simulate ------------------------------------------------------
    auto* simulate = app.add_subcommand("simulate", "time evolution of the cube");
    std::string mode, sim_out, fmt = "csv", order = "012";
    double sg2 = 0.2, tmax = 0.92, dt = 0.1;
    int snt = 1;
    simulate->add_option("mode", mode, "exact | trotter")->required();
    simulate->add_option("--g2", sg2);
    simulate->add_option("--tmax", tmax);
    simulate->add_option("--dt", dt)->check(CLI::PositiveNumber);
    simulate->add_option("--nt", snt)->check(CLI::PositiveNumber);
    simulate->add_option("--face-order", order, "pair order, a permutation of 012");
    simulate->add_option("--format", fmt, "csv | json");
    simulate->add_option("--out", sim_out);
    std::string dump_state;
    simulate->add_option("--dump-state", dump_state,
                         "write the final statevector snapshot (trotter mode)");
    simulate->callback([&] {
        const auto op = build_plaquette_operator(3);
        const auto cube = CubeWiring::make(3);
        const auto ts = time_grid(tmax, dt);
        std::vector<double> vals;
        if (mode == "exact") {
            const auto basis = PhysicalBasis::enumerate(3);
            vals = exact_evolution_series(basis, cube, op, sg2, ts);
        } else if (mode == "trotter") {
            if (order.size() != 3) throw CLI::ValidationError("--face-order", "need e.g. 012");
            std::array<int, 3> pair_order{order[0] - '0', order[1] - '0', order[2] - '0'};
            vals = trotter_series(cube, op, sg2, ts, snt, CompileStyle::QutritOr, pair_order);
            if (!dump_state.empty()) {
                EvolutionParams params{sg2, ts.back(), snt};
                Compiled step = compile_trotter_step(cube, op, params, CompileStyle::QutritOr,
                                                     pair_order);
                std::vector<int> dims;
                for (const auto& w : step.circuit.wires) dims.push_back(w.dim);
                StateVector sv = StateVector::zero_state(dims);
                for (int rep = 0; rep < snt; ++rep) apply_circuit_fast(sv, step.circuit);
                save_statevector(sv, dump_state);
            }
        } else {
            throw CLI::ValidationError("mode", "unknown mode: " + mode);
        }
        const std::string text = (fmt == "json") ? series_json(ts, vals) : series_csv(ts, vals);
        if (sim_out.empty()) std::fputs(text.c_str(), stdout);
        else write_text(sim_out, text);
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
