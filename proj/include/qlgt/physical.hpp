#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "qlgt/evolution.hpp"
#include "qlgt/fused_apply.hpp"
#include "qlgt/plaquette.hpp"
#include "qlgt/statevector.hpp"

namespace qlgt {

/// The global basis of physical cube states: 12-link words whose every
/// vertex triad satisfies the triangle inequality with integer total
/// angular momentum, sorted by mixed-radix integer (wire 0 most significant).
struct PhysicalBasis {
    int d = 3;
    std::vector<Word> states;
    std::unordered_map<std::int64_t, int> index;

    static PhysicalBasis enumerate(int d) {
        PhysicalBasis b;
        b.d = d;
        const auto verts = CubeWiring::vertices();
        std::int64_t n = 1;
        for (int i = 0; i < 12; ++i) n *= d;
        const std::vector<int> dims(12, d);
        for (std::int64_t v = 0; v < n; ++v) {
            Word w = int_to_word(v, dims);
            bool ok = true;
            for (const auto& tri : verts) {
                if (!triad_valid(w[static_cast<std::size_t>(tri[0])],
                                 w[static_cast<std::size_t>(tri[1])],
                                 w[static_cast<std::size_t>(tri[2])])) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            b.index.emplace(v, static_cast<int>(b.states.size()));
            b.states.push_back(std::move(w));
        }
        return b;
    }

    int find(const Word& w) const {
        const auto it = index.find(word_to_int(w, d));
        return it == index.end() ? -1 : it->second;
    }
};

/// Electric energy of one face: (g^2/2) sum_{links in plaq} j(j+1) with
/// 2j = level.
inline double face_electric_energy(const Word& state, const FaceWiring& face, double g2) {
    double e = 0.0;
    for (int w : face.plaq) {
        const int level = state[static_cast<std::size_t>(w)];
        e += 0.25 * level * (level + 2);
    }
    return 0.5 * g2 * e;
}

/// Dense cube Hamiltonian in the physical basis: diagonal electric part plus
/// the six face plaquette operators embedded through their sparse action.
inline Eigen::MatrixXd build_cube_hamiltonian(const PhysicalBasis& basis, const CubeWiring& cube,
                                              const PlaquetteOperator& op, double g2) {
    const int n = static_cast<int>(basis.states.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int col = 0; col < n; ++col) {
        const Word& state = basis.states[static_cast<std::size_t>(col)];
        double diag = 0.0;
        for (int w = 0; w < 12; ++w) {
            const int level = state[static_cast<std::size_t>(w)];
            diag += 0.25 * level * (level + 2);
        }
        h(col, col) += 0.5 * g2 * diag;

        for (const auto& face : cube.faces) {
            Word word8(8);
            for (int m = 0; m < 4; ++m) {
                word8[static_cast<std::size_t>(m)] =
                    state[static_cast<std::size_t>(face.ctrl[static_cast<std::size_t>(m)])];
                word8[static_cast<std::size_t>(4 + m)] =
                    state[static_cast<std::size_t>(face.plaq[static_cast<std::size_t>(m)])];
            }
            for (const auto& [target8, phi] : plaquette_matrix_action(op, word8)) {
                Word target = state;
                for (int m = 0; m < 4; ++m)
                    target[static_cast<std::size_t>(face.plaq[static_cast<std::size_t>(m)])] =
                        target8[static_cast<std::size_t>(4 + m)];
                const int row = basis.find(target);
                if (row < 0)
                    throw std::runtime_error(
                        "build_cube_hamiltonian: plaquette action left the physical basis");
                // H_face = -(box + box^dagger)/(2 g^2) = -box/g^2 for the
                // Hermitian SU(2) plaquette operator.
                h(row, col) += -phi / g2;
            }
        }
    }
    return h;
}

/// Exact evolution from the bare vacuum: returns <H_{E, face}> (t) for the
/// requested times, via one eigendecomposition of the physical-basis
/// Hamiltonian.
inline std::vector<double> exact_evolution_series(const PhysicalBasis& basis,
                                                  const CubeWiring& cube,
                                                  const PlaquetteOperator& op, double g2,
                                                  const std::vector<double>& times,
                                                  int observable_face = 0) {
    const int n = static_cast<int>(basis.states.size());
    const Eigen::MatrixXd h = build_cube_hamiltonian(basis, cube, op, g2);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("exact_evolution_series: eigendecomposition failed");
    const Eigen::MatrixXd& v = es.eigenvectors();
    const Eigen::VectorXd& e = es.eigenvalues();

    const int vac = basis.find(Word(12, 0));
    if (vac < 0) throw std::runtime_error("exact_evolution_series: vacuum not in basis");
    const Eigen::VectorXd overlaps = v.row(vac).transpose();

    std::vector<double> obs_diag(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        obs_diag[static_cast<std::size_t>(i)] = face_electric_energy(
            basis.states[static_cast<std::size_t>(i)],
            cube.faces[static_cast<std::size_t>(observable_face)], g2);

    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        Eigen::VectorXcd psi_modes(n);
        for (int i = 0; i < n; ++i)
            psi_modes(i) = overlaps(i) * std::exp(std::complex<double>(0.0, -e(i) * t));
        const Eigen::VectorXcd psi = v.cast<std::complex<double>>() * psi_modes;
        double val = 0.0;
        for (int i = 0; i < n; ++i)
            val += obs_diag[static_cast<std::size_t>(i)] * std::norm(psi(i));
        out.push_back(val);
    }
    return out;
}

/// <H_{E, face}> evaluated on a full statevector over the cube wires.
inline double statevector_face_energy(const StateVector& sv, const FaceWiring& face, double g2) {
    const auto strides = sv.strides();
    double val = 0.0;
    for (std::int64_t idx = 0; idx < sv.size(); ++idx) {
        const double p = std::norm(sv.amps[static_cast<std::size_t>(idx)]);
        if (p == 0.0) continue;
        double e = 0.0;
        for (int w : face.plaq) {
            const int level = static_cast<int>((idx / strides[static_cast<std::size_t>(w)]) %
                                               sv.dims[static_cast<std::size_t>(w)]);
            e += 0.25 * level * (level + 2);
        }
        val += 0.5 * g2 * e * p;
    }
    return val;
}

/// Trotterized evolution of the cube from the bare vacuum: compiles one
/// Trotter step per time point and applies it n_trotter times.
inline std::vector<double> trotter_series(const CubeWiring& cube, const PlaquetteOperator& op,
                                          double g2, const std::vector<double>& times,
                                          int n_trotter, CompileStyle style,
                                          std::array<int, 3> pair_order = {0, 1, 2},
                                          int observable_face = 0, int nthreads = 0) {
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
        EvolutionParams params{g2, t, n_trotter};
        Compiled step = compile_trotter_step(cube, op, params, style, pair_order);
        std::vector<int> dims;
        for (const auto& w : step.circuit.wires) dims.push_back(w.dim);
        StateVector sv = StateVector::zero_state(dims);
        for (int rep = 0; rep < n_trotter; ++rep) apply_circuit_fast(sv, step.circuit, nthreads);
        out.push_back(statevector_face_energy(
            sv, cube.faces[static_cast<std::size_t>(observable_face)], g2));
    }
    return out;
}

} // namespace qlgt
