#pragma once

#include <complex>
#include <fstream>
#include <string>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qlgt/circuit.hpp"

namespace qlgt {

using cplx = std::complex<double>;

/// Worker count for statevector updates: QGVC_THREADS if set, else the
/// hardware concurrency (capped at 8).
inline int worker_threads() {
    static const int n = [] {
        if (const char* env = std::getenv("QGVC_THREADS")) {
            const int v = std::atoi(env);
            if (v >= 1) return v;
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return static_cast<int>(hw == 0 ? 1 : (hw > 8 ? 8 : hw));
    }();
    return n;
}

/// Mixed-radix statevector; wire 0 is the most significant digit of the
/// amplitude index.
struct StateVector {
    std::vector<int> dims;
    std::vector<cplx> amps;

    static StateVector zero_state(std::vector<int> dims) {
        StateVector sv;
        sv.dims = std::move(dims);
        std::int64_t n = 1;
        for (int d : sv.dims) n *= d;
        sv.amps.assign(static_cast<std::size_t>(n), cplx{0.0, 0.0});
        sv.amps[0] = 1.0;
        return sv;
    }

    static StateVector basis_state(std::vector<int> dims, const std::vector<int>& word) {
        StateVector sv = zero_state(std::move(dims));
        sv.amps[0] = 0.0;
        std::int64_t idx = 0;
        for (std::size_t w = 0; w < sv.dims.size(); ++w) idx = idx * sv.dims[w] + word[w];
        sv.amps[static_cast<std::size_t>(idx)] = 1.0;
        return sv;
    }

    std::int64_t size() const { return static_cast<std::int64_t>(amps.size()); }

    std::vector<std::int64_t> strides() const {
        std::vector<std::int64_t> s(dims.size(), 1);
        for (std::size_t w = dims.size() - 1; w-- > 0;) s[w] = s[w + 1] * dims[w + 1];
        return s;
    }

    double norm() const {
        double n = 0.0;
        for (const auto& a : amps) n += std::norm(a);
        return std::sqrt(n);
    }
};

namespace detail {

template <typename Fn>
void for_each_offset(const std::vector<int>& free_dims, const std::vector<std::int64_t>& free_strides,
                     std::int64_t fixed_offset, std::int64_t f0, std::int64_t f1, Fn&& fn) {
    const int nf = static_cast<int>(free_dims.size());
    // Contiguous fast path: when the least-significant free wire is the
    // stride-1 wire, the inner sweep over it needs no odometer bookkeeping.
    if (nf > 0 && free_strides[static_cast<std::size_t>(nf - 1)] == 1) {
        const std::int64_t run = free_dims[static_cast<std::size_t>(nf - 1)];
        std::vector<int> dig(static_cast<std::size_t>(nf - 1), 0);
        std::int64_t block = f0 / run;
        std::int64_t off = fixed_offset;
        std::int64_t rem = block;
        for (int i = nf - 2; i >= 0; --i) {
            const auto ui = static_cast<std::size_t>(i);
            dig[ui] = static_cast<int>(rem % free_dims[ui]);
            rem /= free_dims[ui];
            off += dig[ui] * free_strides[ui];
        }
        std::int64_t f = f0;
        while (f < f1) {
            const std::int64_t lo = f - block * run;
            const std::int64_t hi = std::min(run, lo + (f1 - f));
            for (std::int64_t i = lo; i < hi; ++i) fn(off + i);
            f += hi - lo;
            ++block;
            for (int i = nf - 2; i >= 0; --i) {
                const auto ui = static_cast<std::size_t>(i);
                off += free_strides[ui];
                if (++dig[ui] < free_dims[ui]) break;
                off -= free_strides[ui] * free_dims[ui];
                dig[ui] = 0;
            }
        }
        return;
    }
    std::vector<int> dig(free_dims.size(), 0);
    std::int64_t off = fixed_offset;
    std::int64_t rem = f0;
    for (int i = nf - 1; i >= 0; --i) {
        dig[static_cast<std::size_t>(i)] = static_cast<int>(rem % free_dims[static_cast<std::size_t>(i)]);
        rem /= free_dims[static_cast<std::size_t>(i)];
        off += dig[static_cast<std::size_t>(i)] * free_strides[static_cast<std::size_t>(i)];
    }
    for (std::int64_t f = f0; f < f1; ++f) {
        fn(off);
        for (int i = nf - 1; i >= 0; --i) {
            const auto ui = static_cast<std::size_t>(i);
            off += free_strides[ui];
            if (++dig[ui] < free_dims[ui]) break;
            off -= free_strides[ui] * free_dims[ui];
            dig[ui] = 0;
        }
    }
}

template <typename Fn>
void run_chunks(std::int64_t total, int nthreads, Fn&& per_chunk) {
    if (nthreads <= 1 || total < (1 << 16)) {
        per_chunk(0, total);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
        const std::int64_t a = total * t / nthreads;
        const std::int64_t b = total * (t + 1) / nthreads;
        if (a == b) continue;
        pool.emplace_back([a, b, &per_chunk] { per_chunk(a, b); });
    }
    for (auto& th : pool) th.join();
}

} // namespace detail

/// Applies one gate in place. Controls select strided slices; two-level ops
/// mix exactly the (lo, hi) amplitudes.
inline void apply_gate(StateVector& sv, const GateOp& g, int nthreads = 0) {
    if (nthreads <= 0) nthreads = worker_threads();
    const auto strides = sv.strides();
    const int nw = static_cast<int>(sv.dims.size());

    std::vector<char> special(static_cast<std::size_t>(nw), 0);
    std::int64_t fixed = 0;
    for (const auto& [cw, cv] : g.controls) {
        if (cw < 0 || cw >= nw || cv >= sv.dims[static_cast<std::size_t>(cw)])
            throw std::invalid_argument("apply_gate: control out of range");
        special[static_cast<std::size_t>(cw)] = 1;
        fixed += static_cast<std::int64_t>(cv) * strides[static_cast<std::size_t>(cw)];
    }
    if (g.target < 0 || g.target >= nw || g.sub_hi >= sv.dims[static_cast<std::size_t>(g.target)])
        throw std::invalid_argument("apply_gate: target/subspace out of range");
    special[static_cast<std::size_t>(g.target)] = 1;

    std::vector<int> free_dims;
    std::vector<std::int64_t> free_strides;
    for (int w = 0; w < nw; ++w)
        if (!special[static_cast<std::size_t>(w)]) {
            free_dims.push_back(sv.dims[static_cast<std::size_t>(w)]);
            free_strides.push_back(strides[static_cast<std::size_t>(w)]);
        }
    std::int64_t total = 1;
    for (int d : free_dims) total *= d;

    const std::int64_t st = strides[static_cast<std::size_t>(g.target)];
    const std::int64_t off_lo = fixed + static_cast<std::int64_t>(g.sub_lo) * st;
    const std::int64_t off_hi = fixed + static_cast<std::int64_t>(g.sub_hi) * st;
    cplx* a = sv.amps.data();

    const auto run = [&](auto&& body) {
        detail::run_chunks(total, nthreads, [&](std::int64_t f0, std::int64_t f1) {
            detail::for_each_offset(free_dims, free_strides, 0, f0, f1, body);
        });
    };

    switch (g.kind) {
        case GateKind::GCX:
        case GateKind::X:
            run([&](std::int64_t b) { std::swap(a[b + off_lo], a[b + off_hi]); });
            break;
        case GateKind::GCZ:
            run([&](std::int64_t b) { a[b + off_hi] = -a[b + off_hi]; });
            break;
        case GateKind::H: {
            const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
            run([&](std::int64_t b) {
                const cplx lo = a[b + off_lo], hi = a[b + off_hi];
                a[b + off_lo] = inv_sqrt2 * (lo + hi);
                a[b + off_hi] = inv_sqrt2 * (lo - hi);
            });
            break;
        }
        case GateKind::RZ: {
            const cplx p_lo = std::polar(1.0, -g.angle / 2), p_hi = std::polar(1.0, g.angle / 2);
            run([&](std::int64_t b) {
                a[b + off_lo] *= p_lo;
                a[b + off_hi] *= p_hi;
            });
            break;
        }
        case GateKind::RY: {
            const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            run([&](std::int64_t b) {
                const cplx lo = a[b + off_lo], hi = a[b + off_hi];
                a[b + off_lo] = c * lo - s * hi;
                a[b + off_hi] = s * lo + c * hi;
            });
            break;
        }
        case GateKind::RX: {
            const double c = std::cos(g.angle / 2);
            const cplx is{0.0, -std::sin(g.angle / 2)};
            run([&](std::int64_t b) {
                const cplx lo = a[b + off_lo], hi = a[b + off_hi];
                a[b + off_lo] = c * lo + is * hi;
                a[b + off_hi] = is * lo + c * hi;
            });
            break;
        }
        case GateKind::PHASE: {
            const cplx p = std::polar(1.0, g.angle);
            run([&](std::int64_t b) { a[b + off_lo] *= p; });
            break;
        }
    }
}

inline void apply_circuit(StateVector& sv, const Circuit& c, int nthreads = 0,
                          const std::function<void(std::size_t, const StateVector&)>& hook = nullptr) {
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        apply_gate(sv, c.gates[i], nthreads);
        if (hook) hook(i, sv);
    }
}

/// Dense unitary of a circuit, column by column. Guarded by an amplitude cap
/// (default 3^9) because memory grows as the square of the dimension.
inline std::vector<std::vector<cplx>> circuit_unitary(const Circuit& c,
                                                      std::int64_t cap = 19683) {
    std::vector<int> dims;
    dims.reserve(c.wires.size());
    std::int64_t n = 1;
    for (const auto& w : c.wires) {
        dims.push_back(w.dim);
        n *= w.dim;
    }
    if (n > cap) throw std::invalid_argument("circuit_unitary: dimension exceeds cap");
    std::vector<std::vector<cplx>> u(static_cast<std::size_t>(n));
    for (std::int64_t col = 0; col < n; ++col) {
        StateVector sv = StateVector::zero_state(dims);
        sv.amps[0] = 0.0;
        sv.amps[static_cast<std::size_t>(col)] = 1.0;
        apply_circuit(sv, c, 1);
        u[static_cast<std::size_t>(col)] = std::move(sv.amps);
    }
    return u; // u[col][row]
}


// ---------------------------------------------------------------------------
// Statevector snapshots: a one-line JSON header (dims, count, encoding)
// followed by the raw amplitudes as little-endian complex doubles.

inline void save_statevector(const StateVector& sv, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_statevector: cannot open " + path);
    std::string header = "{\"dims\":[";
    for (std::size_t i = 0; i < sv.dims.size(); ++i) {
        if (i) header += ',';
        header += std::to_string(sv.dims[i]);
    }
    header += "],\"amplitudes\":" + std::to_string(sv.amps.size()) +
              ",\"encoding\":\"complex128-le\"}\n";
    out << header;
    out.write(reinterpret_cast<const char*>(sv.amps.data()),
              static_cast<std::streamsize>(sv.amps.size() * sizeof(cplx)));
}

inline StateVector load_statevector(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_statevector: cannot open " + path);
    std::string header;
    std::getline(in, header);
    StateVector sv;
    // Minimal parse of the fixed-layout header.
    const auto lb = header.find('['), rb = header.find(']');
    if (lb == std::string::npos || rb == std::string::npos)
        throw std::runtime_error("load_statevector: malformed header");
    std::size_t pos = lb + 1;
    while (pos < rb) {
        std::size_t next = header.find(',', pos);
        if (next == std::string::npos || next > rb) next = rb;
        sv.dims.push_back(std::stoi(header.substr(pos, next - pos)));
        pos = next + 1;
    }
    std::int64_t n = 1;
    for (int d : sv.dims) n *= d;
    sv.amps.resize(static_cast<std::size_t>(n));
    in.read(reinterpret_cast<char*>(sv.amps.data()),
            static_cast<std::streamsize>(sv.amps.size() * sizeof(cplx)));
    if (!in) throw std::runtime_error("load_statevector: truncated amplitude block");
    return sv;
}

} // namespace qlgt
