#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>

namespace qlgt {

/// Exact half-integer angular momentum, stored as 2j.
///
/// All triangle/parity tests are integer comparisons on the doubled value,
/// so no floating-point rounding can leak into selection rules.
struct HalfInt {
    int twice = 0;

    constexpr HalfInt() = default;
    constexpr explicit HalfInt(int twice_value) : twice(twice_value) {}

    static constexpr HalfInt from_int(int j) { return HalfInt{2 * j}; }

    constexpr bool is_integer() const { return twice % 2 == 0; }
    constexpr double value() const { return 0.5 * twice; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt{a.twice + b.twice}; }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt{a.twice - b.twice}; }
    friend constexpr auto operator<=>(HalfInt a, HalfInt b) = default;
    friend constexpr bool operator==(HalfInt a, HalfInt b) = default;
};

/// dim(j) = 2j + 1
constexpr int dim(HalfInt j) { return j.twice + 1; }

/// Triangle inequality plus integer total angular momentum, on doubled values.
constexpr bool triad_valid(int ta, int tb, int tc) {
    if ((ta + tb + tc) % 2 != 0) return false;
    if (ta < 0 || tb < 0 || tc < 0) return false;
    return std::abs(ta - tb) <= tc && tc <= ta + tb;
}

constexpr bool triad_valid(HalfInt a, HalfInt b, HalfInt c) {
    return triad_valid(a.twice, b.twice, c.twice);
}

namespace detail {

// Factorials as long double; arguments stay tiny for the truncations in
// scope (d <= 9 means 2j <= 8) but the table is sized generously.
inline long double factorial(int n) {
    static const auto table = [] {
        std::array<long double, 171> t{};
        t[0] = 1.0L;
        for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<long double>(i);
        return t;
    }();
    if (n < 0 || n >= static_cast<int>(table.size()))
        throw std::out_of_range("factorial argument out of range");
    return table[static_cast<std::size_t>(n)];
}

// sqrt of the triangle coefficient Delta(a,b,c); arguments are doubled js.
inline long double sqrt_triangle_coeff(int ta, int tb, int tc) {
    const long double num = factorial((ta + tb - tc) / 2) * factorial((ta - tb + tc) / 2) *
                            factorial((-ta + tb + tc) / 2);
    return std::sqrt(num / factorial((ta + tb + tc) / 2 + 1));
}

} // namespace detail

/// Wigner 6j symbol {j1 j2 j3; j4 j5 j6} via the Racah single-sum formula.
/// Invalid triads return 0 by convention.
inline double wigner_six_j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6) {
    using detail::factorial;
    const int t1 = j1.twice, t2 = j2.twice, t3 = j3.twice;
    const int t4 = j4.twice, t5 = j5.twice, t6 = j6.twice;
    if (!triad_valid(t1, t2, t3) || !triad_valid(t1, t5, t6) || !triad_valid(t4, t2, t6) ||
        !triad_valid(t4, t5, t3))
        return 0.0;

    const long double pref = detail::sqrt_triangle_coeff(t1, t2, t3) *
                             detail::sqrt_triangle_coeff(t1, t5, t6) *
                             detail::sqrt_triangle_coeff(t4, t2, t6) *
                             detail::sqrt_triangle_coeff(t4, t5, t3);

    // Sum limits in integer units.
    const int f1 = (t1 + t2 + t3) / 2;
    const int f2 = (t1 + t5 + t6) / 2;
    const int f3 = (t4 + t2 + t6) / 2;
    const int f4 = (t4 + t5 + t3) / 2;
    const int g1 = (t1 + t2 + t4 + t5) / 2;
    const int g2 = (t2 + t3 + t5 + t6) / 2;
    const int g3 = (t3 + t1 + t6 + t4) / 2;

    const int tmin = std::max(std::max(f1, f2), std::max(f3, f4));
    const int tmax = std::min(g1, std::min(g2, g3));

    long double sum = 0.0L;
    for (int t = tmin; t <= tmax; ++t) {
        const long double term = factorial(t + 1) / (factorial(t - f1) * factorial(t - f2) *
                                                     factorial(t - f3) * factorial(t - f4) *
                                                     factorial(g1 - t) * factorial(g2 - t) *
                                                     factorial(g3 - t));
        sum += (t % 2 == 0) ? term : -term;
    }
    return static_cast<double>(pref * sum);
}

} // namespace qlgt
