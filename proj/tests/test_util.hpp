// Copyright 2026 The Purify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only reference implementations. None of these call the library
// routines they are used to check.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace purify_test {

/// Eigenvalues of rho(delta) in its eigenbasis: the |psi> direction first.
inline std::vector<long double> depolarized_spectrum(long double delta, int d) {
    std::vector<long double> out(static_cast<size_t>(d), delta / d);
    out[0] += 1.0L - delta;
    return out;
}

struct SpectralSwap {
    long double p0;
    long double delta_out;
};

/// Two depolarized copies of the same |psi> commute, so the swap test acts on
/// their joint spectrum. Outcome 0 leaves the first register in
/// (rho + sigma + rho sigma + sigma rho) / (4 p0), which is diagonal in the same
/// basis; its eigenvalue off |psi> equals delta_out / d.
inline SpectralSwap spectral_swap(long double delta1, long double delta2, int d) {
    auto a = depolarized_spectrum(delta1, d);
    auto b = depolarized_spectrum(delta2, d);
    long double overlap = 0.0L;
    for (int i = 0; i < d; i++) {
        overlap += a[static_cast<size_t>(i)] * b[static_cast<size_t>(i)];
    }
    long double p0 = 0.5L * (1.0L + overlap);
    long double tail = (a[1] + b[1] + 2.0L * a[1] * b[1]) / (4.0L * p0);
    return SpectralSwap{p0, tail * d};
}

/// The plain error-parameter recursion in long double, no reparametrization.
/// inv_d = 0 stands for d = infinity.
inline std::vector<long double> reference_deltas(long double delta0, long double inv_d, int n) {
    std::vector<long double> out{delta0};
    for (int i = 0; i < n; i++) {
        long double x = out.back();
        long double p = 1.0L - (1.0L - inv_d) * x + 0.5L * (1.0L - inv_d) * x * x;
        out.push_back((x + x * x * inv_d) / (2.0L * p));
    }
    return out;
}

/// Two-sample Kolmogorov-Smirnov statistic.
template <class T>
double ks_statistic(std::vector<T> a, std::vector<T> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    size_t i = 0;
    size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        T x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) {
            i++;
        }
        while (j < b.size() && b[j] == x) {
            j++;
        }
        double fa = static_cast<double>(i) / static_cast<double>(a.size());
        double fb = static_cast<double>(j) / static_cast<double>(b.size());
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

/// Asymptotic KS critical value c(alpha) sqrt((n + m) / (n m)).
inline double ks_critical(size_t n, size_t m, double alpha) {
    double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * static_cast<double>(m)));
}

inline double chi_square(const std::vector<double> &observed, const std::vector<double> &expected) {
    double s = 0.0;
    for (size_t i = 0; i < observed.size(); i++) {
        double diff = observed[i] - expected[i];
        s += diff * diff / expected[i];
    }
    return s;
}

/// Upper 1% point of chi-square with k degrees of freedom (Wilson-Hilferty).
inline double chi_square_critical_99(int k) {
    const double z = 2.3263478740408408;  // standard normal 0.99 quantile
    double v = 2.0 / (9.0 * k);
    double t = 1.0 - v + z * std::sqrt(v);
    return k * t * t * t;
}

/// Haar unitary from the QR decomposition of a complex Ginibre matrix.
inline Eigen::MatrixXcd random_unitary(int d, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd g(d, d);
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            g(i, j) = std::complex<double>(normal(gen), normal(gen));
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; i++) {
        std::complex<double> phase = r(i, i) / std::abs(r(i, i));
        q.col(i) *= phase;
    }
    return q;
}

/// Simon state after the final Hadamards, sum_{x,y} (-1)^{x.y} 2^{-m} |y>|f(x)>,
/// for f(x) = min(x, x xor s). Index y * 2^m + f.
inline Eigen::VectorXcd simon_state(int m, std::uint64_t s) {
    const std::uint64_t size = std::uint64_t{1} << m;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(size * size));
    for (std::uint64_t x = 0; x < size; x++) {
        std::uint64_t f = std::min(x, x ^ s);
        for (std::uint64_t y = 0; y < size; y++) {
            int parity = __builtin_popcountll(x & y) & 1;
            v(static_cast<Eigen::Index>(y * size + f)) += (parity ? -1.0 : 1.0) / static_cast<double>(size);
        }
    }
    return v;
}

/// Distribution of the first register of (1 - delta)|Psi><Psi| + delta I / 4^m.
inline std::vector<double> simon_first_register_marginal(int m, std::uint64_t s, double delta) {
    const std::uint64_t size = std::uint64_t{1} << m;
    Eigen::VectorXcd psi = simon_state(m, s);
    Eigen::MatrixXcd rho = (1.0 - delta) * psi * psi.adjoint() +
                           (delta / static_cast<double>(size * size)) *
                               Eigen::MatrixXcd::Identity(psi.size(), psi.size());
    std::vector<double> out(size, 0.0);
    for (std::uint64_t y = 0; y < size; y++) {
        for (std::uint64_t f = 0; f < size; f++) {
            out[y] += rho(static_cast<Eigen::Index>(y * size + f), static_cast<Eigen::Index>(y * size + f)).real();
        }
    }
    return out;
}

}  // namespace purify_test
