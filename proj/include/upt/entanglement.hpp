// Copyright 2026 The upt Authors
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


#ifndef UPT_ENTANGLEMENT_HPP
#define UPT_ENTANGLEMENT_HPP

#include "upt/core/haar.hpp"
#include "upt/core/linalg.hpp"

namespace upt {

struct EntanglementProfile {
    RealVector spectrum;  // nonincreasing Schmidt spectrum
    double renyi2 = 0.0;  // -log2 purity
    double omega = 0.0;   // largest Schmidt coefficient squared
    double purity = 0.0;  // sum of squared spectrum entries
};

inline EntanglementProfile entanglement_profile(const StateVector& state, int d1, int d2) {
    EntanglementProfile p;
    p.spectrum = schmidt_spectrum(state, d1, d2);
    p.omega = p.spectrum(0);
    p.purity = p.spectrum.squaredNorm();
    p.renyi2 = std::max(0.0, -std::log2(p.purity));
    return p;
}

/// -log2 Tr(rho^2) of the first-factor reduced state.
inline double renyi2_entropy(const StateVector& state, int d1, int d2) {
    return entanglement_profile(state, d1, d2).renyi2;
}

/// max over product states |phi (x) xi> of |<phi xi|state>|^2, which is the
/// top Schmidt eigenvalue.
inline double closest_product_overlap(const StateVector& state, int d1, int d2) {
    return schmidt_spectrum(state, d1, d2)(0);
}

/// Complete homogeneous symmetric polynomial h_k of the spectrum, by the
/// recurrence h_j(x_1..x_i) = h_j(x_1..x_{i-1}) + x_i h_{j-1}(x_1..x_i).
inline double h_k(const RealVector& spectrum, int k) {
    if (k < 0) {
        throw std::invalid_argument("h_k needs k >= 0");
    }
    double total = 0.0;
    for (Index i = 0; i < spectrum.size(); ++i) {
        if (spectrum(i) < -1e-12) {
            throw std::invalid_argument("h_k spectrum has a negative entry");
        }
        total += spectrum(i);
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument("h_k spectrum must sum to 1");
    }
    std::vector<double> h(k + 1, 0.0);
    h[0] = 1.0;
    for (Index i = 0; i < spectrum.size(); ++i) {
        double x = std::max(spectrum(i), 0.0);
        for (int j = 1; j <= k; ++j) h[j] += x * h[j - 1];
    }
    return h[k];
}

inline double h_k(const std::vector<double>& spectrum, int k) {
    return h_k(RealVector(Eigen::Map<const RealVector>(spectrum.data(), static_cast<Index>(spectrum.size()))), k);
}

struct ProductOverlapResult {
    double value = 0.0;                  // best |<theta|phi xi>|^2 found
    StateVector certificate;             // theta in the subspace
    StateVector product;                 // phi (x) xi
    std::vector<double> restart_values;  // local optimum per restart
};

/// Lower bound on sup over unit theta in S and product phi (x) xi of
/// |<theta|phi xi>|^2, by alternating maximization from Haar product starts:
/// theta <- normalized projection of the product onto S, product <- top
/// Schmidt pair of theta. Every iterate is feasible, so the value is a
/// certified lower bound.
inline ProductOverlapResult subspace_max_product_overlap(const Subspace& s, int restarts, int iters,
                                                         std::uint64_t seed) {
    if (restarts < 1 || iters < 1) {
        throw std::invalid_argument("need at least one restart and one iteration");
    }
    const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(s.ambient_dim()))));
    if (d * d != s.ambient_dim()) {
        throw std::invalid_argument("subspace must live in C^d (x) C^d");
    }
    if (s.dim() == 0) {
        throw std::invalid_argument("subspace is empty");
    }
    ProductOverlapResult best;
    best.value = -1.0;
    Rng root(seed);
    const Shape shape{d, d};
    for (int r = 0; r < restarts; ++r) {
        Rng rng = root.split(static_cast<std::uint64_t>(r));
        Vector prod = kron(haar_state({d}, rng).amplitudes(), haar_state({d}, rng).amplitudes());
        Vector theta = s.project(prod);
        if (theta.norm() < 1e-8) {
            // start orthogonal to S; fall back to a random in-subspace vector
            Vector c(s.dim());
            for (int i = 0; i < s.dim(); ++i) c(i) = rng.complex_normal();
            theta = s.basis() * c;
        }
        theta.normalize();
        double value = 0.0;
        for (int it = 0; it < iters; ++it) {
            SchmidtDecomposition sd = schmidt_decomposition(theta, d, d);
            double top = sd.coefficients(0) * sd.coefficients(0);
            prod = kron(sd.left.col(0), sd.right.col(0));
            bool converged = it > 0 && top - value < 1e-15;
            value = std::max(value, top);
            if (converged) break;
            Vector next = s.project(prod);
            theta = next / next.norm();
        }
        // re-derive the pair for the final theta so the certificate is exact
        SchmidtDecomposition sd = schmidt_decomposition(theta, d, d);
        prod = kron(sd.left.col(0), sd.right.col(0));
        value = std::norm(prod.dot(theta));
        best.restart_values.push_back(value);
        if (value > best.value) {
            best.value = value;
            best.certificate = StateVector::normalized(theta, shape);
            best.product = StateVector::normalized(prod, shape);
        }
    }
    return best;
}

struct ConcentrationRow {
    int s = 0;
    double mean_max_purity = 0.0;   // over subspaces, of the max over sampled states
    double mean_best_overlap = 0.0; // over subspaces, of the alternating-maximization bound
};

/// Trend of entanglement in Haar-random subspaces of C^d (x) C^d as their
/// dimension varies. In-subspace samples are normalized projections of Haar
/// product states. Reported only; no constants are asserted.
inline std::vector<ConcentrationRow> haar_concentration_trend(int d, const std::vector<int>& dims, int subspaces,
                                                              int samples, std::uint64_t seed) {
    Rng root(seed);
    std::vector<ConcentrationRow> rows;
    for (size_t di = 0; di < dims.size(); ++di) {
        const int s = dims[di];
        ConcentrationRow row;
        row.s = s;
        for (int q = 0; q < subspaces; ++q) {
            Rng rng = root.split(di * 1000003ULL + static_cast<std::uint64_t>(q));
            Subspace sub = haar_subspace(d * d, s, rng);
            double max_purity = 0.0;
            for (int i = 0; i < samples; ++i) {
                Vector prod = kron(haar_state({d}, rng).amplitudes(), haar_state({d}, rng).amplitudes());
                Vector theta = sub.project(prod);
                if (theta.norm() < 1e-12) continue;
                StateVector st = StateVector::normalized(theta, {d, d});
                max_purity = std::max(max_purity, entanglement_profile(st, d, d).purity);
            }
            row.mean_max_purity += max_purity / subspaces;
            row.mean_best_overlap += subspace_max_product_overlap(sub, 2, 50, rng()).value / subspaces;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace upt

#endif
