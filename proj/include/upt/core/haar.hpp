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

#ifndef UPT_CORE_HAAR_HPP
#define UPT_CORE_HAAR_HPP

#include "upt/core/random.hpp"
#include "upt/core/types.hpp"

namespace upt {

inline Matrix ginibre(int rows, int cols, Rng& rng) {
    Matrix g(rows, cols);
    for (int j = 0; j < cols; ++j) {
        for (int i = 0; i < rows; ++i) g(i, j) = rng.complex_normal();
    }
    return g;
}

/// Haar-distributed d x d unitary: QR of a complex Ginibre matrix with the
/// columns of Q rephased by conj(phase(R_ii)).
inline Matrix haar_unitary(int d, Rng& rng) {
    if (d < 1) {
        throw std::invalid_argument("haar_unitary needs d >= 1");
    }
    Matrix g = ginibre(d, d, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j) {
        Complex rjj = r(j, j);
        double mag = std::abs(rjj);
        Complex phase = mag > 0 ? rjj / mag : Complex(1.0);
        q.col(j) *= phase;
    }
    return q;
}

inline Matrix haar_unitary(int d, std::uint64_t seed) {
    Rng rng(seed);
    return haar_unitary(d, rng);
}

/// Uniformly random unit vector over the given register shape.
inline StateVector haar_state(const Shape& shape, Rng& rng) {
    Index n = shape_size(shape);
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
    return StateVector::normalized(v, shape);
}

/// Haar-random s-dimensional subspace of C^d (first s columns of a Haar unitary).
inline Subspace haar_subspace(int d, int s, Rng& rng) {
    if (s < 1 || s > d) {
        throw std::invalid_argument("haar_subspace needs 1 <= s <= d");
    }
    Matrix u = haar_unitary(d, rng);
    return Subspace(d, u.leftCols(s));
}

inline Subspace haar_subspace(int d, int s, std::uint64_t seed) {
    Rng rng(seed);
    return haar_subspace(d, s, rng);
}

}  // namespace upt

#endif
