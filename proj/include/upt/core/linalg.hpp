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

#ifndef UPT_CORE_LINALG_HPP
#define UPT_CORE_LINALG_HPP

#include <algorithm>
#include <span>
#include <unsupported/Eigen/KroneckerProduct>

#include "upt/core/permutation.hpp"
#include "upt/core/types.hpp"

namespace upt {

inline Matrix tensor_product(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

inline Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

inline StateVector tensor_product(const StateVector& a, const StateVector& b) {
    return StateVector::normalized(kron(a.amplitudes(), b.amplitudes()), concat_shapes(a.shape(), b.shape()));
}

inline StateVector tensor_power(const StateVector& a, int k) {
    if (k < 1) {
        throw std::invalid_argument("tensor power must be at least 1");
    }
    StateVector out = a;
    for (int i = 1; i < k; ++i) out = tensor_product(out, a);
    return out;
}

inline std::vector<Index> register_strides(const Shape& shape) {
    std::vector<Index> strides(shape.size());
    Index s = 1;
    for (size_t k = shape.size(); k-- > 0;) {
        strides[k] = s;
        s *= shape[k];
    }
    return strides;
}

namespace detail {

inline void check_registers(const Shape& shape, std::span<const int> registers) {
    std::vector<bool> used(shape.size(), false);
    for (int r : registers) {
        if (r < 0 || r >= static_cast<int>(shape.size())) {
            throw std::out_of_range("register index " + std::to_string(r) + " out of range");
        }
        if (used[r]) {
            throw std::invalid_argument("register listed twice");
        }
        used[r] = true;
    }
}

/// Offsets of every joint configuration of `registers` (first listed is most
/// significant) inside a vector with the given shape.
inline std::vector<Index> register_offsets(const Shape& shape, std::span<const int> registers) {
    auto strides = register_strides(shape);
    std::vector<Index> offsets{0};
    for (int r : registers) {
        std::vector<Index> next;
        next.reserve(offsets.size() * shape[r]);
        for (Index base : offsets) {
            for (int x = 0; x < shape[r]; ++x) next.push_back(base + x * strides[r]);
        }
        offsets = std::move(next);
    }
    return offsets;
}

inline std::vector<int> complement_registers(int n, std::span<const int> registers) {
    std::vector<bool> used(n, false);
    for (int r : registers) used[r] = true;
    std::vector<int> rest;
    for (int k = 0; k < n; ++k) {
        if (!used[k]) rest.push_back(k);
    }
    return rest;
}

/// Reshapes v into a (dim registers) x (dim rest) matrix.
inline Matrix gather(const Vector& v, const Shape& shape, std::span<const int> registers) {
    auto sub = register_offsets(shape, registers);
    auto rest_regs = complement_registers(static_cast<int>(shape.size()), registers);
    auto rest = register_offsets(shape, rest_regs);
    Matrix m(static_cast<Index>(sub.size()), static_cast<Index>(rest.size()));
    for (size_t c = 0; c < rest.size(); ++c) {
        for (size_t r = 0; r < sub.size(); ++r) m(r, c) = v(sub[r] + rest[c]);
    }
    return m;
}

inline Vector scatter(const Matrix& m, const Shape& shape, std::span<const int> registers) {
    auto sub = register_offsets(shape, registers);
    auto rest_regs = complement_registers(static_cast<int>(shape.size()), registers);
    auto rest = register_offsets(shape, rest_regs);
    Vector v(shape_size(shape));
    for (size_t c = 0; c < rest.size(); ++c) {
        for (size_t r = 0; r < sub.size(); ++r) v(sub[r] + rest[c]) = m(r, c);
    }
    return v;
}

}  // namespace detail

inline Index registers_dim(const Shape& shape, std::span<const int> registers) {
    Index n = 1;
    for (int r : registers) n *= shape.at(r);
    return n;
}

/// Applies `op` to the listed registers (first listed = most significant
/// factor of `op`), identity elsewhere.
inline Vector apply_on_registers(const Vector& v, const Shape& shape, const Matrix& op,
                                 std::span<const int> registers) {
    detail::check_registers(shape, registers);
    Index sub = registers_dim(shape, registers);
    if (op.rows() != sub || op.cols() != sub) {
        throw std::invalid_argument("operator dimension does not match the target registers");
    }
    Matrix m = detail::gather(v, shape, registers);
    return detail::scatter(op * m, shape, registers);
}

/// P_perm |i_1 ... i_n> = |i_{perm^-1(1)} ... i_{perm^-1(n)}>: register k
/// moves to position perm(k).
inline Vector permute_registers(const Vector& v, const Shape& shape, const Permutation& perm) {
    int n = static_cast<int>(shape.size());
    if (perm.n() != n) {
        throw std::invalid_argument("permutation degree does not match register count");
    }
    Shape out_shape(n);
    for (int k = 0; k < n; ++k) out_shape[perm(k)] = shape[k];
    auto out_strides = register_strides(out_shape);
    std::vector<Index> moved(n);
    for (int k = 0; k < n; ++k) moved[k] = out_strides[perm(k)];

    Vector out(v.size());
    std::vector<int> digits(n, 0);
    Index target = 0;
    for (Index idx = 0; idx < v.size(); ++idx) {
        out(target) = v(idx);
        // odometer increment on the input digits, tracking the output index
        for (int k = n - 1; k >= 0; --k) {
            if (++digits[k] < shape[k]) {
                target += moved[k];
                break;
            }
            target -= moved[k] * (shape[k] - 1);
            digits[k] = 0;
        }
    }
    return out;
}

inline StateVector permute_registers(const StateVector& s, const Permutation& perm) {
    Shape out_shape(s.shape().size());
    for (int k = 0; k < perm.n(); ++k) out_shape[perm(k)] = s.shape()[k];
    return StateVector::normalized(permute_registers(s.amplitudes(), s.shape(), perm), out_shape);
}

/// Averages v over all permutations of the registers at `positions`
/// (which must share one dimension): the symmetric-subspace projector.
inline Vector symmetrize_registers(const Vector& v, const Shape& shape, std::span<const int> positions) {
    detail::check_registers(shape, positions);
    int n = static_cast<int>(shape.size());
    for (int p : positions) {
        if (shape[p] != shape[positions[0]]) {
            throw std::invalid_argument("symmetrized registers must have equal dimension");
        }
    }
    int k = static_cast<int>(positions.size());
    Vector acc = Vector::Zero(v.size());
    auto perms = all_permutations(k);
    for (const auto& pi : perms) {
        std::vector<int> im(n);
        for (int i = 0; i < n; ++i) im[i] = i;
        for (int a = 0; a < k; ++a) im[positions[a]] = positions[pi(a)];
        acc += permute_registers(v, shape, Permutation(im));
    }
    return acc / static_cast<double>(perms.size());
}

inline Matrix permutation_operator(const Permutation& sigma, int d) {
    if (d < 1) {
        throw std::invalid_argument("local dimension must be positive");
    }
    Shape shape(sigma.n(), d);
    Index dim = shape_size(shape);
    Matrix p = Matrix::Zero(dim, dim);
    for (Index j = 0; j < dim; ++j) {
        Vector e = Vector::Zero(dim);
        e(j) = 1.0;
        p.col(j) = permute_registers(e, shape, sigma);
    }
    return p;
}

/// (1/k!) sum over S_k of permutation operators on (C^d)^{(x)k}.
inline Matrix symmetric_projector(int d, int k) {
    if (k < 1) {
        throw std::invalid_argument("symmetric power must be at least 1");
    }
    auto perms = all_permutations(k);
    Index dim = shape_size(Shape(k, d));
    Matrix acc = Matrix::Zero(dim, dim);
    for (const auto& p : perms) acc += permutation_operator(p, d);
    return acc / static_cast<double>(perms.size());
}

inline RealVector hermitian_eigenvalues(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

/// Reduced density matrix on the registers in `keep` (sorted ascending).
inline Matrix reduced_density(const StateVector& state, std::vector<int> keep) {
    if (keep.empty()) {
        throw std::invalid_argument("reduced_density needs at least one kept register");
    }
    std::sort(keep.begin(), keep.end());
    detail::check_registers(state.shape(), keep);
    Matrix m = detail::gather(state.amplitudes(), state.shape(), keep);
    Matrix rho = m * m.adjoint();
    return (rho + rho.adjoint()) / 2.0;
}

namespace detail {

/// Checks that `shape` splits at a register boundary into d1 x d2.
inline void check_bipartition(const Shape& shape, Index d1, Index d2) {
    if (shape_size(shape) != d1 * d2) {
        throw std::invalid_argument("state length does not equal d1*d2");
    }
    Index prefix = 1;
    for (int d : shape) {
        if (prefix == d1) return;
        prefix *= d;
    }
    if (prefix != d1) {
        throw std::invalid_argument("d1 does not fall on a register boundary of the state's shape");
    }
}

/// Row-major d1 x d2 coefficient matrix of a bipartite vector.
inline Matrix coefficient_matrix(const Vector& v, Index d1, Index d2) {
    Matrix m(d1, d2);
    for (Index i = 0; i < d1; ++i) {
        for (Index j = 0; j < d2; ++j) m(i, j) = v(i * d2 + j);
    }
    return m;
}

inline RealVector clamp_probabilities(RealVector p) {
    for (Index i = 0; i < p.size(); ++i) p(i) = std::max(p(i), 0.0);
    double s = p.sum();
    if (s > 0) p /= s;
    std::sort(p.data(), p.data() + p.size(), std::greater<>());
    return p;
}

}  // namespace detail

/// Eigenvalues of the first-factor reduced density, nonincreasing, clamped
/// at zero and renormalized to sum 1. Length d1.
inline RealVector schmidt_spectrum(const StateVector& state, int d1, int d2) {
    detail::check_bipartition(state.shape(), d1, d2);
    Matrix m = detail::coefficient_matrix(state.amplitudes(), d1, d2);
    Eigen::JacobiSVD<Matrix> svd(m);
    RealVector s = RealVector::Zero(d1);
    s.head(svd.singularValues().size()) = svd.singularValues().array().square();
    return detail::clamp_probabilities(s);
}

struct SchmidtDecomposition {
    RealVector coefficients;  // sqrt of the Schmidt spectrum, nonincreasing
    Matrix left;              // columns |a_i>
    Matrix right;             // columns |b_i>
};

inline SchmidtDecomposition schmidt_decomposition(const Vector& v, int d1, int d2) {
    Matrix m = detail::coefficient_matrix(v, d1, d2);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    // m = U S V^dagger, so v = sum_i s_i |u_i> (x) |conj(v_i)>
    return {svd.singularValues(), svd.matrixU(), svd.matrixV().conjugate()};
}

inline StateVector maximally_entangled(int d) {
    Vector v = Vector::Zero(static_cast<Index>(d) * d);
    for (int j = 0; j < d; ++j) v(j * d + j) = 1.0 / std::sqrt(static_cast<double>(d));
    return StateVector(std::move(v), {d, d});
}

/// Trace distance (1/2)||rho - sigma||_1.
inline double trace_distance(const Matrix& rho, const Matrix& sigma) {
    Matrix diff = rho - sigma;
    return 0.5 * hermitian_eigenvalues((diff + diff.adjoint()) / 2.0).cwiseAbs().sum();
}

/// Pure-state trace distance sqrt(1 - |<a|b>|^2).
inline double trace_distance(const StateVector& a, const StateVector& b) {
    return std::sqrt(std::max(0.0, 1.0 - std::norm(a.inner(b))));
}

struct CosineBounds {
    double lower;  // x^2 / 3
    double upper;  // x^2 / 2
};

/// Bracket on 1 - cos(x), valid for |x| <= 2.
inline CosineBounds one_minus_cos_bounds(double x) {
    if (std::abs(x) > 2.0) {
        throw std::invalid_argument("cosine bounds only hold for |x| <= 2");
    }
    return {x * x / 3.0, x * x / 2.0};
}

}  // namespace upt

#endif
