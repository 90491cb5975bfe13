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

#ifndef UPT_CORE_TYPES_HPP
#define UPT_CORE_TYPES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace upt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Ordered register dimensions of a tensor-product space; the first register
/// is the most significant digit of a basis index.
using Shape = std::vector<int>;

inline constexpr double kIdentityTol = 1e-10;
inline constexpr double kSpectrumTol = 1e-9;

inline Index shape_size(const Shape& shape) {
    Index n = 1;
    for (int d : shape) {
        if (d < 1) {
            throw std::invalid_argument("register dimensions must be positive");
        }
        n *= d;
    }
    return n;
}

inline Shape concat_shapes(const Shape& a, const Shape& b) {
    Shape out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

/// Unit-norm amplitude vector with explicit register shape.
class StateVector {
   public:
    StateVector() = default;

    StateVector(Vector amplitudes, Shape shape) : amps_(std::move(amplitudes)), shape_(std::move(shape)) {
        if (shape_size(shape_) != amps_.size()) {
            throw std::invalid_argument(
                "state length " + std::to_string(amps_.size()) + " does not match its register shape");
        }
        if (std::abs(amps_.norm() - 1.0) > kIdentityTol) {
            throw std::invalid_argument("state is not normalized (norm " + std::to_string(amps_.norm()) + ")");
        }
    }

    /// Normalizes `v`; throws if it is (numerically) zero.
    static StateVector normalized(const Vector& v, Shape shape) {
        double n = v.norm();
        if (n < 1e-300) {
            throw std::invalid_argument("cannot normalize a zero vector");
        }
        return StateVector(v / n, std::move(shape));
    }

    /// Computational basis state |digits[0] digits[1] ...>.
    static StateVector basis(Shape shape, const std::vector<int>& digits) {
        if (digits.size() != shape.size()) {
            throw std::invalid_argument("basis digits do not match register count");
        }
        Index idx = 0;
        for (size_t k = 0; k < shape.size(); ++k) {
            if (digits[k] < 0 || digits[k] >= shape[k]) {
                throw std::invalid_argument("basis digit out of range");
            }
            idx = idx * shape[k] + digits[k];
        }
        Vector v = Vector::Zero(shape_size(shape));
        v(idx) = 1.0;
        return StateVector(std::move(v), std::move(shape));
    }

    const Vector& amplitudes() const { return amps_; }
    const Shape& shape() const { return shape_; }
    Index size() const { return amps_.size(); }
    int num_registers() const { return static_cast<int>(shape_.size()); }
    Complex operator[](Index i) const { return amps_(i); }

    /// <this|other>
    Complex inner(const StateVector& other) const {
        if (other.size() != size()) {
            throw std::invalid_argument("inner product of states with different dimensions");
        }
        return amps_.dot(other.amps_);
    }

   private:
    Vector amps_;
    Shape shape_;
};

/// Orthonormal basis (as matrix columns) of a subspace of C^ambient.
class Subspace {
   public:
    Subspace() = default;

    Subspace(int ambient_dim, Matrix basis) : ambient_(ambient_dim), basis_(std::move(basis)) {
        if (ambient_ < 1) {
            throw std::invalid_argument("ambient dimension must be positive");
        }
        if (basis_.size() == 0) {
            basis_.resize(ambient_, 0);
        }
        if (basis_.rows() != ambient_) {
            throw std::invalid_argument("basis vectors do not live in the ambient space");
        }
        if (basis_.cols() > 0) {
            Matrix gram = basis_.adjoint() * basis_;
            double err = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
            if (err > kIdentityTol) {
                throw std::invalid_argument("subspace basis is not orthonormal (Gram error " + std::to_string(err) +
                                            ")");
            }
        }
    }

    /// Orthonormalizes arbitrary spanning columns (rank-revealing QR).
    static Subspace span(int ambient_dim, const Matrix& columns, double rank_tol = 1e-10) {
        if (columns.cols() == 0) {
            return Subspace(ambient_dim, Matrix(ambient_dim, 0));
        }
        Eigen::ColPivHouseholderQR<Matrix> qr(columns);
        qr.setThreshold(rank_tol);
        Index r = qr.rank();
        Matrix q = qr.householderQ() * Matrix::Identity(ambient_dim, r);
        return Subspace(ambient_dim, q);
    }

    int ambient_dim() const { return ambient_; }
    int dim() const { return static_cast<int>(basis_.cols()); }
    const Matrix& basis() const { return basis_; }
    StateVector vector(int i, Shape shape) const { return StateVector(basis_.col(i), std::move(shape)); }

    Matrix projector() const { return basis_ * basis_.adjoint(); }
    Vector project(const Vector& v) const { return basis_ * (basis_.adjoint() * v); }

   private:
    int ambient_ = 0;
    Matrix basis_;
};

}  // namespace upt

#endif
