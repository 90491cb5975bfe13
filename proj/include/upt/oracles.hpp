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

#ifndef UPT_ORACLES_HPP
#define UPT_ORACLES_HPP

#include <json.hpp>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "upt/core/linalg.hpp"
#include "upt/core/random.hpp"

namespace upt {

/// Black-box unitary with counted forward, adjoint and controlled access.
///
/// Every call through apply()/apply_controlled() costs one query. Simulators
/// that work from the dense matrix (e.g. repeated squaring for phase
/// estimation) must charge() the number of oracle calls they stand in for.
/// The counter is not synchronized; confine one oracle to one tester run.
class UnitaryOracle {
   public:
    explicit UnitaryOracle(int dim) : dim_(dim) {
        if (dim < 1) {
            throw std::invalid_argument("oracle dimension must be positive");
        }
    }
    virtual ~UnitaryOracle() = default;

    int dim() const { return dim_; }
    std::int64_t queries() const { return queries_; }
    void charge(std::int64_t n) {
        if (n < 0) {
            throw std::invalid_argument("cannot charge a negative number of queries");
        }
        queries_ += n;
    }
    void reset_queries() { queries_ = 0; }

    std::optional<std::uint64_t> seed() const { return seed_; }
    void set_seed(std::uint64_t s) { seed_ = s; }

    virtual std::string kind() const = 0;
    /// Dense matrix; uncounted.
    virtual Matrix matrix() const = 0;
    virtual nlohmann::json to_json() const = 0;

    /// U|v> or U^dagger|v> on the full oracle space.
    Vector apply(const Vector& v, bool adjoint = false) {
        if (v.size() != dim_) {
            throw std::invalid_argument("vector dimension does not match oracle dimension");
        }
        ++queries_;
        return apply_block(v, adjoint);
    }

    /// Applies U (or U^dagger) to the listed registers of a multi-register vector.
    Vector apply(const Vector& v, const Shape& shape, std::span<const int> targets, bool adjoint = false) {
        detail::check_registers(shape, targets);
        if (registers_dim(shape, targets) != dim_) {
            throw std::invalid_argument("target registers do not multiply to the oracle dimension");
        }
        ++queries_;
        Matrix m = detail::gather(v, shape, targets);
        return detail::scatter(apply_block(m, adjoint), shape, targets);
    }

    /// Uncounted block application, used by exact simulators that account
    /// for queries separately.
    virtual Matrix apply_block(const Matrix& x, bool adjoint) const {
        return adjoint ? Matrix(matrix().adjoint() * x) : Matrix(matrix() * x);
    }

   protected:
    void store_seed(nlohmann::json& j) const {
        if (seed_) j["seed"] = *seed_;
    }

   private:
    int dim_;
    std::int64_t queries_ = 0;
    std::optional<std::uint64_t> seed_;
};

namespace detail {

inline nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const nlohmann::json& j) {
    return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

inline nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json cols = nlohmann::json::array();
    for (Index c = 0; c < m.cols(); ++c) {
        nlohmann::json col = nlohmann::json::array();
        for (Index r = 0; r < m.rows(); ++r) col.push_back(complex_to_json(m(r, c)));
        cols.push_back(std::move(col));
    }
    return cols;
}

inline Matrix matrix_from_json(const nlohmann::json& cols, Index rows) {
    Matrix m(rows, static_cast<Index>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) {
        if (static_cast<Index>(cols[c].size()) != rows) {
            throw std::invalid_argument("descriptor column has wrong length");
        }
        for (Index r = 0; r < rows; ++r) m(r, static_cast<Index>(c)) = complex_from_json(cols[c][r]);
    }
    return m;
}

inline void check_unitary(const Matrix& u, const char* what) {
    if (u.rows() != u.cols()) {
        throw std::invalid_argument(std::string(what) + " is not square");
    }
    double err = (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
    if (err > kIdentityTol) {
        throw std::invalid_argument(std::string(what) + " is not unitary");
    }
}

}  // namespace detail

/// U = I - 2 Pi for the projector Pi onto a subspace. Applied matrix-free
/// through the subspace basis.
class ReflectionOracle final : public UnitaryOracle {
   public:
    explicit ReflectionOracle(Subspace s) : UnitaryOracle(s.ambient_dim()), subspace_(std::move(s)) {}

    std::string kind() const override { return "reflection"; }
    const Subspace& subspace() const { return subspace_; }
    Matrix projector() const { return subspace_.projector(); }

    Matrix matrix() const override {
        return Matrix::Identity(dim(), dim()) - 2.0 * subspace_.projector();
    }

    Matrix apply_block(const Matrix& x, bool /*adjoint*/) const override {
        const Matrix& b = subspace_.basis();
        if (b.cols() == 0) return x;
        return x - 2.0 * (b * (b.adjoint() * x));
    }

    nlohmann::json to_json() const override {
        nlohmann::json j{{"kind", kind()}, {"dim", dim()}, {"basis", detail::matrix_to_json(subspace_.basis())}};
        store_seed(j);
        return j;
    }

   private:
    Subspace subspace_;
};

/// U = V diag(z) V^dagger with unit-modulus z.
class SpectrumOracle final : public UnitaryOracle {
   public:
    SpectrumOracle(std::vector<Complex> eigenvalues, Matrix eigenbasis)
        : UnitaryOracle(static_cast<int>(eigenvalues.size())),
          eigenvalues_(std::move(eigenvalues)),
          eigenbasis_(std::move(eigenbasis)) {
        for (Complex z : eigenvalues_) {
            if (std::abs(std::abs(z) - 1.0) > 1e-12) {
                throw std::invalid_argument("spectrum oracle eigenvalues must have unit modulus");
            }
        }
        if (eigenbasis_.rows() != dim()) {
            throw std::invalid_argument("eigenbasis dimension does not match the spectrum");
        }
        detail::check_unitary(eigenbasis_, "eigenbasis");
    }

    /// Diagonal oracle in the standard basis.
    explicit SpectrumOracle(std::vector<Complex> eigenvalues)
        : SpectrumOracle(eigenvalues, Matrix::Identity(static_cast<Index>(eigenvalues.size()),
                                                       static_cast<Index>(eigenvalues.size()))) {}

    std::string kind() const override { return "spectrum"; }
    const std::vector<Complex>& eigenvalues() const { return eigenvalues_; }
    const Matrix& eigenbasis() const { return eigenbasis_; }

    Vector diagonal(bool adjoint = false) const {
        Vector z(dim());
        for (int i = 0; i < dim(); ++i) z(i) = adjoint ? std::conj(eigenvalues_[i]) : eigenvalues_[i];
        return z;
    }

    Matrix matrix() const override { return eigenbasis_ * diagonal().asDiagonal() * eigenbasis_.adjoint(); }

    Matrix apply_block(const Matrix& x, bool adjoint) const override {
        Matrix y = eigenbasis_.adjoint() * x;
        y = diagonal(adjoint).asDiagonal() * y;
        return eigenbasis_ * y;
    }

    /// Same spectrum, eigenbasis rotated to V * eigenbasis (U -> V U V^dagger).
    SpectrumOracle conjugated(const Matrix& v) const { return SpectrumOracle(eigenvalues_, v * eigenbasis_); }

    nlohmann::json to_json() const override {
        nlohmann::json spec = nlohmann::json::array();
        for (Complex z : eigenvalues_) spec.push_back(detail::complex_to_json(z));
        nlohmann::json j{{"kind", kind()},
                         {"dim", dim()},
                         {"spectrum", spec},
                         {"eigenbasis", detail::matrix_to_json(eigenbasis_)}};
        store_seed(j);
        return j;
    }

   private:
    std::vector<Complex> eigenvalues_;
    Matrix eigenbasis_;
};

/// Arbitrary dense unitary.
class DenseOracle final : public UnitaryOracle {
   public:
    explicit DenseOracle(Matrix u) : UnitaryOracle(static_cast<int>(u.rows())), u_(std::move(u)) {
        detail::check_unitary(u_, "dense oracle matrix");
    }

    std::string kind() const override { return "dense"; }
    Matrix matrix() const override { return u_; }
    Matrix apply_block(const Matrix& x, bool adjoint) const override {
        return adjoint ? Matrix(u_.adjoint() * x) : Matrix(u_ * x);
    }

    nlohmann::json to_json() const override {
        nlohmann::json j{{"kind", kind()}, {"dim", dim()}, {"matrix", detail::matrix_to_json(u_)}};
        store_seed(j);
        return j;
    }

   private:
    Matrix u_;
};

inline ReflectionOracle reflection_from_subspace(const Subspace& s) { return ReflectionOracle(s); }

/// Reflection about V * S.
inline ReflectionOracle conjugated(const ReflectionOracle& o, const Matrix& v) {
    return ReflectionOracle(Subspace(o.dim(), v * o.subspace().basis()));
}

/// Diagonal oracle whose entries are independently z with probability p, else 1.
inline SpectrumOracle sample_recurrence_instance(int d, double p, Complex z, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) {
        throw std::invalid_argument("probability p must lie in [0, 1]");
    }
    if (std::abs(std::abs(z) - 1.0) > 1e-12) {
        throw std::invalid_argument("z must have unit modulus");
    }
    Rng rng(seed);
    std::vector<Complex> ev(d);
    for (int i = 0; i < d; ++i) ev[i] = rng.bernoulli(p) ? z : Complex(1.0);
    SpectrumOracle o(std::move(ev));
    o.set_seed(seed);
    return o;
}

/// |0><0| (x) I + |1><1| (x) U (or U^dagger) with a 2-dimensional control
/// register; one query.
inline Vector apply_controlled(UnitaryOracle& o, const Vector& v, const Shape& shape, int control,
                               std::span<const int> targets, bool adjoint = false) {
    if (control < 0 || control >= static_cast<int>(shape.size()) || shape[control] != 2) {
        throw std::invalid_argument("control register must exist and have dimension 2");
    }
    for (int t : targets) {
        if (t == control) {
            throw std::invalid_argument("control register cannot also be a target");
        }
    }
    detail::check_registers(shape, targets);
    if (registers_dim(shape, targets) != o.dim()) {
        throw std::invalid_argument("target registers do not multiply to the oracle dimension");
    }
    std::vector<int> regs{control};
    regs.insert(regs.end(), targets.begin(), targets.end());
    Matrix m = detail::gather(v, shape, regs);
    Index half = o.dim();
    Matrix lower = m.bottomRows(half);
    o.charge(1);
    m.bottomRows(half) = o.apply_block(lower, adjoint);
    return detail::scatter(m, shape, regs);
}

inline StateVector apply_controlled(UnitaryOracle& o, const StateVector& state, int control,
                                    std::span<const int> targets, bool adjoint = false) {
    return StateVector::normalized(apply_controlled(o, state.amplitudes(), state.shape(), control, targets, adjoint),
                                   state.shape());
}

/// Rebuilds an oracle from its JSON descriptor.
inline std::unique_ptr<UnitaryOracle> oracle_from_json(const nlohmann::json& j) {
    std::string kind = j.at("kind").get<std::string>();
    int dim = j.at("dim").get<int>();
    std::unique_ptr<UnitaryOracle> out;
    if (kind == "reflection") {
        Matrix basis = detail::matrix_from_json(j.at("basis"), dim);
        out = std::make_unique<ReflectionOracle>(Subspace(dim, basis));
    } else if (kind == "spectrum") {
        std::vector<Complex> ev;
        for (const auto& z : j.at("spectrum")) ev.push_back(detail::complex_from_json(z));
        if (static_cast<int>(ev.size()) != dim) {
            throw std::invalid_argument("spectrum length does not match dim");
        }
        Matrix basis = j.contains("eigenbasis") ? detail::matrix_from_json(j.at("eigenbasis"), dim)
                                                : Matrix(Matrix::Identity(dim, dim));
        out = std::make_unique<SpectrumOracle>(std::move(ev), basis);
    } else if (kind == "dense") {
        out = std::make_unique<DenseOracle>(detail::matrix_from_json(j.at("matrix"), dim));
    } else {
        throw std::invalid_argument("unknown oracle kind '" + kind + "'");
    }
    if (j.contains("seed")) out->set_seed(j.at("seed").get<std::uint64_t>());
    return out;
}

}  // namespace upt

#endif
