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


#include <gtest/gtest.h>

#include "upt/core/haar.hpp"
#include "upt/core/linalg.hpp"

using namespace upt;

namespace {

Vector bell() {
    Vector v = Vector::Zero(4);
    v(0) = v(3) = M_SQRT1_2;
    return v;
}

Matrix pauli_x() {
    Matrix x = Matrix::Zero(2, 2);
    x(0, 1) = x(1, 0) = 1.0;
    return x;
}

long long binomial(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Mean and 3-sigma half-width of a sample.
std::pair<double, double> mean_band(const std::vector<double>& xs) {
    double m = 0, m2 = 0;
    for (double x : xs) {
        m += x;
        m2 += x * x;
    }
    m /= xs.size();
    m2 /= xs.size();
    double var = std::max(0.0, m2 - m * m);
    return {m, 3.0 * std::sqrt(var / xs.size())};
}

}  // namespace

TEST(TensorProduct, IdentityTimesIdentity) {
    Matrix i2 = Matrix::Identity(2, 2);
    EXPECT_TRUE(tensor_product(i2, i2).isApprox(Matrix::Identity(4, 4)));
}

TEST(TensorProduct, BasisKetsConcatenateShapes) {
    StateVector a = StateVector::basis({2}, {0});
    StateVector b = StateVector::basis({2}, {1});
    StateVector ab = tensor_product(a, b);
    EXPECT_EQ(ab.shape(), (Shape{2, 2}));
    EXPECT_DOUBLE_EQ(std::abs(ab[1]), 1.0);
}

TEST(TensorProduct, XOnFirstQubitOfBell) {
    Vector out = tensor_product(pauli_x(), Matrix::Identity(2, 2)) * bell();
    Vector expected = Vector::Zero(4);
    expected(1) = expected(2) = M_SQRT1_2;  // (|01> + |10>)/sqrt2
    EXPECT_LT((out - expected).norm(), 1e-14);
}

TEST(ApplyOnRegisters, MatchesKroneckerEmbedding) {
    Rng rng(3);
    StateVector psi = haar_state({2, 3, 2}, rng);
    Matrix op = haar_unitary(3, rng);
    std::vector<int> regs{1};
    Vector got = apply_on_registers(psi.amplitudes(), psi.shape(), op, regs);
    Matrix full = tensor_product(tensor_product(Matrix::Identity(2, 2), op), Matrix::Identity(2, 2));
    EXPECT_LT((got - full * psi.amplitudes()).norm(), 1e-12);
}

TEST(ReducedDensity, ProductState) {
    Rng rng(5);
    StateVector a = haar_state({3}, rng);
    StateVector b = haar_state({2}, rng);
    Matrix rho = reduced_density(tensor_product(a, b), {0});
    Matrix expected = a.amplitudes() * a.amplitudes().adjoint();
    EXPECT_LT((rho - expected).norm(), 1e-12);
}

TEST(ReducedDensity, BellIsMaximallyMixed) {
    Matrix rho = reduced_density(StateVector(bell(), {2, 2}), {0});
    EXPECT_LT((rho - Matrix::Identity(2, 2) / 2.0).norm(), 1e-14);
}

TEST(ReducedDensity, HermitianUnitTrace) {
    Rng rng(8);
    StateVector psi = haar_state({2, 3, 2}, rng);
    Matrix rho = reduced_density(psi, {0, 2});
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-10);
    EXPECT_LT((rho - rho.adjoint()).norm(), 1e-12);
    EXPECT_GT(hermitian_eigenvalues(rho).minCoeff(), -1e-12);
}

TEST(ReducedDensity, RejectsBadRegister) {
    StateVector psi(bell(), {2, 2});
    EXPECT_THROW(reduced_density(psi, {2}), std::out_of_range);
    EXPECT_THROW(reduced_density(psi, {}), std::invalid_argument);
}

TEST(SchmidtSpectrum, Examples) {
    StateVector prod = StateVector::basis({2, 2}, {1, 0});
    RealVector s = schmidt_spectrum(prod, 2, 2);
    EXPECT_NEAR(s(0), 1.0, 1e-12);
    EXPECT_NEAR(s(1), 0.0, 1e-12);

    s = schmidt_spectrum(StateVector(bell(), {2, 2}), 2, 2);
    EXPECT_NEAR(s(0), 0.5, 1e-12);
    EXPECT_NEAR(s(1), 0.5, 1e-12);

    Vector v = Vector::Zero(4);
    v(0) = std::sqrt(0.1);
    v(3) = std::sqrt(0.9);
    s = schmidt_spectrum(StateVector(v, {2, 2}), 2, 2);
    EXPECT_NEAR(s(0), 0.9, 1e-12);
    EXPECT_NEAR(s(1), 0.1, 1e-12);
}

TEST(SchmidtSpectrum, DimensionMismatch) {
    EXPECT_THROW(schmidt_spectrum(StateVector(bell(), {2, 2}), 3, 2), std::invalid_argument);
}

TEST(SchmidtSpectrum, LocalUnitaryInvariance) {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        StateVector psi = haar_state({3, 4}, rng);
        Matrix gh = tensor_product(haar_unitary(3, rng), haar_unitary(4, rng));
        StateVector rotated(gh * psi.amplitudes(), {3, 4});
        RealVector a = schmidt_spectrum(psi, 3, 4);
        RealVector b = schmidt_spectrum(rotated, 3, 4);
        EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-9);
        EXPECT_NEAR(a.sum(), 1.0, 1e-10);
    }
}

TEST(SchmidtSpectrum, MatchesReducedDensityEigenvalues) {
    Rng rng(12);
    StateVector psi = haar_state({3, 2}, rng);
    RealVector ev = hermitian_eigenvalues(reduced_density(psi, {0}));
    std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
    RealVector s = schmidt_spectrum(psi, 3, 2);
    ASSERT_EQ(s.size(), 3);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(s(i), std::max(ev(i), 0.0), 1e-10);
}

TEST(HaarUnitary, DimensionOne) {
    Matrix u = haar_unitary(1, std::uint64_t{4});
    EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-12);
}

TEST(HaarUnitary, Unitarity) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Matrix u = haar_unitary(4, seed);
        EXPECT_LT((u * u.adjoint() - Matrix::Identity(4, 4)).norm(), 1e-10);
    }
}

TEST(HaarUnitary, FirstMomentOfEntry) {
    Rng rng(21);
    std::vector<double> xs;
    for (int i = 0; i < 10000; ++i) xs.push_back(std::norm(haar_unitary(3, rng)(0, 0)));
    auto [m, band] = mean_band(xs);
    EXPECT_NEAR(m, 1.0 / 3.0, band);
}

TEST(HaarUnitary, TraceHasZeroMean) {
    Rng rng(22);
    std::vector<double> re, im;
    for (int i = 0; i < 10000; ++i) {
        Complex t = haar_unitary(3, rng).trace();
        re.push_back(t.real());
        im.push_back(t.imag());
    }
    auto [mr, br] = mean_band(re);
    auto [mi, bi] = mean_band(im);
    EXPECT_LE(std::abs(mr), br);
    EXPECT_LE(std::abs(mi), bi);
}

TEST(HaarUnitary, SeedDeterminism) {
    EXPECT_TRUE(haar_unitary(3, std::uint64_t{9}).isApprox(haar_unitary(3, std::uint64_t{9})));
    EXPECT_FALSE(haar_unitary(3, std::uint64_t{9}).isApprox(haar_unitary(3, std::uint64_t{10})));
}

TEST(HaarSubspace, FullSpaceAndGram) {
    Subspace full = haar_subspace(4, 4, std::uint64_t{1});
    EXPECT_LT((full.projector() - Matrix::Identity(4, 4)).norm(), 1e-10);
    Subspace s = haar_subspace(4, 2, std::uint64_t{2});
    EXPECT_LT((s.basis().adjoint() * s.basis() - Matrix::Identity(2, 2)).norm(), 1e-10);
}

TEST(HaarSubspace, OverlapMoment) {
    Rng rng(31);
    Vector v = Vector::Zero(8);
    v(5) = 1.0;
    std::vector<double> xs;
    for (int i = 0; i < 10000; ++i) {
        Subspace s = haar_subspace(8, 1, rng);
        xs.push_back(std::norm(v.dot(s.basis().col(0))));
    }
    auto [m, band] = mean_band(xs);
    EXPECT_NEAR(m, 1.0 / 8.0, band);
}

TEST(HaarSubspace, RangeErrors) {
    EXPECT_THROW(haar_subspace(4, 0, std::uint64_t{1}), std::invalid_argument);
    EXPECT_THROW(haar_subspace(4, 5, std::uint64_t{1}), std::invalid_argument);
}

TEST(PermutationOperator, Identity) {
    EXPECT_TRUE(permutation_operator(Permutation::identity(3), 2).isApprox(Matrix::Identity(8, 8)));
}

TEST(PermutationOperator, SwapMatrix) {
    Matrix swap = Matrix::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = 1.0;
    swap(1, 2) = swap(2, 1) = 1.0;
    EXPECT_TRUE(permutation_operator(Permutation::transposition(2, 0, 1), 2).isApprox(swap));
}

TEST(PermutationOperator, TraceCountsCycles) {
    Permutation s = Permutation::from_cycles(3, {{1, 2}, {3}});
    EXPECT_NEAR(permutation_operator(s, 3).trace().real(), 9.0, 1e-12);
}

TEST(PermutationOperator, ActionOnBasis) {
    // sigma = (1 2 3): register k moves to sigma(k), so |a b c> -> |c a b>.
    Permutation s = Permutation::from_cycles(3, {{1, 2, 3}});
    StateVector in = StateVector::basis({2, 3, 4}, {1, 2, 3});
    StateVector out = permute_registers(in, s);
    EXPECT_EQ(out.shape(), (Shape{4, 2, 3}));
    EXPECT_NEAR(std::abs(out.inner(StateVector::basis({4, 2, 3}, {3, 1, 2}))), 1.0, 1e-14);
}

TEST(PermutationOperator, Homomorphism) {
    Rng rng(41);
    for (int n = 1; n <= 5; ++n) {
        auto perms = all_permutations(n);
        for (int d = 1; d <= 3; ++d) {
            if (n == 5 && d == 3) continue;  // 243-dim; sampled below
            for (int trial = 0; trial < 5; ++trial) {
                const auto& a = perms[rng() % perms.size()];
                const auto& b = perms[rng() % perms.size()];
                Matrix lhs = permutation_operator(a, d) * permutation_operator(b, d);
                EXPECT_EQ((lhs - permutation_operator(a * b, d)).cwiseAbs().maxCoeff(), 0.0);
            }
        }
    }
    auto perms = all_permutations(5);
    const auto& a = perms[17];
    const auto& b = perms[93];
    Matrix lhs = permutation_operator(a, 3) * permutation_operator(b, 3);
    EXPECT_EQ((lhs - permutation_operator(a * b, 3)).cwiseAbs().maxCoeff(), 0.0);
}

TEST(SymmetricProjector, TracesAndIdempotence) {
    EXPECT_TRUE(symmetric_projector(3, 1).isApprox(Matrix::Identity(3, 3)));
    EXPECT_NEAR(symmetric_projector(2, 2).trace().real(), 3.0, 1e-12);
    EXPECT_NEAR(symmetric_projector(3, 3).trace().real(), 10.0, 1e-12);
    for (int d = 1; d <= 4; ++d) {
        for (int k = 1; k <= 4; ++k) {
            Matrix p = symmetric_projector(d, k);
            EXPECT_LT((p * p - p).cwiseAbs().maxCoeff(), 1e-10);
            EXPECT_LT((p - p.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
            EXPECT_NEAR(p.trace().real(), static_cast<double>(binomial(d + k - 1, k)), 1e-9);
        }
    }
}

TEST(SymmetrizeRegisters, MatchesProjector) {
    Rng rng(51);
    StateVector psi = haar_state({3, 3, 3}, rng);
    std::vector<int> all{0, 1, 2};
    Vector got = symmetrize_registers(psi.amplitudes(), psi.shape(), all);
    EXPECT_LT((got - symmetric_projector(3, 3) * psi.amplitudes()).norm(), 1e-12);
}

TEST(StateVector, Validation) {
    EXPECT_THROW(StateVector(Vector::Ones(4), {2, 2}), std::invalid_argument);
    EXPECT_THROW(StateVector(bell(), {2, 3}), std::invalid_argument);
    EXPECT_THROW(StateVector::normalized(Vector::Zero(2), {2}), std::invalid_argument);
}

TEST(Subspace, RejectsNonOrthonormal) {
    Matrix b(2, 2);
    b << 1, 1, 0, 1;
    EXPECT_THROW(Subspace(2, b), std::invalid_argument);
    Subspace s = Subspace::span(2, b);
    EXPECT_EQ(s.dim(), 2);
}

TEST(TraceDistance, PureStateFormula) {
    Rng rng(61);
    StateVector a = haar_state({3}, rng);
    StateVector b = haar_state({3}, rng);
    Matrix ra = a.amplitudes() * a.amplitudes().adjoint();
    Matrix rb = b.amplitudes() * b.amplitudes().adjoint();
    EXPECT_NEAR(trace_distance(a, b), trace_distance(ra, rb), 1e-10);
}

TEST(CosineBounds, BracketsOneMinusCos) {
    for (double x = -2.0; x <= 2.0; x += 0.01) {
        auto b = one_minus_cos_bounds(x);
        EXPECT_LE(b.lower, 1 - std::cos(x) + 1e-15);
        EXPECT_GE(b.upper, 1 - std::cos(x) - 1e-15);
    }
    EXPECT_THROW(one_minus_cos_bounds(2.5), std::invalid_argument);
}

TEST(Rng, SplitStreamsAreDeterministicAndDistinct) {
    Rng root(7);
    Rng a = root.split(3);
    Rng b = Rng(7).split(3);
    EXPECT_EQ(a(), b());
    EXPECT_NE(root.split(3)(), root.split(4)());
}
