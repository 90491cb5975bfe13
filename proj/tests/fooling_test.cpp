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

#include "upt/fooling.hpp"

using namespace upt;

namespace {

const Indices4 kAbcd{0, 1, 2, 3};

std::map<char, int> abcd_letters() { return {{'a', 0}, {'b', 1}, {'c', 2}, {'d', 3}}; }

Permutation swap13() { return Permutation::transposition(4, 0, 2); }
Permutation swap24() { return Permutation::transposition(4, 1, 3); }

}  // namespace

TEST(KetExpr, ParseAndArithmetic) {
    KetExpr e = KetExpr::parse("ab -2ba +ab", {{'a', 0}, {'b', 1}});
    EXPECT_EQ(e.coefficient({0, 1}), 2);
    EXPECT_EQ(e.coefficient({1, 0}), -2);
    EXPECT_EQ(e.norm_squared(), 8);
    EXPECT_TRUE((e - e).empty());
    EXPECT_THROW(KetExpr::parse("az", {{'a', 0}}), std::invalid_argument);
}

TEST(KetExpr, PermutationMatchesDenseOperator) {
    KetExpr e = KetExpr::parse("abc -2cab +bca", {{'a', 0}, {'b', 1}, {'c', 2}});
    Permutation s = Permutation::from_cycles(3, {{1, 2, 3}});
    Vector dense = permutation_operator(s, 3) * e.to_vector(3);
    EXPECT_LT((dense - e.permuted(s).to_vector(3)).norm(), 1e-15);
}

TEST(YoungTableau, Validation) {
    EXPECT_TRUE(YoungTableau({{1, 2, 3}, {4}}).is_standard());
    EXPECT_FALSE(YoungTableau({{1, 3, 2}, {4}}).is_standard());
    EXPECT_FALSE(YoungTableau({{1, 2}, {2, 4}}).is_standard());
    EXPECT_TRUE(YoungTableau({{1, 1, 2}, {2}}).is_semistandard());
    EXPECT_FALSE(YoungTableau({{1, 1}, {1}}).is_semistandard());
    EXPECT_THROW(YoungTableau({{1}, {2, 3}}), std::invalid_argument);
    EXPECT_EQ(YoungTableau({{1, 2, 3}, {4}}).row_group().size(), 6u);
    EXPECT_EQ(YoungTableau({{1, 2, 3}, {4}}).column_group().size(), 2u);
}

TEST(YoungSymmetrizer, SingleRowAndColumn) {
    Matrix swap = permutation_operator(Permutation::transposition(2, 0, 1), 2);
    Matrix id = Matrix::Identity(4, 4);
    EXPECT_LT((young_symmetrizer(YoungTableau({{1, 2}}), 2) - (id + swap)).norm(), 1e-14);
    EXPECT_LT((young_symmetrizer(YoungTableau({{1}, {2}}), 2) - (id - swap)).norm(), 1e-14);
    Vector out = young_symmetrizer(YoungTableau({{1, 2}}), 2) * StateVector::basis({2, 2}, {0, 1}).amplitudes();
    Vector expected = Vector::Zero(4);
    expected(1) = expected(2) = 1.0;
    EXPECT_LT((out - expected).norm(), 1e-14);
    EXPECT_THROW(young_symmetrizer(YoungTableau({{2, 1}}), 2), std::invalid_argument);
}

TEST(YoungSymmetrizer, FirstTableauVectors) {
    KetExpr abcd({0, 1, 2, 3});
    YoungTableau t31({{1, 2, 3}, {4}});
    YoungTableau t22({{1, 2}, {3, 4}});
    EXPECT_EQ(apply_young_symmetrizer(t31, abcd), tableau_vectors(Partition({3, 1}), kAbcd)[0]);
    EXPECT_EQ(apply_young_symmetrizer(t22, abcd), tableau_vectors(Partition({2, 2}), kAbcd)[0]);
    // dense and exact symmetrizers agree
    Vector dense = young_symmetrizer(t22, 4) * abcd.to_vector(4);
    EXPECT_LT((dense - apply_young_symmetrizer(t22, abcd).to_vector(4)).norm(), 1e-12);
}

TEST(YoungSymmetrizer, LaterTableauVectors) {
    auto l = abcd_letters();
    auto v31 = tableau_vectors(Partition({3, 1}), kAbcd);
    EXPECT_EQ(apply_young_symmetrizer(YoungTableau({{1, 2, 4}, {3}}), KetExpr::parse("abdc", l)), v31[1]);
    EXPECT_EQ(apply_young_symmetrizer(YoungTableau({{1, 3, 4}, {2}}), KetExpr::parse("adbc", l)), v31[2]);
    auto v22 = tableau_vectors(Partition({2, 2}), kAbcd);
    EXPECT_EQ(apply_young_symmetrizer(YoungTableau({{1, 3}, {2, 4}}), KetExpr::parse("acbd", l)), v22[1]);
}

TEST(BasisStates, FixedByPairedSwapsExactly) {
    for (auto kind : {InvariantKind::kSym4, InvariantKind::kShape31, InvariantKind::kShape22,
                      InvariantKind::kShape22Prime}) {
        KetExpr psi = g_invariant_basis(kind, {3, 0, 2, 1});
        EXPECT_FALSE(psi.empty());
        EXPECT_EQ(psi.permuted(swap13()), psi) << to_string(kind);
        EXPECT_EQ(psi.permuted(swap24()), psi) << to_string(kind);
    }
}

TEST(BasisStates, Sym4FixedByEveryPermutation) {
    KetExpr psi = g_invariant_basis(InvariantKind::kSym4, kAbcd);
    for (const auto& p : all_permutations(4)) EXPECT_EQ(psi.permuted(p), psi);
    EXPECT_EQ(psi.norm_squared(), 24);
}

TEST(BasisStates, Shape31ProductFormMatchesTableauCombination) {
    KetExpr factored;
    for (const auto& [x, y] : g_invariant_product_terms(InvariantKind::kShape31, kAbcd)) factored += x.tensor(y);
    EXPECT_EQ(factored, g_invariant_basis(InvariantKind::kShape31, kAbcd));
}

TEST(BasisStates, Shape22PrimeForms) {
    KetExpr prime = g_invariant_basis(InvariantKind::kShape22Prime, kAbcd);
    auto terms = g_invariant_product_terms(InvariantKind::kShape22Prime, kAbcd);
    EXPECT_EQ(terms.size(), 6u);
    KetExpr factored;
    for (const auto& [x, y] : terms) {
        EXPECT_EQ(x.num_registers(), 2);
        EXPECT_EQ(y.num_registers(), 2);
        factored += x.tensor(y);
    }
    EXPECT_EQ(factored, prime);
    KetExpr combo = g_invariant_basis(InvariantKind::kSym4, kAbcd) + g_invariant_basis(InvariantKind::kShape22, kAbcd) * 2;
    EXPECT_EQ(prime * 3, combo);
}

TEST(BasisStates, RepeatedIndicesRejected) {
    EXPECT_THROW(g_invariant_basis(InvariantKind::kSym4, {0, 1, 1, 2}), std::invalid_argument);
    EXPECT_THROW(g_invariant_basis_state(InvariantKind::kSym4, {0, 1, 2, 4}, 4), std::invalid_argument);
}

TEST(BasisStates, PassProductTestWithCertainty) {
    for (auto kind : {InvariantKind::kSym4, InvariantKind::kShape31, InvariantKind::kShape22Prime}) {
        StateVector psi = g_invariant_basis_state(kind, {1, 3, 0, 4}, 5);
        EXPECT_NEAR(product_test(psi, 2, 5).accept_probability, 1.0, 1e-12) << to_string(kind);
    }
}

TEST(RepresentationMatrices, Shape31) {
    auto v = tableau_vectors(Partition({3, 1}), kAbcd);
    Eigen::MatrixXi m13(3, 3), m24(3, 3);
    m13 << 1, 0, 0, -1, -1, -1, 0, 0, 1;
    m24 << 0, 0, 1, 0, 1, 0, 1, 0, 0;
    EXPECT_EQ(representation_matrix(v, swap13()), m13);
    EXPECT_EQ(representation_matrix(v, swap24()), m24);
}

TEST(RepresentationMatrices, Shape22) {
    auto v = tableau_vectors(Partition({2, 2}), kAbcd);
    Eigen::MatrixXi m(2, 2);
    m << -1, -1, 0, 1;
    EXPECT_EQ(representation_matrix(v, swap13()), m);
    EXPECT_EQ(representation_matrix(v, swap24()), m);
}

TEST(RepresentationMatrices, OutsideSpanThrows) {
    std::vector<KetExpr> v{KetExpr({0, 1})};
    EXPECT_THROW(representation_matrix(v, Permutation::transposition(2, 0, 1)), std::invalid_argument);
}

TEST(Counterexample, Subspace) {
    Subspace s = counterexample_subspace({0, 1, 2, 3}, 4);
    EXPECT_EQ(s.dim(), 6);
    Matrix sym = symmetric_projector(4, 2);
    EXPECT_LT((sym * s.basis() - s.basis()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_THROW(counterexample_subspace({0, 1, 1, 3}, 4), std::invalid_argument);
    EXPECT_THROW(counterexample_subspace({0, 1, 2, 3}, 3), std::invalid_argument);
}

TEST(Counterexample, WitnessProperties) {
    const int d = 5;
    Indices4 idx{4, 0, 2, 1};
    Subspace s = counterexample_subspace(idx, d);
    StateVector psi = counterexample_state(idx, d);
    Matrix pi = s.projector();
    EXPECT_NEAR((tensor_product(pi, pi) * psi.amplitudes()).squaredNorm(), 1.0, 1e-12);
    for (const auto& p : all_permutations(4)) {
        EXPECT_LT((permute_registers(psi.amplitudes(), psi.shape(), p) - psi.amplitudes()).norm(), 1e-12);
    }
    Matrix rho = reduced_density(psi, {0, 1});
    RealVector ev = hermitian_eigenvalues(rho);
    EXPECT_GT((ev.array() > 1e-10).count(), 1);

    ReflectionOracle o(s);
    VerifierReport r = product_test_verifier(o, psi);
    EXPECT_NEAR(r.accept_probability, 1.0, 1e-10);
    EXPECT_LE(subspace_max_product_overlap(s, 20, 300, 3).value, 0.75 + 1e-6);
}

TEST(FoolingSearch, EveryCandidateFoolsTheProductTest) {
    auto cands = fooling_search(4, 2, 9);
    EXPECT_GT(cands.size(), 3u);
    bool any_small = false;
    for (const auto& c : cands) {
        EXPECT_NEAR(c.product_test_accept, 1.0, 1e-10) << c.label;
        EXPECT_NEAR(c.verifier_accept, 1.0, 1e-10) << c.label;
        EXPECT_GE(c.support_dim, 1);
        any_small = any_small || c.support_dim < 6;
    }
    (void)any_small;  // reported, not asserted
}
