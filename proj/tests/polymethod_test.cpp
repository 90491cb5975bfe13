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

#include "upt/polymethod.hpp"

using namespace upt;

namespace {

std::vector<Complex> reflection_spectrum(int d, int s) {
    std::vector<Complex> ev(d, Complex(1.0));
    for (int i = 0; i < s; ++i) ev[i] = Complex(-1.0);
    return ev;
}

ReflectionOracle coordinate_reflection(int d, int k) {
    return ReflectionOracle(Subspace(d, Matrix::Identity(d, d).leftCols(k)));
}

}  // namespace

TEST(Handles, ClosedFormsOnCoordinateReflections) {
    const int d = 8;
    for (int k = 0; k <= d; ++k) {
        double x = static_cast<double>(k) / d;
        auto o = coordinate_reflection(d, k);
        EXPECT_NEAR(entangled_membership_tester().run(o, 0).accept_probability, x, 1e-12);
        EXPECT_NEAR(eigenspace_overlap_tester().run(o, 0).accept_probability, 1.0 - x, 1e-12);
        // (2|u><u| - I) U |u> = (1 - 4x)|u> + 2 Pi|u>, so Pi of it is (3 - 4x) Pi|u>.
        EXPECT_NEAR(grover_step_tester().run(o, 0).accept_probability, (3 - 4 * x) * (3 - 4 * x) * x, 1e-12);
        EXPECT_EQ(o.queries(), 1 + 1 + 2);
    }
}

TEST(Handles, CoinFlipNeverQueries) {
    auto o = coordinate_reflection(4, 2);
    VerifierReport r = coin_flip_tester(0.3).run(o, 1);
    EXPECT_DOUBLE_EQ(r.accept_probability, 0.3);
    EXPECT_EQ(o.queries(), 0);
    EXPECT_THROW(coin_flip_tester(1.5), std::invalid_argument);
}

TEST(Handles, RecurrenceBudgetMatchesRun) {
    TesterHandle h = recurrence_tester_handle(2, 0.5);
    SpectrumOracle o = sample_recurrence_instance(4, 0.5, Complex(0, 1), 3);
    VerifierReport r = h.run(o, 3);
    EXPECT_EQ(r.queries_used, h.budget(4));
    EXPECT_EQ(o.queries(), 11 * 127);
}

TEST(ConjugationAudit, ExactModeIsInvariant) {
    ConjugationAuditReport r =
        conjugation_invariance_audit(entangled_membership_tester(), reflection_spectrum(6, 2), 5, 1, true, 11);
    EXPECT_TRUE(r.pass) << "spread " << r.spread;
    EXPECT_EQ(r.query_mismatches, 0);
    EXPECT_EQ(r.values.size(), 5u);
    std::vector<Complex> spectrum{Complex(0, 1), Complex(0, 1), 1.0, 1.0};
    r = conjugation_invariance_audit(recurrence_tester_handle(2, 0.5), spectrum, 3, 1, true, 4);
    EXPECT_TRUE(r.pass) << "spread " << r.spread;
}

TEST(ConjugationAudit, FixedInputTestersAreBasisDependent) {
    // A fixed input state singles out a direction, so these are not invariant.
    for (const TesterHandle& h : {eigenspace_overlap_tester(), grover_step_tester()}) {
        ConjugationAuditReport r = conjugation_invariance_audit(h, reflection_spectrum(6, 2), 5, 1, true, 11);
        EXPECT_FALSE(r.pass) << h.name;
        EXPECT_EQ(r.query_mismatches, 0);
    }
}

TEST(ConjugationAudit, ExactValueMatchesAverageOverHaar) {
    // For the entangled membership tester acceptance is s/d for every conjugation.
    ConjugationAuditReport r =
        conjugation_invariance_audit(entangled_membership_tester(), reflection_spectrum(5, 2), 4, 1, true, 2);
    for (double v : r.values) EXPECT_NEAR(v, 0.4, 1e-12);
}

TEST(ConjugationAudit, SampledModeWithinBand) {
    std::vector<Complex> spectrum{Complex(0, 1), Complex(0, 1), 1.0, 1.0};
    ConjugationAuditReport r = conjugation_invariance_audit(recurrence_tester_handle(2, 0.5), spectrum, 4, 50, false, 5);
    EXPECT_TRUE(r.pass) << "spread " << r.spread << " band " << r.tolerance;
    EXPECT_EQ(r.samples, 50);
}

TEST(ConjugationAudit, DetectsNonInvariantTester) {
    // Reads the (0,0) matrix entry directly: depends on the eigenbasis.
    TesterHandle peek;
    peek.name = "peek";
    peek.max_queries = 1;
    peek.budget = [](int) { return std::int64_t{1}; };
    peek.run = [](UnitaryOracle& o, std::uint64_t) {
        Vector e = Vector::Zero(o.dim());
        e(0) = 1.0;
        double p = std::norm(o.apply(e)(0));
        VerifierReport r;
        r.accept_probability = p;
        r.queries_used = 1;
        return r;
    };
    ConjugationAuditReport r = conjugation_invariance_audit(peek, reflection_spectrum(4, 2), 5, 1, true, 1);
    EXPECT_FALSE(r.pass);
}

TEST(ConjugationAudit, FlagsQueryBudgetMismatch) {
    TesterHandle h = entangled_membership_tester();
    h.budget = [](int) { return std::int64_t{2}; };
    ConjugationAuditReport r = conjugation_invariance_audit(h, reflection_spectrum(4, 1), 2, 1, true, 1);
    EXPECT_EQ(r.query_mismatches, 2);
    EXPECT_FALSE(r.pass);
}

TEST(DimensionFit, BuiltinsAreLowDegreePolynomials) {
    const int d = 12;
    for (const TesterHandle& h :
         {coin_flip_tester(0.25), entangled_membership_tester(), eigenspace_overlap_tester(), grover_step_tester()}) {
        DimensionFit f = dimension_polynomial_fit(h, d);
        EXPECT_TRUE(f.pass) << h.name << " residual " << f.max_residual;
        EXPECT_EQ(f.degree, 2 * h.max_queries);
        EXPECT_EQ(f.values.size(), static_cast<size_t>(d + 1));
    }
}

TEST(DimensionFit, RecoversCoefficients) {
    DimensionFit f = dimension_polynomial_fit(grover_step_tester(), 10);
    // (3 - 4x)^2 x = 9x - 24x^2 + 16x^3.
    std::vector<double> want{0, 9, -24, 16, 0};
    ASSERT_EQ(f.coefficients.size(), want.size());
    for (size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(f.coefficients[i], want[i], 1e-8);
}

TEST(DimensionFit, RejectsNonPolynomialTester) {
    // Zero queries declared but acceptance depends on dim(S) via a hidden probe.
    TesterHandle cheat;
    cheat.name = "cheat";
    cheat.max_queries = 1;
    cheat.budget = [](int) { return std::int64_t{0}; };
    cheat.run = [](UnitaryOracle& o, std::uint64_t) {
        double tr = o.matrix().trace().real();
        VerifierReport r;
        r.accept_probability = std::abs(std::sin(3.0 * tr));
        return r;
    };
    DimensionFit f = dimension_polynomial_fit(cheat, 12);
    EXPECT_FALSE(f.pass);
    EXPECT_GT(f.max_residual, 1e-3);
}

TEST(DimensionFit, Csv) {
    DimensionFit f = dimension_polynomial_fit(coin_flip_tester(0.5), 2);
    EXPECT_EQ(f.to_csv(), "k,p\n0,0.5\n1,0.5\n2,0.5\n");
}

TEST(RecurrenceSurface, ConjugateSymmetry) {
    std::vector<double> ps{0.0, 0.5, 1.0};
    std::vector<Complex> zs{Complex(1.0), Complex(0, 1), Complex(0, -1)};
    RecurrenceSurface s = recurrence_surface(recurrence_tester_handle(2, 0.5), 4, ps, zs, 20, 9);
    EXPECT_EQ(s.cells.size(), 9u);
    EXPECT_EQ(s.checks.size(), 3u);
    EXPECT_TRUE(s.pass);
    // p = 0 gives the identity: every stage accepts.
    for (size_t j = 0; j < zs.size(); ++j) {
        EXPECT_NEAR(s.cells[j].mean, 1.0, 1e-9);
        EXPECT_DOUBLE_EQ(s.cells[j].standard_error, 0.0);
    }
    // p = 1 with z = i is a t = 2 non-solution; with z = 1 it is the identity.
    EXPECT_NEAR(s.cells[6].mean, 1.0, 1e-9);
    EXPECT_LT(s.cells[7].mean, 0.5);
    EXPECT_NEAR(s.cells[7].mean, s.cells[8].mean, 1e-9);
    std::string csv = s.to_csv();
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,z_re,z_im,r,stderr");
}
