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

#include <set>

#include "upt/experiments.hpp"

using namespace upt;

TEST(Registry, AlphabetizedAndUnique) {
    const auto& all = registry();
    EXPECT_GE(all.size(), 10u);
    std::set<std::string> names;
    for (size_t i = 0; i < all.size(); ++i) {
        names.insert(all[i].name);
        EXPECT_FALSE(all[i].anchor.empty()) << all[i].name;
        if (i > 0) EXPECT_LT(all[i - 1].name, all[i].name);
    }
    EXPECT_EQ(names.size(), all.size());
}

TEST(Registry, EachCriterionHasExactlyOneExperiment) {
    std::map<int, int> count;
    for (const auto& e : registry()) {
        if (e.criterion > 0) ++count[e.criterion];
    }
    for (int c = 1; c <= 11; ++c) EXPECT_EQ(count[c], 1) << "criterion " << c;
    EXPECT_EQ(count.size(), 11u);
}

TEST(Registry, DefaultsSatisfyTheirSchemas) {
    for (const auto& e : registry()) {
        EXPECT_NO_THROW(prepare(e, {e.name, {}, 1, true})) << e.name;
        nlohmann::json j = e.to_json();
        EXPECT_EQ(j.at("params").size(), e.params.size());
    }
}

TEST(Descriptor, Validation) {
    EXPECT_THROW(find_experiment("no-such-experiment"), ExperimentError);
    const Experiment& e = find_experiment("product-test-exactness");
    EXPECT_THROW(prepare(e, {e.name, {{"bogus", "1"}}, 1, true}), ExperimentError);
    EXPECT_THROW(prepare(e, {e.name, {{"trials", "abc"}}, 1, true}), ExperimentError);
    EXPECT_THROW(prepare(e, {e.name, {{"trials", "2.5"}}, 1, true}), ExperimentError);
    EXPECT_THROW(prepare(e, {e.name, {{"d", "2,9"}}, 1, true}), ExperimentError);
    EXPECT_THROW(prepare(e, {e.name, {{"d", ""}}, 1, true}), ExperimentError);
    ExperimentContext c = prepare(e, {e.name, {{"d", "3"}, {"k", "2,4"}}, 1, true});
    EXPECT_EQ(c.list("d"), std::vector<int>{3});
    EXPECT_EQ(c.list("k"), (std::vector<int>{2, 4}));
    EXPECT_EQ(c.i("trials"), 100);
}

TEST(Descriptor, PromiseGapEnforced) {
    EXPECT_THROW(run_experiment({"dimension-estimator", {{"s", "3"}, {"trials", "1"}}, 1, true}), ExperimentError);
}

TEST(Report, SchemaAndDeterminism) {
    ExperimentDescriptor desc{"product-test-exactness", {{"d", "3"}, {"k", "3"}, {"trials", "20"}}, 7, true};
    nlohmann::json a = run_experiment(desc);
    nlohmann::json b = run_experiment(desc);
    for (const char* key : {"schema", "experiment", "anchor", "params", "seed", "version", "checks", "payload", "pass",
                            "runtime_seconds"}) {
        EXPECT_TRUE(a.contains(key)) << key;
    }
    EXPECT_EQ(a["schema"], "v1");
    EXPECT_EQ(a["seed"], 7);
    EXPECT_FALSE(a["payload"].contains("runtime_seconds"));
    EXPECT_EQ(a["payload"].dump(), b["payload"].dump());
    EXPECT_TRUE(a["pass"].get<bool>());
    for (const auto& c : a["checks"]) {
        for (const char* key : {"name", "anchor", "pass", "value", "threshold"}) EXPECT_TRUE(c.contains(key));
    }
    ExperimentDescriptor other = desc;
    other.seed = 8;
    EXPECT_NE(run_experiment(other)["payload"].dump(), a["payload"].dump());
}

TEST(Report, ProductTestCellAgreesWithIndependentH) {
    nlohmann::json r = run_experiment({"product-test-exactness", {{"d", "2"}, {"k", "2"}, {"trials", "10"}}, 3, true});
    // For d = 2, h_2 = (1 + purity)/2 with purity = l^2 + (1 - l)^2.
    double sum = 0.0;
    for (int t = 0; t < 10; ++t) {
        StateVector psi = experiments::product_test_sample(2, 2, t, 3);
        Eigen::Matrix2cd m;
        m << psi.amplitudes()(0), psi.amplitudes()(1), psi.amplitudes()(2), psi.amplitudes()(3);
        Eigen::Matrix2cd rho = m * m.adjoint();
        sum += 0.5 * (1.0 + (rho * rho).trace().real());
    }
    EXPECT_NEAR(r["payload"]["cells"][0]["mean_acceptance"].get<double>(), sum / 10, 1e-12);
}

TEST(Report, SampledModeProductTest) {
    nlohmann::json r = run_experiment(
        {"product-test-exactness", {{"d", "2,3"}, {"k", "2"}, {"trials", "20"}, {"shots", "2000"}}, 4, false});
    EXPECT_EQ(r["mode"], "sampled");
    EXPECT_TRUE(r["pass"].get<bool>()) << r["checks"].dump();
    EXPECT_TRUE(r["payload"]["cells"][0].contains("mean_sampled"));
}

TEST(Report, CounterexampleAcceptsWithCertainty) {
    nlohmann::json r = run_experiment({"counterexample", {{"restarts", "10"}}, 1, true});
    EXPECT_TRUE(r["pass"].get<bool>());
    EXPECT_NEAR(r["payload"]["verifier"]["accept_probability"].get<double>(), 1.0, 1e-10);
    EXPECT_EQ(r["payload"]["subspace_dim"], 6);
}

TEST(Report, SampledConjugationAudit) {
    std::map<std::string, std::string> tables;
    nlohmann::json r = run_experiment(
        {"polynomial-audits", {{"conjugations", "20"}, {"samples", "100"}, {"surface_trials", "20"}}, 5, false},
        &tables);
    EXPECT_TRUE(r["pass"].get<bool>()) << r["checks"].dump();
    EXPECT_FALSE(r["payload"]["conjugation_audits"][1]["exact"].get<bool>());
    EXPECT_TRUE(tables.count("surface"));
    EXPECT_TRUE(tables.count("dimension_entangled_membership"));
}

TEST(Report, ExtrasRun) {
    for (const char* name : {"fooling-search", "haar-concentration", "symqma-verifier"}) {
        nlohmann::json r = run_experiment({name, {}, 2, true});
        EXPECT_TRUE(r["pass"].get<bool>()) << name;
        EXPECT_EQ(r["criterion"], 0);
    }
}
