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


#ifndef UPT_EXPERIMENTS_HPP
#define UPT_EXPERIMENTS_HPP

#include <Eigen/Core>
#include <chrono>
#include <boost/version.hpp>
#include <json.hpp>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "upt/entanglement.hpp"
#include "upt/fooling.hpp"
#include "upt/invariants.hpp"
#include "upt/polymethod.hpp"

namespace upt {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "v1";

/// Unknown experiment or invalid parameters; the CLI maps this to exit 2.
class ExperimentError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct ParamSpec {
    std::string name;
    std::string type;  // "int", "double" or "int_list"
    std::string default_value;
    double min = 0.0;
    double max = 0.0;
    std::string description;

    nlohmann::json to_json() const {
        return {{"name", name},       {"type", type}, {"default", default_value},
                {"min", min},         {"max", max},   {"description", description}};
    }
};

struct Check {
    std::string name;
    std::string anchor;
    bool pass = false;
    nlohmann::json value;
    nlohmann::json threshold;

    nlohmann::json to_json() const {
        return {{"name", name}, {"anchor", anchor}, {"pass", pass}, {"value", value}, {"threshold", threshold}};
    }
};

/// Validated inputs and collected outputs of one experiment run.
struct ExperimentContext {
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;
    bool exact = true;
    std::string anchor;
    nlohmann::json payload = nlohmann::json::object();
    std::vector<Check> checks;
    std::map<std::string, std::string> tables;  // name -> CSV

    int i(const std::string& key) const { return params.at(key).get<int>(); }
    double f(const std::string& key) const { return params.at(key).get<double>(); }
    std::vector<int> list(const std::string& key) const { return params.at(key).get<std::vector<int>>(); }

    void check(const std::string& name, bool pass, nlohmann::json value, nlohmann::json threshold) {
        checks.push_back({name, anchor, pass, std::move(value), std::move(threshold)});
    }
};

struct Experiment {
    std::string name;
    std::string anchor;
    int criterion = 0;  // acceptance criterion number, 0 if none
    std::string description;
    std::vector<ParamSpec> params;
    std::function<void(ExperimentContext&)> run;

    nlohmann::json to_json() const {
        nlohmann::json p = nlohmann::json::array();
        for (const auto& s : params) p.push_back(s.to_json());
        return {{"name", name}, {"anchor", anchor}, {"criterion", criterion}, {"description", description},
                {"params", p}};
    }
};

namespace experiments {

inline const Permutation& swap13() {
    static const Permutation p = Permutation::transposition(4, 0, 2);
    return p;
}
inline const Permutation& swap24() {
    static const Permutation p = Permutation::transposition(4, 1, 3);
    return p;
}

/// Haar state number t of the (d, k) product-test sample set.
inline StateVector product_test_sample(int d, int k, int t, std::uint64_t seed) {
    Rng rng = Rng(seed).split(static_cast<std::uint64_t>(16 * d + k)).split(static_cast<std::uint64_t>(t));
    return haar_state({d, d}, rng);
}

inline void product_test_exactness(ExperimentContext& c) {
    const int trials = c.i("trials");
    const int shots = c.i("shots");
    nlohmann::json cells = nlohmann::json::array();
    for (int d : c.list("d")) {
        for (int k : c.list("k")) {
            double max_err = 0.0, sum_exact = 0.0, sum_h = 0.0, sum_sampled = 0.0, var = 0.0;
            for (int t = 0; t < trials; ++t) {
                StateVector psi = product_test_sample(d, k, t, c.seed);
                VerifierReport r = product_test(tensor_power(psi, k), k, d);
                double h = h_k(schmidt_spectrum(psi, d, d), k);
                max_err = std::max(max_err, std::abs(r.accept_probability - h));
                sum_exact += r.accept_probability;
                sum_h += h;
                if (!c.exact) {
                    std::uint64_t s = Rng(c.seed).split(static_cast<std::uint64_t>(1000 * d + 100 * k + t))();
                    sum_sampled += sampled(r, shots, s).accept_probability;
                    var += h * (1.0 - h) / shots;
                }
            }
            std::string tag = "d=" + std::to_string(d) + " k=" + std::to_string(k);
            nlohmann::json cell{{"d", d},
                                {"k", k},
                                {"trials", trials},
                                {"max_abs_error", max_err},
                                {"mean_acceptance", sum_exact / trials},
                                {"mean_h_k", sum_h / trials}};
            if (c.exact) {
                c.check("acceptance equals h_k, " + tag, max_err < 1e-10, max_err, 1e-10);
            } else {
                double diff = std::abs(sum_sampled - sum_h) / trials;
                double band = 3.0 * std::sqrt(var) / trials + 1e-12;
                cell["mean_sampled"] = sum_sampled / trials;
                cell["shots"] = shots;
                c.check("sampled mean within 3 sigma of h_k, " + tag, diff <= band, diff, band);
            }
            cells.push_back(cell);
        }
    }
    c.payload["cells"] = cells;
}

inline void product_test_bounds(ExperimentContext& c) {
    const int trials = c.i("trials");
    nlohmann::json cells = nlohmann::json::array();
    for (int d : c.list("d")) {
        for (int k : c.list("k")) {
            double worst_lower = std::numeric_limits<double>::infinity();
            double worst_upper = std::numeric_limits<double>::infinity();
            for (int t = 0; t < trials; ++t) {
                StateVector psi = product_test_sample(d, k, t, c.seed);
                double omega = schmidt_spectrum(psi, d, d)(0);
                double alpha = product_test(tensor_power(psi, k), k, d).accept_probability;
                double upper = (k - 1.0) / (k + 1.0) * std::pow(omega, k) + 2.0 / (k + 1.0);
                if (k == 2) {
                    worst_lower = std::min(worst_lower, alpha - 0.5 * (1.0 + omega * omega));
                    upper = std::min(upper, omega * omega / 3.0 + 2.0 / 3.0);
                }
                worst_upper = std::min(worst_upper, upper - alpha);
            }
            std::string tag = "d=" + std::to_string(d) + " k=" + std::to_string(k);
            nlohmann::json cell{{"d", d}, {"k", k}, {"trials", trials}, {"min_upper_slack", worst_upper}};
            c.check("upper bound, " + tag, worst_upper >= -1e-9, worst_upper, -1e-9);
            if (k == 2) {
                cell["min_lower_slack"] = worst_lower;
                c.check("lower bound (1 + omega^2)/2, " + tag, worst_lower >= -1e-9, worst_lower, -1e-9);
            }
            cells.push_back(cell);
        }
    }
    c.payload["cells"] = cells;
}

inline void counterexample(ExperimentContext& c) {
    const int d = c.i("d");
    const Indices4 uvwx{0, 1, 2, 3};
    Subspace s = counterexample_subspace(uvwx, d);
    ReflectionOracle o(s);
    VerifierReport r = product_test_verifier(o, counterexample_state(uvwx, d));
    double eps = 1.0 - r.accept_probability;
    ProductOverlapResult best = subspace_max_product_overlap(s, c.i("restarts"), c.i("iters"), c.seed);
    c.payload["subspace_dim"] = s.dim();
    c.payload["verifier"] = r.to_json();
    c.payload["epsilon"] = eps;
    c.payload["max_product_overlap"] = best.value;
    c.payload["restart_values"] = best.restart_values;
    c.check("verifier accepts the witness with probability 1 - eps", std::abs(eps) < 1e-10, eps, 1e-10);
    c.check("verifier uses two queries", r.queries_used == 2, r.queries_used, 2);
    c.check("max product overlap of S at most 3/4", best.value <= 0.75 + 1e-6, best.value, 0.75 + 1e-6);
}

inline void fooling_basis(ExperimentContext& c) {
    const Indices4 idx{0, 1, 2, 3};
    nlohmann::json fams = nlohmann::json::array();
    for (InvariantKind kind :
         {InvariantKind::kSym4, InvariantKind::kShape31, InvariantKind::kShape22, InvariantKind::kShape22Prime}) {
        KetExpr psi = g_invariant_basis(kind, idx);
        bool fixed = !psi.empty() && psi.permuted(swap13()) == psi && psi.permuted(swap24()) == psi;
        fams.push_back({{"family", to_string(kind)}, {"terms", psi.terms().size()}, {"norm_squared", psi.norm_squared()}});
        c.check(to_string(kind) + " fixed by (13) and (24)", fixed, fixed, true);
    }
    KetExpr combo = g_invariant_basis(InvariantKind::kSym4, idx) + g_invariant_basis(InvariantKind::kShape22, idx) * 2;
    bool relation = g_invariant_basis(InvariantKind::kShape22Prime, idx) * 3 == combo;
    c.check("3 psi' = psi_sym4 + 2 psi_(2,2)", relation, relation, true);

    auto to_rows = [](const Eigen::MatrixXi& m) {
        std::vector<std::vector<int>> rows(m.rows(), std::vector<int>(m.cols()));
        for (Index i = 0; i < m.rows(); ++i) {
            for (Index j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
        }
        return rows;
    };
    auto v31 = tableau_vectors(Partition({3, 1}), idx);
    Eigen::MatrixXi m13(3, 3), m24(3, 3), want13(3, 3), want24(3, 3);
    want13 << 1, 0, 0, -1, -1, -1, 0, 0, 1;
    want24 << 0, 0, 1, 0, 1, 0, 1, 0, 0;
    m13 = representation_matrix(v31, swap13());
    m24 = representation_matrix(v31, swap24());
    c.payload["shape31"] = {{"swap13", to_rows(m13)}, {"swap24", to_rows(m24)}};
    c.check("(3,1) matrix of (13)", m13 == want13, to_rows(m13), to_rows(want13));
    c.check("(3,1) matrix of (24)", m24 == want24, to_rows(m24), to_rows(want24));
    auto v22 = tableau_vectors(Partition({2, 2}), idx);
    Eigen::MatrixXi want22(2, 2);
    want22 << -1, -1, 0, 1;
    Eigen::MatrixXi n13 = representation_matrix(v22, swap13()), n24 = representation_matrix(v22, swap24());
    c.payload["shape22"] = {{"swap13", to_rows(n13)}, {"swap24", to_rows(n24)}};
    c.check("(2,2) matrices of (13) and (24)", n13 == want22 && n24 == want22, to_rows(n13), to_rows(want22));
    c.payload["families"] = fams;
}

inline void fooling_search_experiment(ExperimentContext& c) {
    auto found = fooling_search(c.i("d"), c.i("restarts"), c.seed);
    nlohmann::json rows = nlohmann::json::array();
    int small = 0;
    bool valid = true;
    for (const auto& f : found) {
        rows.push_back({{"label", f.label},
                        {"support_dim", f.support_dim},
                        {"product_test_accept", f.product_test_accept},
                        {"verifier_accept", f.verifier_accept},
                        {"overlap_lower_bound", f.overlap_lower_bound}});
        if (f.support_dim >= 2 && f.support_dim <= 5) ++small;
        for (double p : {f.product_test_accept, f.verifier_accept, f.overlap_lower_bound}) {
            valid = valid && p >= -1e-12 && p <= 1.0 + 1e-12;
        }
    }
    c.payload["candidates"] = rows;
    c.payload["small_support_candidates"] = small;
    c.check("all reported probabilities lie in [0, 1]", valid, valid, true);
}

inline void haar_concentration(ExperimentContext& c) {
    auto rows = haar_concentration_trend(c.i("d"), c.list("dims"), c.i("subspaces"), c.i("samples"), c.seed);
    nlohmann::json out = nlohmann::json::array();
    std::ostringstream csv;
    csv.precision(17);
    csv << "s,mean_max_purity,mean_best_overlap\n";
    bool valid = true;
    for (const auto& r : rows) {
        out.push_back({{"s", r.s}, {"mean_max_purity", r.mean_max_purity}, {"mean_best_overlap", r.mean_best_overlap}});
        csv << r.s << "," << r.mean_max_purity << "," << r.mean_best_overlap << "\n";
        valid = valid && r.mean_max_purity > 0 && r.mean_max_purity <= 1 + 1e-12 && r.mean_best_overlap <= 1 + 1e-12;
    }
    c.payload["rows"] = out;
    c.tables["concentration"] = csv.str();
    c.check("purities and overlaps lie in (0, 1]", valid, valid, true);
}

inline void lu_invariants(ExperimentContext& c) {
    const int rotations = c.i("rotations");
    const std::vector<std::tuple<Permutation, Permutation, int>> cases{
        {Permutation::transposition(2, 0, 1), Permutation::identity(2), 2},
        {Permutation::from_cycles(3, {{1, 2, 3}}), Permutation::identity(3), 3},
        {Permutation::from_cycles(3, {{1, 2}}), Permutation::from_cycles(3, {{2, 3}}), 3}};
    nlohmann::json audits = nlohmann::json::array();
    for (int d : c.list("d")) {
        for (size_t ci = 0; ci < cases.size(); ++ci) {
            const auto& [sigma, tau, k] = cases[ci];
            SpectrumDependenceReport r =
                spectrum_dependence_audit(sigma, tau, k, d, rotations, Rng(c.seed).split(16 * d + ci)());
            std::string tag = "sigma=" + sigma.to_string() + " tau=" + tau.to_string() + " d=" + std::to_string(d);
            audits.push_back({{"sigma", sigma.to_string()},
                              {"tau", tau.to_string()},
                              {"k", k},
                              {"d", d},
                              {"max_rotation_deviation", r.max_rotation_deviation},
                              {"max_spectrum_deviation", r.max_spectrum_deviation}});
            c.check("invariant under g (x) h, " + tag, r.max_rotation_deviation <= 1e-9, r.max_rotation_deviation,
                    1e-9);
            c.check("depends only on the Schmidt spectrum, " + tag, r.max_spectrum_deviation <= 1e-9,
                    r.max_spectrum_deviation, 1e-9);
        }
        double worst = 0.0;
        Rng rng = Rng(c.seed).split(1000 + d);
        for (int t = 0; t < rotations; ++t) {
            StateVector psi = haar_state({d, d}, rng);
            Matrix rho = reduced_density(psi, {0});
            Complex got = lu_invariant(Permutation::transposition(2, 0, 1), Permutation::identity(2),
                                       psi.amplitudes() * psi.amplitudes().adjoint(), 2);
            worst = std::max(worst, std::abs(got - (rho * rho).trace()));
        }
        c.payload["swap_trick_max_error_d" + std::to_string(d)] = worst;
        c.check("swap trick gives Tr(rho^2), d=" + std::to_string(d), worst <= 1e-10, worst, 1e-10);
    }
    c.payload["audits"] = audits;
}

inline void recurrence_tester_experiment(ExperimentContext& c) {
    const int d = c.i("d"), t = c.i("t"), runs = c.i("runs");
    const double eps = c.f("epsilon");
    TesterHandle h = recurrence_tester_handle(t, eps);
    const std::int64_t budget = h.budget(d);
    int accepted = 0, rejected = 0, query_mismatches = 0;
    double no_exact = 0.0;
    Rng root(c.seed);
    for (int i = 0; i < runs; ++i) {
        Rng rng = root.split(static_cast<std::uint64_t>(i));
        std::vector<Complex> ev(d);
        for (auto& z : ev) z = std::polar(1.0, 2.0 * M_PI * static_cast<double>(rng() % t) / t);
        SpectrumOracle yes(ev, haar_unitary(d, rng));
        VerifierReport ry = recurrence_tester(yes, t, eps, rng());
        accepted += ry.decision == Decision::kAccept;

        std::vector<Complex> nev(d, Complex(1.0));
        nev[1] = Complex(0, 1);
        SpectrumOracle no(nev);
        VerifierReport rn = recurrence_tester(no, t, eps, rng());
        rejected += rn.decision == Decision::kReject;
        no_exact = rn.accept_probability;
        query_mismatches += (ry.queries_used != budget) + (rn.queries_used != budget);
    }
    c.payload["yes_accepted"] = accepted;
    c.payload["no_rejected"] = rejected;
    c.payload["runs"] = runs;
    c.payload["no_instance_accept_probability"] = no_exact;
    c.payload["queries_per_run"] = budget;
    c.check("yes instances accepted on every run", accepted == runs, accepted, runs);
    c.check("no instance diag(1, i, 1, ...) rejected on at least half the runs", 2 * rejected >= runs, rejected,
            (runs + 1) / 2);
    c.check("query count equals the declared budget", query_mismatches == 0, query_mismatches, 0);
}

inline void dimension_estimator_experiment(ExperimentContext& c) {
    const int d = c.i("d"), w = c.i("w"), trials = c.i("trials");
    std::vector<int> dims = c.list("s");
    for (int s : dims) {
        if (s > d || (s > w && s < 2 * w)) {
            throw ExperimentError("each s must be at most w or at least 2w, and at most d");
        }
    }
    Rng root(c.seed);
    nlohmann::json planes = nlohmann::json::array();
    for (int s : dims) {
        if (s == 0) continue;
        ReflectionOracle o(haar_subspace(d, s, root.split(static_cast<std::uint64_t>(s))()));
        RotationPlane plane = dimension_rotation_phases(o);
        double expected = 2.0 * std::asin(std::sqrt(static_cast<double>(s) / d));
        double err = plane.phases.size() == 2
                         ? std::max(std::abs(plane.phases[0] + expected), std::abs(plane.phases[1] - expected))
                         : std::numeric_limits<double>::infinity();
        planes.push_back({{"s", s}, {"phases", plane.phases}, {"expected", expected}, {"max_error", err}});
        c.check("eigenphases +-2 arcsin(sqrt(s/d)), s=" + std::to_string(s), err <= 1e-9, err, 1e-9);
    }
    int correct = 0, query_mismatches = 0;
    const int bits = recommended_dimension_bits(d, w);
    double mean_correct_probability = 0.0;
    for (int i = 0; i < trials; ++i) {
        const int s = dims[i % dims.size()];
        Rng rng = root.split(static_cast<std::uint64_t>(1000 + i));
        ReflectionOracle o = s == 0 ? ReflectionOracle(Subspace(d, Matrix(d, 0))) : ReflectionOracle(haar_subspace(d, s, rng));
        VerifierReport r = dimension_estimator(o, w, bits, rng());
        bool yes = s >= 2 * w;
        correct += r.decision == (yes ? Decision::kAccept : Decision::kReject);
        mean_correct_probability += yes ? r.accept_probability : 1.0 - r.accept_probability;
        query_mismatches += r.queries_used != (std::int64_t{1} << bits) - 1;
    }
    double accuracy = static_cast<double>(correct) / trials;
    c.payload["planes"] = planes;
    c.payload["bits"] = bits;
    c.payload["accuracy"] = accuracy;
    c.payload["mean_correct_probability"] = mean_correct_probability / trials;
    c.check("decision accuracy", accuracy >= 0.9, accuracy, 0.9);
    c.check("query count 2^bits - 1 per run", query_mismatches == 0, query_mismatches, 0);
}

inline nlohmann::json audit_json(const ConjugationAuditReport& r) {
    return {{"tester", r.tester}, {"exact", r.exact},     {"values", r.values},
            {"spread", r.spread}, {"tolerance", r.tolerance}, {"samples", r.samples},
            {"query_mismatches", r.query_mismatches}};
}

inline void polynomial_audits(ExperimentContext& c) {
    const int d = c.i("d");
    const int conjugations = c.i("conjugations");
    nlohmann::json fits = nlohmann::json::array();
    for (const TesterHandle& h :
         {entangled_membership_tester(), coin_flip_tester(0.25), eigenspace_overlap_tester(), grover_step_tester()}) {
        DimensionFit f = dimension_polynomial_fit(h, d);
        fits.push_back({{"tester", h.name},
                        {"degree", f.degree},
                        {"values", f.values},
                        {"coefficients", f.coefficients},
                        {"max_residual", f.max_residual}});
        c.tables["dimension_" + h.name] = f.to_csv();
        c.check("degree-" + std::to_string(f.degree) + " fit of " + h.name, f.pass, f.max_residual, 1e-8);
    }
    c.payload["dimension_fits"] = fits;

    nlohmann::json audits = nlohmann::json::array();
    std::vector<Complex> reflection(6, Complex(1.0));
    reflection[0] = reflection[1] = Complex(-1.0);
    ConjugationAuditReport a =
        conjugation_invariance_audit(entangled_membership_tester(), reflection, conjugations, 1, true, c.seed);
    audits.push_back(audit_json(a));
    c.check("membership spread across conjugations", a.pass, a.spread, a.tolerance);

    std::vector<Complex> rec{1.0, 1.0, Complex(0, 1), 1.0};
    ConjugationAuditReport b = conjugation_invariance_audit(recurrence_tester_handle(2, 0.5), rec, conjugations,
                                                            c.i("samples"), c.exact, c.seed + 1);
    audits.push_back(audit_json(b));
    c.check(std::string("recurrence tester ") + (c.exact ? "exact" : "sampled") + " spread across conjugations",
            b.pass, b.spread, b.tolerance);
    c.payload["conjugation_audits"] = audits;

    std::vector<double> ps{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<Complex> zs{Complex(-1.0), Complex(0, 1), Complex(0, -1), std::polar(1.0, 2 * M_PI / 3),
                            std::polar(1.0, -2 * M_PI / 3)};
    RecurrenceSurface s = recurrence_surface(recurrence_tester_handle(2, 0.5), 4, ps, zs, c.i("surface_trials"),
                                             c.seed + 2);
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : s.cells) {
        cells.push_back({{"p", cell.p},
                         {"z", {cell.z.real(), cell.z.imag()}},
                         {"r", cell.mean},
                         {"stderr", cell.standard_error}});
    }
    double worst_ratio = 0.0;
    for (const auto& pc : s.checks) worst_ratio = std::max(worst_ratio, pc.difference / pc.band);
    c.payload["surface"] = {{"trials", s.trials}, {"cells", cells}, {"pairs", s.checks.size()}};
    c.tables["surface"] = s.to_csv();
    c.check("r(p, z) = r(p, conj z) within 3 sigma (worst difference / band)", s.pass, worst_ratio, 1.0);
}

inline void entanglement_functionals(ExperimentContext& c) {
    const int states = c.i("states");
    Rng root(c.seed);
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < states; ++i) {
        Rng rng = root.split(static_cast<std::uint64_t>(i));
        const int d1 = 2 + static_cast<int>(rng() % 4), d2 = 2 + static_cast<int>(rng() % 4);
        StateVector psi = haar_state({d1, d2}, rng);
        EntanglementProfile p = entanglement_profile(psi, d1, d2);
        worst = std::max({worst, p.omega * p.omega - p.purity, p.purity - p.omega});
    }
    c.payload["states"] = states;
    c.payload["max_violation"] = worst;
    c.check("omega^2 <= purity <= omega", worst <= 1e-10, worst, 1e-10);
    const int dim = 8;
    double max_err = 0.0;
    nlohmann::json h2 = nlohmann::json::array();
    for (int r = 1; r <= dim; ++r) {
        Vector v = Vector::Zero(dim * dim);
        for (int i = 0; i < r; ++i) v(i * dim + i) = 1.0;
        double h = renyi2_entropy(StateVector::normalized(v, {dim, dim}), dim, dim);
        h2.push_back(h);
        max_err = std::max(max_err, std::abs(h - std::log2(static_cast<double>(r))));
    }
    c.payload["renyi2_max_entangled"] = h2;
    c.check("H2 of rank-r maximally entangled state equals log2 r", max_err <= 1e-12, max_err, 1e-12);
}

inline void symqma(ExperimentContext& c) {
    const int k = c.i("k"), trials = c.i("trials");
    Rng root(c.seed);
    double worst = 0.0, worst_product = 0.0;
    int mismatches = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = root.split(static_cast<std::uint64_t>(t));
        StateVector a = haar_state({2}, rng), b = haar_state({2}, rng);
        StateVector psi = haar_state({2, 2}, rng);
        Matrix basis(4, 2);
        basis << tensor_product(a, b).amplitudes(), psi.amplitudes();
        ReflectionOracle o(Subspace::span(4, basis));
        VerifierReport r = symqma_verifier(o, tensor_power(psi, k + 1), k);
        worst = std::max(worst, std::abs(r.accept_probability - h_k(schmidt_spectrum(psi, 2, 2), k)));
        VerifierReport rp = symqma_verifier(o, tensor_power(tensor_product(a, b), k + 1), k);
        worst_product = std::max(worst_product, std::abs(1.0 - rp.accept_probability));
        mismatches += (r.queries_used != 1) + (rp.queries_used != 1);
    }
    c.payload["max_h_k_error"] = worst;
    c.payload["max_product_deficit"] = worst_product;
    c.check("acceptance on psi^(k+1) with psi in S equals h_k", worst <= 1e-10, worst, 1e-10);
    c.check("product state in S accepted with certainty", worst_product <= 1e-10, worst_product, 1e-10);
    c.check("one query per run", mismatches == 0, mismatches, 0);
}

inline void weingarten_experiment(ExperimentContext& c) {
    nlohmann::json gram = nlohmann::json::array();
    for (int d : c.list("gram_d")) {
        for (int n = 1; n <= 4; ++n) {
            Rational res = gram_identity_residual(n, d);
            gram.push_back({{"n", n}, {"d", d}, {"residual", res.str()}});
            c.check("Gram identity exact, n=" + std::to_string(n) + " d=" + std::to_string(d), res == 0, res.str(),
                    "0");
        }
    }
    c.payload["gram"] = gram;
    nlohmann::json mc = nlohmann::json::array();
    for (int d : c.list("mc_d")) {
        Rng rng = Rng(c.seed).split(static_cast<std::uint64_t>(d));
        Matrix b = ginibre(d * d, d * d, rng);
        WeingartenAverageReport r = weingarten_average_check(b, 1, d, c.i("samples"), rng());
        mc.push_back({{"d", d}, {"samples", r.samples}, {"residual", r.residual}, {"band", r.band}});
        c.check("Haar average of g B g^dagger within 3 sigma, d=" + std::to_string(d), r.pass, r.residual, r.band);
    }
    c.payload["monte_carlo"] = mc;
}

inline void wrapped_verifier(ExperimentContext& c) {
    const int oracles = c.i("oracles"), proofs = c.i("proofs");
    Rng root(c.seed);
    double worst = -std::numeric_limits<double>::infinity();
    double closed_form = 0.0;
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < oracles; ++i) {
        Rng rng = root.split(static_cast<std::uint64_t>(i));
        StateVector psi = haar_state({2, 2}, rng);
        ReflectionOracle o(Subspace(4, Matrix(psi.amplitudes())));
        double best = wrapped_qma_verifier(o, tensor_power(psi, 2)).accept_probability;
        closed_form = std::max(closed_form, std::abs(best - h_k(schmidt_spectrum(psi, 2, 2), 2)));
        double max_other = 0.0;
        for (int j = 0; j < proofs; ++j) {
            max_other = std::max(max_other, wrapped_qma_verifier(o, haar_state({2, 2, 2, 2}, rng)).accept_probability);
        }
        worst = std::max(worst, max_other - best);
        rows.push_back({{"symmetric_proof", best}, {"max_random_proof", max_other}});
    }
    c.payload["oracles"] = rows;
    c.payload["max_excess"] = worst;
    c.check("random proofs never beat the symmetric proof", worst <= 1e-10, worst, 1e-10);
    c.check("symmetric proof acceptance equals h_2 of the Schmidt spectrum", closed_form <= 1e-10, closed_form, 1e-10);
}

}  // namespace experiments

/// All registered experiments, alphabetized by name.
inline const std::vector<Experiment>& registry() {
    static const std::vector<Experiment> all = [] {
        using P = ParamSpec;
        std::vector<Experiment> e{
            {"counterexample",
             "the symmetric pair subspace over four indices fools the product test verifier",
             3,
             "Product test verifier on the 24-term witness and the best product overlap of its subspace.",
             {P{"d", "int", "4", 4, 8, "local dimension"},
              P{"restarts", "int", "50", 1, 1000, "alternating-maximization restarts"},
              P{"iters", "int", "200", 1, 10000, "iterations per restart"}},
             experiments::counterexample},
            {"dimension-estimator",
             "the Grover rotation on the maximally entangled state has sin^2 theta = s/d",
             8,
             "Eigenphases of the rotation and decision accuracy of the dimension estimator.",
             {P{"d", "int", "16", 2, 32, "ambient dimension"},
              P{"w", "int", "2", 1, 16, "threshold: accept s >= 2w, reject s <= w"},
              P{"s", "int_list", "2,4", 0, 32, "subspace dimensions, alternated over trials"},
              P{"trials", "int", "100", 1, 10000, "estimator runs"}},
             experiments::dimension_estimator_experiment},
            {"entanglement-functionals",
             "the reduced purity lies between omega^2 and omega",
             10,
             "Purity bounds on random states and collision entropy of maximally entangled states.",
             {P{"states", "int", "500", 1, 100000, "random states"}},
             experiments::entanglement_functionals},
            {"fooling-basis",
             "G-invariant basis states built from Young symmetrizers on four tensor factors",
             4,
             "Exact invariance under (13) and (24) and the integer representation matrices.",
             {},
             experiments::fooling_basis},
            {"fooling-search",
             "searching for witnesses that fool the verifier with small support",
             0,
             "Enumerates basis-family witnesses and reports support dimension and acceptance.",
             {P{"d", "int", "4", 4, 5, "local dimension"},
              P{"restarts", "int", "5", 1, 100, "restarts for the product overlap bound"}},
             experiments::fooling_search_experiment},
            {"haar-concentration",
             "entanglement of random subspaces as their dimension grows",
             0,
             "Mean best purity and product overlap of Haar-random subspaces by dimension.",
             {P{"d", "int", "3", 2, 6, "local dimension"},
              P{"dims", "int_list", "1,2,4,6", 1, 36, "subspace dimensions"},
              P{"subspaces", "int", "5", 1, 1000, "subspaces per dimension"},
              P{"samples", "int", "50", 1, 10000, "states per subspace"}},
             experiments::haar_concentration},
            {"lu-invariants",
             "local-unitary invariants are symmetric polynomials in the Schmidt spectrum",
             6,
             "Invariance under local rotations and the swap-trick identity for the purity.",
             {P{"d", "int_list", "2,3", 2, 4, "local dimensions"},
              P{"rotations", "int", "20", 1, 1000, "random states and rotations"}},
             experiments::lu_invariants},
            {"polynomial-audits",
             "acceptance of a T-query tester is a degree-2T polynomial depending only on the spectrum",
             9,
             "Dimension polynomial fits, conjugation invariance and the recurrence surface r(p, z).",
             {P{"d", "int", "12", 1, 32, "dimension for the polynomial fit"},
              P{"conjugations", "int", "20", 1, 1000, "Haar conjugations per audit"},
              P{"samples", "int", "100", 1, 10000, "runs per conjugation in sampled mode"},
              P{"surface_trials", "int", "100", 2, 10000, "instances per surface cell"}},
             experiments::polynomial_audits},
            {"product-test-bounds",
             "product test acceptance is bounded in terms of the largest Schmidt coefficient",
             2,
             "Lower and upper bounds on the k-copy product test acceptance.",
             {P{"d", "int_list", "2,3,4", 2, 4, "local dimensions"},
              P{"k", "int_list", "2,3,4", 2, 4, "copies"},
              P{"trials", "int", "100", 1, 10000, "Haar states per (d, k)"}},
             experiments::product_test_bounds},
            {"product-test-exactness",
             "product test acceptance on k copies equals h_k of the Schmidt spectrum",
             1,
             "Simulated k-copy product test against the complete homogeneous polynomial h_k.",
             {P{"d", "int_list", "2,3,4", 2, 4, "local dimensions"},
              P{"k", "int_list", "2,3,4", 2, 4, "copies"},
              P{"trials", "int", "100", 1, 10000, "Haar states per (d, k)"},
              P{"shots", "int", "1000", 1, 1000000, "measurement draws per state in sampled mode"}},
             experiments::product_test_exactness},
            {"recurrence-tester",
             "phase estimation with amplitude amplification tests whether U^t = I",
             7,
             "Decisions on random yes instances and on the no instance diag(1, i, 1, ...).",
             {P{"d", "int", "4", 2, 8, "dimension"},
              P{"t", "int", "2", 1, 8, "recurrence time"},
              P{"epsilon", "double", "0.5", 0.01, 2.0, "distance parameter"},
              P{"runs", "int", "200", 1, 10000, "seeded runs per instance type"}},
             experiments::recurrence_tester_experiment},
            {"symqma-verifier",
             "k-copy product test followed by membership on one more copy",
             0,
             "Closed-form acceptance of the symmetric-proof verifier.",
             {P{"k", "int", "2", 1, 3, "copies for the product test"},
              P{"trials", "int", "20", 1, 1000, "random instances"}},
             experiments::symqma},
            {"weingarten",
             "Weingarten calculus for Haar integrals over the unitary group",
             5,
             "Exact Gram identity in rationals and a Monte Carlo check of the averaging formula.",
             {P{"gram_d", "int_list", "4,5,6", 4, 8, "dimensions for the Gram identity, n <= 4"},
              P{"mc_d", "int_list", "2,3", 2, 4, "dimensions for the Monte Carlo check, k = 1"},
              P{"samples", "int", "100000", 2, 10000000, "Haar samples"}},
             experiments::weingarten_experiment},
            {"wrapped-verifier",
             "the wrapped verifier is maximized by the symmetric proof",
             11,
             "Random two-copy proofs against the symmetric proof for rank-1 oracles on C^2 (x) C^2.",
             {P{"oracles", "int", "10", 1, 1000, "random rank-1 oracles"},
              P{"proofs", "int", "100", 1, 100000, "random proofs per oracle"}},
             experiments::wrapped_verifier},
        };
        std::sort(e.begin(), e.end(), [](const Experiment& a, const Experiment& b) { return a.name < b.name; });
        return e;
    }();
    return all;
}

inline const Experiment& find_experiment(const std::string& name) {
    for (const auto& e : registry()) {
        if (e.name == name) return e;
    }
    throw ExperimentError("unknown experiment: " + name);
}

namespace detail {

inline double parse_number(const ParamSpec& spec, const std::string& text) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw ExperimentError("parameter " + spec.name + " expects a number, got '" + text + "'");
    }
    if (spec.type != "double" && v != std::floor(v)) {
        throw ExperimentError("parameter " + spec.name + " expects an integer, got '" + text + "'");
    }
    if (v < spec.min || v > spec.max) {
        std::ostringstream os;
        os << "parameter " << spec.name << " = " << text << " outside [" << spec.min << ", " << spec.max << "]";
        throw ExperimentError(os.str());
    }
    return v;
}

inline nlohmann::json parse_param(const ParamSpec& spec, const std::string& text) {
    if (spec.type == "int") return static_cast<int>(parse_number(spec, text));
    if (spec.type == "double") return parse_number(spec, text);
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(static_cast<int>(parse_number(spec, item)));
    if (out.empty()) {
        throw ExperimentError("parameter " + spec.name + " expects a nonempty list");
    }
    return out;
}

}  // namespace detail

struct ExperimentDescriptor {
    std::string name;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;
    bool exact = true;
};

/// Validates the descriptor against the experiment's schema.
inline ExperimentContext prepare(const Experiment& e, const ExperimentDescriptor& desc) {
    ExperimentContext c;
    c.seed = desc.seed;
    c.exact = desc.exact;
    c.anchor = e.anchor;
    for (const auto& [key, value] : desc.params) {
        bool known = std::any_of(e.params.begin(), e.params.end(), [&](const ParamSpec& s) { return s.name == key; });
        if (!known) {
            throw ExperimentError("experiment " + e.name + " has no parameter " + key);
        }
    }
    for (const auto& spec : e.params) {
        auto it = desc.params.find(spec.name);
        c.params[spec.name] = detail::parse_param(spec, it == desc.params.end() ? spec.default_value : it->second);
    }
    return c;
}

/// Runs one experiment. The report's numeric payload depends only on the
/// descriptor; runtime_seconds sits outside it.
inline nlohmann::json run_experiment(const ExperimentDescriptor& desc,
                                     std::map<std::string, std::string>* tables = nullptr) {
    const Experiment& e = find_experiment(desc.name);
    ExperimentContext c = prepare(e, desc);
    auto start = std::chrono::steady_clock::now();
    try {
        e.run(c);
    } catch (const ExperimentError&) {
        throw;
    } catch (const std::invalid_argument& ex) {
        throw ExperimentError(ex.what());
    } catch (const std::domain_error& ex) {
        throw ExperimentError(ex.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    nlohmann::json checks = nlohmann::json::array();
    bool pass = true;
    for (const auto& ch : c.checks) {
        checks.push_back(ch.to_json());
        pass = pass && ch.pass;
    }
    if (tables) *tables = c.tables;
    return {{"schema", kReportSchema},
            {"experiment", e.name},
            {"anchor", e.anchor},
            {"criterion", e.criterion},
            {"params", c.params},
            {"seed", desc.seed},
            {"mode", desc.exact ? "exact" : "sampled"},
            {"version",
             {{"upt", kVersion},
              {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION)},
              {"boost", BOOST_LIB_VERSION}}},
            {"checks", checks},
            {"payload", c.payload},
            {"pass", pass},
            {"runtime_seconds", seconds}};
}

}  // namespace upt

#endif
