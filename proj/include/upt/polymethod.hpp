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


#ifndef UPT_POLYMETHOD_HPP
#define UPT_POLYMETHOD_HPP

#include <sstream>

#include "upt/core/haar.hpp"
#include "upt/testers.hpp"

namespace upt {

/// A tester that touches the unitary only through the oracle interface.
struct TesterHandle {
    std::string name;
    int max_queries = 0;                          // T, used for polynomial degree 2T
    std::function<std::int64_t(int)> budget;      // exact query count at a given oracle dimension
    std::function<VerifierReport(UnitaryOracle&, std::uint64_t)> run;
};

namespace detail {

/// Both branches of |+>, controlled-U on all of v, H: (v + Uv)/2 and (v - Uv)/2.
inline std::pair<Vector, Vector> hadamard_test_branches(UnitaryOracle& o, const Vector& v) {
    Shape shape{2, static_cast<int>(v.size())};
    Vector plus(2 * v.size());
    plus << v * M_SQRT1_2, v * M_SQRT1_2;
    std::vector<int> t{1};
    Vector after = apply_controlled(o, plus, shape, 0, t);
    Vector zero = (after.head(v.size()) + after.tail(v.size())) * M_SQRT1_2;
    Vector one = (after.head(v.size()) - after.tail(v.size())) * M_SQRT1_2;
    return {zero, one};
}

inline Vector uniform_state(int d) { return Vector::Constant(d, Complex(1.0 / std::sqrt(static_cast<double>(d)))); }

inline VerifierReport exact_report(const std::string& name, double p, std::int64_t queries) {
    VerifierReport r;
    r.tester = name;
    r.accept_probability = p;
    r.queries_used = queries;
    r.decision = majority(p);
    return r;
}

}  // namespace detail

/// Membership test on the first half of the maximally entangled state:
/// accepts with probability dim(S)/d. One query.
inline TesterHandle entangled_membership_tester() {
    TesterHandle h;
    h.name = "entangled_membership";
    h.max_queries = 1;
    h.budget = [](int) { return std::int64_t{1}; };
    h.run = [](UnitaryOracle& o, std::uint64_t) {
        std::int64_t before = o.queries();
        StateVector phi = maximally_entangled(o.dim());
        std::vector<int> first{0};
        double p = detail::membership_branch(o, phi.amplitudes(), phi.shape(), first).squaredNorm();
        return detail::exact_report("entangled_membership", p, o.queries() - before);
    };
    return h;
}

/// Accepts with fixed probability c and never queries.
inline TesterHandle coin_flip_tester(double c) {
    if (c < 0.0 || c > 1.0) {
        throw std::invalid_argument("coin bias must lie in [0, 1]");
    }
    TesterHandle h;
    h.name = "coin_flip";
    h.max_queries = 0;
    h.budget = [](int) { return std::int64_t{0}; };
    h.run = [c](UnitaryOracle&, std::uint64_t) { return detail::exact_report("coin_flip", c, 0); };
    return h;
}

/// Hadamard test on the uniform superposition, accepting on the +1
/// eigenspace outcome: ||(I + U)/2 |u>||^2. One query.
inline TesterHandle eigenspace_overlap_tester() {
    TesterHandle h;
    h.name = "eigenspace_overlap";
    h.max_queries = 1;
    h.budget = [](int) { return std::int64_t{1}; };
    h.run = [](UnitaryOracle& o, std::uint64_t) {
        std::int64_t before = o.queries();
        auto [zero, one] = detail::hadamard_test_branches(o, detail::uniform_state(o.dim()));
        return detail::exact_report("eigenspace_overlap", zero.squaredNorm(), o.queries() - before);
    };
    return h;
}

/// One Grover step from the uniform superposition, (2|u><u| - I) U |u>,
/// followed by a membership test. Two queries.
inline TesterHandle grover_step_tester() {
    TesterHandle h;
    h.name = "grover_step";
    h.max_queries = 2;
    h.budget = [](int) { return std::int64_t{2}; };
    h.run = [](UnitaryOracle& o, std::uint64_t) {
        std::int64_t before = o.queries();
        Vector u = detail::uniform_state(o.dim());
        Vector v = o.apply(u);
        v = 2.0 * u * u.dot(v) - v;
        auto [zero, one] = detail::hadamard_test_branches(o, v);
        return detail::exact_report("grover_step", one.squaredNorm(), o.queries() - before);
    };
    return h;
}

/// The recurrence tester with default bits and schedule. Its report carries
/// the exact acceptance probability and a sampled decision.
inline TesterHandle recurrence_tester_handle(int t, double epsilon) {
    TesterHandle h;
    h.name = "recurrence_tester";
    int bits = recommended_phase_bits(t, epsilon);
    h.max_queries = -1;
    h.budget = [bits](int d) {
        std::int64_t per = (std::int64_t{1} << bits) - 1;
        std::int64_t total = 0;
        for (int k : default_grover_schedule(d)) total += (1 + 2 * k) * per;
        return total;
    };
    h.run = [t, epsilon](UnitaryOracle& o, std::uint64_t seed) { return recurrence_tester(o, t, epsilon, seed); };
    return h;
}

struct ConjugationAuditReport {
    std::string tester;
    bool exact = true;
    std::vector<double> values;  // per conjugation: exact probability or accept frequency
    double spread = 0.0;         // max - min of values
    double tolerance = 0.0;      // 1e-9 (exact) or the 3 sigma band (sampled)
    int samples = 0;             // runs per conjugation in sampled mode
    int query_mismatches = 0;    // runs whose query count differs from the declared budget
    bool pass = false;
};

/// Runs the tester on V diag(spectrum) V^dagger for Haar V. In exact mode the
/// acceptance probabilities must agree to 1e-9; in sampled mode each
/// conjugation's accept frequency over `samples` runs must lie within 3 sigma
/// of the pooled frequency.
inline ConjugationAuditReport conjugation_invariance_audit(const TesterHandle& h, const std::vector<Complex>& spectrum,
                                                           int conjugations, int samples, bool exact,
                                                           std::uint64_t seed) {
    if (conjugations < 1 || (!exact && samples < 1)) {
        throw std::invalid_argument("audit needs at least one conjugation and one sample");
    }
    ConjugationAuditReport r;
    r.tester = h.name;
    r.exact = exact;
    r.samples = exact ? 1 : samples;
    const int d = static_cast<int>(spectrum.size());
    Rng root(seed);
    for (int i = 0; i < conjugations; ++i) {
        Rng rng = root.split(static_cast<std::uint64_t>(i));
        SpectrumOracle o(spectrum, haar_unitary(d, rng));
        double value = 0.0;
        for (int s = 0; s < r.samples; ++s) {
            std::int64_t before = o.queries();
            VerifierReport rep = h.run(o, rng.split(static_cast<std::uint64_t>(s))());
            if (rep.queries_used != o.queries() - before || rep.queries_used != h.budget(d)) ++r.query_mismatches;
            value += exact ? rep.accept_probability : (rep.decision == Decision::kAccept ? 1.0 : 0.0);
        }
        r.values.push_back(value / r.samples);
    }
    auto [lo, hi] = std::minmax_element(r.values.begin(), r.values.end());
    r.spread = *hi - *lo;
    if (exact) {
        r.tolerance = 1e-9;
        r.pass = r.spread <= r.tolerance;
    } else {
        double mean = std::accumulate(r.values.begin(), r.values.end(), 0.0) / r.values.size();
        r.tolerance = 3.0 * std::sqrt(mean * (1.0 - mean) / samples) + 1e-12;
        r.pass = true;
        for (double v : r.values) r.pass = r.pass && std::abs(v - mean) <= r.tolerance;
    }
    r.pass = r.pass && r.query_mismatches == 0;
    return r;
}

struct DimensionFit {
    std::string tester;
    int d = 0;
    int degree = 0;
    std::vector<double> values;        // p(k), k = 0..d
    std::vector<double> coefficients;  // in powers of x = k/d, constant term first
    double max_residual = 0.0;
    int query_mismatches = 0;
    bool pass = false;

    std::string to_csv() const {
        std::ostringstream os;
        os.precision(17);
        os << "k,p\n";
        for (size_t k = 0; k < values.size(); ++k) os << k << "," << values[k] << "\n";
        return os.str();
    }
};

/// Exact acceptance on the reflections about span{e_0..e_{k-1}}, k = 0..d,
/// least-squares fitted by a polynomial of degree 2T in k/d.
inline DimensionFit dimension_polynomial_fit(const TesterHandle& h, int d) {
    if (h.max_queries < 0) {
        throw std::invalid_argument("dimension fit needs a tester with a fixed query budget");
    }
    if (d < 1) {
        throw std::invalid_argument("dimension must be positive");
    }
    DimensionFit f;
    f.tester = h.name;
    f.d = d;
    f.degree = std::min(2 * h.max_queries, d);
    for (int k = 0; k <= d; ++k) {
        ReflectionOracle o(Subspace(d, Matrix::Identity(d, d).leftCols(k)));
        VerifierReport rep = h.run(o, static_cast<std::uint64_t>(k));
        if (rep.queries_used != o.queries() || rep.queries_used != h.budget(d)) ++f.query_mismatches;
        f.values.push_back(rep.accept_probability);
    }
    Eigen::MatrixXd a(d + 1, f.degree + 1);
    Eigen::VectorXd y(d + 1);
    for (int k = 0; k <= d; ++k) {
        double x = static_cast<double>(k) / d;
        for (int j = 0; j <= f.degree; ++j) a(k, j) = std::pow(x, j);
        y(k) = f.values[k];
    }
    Eigen::VectorXd c = a.colPivHouseholderQr().solve(y);
    f.coefficients.assign(c.data(), c.data() + c.size());
    f.max_residual = (a * c - y).cwiseAbs().maxCoeff();
    f.pass = f.max_residual <= 1e-8 && f.query_mismatches == 0;
    return f;
}

struct SurfaceCell {
    double p = 0.0;
    Complex z;
    double mean = 0.0;
    double standard_error = 0.0;
};

struct SurfacePairCheck {
    size_t a = 0, b = 0;  // indices into cells with z_b = conj(z_a)
    double difference = 0.0;
    double band = 0.0;
    bool pass = false;
};

struct RecurrenceSurface {
    std::string tester;
    int d = 0;
    int trials = 0;
    std::vector<SurfaceCell> cells;  // row-major over (p, z)
    std::vector<SurfacePairCheck> checks;
    bool pass = false;

    std::string to_csv() const {
        std::ostringstream os;
        os.precision(17);
        os << "p,z_re,z_im,r,stderr\n";
        for (const auto& c : cells) {
            os << c.p << "," << c.z.real() << "," << c.z.imag() << "," << c.mean << "," << c.standard_error << "\n";
        }
        return os.str();
    }
};

/// Monte Carlo estimate of r(p, z) = E over diagonal instances (each entry z
/// with probability p, else 1) of the tester's exact acceptance probability.
/// Cells use independent seed streams. Conjugate cells (p, z), (p, z*) must
/// agree within 3 sigma of their difference.
inline RecurrenceSurface recurrence_surface(const TesterHandle& h, int d, const std::vector<double>& p_grid,
                                            const std::vector<Complex>& z_grid, int trials, std::uint64_t seed) {
    if (trials < 2) {
        throw std::invalid_argument("surface needs at least two trials per cell");
    }
    RecurrenceSurface s;
    s.tester = h.name;
    s.d = d;
    s.trials = trials;
    Rng root(seed);
    for (size_t i = 0; i < p_grid.size(); ++i) {
        for (size_t j = 0; j < z_grid.size(); ++j) {
            Rng cell = root.split(i * z_grid.size() + j);
            SurfaceCell c;
            c.p = p_grid[i];
            c.z = z_grid[j];
            double sum = 0.0, sumsq = 0.0;
            for (int t = 0; t < trials; ++t) {
                Rng tr = cell.split(static_cast<std::uint64_t>(t));
                SpectrumOracle o = sample_recurrence_instance(d, c.p, c.z, tr());
                double v = h.run(o, tr()).accept_probability;
                sum += v;
                sumsq += v * v;
            }
            c.mean = sum / trials;
            double var = std::max(0.0, (sumsq - trials * c.mean * c.mean) / (trials - 1));
            c.standard_error = std::sqrt(var / trials);
            s.cells.push_back(c);
        }
    }
    const size_t nz = z_grid.size();
    s.pass = true;
    for (size_t i = 0; i < p_grid.size(); ++i) {
        for (size_t j = 0; j < nz; ++j) {
            for (size_t k = j + 1; k < nz; ++k) {
                if (std::abs(z_grid[k] - std::conj(z_grid[j])) > 1e-12) continue;
                const SurfaceCell& a = s.cells[i * nz + j];
                const SurfaceCell& b = s.cells[i * nz + k];
                SurfacePairCheck pc;
                pc.a = i * nz + j;
                pc.b = i * nz + k;
                pc.difference = std::abs(a.mean - b.mean);
                pc.band = 3.0 * std::hypot(a.standard_error, b.standard_error) + 1e-9;
                pc.pass = pc.difference <= pc.band;
                s.pass = s.pass && pc.pass;
                s.checks.push_back(pc);
            }
        }
    }
    return s;
}

}  // namespace upt

#endif
