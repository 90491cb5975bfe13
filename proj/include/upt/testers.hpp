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


#ifndef UPT_TESTERS_HPP
#define UPT_TESTERS_HPP

#include <functional>
#include <json.hpp>
#include <numbers>

#include "upt/oracles.hpp"

namespace upt {

enum class Decision { kAccept, kReject, kNone };

inline std::string to_string(Decision d) {
    switch (d) {
        case Decision::kAccept:
            return "accept";
        case Decision::kReject:
            return "reject";
        default:
            return "none";
    }
}

/// Outcome of a tester or verifier run. Exact reports carry
/// standard_error = 0 and trials = 0.
struct VerifierReport {
    std::string tester;
    nlohmann::json params = nlohmann::json::object();
    double accept_probability = 0.0;
    double standard_error = 0.0;
    bool exact = true;
    std::int64_t queries_used = 0;
    Decision decision = Decision::kNone;
    std::uint64_t seed = 0;
    int trials = 0;
    nlohmann::json details = nlohmann::json::object();

    nlohmann::json to_json() const {
        nlohmann::json j{{"tester", tester},
                         {"params", params},
                         {"seed", seed},
                         {"trials", trials},
                         {"accept_probability", accept_probability},
                         {"stderr", standard_error},
                         {"exact", exact},
                         {"queries_used", queries_used},
                         {"decision", to_string(decision)}};
        if (!details.empty()) j["details"] = details;
        return j;
    }
};

/// Re-estimates an exact report by `trials` seeded Bernoulli draws of the
/// final measurement.
inline VerifierReport sampled(const VerifierReport& exact, int trials, std::uint64_t seed) {
    if (trials < 1) {
        throw std::invalid_argument("sampled mode needs at least one trial");
    }
    Rng root(seed);
    double p = std::clamp(exact.accept_probability, 0.0, 1.0);
    int accepts = 0;
    for (int i = 0; i < trials; ++i) {
        Rng r = root.split(static_cast<std::uint64_t>(i));
        if (r.bernoulli(p)) ++accepts;
    }
    VerifierReport out = exact;
    out.exact = false;
    out.trials = trials;
    out.seed = seed;
    out.accept_probability = static_cast<double>(accepts) / trials;
    double q = out.accept_probability;
    out.standard_error = std::sqrt(std::max(q * (1 - q), 0.0) / trials);
    out.decision = q >= 0.5 ? Decision::kAccept : Decision::kReject;
    return out;
}

namespace detail {

inline Decision majority(double p) { return p >= 0.5 ? Decision::kAccept : Decision::kReject; }

inline void check_uniform_shape(const Shape& shape, int registers, int d, const char* what) {
    if (static_cast<int>(shape.size()) != registers) {
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(registers) + " registers");
    }
    for (int r : shape) {
        if (r != d) {
            throw std::invalid_argument(std::string(what) + ": every register must have dimension " +
                                        std::to_string(d));
        }
    }
}

inline int local_dim_of(const UnitaryOracle& o) {
    int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(o.dim()))));
    if (d * d != o.dim()) {
        throw std::invalid_argument("oracle must act on C^d (x) C^d");
    }
    return d;
}

/// Ancilla-1 branch of the membership circuit (|+>, controlled-U, H) acting
/// on `targets`; for U = I - 2 Pi this is Pi v. One query.
inline Vector membership_branch(UnitaryOracle& o, const Vector& v, const Shape& shape, std::span<const int> targets) {
    Shape ext = concat_shapes({2}, shape);
    Vector plus = Vector::Zero(2 * v.size());
    plus.head(v.size()) = v * M_SQRT1_2;
    plus.tail(v.size()) = v * M_SQRT1_2;
    std::vector<int> shifted;
    for (int t : targets) shifted.push_back(t + 1);
    Vector after = apply_controlled(o, plus, ext, 0, shifted);
    // Hadamard on the ancilla, keep the |1> component
    return (after.head(v.size()) - after.tail(v.size())) * M_SQRT1_2;
}

/// Product-test projector (Sym on A registers) (Sym on B registers) for a
/// register layout A1 B1 A2 B2 ... restricted to the first 2k registers.
inline Vector product_projection(const Vector& v, const Shape& shape, int k) {
    std::vector<int> a, b;
    for (int i = 0; i < k; ++i) {
        a.push_back(2 * i);
        b.push_back(2 * i + 1);
    }
    return symmetrize_registers(symmetrize_registers(v, shape, a), shape, b);
}

}  // namespace detail

/// Subspace membership test: accepts with probability ||Pi proof||^2.
inline VerifierReport membership_test(UnitaryOracle& o, const StateVector& proof) {
    if (proof.size() != o.dim()) {
        throw std::invalid_argument("proof dimension does not match the oracle");
    }
    std::int64_t before = o.queries();
    Shape flat{static_cast<int>(proof.size())};
    std::vector<int> targets{0};
    Vector branch = detail::membership_branch(o, proof.amplitudes(), flat, targets);
    VerifierReport r;
    r.tester = "membership_test";
    r.params = {{"dim", o.dim()}};
    r.accept_probability = branch.squaredNorm();
    r.queries_used = o.queries() - before;
    r.decision = detail::majority(r.accept_probability);
    return r;
}

/// Accepts with probability <joint|(I + SWAP)/2|joint>.
inline VerifierReport swap_test(const StateVector& joint) {
    if (joint.num_registers() != 2 || joint.shape()[0] != joint.shape()[1]) {
        throw std::invalid_argument("swap test needs two registers of equal dimension");
    }
    Vector swapped = permute_registers(joint.amplitudes(), joint.shape(), Permutation::transposition(2, 0, 1));
    VerifierReport r;
    r.tester = "swap_test";
    r.params = {{"d", joint.shape()[0]}};
    r.accept_probability = 0.5 * (1.0 + joint.amplitudes().dot(swapped).real());
    r.decision = detail::majority(r.accept_probability);
    return r;
}

/// k-copy product test on registers A1 B1 ... Ak Bk, each of dimension d.
inline VerifierReport product_test(const StateVector& input, int k, int d) {
    if (k < 1) {
        throw std::invalid_argument("product test needs k >= 1");
    }
    detail::check_uniform_shape(input.shape(), 2 * k, d, "product_test");
    VerifierReport r;
    r.tester = "product_test";
    r.params = {{"k", k}, {"d", d}};
    r.accept_probability = detail::product_projection(input.amplitudes(), input.shape(), k).squaredNorm();
    r.decision = detail::majority(r.accept_probability);
    return r;
}

/// Membership on (A1 B1) and (A2 B2), then the 2-copy product test.
inline VerifierReport product_test_verifier(UnitaryOracle& o, const StateVector& proof) {
    int d = detail::local_dim_of(o);
    detail::check_uniform_shape(proof.shape(), 4, d, "product_test_verifier");
    std::int64_t before = o.queries();
    std::vector<int> first{0, 1}, second{2, 3};
    Vector v = detail::membership_branch(o, proof.amplitudes(), proof.shape(), first);
    v = detail::membership_branch(o, v, proof.shape(), second);
    v = detail::product_projection(v, proof.shape(), 2);
    VerifierReport r;
    r.tester = "product_test_verifier";
    r.params = {{"d", d}};
    r.accept_probability = v.squaredNorm();
    r.queries_used = o.queries() - before;
    r.decision = detail::majority(r.accept_probability);
    return r;
}

/// k-copy product test on copies 1..k and membership on copy k+1.
inline VerifierReport symqma_verifier(UnitaryOracle& o, const StateVector& proof, int k) {
    if (k < 1) {
        throw std::invalid_argument("symqma verifier needs k >= 1");
    }
    int d = detail::local_dim_of(o);
    detail::check_uniform_shape(proof.shape(), 2 * (k + 1), d, "symqma_verifier");
    std::int64_t before = o.queries();
    std::vector<int> last{2 * k, 2 * k + 1};
    Vector v = detail::product_projection(proof.amplitudes(), proof.shape(), k);
    v = detail::membership_branch(o, v, proof.shape(), last);
    VerifierReport r;
    r.tester = "symqma_verifier";
    r.params = {{"d", d}, {"k", k}};
    r.accept_probability = v.squaredNorm();
    r.queries_used = o.queries() - before;
    r.decision = detail::majority(r.accept_probability);
    return r;
}

using InnerVerifier = std::function<VerifierReport(const StateVector&)>;

/// Membership tests for |psi> on both halves of the proof, then `inner` on
/// the post-selected state. The oracle must reflect about a single state.
inline VerifierReport wrapped_qma_verifier(ReflectionOracle& o, const StateVector& proof, const InnerVerifier& inner) {
    if (o.subspace().dim() != 1) {
        throw std::invalid_argument("wrapped verifier needs a rank-1 reflection oracle");
    }
    int d = detail::local_dim_of(o);
    detail::check_uniform_shape(proof.shape(), 4, d, "wrapped_qma_verifier");
    std::int64_t before = o.queries();
    std::vector<int> first{0, 1}, second{2, 3};
    Vector v = detail::membership_branch(o, proof.amplitudes(), proof.shape(), first);
    v = detail::membership_branch(o, v, proof.shape(), second);
    double pass = v.squaredNorm();

    VerifierReport r;
    r.tester = "wrapped_qma_verifier";
    r.params = {{"d", d}};
    r.details["membership_probability"] = pass;
    if (pass > 1e-24) {
        VerifierReport in = inner(StateVector::normalized(v, proof.shape()));
        r.accept_probability = pass * in.accept_probability;
        r.details["inner"] = in.to_json();
        r.queries_used = o.queries() - before + in.queries_used;
    } else {
        r.accept_probability = 0.0;
        r.queries_used = o.queries() - before;
    }
    r.decision = detail::majority(r.accept_probability);
    return r;
}

inline VerifierReport wrapped_qma_verifier(ReflectionOracle& o, const StateVector& proof) {
    int d = detail::local_dim_of(o);
    return wrapped_qma_verifier(o, proof, [d](const StateVector& s) { return product_test(s, 2, d); });
}

/// Joint state and outcome distribution of textbook phase estimation.
struct PhaseEstimate {
    int bits = 0;
    std::vector<double> distribution;  // p(x), estimate phi = x / 2^bits
    Vector joint;                      // phase register (most significant) then input registers
    Shape joint_shape;
    std::int64_t queries_used = 0;

    double estimate(int x) const { return static_cast<double>(x) / static_cast<double>(distribution.size()); }
    int mode() const {
        return static_cast<int>(std::max_element(distribution.begin(), distribution.end()) - distribution.begin());
    }
};

/// Phase estimation of U acting on `targets` of the input, with `bits`
/// phase qubits. Eigenvalue e^{2 pi i phi} maps to outcome x ~ phi 2^bits.
/// Controlled powers U^{2^j} come from repeated squaring and are charged
/// 2^j queries each, 2^bits - 1 in total.
inline PhaseEstimate phase_estimate(UnitaryOracle& o, const StateVector& input, int bits,
                                    std::span<const int> targets) {
    if (bits < 1 || bits > 20) {
        throw std::invalid_argument("phase estimation needs 1 <= bits <= 20");
    }
    detail::check_registers(input.shape(), targets);
    if (registers_dim(input.shape(), targets) != o.dim()) {
        throw std::invalid_argument("input registers do not match the oracle dimension");
    }
    const Index m = Index{1} << bits;
    const Index n = input.size();
    bool whole = static_cast<int>(targets.size()) == input.num_registers();
    for (size_t i = 0; whole && i < targets.size(); ++i) whole = targets[i] == static_cast<int>(i);

    // rows: phase register value k; after the controlled powers row k holds U^k |input>
    Matrix rows(m, n);
    Eigen::RowVectorXcd first = input.amplitudes().transpose() / std::sqrt(static_cast<double>(m));
    for (Index k = 0; k < m; ++k) rows.row(k) = first;

    std::int64_t before = o.queries();
    Matrix power = o.matrix();
    for (int j = 0; j < bits; ++j) {
        const Index bit = Index{1} << j;
        std::vector<Index> sel;
        for (Index k = 0; k < m; ++k) {
            if (k & bit) sel.push_back(k);
        }
        if (whole) {
            Matrix block(n, static_cast<Index>(sel.size()));
            for (size_t c = 0; c < sel.size(); ++c) block.col(c) = rows.row(sel[c]).transpose();
            block = power * block;
            for (size_t c = 0; c < sel.size(); ++c) rows.row(sel[c]) = block.col(c).transpose();
        } else {
            for (Index k : sel) {
                Vector r = rows.row(k).transpose();
                rows.row(k) = apply_on_registers(r, input.shape(), power, targets).transpose();
            }
        }
        o.charge(static_cast<std::int64_t>(bit));
        if (j + 1 < bits) power = power * power;
    }

    // inverse Fourier transform on the phase register
    Matrix finv(m, m);
    const double two_pi = 2.0 * std::numbers::pi;
    for (Index x = 0; x < m; ++x) {
        for (Index k = 0; k < m; ++k) {
            double ang = -two_pi * static_cast<double>((x * k) % m) / static_cast<double>(m);
            finv(x, k) = std::polar(1.0 / std::sqrt(static_cast<double>(m)), ang);
        }
    }
    Matrix out = finv * rows;

    PhaseEstimate pe;
    pe.bits = bits;
    pe.distribution.resize(m);
    for (Index x = 0; x < m; ++x) pe.distribution[x] = out.row(x).squaredNorm();
    pe.joint_shape = concat_shapes({static_cast<int>(m)}, input.shape());
    pe.joint.resize(m * n);
    for (Index x = 0; x < m; ++x) pe.joint.segment(x * n, n) = out.row(x).transpose();
    pe.queries_used = o.queries() - before;
    return pe;
}

inline PhaseEstimate phase_estimate(UnitaryOracle& o, const StateVector& input, int bits) {
    std::vector<int> all(input.num_registers());
    std::iota(all.begin(), all.end(), 0);
    return phase_estimate(o, input, bits, all);
}

/// Samples an outcome index from a discrete distribution.
inline int sample_index(const std::vector<double>& p, Rng& rng) {
    double u = rng.uniform();
    double acc = 0.0;
    for (size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        if (u < acc) return static_cast<int>(i);
    }
    for (size_t i = p.size(); i-- > 0;) {
        if (p[i] > 0) return static_cast<int>(i);
    }
    return 0;
}

/// ceil(log2(8t / eps)) + 2 phase bits.
inline int recommended_phase_bits(int t, double epsilon) {
    return static_cast<int>(std::ceil(std::log2(8.0 * t / epsilon))) + 2;
}

/// Iteration counts floor(sqrt(d)), floor(sqrt(d/2)), ... down to a
/// marked-count guess of d.
inline std::vector<int> default_grover_schedule(int d) {
    std::vector<int> s;
    for (int guess = 1; guess <= d; guess *= 2) {
        s.push_back(static_cast<int>(std::floor(std::sqrt(static_cast<double>(d) / guess))));
    }
    return s;
}

/// Tests U^t = I versus ||U^t - I|| >= epsilon. Phase estimation of U on
/// half of a maximally entangled state, then amplitude amplification of the
/// outcomes x with |e^{2 pi i t x / 2^bits} - 1| >= epsilon / 2, once per
/// schedule stage. Rejects if any stage measures such an outcome.
/// accept_probability is the exact probability of accepting.
inline VerifierReport recurrence_tester(UnitaryOracle& o, int t, double epsilon, int bits,
                                        std::vector<int> grover_schedule, std::uint64_t seed) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1]");
    }
    if (t < 1) {
        throw std::invalid_argument("t must be positive");
    }
    if (bits < 1 || std::ldexp(1.0, -bits) > epsilon / (8.0 * t)) {
        throw std::invalid_argument("phase bits too small for the requested t and epsilon");
    }
    const int d = o.dim();
    if (grover_schedule.empty()) grover_schedule = default_grover_schedule(d);
    for (int k : grover_schedule) {
        if (k < 0) {
            throw std::invalid_argument("grover schedule entries must be nonnegative");
        }
    }

    std::int64_t before = o.queries();
    StateVector phi = maximally_entangled(d);
    std::vector<int> first{0};
    PhaseEstimate pe = phase_estimate(o, phi, bits, first);
    const Index m = Index{1} << bits;
    const Index n = phi.size();

    std::vector<bool> bad(m);
    for (Index x = 0; x < m; ++x) {
        double ang = 2.0 * std::numbers::pi * static_cast<double>((static_cast<Index>(t) * x) % m) / m;
        bad[x] = std::abs(std::polar(1.0, ang) - 1.0) >= epsilon / 2.0;
    }
    const Vector& base = pe.joint;
    auto bad_mass = [&](const Vector& v) {
        double s = 0.0;
        for (Index x = 0; x < m; ++x) {
            if (bad[x]) s += v.segment(x * n, n).squaredNorm();
        }
        return s;
    };

    Rng root(seed);
    double accept = 1.0;
    bool rejected = false;
    std::vector<double> stage_bad;
    std::int64_t total_queries = 0;
    for (size_t stage = 0; stage < grover_schedule.size(); ++stage) {
        int iters = grover_schedule[stage];
        Vector v = base;
        for (int it = 0; it < iters; ++it) {
            for (Index x = 0; x < m; ++x) {
                if (bad[x]) v.segment(x * n, n) *= -1.0;
            }
            v = 2.0 * base * base.dot(v) - v;
        }
        double pb = std::clamp(bad_mass(v), 0.0, 1.0);
        stage_bad.push_back(pb);
        accept *= 1.0 - pb;
        Rng r = root.split(stage);
        if (r.uniform() < pb) rejected = true;
        // each stage prepares the phase-estimated state once and runs
        // `iters` rounds of (uncompute, recompute) around the reflection
        total_queries += static_cast<std::int64_t>(1 + 2 * iters) * (m - 1);
    }
    o.charge(total_queries - pe.queries_used);

    VerifierReport r;
    r.tester = "recurrence_tester";
    r.params = {{"t", t}, {"epsilon", epsilon}, {"bits", bits}, {"grover_schedule", grover_schedule}, {"d", d}};
    r.seed = seed;
    r.trials = 1;
    r.accept_probability = accept;
    r.queries_used = o.queries() - before;
    r.decision = rejected ? Decision::kReject : Decision::kAccept;
    r.details["initial_bad_probability"] = bad_mass(base);
    r.details["stage_bad_probability"] = stage_bad;
    return r;
}

inline VerifierReport recurrence_tester(UnitaryOracle& o, int t, double epsilon, std::uint64_t seed) {
    return recurrence_tester(o, t, epsilon, recommended_phase_bits(t, epsilon), {}, seed);
}

/// ceil(log2(32 sqrt(d / w))) phase bits for the dimension estimator.
inline int recommended_dimension_bits(int d, int w) {
    return static_cast<int>(std::ceil(std::log2(32.0 * std::sqrt(static_cast<double>(d) / w))));
}

/// G = R (U (x) I) where R = 2|Phi><Phi| - I reflects about the maximally
/// entangled state.
inline Matrix dimension_rotation(const UnitaryOracle& o) {
    const int d = o.dim();
    Vector phi = maximally_entangled(d).amplitudes();
    Matrix r = 2.0 * phi * phi.adjoint() - Matrix::Identity(Index{d} * d, Index{d} * d);
    return r * tensor_product(o.matrix(), Matrix::Identity(d, d));
}

struct RotationPlane {
    std::vector<double> phases;  // eigenphases of G restricted to span{Phi, G Phi}, ascending
    double invariance_residual = 0.0;
};

/// Eigenphases of G on the invariant plane through |Phi>.
inline RotationPlane dimension_rotation_phases(const UnitaryOracle& o) {
    Matrix g = dimension_rotation(o);
    Vector phi = maximally_entangled(o.dim()).amplitudes();
    Vector gphi = g * phi;
    Vector w = gphi - phi * phi.dot(gphi);
    RotationPlane out;
    if (w.norm() < 1e-12) {
        out.phases = {std::arg(phi.dot(gphi))};
        out.invariance_residual = w.norm();
        return out;
    }
    Matrix q(phi.size(), 2);
    q.col(0) = phi;
    q.col(1) = w / w.norm();
    Matrix gq = g * q;
    out.invariance_residual = (gq - q * (q.adjoint() * gq)).norm();
    Eigen::ComplexEigenSolver<Matrix> es(q.adjoint() * gq);
    for (Index i = 0; i < 2; ++i) out.phases.push_back(std::arg(es.eigenvalues()(i)));
    std::sort(out.phases.begin(), out.phases.end());
    return out;
}

/// Decides dim(S) >= 2w (accept) versus dim(S) <= w (reject) by phase
/// estimation of G on |Phi>: phase +-2 theta with sin^2 theta = dim(S)/d.
inline VerifierReport dimension_estimator(UnitaryOracle& o, int w, int bits, std::uint64_t seed) {
    const int d = o.dim();
    if (w < 1 || 2 * w > d) {
        throw std::invalid_argument("w must satisfy 1 <= w <= d/2");
    }
    std::int64_t before = o.queries();
    DenseOracle g(dimension_rotation(o));
    PhaseEstimate pe = phase_estimate(g, maximally_entangled(d), bits);
    o.charge(g.queries());

    const Index m = Index{1} << bits;
    auto s_of = [&](Index x) {
        double f = static_cast<double>(x) / m;
        double theta = std::numbers::pi * std::min(f, 1.0 - f);
        return d * std::sin(theta) * std::sin(theta);
    };
    double p_large = 0.0;
    for (Index x = 0; x < m; ++x) {
        if (s_of(x) >= 1.5 * w) p_large += pe.distribution[x];
    }
    Rng rng(seed);
    int x = sample_index(pe.distribution, rng);
    double s_est = s_of(x);

    VerifierReport r;
    r.tester = "dimension_estimator";
    r.params = {{"d", d}, {"w", w}, {"bits", bits}};
    r.seed = seed;
    r.trials = 1;
    r.accept_probability = std::clamp(p_large, 0.0, 1.0);
    r.queries_used = o.queries() - before;
    r.decision = s_est >= 1.5 * w ? Decision::kAccept : Decision::kReject;
    r.details["outcome"] = x;
    r.details["s_estimate"] = s_est;
    return r;
}

inline VerifierReport dimension_estimator(UnitaryOracle& o, int w, std::uint64_t seed) {
    return dimension_estimator(o, w, recommended_dimension_bits(o.dim(), w), seed);
}

}  // namespace upt

#endif
