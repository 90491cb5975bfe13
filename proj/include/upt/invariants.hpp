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


#ifndef UPT_INVARIANTS_HPP
#define UPT_INVARIANTS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>
#include <map>

#include "upt/core/haar.hpp"
#include "upt/core/linalg.hpp"

namespace upt {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

namespace detail {

inline std::vector<int> beta_to_partition(std::vector<int> beta) {
    std::sort(beta.begin(), beta.end(), std::greater<>());
    const int len = static_cast<int>(beta.size());
    std::vector<int> parts;
    for (int i = 0; i < len; ++i) {
        int p = beta[i] - (len - 1 - i);
        if (p > 0) parts.push_back(p);
    }
    return parts;
}

inline long long murnaghan_nakayama(const std::vector<int>& lambda, std::vector<int> mu) {
    if (mu.empty()) return lambda.empty() ? 1 : 0;
    const int r = mu.back();
    mu.pop_back();
    const int len = static_cast<int>(lambda.size());
    std::vector<int> beta(len);
    for (int i = 0; i < len; ++i) beta[i] = lambda[i] + (len - 1 - i);
    long long total = 0;
    for (int i = 0; i < len; ++i) {
        int moved = beta[i] - r;
        if (moved < 0 || std::find(beta.begin(), beta.end(), moved) != beta.end()) continue;
        // removing a rim hook of length r; its leg length is the number of
        // beta numbers jumped over
        int height = 0;
        for (int b : beta) height += (b > moved && b < beta[i]);
        std::vector<int> next = beta;
        next[i] = moved;
        long long chi = murnaghan_nakayama(beta_to_partition(next), mu);
        total += (height % 2 == 0) ? chi : -chi;
    }
    return total;
}

}  // namespace detail

/// Irreducible character chi^lambda evaluated on cycle type mu.
inline long long character(const Partition& lambda, const Partition& mu) {
    if (lambda.n() != mu.n()) {
        throw std::invalid_argument("character arguments are partitions of different n");
    }
    return detail::murnaghan_nakayama(lambda.parts(), mu.parts());
}

/// Character table of S_n; rows and columns follow Partition::all(n).
class CharacterTable {
   public:
    explicit CharacterTable(int n) : n_(n), partitions_(Partition::all(n)) {
        if (n < 1 || n > 6) {
            throw std::invalid_argument("character tables are supported for 1 <= n <= 6");
        }
        for (const auto& l : partitions_) {
            for (const auto& m : partitions_) values_[{l, m}] = character(l, m);
        }
    }

    int n() const { return n_; }
    const std::vector<Partition>& partitions() const { return partitions_; }
    long long value(const Partition& lambda, const Partition& mu) const { return values_.at({lambda, mu}); }
    long long dimension(const Partition& lambda) const {
        return value(lambda, Partition(std::vector<int>(n_, 1)));
    }

    nlohmann::json to_json() const {
        nlohmann::json labels = nlohmann::json::array();
        for (const auto& p : partitions_) labels.push_back(p.to_string());
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& l : partitions_) {
            nlohmann::json row = nlohmann::json::array();
            for (const auto& m : partitions_) row.push_back(value(l, m));
            rows.push_back(row);
        }
        return {{"n", n_}, {"partitions", labels}, {"values", rows}};
    }

   private:
    int n_;
    std::vector<Partition> partitions_;
    std::map<std::pair<Partition, Partition>, long long> values_;
};

/// prod over cycles C = (c0 c1 ...) of sigma of Tr(A_c0 A_c1 ...), with
/// c_{i+1} = sigma(c_i).
inline Complex tr_sigma(const Permutation& sigma, const std::vector<Matrix>& mats) {
    if (static_cast<int>(mats.size()) != sigma.n()) {
        throw std::invalid_argument("tr_sigma needs one matrix per point");
    }
    for (const auto& m : mats) {
        if (m.rows() != mats[0].rows() || m.cols() != mats[0].cols() || m.rows() != m.cols()) {
            throw std::invalid_argument("tr_sigma matrices must be square with equal dimension");
        }
    }
    Complex out = 1.0;
    for (const auto& c : sigma.cycles()) {
        Matrix w = mats[c[0]];
        for (size_t i = 1; i < c.size(); ++i) w = w * mats[c[i]];
        out *= w.trace();
    }
    return out;
}

/// s_lambda(1, ..., 1) with d ones, by the hook-content formula.
inline Rational schur_at_ones(const Partition& lambda, int d) {
    if (d < 1) {
        throw std::invalid_argument("schur_at_ones needs d >= 1");
    }
    Rational out = 1;
    for (int i = 0; i < lambda.length(); ++i) {
        for (int j = 0; j < lambda[i]; ++j) out *= Rational(d + j - i, lambda.hook(i, j));
    }
    return out;
}

/// Wg(sigma, d) for sigma of the given cycle type, exactly:
/// (1/n!^2) sum_lambda chi^lambda(1)^2 chi^lambda(sigma) / s_lambda(1^d).
inline Rational weingarten_exact(const Partition& cycle_type, int d) {
    const int n = cycle_type.n();
    if (n < 1 || n > 6) {
        throw std::invalid_argument("weingarten supports 1 <= n <= 6");
    }
    if (d < n) {
        throw std::domain_error("weingarten requires d >= n");
    }
    Rational sum = 0;
    const Partition ones(std::vector<int>(n, 1));
    for (const auto& lambda : Partition::all(n)) {
        long long dim = character(lambda, ones);
        sum += Rational(dim * dim * character(lambda, cycle_type)) / schur_at_ones(lambda, d);
    }
    long long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    return sum / Rational(fact * fact);
}

inline double weingarten(const Partition& cycle_type, int d) { return to_double(weingarten_exact(cycle_type, d)); }

/// Exact Weingarten values for every cycle type of S_n.
class WeingartenTable {
   public:
    WeingartenTable(int n, int d) : n_(n), d_(d) {
        for (const auto& mu : Partition::all(n)) values_[mu] = weingarten_exact(mu, d);
    }
    const Rational& operator()(const Permutation& sigma) const { return values_.at(sigma.cycle_type()); }
    const Rational& operator()(const Partition& mu) const { return values_.at(mu); }

    nlohmann::json to_json() const {
        nlohmann::json vals = nlohmann::json::object();
        for (const auto& [mu, v] : values_) vals[mu.to_string()] = v.str();
        return {{"n", n_}, {"d", d_}, {"values", vals}};
    }

   private:
    int n_, d_;
    std::map<Partition, Rational> values_;
};

/// max over sigma, pi of |sum_tau Wg(sigma^-1 tau) d^{#cycles(tau^-1 pi)} - delta|,
/// which is exactly zero when Wg inverts the Gram matrix.
inline Rational gram_identity_residual(int n, int d) {
    WeingartenTable wg(n, d);
    auto perms = all_permutations(n);
    std::vector<Rational> dpow(n + 1);
    dpow[0] = 1;
    for (int i = 1; i <= n; ++i) dpow[i] = dpow[i - 1] * d;
    Rational worst = 0;
    for (const auto& sigma : perms) {
        Permutation sinv = sigma.inverse();
        for (const auto& pi : perms) {
            Rational acc = 0;
            for (const auto& tau : perms) acc += wg(sinv * tau) * dpow[(tau.inverse() * pi).cycle_count()];
            if (sigma == pi) acc -= 1;
            Rational a = acc < 0 ? Rational(-acc) : acc;
            if (a > worst) worst = a;
        }
    }
    return worst;
}

namespace detail {

/// P_sigma e_j = e_{map[j]} on (C^d)^{(x)n}.
inline std::vector<Index> permutation_index_map(const Permutation& sigma, const Shape& shape) {
    const int n = sigma.n();
    Shape out_shape(n);
    for (int k = 0; k < n; ++k) out_shape[sigma(k)] = shape[k];
    auto strides = register_strides(shape);
    auto out_strides = register_strides(out_shape);
    Index total = shape_size(shape);
    std::vector<Index> map(total);
    for (Index j = 0; j < total; ++j) {
        Index rem = j, target = 0;
        for (int k = 0; k < n; ++k) {
            Index digit = rem / strides[k];
            rem %= strides[k];
            target += digit * out_strides[sigma(k)];
        }
        map[j] = target;
    }
    return map;
}

constexpr Index kMaxInvariantDim = 4096;

}  // namespace detail

/// sum_{sigma,tau} Wg(sigma^-1 tau, d) Tr(P_tau^dagger B) P_sigma, the exact
/// Haar twirl E[(g^{(x)n})^dagger B g^{(x)n}].
inline Matrix weingarten_twirl(const Matrix& b, int n, int d) {
    Shape shape(n, d);
    const Index dim = shape_size(shape);
    if (dim > detail::kMaxInvariantDim) {
        throw std::invalid_argument("weingarten_twirl size limit exceeded");
    }
    if (b.rows() != dim || b.cols() != dim) {
        throw std::invalid_argument("B does not act on (C^d)^{(x)n}");
    }
    WeingartenTable wg(n, d);
    auto perms = all_permutations(n);
    std::vector<std::vector<Index>> maps;
    std::vector<Complex> tr;  // Tr(P_tau^dagger B) = sum_j B(map[j], j)
    for (const auto& p : perms) {
        maps.push_back(detail::permutation_index_map(p, shape));
        Complex t = 0.0;
        for (Index j = 0; j < dim; ++j) t += b(maps.back()[j], j);
        tr.push_back(t);
    }
    Matrix out = Matrix::Zero(dim, dim);
    for (size_t s = 0; s < perms.size(); ++s) {
        Permutation sinv = perms[s].inverse();
        Complex coef = 0.0;
        for (size_t t = 0; t < perms.size(); ++t) coef += to_double(wg(sinv * perms[t])) * tr[t];
        for (Index j = 0; j < dim; ++j) out(maps[s][j], j) += coef;
    }
    return out;
}

struct WeingartenAverageReport {
    int n = 0;
    int d = 0;
    int samples = 0;
    double residual = 0.0;  // Frobenius norm of (Monte Carlo mean - exact)
    double band = 0.0;      // 3 sigma of that norm under pure sampling noise
    bool pass = false;
    Matrix exact;
    Matrix estimate;
};

/// Compares the exact twirl of B over g^{(x)2k} with a Monte Carlo average
/// over Haar g.
inline WeingartenAverageReport weingarten_average_check(const Matrix& b, int k, int d, int samples,
                                                        std::uint64_t seed) {
    const int n = 2 * k;
    if (k < 1 || n > 6) {
        throw std::invalid_argument("weingarten_average_check needs 1 <= k and 2k <= 6");
    }
    if (d < n) {
        throw std::domain_error("weingarten_average_check requires d >= 2k");
    }
    if (samples < 2) {
        throw std::invalid_argument("need at least two samples");
    }
    WeingartenAverageReport r;
    r.n = n;
    r.d = d;
    r.samples = samples;
    r.exact = weingarten_twirl(b, n, d);
    const Index dim = r.exact.rows();
    Matrix sum = Matrix::Zero(dim, dim);
    Eigen::MatrixXd sumsq = Eigen::MatrixXd::Zero(dim, dim);
    Rng root(seed);
    for (int s = 0; s < samples; ++s) {
        Rng rng = root.split(static_cast<std::uint64_t>(s));
        Matrix g = haar_unitary(d, rng);
        Matrix big = g;
        for (int i = 1; i < n; ++i) big = tensor_product(big, g);
        Matrix x = big.adjoint() * b * big;
        sum += x;
        sumsq += x.cwiseAbs2();
    }
    r.estimate = sum / static_cast<double>(samples);
    // sum over entries of the sample variance of the mean
    Eigen::MatrixXd var = sumsq / samples - r.estimate.cwiseAbs2();
    double total_var = std::max(var.sum(), 0.0) * samples / (samples - 1.0);
    r.band = 3.0 * std::sqrt(total_var / samples);
    r.residual = (r.estimate - r.exact).norm();
    r.pass = r.residual <= r.band + 1e-12;
    return r;
}

/// Tr((R_sigma (x) R_tau) X^{(x)k}) for X on C^d (x) C^d, with R_sigma
/// permuting the k first-factor copies and R_tau the k second-factor copies.
inline Complex lu_invariant(const Permutation& sigma, const Permutation& tau, const Matrix& x, int k) {
    if (sigma.n() != k || tau.n() != k) {
        throw std::invalid_argument("sigma and tau must lie in S_k");
    }
    const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(x.rows()))));
    if (d * d != x.rows() || x.rows() != x.cols()) {
        throw std::invalid_argument("X must act on C^d (x) C^d");
    }
    Shape shape(2 * k, d);
    const Index total = shape_size(shape);
    if (total > (Index{1} << 20)) {
        throw std::invalid_argument("lu_invariant size limit exceeded");
    }
    // registers A1 B1 A2 B2 ...; sigma acts on the even ones, tau on the odd
    std::vector<int> im(2 * k);
    for (int a = 0; a < k; ++a) {
        im[2 * a] = 2 * sigma(a);
        im[2 * a + 1] = 2 * tau(a) + 1;
    }
    auto map = detail::permutation_index_map(Permutation(im), shape);
    const Index dd = Index{d} * d;
    std::vector<Index> pair_stride(k);
    for (int c = 0; c < k; ++c) {
        Index s = 1;
        for (int j = c + 1; j < k; ++j) s *= dd;
        pair_stride[c] = s;
    }
    Complex out = 0.0;
    for (Index i = 0; i < total; ++i) {
        Complex term = 1.0;
        Index ri = i, ci = map[i];
        for (int c = 0; c < k && term != 0.0; ++c) {
            Index r = (ri / pair_stride[c]) % dd;
            Index col = (ci / pair_stride[c]) % dd;
            term *= x(r, col);
        }
        out += term;
    }
    return out;
}

struct SpectrumDependenceReport {
    Permutation sigma, tau;
    int k = 0;
    int d = 0;
    int trials = 0;
    double max_rotation_deviation = 0.0;  // |I((g (x) h) psi) - I(psi)|
    double max_spectrum_deviation = 0.0;  // |I(psi') - I(psi)| for equal Schmidt spectra
    bool pass = false;
};

/// Checks that the LU invariant of |psi><psi| depends only on the Schmidt
/// spectrum of psi.
inline SpectrumDependenceReport spectrum_dependence_audit(const Permutation& sigma, const Permutation& tau, int k,
                                                          int d, int trials, std::uint64_t seed) {
    SpectrumDependenceReport r;
    r.sigma = sigma;
    r.tau = tau;
    r.k = k;
    r.d = d;
    r.trials = trials;
    Rng root(seed);
    for (int t = 0; t < trials; ++t) {
        Rng rng = root.split(static_cast<std::uint64_t>(t));
        StateVector psi = haar_state({d, d}, rng);
        Matrix x = psi.amplitudes() * psi.amplitudes().adjoint();
        Complex base = lu_invariant(sigma, tau, x, k);

        Vector rotated = tensor_product(haar_unitary(d, rng), haar_unitary(d, rng)) * psi.amplitudes();
        Complex rot = lu_invariant(sigma, tau, rotated * rotated.adjoint(), k);
        r.max_rotation_deviation = std::max(r.max_rotation_deviation, std::abs(rot - base));

        // same Schmidt coefficients, fresh local bases
        SchmidtDecomposition sd = schmidt_decomposition(psi.amplitudes(), d, d);
        Matrix a = haar_unitary(d, rng), b = haar_unitary(d, rng);
        Vector other = Vector::Zero(d * d);
        for (Index i = 0; i < sd.coefficients.size(); ++i) {
            other += sd.coefficients(i) * kron(a.col(i), b.col(i));
        }
        Complex same = lu_invariant(sigma, tau, other * other.adjoint(), k);
        r.max_spectrum_deviation = std::max(r.max_spectrum_deviation, std::abs(same - base));
    }
    r.pass = r.max_rotation_deviation <= 1e-9 && r.max_spectrum_deviation <= 1e-9;
    return r;
}

}  // namespace upt

#endif
