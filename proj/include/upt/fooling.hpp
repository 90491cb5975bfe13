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


#ifndef UPT_FOOLING_HPP
#define UPT_FOOLING_HPP

#include <array>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "upt/core/linalg.hpp"
#include "upt/entanglement.hpp"
#include "upt/testers.hpp"

namespace upt {

/// Integer linear combination of computational basis kets |i_1 ... i_n>.
/// Exact, so permutation symmetry can be compared without tolerance.
class KetExpr {
   public:
    using Ket = std::vector<int>;

    KetExpr() = default;
    explicit KetExpr(Ket k, long long c = 1) {
        if (c != 0) terms_[std::move(k)] = c;
    }

    /// Parses "+abcd -2dbca ..." with each letter mapped through `letters`.
    static KetExpr parse(const std::string& text, const std::map<char, int>& letters) {
        KetExpr out;
        std::istringstream is(text);
        std::string tok;
        while (is >> tok) {
            size_t pos = 0;
            long long sign = 1;
            if (tok[pos] == '+' || tok[pos] == '-') sign = tok[pos++] == '-' ? -1 : 1;
            long long coef = 0;
            bool has_coef = false;
            while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos]))) {
                coef = coef * 10 + (tok[pos++] - '0');
                has_coef = true;
            }
            if (!has_coef) coef = 1;
            Ket k;
            for (; pos < tok.size(); ++pos) {
                auto it = letters.find(tok[pos]);
                if (it == letters.end()) {
                    throw std::invalid_argument(std::string("unknown ket letter '") + tok[pos] + "'");
                }
                k.push_back(it->second);
            }
            if (k.empty()) {
                throw std::invalid_argument("empty ket in expression");
            }
            out += KetExpr(k, sign * coef);
        }
        return out;
    }

    const std::map<Ket, long long>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    int num_registers() const { return terms_.empty() ? 0 : static_cast<int>(terms_.begin()->first.size()); }
    long long coefficient(const Ket& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? 0 : it->second;
    }

    KetExpr& operator+=(const KetExpr& o) {
        for (const auto& [k, c] : o.terms_) {
            if (!terms_.empty() && k.size() != terms_.begin()->first.size()) {
                throw std::invalid_argument("adding kets with different register counts");
            }
            long long& slot = terms_[k];
            slot += c;
            if (slot == 0) terms_.erase(k);
        }
        return *this;
    }
    KetExpr operator+(const KetExpr& o) const { return KetExpr(*this) += o; }
    KetExpr operator-(const KetExpr& o) const { return KetExpr(*this) += o * -1; }
    KetExpr operator*(long long s) const {
        KetExpr out;
        if (s == 0) return out;
        for (const auto& [k, c] : terms_) out.terms_[k] = c * s;
        return out;
    }
    bool operator==(const KetExpr& o) const { return terms_ == o.terms_; }

    /// |x> (x) |y>
    KetExpr tensor(const KetExpr& o) const {
        KetExpr out;
        for (const auto& [a, ca] : terms_) {
            for (const auto& [b, cb] : o.terms_) {
                Ket k = a;
                k.insert(k.end(), b.begin(), b.end());
                out += KetExpr(k, ca * cb);
            }
        }
        return out;
    }

    /// P_sigma: register k moves to position sigma(k).
    KetExpr permuted(const Permutation& sigma) const {
        KetExpr out;
        for (const auto& [k, c] : terms_) {
            if (static_cast<int>(k.size()) != sigma.n()) {
                throw std::invalid_argument("permutation degree does not match the ket");
            }
            Ket m(k.size());
            for (size_t i = 0; i < k.size(); ++i) m[sigma(static_cast<int>(i))] = k[i];
            out += KetExpr(m, c);
        }
        return out;
    }

    long long norm_squared() const {
        long long s = 0;
        for (const auto& [k, c] : terms_) s += c * c;
        return s;
    }

    Vector to_vector(int dim) const {
        Shape shape(num_registers(), dim);
        Vector v = Vector::Zero(shape_size(shape));
        for (const auto& [k, c] : terms_) {
            Index idx = 0;
            for (int x : k) {
                if (x < 0 || x >= dim) {
                    throw std::invalid_argument("ket index exceeds the local dimension");
                }
                idx = idx * dim + x;
            }
            v(idx) = static_cast<double>(c);
        }
        return v;
    }

    StateVector to_state(int dim) const {
        if (empty()) {
            throw std::invalid_argument("cannot normalize the zero ket expression");
        }
        return StateVector::normalized(to_vector(dim), Shape(num_registers(), dim));
    }

   private:
    std::map<Ket, long long> terms_;
};

/// Filling of a Young diagram; entries are 1-based labels.
class YoungTableau {
   public:
    explicit YoungTableau(std::vector<std::vector<int>> rows) : rows_(std::move(rows)) {
        std::vector<int> lens;
        for (const auto& r : rows_) {
            if (r.empty()) {
                throw std::invalid_argument("tableau rows must be nonempty");
            }
            lens.push_back(static_cast<int>(r.size()));
        }
        shape_ = Partition(lens);
    }

    const Partition& shape() const { return shape_; }
    const std::vector<std::vector<int>>& rows() const { return rows_; }
    int n() const { return shape_.n(); }

    /// Rows and columns strictly increase and the entries are 1..n.
    bool is_standard() const {
        std::vector<int> all;
        for (const auto& r : rows_) all.insert(all.end(), r.begin(), r.end());
        std::sort(all.begin(), all.end());
        for (int i = 0; i < n(); ++i) {
            if (all[i] != i + 1) return false;
        }
        return increasing(true);
    }

    /// Rows weakly and columns strictly increase.
    bool is_semistandard() const { return increasing(false); }

    /// Permutations of {0..n-1} mapping each row (resp. column) to itself.
    std::vector<Permutation> row_group() const { return preserving(rows_); }
    std::vector<Permutation> column_group() const {
        std::vector<std::vector<int>> cols;
        for (int j = 0; j < shape_[0]; ++j) {
            std::vector<int> c;
            for (int i = 0; i < shape_.column_length(j); ++i) c.push_back(rows_[i][j]);
            cols.push_back(c);
        }
        return preserving(cols);
    }

   private:
    bool increasing(bool strict_rows) const {
        for (size_t i = 0; i < rows_.size(); ++i) {
            for (size_t j = 0; j < rows_[i].size(); ++j) {
                if (j > 0) {
                    int a = rows_[i][j - 1], b = rows_[i][j];
                    if (strict_rows ? a >= b : a > b) return false;
                }
                if (i > 0 && rows_[i - 1][j] >= rows_[i][j]) return false;
            }
        }
        return true;
    }

    std::vector<Permutation> preserving(const std::vector<std::vector<int>>& blocks) const {
        const int total = n();
        std::vector<Permutation> out{Permutation::identity(total)};
        for (const auto& block : blocks) {
            std::vector<int> pts;
            for (int x : block) pts.push_back(x - 1);
            std::vector<Permutation> next;
            for (const auto& local : all_permutations(static_cast<int>(pts.size()))) {
                std::vector<int> im(total);
                std::iota(im.begin(), im.end(), 0);
                for (size_t a = 0; a < pts.size(); ++a) im[pts[a]] = pts[local(static_cast<int>(a))];
                Permutation p(im);
                for (const auto& q : out) next.push_back(p * q);
            }
            out = std::move(next);
        }
        return out;
    }

    std::vector<std::vector<int>> rows_;
    Partition shape_;
};

namespace detail {

inline void require_standard(const YoungTableau& t) {
    if (!t.is_standard()) {
        throw std::invalid_argument("young symmetrizer needs a standard tableau");
    }
}

}  // namespace detail

/// c_T = (sum_{q in Q_T} sgn(q) P_q)(sum_{p in P_T} P_p) applied exactly.
inline KetExpr apply_young_symmetrizer(const YoungTableau& t, const KetExpr& v) {
    detail::require_standard(t);
    KetExpr a;
    for (const auto& p : t.row_group()) a += v.permuted(p);
    KetExpr out;
    for (const auto& q : t.column_group()) out += a.permuted(q) * q.sign();
    return out;
}

/// Dense c_T on (C^d)^{(x)n}.
inline Matrix young_symmetrizer(const YoungTableau& t, int d) {
    detail::require_standard(t);
    if (t.n() > 4) {
        throw std::invalid_argument("young symmetrizers are supported for n <= 4");
    }
    if (d < 2) {
        throw std::invalid_argument("young symmetrizer needs d >= 2");
    }
    Index dim = shape_size(Shape(t.n(), d));
    Matrix a = Matrix::Zero(dim, dim), b = Matrix::Zero(dim, dim);
    for (const auto& p : t.row_group()) a += permutation_operator(p, d);
    for (const auto& q : t.column_group()) b += static_cast<double>(q.sign()) * permutation_operator(q, d);
    return b * a;
}

enum class InvariantKind { kSym4, kShape31, kShape22, kShape22Prime };

inline std::string to_string(InvariantKind k) {
    switch (k) {
        case InvariantKind::kSym4:
            return "sym4";
        case InvariantKind::kShape31:
            return "shape31";
        case InvariantKind::kShape22:
            return "shape22";
        default:
            return "shape22prime";
    }
}

inline InvariantKind invariant_kind_from_string(const std::string& s) {
    if (s == "sym4") return InvariantKind::kSym4;
    if (s == "shape31") return InvariantKind::kShape31;
    if (s == "shape22") return InvariantKind::kShape22;
    if (s == "shape22prime") return InvariantKind::kShape22Prime;
    throw std::invalid_argument("unknown invariant kind '" + s + "'");
}

using Indices4 = std::array<int, 4>;

namespace detail {

inline void check_distinct(const Indices4& idx) {
    std::set<int> s(idx.begin(), idx.end());
    if (s.size() != 4) {
        throw std::invalid_argument("indices must be distinct");
    }
    for (int i : idx) {
        if (i < 0) {
            throw std::invalid_argument("indices must be nonnegative");
        }
    }
}

inline std::map<char, int> letters(const Indices4& idx) {
    return {{'a', idx[0]}, {'b', idx[1]}, {'c', idx[2]}, {'d', idx[3]}};
}

inline KetExpr two(int i, int j, int sign) { return KetExpr({i, j}) + KetExpr({j, i}) * sign; }

}  // namespace detail

/// Tableau vectors spanning the G-invariant part of a copy of V_(3,1)
/// (three vectors) or V_(2,2) (two vectors), as printed for fillings abcd.
inline std::vector<KetExpr> tableau_vectors(const Partition& shape, const Indices4& idx) {
    detail::check_distinct(idx);
    auto l = detail::letters(idx);
    if (shape == Partition({3, 1})) {
        return {KetExpr::parse("abcd -dbca +bacd -dacb +acbd -dcba +cabd -dabc +bcad -dcab +cbad -dbac", l),
                KetExpr::parse("abdc -dbac +acdb -dcab +badc -dabc +bcda -dcba +cadb -dacb +cbda -dbca", l),
                KetExpr::parse("adbc -dabc +adcb -dacb +bdac -dbac +bdca -dbca +cdab -dcab +cdba -dcba", l)};
    }
    if (shape == Partition({2, 2})) {
        return {KetExpr::parse("abcd -cbad -adcb +cdab +bacd -cabd -bdca +cdba "
                               "+abdc -dbac -acdb +dcab +badc -dabc -bcda +dcba",
                               l),
                KetExpr::parse("acbd -cabd -acdb +cadb +bcad -cbad -bcda +cbda "
                               "+adbc -dabc -adcb +dacb +bdac -dbac -bdca +dbca",
                               l)};
    }
    throw std::invalid_argument("tableau vectors are defined for shapes (3,1) and (2,2)");
}

/// The six 2-register (x) 2-register products making up a basis state,
/// following the factored displays. Not defined for kShape22.
inline std::vector<std::pair<KetExpr, KetExpr>> g_invariant_product_terms(InvariantKind kind, const Indices4& idx) {
    detail::check_distinct(idx);
    const auto [a, b, c, d] = idx;
    using detail::two;
    switch (kind) {
        case InvariantKind::kSym4:
            return {{two(a, b, 1), two(c, d, 1)}, {two(c, d, 1), two(a, b, 1)}, {two(a, c, 1), two(b, d, 1)},
                    {two(b, d, 1), two(a, c, 1)}, {two(a, d, 1), two(b, c, 1)}, {two(b, c, 1), two(a, d, 1)}};
        case InvariantKind::kShape31:
            return {{two(a, b, 1), two(c, d, -1)}, {two(a, c, 1), two(b, d, -1)}, {two(b, c, 1), two(a, d, -1)},
                    {two(c, d, -1), two(a, b, 1)}, {two(b, d, -1), two(a, c, 1)}, {two(a, d, -1), two(b, c, 1)}};
        case InvariantKind::kShape22Prime:
            return {{two(a, b, 1), two(c, d, 1)},   {two(c, d, 1), two(a, b, 1)},
                    {two(a, c, -1), two(d, b, -1)}, {two(b, d, -1), two(c, a, -1)},
                    {two(b, c, -1), two(d, a, -1)}, {two(a, d, -1), two(c, b, -1)}};
        default:
            throw std::invalid_argument("no product form is printed for the unprimed (2,2) state");
    }
}

/// Unnormalized integer basis state psi^4, psi^(3,1), psi^(2,2) or
/// psi'^(2,2) for the filling abcd.
inline KetExpr g_invariant_basis(InvariantKind kind, const Indices4& idx) {
    detail::check_distinct(idx);
    auto l = detail::letters(idx);
    auto sum_products = [&](InvariantKind k) {
        KetExpr out;
        for (const auto& [x, y] : g_invariant_product_terms(k, idx)) out += x.tensor(y);
        return out;
    };
    switch (kind) {
        case InvariantKind::kSym4:
            return sum_products(kind);
        case InvariantKind::kShape31: {
            auto v = tableau_vectors(Partition({3, 1}), idx);
            return v[0] - v[1] + v[2];
        }
        case InvariantKind::kShape22: {
            auto v = tableau_vectors(Partition({2, 2}), idx);
            return v[0] - v[1] * 2;
        }
        default: {
            KetExpr head = detail::two(idx[0], idx[1], 1).tensor(detail::two(idx[2], idx[3], 1));
            head += detail::two(idx[2], idx[3], 1).tensor(detail::two(idx[0], idx[1], 1));
            return head + KetExpr::parse("acdb +cabd -acbd -cadb +bcda +cbad -bcad -cbda "
                                         "+adcb +dabc -adbc -dacb +bdca +dbac -bdac -dbca",
                                         l);
        }
    }
}

/// Normalized basis state on (C^dim)^{(x)4}.
inline StateVector g_invariant_basis_state(InvariantKind kind, const Indices4& idx, int dim) {
    for (int i : idx) {
        if (i >= dim) {
            throw std::invalid_argument("index exceeds the local dimension");
        }
    }
    return g_invariant_basis(kind, idx).to_state(dim);
}

/// Integer matrix M with P_sigma v_j = sum_i M_ij v_i. Throws if some
/// P_sigma v_j leaves the span or needs non-integer coefficients.
inline Eigen::MatrixXi representation_matrix(const std::vector<KetExpr>& basis, const Permutation& sigma) {
    std::map<KetExpr::Ket, Index> pos;
    auto index_of = [&](const KetExpr& e) {
        for (const auto& [k, c] : e.terms()) pos.emplace(k, static_cast<Index>(pos.size()));
    };
    std::vector<KetExpr> images;
    for (const auto& v : basis) {
        index_of(v);
        images.push_back(v.permuted(sigma));
        index_of(images.back());
    }
    auto dense = [&](const KetExpr& e) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Index>(pos.size()));
        for (const auto& [k, c] : e.terms()) x(pos.at(k)) = static_cast<double>(c);
        return x;
    };
    const Index n = static_cast<Index>(basis.size());
    Eigen::MatrixXd a(static_cast<Index>(pos.size()), n);
    for (Index j = 0; j < n; ++j) a.col(j) = dense(basis[j]);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXi m(n, n);
    for (Index j = 0; j < n; ++j) {
        Eigen::VectorXd coef = qr.solve(dense(images[j]));
        KetExpr check;
        for (Index i = 0; i < n; ++i) {
            m(i, j) = static_cast<int>(std::lround(coef(i)));
            check += basis[i] * m(i, j);
        }
        if (!(check == images[j])) {
            throw std::invalid_argument("permuted vector is not an integer combination of the basis");
        }
    }
    return m;
}

/// Span of the six symmetrized pair states (|ij> + |ji>)/sqrt2 over
/// {u, v, w, x}.
inline Subspace counterexample_subspace(const Indices4& uvwx, int d) {
    detail::check_distinct(uvwx);
    if (d < 4) {
        throw std::invalid_argument("counterexample needs d >= 4");
    }
    for (int i : uvwx) {
        if (i >= d) {
            throw std::invalid_argument("index exceeds the local dimension");
        }
    }
    Matrix basis(Index{d} * d, 6);
    int col = 0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            basis.col(col++) = detail::two(uvwx[i], uvwx[j], 1).to_vector(d) * M_SQRT1_2;
        }
    }
    return Subspace(d * d, basis);
}

/// The 24-term witness accepted with certainty by the product test verifier
/// for counterexample_subspace.
inline StateVector counterexample_state(const Indices4& uvwx, int d) {
    counterexample_subspace(uvwx, d);  // validation
    return g_invariant_basis(InvariantKind::kSym4, uvwx).to_state(d);
}

struct FoolingCandidate {
    std::string label;
    int support_dim = 0;                // rank of the first-copy reduced state (Schmidt rank across copies)
    double product_test_accept = 0.0;   // 2-copy product test
    double verifier_accept = 0.0;       // product test verifier with S = support
    double overlap_lower_bound = 0.0;   // best product overlap found inside S
};

/// Enumerates G-invariant witnesses built from the basis families (single
/// states and signed pairwise sums over index orderings in [d]^4), takes S
/// to be the support of the first-copy reduced state, and reports how the
/// product test verifier and the product overlap of S behave. Support
/// dimensions 2..5 are the interesting case; nothing about them is asserted.
inline std::vector<FoolingCandidate> fooling_search(int d, int restarts, std::uint64_t seed) {
    if (d < 4 || d > 5) {
        throw std::invalid_argument("fooling search runs for d in {4, 5}");
    }
    std::vector<std::pair<std::string, KetExpr>> pool;
    std::set<std::map<KetExpr::Ket, long long>> seen;
    auto add = [&](const std::string& label, const KetExpr& e) {
        if (e.empty()) return;
        KetExpr neg = e * -1;
        if (seen.count(e.terms()) || seen.count(neg.terms())) return;
        seen.insert(e.terms());
        pool.emplace_back(label, e);
    };
    Indices4 base{0, 1, 2, 3};
    std::vector<int> perm(base.begin(), base.end());
    do {
        Indices4 idx{perm[0], perm[1], perm[2], perm[3]};
        std::string tag = "[" + std::to_string(idx[0]) + std::to_string(idx[1]) + std::to_string(idx[2]) +
                          std::to_string(idx[3]) + "]";
        for (auto k : {InvariantKind::kSym4, InvariantKind::kShape31, InvariantKind::kShape22Prime}) {
            add(to_string(k) + tag, g_invariant_basis(k, idx));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    const size_t singles = pool.size();
    for (size_t i = 0; i < singles; ++i) {
        for (size_t j = i + 1; j < singles; ++j) {
            add(pool[i].first + "+" + pool[j].first, pool[i].second + pool[j].second);
        }
    }

    std::vector<FoolingCandidate> out;
    std::uint64_t stream = 0;
    for (const auto& [label, expr] : pool) {
        StateVector psi = expr.to_state(d);
        Matrix rho = reduced_density(psi, {0, 1});
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
        std::vector<Index> keep;
        for (Index i = 0; i < es.eigenvalues().size(); ++i) {
            if (es.eigenvalues()(i) > 1e-10) keep.push_back(i);
        }
        Matrix basis(rho.rows(), static_cast<Index>(keep.size()));
        for (size_t c = 0; c < keep.size(); ++c) basis.col(c) = es.eigenvectors().col(keep[c]);
        Subspace s(d * d, basis);
        ReflectionOracle o(s);

        FoolingCandidate fc;
        fc.label = label;
        fc.support_dim = s.dim();
        fc.product_test_accept = product_test(psi, 2, d).accept_probability;
        fc.verifier_accept = product_test_verifier(o, psi).accept_probability;
        fc.overlap_lower_bound = subspace_max_product_overlap(s, restarts, 200, Rng(seed).split(stream++)()).value;
        out.push_back(fc);
    }
    return out;
}

}  // namespace upt

#endif
