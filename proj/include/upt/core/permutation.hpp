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

#ifndef UPT_CORE_PERMUTATION_HPP
#define UPT_CORE_PERMUTATION_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace upt {

/// Integer partition with nonincreasing positive parts.
class Partition {
   public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0) {
                throw std::invalid_argument("partition parts must be positive");
            }
            if (i > 0 && parts_[i] > parts_[i - 1]) {
                throw std::invalid_argument("partition parts must be nonincreasing");
            }
        }
    }

    /// Sorts arbitrary positive parts into a partition.
    static Partition from_unsorted(std::vector<int> parts) {
        std::sort(parts.begin(), parts.end(), std::greater<>());
        return Partition(std::move(parts));
    }

    /// All partitions of n in reverse lexicographic order: (n), (n-1,1), ...
    static std::vector<Partition> all(int n) {
        std::vector<Partition> out;
        std::vector<int> cur;
        std::function<void(int, int)> rec = [&](int remaining, int max_part) {
            if (remaining == 0) {
                out.emplace_back(cur);
                return;
            }
            for (int p = std::min(remaining, max_part); p >= 1; --p) {
                cur.push_back(p);
                rec(remaining - p, p);
                cur.pop_back();
            }
        };
        rec(n, n);
        return out;
    }

    const std::vector<int>& parts() const { return parts_; }
    int n() const {
        int s = 0;
        for (int p : parts_) s += p;
        return s;
    }
    int length() const { return static_cast<int>(parts_.size()); }
    int operator[](int i) const { return i < length() ? parts_[i] : 0; }

    /// Length of column j (0-based) of the Young diagram.
    int column_length(int j) const {
        int c = 0;
        for (int p : parts_) {
            if (p > j) ++c;
        }
        return c;
    }

    int hook(int i, int j) const { return parts_[i] - j + column_length(j) - i - 1; }

    /// Size of the conjugacy class of S_n with this cycle type.
    long long class_size() const {
        long long fact = 1;
        for (int i = 2; i <= n(); ++i) fact *= i;
        return fact / centralizer_size();
    }

    /// z_mu = prod_i i^{m_i} m_i!.
    long long centralizer_size() const {
        std::map<int, int> mult;
        for (int p : parts_) ++mult[p];
        long long z = 1;
        for (auto [part, m] : mult) {
            for (int k = 0; k < m; ++k) z *= part;
            for (int k = 2; k <= m; ++k) z *= k;
        }
        return z;
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "(";
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (i) os << ",";
            os << parts_[i];
        }
        os << ")";
        return os.str();
    }

    auto operator<=>(const Partition&) const = default;

   private:
    std::vector<int> parts_;
};

/// Element of the symmetric group S_n acting on {0, ..., n-1}.
///
/// Composition follows function composition: (a * b)(i) = a(b(i)).
class Permutation {
   public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (int x : images_) {
            if (x < 0 || x >= static_cast<int>(images_.size()) || seen[x]) {
                throw std::invalid_argument("permutation images are not a bijection");
            }
            seen[x] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> im(n);
        for (int i = 0; i < n; ++i) im[i] = i;
        return Permutation(std::move(im));
    }

    /// Builds from 1-based disjoint cycles, e.g. {{1,2},{3}} for (12)(3).
    static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
        std::vector<int> im(n);
        for (int i = 0; i < n; ++i) im[i] = i;
        std::vector<bool> used(n, false);
        for (const auto& c : cycles) {
            for (size_t k = 0; k < c.size(); ++k) {
                int a = c[k] - 1;
                int b = c[(k + 1) % c.size()] - 1;
                if (a < 0 || a >= n || b < 0 || b >= n || used[a]) {
                    throw std::invalid_argument("invalid cycle notation");
                }
                used[a] = true;
                im[a] = b;
            }
        }
        return Permutation(std::move(im));
    }

    /// Transposition of 0-based points i and j.
    static Permutation transposition(int n, int i, int j) {
        Permutation p = identity(n);
        std::swap(p.images_[i], p.images_[j]);
        return p;
    }

    int n() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[i]; }
    const std::vector<int>& images() const { return images_; }

    Permutation operator*(const Permutation& rhs) const {
        if (rhs.n() != n()) {
            throw std::invalid_argument("composing permutations of different degree");
        }
        std::vector<int> im(n());
        for (int i = 0; i < n(); ++i) im[i] = images_[rhs.images_[i]];
        return Permutation(std::move(im));
    }

    Permutation inverse() const {
        std::vector<int> im(n());
        for (int i = 0; i < n(); ++i) im[images_[i]] = i;
        return Permutation(std::move(im));
    }

    /// Disjoint cycles (0-based), each starting at its smallest point, in
    /// increasing order of that point. Fixed points are length-1 cycles.
    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<bool> seen(n(), false);
        for (int s = 0; s < n(); ++s) {
            if (seen[s]) continue;
            std::vector<int> c;
            for (int x = s; !seen[x]; x = images_[x]) {
                seen[x] = true;
                c.push_back(x);
            }
            out.push_back(std::move(c));
        }
        return out;
    }

    int cycle_count() const { return static_cast<int>(cycles().size()); }

    Partition cycle_type() const {
        std::vector<int> lens;
        for (const auto& c : cycles()) lens.push_back(static_cast<int>(c.size()));
        return Partition::from_unsorted(std::move(lens));
    }

    int sign() const { return ((n() - cycle_count()) % 2 == 0) ? 1 : -1; }

    bool is_identity() const {
        for (int i = 0; i < n(); ++i) {
            if (images_[i] != i) return false;
        }
        return true;
    }

    /// 1-based cycle notation, fixed points omitted; "e" for the identity.
    std::string to_string() const {
        std::ostringstream os;
        for (const auto& c : cycles()) {
            if (c.size() < 2) continue;
            os << "(";
            for (size_t k = 0; k < c.size(); ++k) {
                if (k) os << " ";
                os << c[k] + 1;
            }
            os << ")";
        }
        std::string s = os.str();
        return s.empty() ? "e" : s;
    }

    auto operator<=>(const Permutation&) const = default;

   private:
    std::vector<int> images_;
};

/// All n! permutations in lexicographic order of their image lists.
inline std::vector<Permutation> all_permutations(int n) {
    std::vector<int> im(n);
    for (int i = 0; i < n; ++i) im[i] = i;
    std::vector<Permutation> out;
    do {
        out.emplace_back(im);
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

}  // namespace upt

#endif
