#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "integer.hpp"

namespace galseq {

// Finite group given by its multiplication table.  op(i, j) composes
// "j first, then i".  The element order given at construction is preserved
// verbatim; require_canonical() additionally checks the ordering contract
// the rest of the library relies on (identity first, classes contiguous).
class FiniteGroup {
public:
    static FiniteGroup from_table(std::vector<std::vector<int>> table) {
        FiniteGroup g;
        g.table_ = std::move(table);
        g.validate();
        g.finish();
        return g;
    }

    // Build from explicit permutations (images of 0..m-1); element i of the
    // result corresponds to perms[i], composition (p o q)(x) = p(q(x)).
    static FiniteGroup from_permutations(const std::vector<std::vector<int>>& perms) {
        const int n = static_cast<int>(perms.size());
        std::map<std::vector<int>, int> index;
        for (int i = 0; i < n; ++i) {
            if (index.count(perms[i]))
                throw input_error("FiniteGroup: duplicate permutation");
            index[perms[i]] = i;
        }
        std::vector<std::vector<int>> table(n, std::vector<int>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                std::vector<int> prod(perms[i].size());
                for (std::size_t x = 0; x < prod.size(); ++x)
                    prod[x] = perms[i][static_cast<std::size_t>(perms[j][x])];
                auto it = index.find(prod);
                if (it == index.end())
                    throw input_error("FiniteGroup: permutations are not closed under composition");
                table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = it->second;
            }
        return from_table(std::move(table));
    }

    int order() const { return static_cast<int>(table_.size()); }
    int identity() const { return identity_; }
    int op(int i, int j) const {
        return table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    int inverse(int i) const { return inverse_[static_cast<std::size_t>(i)]; }

    int power(int i, long e) const {
        if (e < 0) {
            i = inverse(i);
            e = -e;
        }
        int acc = identity_;
        while (e > 0) {
            if (e & 1) acc = op(acc, i);
            i = op(i, i);
            e >>= 1;
        }
        return acc;
    }

    int element_order(int i) const {
        int k = 1, cur = i;
        while (cur != identity_) {
            cur = op(cur, i);
            ++k;
        }
        return k;
    }

    long exponent() const {
        Integer e = 1;
        for (int i = 0; i < order(); ++i)
            e = int_lcm(e, Integer(element_order(i)));
        return e.get_si();
    }

    bool is_abelian() const {
        for (int i = 0; i < order(); ++i)
            for (int j = i + 1; j < order(); ++j)
                if (op(i, j) != op(j, i)) return false;
        return true;
    }

    int class_count() const { return static_cast<int>(classes_.size()); }
    const std::vector<std::vector<int>>& conjugacy_classes() const { return classes_; }
    int class_of(int i) const { return classOf_[static_cast<std::size_t>(i)]; }
    // Smallest element index in a class, which is also its first member.
    int class_representative(int j) const { return classes_[static_cast<std::size_t>(j)][0]; }
    int centralizer_order(int i) const {
        int c = 0;
        for (int j = 0; j < order(); ++j)
            if (op(i, j) == op(j, i)) ++c;
        return c;
    }

    // Parity of left translation by element i in the regular representation.
    int sign(int i) const { return sign_[static_cast<std::size_t>(i)]; }

    std::vector<int> even_elements() const {
        std::vector<int> v;
        for (int i = 0; i < order(); ++i)
            if (sign(i) == 1) v.push_back(i);
        return v;
    }

    // Lowest-index odd element, or -1 when the group sits inside the
    // alternating group of its regular representation.
    int first_odd_element() const {
        for (int i = 0; i < order(); ++i)
            if (sign(i) == -1) return i;
        return -1;
    }

    // True when every conjugacy class occupies a consecutive block of
    // element indices.
    bool classes_contiguous() const {
        for (const auto& cls : classes_)
            for (std::size_t k = 1; k < cls.size(); ++k)
                if (cls[k] != cls[k - 1] + 1) return false;
        return true;
    }

    void require_canonical() const {
        if (identity_ != 0)
            throw input_error("FiniteGroup: identity must come first");
        if (!classes_contiguous())
            throw input_error("FiniteGroup: conjugacy classes must be contiguous");
    }

private:
    void validate() const {
        const int n = static_cast<int>(table_.size());
        if (n == 0) throw input_error("FiniteGroup: empty table");
        for (const auto& row : table_) {
            if (static_cast<int>(row.size()) != n)
                throw input_error("FiniteGroup: table is not square");
            for (int v : row)
                if (v < 0 || v >= n) throw input_error("FiniteGroup: table entry out of range");
        }
        // Latin square property.
        for (int i = 0; i < n; ++i) {
            std::vector<bool> seenRow(static_cast<std::size_t>(n), false);
            std::vector<bool> seenCol(static_cast<std::size_t>(n), false);
            for (int j = 0; j < n; ++j) {
                int r = table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                int c = table_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
                if (seenRow[static_cast<std::size_t>(r)] || seenCol[static_cast<std::size_t>(c)])
                    throw input_error("FiniteGroup: table is not a Latin square");
                seenRow[static_cast<std::size_t>(r)] = true;
                seenCol[static_cast<std::size_t>(c)] = true;
            }
        }
        // Full associativity check; group orders here are small.
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    int ij = table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    int jk = table_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                    if (table_[static_cast<std::size_t>(ij)][static_cast<std::size_t>(k)] !=
                        table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(jk)])
                        throw input_error("FiniteGroup: table is not associative");
                }
    }

    void finish() {
        const int n = static_cast<int>(table_.size());
        identity_ = -1;
        for (int e = 0; e < n; ++e) {
            bool ok = true;
            for (int j = 0; j < n && ok; ++j)
                ok = op(e, j) == j && op(j, e) == j;
            if (ok) {
                identity_ = e;
                break;
            }
        }
        if (identity_ < 0)
            throw input_error("FiniteGroup: no identity element");
        inverse_.assign(static_cast<std::size_t>(n), -1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (op(i, j) == identity_ && op(j, i) == identity_) {
                    inverse_[static_cast<std::size_t>(i)] = j;
                    break;
                }
        for (int i = 0; i < n; ++i)
            if (inverse_[static_cast<std::size_t>(i)] < 0)
                throw input_error("FiniteGroup: missing inverse");

        // Conjugacy classes in order of first appearance.
        classOf_.assign(static_cast<std::size_t>(n), -1);
        for (int i = 0; i < n; ++i) {
            if (classOf_[static_cast<std::size_t>(i)] >= 0) continue;
            int c = static_cast<int>(classes_.size());
            std::vector<int> members;
            for (int h = 0; h < n; ++h) {
                int conj = op(op(h, i), inverse(h));
                if (classOf_[static_cast<std::size_t>(conj)] < 0) {
                    classOf_[static_cast<std::size_t>(conj)] = c;
                    members.push_back(conj);
                }
            }
            std::sort(members.begin(), members.end());
            classes_.push_back(std::move(members));
        }

        // Signs from the cycle structure of left translations.
        sign_.assign(static_cast<std::size_t>(n), 1);
        for (int i = 0; i < n; ++i) {
            std::vector<bool> seen(static_cast<std::size_t>(n), false);
            int cycles = 0;
            for (int s = 0; s < n; ++s) {
                if (seen[static_cast<std::size_t>(s)]) continue;
                ++cycles;
                int cur = s;
                while (!seen[static_cast<std::size_t>(cur)]) {
                    seen[static_cast<std::size_t>(cur)] = true;
                    cur = op(i, cur);
                }
            }
            sign_[static_cast<std::size_t>(i)] = ((n - cycles) % 2 == 0) ? 1 : -1;
        }
    }

    std::vector<std::vector<int>> table_;
    int identity_ = 0;
    std::vector<int> inverse_;
    std::vector<std::vector<int>> classes_;
    std::vector<int> classOf_;
    std::vector<int> sign_;
};

} // namespace galseq
