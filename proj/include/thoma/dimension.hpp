#pragma once

#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "partition.hpp"
#include "rational.hpp"

namespace thoma {

namespace detail {

template <class Key, class Hash>
class MemoTable {
public:
    bool lookup(const Key& k, BigInt& out) const {
        std::shared_lock lk(mu_);
        auto it = map_.find(k);
        if (it == map_.end()) return false;
        out = it->second;
        return true;
    }
    void store(const Key& k, const BigInt& v) {
        std::unique_lock lk(mu_);
        map_.emplace(k, v);
    }

private:
    mutable std::shared_mutex mu_;
    std::unordered_map<Key, BigInt, Hash> map_;
};

struct PairHash {
    std::size_t operator()(const std::pair<Partition, Partition>& p) const {
        PartitionHash h;
        return h(p.first) * 0x9e3779b97f4a7c15ull + h(p.second);
    }
};

}  // namespace detail

/// Number of standard Young tableaux of shape lambda, via the branching
/// recursion dim(la) = sum over removable corners of dim(la - box).
/// Memoized; the table is safe for concurrent readers and writers.
inline BigInt dim(const Partition& la) {
    static detail::MemoTable<Partition, PartitionHash> memo;
    BigInt cached;
    if (memo.lookup(la, cached)) return cached;

    std::unordered_map<Partition, BigInt, PartitionHash> local;
    auto rec = [&](auto&& self, const Partition& p) -> BigInt {
        if (p.size() <= 1) return BigInt(1);
        auto it = local.find(p);
        if (it != local.end()) return it->second;
        BigInt g;
        if (memo.lookup(p, g)) return local.emplace(p, g).first->second;
        BigInt total{0};
        for (const auto& b : p.removable()) total += self(self, p.with_box_removed(b.row));
        local.emplace(p, total);
        return total;
    };
    BigInt result = rec(rec, la);
    for (const auto& [k, v] : local) memo.store(k, v);
    return result;
}

/// Closed product expression for dim in modified Frobenius coordinates;
/// independent route used to cross-check the branching recursion.
inline BigInt dim_frobenius(const Partition& la) {
    const auto fc = frobenius(la);
    const int n = la.size();
    Rat r(factorial(n));
    for (int i = 0; i < fc.diag; ++i)
        for (int j = i + 1; j < fc.diag; ++j) {
            r *= Rat(fc.arm2[i] - fc.arm2[j], 2);
            r *= Rat(fc.leg2[i] - fc.leg2[j], 2);
        }
    for (int i = 0; i < fc.diag; ++i)
        for (int j = 0; j < fc.diag; ++j) r /= Rat(fc.arm2[i] + fc.leg2[j], 2);
    for (int i = 0; i < fc.diag; ++i) {
        r /= factorial((fc.arm2[i] - 1) / 2);
        r /= factorial((fc.leg2[i] - 1) / 2);
    }
    if (denominator(r) != 1) throw std::logic_error("dim_frobenius: non-integer result");
    return numerator(r);
}

/// Number of chains mu -> ... -> lambda adding one box at a time.
/// 0 when mu is not contained in lambda; 1 when mu == lambda.
inline BigInt skew_dim(const Partition& mu, const Partition& la) {
    if (!la.contains(mu)) return BigInt(0);
    if (mu == la) return BigInt(1);
    static detail::MemoTable<std::pair<Partition, Partition>, detail::PairHash> memo;
    BigInt cached;
    if (memo.lookup({mu, la}, cached)) return cached;

    std::unordered_map<Partition, BigInt, PartitionHash> local;
    auto rec = [&](auto&& self, const Partition& p) -> BigInt {
        if (p.size() == mu.size()) return BigInt(p == mu ? 1 : 0);
        auto it = local.find(p);
        if (it != local.end()) return it->second;
        BigInt g;
        if (memo.lookup({mu, p}, g)) return local.emplace(p, g).first->second;
        BigInt total{0};
        for (const auto& b : p.removable()) {
            Partition q = p.with_box_removed(b.row);
            if (q.contains(mu)) total += self(self, q);
        }
        local.emplace(p, total);
        return total;
    };
    BigInt result = rec(rec, la);
    for (const auto& [k, v] : local) memo.store({mu, k}, v);
    return result;
}

/// dim(lambda + box in row r) / dim(lambda), through hook length products.
/// Only hooks in the affected row and column change, so the cost is
/// O(rows + columns) regardless of |lambda|; this is the path the large-n
/// chain code uses instead of the global memo table.
inline Rat up_dim_ratio(const Partition& la, int add_row) {
    const int n = la.size();
    const int s = (add_row <= la.num_rows()) ? la.row(add_row) + 1 : 1;  // new column
    const Partition conj = la.conjugate();
    BigInt num(n + 1), den(1);
    for (int j = 1; j < s; ++j) {
        const int h = la.row(add_row) - j + conj.row(j) - add_row + 1;
        num *= h;
        den *= h + 1;
    }
    for (int i = 1; i < add_row; ++i) {
        const int h = la.row(i) - s + add_row - i;  // column count above the new box is add_row-1
        num *= h;
        den *= h + 1;
    }
    return Rat(num, den);
}

/// dim(lambda - corner in row r) / dim(lambda), hook length products.
inline Rat down_dim_ratio(const Partition& la, int rm_row) {
    const int n = la.size();
    const int s = la.row(rm_row);  // corner column
    const Partition conj = la.conjugate();
    BigInt num(1), den(n);
    for (int j = 1; j < s; ++j) {
        const int h = s - j + conj.row(j) - rm_row + 1;
        num *= h;
        den *= h - 1;
    }
    for (int i = 1; i < rm_row; ++i) {
        const int h = la.row(i) - s + rm_row - i + 1;
        num *= h;
        den *= h - 1;
    }
    return Rat(num, den);
}

}  // namespace thoma
