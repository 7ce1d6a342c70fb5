#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace thoma {

/// An addable or removable corner box; content = column - row.
struct BoxMove {
    enum class Kind { addable, removable };
    Kind kind;
    int row;     // 1-based
    int column;  // 1-based
    int content() const { return column - row; }
};

/// A Young diagram: weakly decreasing positive row lengths, empty = the
/// zero-box diagram. Canonical form (no trailing zeros) makes equality
/// structural. Immutable after construction.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> rows) : rows_(std::move(rows)) {
        while (!rows_.empty() && rows_.back() == 0) rows_.pop_back();
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (rows_[i] <= 0 || (i > 0 && rows_[i] > rows_[i - 1]))
                throw std::invalid_argument("Partition: rows must be positive and weakly decreasing");
        }
    }

    Partition(std::initializer_list<int> rows) : Partition(std::vector<int>(rows)) {}

    const std::vector<int>& rows() const { return rows_; }
    int num_rows() const { return static_cast<int>(rows_.size()); }
    bool empty() const { return rows_.empty(); }
    int row(int i) const { return i >= 1 && i <= num_rows() ? rows_[i - 1] : 0; }

    /// Number of boxes.
    int size() const { return std::accumulate(rows_.begin(), rows_.end(), 0); }

    Partition conjugate() const {
        std::vector<int> t;
        if (!rows_.empty()) {
            t.resize(rows_[0]);
            for (int j = 0; j < rows_[0]; ++j) {
                int cnt = 0;
                for (int r : rows_)
                    if (r >= j + 1) ++cnt;
                t[j] = cnt;
            }
        }
        return Partition(std::move(t));
    }

    bool contains(const Partition& mu) const {
        if (mu.num_rows() > num_rows()) return false;
        for (int i = 0; i < mu.num_rows(); ++i)
            if (mu.rows_[i] > rows_[i]) return false;
        return true;
    }

    /// Corner boxes that can be appended, top row first.
    std::vector<BoxMove> addable() const {
        std::vector<BoxMove> out;
        for (int i = 1; i <= num_rows(); ++i)
            if (i == 1 || rows_[i - 2] > rows_[i - 1])
                out.push_back({BoxMove::Kind::addable, i, rows_[i - 1] + 1});
        out.push_back({BoxMove::Kind::addable, num_rows() + 1, 1});
        return out;
    }

    /// Corner boxes that can be deleted, top row first.
    std::vector<BoxMove> removable() const {
        std::vector<BoxMove> out;
        for (int i = 1; i <= num_rows(); ++i)
            if (i == num_rows() || rows_[i] < rows_[i - 1])
                out.push_back({BoxMove::Kind::removable, i, rows_[i - 1]});
        return out;
    }

    Partition with_box_added(int r) const {
        std::vector<int> v = rows_;
        if (r == num_rows() + 1)
            v.push_back(1);
        else
            ++v.at(r - 1);
        return Partition(std::move(v));
    }

    Partition with_box_removed(int r) const {
        std::vector<int> v = rows_;
        --v.at(r - 1);
        return Partition(std::move(v));
    }

    bool operator==(const Partition&) const = default;
    auto operator<=>(const Partition& o) const { return rows_ <=> o.rows_; }

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < rows_.size(); ++i) os << (i ? "," : "") << rows_[i];
        os << ')';
        return os.str();
    }

private:
    std::vector<int> rows_;
};

/// Modified Frobenius coordinates. Arm/leg lengths are half-integers stored
/// doubled: arm2[i] = 2*a_i and leg2[i] = 2*b_i are odd positive integers,
/// strictly decreasing, with sum(a_i + b_i) = |lambda|.
struct FrobeniusCoords {
    int diag = 0;
    std::vector<int> arm2;
    std::vector<int> leg2;
};

inline FrobeniusCoords frobenius(const Partition& la) {
    FrobeniusCoords fc;
    const Partition conj = la.conjugate();
    for (int i = 1; i <= la.num_rows(); ++i) {
        if (la.row(i) < i) break;
        ++fc.diag;
        fc.arm2.push_back(2 * (la.row(i) - i) + 1);
        fc.leg2.push_back(2 * (conj.row(i) - i) + 1);
    }
    return fc;
}

/// All partitions of n, each exactly once, in reverse lexicographic order on
/// row sequences: (n) first, (1,...,1) last. This order is the index contract
/// for every level-indexed matrix in the library.
inline std::vector<Partition> enumerate_level(int n) {
    if (n < 0) throw std::invalid_argument("enumerate_level: n must be >= 0");
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int k = std::min(rest, maxpart); k >= 1; --k) {
            cur.push_back(k);
            self(self, rest - k, k);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

/// Contents of addable boxes (x, ascending) and removable boxes (y, ascending).
/// They interlace: x1 < y1 < x2 < ... < y_k < x_{k+1}.
inline std::pair<std::vector<int>, std::vector<int>> interlacing(const Partition& la) {
    std::vector<int> x, y;
    for (const auto& b : la.addable()) x.push_back(b.content());
    for (const auto& b : la.removable()) y.push_back(b.content());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return {std::move(x), std::move(y)};
}

struct PartitionHash {
    std::size_t operator()(const Partition& p) const {
        std::size_t h = 1469598103934665603ull;
        for (int r : p.rows()) {
            h ^= static_cast<std::size_t>(r);
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace thoma
