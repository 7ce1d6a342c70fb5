#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dimension.hpp"
#include "partition.hpp"
#include "rational.hpp"

namespace thoma {

// ---------------------------------------------------------------------------
// Sparse polynomials in countably many indeterminates x_1, x_2, ...
// A monomial is the multiset of its part indices, stored sorted descending.
// The Tag fixes the grading: power sums weigh index i as i, moment
// coordinates weigh q_i as i+1 (the degree of its power-sum lift).
// ---------------------------------------------------------------------------

struct PowerTag {
    static constexpr int weight(int i) { return i; }
    static constexpr const char* symbol() { return "p"; }
};
struct MomentTag {
    static constexpr int weight(int i) { return i + 1; }
    static constexpr const char* symbol() { return "q"; }
};

template <class Tag>
class MPoly {
public:
    using Monomial = std::vector<int>;  // indices >= 1, sorted descending

    MPoly() = default;

    static MPoly constant(Rat c) {
        MPoly f;
        if (c != 0) f.terms_[{}] = std::move(c);
        return f;
    }
    static MPoly variable(int i) { return monomial({i}, 1); }
    static MPoly monomial(Monomial m, Rat c) {
        for (int i : m)
            if (i < 1) throw std::invalid_argument("MPoly: indices must be >= 1");
        std::sort(m.begin(), m.end(), std::greater<int>());
        MPoly f;
        if (c != 0) f.terms_[std::move(m)] = std::move(c);
        return f;
    }

    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rat coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    static int monomial_degree(const Monomial& m) {
        int d = 0;
        for (int i : m) d += Tag::weight(i);
        return d;
    }

    int degree() const {  // max weighted degree; -1 for the zero polynomial
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
        return d;
    }

    int max_index() const {
        int k = 0;
        for (const auto& [m, c] : terms_)
            if (!m.empty()) k = std::max(k, m.front());
        return k;
    }

    bool is_homogeneous() const {
        int d = -1;
        for (const auto& [m, c] : terms_) {
            int md = monomial_degree(m);
            if (d == -1) d = md;
            if (md != d) return false;
        }
        return true;
    }

    std::map<int, MPoly> by_degree() const {
        std::map<int, MPoly> parts;
        for (const auto& [m, c] : terms_) parts[monomial_degree(m)].terms_[m] = c;
        return parts;
    }

    MPoly& operator+=(const MPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    MPoly& operator-=(const MPoly& o) {
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    MPoly& operator*=(const Rat& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }
    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(MPoly a, const Rat& s) { return a *= s; }
    friend MPoly operator*(const Rat& s, MPoly a) { return a *= s; }
    friend MPoly operator-(MPoly a) { return a *= Rat(-1); }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m;
                m.reserve(ma.size() + mb.size());
                std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m),
                           std::greater<int>());
                out.add_term(m, ca * cb);
            }
        return out;
    }

    bool operator==(const MPoly& o) const { return terms_ == o.terms_; }

    MPoly derivative(int i) const {
        MPoly out;
        for (const auto& [m, c] : terms_) {
            auto it = std::find(m.begin(), m.end(), i);
            if (it == m.end()) continue;
            int mult = static_cast<int>(std::count(m.begin(), m.end(), i));
            Monomial m2 = m;
            m2.erase(std::find(m2.begin(), m2.end(), i));
            out.add_term(m2, c * mult);
        }
        return out;
    }

    /// Evaluate with value(i) supplying the i-th indeterminate.
    template <class F>
    Rat eval(F&& value) const {
        Rat total{0};
        for (const auto& [m, c] : terms_) {
            Rat t = c;
            for (std::size_t k = 0; k < m.size();) {
                std::size_t j = k;
                while (j < m.size() && m[j] == m[k]) ++j;
                t *= rat_pow(value(m[k]), static_cast<unsigned>(j - k));
                k = j;
            }
            total += t;
        }
        return total;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            os << (first ? "" : " + ") << "(" << format_rat(c) << ")";
            for (int i : m) os << Tag::symbol() << i;
            first = false;
        }
        return os.str();
    }

    void add_term(const Monomial& m, const Rat& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

private:
    std::map<Monomial, Rat> terms_;
};

using PowerSumPoly = MPoly<PowerTag>;  // elements of the symmetric function algebra in the p basis
using QPoly = MPoly<MomentTag>;        // polynomials in the moment coordinates q_1, q_2, ...

// ---------------------------------------------------------------------------
// Symmetric group characters (Murnaghan–Nakayama on beta-sets).
// ---------------------------------------------------------------------------

namespace detail {

inline BigInt mn_recurse(std::vector<int>& beta, const std::vector<int>& rho, std::size_t idx) {
    if (idx == rho.size()) return BigInt(1);
    const int r = rho[idx];
    BigInt total{0};
    for (std::size_t k = 0; k < beta.size(); ++k) {
        const int b = beta[k];
        if (b < r) continue;
        const int t = b - r;
        if (std::binary_search(beta.begin(), beta.end(), t)) continue;
        // beta is sorted ascending; moving b down to t hops over the entries
        // strictly between them, each hop flipping the sign.
        int ht = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (beta[j] > t) ++ht;
        std::vector<int> next = beta;
        next.erase(next.begin() + static_cast<std::ptrdiff_t>(k));
        next.insert(std::lower_bound(next.begin(), next.end(), t), t);
        const BigInt sub = mn_recurse(next, rho, idx + 1);
        total += (ht % 2 == 0) ? sub : -sub;
    }
    return total;
}

}  // namespace detail

/// Irreducible character chi^lambda at the class of cycle type rho.
inline BigInt mn_character(const Partition& la, const Partition& rho) {
    if (la.size() != rho.size()) throw std::invalid_argument("mn_character: |lambda| != |rho|");
    const int L = std::max(la.num_rows(), 1);
    std::vector<int> beta(static_cast<std::size_t>(L));
    for (int i = 0; i < L; ++i) beta[static_cast<std::size_t>(i)] = la.row(L - i) + i;
    return detail::mn_recurse(beta, rho.rows(), 0);
}

/// Centralizer size z_rho = prod_i i^{m_i} m_i!.
inline BigInt centralizer_size(const Partition& rho) {
    BigInt z{1};
    const auto& r = rho.rows();
    for (std::size_t i = 0; i < r.size();) {
        std::size_t j = i;
        while (j < r.size() && r[j] == r[i]) ++j;
        const int mult = static_cast<int>(j - i);
        for (int k = 0; k < mult; ++k) z *= r[i];
        z *= factorial(mult);
        i = j;
    }
    return z;
}

/// Full character table of a symmetric group degree, built lazily and cached.
class CharacterTable {
public:
    static const CharacterTable& of_degree(int m) {
        static std::mutex mu;
        static std::map<int, CharacterTable> cache;
        std::lock_guard lk(mu);
        auto it = cache.find(m);
        if (it == cache.end()) it = cache.emplace(m, CharacterTable(m)).first;
        return it->second;
    }

    const std::vector<Partition>& labels() const { return labels_; }

    const BigInt& value(std::size_t la_idx, std::size_t rho_idx) const {
        return table_[la_idx][rho_idx];
    }

    std::size_t index_of(const Partition& p) const {
        auto it = index_.find(p);
        if (it == index_.end()) throw std::invalid_argument("CharacterTable: bad label");
        return it->second;
    }

private:
    explicit CharacterTable(int m) : labels_(enumerate_level(m)) {
        for (std::size_t i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], i);
        table_.resize(labels_.size());
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            table_[i].resize(labels_.size());
            for (std::size_t j = 0; j < labels_.size(); ++j)
                table_[i][j] = mn_character(labels_[i], labels_[j]);
        }
    }

    std::vector<Partition> labels_;
    std::map<Partition, std::size_t> index_;
    std::vector<std::vector<BigInt>> table_;
};

// ---------------------------------------------------------------------------
// Schur basis vectors (one homogeneous degree) and basis conversions.
// ---------------------------------------------------------------------------

struct SchurVector {
    int degree = 0;
    std::map<Partition, Rat> coeffs;

    static SchurVector unit(const Partition& mu) { return {mu.size(), {{mu, Rat(1)}}}; }

    void add(const Partition& p, const Rat& c) {
        if (c == 0) return;
        auto [it, fresh] = coeffs.try_emplace(p, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) coeffs.erase(it);
        }
    }

    bool is_zero() const { return coeffs.empty(); }
    bool operator==(const SchurVector& o) const = default;

    SchurVector& operator+=(const SchurVector& o) {
        for (const auto& [p, c] : o.coeffs) add(p, c);
        return *this;
    }
    SchurVector& operator-=(const SchurVector& o) {
        for (const auto& [p, c] : o.coeffs) add(p, -c);
        return *this;
    }
    SchurVector& operator*=(const Rat& s) {
        if (s == 0) {
            coeffs.clear();
            return *this;
        }
        for (auto& [p, c] : coeffs) c *= s;
        return *this;
    }

    std::string str() const {
        if (coeffs.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [p, c] : coeffs) {
            os << (first ? "" : " + ") << "(" << format_rat(c) << ")s" << p.str();
            first = false;
        }
        return os.str();
    }
};

/// s_mu = sum_rho chi^mu_rho p_rho / z_rho.
inline PowerSumPoly schur_to_p(const Partition& mu) {
    const int m = mu.size();
    const auto& table = CharacterTable::of_degree(m);
    const std::size_t mi = table.index_of(mu);
    PowerSumPoly out;
    for (std::size_t j = 0; j < table.labels().size(); ++j) {
        const Partition& rho = table.labels()[j];
        const BigInt& chi = table.value(mi, j);
        if (chi == 0) continue;
        out.add_term(rho.rows(), Rat(chi, centralizer_size(rho)));
    }
    return out;
}

/// Inverse transition: expands a homogeneous p-polynomial over Schur
/// functions through p_rho = sum_la chi^la_rho s_la.
inline SchurVector p_to_schur(const PowerSumPoly& f) {
    if (!f.is_homogeneous()) throw std::invalid_argument("p_to_schur: input not homogeneous");
    SchurVector out;
    out.degree = std::max(f.degree(), 0);
    const auto& table = CharacterTable::of_degree(out.degree);
    for (const auto& [rho_key, c] : f.terms()) {
        const Partition rho(rho_key);
        const std::size_t rj = table.index_of(rho);
        for (std::size_t i = 0; i < table.labels().size(); ++i) {
            const BigInt& chi = table.value(i, rj);
            if (chi != 0) out.add(table.labels()[i], c * Rat(chi));
        }
    }
    return out;
}

/// The algebra morphism sending a symmetric function to its value on a
/// diagram: p_k(la) = sum a_i^k + (-1)^{k-1} sum b_i^k in modified Frobenius
/// coordinates. In particular p_1(la) = |la|.
inline Rat eval_power_sum(int k, const Partition& la) {
    const auto fc = frobenius(la);
    BigInt num{0};
    for (int a : fc.arm2) {
        BigInt t{a};
        for (int j = 1; j < k; ++j) t *= a;
        num += t;
    }
    for (int b : fc.leg2) {
        BigInt t{b};
        for (int j = 1; j < k; ++j) t *= b;
        if (k % 2 == 0) num -= t; else num += t;
    }
    return Rat(num, BigInt(1) << k);
}

inline Rat eval_on_diagram(const PowerSumPoly& f, const Partition& la) {
    return f.eval([&](int k) { return eval_power_sum(k, la); });
}

/// Value of the Frobenius–Schur function FS_mu on la:
/// n(n-1)...(n-m+1) * skew_dim(mu, la) / dim(la). Vanishes unless la
/// contains mu; FS_empty = 1 and FS_(1)(la) = |la|.
inline Rat fs_eval(const Partition& mu, const Partition& la) {
    if (!la.contains(mu)) return Rat(0);
    return Rat(falling_factorial(la.size(), mu.size()) * skew_dim(mu, la), dim(la));
}

/// Multiplication by p_1 in the Schur basis: s_la -> sum over la+box.
inline SchurVector pieri_p1(const SchurVector& v) {
    SchurVector out;
    out.degree = v.degree + 1;
    for (const auto& [mu, c] : v.coeffs)
        for (const auto& b : mu.addable()) out.add(mu.with_box_added(b.row), c);
    return out;
}

/// Content-weighted lowering operator: s_mu -> sum over corners of
/// content^k s_{mu - box}. For k = 0 this is the adjoint of pieri_p1.
inline SchurVector content_op(int k, const SchurVector& v) {
    if (k < 0) throw std::invalid_argument("content_op: k must be >= 0");
    SchurVector out;
    out.degree = v.degree - 1;
    for (const auto& [mu, c] : v.coeffs)
        for (const auto& b : mu.removable()) {
            BigInt w{1};
            for (int j = 0; j < k; ++j) w *= b.content();
            out.add(mu.with_box_removed(b.row), c * Rat(w));
        }
    return out;
}

/// Quotient map modulo the ideal (p_1 - 1): substitute p_1 := 1 and rename
/// p_k -> q_{k-1} for k >= 2.
inline QPoly reduce_mod_p1(const PowerSumPoly& f) {
    QPoly out;
    for (const auto& [m, c] : f.terms()) {
        std::vector<int> q;
        q.reserve(m.size());
        for (int i : m)
            if (i >= 2) q.push_back(i - 1);
        out.add_term(q, c);
    }
    return out;
}

/// Canonical lift of the quotient: q_i -> p_{i+1}.
inline PowerSumPoly lift_to_power_sums(const QPoly& f) {
    PowerSumPoly out;
    for (const auto& [m, c] : f.terms()) {
        std::vector<int> p;
        p.reserve(m.size());
        for (int i : m) p.push_back(i + 1);
        out.add_term(p, c);
    }
    return out;
}

}  // namespace thoma
