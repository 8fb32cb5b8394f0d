#pragma once

// Exact coefficient ring Z[q^{+-1}][x_1^{+-1}..x_n^{+-1}][P] with x_i standing for
// q^{<lambda, alpha_i^v>} at a symbolic dominant lambda, denominators built from
// atoms (1 - q^{-1} x_k^{-1}), and formal combinations of Demazure symbols.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "typec.hpp"

namespace invchev {

//---------------------------------------------------------------------------//
// Monomials and Laurent polynomials
//---------------------------------------------------------------------------//

/// q^qexp * x^x * e^e.
struct Monomial {
    int32_t qexp = 0;
    std::array<int16_t, kMaxRank> x{};
    std::array<int16_t, kMaxRank> e{};

    static Monomial one() { return {}; }
    static Monomial q_pow(int a) {
        Monomial m;
        m.qexp = a;
        return m;
    }
    static Monomial x_pow(int k, int b) {
        Monomial m;
        m.x[k - 1] = static_cast<int16_t>(b);
        return m;
    }
    static Monomial exp_weight(const Weight& nu) {
        Monomial m;
        for (int i = 0; i < nu.rank(); ++i) m.e[i] = static_cast<int16_t>(nu[i]);
        return m;
    }
    /// x^{-c(xi)} where xi = sum c_i alpha_i^v, i.e. q^{-<lambda, xi>}.
    static Monomial lambda_pairing(const Coroot& xi, int sign = -1) {
        Monomial m;
        auto c = simple_coroot_coords(xi);
        for (std::size_t i = 0; i < c.size(); ++i) m.x[i] = static_cast<int16_t>(sign * c[i]);
        return m;
    }

    bool is_one() const { return *this == Monomial{}; }
    bool has_weight() const {
        return std::any_of(e.begin(), e.end(), [](int16_t v) { return v != 0; });
    }

    friend Monomial operator*(Monomial a, const Monomial& b) {
        a.qexp += b.qexp;
        for (int i = 0; i < kMaxRank; ++i) {
            a.x[i] = static_cast<int16_t>(a.x[i] + b.x[i]);
            a.e[i] = static_cast<int16_t>(a.e[i] + b.e[i]);
        }
        return a;
    }
    Monomial inverse() const {
        Monomial m;
        m.qexp = -qexp;
        for (int i = 0; i < kMaxRank; ++i) {
            m.x[i] = static_cast<int16_t>(-x[i]);
            m.e[i] = static_cast<int16_t>(-e[i]);
        }
        return m;
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

    std::size_t hash() const {
        std::size_t h = static_cast<std::size_t>(qexp) * 0x9e3779b97f4a7c15ull;
        for (int i = 0; i < kMaxRank; ++i) {
            h ^= static_cast<std::size_t>(static_cast<uint16_t>(x[i])) + 0x9e3779b9 + (h << 6) + (h >> 2);
            h ^= static_cast<std::size_t>(static_cast<uint16_t>(e[i])) + 0x7f4a7c15 + (h << 6) + (h >> 2);
        }
        return h;
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// The atom t_k = q^{-1} x_k^{-1}; the denominators are 1 - t_k.
inline Monomial atom_monomial(int k) {
    Monomial m = Monomial::q_pow(-1);
    m.x[k - 1] = -1;
    return m;
}

/// Sparse Laurent polynomial with integer coefficients, kept sorted and pruned.
class Laurent {
  public:
    using Term = std::pair<Monomial, int64_t>;

    Laurent() = default;
    explicit Laurent(int64_t c) {
        if (c) terms_.push_back({Monomial{}, c});
    }
    explicit Laurent(const Monomial& m, int64_t c = 1) {
        if (c) terms_.push_back({m, c});
    }
    static Laurent from_terms(std::vector<Term> terms) {
        Laurent p;
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().first == t.first)
                p.terms_.back().second += t.second;
            else
                p.terms_.push_back(t);
        }
        p.prune();
        return p;
    }
    /// 1 - q^{-1} x_k^{-1}.
    static Laurent atom(int k) { return from_terms({{Monomial{}, 1}, {atom_monomial(k), -1}}); }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    friend Laurent operator+(const Laurent& a, const Laurent& b) { return merge(a, b, 1); }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return merge(a, b, -1); }
    Laurent operator-() const {
        Laurent r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }
    Laurent& operator+=(const Laurent& b) { return *this = *this + b; }
    Laurent& operator-=(const Laurent& b) { return *this = *this - b; }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        std::unordered_map<Monomial, int64_t, MonomialHash> acc;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) acc[ma * mb] += ca * cb;
        return from_terms({acc.begin(), acc.end()});
    }
    Laurent& operator*=(const Laurent& b) { return *this = *this * b; }
    Laurent times(const Monomial& m, int64_t c = 1) const {
        Laurent r;
        if (c == 0) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& [mm, cc] : terms_) r.terms_.push_back({mm * m, cc * c});
        return r;  // monomial multiplication preserves the order
    }

    /// Exact quotient by (1 - t) for a monomial t, or nullopt if not divisible.
    std::optional<Laurent> divide_one_minus(const Monomial& t) const {
        // Classes along t: m ~ m t^i. Pick a class representative and a position.
        // Position uses the first coordinate where t is nonzero.
        auto coord = [&](const Monomial& m) -> std::pair<int, int> {
            if (t.qexp != 0) return {0, m.qexp};
            for (int i = 0; i < kMaxRank; ++i) {
                if (t.x[i] != 0) return {1 + i, m.x[i]};
                if (t.e[i] != 0) return {1 + kMaxRank + i, m.e[i]};
            }
            throw std::invalid_argument("division by 1 - 1");
        };
        const int step = coord(t).second;
        if (step != 1 && step != -1) throw std::invalid_argument("atom must have a unit exponent");
        struct Entry {
            int pos;
            Monomial m;
            int64_t c;
        };
        std::map<Monomial, std::vector<Entry>> classes;
        for (const auto& [m, c] : terms_) {
            int pos = coord(m).second * step;
            // representative: m * t^{-pos}
            Monomial rep = m;
            Monomial tinv = t.inverse();
            for (int i = 0; i < std::abs(pos); ++i) rep = rep * (pos > 0 ? tinv : t);
            classes[rep].push_back({pos, m, c});
        }
        std::vector<Term> out;
        for (auto& [rep, entries] : classes) {
            std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.pos < b.pos; });
            int64_t run = 0;
            int lo = entries.front().pos, hi = entries.back().pos;
            std::size_t idx = 0;
            Monomial cur = rep;
            Monomial tinv = t.inverse();
            for (int i = 0; i < std::abs(lo); ++i) cur = cur * (lo > 0 ? t : tinv);
            for (int p = lo; p <= hi; ++p) {
                if (idx < entries.size() && entries[idx].pos == p) run += entries[idx++].c;
                if (p < hi && run != 0) out.push_back({cur, run});
                cur = cur * t;
            }
            if (run != 0) return std::nullopt;
        }
        return from_terms(std::move(out));
    }

    /// x_i -> x_i q^{shift_i} (e.g. substituting lambda -> lambda + nu).
    Laurent shift_x(const std::array<int, kMaxRank>& shift) const {
        std::vector<Term> out;
        for (const auto& [m, c] : terms_) {
            Monomial mm = m;
            for (int i = 0; i < kMaxRank; ++i) mm.qexp += mm.x[i] * shift[i];
            out.push_back({mm, c});
        }
        return from_terms(std::move(out));
    }

    /// x_i -> q^{lambda_i}: concrete dominant weight in fundamental-weight coordinates.
    Laurent specialize(const std::vector<int>& lambda_fund) const {
        std::vector<Term> out;
        for (const auto& [m, c] : terms_) {
            Monomial mm = m;
            for (std::size_t i = 0; i < lambda_fund.size(); ++i) {
                mm.qexp += mm.x[i] * lambda_fund[i];
                mm.x[i] = 0;
            }
            out.push_back({mm, c});
        }
        return from_terms(std::move(out));
    }

    friend bool operator==(const Laurent&, const Laurent&) = default;

  private:
    static Laurent merge(const Laurent& a, const Laurent& b, int64_t sb) {
        Laurent r;
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
                r.terms_.push_back({b.terms_[j].first, sb * b.terms_[j].second});
                ++j;
            } else {
                int64_t c = a.terms_[i].second + sb * b.terms_[j].second;
                if (c) r.terms_.push_back({a.terms_[i].first, c});
                ++i;
                ++j;
            }
        }
        return r;
    }
    void prune() {
        terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const Term& t) { return t.second == 0; }),
                     terms_.end());
    }

    std::vector<Term> terms_;
};

//---------------------------------------------------------------------------//
// Rational coefficients
//---------------------------------------------------------------------------//

/// Multiset of atoms (1 - q^{-1} x_k^{-1}), stored as multiplicities.
struct AtomSet {
    std::array<int8_t, kMaxRank> count{};

    static AtomSet single(int k) {
        AtomSet a;
        a.count[k - 1] = 1;
        return a;
    }
    bool empty() const {
        return std::all_of(count.begin(), count.end(), [](int8_t c) { return c == 0; });
    }
    static AtomSet lcm(const AtomSet& a, const AtomSet& b) {
        AtomSet r;
        for (int i = 0; i < kMaxRank; ++i) r.count[i] = std::max(a.count[i], b.count[i]);
        return r;
    }
    /// Product of atoms in `this` beyond those in `have`.
    Laurent excess_over(const AtomSet& have) const {
        Laurent p(1);
        for (int i = 0; i < kMaxRank; ++i)
            for (int c = have.count[i]; c < count[i]; ++c) p *= Laurent::atom(i + 1);
        return p;
    }
    Laurent product() const { return excess_over(AtomSet{}); }
    friend bool operator==(const AtomSet&, const AtomSet&) = default;
    friend auto operator<=>(const AtomSet&, const AtomSet&) = default;
};

/// numerator / prod(atoms).
struct RationalCoeff {
    Laurent num;
    AtomSet den;

    RationalCoeff() = default;
    RationalCoeff(Laurent p, AtomSet d = {}) : num(std::move(p)), den(d) { reduce(); }

    bool is_zero() const { return num.is_zero(); }

    /// Cancel atoms that divide the numerator exactly.
    void reduce() {
        if (num.is_zero()) {
            den = {};
            return;
        }
        for (int i = 0; i < kMaxRank; ++i)
            while (den.count[i] > 0) {
                auto q = num.divide_one_minus(atom_monomial(i + 1));
                if (!q) break;
                num = std::move(*q);
                --den.count[i];
            }
    }

    friend RationalCoeff operator+(const RationalCoeff& a, const RationalCoeff& b) {
        AtomSet d = AtomSet::lcm(a.den, b.den);
        return {a.num * d.excess_over(a.den) + b.num * d.excess_over(b.den), d};
    }
    friend RationalCoeff operator-(const RationalCoeff& a, const RationalCoeff& b) { return a + (-b); }
    RationalCoeff operator-() const {
        RationalCoeff r = *this;
        r.num = -r.num;
        return r;
    }
    friend RationalCoeff operator*(const RationalCoeff& a, const RationalCoeff& b) {
        AtomSet d;
        for (int i = 0; i < kMaxRank; ++i) d.count[i] = static_cast<int8_t>(a.den.count[i] + b.den.count[i]);
        return {a.num * b.num, d};
    }
    friend bool operator==(const RationalCoeff& a, const RationalCoeff& b) { return (a - b).is_zero(); }
};

//---------------------------------------------------------------------------//
// Demazure symbol combinations
//---------------------------------------------------------------------------//

/// V_y^-(lambda + mu).
struct SymbolKey {
    WeylElt y;
    Weight mu;
    friend bool operator==(const SymbolKey&, const SymbolKey&) = default;
    friend auto operator<=>(const SymbolKey&, const SymbolKey&) = default;
    std::size_t hash() const { return y.hash() * 1000003u ^ mu.hash(); }
};

/// Absorb the translation of V_{w t_xi}^-(lambda + mu): multiplier q^{-<mu,xi>} x^{-c(xi)}.
inline std::pair<SymbolKey, Monomial> normalize(const AffineElt& x, const Weight& mu) {
    Monomial mult = Monomial::lambda_pairing(x.xi) * Monomial::q_pow(-pair(mu, x.xi));
    return {{x.w, mu}, mult};
}

class DemazureCombo {
  public:
    using Map = std::map<SymbolKey, RationalCoeff>;

    DemazureCombo() = default;

    void add(const SymbolKey& key, const RationalCoeff& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
    /// c * V_{x}^-(lambda + mu) after normalization.
    void add_symbol(const AffineElt& x, const Weight& mu, const RationalCoeff& c) {
        auto [key, mult] = normalize(x, mu);
        add(key, RationalCoeff(c.num.times(mult), c.den));
    }

    DemazureCombo& operator+=(const DemazureCombo& o) {
        for (const auto& [k, c] : o.terms_) add(k, c);
        return *this;
    }
    DemazureCombo& operator-=(const DemazureCombo& o) {
        for (const auto& [k, c] : o.terms_) add(k, -c);
        return *this;
    }
    friend DemazureCombo operator+(DemazureCombo a, const DemazureCombo& b) { return a += b; }
    friend DemazureCombo operator-(DemazureCombo a, const DemazureCombo& b) { return a -= b; }
    DemazureCombo scaled(const RationalCoeff& c) const {
        DemazureCombo r;
        for (const auto& [k, v] : terms_) r.add(k, v * c);
        return r;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }
    const RationalCoeff* find(const SymbolKey& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? nullptr : &it->second;
    }

    /// Key-wise equality after reduction.
    friend bool operator==(const DemazureCombo& a, const DemazureCombo& b) { return (a - b).is_zero(); }

    /// Every coefficient is +-(monomial) with no atoms and no e^nu.
    bool is_signed_monomial_combo() const {
        for (const auto& [k, c] : terms_) {
            if (!c.den.empty()) return false;
            for (const auto& [m, v] : c.num.terms())
                if ((v != 1 && v != -1) || m.has_weight()) return false;
        }
        return true;
    }

  private:
    Map terms_;
};

struct ClearedPair {
    DemazureCombo a, b;
    AtomSet common;
};

/// Multiply both combos by the product of all atoms appearing in either one.
inline ClearedPair clear_denominators(const DemazureCombo& a, const DemazureCombo& b) {
    AtomSet common;
    for (const auto* c : {&a, &b})
        for (const auto& [k, v] : c->terms()) common = AtomSet::lcm(common, v.den);
    auto clear = [&](const DemazureCombo& c) {
        DemazureCombo out;
        for (const auto& [k, v] : c.terms()) out.add(k, RationalCoeff(v.num * common.excess_over(v.den)));
        return out;
    };
    return {clear(a), clear(b), common};
}

/// Hash-based accumulator for streams of monomial terms, grouped by denominator.
class ComboAccumulator {
  public:
    void add(const SymbolKey& key, const Monomial& m, int64_t c, const AtomSet& den = {}) {
        if (c == 0) return;
        auto& slot = acc_[{key, den}][m];
        slot += c;
    }
    void add(const SymbolKey& key, const Laurent& p, const AtomSet& den = {}) {
        for (const auto& [m, c] : p.terms()) add(key, m, c, den);
    }

    DemazureCombo build() const {
        DemazureCombo out;
        for (const auto& [kd, terms] : acc_) {
            std::vector<Laurent::Term> t;
            for (const auto& [m, c] : terms)
                if (c) t.push_back({m, c});
            if (t.empty()) continue;
            out.add(kd.first, RationalCoeff(Laurent::from_terms(std::move(t)), kd.second));
        }
        return out;
    }

  private:
    struct KeyHash {
        std::size_t operator()(const std::pair<SymbolKey, AtomSet>& k) const {
            std::size_t h = k.first.hash();
            for (auto c : k.second.count) h = h * 31u + static_cast<std::size_t>(c);
            return h;
        }
    };
    std::unordered_map<std::pair<SymbolKey, AtomSet>, std::unordered_map<Monomial, int64_t, MonomialHash>, KeyHash>
        acc_;
};

//---------------------------------------------------------------------------//
// Specialization at a concrete dominant weight
//---------------------------------------------------------------------------//

/// numerator / denominator in Z[q^{+-1}][P], both explicit Laurent polynomials.
struct SpecializedCoeff {
    Laurent num;
    Laurent den{1};

    friend bool operator==(const SpecializedCoeff& a, const SpecializedCoeff& b) {
        return a.num * b.den == b.num * a.den;
    }
    friend SpecializedCoeff operator+(const SpecializedCoeff& a, const SpecializedCoeff& b) {
        if (a.den == b.den) return {a.num + b.num, a.den};
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    SpecializedCoeff operator-() const { return {-num, den}; }
};

inline SpecializedCoeff specialize(const RationalCoeff& c, const std::vector<int>& lambda_fund) {
    Laurent den(1);
    for (int i = 0; i < kMaxRank; ++i)
        for (int t = 0; t < c.den.count[i]; ++t) {
            // 1 - q^{-1 - lambda_i}
            den *= Laurent::from_terms({{Monomial{}, 1}, {Monomial::q_pow(-1 - lambda_fund.at(i)), -1}});
        }
    return {c.num.specialize(lambda_fund), den};
}

/// Specialized combo: V_y^-(lambda+mu) keys with concrete coefficients.
using SpecializedCombo = std::map<SymbolKey, SpecializedCoeff>;

inline SpecializedCombo specialize(const DemazureCombo& c, const std::vector<int>& lambda_fund) {
    SpecializedCombo out;
    for (const auto& [k, v] : c.terms()) out.emplace(k, specialize(v, lambda_fund));
    return out;
}

inline bool specialized_equal(const SpecializedCombo& a, const SpecializedCombo& b) {
    SpecializedCoeff zero{Laurent(), Laurent(1)};
    for (const auto& [k, v] : a) {
        auto it = b.find(k);
        if (!(v == (it == b.end() ? zero : it->second))) return false;
    }
    for (const auto& [k, v] : b)
        if (!a.count(k) && !(v == zero)) return false;
    return true;
}

//---------------------------------------------------------------------------//
// Rendering
//---------------------------------------------------------------------------//

inline std::string weight_latex(const Weight& nu) {
    std::string s;
    for (int i = 0; i < nu.rank(); ++i) {
        int c = nu[i];
        if (!c) continue;
        if (c > 0 && !s.empty()) s += "+";
        if (c == -1)
            s += "-";
        else if (c != 1)
            s += std::to_string(c);
        s += "\\varepsilon_{" + std::to_string(i + 1) + "}";
    }
    return s.empty() ? "0" : s;
}

inline std::string monomial_latex(const Monomial& m, int n) {
    std::string s;
    if (m.qexp) s += "q^{" + std::to_string(m.qexp) + "}";
    for (int i = 0; i < n; ++i)
        if (m.x[i]) s += "x_{" + std::to_string(i + 1) + "}" + (m.x[i] == 1 ? "" : "^{" + std::to_string(m.x[i]) + "}");
    Weight nu(n);
    for (int i = 0; i < n; ++i) nu[i] = m.e[i];
    if (!nu.is_zero()) s += "e^{" + weight_latex(nu) + "}";
    return s;
}

inline std::string laurent_latex(const Laurent& p, int n) {
    if (p.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : p.terms()) {
        std::string body = monomial_latex(m, n);
        int64_t a = c < 0 ? -c : c;
        std::string coef = (a == 1 && !body.empty()) ? "" : std::to_string(a);
        if (s.empty())
            s += (c < 0 ? "-" : "");
        else
            s += (c < 0 ? " - " : " + ");
        s += coef + body;
    }
    return s;
}

inline std::string rational_latex(const RationalCoeff& c, int n) {
    std::string num = laurent_latex(c.num, n);
    if (c.den.empty()) return num;
    std::string den;
    for (int i = 0; i < kMaxRank; ++i)
        for (int t = 0; t < c.den.count[i]; ++t) den += "(1-q^{-1}x_{" + std::to_string(i + 1) + "}^{-1})";
    return "\\frac{" + num + "}{" + den + "}";
}

inline std::string weyl_latex(const WeylElt& w) {
    auto word = w.reduced_word();
    if (word.empty()) return "e";
    std::string s;
    for (int i : word) s += "s_{" + std::to_string(i) + "}";
    return s;
}

inline std::string symbol_latex(const SymbolKey& k) {
    std::string arg = "\\lambda";
    if (!k.mu.is_zero()) {
        std::string mu = weight_latex(k.mu);
        arg += (mu.front() == '-' ? "" : "+") + mu;
    }
    return "\\mathrm{gch}\\, V_{" + weyl_latex(k.y) + "}^{-}(" + arg + ")";
}

inline std::string combo_latex(const DemazureCombo& c) {
    if (c.is_zero()) return "0";
    std::string s;
    for (const auto& [k, v] : c.terms()) {
        if (!s.empty()) s += "\n + ";
        s += "\\left(" + rational_latex(v, k.y.rank()) + "\\right) " + symbol_latex(k);
    }
    return s;
}

inline std::string combo_text(const DemazureCombo& c) {
    std::ostringstream os;
    for (const auto& [k, v] : c.terms()) {
        os << "V_" << k.y.window_string() << "(lambda";
        if (!k.mu.is_zero()) {
            os << "+[";
            for (int i = 0; i < k.mu.rank(); ++i) os << (i ? "," : "") << k.mu[i];
            os << "]";
        }
        os << ") : " << rational_latex(v, k.y.rank()) << "\n";
    }
    return os.str();
}

}  // namespace invchev

template <>
struct std::hash<invchev::Monomial> {
    std::size_t operator()(const invchev::Monomial& m) const { return m.hash(); }
};
