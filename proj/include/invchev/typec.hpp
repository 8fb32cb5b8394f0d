#pragma once

// Root datum of type C_n in the epsilon realization: weights, coroots,
// roots, the hyperoctahedral Weyl group in window notation, and the affine
// Weyl group W x| Q^vee.

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace invchev {

/// Largest rank the fixed-capacity value types can hold.
inline constexpr int kMaxRank = 8;

class RankError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

inline void check_rank(int n) {
    if (n < 1 || n > kMaxRank)
        throw RankError("rank must lie in [1, " + std::to_string(kMaxRank) +
                        "], got " + std::to_string(n));
}

//---------------------------------------------------------------------------//
// Lattice vectors
//---------------------------------------------------------------------------//

/// Integer vector of length n in a fixed basis; Tag separates weights from
/// coroots so the pairing is the only way to mix them.
template <class Tag>
class LatticeVec {
  public:
    LatticeVec() = default;
    explicit LatticeVec(int n) : n_(static_cast<int8_t>(n)) { check_rank(n); }
    LatticeVec(int n, std::initializer_list<int> coords) : LatticeVec(n) {
        if (static_cast<int>(coords.size()) != n)
            throw std::invalid_argument("coordinate count does not match rank");
        std::copy(coords.begin(), coords.end(), c_.begin());
    }
    static LatticeVec from(const std::vector<int>& coords) {
        LatticeVec v(static_cast<int>(coords.size()));
        std::copy(coords.begin(), coords.end(), v.c_.begin());
        return v;
    }
    /// Unit vector e_k, 1-based.
    static LatticeVec unit(int n, int k) {
        LatticeVec v(n);
        v.c_[k - 1] = 1;
        return v;
    }

    int rank() const { return n_; }
    int operator[](int i) const { return c_[i]; }
    int& operator[](int i) { return c_[i]; }
    /// 1-based coordinate access matching eps_1..eps_n.
    int at(int k) const { return c_[k - 1]; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.begin() + n_, [](int x) { return x == 0; });
    }
    std::vector<int> coords() const { return {c_.begin(), c_.begin() + n_}; }

    LatticeVec& operator+=(const LatticeVec& o) {
        for (int i = 0; i < n_; ++i) c_[i] += o.c_[i];
        return *this;
    }
    LatticeVec& operator-=(const LatticeVec& o) {
        for (int i = 0; i < n_; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    LatticeVec& operator*=(int s) {
        for (int i = 0; i < n_; ++i) c_[i] *= s;
        return *this;
    }
    friend LatticeVec operator+(LatticeVec a, const LatticeVec& b) { return a += b; }
    friend LatticeVec operator-(LatticeVec a, const LatticeVec& b) { return a -= b; }
    friend LatticeVec operator*(int s, LatticeVec a) { return a *= s; }
    friend LatticeVec operator-(LatticeVec a) { return a *= -1; }

    friend bool operator==(const LatticeVec& a, const LatticeVec& b) {
        return a.n_ == b.n_ && std::equal(a.c_.begin(), a.c_.begin() + a.n_, b.c_.begin());
    }
    friend auto operator<=>(const LatticeVec& a, const LatticeVec& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return std::lexicographical_compare_three_way(a.c_.begin(), a.c_.begin() + a.n_,
                                                      b.c_.begin(), b.c_.begin() + b.n_);
    }

    std::size_t hash() const {
        std::size_t h = static_cast<std::size_t>(n_);
        for (int i = 0; i < n_; ++i)
            h = h * 1000003u ^ static_cast<std::size_t>(c_[i] + 0x9e37);
        return h;
    }

  private:
    int8_t n_ = 0;
    std::array<int32_t, kMaxRank> c_{};
};

struct WeightTag {};
struct CorootTag {};

/// Element of P in eps-coordinates.
using Weight = LatticeVec<WeightTag>;
/// Element of the coroot lattice in the dual basis eps_1^v..eps_n^v.
using Coroot = LatticeVec<CorootTag>;

inline int pair(const Weight& lam, const Coroot& cv) {
    assert(lam.rank() == cv.rank());
    int s = 0;
    for (int i = 0; i < lam.rank(); ++i) s += lam[i] * cv[i];
    return s;
}

/// eps_a for a signed index a in [n-bar]; eps_{-k} = -eps_k.
inline Weight eps(int n, int a) {
    Weight v(n);
    v[std::abs(a) - 1] = a > 0 ? 1 : -1;
    return v;
}

inline Weight fundamental_weight(int n, int i) {
    Weight v(n);
    for (int k = 0; k < i; ++k) v[k] = 1;
    return v;
}

inline Weight rho(int n) {
    Weight v(n);
    for (int k = 0; k < n; ++k) v[k] = n - k;
    return v;
}

inline Coroot simple_coroot(int n, int i) {
    Coroot c(n);
    c[i - 1] = 1;
    if (i < n) c[i] = -1;
    return c;
}

/// Coordinates with respect to alpha_1^v..alpha_n^v: a_j = c_1 + ... + c_j.
inline std::vector<int> simple_coroot_coords(const Coroot& c) {
    std::vector<int> a(c.rank());
    int run = 0;
    for (int j = 0; j < c.rank(); ++j) a[j] = (run += c[j]);
    return a;
}

inline Coroot coroot_from_simple_coords(int n, const std::vector<int>& a) {
    if (static_cast<int>(a.size()) != n)
        throw std::invalid_argument("simple-coroot coordinate count does not match rank");
    Coroot c(n);
    for (int j = 0; j < n; ++j) c[j] = a[j] - (j > 0 ? a[j - 1] : 0);
    return c;
}

//---------------------------------------------------------------------------//
// Signed indices and the total order 1 < ... < n < n-bar < ... < 1-bar
//---------------------------------------------------------------------------//

/// Position of a signed index in the total order, 1..2n.
inline int order_pos(int n, int a) { return a > 0 ? a : 2 * n + 1 + a; }
inline int from_order_pos(int n, int p) { return p <= n ? p : p - 2 * n - 1; }
inline bool index_less(int n, int a, int b) { return order_pos(n, a) < order_pos(n, b); }

inline std::string index_name(int a) {
    return a > 0 ? std::to_string(a) : std::to_string(-a) + "̄";
}

//---------------------------------------------------------------------------//
// Roots
//---------------------------------------------------------------------------//

/// A root sign * (i, j) where (i, j) is a positive-root label:
/// j > 0 means eps_i - eps_j (i < j), j < 0 means eps_i + eps_|j| (i <= |j|).
class Root {
  public:
    Root() = default;
    Root(int i, int j, int sign = 1) : i_(int8_t(i)), j_(int8_t(j)), sign_(int8_t(sign)) {
        if (i < 1 || j == 0 || (j > 0 && j <= i) || (j < 0 && -j < i) || (sign != 1 && sign != -1))
            throw std::invalid_argument("malformed root label");
    }

    /// The root eps_a - eps_b for signed indices a != b.
    static Root from_pair(int n, int a, int b) {
        if (a == b || a == 0 || b == 0) throw std::invalid_argument("degenerate root pair");
        int sign = 1;
        if (!index_less(n, a, b)) {
            std::swap(a, b);
            sign = -1;
        }
        // now eps_a - eps_b is positive
        if (a > 0 && b > 0) return Root(a, b, sign);
        if (a < 0 && b < 0) return Root(-b, -a, sign);
        // a > 0, b < 0: eps_a + eps_|b|
        int p = std::min(a, -b), q = std::max(a, -b);
        return Root(p, -q, sign);
    }

    int i() const { return i_; }
    int j() const { return j_; }
    int sign() const { return sign_; }
    bool is_positive() const { return sign_ > 0; }
    bool is_long() const { return j_ == -i_; }

    Root abs() const { return Root(i_, j_, 1); }
    Root operator-() const { return Root(i_, j_, -sign_); }

    /// Signed pair (a, b) with this root equal to eps_a - eps_b.
    std::pair<int, int> as_pair() const {
        return sign_ > 0 ? std::pair{int(i_), int(j_)} : std::pair{int(j_), int(i_)};
    }

    Weight weight(int n) const {
        auto [a, b] = as_pair();
        return eps(n, a) - eps(n, b);
    }
    Coroot coroot(int n) const {
        Coroot c(n);
        if (is_long()) {
            c[i_ - 1] = sign_;
            return c;
        }
        Weight w = weight(n);
        for (int k = 0; k < n; ++k) c[k] = w[k];
        return c;
    }

    bool is_simple(int n) const {
        return sign_ > 0 && ((j_ == i_ + 1 && i_ < n) || (i_ == n && j_ == -n));
    }

    std::string to_string() const {
        std::string s = "(" + std::to_string(i_) + "," + index_name(j_) + ")";
        return sign_ > 0 ? s : "-" + s;
    }

    friend bool operator==(const Root&, const Root&) = default;
    friend auto operator<=>(const Root&, const Root&) = default;

  private:
    int8_t i_ = 1, j_ = 2, sign_ = 1;
};

inline Root simple_root(int n, int i) { return i < n ? Root(i, i + 1) : Root(n, -n); }

/// Delta^+ in a fixed order: (i,j), then (i,j-bar), then (i,i-bar).
inline std::vector<Root> positive_roots(int n) {
    std::vector<Root> out;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) out.emplace_back(i, j);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) out.emplace_back(i, -j);
    for (int i = 1; i <= n; ++i) out.emplace_back(i, -i);
    return out;
}

inline Weight reflect(int n, const Root& alpha, const Weight& lam) {
    return lam - pair(lam, alpha.coroot(n)) * alpha.weight(n);
}

inline Coroot reflect(int n, const Root& alpha, const Coroot& xi) {
    // s_alpha on h: xi - <alpha, xi> alpha^v
    Weight a = alpha.weight(n);
    int p = 0;
    for (int k = 0; k < n; ++k) p += a[k] * xi[k];
    return xi - p * alpha.coroot(n);
}

//---------------------------------------------------------------------------//
// Weyl group
//---------------------------------------------------------------------------//

/// Signed permutation of [n-bar] in window notation: images of 1..n.
class WeylElt {
  public:
    WeylElt() = default;
    static WeylElt identity(int n) {
        check_rank(n);
        WeylElt w;
        w.n_ = int8_t(n);
        for (int k = 1; k <= n; ++k) w.win_[k - 1] = int8_t(k);
        return w;
    }
    static WeylElt from_window(const std::vector<int>& win) {
        int n = static_cast<int>(win.size());
        WeylElt w = identity(n);
        std::array<bool, kMaxRank + 1> seen{};
        for (int k = 0; k < n; ++k) {
            int a = win[k];
            if (a == 0 || std::abs(a) > n || seen[std::abs(a)])
                throw std::invalid_argument("window is not a signed permutation");
            seen[std::abs(a)] = true;
            w.win_[k] = int8_t(a);
        }
        return w;
    }
    static WeylElt simple(int n, int i) {
        if (i < 1 || i > n) throw std::invalid_argument("simple reflection index out of range");
        WeylElt w = identity(n);
        if (i < n)
            std::swap(w.win_[i - 1], w.win_[i]);
        else
            w.win_[n - 1] = int8_t(-n);
        return w;
    }
    /// Product s_{i_1} s_{i_2} ... s_{i_r}.
    static WeylElt from_word(int n, const std::vector<int>& word) {
        WeylElt w = identity(n);
        for (int i : word) w = w.times_simple(i);
        return w;
    }
    /// Reflection s_alpha as an element.
    static WeylElt reflection(int n, const Root& alpha) { return identity(n).times_reflection(alpha); }

    int rank() const { return n_; }
    /// Image of a signed index.
    int operator()(int a) const { return a > 0 ? win_[a - 1] : -win_[-a - 1]; }
    std::vector<int> window() const { return {win_.begin(), win_.begin() + n_}; }

    WeylElt inverse() const {
        WeylElt r = *this;
        for (int k = 1; k <= n_; ++k) {
            int a = win_[k - 1];
            r.win_[std::abs(a) - 1] = int8_t(a > 0 ? k : -k);
        }
        return r;
    }

    friend WeylElt operator*(const WeylElt& u, const WeylElt& v) {
        assert(u.n_ == v.n_);
        WeylElt r = v;
        for (int k = 0; k < v.n_; ++k) r.win_[k] = int8_t(u(v.win_[k]));
        return r;
    }

    /// w s_i, i.e. act on positions.
    WeylElt times_simple(int i) const {
        if (i < 1 || i > n_) throw std::invalid_argument("simple reflection index out of range");
        WeylElt r = *this;
        if (i < n_)
            std::swap(r.win_[i - 1], r.win_[i]);
        else
            r.win_[n_ - 1] = int8_t(-r.win_[n_ - 1]);
        return r;
    }

    /// w s_alpha; the transposition (a b)(a-bar b-bar) acts on positions.
    WeylElt times_reflection(const Root& alpha) const {
        auto [a, b] = alpha.abs().as_pair();
        WeylElt r = *this;
        auto set = [&](int pos, int val) {
            if (pos > 0)
                r.win_[pos - 1] = int8_t(val);
            else
                r.win_[-pos - 1] = int8_t(-val);
        };
        int wa = (*this)(a), wb = (*this)(b);
        set(a, wb);
        set(b, wa);
        return r;
    }

    Weight act(const Weight& lam) const {
        Weight r(n_);
        for (int k = 1; k <= n_; ++k) {
            int a = win_[k - 1];
            r[std::abs(a) - 1] += a > 0 ? lam.at(k) : -lam.at(k);
        }
        return r;
    }
    Coroot act(const Coroot& xi) const {
        Coroot r(n_);
        for (int k = 1; k <= n_; ++k) {
            int a = win_[k - 1];
            r[std::abs(a) - 1] += a > 0 ? xi.at(k) : -xi.at(k);
        }
        return r;
    }
    Root act(const Root& alpha) const {
        auto [a, b] = alpha.as_pair();
        return Root::from_pair(n_, (*this)(a), (*this)(b));
    }

    /// True iff l(w s_i) < l(w).
    bool has_right_descent(int i) const {
        if (i < n_) return index_less(n_, win_[i], win_[i - 1]);
        return win_[n_ - 1] < 0;
    }

    /// Number of positive roots sent to negative roots.
    int length() const {
        int l = 0;
        for (const Root& r : positive_roots(n_))
            if (!act(r).is_positive()) ++l;
        return l;
    }

    /// Reduced word built from the right by peeling the smallest right descent.
    std::vector<int> reduced_word() const {
        std::vector<int> rev;
        WeylElt w = *this;
        for (bool again = true; again;) {
            again = false;
            for (int i = 1; i <= n_; ++i)
                if (w.has_right_descent(i)) {
                    rev.push_back(i);
                    w = w.times_simple(i);
                    again = true;
                    break;
                }
        }
        return {rev.rbegin(), rev.rend()};
    }

    /// "s1 s2 s1", or "e" for the identity.
    std::string word_string(std::string_view sep = " ") const {
        auto word = reduced_word();
        if (word.empty()) return "e";
        std::string s;
        for (std::size_t t = 0; t < word.size(); ++t) {
            if (t) s += sep;
            s += "s" + std::to_string(word[t]);
        }
        return s;
    }
    /// "[2,-3,1]".
    std::string window_string() const {
        std::string s = "[";
        for (int k = 0; k < n_; ++k) s += (k ? "," : "") + std::to_string(win_[k]);
        return s + "]";
    }

    friend bool operator==(const WeylElt& a, const WeylElt& b) {
        return a.n_ == b.n_ && std::equal(a.win_.begin(), a.win_.begin() + a.n_, b.win_.begin());
    }
    friend auto operator<=>(const WeylElt& a, const WeylElt& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return std::lexicographical_compare_three_way(a.win_.begin(), a.win_.begin() + a.n_,
                                                      b.win_.begin(), b.win_.begin() + b.n_);
    }
    std::size_t hash() const {
        std::size_t h = n_;
        for (int k = 0; k < n_; ++k) h = h * 31u + static_cast<std::size_t>(win_[k] + 16);
        return h;
    }

    /// Dense index in [0, 2^n n!) for table lookups.
    std::size_t index() const {
        std::size_t perm = 0;
        std::array<bool, kMaxRank + 1> used{};
        for (int k = 0; k < n_; ++k) {
            int v = std::abs(win_[k]);
            int smaller = 0;
            for (int u = 1; u < v; ++u)
                if (!used[u]) ++smaller;
            used[v] = true;
            perm = perm * static_cast<std::size_t>(n_ - k) + static_cast<std::size_t>(smaller);
        }
        std::size_t signs = 0;
        for (int k = 0; k < n_; ++k)
            if (win_[k] < 0) signs |= std::size_t{1} << k;
        return (perm << n_) | signs;
    }

  private:
    int8_t n_ = 0;
    std::array<int8_t, kMaxRank> win_{};
};

inline std::size_t weyl_order(int n) {
    std::size_t o = 1;
    for (int k = 1; k <= n; ++k) o *= 2 * static_cast<std::size_t>(k);
    return o;
}

/// All of W, in ascending window order.
inline std::vector<WeylElt> weyl_group(int n) {
    check_rank(n);
    std::vector<int> perm(n);
    for (int k = 0; k < n; ++k) perm[k] = k + 1;
    std::vector<WeylElt> out;
    out.reserve(weyl_order(n));
    do {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            std::vector<int> win(perm);
            for (int k = 0; k < n; ++k)
                if (mask & (1u << k)) win[k] = -win[k];
            out.push_back(WeylElt::from_window(win));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::sort(out.begin(), out.end());
    return out;
}

inline WeylElt longest_element(int n) {
    std::vector<int> win(n);
    for (int k = 0; k < n; ++k) win[k] = -(k + 1);
    return WeylElt::from_window(win);
}

/// Parse "s1 s2 s1", "s_1s_2", "1 2 1", "e" or a window "[2,-3,1]".
inline WeylElt parse_weyl(int n, std::string_view text) {
    std::string s(text);
    auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return WeylElt::identity(n);
    if (s[first] == '[') {
        std::vector<int> win;
        std::string body = s.substr(first + 1);
        auto close = body.find(']');
        if (close == std::string::npos) throw std::invalid_argument("unterminated window");
        body = body.substr(0, close);
        std::stringstream ss(body);
        for (std::string tok; std::getline(ss, tok, ',');) win.push_back(std::stoi(tok));
        if (static_cast<int>(win.size()) != n)
            throw std::invalid_argument("window length does not match rank");
        return WeylElt::from_window(win);
    }
    std::vector<int> word;
    std::size_t p = 0;
    while (p < s.size()) {
        char ch = s[p];
        if (ch == ' ' || ch == '\t' || ch == '_' || ch == 's' || ch == ',' || ch == '*') {
            ++p;
            continue;
        }
        if (ch == 'e' && word.empty()) {
            ++p;
            continue;
        }
        if (ch < '0' || ch > '9') throw std::invalid_argument("cannot parse Weyl element: " + s);
        std::size_t q = p;
        while (q < s.size() && s[q] >= '0' && s[q] <= '9') ++q;
        word.push_back(std::stoi(s.substr(p, q - p)));
        p = q;
    }
    return WeylElt::from_word(n, word);
}

//---------------------------------------------------------------------------//
// Affine Weyl group
//---------------------------------------------------------------------------//

/// w t_xi.
struct AffineElt {
    WeylElt w;
    Coroot xi;

    static AffineElt translation(const Coroot& xi) { return {WeylElt::identity(xi.rank()), xi}; }
    static AffineElt finite(const WeylElt& w) { return {w, Coroot(w.rank())}; }

    /// (w t_xi)(v t_eta) = wv t_{v^{-1} xi + eta}.
    friend AffineElt operator*(const AffineElt& a, const AffineElt& b) {
        return {a.w * b.w, b.w.inverse().act(a.xi) + b.xi};
    }
    AffineElt inverse() const { return {w.inverse(), -w.act(xi)}; }

    friend bool operator==(const AffineElt&, const AffineElt&) = default;
};

}  // namespace invchev

template <class Tag>
struct std::hash<invchev::LatticeVec<Tag>> {
    std::size_t operator()(const invchev::LatticeVec<Tag>& v) const { return v.hash(); }
};
template <>
struct std::hash<invchev::WeylElt> {
    std::size_t operator()(const invchev::WeylElt& w) const { return w.hash(); }
};
