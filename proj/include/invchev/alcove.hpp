#pragma once

// Root chains, alcove walks with hyperplane levels, and admissible subsets
// together with their statistics.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "qbg.hpp"
#include "typec.hpp"

namespace invchev {

enum class ChainKind {
    Gamma,          ///< Gamma_k(k)
    GammaStar,      ///< Gamma*_k(k)
    Theta,          ///< Theta_k
    ThetaStar,      ///< Theta*_k
    EpsChain,       ///< Gamma_{k-1,k} = Gamma*_k(k) * Theta_k, an eps_k-chain
    NegEpsChain,    ///< Gamma*_{k-1,k} = Theta*_k * Gamma_k(k), a (-eps_k)-chain
    Custom,
};

inline std::string chain_name(ChainKind kind, int k) {
    auto ks = std::to_string(k);
    switch (kind) {
        case ChainKind::Gamma: return "Gamma_" + ks + "(" + ks + ")";
        case ChainKind::GammaStar: return "Gamma*_" + ks + "(" + ks + ")";
        case ChainKind::Theta: return "Theta_" + ks;
        case ChainKind::ThetaStar: return "Theta*_" + ks;
        case ChainKind::EpsChain: return "Gamma_{" + std::to_string(k - 1) + "," + ks + "}";
        case ChainKind::NegEpsChain: return "Gamma*_{" + std::to_string(k - 1) + "," + ks + "}";
        default: return "custom";
    }
}

struct RootChain {
    int n = 0;
    ChainKind kind = ChainKind::Custom;
    int k = 0;
    std::vector<Root> entries;
    std::optional<Weight> mu;  ///< set for eps_k- and (-eps_k)-chains

    std::size_t size() const { return entries.size(); }
    const Root& operator[](std::size_t i) const { return entries[i]; }
};

inline RootChain make_chain(ChainKind kind, int k, int n) {
    check_rank(n);
    if (k < 1 || k > n) throw std::out_of_range("chain index k out of range");
    RootChain c{n, kind, k, {}, std::nullopt};
    auto& e = c.entries;
    switch (kind) {
        case ChainKind::GammaStar:
            for (int p = k + 1; p <= n; ++p) e.emplace_back(k, p);
            e.emplace_back(k, -k);
            for (int p = n; p > k; --p) e.emplace_back(k, -p);
            for (int i = k - 1; i >= 1; --i) e.emplace_back(i, -k);
            break;
        case ChainKind::Gamma: {
            auto star = make_chain(ChainKind::GammaStar, k, n);
            for (auto it = star.entries.rbegin(); it != star.entries.rend(); ++it) e.push_back(-*it);
            break;
        }
        case ChainKind::Theta:
            for (int i = 1; i < k; ++i) e.push_back(-Root(i, k));
            break;
        case ChainKind::ThetaStar:
            for (int i = k - 1; i >= 1; --i) e.emplace_back(i, k);
            break;
        case ChainKind::EpsChain: {
            auto a = make_chain(ChainKind::GammaStar, k, n);
            auto b = make_chain(ChainKind::Theta, k, n);
            e = a.entries;
            e.insert(e.end(), b.entries.begin(), b.entries.end());
            c.mu = eps(n, k);
            break;
        }
        case ChainKind::NegEpsChain: {
            auto a = make_chain(ChainKind::ThetaStar, k, n);
            auto b = make_chain(ChainKind::Gamma, k, n);
            e = a.entries;
            e.insert(e.end(), b.entries.begin(), b.entries.end());
            c.mu = -eps(n, k);
            break;
        }
        case ChainKind::Custom: throw std::invalid_argument("custom chains are built with custom_chain");
    }
    return c;
}

inline RootChain custom_chain(int n, std::vector<Root> entries, std::optional<Weight> mu = std::nullopt) {
    check_rank(n);
    return {n, ChainKind::Custom, 0, std::move(entries), std::move(mu)};
}

//---------------------------------------------------------------------------//
// Alcove walks
//---------------------------------------------------------------------------//

/// Vertices of an alcove in doubled coordinates (2x), so every vertex is integral.
using Alcove = std::vector<Weight>;

inline Alcove fundamental_alcove(int n) {
    Alcove a{Weight(n)};
    a.push_back(2 * eps(n, 1));
    for (int i = 2; i <= n; ++i) a.push_back(fundamental_weight(n, i));
    return a;
}

inline Alcove translate(Alcove a, const Weight& shift) {
    for (auto& v : a) v += 2 * shift;
    return a;
}

inline bool same_alcove(Alcove a, Alcove b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

class AlcoveWalkError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct AlcoveWalk {
    RootChain chain;
    std::vector<int> levels;     ///< wall of step t lies in H_{gamma_t, -levels[t]}
    std::vector<Alcove> alcoves; ///< alcoves[0] = start, alcoves[t] after step t
};

/// Cross the wall of `from` orthogonal to gamma, moving in direction -gamma.
/// Returns the level l with the wall in H_{gamma,-l}.
inline int cross_wall(Alcove& a, const Root& gamma) {
    const int n = a.front().rank();
    const Root beta = gamma.abs();
    const Coroot bv = beta.coroot(n);
    const Weight bw = beta.weight(n);
    std::vector<int> val(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) val[i] = pair(a[i], bv);
    std::optional<std::pair<int, std::size_t>> found;  // (c, off vertex)
    for (std::size_t i = 0; i < a.size(); ++i) {
        int v = val[i];
        if (v % 2 != 0) continue;
        int count = static_cast<int>(std::count(val.begin(), val.end(), v));
        if (count != n) continue;
        std::size_t off = 0;
        while (val[off] == v) ++off;
        int u = val[off];
        bool forward = gamma.is_positive() ? u > v : u < v;
        if (!forward) continue;
        if (found && found->first != v / 2)
            throw AlcoveWalkError("ambiguous wall for step " + gamma.to_string());
        found = {v / 2, off};
    }
    if (!found) throw AlcoveWalkError("step " + gamma.to_string() + " does not cross a wall of the current alcove");
    auto [c, off] = *found;
    a[off] = a[off] - (val[off] - 2 * c) * bw;
    return gamma.is_positive() ? -c : c;
}

/// Walk the chain from `start`; for a mu-chain the endpoint must be A_{-mu}.
inline AlcoveWalk alcove_walk(const RootChain& chain, std::optional<Alcove> start = std::nullopt) {
    AlcoveWalk walk{chain, {}, {}};
    Alcove cur = start ? *start : fundamental_alcove(chain.n);
    walk.alcoves.push_back(cur);
    for (const Root& g : chain.entries) {
        walk.levels.push_back(cross_wall(cur, g));
        walk.alcoves.push_back(cur);
    }
    if (chain.mu && !start) {
        if (!same_alcove(cur, translate(fundamental_alcove(chain.n), -*chain.mu)))
            throw AlcoveWalkError("walk does not end at the translated fundamental alcove");
    }
    return walk;
}

/// Number of affine hyperplanes H_{alpha,k} strictly separating two alcoves.
inline int separating_hyperplanes(const Alcove& a, const Alcove& b) {
    const int n = a.front().rank();
    const int scale = 2 * static_cast<int>(a.size());  // barycenter value = sum / scale
    Weight sa(n), sb(n);
    for (const auto& v : a) sa += v;
    for (const auto& v : b) sb += v;
    int count = 0;
    for (const Root& alpha : positive_roots(n)) {
        int x = pair(sa, alpha.coroot(n)), y = pair(sb, alpha.coroot(n));
        int lo = std::min(x, y), hi = std::max(x, y);
        for (int k = lo / scale - 1; k * scale <= hi; ++k)
            if (lo < k * scale && k * scale < hi) ++count;
    }
    return count;
}

/// Steps [from, to) of the walk form a reduced alcove path.
inline bool segment_reduced(const AlcoveWalk& walk, std::size_t from, std::size_t to) {
    return static_cast<int>(to - from) == separating_hyperplanes(walk.alcoves[from], walk.alcoves[to]);
}

/// A mu-chain is reduced iff its length equals the separating-hyperplane count.
inline bool reducedness_check(const RootChain& chain) {
    if (!chain.mu) throw std::invalid_argument("reducedness is defined for mu-chains");
    try {
        auto walk = alcove_walk(chain);
        return segment_reduced(walk, 0, chain.size());
    } catch (const AlcoveWalkError&) {
        return false;
    }
}

namespace detail {

struct LevelCache {
    std::shared_mutex mu;
    std::map<std::tuple<int, ChainKind, int>, std::vector<int>> levels;
};
inline LevelCache& level_cache() {
    static LevelCache c;
    return c;
}

}  // namespace detail

/// Hyperplane levels of the eps_k- or (-eps_k)-chain, computed geometrically once.
inline const std::vector<int>& chain_levels(const RootChain& chain) {
    if (chain.kind != ChainKind::EpsChain && chain.kind != ChainKind::NegEpsChain)
        throw std::invalid_argument("levels are cached only for the eps_k chains");
    auto& cache = detail::level_cache();
    auto key = std::tuple{chain.n, chain.kind, chain.k};
    {
        std::shared_lock lock(cache.mu);
        if (auto it = cache.levels.find(key); it != cache.levels.end()) return it->second;
    }
    auto walk = alcove_walk(chain);
    std::unique_lock lock(cache.mu);
    return cache.levels.emplace(key, std::move(walk.levels)).first->second;
}

//---------------------------------------------------------------------------//
// Admissible subsets
//---------------------------------------------------------------------------//

struct AdmissibleSubset {
    WeylElt base;
    std::vector<int> positions;  ///< 1-based, strictly increasing
    std::vector<QbgEdge> path;
    WeylElt ed;
    Coroot down;
    int n_neg = 0;
    std::optional<Weight> wt;
    std::optional<int> height;

    std::size_t size() const { return positions.size(); }
    bool empty() const { return positions.empty(); }
    QbgPath as_path() const { return {base, path}; }

    std::string positions_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < positions.size(); ++i)
            s += (i ? "," : "") + std::to_string(positions[i]);
        return s + "}";
    }
};

/// Affine reflection s_{gamma,k}(nu) = nu - (<nu, gamma^v> - k) gamma.
inline Weight affine_reflect(int n, const Root& gamma, int k, const Weight& nu) {
    return nu - (pair(nu, gamma.coroot(n)) - k) * gamma.weight(n);
}

/// wt and height of a subset of a mu-chain with the given levels.
inline void attach_chain_stats(AdmissibleSubset& a, const RootChain& chain, const std::vector<int>& levels) {
    const int n = chain.n;
    const Weight& mu = *chain.mu;
    Weight nu = -mu;
    for (auto it = a.positions.rbegin(); it != a.positions.rend(); ++it) {
        int t = *it - 1;
        nu = affine_reflect(n, chain[t], -levels[t], nu);
    }
    a.wt = -a.base.act(nu);
    int h = 0;
    for (std::size_t s = 0; s < a.positions.size(); ++s) {
        if (a.path[s].kind != EdgeKind::Quantum) continue;
        int t = a.positions[s] - 1;
        const Root& g = chain[t];
        h += g.sign() * (pair(mu, g.coroot(n)) - levels[t]);
    }
    a.height = h;
}

/// All w-admissible subsets (including the empty one), by depth-first search.
inline std::vector<AdmissibleSubset> admissible_subsets(const WeylElt& w, const RootChain& chain) {
    const int n = chain.n;
    if (w.rank() != n) throw std::invalid_argument("rank mismatch between element and chain");
    const std::vector<int>* levels = nullptr;
    std::vector<int> custom_levels;
    if (chain.mu) {
        if (chain.kind == ChainKind::EpsChain || chain.kind == ChainKind::NegEpsChain) {
            levels = &chain_levels(chain);
        } else {
            custom_levels = alcove_walk(chain).levels;
            levels = &custom_levels;
        }
    }
    std::vector<AdmissibleSubset> out;
    AdmissibleSubset cur{w, {}, {}, w, Coroot(n), 0, std::nullopt, std::nullopt};
    auto dfs = [&](auto&& self, std::size_t t) -> void {
        if (t == chain.size()) {
            out.push_back(cur);
            if (levels) attach_chain_stats(out.back(), chain, *levels);
            return;
        }
        self(self, t + 1);
        const Root& g = chain[t];
        Root label = g.abs();
        EdgeKind kind = edge_kind(cur.ed, label);
        if (kind == EdgeKind::None) return;
        AdmissibleSubset saved = cur;
        WeylElt next = cur.ed.times_reflection(label);
        cur.positions.push_back(static_cast<int>(t) + 1);
        cur.path.push_back({cur.ed, label, next, kind});
        cur.ed = next;
        if (kind == EdgeKind::Quantum) cur.down += label.coroot(n);
        if (!g.is_positive()) ++cur.n_neg;
        self(self, t + 1);
        cur = std::move(saved);
    };
    dfs(dfs, 0);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.positions.size() != b.positions.size()) return a.positions.size() < b.positions.size();
        return a.positions < b.positions;
    });
    return out;
}

namespace detail {

struct AdmissibleCache {
    std::shared_mutex mu;
    std::map<std::tuple<int, ChainKind, int, std::size_t>, std::unique_ptr<std::vector<AdmissibleSubset>>> sets;
};
inline AdmissibleCache& admissible_cache() {
    static AdmissibleCache c;
    return c;
}

}  // namespace detail

/// Memoized admissible_subsets for the named chain kinds.
inline const std::vector<AdmissibleSubset>& admissible(const WeylElt& w, ChainKind kind, int k) {
    auto& cache = detail::admissible_cache();
    auto key = std::tuple{w.rank(), kind, k, w.index()};
    {
        std::shared_lock lock(cache.mu);
        if (auto it = cache.sets.find(key); it != cache.sets.end()) return *it->second;
    }
    auto value = std::make_unique<std::vector<AdmissibleSubset>>(
        admissible_subsets(w, make_chain(kind, k, w.rank())));
    std::unique_lock lock(cache.mu);
    auto [it, inserted] = cache.sets.emplace(key, std::move(value));
    return *it->second;
}

/// Chain attached to a signed index: Theta_k for k, Gamma_k(k) for k-bar.
inline ChainKind chain_for_index(int a) { return a > 0 ? ChainKind::Theta : ChainKind::Gamma; }

/// Signed index l with ed(A)^{-1} w eps_a = eps_l.
inline int twist_index(const WeylElt& w, const AdmissibleSubset& a, int idx) {
    return a.ed.inverse()(w(idx));
}

/// Nonempty admissible subsets over the chain of `a` whose twisted index equals l.
inline std::vector<AdmissibleSubset> filtered_A(const WeylElt& w, int a, int l) {
    const int n = w.rank();
    if (a == 0 || std::abs(a) > n || l == 0 || std::abs(l) > n)
        throw std::out_of_range("filtered_A index out of range");
    std::vector<AdmissibleSubset> out;
    for (const auto& s : admissible(w, chain_for_index(a), std::abs(a)))
        if (!s.empty() && twist_index(w, s, a) == l) out.push_back(s);
    return out;
}

struct SplitStats {
    AdmissibleSubset first;   ///< part inside Gamma*_k(k)
    AdmissibleSubset second;  ///< part inside Theta_k, based at ed(first)
    bool height_matches = false;
    bool wt_matches = false;
    bool n_matches = false;
    bool holds() const { return height_matches && wt_matches && n_matches; }
};

/// Split a subset of Gamma_{k-1,k} into its Gamma*_k(k) and Theta_k parts.
inline SplitStats split_stats(const AdmissibleSubset& a, const RootChain& chain) {
    if (chain.kind != ChainKind::EpsChain) throw std::invalid_argument("split_stats needs an eps_k chain");
    const int n = chain.n, k = chain.k;
    const int cut = 2 * n - k;
    SplitStats s;
    s.first = {a.base, {}, {}, a.base, Coroot(n), 0, std::nullopt, std::nullopt};
    for (std::size_t i = 0; i < a.positions.size(); ++i) {
        bool in_first = a.positions[i] <= cut;
        auto& part = in_first ? s.first : s.second;
        if (!in_first && part.positions.empty())
            part = {a.path[i].source, {}, {}, a.path[i].source, Coroot(n), 0, std::nullopt, std::nullopt};
        part.positions.push_back(in_first ? a.positions[i] : a.positions[i] - cut);
        part.path.push_back(a.path[i]);
        part.ed = a.path[i].target;
        if (a.path[i].kind == EdgeKind::Quantum) part.down += a.path[i].label.coroot(n);
        if (!chain[a.positions[i] - 1].is_positive()) ++part.n_neg;
    }
    if (s.second.positions.empty())
        s.second = {s.first.ed, {}, {}, s.first.ed, Coroot(n), 0, std::nullopt, std::nullopt};
    s.height_matches = a.height && *a.height == pair(eps(n, k), s.first.down);
    s.wt_matches = a.wt && *a.wt == s.first.ed.act(eps(n, k));
    s.n_matches = a.n_neg == static_cast<int>(s.second.positions.size());
    return s;
}

/// S_{m,j}: strictly decreasing sequences m > j_1 > ... > j_r = j in the total order.
inline std::vector<std::vector<int>> enumerate_S(int n, int m, int j) {
    if (!index_less(n, j, m)) throw std::invalid_argument("enumerate_S needs j < m");
    std::vector<int> between;
    for (int p = order_pos(n, m) - 1; p > order_pos(n, j); --p) between.push_back(from_order_pos(n, p));
    std::vector<std::vector<int>> out;
    const std::size_t g = between.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << g); ++mask) {
        std::vector<int> seq;
        for (std::size_t t = 0; t < g; ++t)
            if (mask & (std::size_t{1} << t)) seq.push_back(between[t]);
        seq.push_back(j);
        out.push_back(std::move(seq));
    }
    std::sort(out.begin(), out.end(), [n](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (std::size_t t = 0; t < a.size(); ++t)
            if (a[t] != b[t]) return index_less(n, a[t], b[t]);
        return false;
    });
    return out;
}

}  // namespace invchev
