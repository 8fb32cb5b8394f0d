#pragma once

// Quantum Bruhat graph on the hyperoctahedral group: edge classification,
// path weights, canonical paths, and structural lemma checks.

#include <array>
#include <deque>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "typec.hpp"

namespace invchev {

enum class EdgeKind { None, Bruhat, Quantum };

inline const char* to_string(EdgeKind k) {
    switch (k) {
        case EdgeKind::Bruhat: return "bruhat";
        case EdgeKind::Quantum: return "quantum";
        default: return "none";
    }
}

struct QbgEdge {
    WeylElt source;
    Root label;
    WeylElt target;
    EdgeKind kind = EdgeKind::None;
};

struct QbgPath {
    WeylElt start;
    std::vector<QbgEdge> edges;

    WeylElt end() const { return edges.empty() ? start : edges.back().target; }
    std::size_t size() const { return edges.size(); }
};

/// <rho, alpha^vee> for a positive root.
inline int rho_height(int n, const Root& alpha) {
    return pair(rho(n), alpha.abs().coroot(n));
}

namespace detail {

/// Length table over the dense index of W, plus materialized out-edges.
struct QbgTable {
    int n = 0;
    std::vector<Root> roots;
    std::vector<int> length;  // by WeylElt::index()
    struct Out {
        int root;
        std::size_t target;
        EdgeKind kind;
    };
    std::vector<std::vector<Out>> out;  // by index; empty when not materialized
};

inline constexpr int kMaterializeRank = 5;

inline const QbgTable& qbg_table(int n) {
    check_rank(n);
    static std::array<std::once_flag, kMaxRank + 1> once;
    static std::array<std::unique_ptr<QbgTable>, kMaxRank + 1> tables;
    std::call_once(once[n], [n] {
        auto t = std::make_unique<QbgTable>();
        t->n = n;
        t->roots = positive_roots(n);
        if (n <= kMaterializeRank) {
            auto elems = weyl_group(n);
            t->length.assign(weyl_order(n), 0);
            for (const auto& w : elems) t->length[w.index()] = w.length();
            t->out.resize(weyl_order(n));
            for (const auto& w : elems) {
                int lw = t->length[w.index()];
                auto& adj = t->out[w.index()];
                for (int r = 0; r < static_cast<int>(t->roots.size()); ++r) {
                    WeylElt y = w.times_reflection(t->roots[r]);
                    int ly = t->length[y.index()];
                    EdgeKind kind = EdgeKind::None;
                    if (ly == lw + 1)
                        kind = EdgeKind::Bruhat;
                    else if (ly == lw - 2 * rho_height(n, t->roots[r]) + 1)
                        kind = EdgeKind::Quantum;
                    if (kind != EdgeKind::None) adj.push_back({r, y.index(), kind});
                }
            }
        }
        tables[n] = std::move(t);
    });
    return *tables[n];
}

inline int cached_length(const WeylElt& w) {
    const auto& t = qbg_table(w.rank());
    return t.length.empty() ? w.length() : t.length[w.index()];
}

}  // namespace detail

/// Classify w -> w s_alpha by the two length conditions.
inline EdgeKind edge_kind(const WeylElt& w, const Root& alpha) {
    if (!alpha.is_positive()) throw std::invalid_argument("edge label must be a positive root");
    int n = w.rank();
    int lw = detail::cached_length(w);
    int ly = detail::cached_length(w.times_reflection(alpha));
    if (ly == lw + 1) return EdgeKind::Bruhat;
    if (ly == lw - 2 * rho_height(n, alpha) + 1) return EdgeKind::Quantum;
    return EdgeKind::None;
}

inline bool is_edge(const WeylElt& w, const Root& alpha) {
    return edge_kind(w, alpha) != EdgeKind::None;
}

/// All out-edges of w, in the order of positive_roots(n).
inline std::vector<QbgEdge> out_edges(const WeylElt& w) {
    std::vector<QbgEdge> edges;
    const auto& t = detail::qbg_table(w.rank());
    if (!t.out.empty()) {
        for (const auto& o : t.out[w.index()]) {
            const Root& r = t.roots[o.root];
            edges.push_back({w, r, w.times_reflection(r), o.kind});
        }
        return edges;
    }
    for (const Root& r : t.roots)
        if (auto k = edge_kind(w, r); k != EdgeKind::None)
            edges.push_back({w, r, w.times_reflection(r), k});
    return edges;
}

/// Local combinatorial criterion for w -> w s_alpha, using cyclic orders on [n-bar].
inline bool criterion_edge(const WeylElt& w, const Root& alpha) {
    if (!alpha.is_positive()) throw std::invalid_argument("edge label must be a positive root");
    const int n = w.rank();
    // offset of b in the cyclic order starting at a
    auto cyc = [n](int a, int b) { return (order_pos(n, b) - order_pos(n, a) + 2 * n) % (2 * n); };
    auto between = [&](int lo, int hi, auto&& pred) {
        for (int p = order_pos(n, lo) + 1; p < order_pos(n, hi); ++p)
            if (pred(from_order_pos(n, p))) return true;
        return false;
    };
    const int k = alpha.i();
    const int j = alpha.j();
    if (j > 0 || j == -k) {
        // (k,l) and (k,k-bar): no k < t < l with w(k) < w(t) < w(l) cyclically from w(k)
        int l = j;
        int wk = w(k), wl = w(l);
        return !between(k, l, [&](int t) {
            int c = cyc(wk, w(t));
            return c > 0 && c < cyc(wk, wl);
        });
    }
    int l = -j;  // root (k, l-bar), k < l
    int wk = w(k), wlb = w(-l);
    if (!index_less(n, wk, wlb)) return false;
    if ((wk > 0) != (wlb > 0)) return false;
    return !between(k, -l, [&](int t) {
        return index_less(n, wk, w(t)) && index_less(n, w(t), wlb);
    });
}

inline Coroot path_weight(const QbgPath& p) {
    int n = p.start.rank();
    Coroot total(n);
    WeylElt cur = p.start;
    for (const auto& e : p.edges) {
        if (!(e.source == cur) || !(e.target == cur.times_reflection(e.label)))
            throw std::invalid_argument("malformed path: endpoints do not chain");
        if (e.kind == EdgeKind::Quantum) total += e.label.coroot(n);
        cur = e.target;
    }
    return total;
}

/// Checks that every step is a genuine edge with the recorded kind.
inline bool path_is_valid(const QbgPath& p) {
    WeylElt cur = p.start;
    for (const auto& e : p.edges) {
        if (!(e.source == cur)) return false;
        if (!e.label.is_positive() || edge_kind(cur, e.label) != e.kind || e.kind == EdgeKind::None)
            return false;
        cur = cur.times_reflection(e.label);
        if (!(cur == e.target)) return false;
    }
    return true;
}

/// d(a, b): separation of two signed indices in the total order.
inline int distance(int n, int a, int b) {
    if (a == 0 || b == 0 || std::abs(a) > n || std::abs(b) > n)
        throw std::out_of_range("index out of range in distance");
    return std::abs(order_pos(n, a) - order_pos(n, b));
}

/// gamma_{l-bar, k} for 1 <= l <= n and k < l-bar.
inline Root gamma_label(int n, int l, int k) {
    if (l < 1 || l > n || k == 0 || std::abs(k) > n || !index_less(n, k, -l))
        throw std::out_of_range("gamma_label index out of range");
    if (k > 0 && k <= l) return Root(k, -l);
    if (k > 0) return Root(l, -k);
    return Root(l, -k);  // k = p-bar, p > l: (l, p)
}

namespace detail {

inline QbgEdge make_edge(const WeylElt& w, const Root& r) {
    EdgeKind k = edge_kind(w, r);
    if (k == EdgeKind::None)
        throw std::logic_error("canonical path step " + r.to_string() + " is not an edge at " +
                               w.window_string());
    return {w, r, w.times_reflection(r), k};
}

inline void p_path_into(QbgPath& out, const WeylElt& w, int from, int to) {
    const int n = w.rank();
    if (from == to) return;
    if (from > 0) {
        int l = from, m = to;
        if (m < 1 || m >= l) throw std::invalid_argument("unbarred canonical path needs 1 <= to < from");
        if (l - m == 1) {
            out.edges.push_back(make_edge(w, Root(l - 1, l)));
            return;
        }
        for (int k = m; k < l; ++k) {
            Root r(k, l);
            if (is_edge(w, r)) {
                out.edges.push_back(make_edge(w, r));
                p_path_into(out, w.times_reflection(r), k, m);
                return;
            }
        }
        throw std::logic_error("no admissible first step for canonical path");
    }
    int l = -from, m = to;
    int upper = l < n ? -(l + 1) : n;  // (l+1)-bar, with (n+1)-bar read as n
    if (!index_less(n, m, -l) || index_less(n, upper, m))
        throw std::invalid_argument("barred canonical path target out of range");
    if (distance(n, from, m) == 1) {
        out.edges.push_back(make_edge(w, gamma_label(n, l, m)));
        return;
    }
    for (int p = order_pos(n, m); p <= order_pos(n, upper); ++p) {
        int k = from_order_pos(n, p);
        Root r = gamma_label(n, l, k);
        if (is_edge(w, r)) {
            out.edges.push_back(make_edge(w, r));
            p_path_into(out, w.times_reflection(r), k, m);
            return;
        }
    }
    throw std::logic_error("no admissible first step for barred canonical path");
}

}  // namespace detail

/// Canonical path p_{from,to}(w). A negative `from` denotes a barred index.
inline QbgPath p_path(const WeylElt& w, int from, int to) {
    const int n = w.rank();
    if (from == 0 || to == 0 || std::abs(from) > n || std::abs(to) > n)
        throw std::invalid_argument("canonical path index out of range");
    if (from > 0 && to < 0) throw std::invalid_argument("unbarred canonical path needs unbarred target");
    if (!index_less(n, to, from)) throw std::invalid_argument("canonical path needs to < from");
    QbgPath p{w, {}};
    detail::p_path_into(p, w, from, to);
    return p;
}

struct ShortestPathInfo {
    int length = -1;              // -1 when unreachable
    std::set<Coroot> weights;     // wt over all shortest paths
};

/// BFS distance from `from` to `to` and the set of weights of all shortest paths.
inline ShortestPathInfo shortest_paths(const WeylElt& from, const WeylElt& to) {
    const int n = from.rank();
    std::vector<int> dist(weyl_order(n), -1);
    std::vector<std::set<Coroot>> wts(weyl_order(n));
    std::deque<WeylElt> queue{from};
    dist[from.index()] = 0;
    wts[from.index()].insert(Coroot(n));
    while (!queue.empty()) {
        WeylElt v = queue.front();
        queue.pop_front();
        if (v == to) continue;
        for (const auto& e : out_edges(v)) {
            auto ti = e.target.index();
            if (dist[ti] == -1) {
                dist[ti] = dist[v.index()] + 1;
                queue.push_back(e.target);
            }
            if (dist[ti] == dist[v.index()] + 1) {
                Coroot add = e.kind == EdgeKind::Quantum ? e.label.coroot(n) : Coroot(n);
                for (const auto& c : wts[v.index()]) wts[ti].insert(c + add);
            }
        }
    }
    // BFS order guarantees each node's weight set is complete before it is expanded.
    return {dist[to.index()], wts[to.index()]};
}

//---------------------------------------------------------------------------//
// Structural lemma checks
//---------------------------------------------------------------------------//

/// For k < l < m: the three path conditions on (k,m), (l,m), (k,l) agree.
inline bool exchange_lemma_holds(const WeylElt& w, int k, int l, int m) {
    bool km = is_edge(w, Root(k, m));
    bool lm = is_edge(w, Root(l, m));
    bool c1 = km && lm && is_edge(w.times_reflection(Root(l, m)), Root(k, l));
    bool c2 = km && lm;
    bool c3 = km && is_edge(w.times_reflection(Root(k, m)), Root(l, m));
    return c1 == c2 && c2 == c3;
}

/// Disjoint transposition labels can be applied in either order.
inline bool exchange2_lemma_holds(const WeylElt& w, const Root& a, const Root& b) {
    auto two_step = [&](const Root& x, const Root& y) {
        return is_edge(w, x) && is_edge(w.times_reflection(x), y);
    };
    return two_step(a, b) == two_step(b, a);
}

/// Indices k < m with an edge w -> w s_(k,m).
inline std::vector<int> edge_indices_into(const WeylElt& w, int m) {
    std::vector<int> out;
    for (int k = 1; k < m; ++k)
        if (is_edge(w, Root(k, m))) out.push_back(k);
    return out;
}

/// The lower-bound lemma, read with the hypothesis that w -> w s_(c,m) is not an edge.
inline bool existence_lemma_holds(const WeylElt& w, int m) {
    auto e = edge_indices_into(w, m);
    const int s = static_cast<int>(e.size());
    for (unsigned mask = 1; mask < (1u << s); ++mask) {
        std::vector<int> a;
        for (int t = 0; t < s; ++t)
            if (mask & (1u << t)) a.push_back(e[t]);
        WeylElt y = w;
        for (int ai : a) {
            if (!is_edge(y, Root(ai, m))) return false;
            y = y.times_reflection(Root(ai, m));
        }
        for (int c = 1; c < a.front(); ++c) {
            if (!is_edge(y, Root(c, a.front())) || is_edge(w, Root(c, m))) continue;
            for (int p = 1; p < a.front(); ++p)
                if (is_edge(w, Root(p, m)) && !(p < c)) return false;
        }
    }
    return true;
}

/// a_1 is the minimal c with z_u -> z_u s_(c, a_{b_1}) for every choice 2 = b_1 < ... < b_u.
inline bool minimum_corollary_holds(const WeylElt& w, int m) {
    auto a = edge_indices_into(w, m);
    const int s = static_cast<int>(a.size());
    if (s < 2) return true;
    // subsets of positions {2..s} (0-based 1..s-1) that contain position 1
    for (unsigned mask = 0; mask < (1u << (s - 2 < 0 ? 0 : s - 2)); ++mask) {
        std::vector<int> b{a[1]};
        for (int t = 2; t < s; ++t)
            if (mask & (1u << (t - 2))) b.push_back(a[t]);
        WeylElt z = w;
        for (int bi : b) {
            if (!is_edge(z, Root(bi, m))) return false;
            z = z.times_reflection(Root(bi, m));
        }
        int cmin = 0;
        for (int c = 1; c < b.front(); ++c)
            if (is_edge(z, Root(c, b.front()))) {
                cmin = c;
                break;
            }
        if (cmin != a[0]) return false;
    }
    return true;
}

inline std::string path_string(const QbgPath& p) {
    std::string s = p.start.word_string("");
    for (const auto& e : p.edges) s += " -" + e.label.to_string() + "-> " + e.target.word_string("");
    return s;
}

}  // namespace invchev
