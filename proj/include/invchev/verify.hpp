#pragma once

// Identity checking through the Chevalley expansions, property checks for the
// involution and collapse arguments, the conjecture scan, and a small worker pool.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "alcove.hpp"
#include "char_ring.hpp"
#include "chevalley.hpp"
#include "qbg.hpp"
#include "typec.hpp"

namespace invchev {

//---------------------------------------------------------------------------//
// Worker pool
//---------------------------------------------------------------------------//

/// Run fn(0..count-1) on `jobs` threads; results come back in index order.
template <class Fn>
auto parallel_map(std::size_t count, int jobs, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
    using R = decltype(fn(std::size_t{}));
    std::vector<std::optional<R>> slots(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < count;) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(count, 1))));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    std::vector<R> out;
    out.reserve(count);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

//---------------------------------------------------------------------------//
// Identity verification
//---------------------------------------------------------------------------//

struct VerificationReport {
    std::string instance;
    bool verified = false;
    std::size_t lhs_terms = 0;
    std::size_t rhs_terms = 0;
    DemazureCombo residual;
    double seconds = 0;
};

namespace detail {

class Stopwatch {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::string spec_name(const IdentitySpec& s) {
    std::string name = s.half == Half::First ? "first" : "second";
    if (s.variant.kind == Variant::CancelFree) name += "/cf";
    if (s.variant.kind == Variant::Conjecture) name += "/conj:" + std::to_string(s.variant.l);
    name += " w=" + s.x.w.word_string("") + " m=" + std::to_string(s.m);
    if (!s.x.xi.is_zero()) name += " xi=" + coroot_text(s.x.xi);
    return name;
}

/// Compare two combos after clearing denominators; returns the cleared residual.
inline DemazureCombo cleared_residual(const DemazureCombo& a, const DemazureCombo& b) {
    auto cleared = clear_denominators(a, b);
    return cleared.a - cleared.b;
}

}  // namespace detail

/// Expand every right-hand symbol down to level lambda and compare with e^{+-w eps_m} V_x(lambda).
inline VerificationReport verify_identity(const IdentitySpec& spec) {
    detail::Stopwatch clock;
    VerificationReport r;
    r.instance = detail::spec_name(spec);
    DemazureCombo rhs = rhs_combo(spec);
    DemazureCombo lhs = lhs_combo(spec);
    r.rhs_terms = rhs.size();
    r.lhs_terms = lhs.size();
    r.residual = detail::cleared_residual(expand_to_base(rhs), lhs);
    r.verified = r.residual.is_zero();
    r.seconds = clock.seconds();
    return r;
}

inline VerificationReport verify_first_half(const WeylElt& w, int m, const Coroot& xi) {
    return verify_identity({{w, xi}, m, Half::First, {}});
}
inline VerificationReport verify_first_half(const WeylElt& w, int m) { return verify_first_half(w, m, Coroot(w.rank())); }
inline VerificationReport verify_second_half(const WeylElt& w, int m, const Coroot& xi) {
    return verify_identity({{w, xi}, m, Half::Second, {}});
}
inline VerificationReport verify_second_half(const WeylElt& w, int m) { return verify_second_half(w, m, Coroot(w.rank())); }

/// Both key propositions through the expansions, plus the second one derived from the first
/// by lambda -> lambda - eps_k and multiplication by e^{-w eps_k}.
inline VerificationReport verify_key_props(const WeylElt& w, int k) {
    detail::Stopwatch clock;
    VerificationReport r;
    r.instance = "key w=" + w.word_string("") + " k=" + std::to_string(k);
    auto [l1, r1] = key_prop_sides(w, k, Sign::Plus);
    auto [l2, r2] = key_prop_sides(w, k, Sign::Minus);
    r.lhs_terms = l1.size() + l2.size();
    r.rhs_terms = r1.size() + r2.size();
    DemazureCombo residual = detail::cleared_residual(expand_to_base(l1), r1);
    residual += detail::cleared_residual(expand_to_base(l2), r2);
    const int n = w.rank();
    Monomial twist = Monomial::exp_weight(-w.act(eps(n, k)));
    residual += times_monomial(shift_lambda(l1, -eps(n, k)), twist) - r2;
    residual += times_monomial(shift_lambda(r1, -eps(n, k)), twist) - l2;
    r.residual = residual;
    r.verified = residual.is_zero();
    r.seconds = clock.seconds();
    return r;
}

/// Concrete dominant weights (fundamental coordinates) for specialization checks.
inline std::vector<std::vector<int>> random_dominant_weights(int n, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(1, 6);
    std::vector<std::vector<int>> out(count, std::vector<int>(kMaxRank, 0));
    for (auto& lam : out)
        for (int i = 0; i < n; ++i) lam[i] = coord(rng);
    return out;
}

/// The expanded identity still holds after specializing x_i at concrete dominant lambda.
inline bool specialization_consistent(const IdentitySpec& spec, const std::vector<std::vector<int>>& lambdas) {
    DemazureCombo rhs = expand_to_base(rhs_combo(spec));
    DemazureCombo lhs = lhs_combo(spec);
    return std::all_of(lambdas.begin(), lambdas.end(), [&](const auto& lam) {
        return specialized_equal(specialize(rhs, lam), specialize(lhs, lam));
    });
}

/// Random coroot-lattice element with simple-coroot coordinates in [-2, 2].
inline Coroot random_coroot(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> c(-2, 2);
    Coroot xi(n);
    for (int i = 1; i <= n; ++i) xi = xi + c(rng) * simple_coroot(n, i);
    return xi;
}

/// Every (w, m) at rank n for the chosen half, at xi = 0 and at `random_xi` random translations.
inline std::vector<VerificationReport> sweep_identities(int n, Half half, Variant variant, int random_xi,
                                                        std::uint64_t seed, int jobs) {
    std::vector<IdentitySpec> specs;
    std::mt19937_64 rng(seed);
    for (const auto& w : weyl_group(n))
        for (int m = 1; m <= n; ++m) {
            specs.push_back({{w, Coroot(n)}, m, half, variant});
            for (int t = 0; t < random_xi; ++t) specs.push_back({{w, random_coroot(n, rng)}, m, half, variant});
        }
    return parallel_map(specs.size(), jobs, [&](std::size_t i) { return verify_identity(specs[i]); });
}

//---------------------------------------------------------------------------//
// Cancellation certificates
//---------------------------------------------------------------------------//

inline std::vector<StreamTerm> collect_stream(const IdentitySpec& spec) {
    std::vector<StreamTerm> out;
    rhs_stream(spec, [&](const StreamTerm& t) { out.push_back(t); });
    return out;
}

/// True iff no two streamed terms carry the same symbol and monomial with opposite signs.
inline bool cancellation_certificate(const std::vector<StreamTerm>& stream) {
    std::map<std::pair<SymbolKey, Monomial>, int> seen;
    for (const auto& t : stream) {
        int& flags = seen[{t.key, t.mono}];
        flags |= t.sign > 0 ? 1 : 2;
        if (flags == 3) return false;
    }
    return true;
}

//---------------------------------------------------------------------------//
// Conjecture scan
//---------------------------------------------------------------------------//

struct ConjectureEntry {
    WeylElt w;
    int m = 0;
    std::vector<int> working_l;    ///< the expanded identity holds
    std::vector<int> certified_l;  ///< working and the stream is cancellation-free
    std::vector<int> formal_l;     ///< equal to the full second-half right-hand side as combos
    bool hits_m_or_n() const {
        return std::any_of(working_l.begin(), working_l.end(),
                           [&](int l) { return l == m || l == w.rank(); });
    }
};

struct ConjectureScanResult {
    int n = 0;
    std::vector<ConjectureEntry> entries;

    std::vector<const ConjectureEntry*> counterexamples() const {
        std::vector<const ConjectureEntry*> out;
        for (const auto& e : entries)
            if (e.working_l.empty()) out.push_back(&e);
        return out;
    }
    std::size_t count_hitting_m_or_n() const {
        return std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.hits_m_or_n(); });
    }
};

inline ConjectureEntry conjecture_instance(const WeylElt& w, int m) {
    const int n = w.rank();
    ConjectureEntry e{w, m, {}, {}, {}};
    IdentitySpec full{{w, Coroot(n)}, m, Half::Second, {}};
    DemazureCombo lhs = lhs_combo(full);
    DemazureCombo theorem = rhs_combo(full);
    for (int l = m; l <= n; ++l) {
        IdentitySpec conj{{w, Coroot(n)}, m, Half::Second, {Variant::Conjecture, l}};
        DemazureCombo rhs = rhs_combo(conj);
        if (!detail::cleared_residual(expand_to_base(rhs), lhs).is_zero()) continue;
        e.working_l.push_back(l);
        if (cancellation_certificate(collect_stream(conj))) e.certified_l.push_back(l);
        if ((rhs - theorem).is_zero()) e.formal_l.push_back(l);
    }
    return e;
}

inline ConjectureScanResult conjecture_scan(int n, int jobs = 1) {
    std::vector<std::pair<WeylElt, int>> work;
    for (const auto& w : weyl_group(n))
        for (int m = 1; m <= n; ++m) work.push_back({w, m});
    ConjectureScanResult r;
    r.n = n;
    r.entries = parallel_map(work.size(), jobs,
                             [&](std::size_t i) { return conjecture_instance(work[i].first, work[i].second); });
    return r;
}

//---------------------------------------------------------------------------//
// The pair involution on P = {(B, A1)}
//---------------------------------------------------------------------------//

/// B in A(w, Gamma_k(k)) and A1 in A(ed(B), Gamma*_k(k)), both stored as ascending Gamma*_k(k) indices.
struct PairElt {
    std::vector<int> b;
    std::vector<int> a1;
    friend bool operator==(const PairElt&, const PairElt&) = default;
};

struct PairStats {
    WeylElt ed_b, ed_a1;
    Coroot down_b, down_a1;
};

struct InvolutionResult {
    PairElt image;
    int case_id = 0;
};

namespace detail {

/// Walk the given chain positions from w; nullopt if some step is not a graph edge.
inline std::optional<std::pair<WeylElt, Coroot>> walk_positions(const WeylElt& w, const RootChain& chain,
                                                                 const std::vector<int>& positions) {
    const int n = w.rank();
    WeylElt cur = w;
    Coroot down(n);
    for (int p : positions) {
        Root label = chain[p - 1].abs();
        EdgeKind kind = edge_kind(cur, label);
        if (kind == EdgeKind::None) return std::nullopt;
        if (kind == EdgeKind::Quantum) down += label.coroot(n);
        cur = cur.times_reflection(label);
    }
    return std::pair{cur, down};
}

inline std::vector<int> to_gamma_positions(const std::vector<int>& star_indices, int len) {
    std::vector<int> out;
    for (auto it = star_indices.rbegin(); it != star_indices.rend(); ++it) out.push_back(len + 1 - *it);
    return out;
}

}  // namespace detail

/// Statistics of a candidate pair, or nullopt if it is not in P.
inline std::optional<PairStats> pair_stats(const WeylElt& w, int k, const PairElt& p) {
    const int n = w.rank();
    const RootChain& gamma = make_chain(ChainKind::Gamma, k, n);
    const RootChain& star = make_chain(ChainKind::GammaStar, k, n);
    const int len = static_cast<int>(star.size());
    for (const auto* v : {&p.b, &p.a1}) {
        if (!std::is_sorted(v->begin(), v->end()) || std::adjacent_find(v->begin(), v->end()) != v->end())
            return std::nullopt;
        if (!v->empty() && (v->front() < 1 || v->back() > len)) return std::nullopt;
    }
    auto b = detail::walk_positions(w, gamma, detail::to_gamma_positions(p.b, len));
    if (!b) return std::nullopt;
    auto a = detail::walk_positions(b->first, star, p.a1);
    if (!a) return std::nullopt;
    return PairStats{b->first, a->first, b->second, a->second};
}

/// All of P for (w, k).
inline std::vector<PairElt> pair_set(const WeylElt& w, int k) {
    const int n = w.rank();
    const int len = 2 * n - k;
    std::vector<PairElt> out;
    for (const auto& b : admissible(w, ChainKind::Gamma, k)) {
        std::vector<int> bs;
        for (auto it = b.positions.rbegin(); it != b.positions.rend(); ++it) bs.push_back(len + 1 - *it);
        for (const auto& a : admissible(b.ed, ChainKind::GammaStar, k)) out.push_back({bs, a.positions});
    }
    return out;
}

/// The six-case involution. Index 1 of Gamma*_k(k) is the leading root alpha_k of the chain.
inline InvolutionResult pair_involution(const WeylElt& w, int k, const PairElt& p) {
    if (!pair_stats(w, k, p)) throw std::invalid_argument("pair is not in P");
    auto move_b = [](PairElt q, int idx) {
        q.b.erase(std::find(q.b.begin(), q.b.end(), idx));
        q.a1.insert(std::upper_bound(q.a1.begin(), q.a1.end(), idx), idx);
        return q;
    };
    auto move_a = [](PairElt q, int idx) {
        q.a1.erase(std::find(q.a1.begin(), q.a1.end(), idx));
        q.b.insert(std::upper_bound(q.b.begin(), q.b.end(), idx), idx);
        return q;
    };
    // Decide on the parts beyond `skip` leading indices of both sides.
    auto decide = [&](std::size_t skip, int forward, int backward) -> std::optional<InvolutionResult> {
        bool has_b = p.b.size() > skip, has_a = p.a1.size() > skip;
        if (!has_b && !has_a) return std::nullopt;
        int bi = has_b ? p.b[skip] : 0, ai = has_a ? p.a1[skip] : 0;
        if (has_b && (!has_a || bi < ai)) return InvolutionResult{move_b(p, bi), forward};
        if (has_a && (!has_b || ai < bi)) return InvolutionResult{move_a(p, ai), backward};
        return std::nullopt;
    };
    if (p.b.empty() && p.a1.empty()) return {p, 6};
    bool shared_lead = !p.b.empty() && !p.a1.empty() && p.b.front() == p.a1.front();
    if (!shared_lead) return *decide(0, 1, 2);
    if (p.b.front() != 1) throw std::logic_error("shared leading index other than the chain's first root");
    if (auto r = decide(1, 3, 4)) return *r;
    return {p, 5};
}

struct InvolutionCheck {
    std::size_t elements = 0;
    std::array<std::size_t, 7> case_counts{};
    std::size_t failures = 0;
    std::string first_failure;
    bool ok() const { return failures == 0; }
};

/// iota o iota = id, images stay in P, |B| moves by one, down sums and ed(A1) are preserved.
inline InvolutionCheck check_pair_involution(const WeylElt& w, int k) {
    InvolutionCheck c;
    auto fail = [&](const PairElt& p, const std::string& why) {
        if (!c.failures++) {
            c.first_failure = why + " at w=" + w.word_string("") + " k=" + std::to_string(k) + " |B|=" +
                              std::to_string(p.b.size()) + " |A1|=" + std::to_string(p.a1.size());
        }
    };
    for (const auto& p : pair_set(w, k)) {
        ++c.elements;
        InvolutionResult r;
        try {
            r = pair_involution(w, k, p);
        } catch (const std::exception& e) {
            fail(p, e.what());
            continue;
        }
        ++c.case_counts[r.case_id];
        auto before = pair_stats(w, k, p);
        auto after = pair_stats(w, k, r.image);
        if (!after) {
            fail(p, "image outside P");
            continue;
        }
        if (r.case_id >= 5) {
            if (!(r.image == p)) fail(p, "fixed case moved");
            continue;
        }
        int expected = (r.case_id == 1 || r.case_id == 3) ? -1 : 1;
        if (static_cast<int>(r.image.b.size()) - static_cast<int>(p.b.size()) != expected) fail(p, "size of B");
        if (before->down_b + before->down_a1 != after->down_b + after->down_a1) fail(p, "down sum");
        if (before->ed_a1 != after->ed_a1) fail(p, "ed(A1)");
        auto back = pair_involution(w, k, r.image);
        if (!(back.image == p)) fail(p, "not an involution");
        int partner = r.case_id % 2 ? r.case_id + 1 : r.case_id - 1;
        if (back.case_id != partner) fail(p, "case pairing");
    }
    return c;
}

//---------------------------------------------------------------------------//
// Collapse of the chained sums onto a single path
//---------------------------------------------------------------------------//

/// Group-algebra element: Weyl group element -> coefficient in x.
using GroupAlgebraElt = std::map<WeylElt, Laurent>;

inline GroupAlgebraElt chained_group_sum(const WeylElt& w, int m, int j) {
    const int n = w.rank();
    GroupAlgebraElt out;
    auto dfs = [&](auto&& self, const WeylElt& v, int a, const Coroot& down, int sign) -> void {
        for (const auto& s : admissible(v, chain_for_index(a), std::abs(a))) {
            if (s.empty()) continue;
            int b = twist_index(v, s, a);
            int sg = sign * ((s.size() - 1) % 2 ? -1 : 1);
            Coroot d = down + s.down;
            if (b == j) {
                out[s.ed] += Laurent(Monomial::lambda_pairing(d), sg);
            } else if (index_less(n, j, b)) {
                self(self, s.ed, b, d, sg);
            }
        }
    };
    dfs(dfs, w, m, Coroot(n), 1);
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

inline bool collapse_check(const WeylElt& w, int m, int j) {
    if (!(1 <= j && j < m && m <= w.rank())) throw std::out_of_range("collapse_check needs 1 <= j < m <= n");
    QbgPath p = p_path(w, m, j);
    GroupAlgebraElt expected{{p.end(), Laurent(Monomial::lambda_pairing(path_weight(p)))}};
    return chained_group_sum(w, m, j) == expected;
}

}  // namespace invchev
