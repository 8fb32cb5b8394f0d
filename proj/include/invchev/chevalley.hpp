#pragma once

// Chevalley expansions for mu = +-eps_k and the inverse-Chevalley right-hand
// sides: full first and second halves, the cancellation-free first half, and
// the conjectural cancellation-free second half.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "alcove.hpp"
#include "char_ring.hpp"
#include "qbg.hpp"
#include "typec.hpp"

namespace invchev {

//---------------------------------------------------------------------------//
// Chevalley expansions
//---------------------------------------------------------------------------//

enum class Sign { Plus, Minus };

inline int sign_value(Sign s) { return s == Sign::Plus ? 1 : -1; }

/// gch V_w^-(lambda +- eps_k) = (1/den) * sum_y coeff_y gch V_y^-(lambda).
struct ChevalleyExpansion {
    std::vector<std::pair<WeylElt, Laurent>> terms;
    AtomSet den;
};

inline ChevalleyExpansion compute_chevalley(const WeylElt& w, Sign sign, int k) {
    const int n = w.rank();
    if (k < 1 || k > n) throw std::out_of_range("Chevalley index k out of range");
    ChainKind kind = sign == Sign::Plus ? ChainKind::EpsChain : ChainKind::NegEpsChain;
    ComboAccumulator acc;
    for (const auto& a : admissible(w, kind, k)) {
        Monomial m = Monomial::q_pow(-*a.height) * Monomial::exp_weight(*a.wt) * Monomial::lambda_pairing(a.down);
        acc.add({a.ed, Weight(n)}, m, (a.n_neg % 2) ? -1 : 1);
    }
    ChevalleyExpansion out;
    if (sign == Sign::Plus)
        out.den = AtomSet::single(k);
    else if (k >= 2)
        out.den = AtomSet::single(k - 1);
    DemazureCombo built = acc.build();
    for (const auto& [key, c] : built.terms()) out.terms.push_back({key.y, c.num});
    return out;
}

namespace detail {

struct ChevalleyCache {
    std::shared_mutex mu;
    std::map<std::tuple<int, int, int, std::size_t>, std::unique_ptr<ChevalleyExpansion>> map;
};
inline ChevalleyCache& chevalley_cache() {
    static ChevalleyCache c;
    return c;
}

}  // namespace detail

inline const ChevalleyExpansion& chevalley(const WeylElt& w, Sign sign, int k) {
    auto& cache = detail::chevalley_cache();
    auto key = std::tuple{w.rank(), sign_value(sign), k, w.index()};
    {
        std::shared_lock lock(cache.mu);
        if (auto it = cache.map.find(key); it != cache.map.end()) return *it->second;
    }
    auto value = std::make_unique<ChevalleyExpansion>(compute_chevalley(w, sign, k));
    std::unique_lock lock(cache.mu);
    return *cache.map.emplace(key, std::move(value)).first->second;
}

/// The expansion as a combination over V_y^-(lambda).
inline DemazureCombo chevalley_expand(const WeylElt& w, Sign sign, int k) {
    const auto& e = chevalley(w, sign, k);
    DemazureCombo c;
    for (const auto& [y, p] : e.terms) c.add({y, Weight(w.rank())}, RationalCoeff(p, e.den));
    return c;
}

/// Numerator of the general Chevalley sum with the partition family cut after N terms
/// (no closed-form geometric factor). Used to test the denominators above.
inline DemazureCombo chevalley_truncated(const WeylElt& w, Sign sign, int k, int terms_kept) {
    const int n = w.rank();
    ChainKind kind = sign == Sign::Plus ? ChainKind::EpsChain : ChainKind::NegEpsChain;
    // mu in fundamental-weight coordinates: eps_k = -w_{k-1} + w_k
    int row = sign == Sign::Plus ? k : k - 1;  // the index i with m_i = 1
    DemazureCombo c;
    for (const auto& a : admissible(w, kind, k)) {
        int rows = row >= 1 ? terms_kept : 1;
        for (int i = 0; i < rows; ++i) {
            Coroot iota(n);
            if (row >= 1) iota = i * simple_coroot(n, row);
            Monomial m = Monomial::q_pow(-*a.height - i) * Monomial::exp_weight(*a.wt);
            c.add_symbol({a.ed, a.down + iota}, Weight(n), RationalCoeff(Laurent(m, (a.n_neg % 2) ? -1 : 1)));
        }
    }
    return c;
}

/// Expand every V_y^-(lambda +- eps_j) symbol of a combo down to level lambda.
inline DemazureCombo expand_to_base(const DemazureCombo& c) {
    ComboAccumulator acc;
    for (const auto& [key, coeff] : c.terms()) {
        const int n = key.y.rank();
        if (key.mu.is_zero()) {
            acc.add(key, coeff.num, coeff.den);
            continue;
        }
        int j = 0, s = 0;
        for (int i = 1; i <= n; ++i)
            if (key.mu.at(i) != 0) {
                if (j || std::abs(key.mu.at(i)) != 1) throw std::invalid_argument("level is not +-eps_j");
                j = i;
                s = key.mu.at(i);
            }
        const auto& e = chevalley(key.y, s > 0 ? Sign::Plus : Sign::Minus, j);
        AtomSet den = coeff.den;
        for (int i = 0; i < kMaxRank; ++i) den.count[i] = static_cast<int8_t>(den.count[i] + e.den.count[i]);
        for (const auto& [y, p] : e.terms)
            for (const auto& [mc, cc] : coeff.num.terms())
                for (const auto& [mp, cp] : p.terms()) acc.add({y, Weight(n)}, mc * mp, cc * cp, den);
    }
    return acc.build();
}

//---------------------------------------------------------------------------//
// Inverse-Chevalley right-hand sides
//---------------------------------------------------------------------------//

enum class Half { First, Second };

struct Variant {
    enum Kind { Full, CancelFree, Conjecture } kind = Full;
    int l = 0;  ///< only for Conjecture
};

struct IdentitySpec {
    AffineElt x;
    int m = 1;
    Half half = Half::First;
    Variant variant{};

    int rank() const { return x.w.rank(); }
};

/// One filtered subset on the way to a block: A in A^{from, .}_{base}.
struct ProvenanceStep {
    WeylElt base;
    int from = 0;
    std::vector<int> positions;
    friend bool operator==(const ProvenanceStep&, const ProvenanceStep&) = default;
};

/// One displayed block:
///   sign * q^{qsign <eps_j, shift + xi>} sum_{B in A(base, chain)} (-1)^{|B|} V_{ed(B) t_{down(B)+shift+xi}}(lambda+mu)
struct IdentityBlock {
    int sign = 1;
    int qsign = 1;
    int j = 1;
    Coroot shift;
    WeylElt base;
    ChainKind chain = ChainKind::Gamma;
    Weight mu;
    std::vector<ProvenanceStep> provenance;

    bool same_shape(const IdentityBlock& o) const {
        return qsign == o.qsign && j == o.j && shift == o.shift && base == o.base && chain == o.chain && mu == o.mu;
    }
};

/// Signed single-term stream element: sign * mono * V_key.
struct StreamTerm {
    SymbolKey key;
    Monomial mono;
    int sign;
};

namespace detail {

inline void check_identity_spec(const IdentitySpec& s) {
    const int n = s.rank();
    if (s.m < 1 || s.m > n) throw std::out_of_range("m out of range");
    if (s.variant.kind == Variant::Conjecture) {
        if (s.half != Half::Second) throw std::invalid_argument("the conjectural form is a second-half identity");
        if (s.variant.l < s.m || s.variant.l > s.rank()) throw std::out_of_range("conjecture needs m <= l <= n");
    }
    if (s.variant.kind == Variant::CancelFree && s.half != Half::First)
        throw std::invalid_argument("the cancellation-free form is a first-half identity");
}

/// Depth-first sum over chained filtered subsets; emits one block per terminal index.
inline void chained_blocks(const WeylElt& v, int a, Coroot down, int sign,
                           std::vector<ProvenanceStep>& prov, int m_bar,
                           std::vector<IdentityBlock>& out) {
    const int n = v.rank();
    for (const auto& s : admissible(v, chain_for_index(a), std::abs(a))) {
        if (s.empty()) continue;
        int b = twist_index(v, s, a);
        if (!index_less(n, b, a)) throw std::logic_error("twisted index does not decrease");
        int sg = sign * ((s.size() - 1) % 2 ? -1 : 1);
        Coroot d = down + s.down;
        prov.push_back({v, a, s.positions});
        IdentityBlock blk;
        blk.sign = sg;
        blk.shift = d;
        blk.base = s.ed;
        blk.provenance = prov;
        if (b > 0) {
            blk.qsign = 1;
            blk.j = b;
            blk.chain = ChainKind::Gamma;
            blk.mu = eps(n, b);
            out.push_back(blk);
        } else if (m_bar && -b > m_bar) {
            blk.qsign = -1;
            blk.j = -b;
            blk.chain = ChainKind::Theta;
            blk.mu = -eps(n, -b);
            out.push_back(blk);
        } else {
            throw std::logic_error("twisted index outside the summation range");
        }
        chained_blocks(s.ed, b, d, sg, prov, m_bar, out);
        prov.pop_back();
    }
}

}  // namespace detail

/// The right-hand side as a list of blocks, before any cancellation.
inline std::vector<IdentityBlock> rhs_blocks(const IdentitySpec& spec) {
    detail::check_identity_spec(spec);
    const int n = spec.rank(), m = spec.m;
    const WeylElt& w = spec.x.w;
    std::vector<IdentityBlock> out;
    auto lead = [&](ChainKind chain, int qsign, Weight mu) {
        IdentityBlock b;
        b.sign = 1;
        b.qsign = qsign;
        b.j = m;
        b.shift = Coroot(n);
        b.base = w;
        b.chain = chain;
        b.mu = std::move(mu);
        out.push_back(b);
    };
    auto path_block = [&](const QbgPath& p, int j, bool plus) {
        IdentityBlock b;
        b.sign = 1;
        b.qsign = plus ? 1 : -1;
        b.j = j;
        b.shift = path_weight(p);
        b.base = p.end();
        b.chain = plus ? ChainKind::Gamma : ChainKind::Theta;
        b.mu = plus ? eps(n, j) : -eps(n, j);
        out.push_back(b);
    };
    std::vector<ProvenanceStep> prov;
    if (spec.half == Half::First) {
        lead(ChainKind::Gamma, 1, eps(n, m));
        if (spec.variant.kind == Variant::Full) {
            detail::chained_blocks(w, m, Coroot(n), 1, prov, 0, out);
        } else {
            for (int j = 1; j < m; ++j) path_block(p_path(w, m, j), j, true);
        }
        return out;
    }
    lead(ChainKind::Theta, -1, -eps(n, m));
    if (spec.variant.kind == Variant::Full) {
        detail::chained_blocks(w, -m, Coroot(n), 1, prov, m, out);
    } else {
        for (int k = m + 1; k <= n; ++k) path_block(p_path(w, -m, -k), k, false);
        for (int k = 1; k <= spec.variant.l; ++k) path_block(p_path(w, -m, k), k, true);
    }
    return out;
}

/// Cancel opposite-sign blocks of the same shape pairwise, each against its latest unmatched partner.
inline std::vector<IdentityBlock> cancel_blocks(const std::vector<IdentityBlock>& blocks) {
    std::vector<bool> gone(blocks.size(), false);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (gone[i]) continue;
        for (std::size_t j = i; j-- > 0;)
            if (!gone[j] && blocks[j].sign == -blocks[i].sign && blocks[j].same_shape(blocks[i])) {
                gone[i] = gone[j] = true;
                break;
            }
    }
    std::vector<IdentityBlock> out;
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (!gone[i]) out.push_back(blocks[i]);
    return out;
}

/// Expand a block into signed single terms.
inline void stream_block(const IdentityBlock& b, const Coroot& xi, const std::function<void(const StreamTerm&)>& sink) {
    const int n = b.base.rank();
    Coroot shift = b.shift + xi;
    Monomial pre = Monomial::q_pow(b.qsign * pair(eps(n, b.j), shift));
    for (const auto& s : admissible(b.base, b.chain, b.j)) {
        auto [key, mult] = normalize({s.ed, s.down + shift}, b.mu);
        sink({key, pre * mult, b.sign * ((s.size() % 2) ? -1 : 1)});
    }
}

inline void rhs_stream(const IdentitySpec& spec, const std::function<void(const StreamTerm&)>& sink) {
    for (const auto& b : rhs_blocks(spec)) stream_block(b, spec.x.xi, sink);
}

inline DemazureCombo combo_from_blocks(const std::vector<IdentityBlock>& blocks, const Coroot& xi) {
    ComboAccumulator acc;
    for (const auto& b : blocks) stream_block(b, xi, [&](const StreamTerm& t) { acc.add(t.key, t.mono, t.sign); });
    return acc.build();
}

inline DemazureCombo rhs_combo(const IdentitySpec& spec) { return combo_from_blocks(rhs_blocks(spec), spec.x.xi); }

/// e^{+-w eps_m} gch V_x^-(lambda).
inline DemazureCombo lhs_combo(const IdentitySpec& spec) {
    const int n = spec.rank();
    Weight nu = spec.x.w.act(eps(n, spec.m));
    if (spec.half == Half::Second) nu = -nu;
    DemazureCombo c;
    c.add_symbol(spec.x, Weight(n), RationalCoeff(Laurent(Monomial::exp_weight(nu))));
    return c;
}

inline DemazureCombo ic_rhs_first(const AffineElt& x, int m) { return rhs_combo({x, m, Half::First, {}}); }
inline DemazureCombo ic_rhs_second(const AffineElt& x, int m) { return rhs_combo({x, m, Half::Second, {}}); }
inline DemazureCombo ic_rhs_cancel_free_first(const AffineElt& x, int m) {
    return rhs_combo({x, m, Half::First, {Variant::CancelFree, 0}});
}
inline DemazureCombo ic_rhs_conjecture_second(const AffineElt& x, int m, int l) {
    return rhs_combo({x, m, Half::Second, {Variant::Conjecture, l}});
}

//---------------------------------------------------------------------------//
// Key propositions
//---------------------------------------------------------------------------//

/// Both sides of the first (sign Plus) or second (sign Minus) key proposition.
inline std::pair<DemazureCombo, DemazureCombo> key_prop_sides(const WeylElt& w, int k, Sign sign) {
    const int n = w.rank();
    bool first = sign == Sign::Plus;
    ChainKind left = first ? ChainKind::Gamma : ChainKind::Theta;
    ChainKind right = first ? ChainKind::Theta : ChainKind::Gamma;
    Weight mu = first ? eps(n, k) : -eps(n, k);
    DemazureCombo lhs, rhs;
    for (const auto& b : admissible(w, left, k))
        lhs.add_symbol({b.ed, b.down}, mu, RationalCoeff(Laurent(b.size() % 2 ? -1 : 1)));
    Monomial e = Monomial::exp_weight(w.act(mu));
    for (const auto& a : admissible(w, right, k))
        rhs.add_symbol({a.ed, a.down}, Weight(n), RationalCoeff(Laurent(e, a.size() % 2 ? -1 : 1)));
    return {lhs, rhs};
}

/// Substitute lambda -> lambda + nu: V_y(lambda+mu) -> V_y(lambda+mu+nu), x_i -> x_i q^{<nu, alpha_i^v>}.
inline DemazureCombo shift_lambda(const DemazureCombo& c, const Weight& nu) {
    std::array<int, kMaxRank> sh{};
    for (int i = 1; i <= nu.rank(); ++i) sh[i - 1] = pair(nu, simple_coroot(nu.rank(), i));
    DemazureCombo out;
    for (const auto& [k, v] : c.terms()) out.add({k.y, k.mu + nu}, RationalCoeff(v.num.shift_x(sh), v.den));
    return out;
}

inline DemazureCombo times_monomial(const DemazureCombo& c, const Monomial& m) {
    DemazureCombo out;
    for (const auto& [k, v] : c.terms()) out.add(k, RationalCoeff(v.num.times(m), v.den));
    return out;
}

//---------------------------------------------------------------------------//
// Rendering of blocks
//---------------------------------------------------------------------------//

inline std::string coroot_latex(const Coroot& c) {
    auto a = simple_coroot_coords(c);
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        if (a[i] > 0 && !s.empty()) s += "+";
        if (a[i] == -1)
            s += "-";
        else if (a[i] != 1)
            s += std::to_string(a[i]);
        s += "\\alpha_{" + std::to_string(i + 1) + "}^{\\vee}";
    }
    return s.empty() ? "0" : s;
}

inline std::string coroot_text(const Coroot& c) {
    auto a = simple_coroot_coords(c);
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        if (a[i] > 0 && !s.empty()) s += "+";
        if (a[i] == -1)
            s += "-";
        else if (a[i] != 1)
            s += std::to_string(a[i]);
        s += "α" + std::to_string(i + 1) + "∨";
    }
    return s.empty() ? "0" : s;
}

inline std::string chain_latex(ChainKind kind, int k) {
    auto ks = std::to_string(k);
    switch (kind) {
        case ChainKind::Gamma: return "\\Gamma_{" + ks + "}(" + ks + ")";
        case ChainKind::GammaStar: return "\\Gamma^{\\ast}_{" + ks + "}(" + ks + ")";
        case ChainKind::Theta: return "\\Theta_{" + ks + "}";
        case ChainKind::ThetaStar: return "\\Theta^{\\ast}_{" + ks + "}";
        case ChainKind::EpsChain: return "\\Gamma_{" + std::to_string(k - 1) + "," + ks + "}";
        case ChainKind::NegEpsChain: return "\\Gamma^{\\ast}_{" + std::to_string(k - 1) + "," + ks + "}";
        default: return "\\Gamma";
    }
}

/// "q^{<eps_2, alpha_2^v>} sum_{B in A(s_2 s_1, Gamma_2(2))} (-1)^{|B|} gch V_{ed(B) t_{down(B)+alpha_2^v}}^-(lambda+eps_2)".
inline std::string block_latex(const IdentityBlock& b) {
    std::string s = b.sign > 0 ? "+ " : "- ";
    std::string shift = b.shift.is_zero() ? "" : coroot_latex(b.shift);
    if (!shift.empty())
        s += std::string("q^{") + (b.qsign < 0 ? "-" : "") + "\\langle \\varepsilon_{" + std::to_string(b.j) +
             "}, " + shift + "\\rangle} ";
    s += "\\sum_{B \\in \\mathcal{A}(" + weyl_latex(b.base) + ", " + chain_latex(b.chain, b.j) + ")} (-1)^{|B|} ";
    s += "\\mathrm{gch}\\, V_{\\mathrm{ed}(B) t_{\\mathrm{down}(B)" + (shift.empty() ? "" : "+" + shift) + "}}^{-}";
    s += std::string("(\\lambda ") + (b.mu.at(b.j) > 0 ? "+" : "-") + " \\varepsilon_{" + std::to_string(b.j) + "})";
    return s;
}

inline std::string block_text(const IdentityBlock& b) {
    std::ostringstream os;
    os << (b.sign > 0 ? "+" : "-") << " q^(" << (b.qsign < 0 ? "-" : "") << "<eps" << b.j << ", "
       << coroot_text(b.shift) << ">) sum over A(" << b.base.word_string("") << ", " << chain_name(b.chain, b.j)
       << ") at lambda" << (b.mu.at(b.j) > 0 ? "+" : "-") << "eps" << b.j;
    return os.str();
}

}  // namespace invchev
