#pragma once

// JSON and DOT serialization. Needs nlohmann/json; the core headers do not.

#include <nlohmann/json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "alcove.hpp"
#include "char_ring.hpp"
#include "chevalley.hpp"
#include "qbg.hpp"
#include "tables.hpp"
#include "typec.hpp"
#include "verify.hpp"

namespace invchev {

using json = nlohmann::json;

template <class Tag>
json coords_json(const LatticeVec<Tag>& v) {
    json a = json::array();
    for (int i = 1; i <= v.rank(); ++i) a.push_back(v.at(i));
    return a;
}

inline json weyl_json(const WeylElt& w) {
    return {{"window", w.window_string()}, {"word", w.word_string("")}};
}

inline json coroot_json(const Coroot& c) {
    return {{"eps", coords_json(c)}, {"simple", simple_coroot_coords(c)}, {"text", coroot_text(c)}};
}

inline json monomial_json(const Monomial& m, int n, int64_t c) {
    json x = json::array(), e = json::array();
    for (int i = 0; i < n; ++i) {
        x.push_back(m.x[i]);
        e.push_back(m.e[i]);
    }
    return {{"c", c}, {"q", m.qexp}, {"x", x}, {"e", e}};
}

inline json laurent_json(const Laurent& p, int n) {
    json a = json::array();
    for (const auto& [m, c] : p.terms()) a.push_back(monomial_json(m, n, c));
    return a;
}

inline json combo_json(const DemazureCombo& c) {
    json terms = json::array();
    for (const auto& [k, v] : c.terms()) {
        const int n = k.y.rank();
        json den = json::array();
        for (int i = 0; i < n; ++i) den.push_back(v.den.count[i]);
        terms.push_back({{"w", k.y.window_string()},
                         {"word", k.y.word_string("")},
                         {"mu", coords_json(k.mu)},
                         {"coeff", laurent_json(v.num, n)},
                         {"den_atoms", den}});
    }
    return terms;
}

inline json block_json(const IdentityBlock& b, const SubsetTable* table = nullptr) {
    json j = {{"sign", b.sign},       {"q_sign", b.qsign},          {"j", b.j},
              {"shift", coroot_json(b.shift)}, {"base", weyl_json(b.base)}, {"chain", chain_name(b.chain, b.j)},
              {"mu", coords_json(b.mu)}, {"latex", block_latex(b)}};
    json prov = json::array();
    for (const auto& p : b.provenance)
        prov.push_back({{"base", p.base.word_string("")}, {"from", index_name(p.from)}, {"positions", p.positions}});
    j["provenance"] = prov;
    if (table) j["label"] = table->provenance_label(b.provenance);
    return j;
}

inline json subset_json(const AdmissibleSubset& a) {
    json j = {{"positions", a.positions}, {"ed", weyl_json(a.ed)}, {"down", coroot_json(a.down)}, {"n", a.n_neg}};
    if (a.wt) j["wt"] = coords_json(*a.wt);
    if (a.height) j["height"] = *a.height;
    return j;
}

inline json table_json(const SubsetTable& t) {
    json groups = json::array();
    for (const auto& g : t.groups)
        groups.push_back({{"base", g.base.word_string("")},
                          {"from", index_name(g.from)},
                          {"to", index_name(g.to)},
                          {"labels", g.labels}});
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row = subset_json(r.subset);
        row["label"] = "A" + std::to_string(r.label);
        rows.push_back(row);
    }
    return {{"w", weyl_json(t.w)}, {"start", index_name(t.m)}, {"groups", groups}, {"rows", rows}};
}

inline json report_json(const VerificationReport& r) {
    json j = {{"instance", r.instance},   {"verified", r.verified}, {"lhs_terms", r.lhs_terms},
              {"rhs_terms", r.rhs_terms}, {"seconds", r.seconds}};
    if (!r.verified) {
        j["residual"] = combo_json(r.residual);
        j["residual_latex"] = combo_latex(r.residual);
    }
    return j;
}

inline json scan_json(const ConjectureScanResult& s) {
    json entries = json::array();
    for (const auto& e : s.entries)
        entries.push_back({{"w", weyl_json(e.w)},
                           {"m", e.m},
                           {"working_l", e.working_l},
                           {"certified_l", e.certified_l},
                           {"formal_l", e.formal_l},
                           {"hits_m_or_n", e.hits_m_or_n()}});
    return {{"rank", s.n},
            {"instances", s.entries.size()},
            {"counterexamples", s.counterexamples().size()},
            {"hitting_m_or_n", s.count_hitting_m_or_n()},
            {"entries", entries}};
}

inline json qbg_json(int n) {
    json nodes = json::array(), edges = json::array();
    for (const auto& w : weyl_group(n)) {
        nodes.push_back({{"window", w.window_string()}, {"word", w.word_string("")}, {"length", w.length()}});
        for (const auto& e : out_edges(w))
            edges.push_back({{"source", e.source.word_string("")},
                             {"target", e.target.word_string("")},
                             {"label", e.label.to_string()},
                             {"kind", to_string(e.kind)}});
    }
    return {{"rank", n}, {"nodes", nodes}, {"edges", edges}};
}

inline std::string qbg_dot(int n) {
    std::ostringstream os;
    os << "digraph qbg_C" << n << " {\n";
    for (const auto& w : weyl_group(n)) os << "  \"" << w.word_string("") << "\";\n";
    for (const auto& w : weyl_group(n))
        for (const auto& e : out_edges(w))
            os << "  \"" << e.source.word_string("") << "\" -> \"" << e.target.word_string("") << "\" [label=\""
               << e.label.to_string() << "\"" << (e.kind == EdgeKind::Quantum ? ", style=dashed" : "") << "];\n";
    os << "}\n";
    return os.str();
}

}  // namespace invchev
