#pragma once

// Labelled lists of the filtered admissible subsets met while expanding one
// inverse-Chevalley right-hand side, laid out as ed/down tables.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "alcove.hpp"
#include "chevalley.hpp"
#include "typec.hpp"

namespace invchev {

struct TableGroup {
    WeylElt base;
    int from = 0;
    int to = 0;
    std::vector<int> labels;  ///< 1-based row labels, empty for an empty set
};

struct TableRow {
    int label = 0;
    WeylElt base;
    int from = 0;
    int to = 0;
    AdmissibleSubset subset;
};

struct SubsetTable {
    WeylElt w;
    int m = 0;  ///< signed start index
    std::vector<TableGroup> groups;
    std::vector<TableRow> rows;

    int rank() const { return w.rank(); }

    std::optional<int> label_of(const ProvenanceStep& step) const {
        for (const auto& r : rows)
            if (r.base == step.base && r.from == step.from && r.subset.positions == step.positions) return r.label;
        return std::nullopt;
    }

    /// "A3" or "(A3, A12)" for a block's provenance.
    std::string provenance_label(const std::vector<ProvenanceStep>& prov) const {
        std::vector<std::string> parts;
        for (const auto& p : prov) {
            auto l = label_of(p);
            parts.push_back(l ? "A" + std::to_string(*l) : "?");
        }
        if (parts.size() == 1) return parts.front();
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i];
        return s + ")";
    }
};

/// Walk the pending (element, index) pairs from the largest index down; equal indices are
/// taken most-recently-discovered first. Each pair lists A^{index, j} for every j below it.
inline SubsetTable build_subset_table(const WeylElt& w, int m) {
    const int n = w.rank();
    if (m == 0 || std::abs(m) > n) throw std::out_of_range("table start index out of range");
    SubsetTable t;
    t.w = w;
    t.m = m;
    struct Pending {
        WeylElt v;
        int index;
        long stamp;
    };
    std::vector<Pending> pending{{w, m, 0}};
    std::vector<std::pair<WeylElt, int>> done;
    long clock = 0;
    auto discover = [&](const WeylElt& v, int index) {
        ++clock;
        if (std::find(done.begin(), done.end(), std::pair{v, index}) != done.end()) return;
        for (auto& p : pending)
            if (p.v == v && p.index == index) {
                p.stamp = clock;
                return;
            }
        pending.push_back({v, index, clock});
    };
    while (!pending.empty()) {
        auto it = std::max_element(pending.begin(), pending.end(), [n](const Pending& a, const Pending& b) {
            if (a.index != b.index) return index_less(n, a.index, b.index);
            return a.stamp < b.stamp;
        });
        Pending cur = *it;
        pending.erase(it);
        done.push_back({cur.v, cur.index});
        if (cur.index == 1) continue;
        for (int p = 1; p < order_pos(n, cur.index); ++p) {
            int j = from_order_pos(n, p);
            TableGroup g{cur.v, cur.index, j, {}};
            for (auto& s : filtered_A(cur.v, cur.index, j)) {
                int label = static_cast<int>(t.rows.size()) + 1;
                g.labels.push_back(label);
                discover(s.ed, j);
                t.rows.push_back({label, cur.v, cur.index, j, std::move(s)});
            }
            t.groups.push_back(std::move(g));
        }
    }
    return t;
}

/// The three worked rank-3 instances: first half at (s1s2s1, 3), second half at (s3s2, 2) and (s1s2s3s2s1, 1).
inline std::vector<SubsetTable> worked_example_tables() {
    return {build_subset_table(parse_weyl(3, "s1s2s1"), 3), build_subset_table(parse_weyl(3, "s3s2"), -2),
            build_subset_table(parse_weyl(3, "s1s2s3s2s1"), -1)};
}

inline std::string table_text(const SubsetTable& t, const std::string& title) {
    std::ostringstream os;
    os << title << ": w = " << t.w.word_string("") << ", start index " << index_name(t.m) << "\n";
    for (const auto& g : t.groups) {
        os << "  A^{" << index_name(g.from) << "," << index_name(g.to) << "}_{" << g.base.word_string("") << "} = ";
        if (g.labels.empty()) {
            os << "empty\n";
            continue;
        }
        os << "{";
        for (std::size_t i = 0; i < g.labels.size(); ++i) {
            const auto& r = t.rows[g.labels[i] - 1];
            os << (i ? ", " : "") << "A" << r.label << "=" << r.subset.positions_string();
        }
        os << "}\n";
    }
    for (const auto& r : t.rows)
        os << "  A" << r.label << " | " << r.subset.ed.word_string("") << " | " << coroot_text(r.subset.down) << "\n";
    return os.str();
}

inline std::string table_latex(const SubsetTable& t, const std::string& caption) {
    std::ostringstream os;
    os << "\\begin{table}[ht]\n\\centering\n\\caption{" << caption << "}\n";
    os << "\\begin{tabular}{|c||c|c|} \\hline\n";
    os << "Admissible subset & $\\mathrm{ed}(\\cdot)$ & $\\mathrm{down}(\\cdot)$ \\\\ \\hline\n";
    for (const auto& r : t.rows) {
        os << "$A_{" << r.label << "}$ & $" << (r.subset.ed.length() ? weyl_latex(r.subset.ed) : "e") << "$ & $"
           << coroot_latex(r.subset.down) << "$ \\\\ ";
        os << (r.label == static_cast<int>(t.rows.size()) ? "\\hline\n" : "\n");
    }
    os << "\\end{tabular}\n\\end{table}\n";
    return os.str();
}

}  // namespace invchev
