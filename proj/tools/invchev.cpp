#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "invchev/export.hpp"

namespace {

using namespace invchev;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    int rank = 3;
    std::string w;
    std::string m;
    std::string xi;
    std::string sign = "plus";
    std::string variant = "full";
    std::string half = "all";
    std::string format = "text";
    std::string out;
    int jobs = 1;
    int sample = 0;
    int xi_samples = 3;
    int rank_bound = 4;
    std::uint64_t seed = 1;
};

/// "3", "-3", "3b" or "3bar" (barred).
int parse_index(int n, const std::string& text) {
    std::string digits = text;
    bool barred = false;
    for (const char* suffix : {"bar", "b"})
        if (digits.size() > std::strlen(suffix) && digits.ends_with(suffix)) {
            digits.resize(digits.size() - std::strlen(suffix));
            barred = true;
            break;
        }
    int v = 0;
    try {
        v = std::stoi(digits);
    } catch (const std::exception&) {
        throw UsageError("cannot parse index '" + text + "'");
    }
    if (barred) v = -v;
    if (v == 0 || std::abs(v) > n) throw UsageError("index '" + text + "' out of range for rank " + std::to_string(n));
    return v;
}

/// Simple-coroot coordinates "1,0,-2".
Coroot parse_coroot(int n, const std::string& text) {
    Coroot xi(n);
    if (text.empty()) return xi;
    std::stringstream ss(text);
    std::string item;
    int i = 1;
    while (std::getline(ss, item, ',')) {
        if (i > n) throw UsageError("too many coordinates in --xi");
        xi = xi + std::stoi(item) * simple_coroot(n, i++);
    }
    return xi;
}

WeylElt parse_element(const Options& o) {
    try {
        return parse_weyl(o.rank, o.w);
    } catch (const std::exception& e) {
        throw UsageError(std::string("cannot parse Weyl element: ") + e.what());
    }
}

void check_rank(const Options& o, int bound) {
    if (o.rank < 1 || o.rank > kMaxRank) throw UsageError("rank must lie in 1.." + std::to_string(kMaxRank));
    if (o.rank > bound)
        throw UsageError("rank " + std::to_string(o.rank) + " exceeds the bound " + std::to_string(bound) +
                         " for this operation; raise it with --rank-bound");
}

Variant parse_variant(const std::string& text) {
    if (text == "full") return {Variant::Full, 0};
    if (text == "cf") return {Variant::CancelFree, 0};
    if (text.starts_with("conj:")) return {Variant::Conjecture, std::stoi(text.substr(5))};
    throw UsageError("unknown variant '" + text + "'");
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot open " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

  private:
    std::ofstream file_;
};

int run_expand(const Options& o) {
    check_rank(o, kMaxRank);
    WeylElt w = parse_element(o);
    if (o.m.empty()) throw UsageError("expand needs --m");
    int m = parse_index(o.rank, o.m);
    if (m < 0) throw UsageError("expand takes an unbarred --m");
    Output out(o.out);
    auto& os = out.stream();
    if (o.variant == "chevalley") {
        Sign sign = o.sign == "plus" ? Sign::Plus : Sign::Minus;
        DemazureCombo c = chevalley_expand(w, sign, m);
        if (o.format == "json")
            os << json{{"chevalley", combo_json(c)}}.dump(2) << "\n";
        else if (o.format == "latex")
            os << combo_latex(c) << "\n";
        else
            os << combo_text(c);
        return 0;
    }
    IdentitySpec spec{{w, parse_coroot(o.rank, o.xi)}, m, o.sign == "plus" ? Half::First : Half::Second,
                      parse_variant(o.variant)};
    if (o.sign != "plus" && o.sign != "minus") throw UsageError("--sign is plus or minus");
    std::vector<IdentityBlock> blocks;
    try {
        blocks = rhs_blocks(spec);
    } catch (const std::out_of_range& e) {
        throw UsageError(e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    auto survivors = cancel_blocks(blocks);
    DemazureCombo combo = combo_from_blocks(blocks, spec.x.xi);
    auto stream = collect_stream(spec);
    bool certificate = cancellation_certificate(stream);
    if (o.format == "json") {
        json jb = json::array(), js = json::array();
        for (const auto& b : blocks) jb.push_back(block_json(b));
        for (const auto& b : survivors) js.push_back(block_json(b));
        os << json{{"instance", detail::spec_name(spec)},
                   {"blocks", jb},
                   {"surviving_blocks", js},
                   {"combo", combo_json(combo)},
                   {"cancellation_free_stream", certificate}}
                  .dump(2)
           << "\n";
    } else if (o.format == "latex") {
        os << "\\begin{align*}\n& e^{" << (spec.half == Half::First ? "" : "-") << weyl_latex(w) << "\\varepsilon_{" << m
           << "}} \\mathrm{gch}\\, V_{" << weyl_latex(w) << "}^{-}(\\lambda) \\\\\n";
        for (std::size_t i = 0; i < survivors.size(); ++i)
            os << (i ? "& \\quad " : "&= ") << block_latex(survivors[i]) << " \\\\\n";
        os << "\\end{align*}\n";
    } else {
        os << detail::spec_name(spec) << "\n";
        os << "blocks before cancellation: " << blocks.size() << "\n";
        for (const auto& b : blocks) os << "  " << block_text(b) << "\n";
        os << "surviving blocks: " << survivors.size() << "\n";
        for (const auto& b : survivors) os << "  " << block_text(b) << "\n";
        os << "stream cancellation-free: " << (certificate ? "yes" : "no") << "\n";
        os << "combination:\n" << combo_text(combo);
    }
    return 0;
}

int run_verify(const Options& o) {
    bool spot = !o.w.empty() || o.sample > 0;
    check_rank(o, spot ? std::max(o.rank_bound, 5) : o.rank_bound);
    const int n = o.rank;
    std::vector<std::function<VerificationReport()>> tasks;
    bool first = o.half == "all" || o.half == "first";
    bool second = o.half == "all" || o.half == "second";
    bool key = o.half == "all" || o.half == "key";
    bool cf = o.half == "all" || o.half == "cf";
    if (!first && !second && !key && !cf) throw UsageError("--half is first, second, key, cf or all");
    std::mt19937_64 rng(o.seed);
    std::vector<std::pair<WeylElt, int>> instances;
    if (!o.w.empty()) {
        WeylElt w = parse_element(o);
        if (o.m.empty())
            for (int m = 1; m <= n; ++m) instances.push_back({w, m});
        else
            instances.push_back({w, parse_index(n, o.m)});
    } else {
        auto group = weyl_group(n);
        if (o.sample > 0) {
            std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
            std::uniform_int_distribution<int> pick_m(1, n);
            for (int s = 0; s < o.sample; ++s) instances.push_back({group[pick(rng)], pick_m(rng)});
        } else {
            for (const auto& w : group)
                for (int m = 1; m <= n; ++m) instances.push_back({w, m});
        }
    }
    for (const auto& [w, m] : instances) {
        if (m < 1) throw UsageError("verify takes an unbarred --m");
        std::vector<Coroot> xis{Coroot(n)};
        for (int t = 0; t < o.xi_samples; ++t) xis.push_back(random_coroot(n, rng));
        for (const auto& xi : xis) {
            if (first) tasks.push_back([=] { return verify_identity({{w, xi}, m, Half::First, {}}); });
            if (second) tasks.push_back([=] { return verify_identity({{w, xi}, m, Half::Second, {}}); });
            if (cf)
                tasks.push_back([=] {
                    IdentitySpec full{{w, xi}, m, Half::First, {}};
                    IdentitySpec free{{w, xi}, m, Half::First, {Variant::CancelFree, 0}};
                    VerificationReport r = verify_identity(free);
                    r.residual += rhs_combo(free) - rhs_combo(full);
                    r.verified = r.residual.is_zero() && cancellation_certificate(collect_stream(free));
                    return r;
                });
        }
        if (key) tasks.push_back([=] { return verify_key_props(w, m); });
    }
    auto reports = parallel_map(tasks.size(), o.jobs, [&](std::size_t i) { return tasks[i](); });
    std::size_t failed = 0;
    for (const auto& r : reports) failed += !r.verified;
    Output out(o.out);
    auto& os = out.stream();
    if (o.format == "json") {
        json a = json::array();
        for (const auto& r : reports) a.push_back(report_json(r));
        os << json{{"rank", n}, {"checked", reports.size()}, {"failed", failed}, {"reports", a}}.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            os << (r.verified ? "PASS " : "FAIL ") << r.instance << "\n";
            if (!r.verified) os << (o.format == "latex" ? combo_latex(r.residual) + "\n" : combo_text(r.residual));
        }
        os << reports.size() - failed << "/" << reports.size() << " verified at rank " << n << "\n";
    }
    return failed ? 1 : 0;
}

int run_scan(const Options& o) {
    check_rank(o, o.rank_bound);
    auto scan = conjecture_scan(o.rank, o.jobs);
    Output out(o.out);
    auto& os = out.stream();
    if (o.format == "json") {
        os << scan_json(scan).dump(2) << "\n";
    } else {
        for (const auto& e : scan.entries) {
            os << e.w.word_string("") << " m=" << e.m << " l:";
            for (int l : e.working_l) os << " " << l;
            if (e.working_l.empty()) os << " none (counterexample)";
            if (e.certified_l.size() != e.working_l.size()) os << " [stream not cancellation-free for some l]";
            os << "\n";
        }
        os << "instances: " << scan.entries.size() << ", counterexamples: " << scan.counterexamples().size()
           << ", with l in {m,n}: " << scan.count_hitting_m_or_n() << "\n";
    }
    return scan.counterexamples().empty() ? 0 : 1;
}

int run_tables(const Options& o) {
    check_rank(o, kMaxRank);
    std::vector<SubsetTable> tables;
    if (!o.w.empty()) {
        if (o.m.empty()) throw UsageError("tables with --w needs --m");
        tables.push_back(build_subset_table(parse_element(o), parse_index(o.rank, o.m)));
    } else {
        if (o.rank != 3) throw UsageError("the worked tables live at rank 3; pass --w and --m for other ranks");
        tables = worked_example_tables();
    }
    Output out(o.out);
    auto& os = out.stream();
    if (o.format == "json") {
        json a = json::array();
        for (const auto& t : tables) a.push_back(table_json(t));
        os << a.dump(2) << "\n";
        return 0;
    }
    for (std::size_t i = 0; i < tables.size(); ++i) {
        std::string title = "Table " + std::to_string(i + 1);
        if (i) os << "\n";
        os << (o.format == "latex" ? table_latex(tables[i], title) : table_text(tables[i], title));
    }
    return 0;
}

int run_qbg(const Options& o) {
    check_rank(o, std::max(o.rank_bound, 5));
    Output out(o.out);
    if (o.format == "dot")
        out.stream() << qbg_dot(o.rank);
    else
        out.stream() << qbg_json(o.rank).dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inverse Chevalley formulas in type C: expansions, tables and exhaustive verification"};
    app.set_config("--config", "", "key=value file mirroring the flags");
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* sub, std::vector<std::string> formats) {
        sub->add_option("--rank", o.rank, "rank n")->capture_default_str();
        sub->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember(formats))
            ->capture_default_str();
        sub->add_option("--out", o.out, "write output to this path");
        sub->add_option("--rank-bound", o.rank_bound, "largest rank allowed for exhaustive work")->capture_default_str();
    };
    auto* expand = app.add_subcommand("expand", "right-hand side of an inverse Chevalley identity, or a Chevalley expansion");
    common(expand, {"text", "json", "latex"});
    expand->add_option("--w", o.w, "Weyl element, e.g. \"s1 s2 s1\" or \"[2,-3,1]\"")->required();
    expand->add_option("--m", o.m, "index m")->required();
    expand->add_option("--sign", o.sign, "plus: e^{w eps_m}, minus: e^{-w eps_m}")
        ->check(CLI::IsMember({"plus", "minus"}))
        ->capture_default_str();
    expand->add_option("--variant", o.variant, "full, cf, conj:<l>, or chevalley")->capture_default_str();
    expand->add_option("--xi", o.xi, "translation in simple-coroot coordinates, e.g. 1,0,-1");

    auto* verify = app.add_subcommand("verify", "check identities through the Chevalley expansions");
    common(verify, {"text", "json", "latex"});
    verify->add_option("--w", o.w, "restrict to one Weyl element");
    verify->add_option("--m", o.m, "restrict to one m (or k for key)");
    verify->add_option("--half", o.half, "first, second, key, cf or all")->capture_default_str();
    verify->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
    verify->add_option("--sample", o.sample, "random (w, m) instances instead of all");
    verify->add_option("--xi-samples", o.xi_samples, "random translations per instance")->capture_default_str();
    verify->add_option("--seed", o.seed, "seed for sampling")->capture_default_str();

    auto* scan = app.add_subcommand("scan-conjecture", "find every working l of the conjectural second-half form");
    common(scan, {"text", "json"});
    scan->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();

    auto* tables = app.add_subcommand("tables", "ed/down tables of the filtered admissible subsets");
    common(tables, {"text", "json", "latex"});
    tables->add_option("--w", o.w, "Weyl element (default: the three worked rank-3 instances)");
    tables->add_option("--m", o.m, "start index, e.g. 3 or 2bar");

    auto* qbg = app.add_subcommand("qbg", "export the quantum Bruhat graph");
    common(qbg, {"json", "dot"});
    o.format = "text";

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    if (qbg->parsed() && o.format == "text") o.format = "json";
    try {
        if (expand->parsed()) return run_expand(o);
        if (verify->parsed()) return run_verify(o);
        if (scan->parsed()) return run_scan(o);
        if (tables->parsed()) return run_tables(o);
        if (qbg->parsed()) return run_qbg(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
