// strat-cat: command-line front end for the exit-path category toolkit.
//
// Subcommands mirror the library modules: `poset` (finite order topology and
// fundamental categories), `braid` (Garside engine), `spn` (symmetric-product
// strata), `rpn` (projective sign skeletons), `cosheaf` (cosheaves, display
// spaces, functor round trips), and `oracle` (independent cross-check suites).
//
// Results are printed as a single line of JSON on standard output; all
// diagnostics go to standard error. Exit codes: 0 success, 1 oracle
// disagreement, 2 invalid input, 3 inconclusive within the given bounds.
// Payload arguments accept inline JSON (starting with '{' or '[') or a path
// to a file containing it. All randomness comes from the --seed flag.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "stratcat/braid.hpp"
#include "stratcat/display.hpp"
#include "stratcat/finite_space.hpp"
#include "stratcat/garside.hpp"
#include "stratcat/group.hpp"
#include "stratcat/io_json.hpp"
#include "stratcat/oracles.hpp"
#include "stratcat/partition.hpp"
#include "stratcat/poset_functor.hpp"
#include "stratcat/precosheaf.hpp"
#include "stratcat/preorder.hpp"
#include "stratcat/presentation.hpp"
#include "stratcat/rng.hpp"
#include "stratcat/samplers.hpp"
#include "stratcat/space_over.hpp"
#include "stratcat/sym_product.hpp"
#include "stratcat/sym_samplers.hpp"
#include "stratcat/thin_category.hpp"

namespace {

using json = stratcat::io::json;
using stratcat::AbstractPartition;
using stratcat::Abelianization;
using stratcat::BraidWord;
using stratcat::Poset;
using stratcat::Precosheaf;
using stratcat::Rng;
using stratcat::ValidationError;
using stratcat::Variance;

// ---- payload plumbing -------------------------------------------------------

std::string load_payload(const std::string& arg) {
    size_t first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return arg;
    std::ifstream in(arg, std::ios::binary);
    if (!in) throw ValidationError("cannot read payload file \"" + arg + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_payload(const std::string& arg, const std::string& what) {
    try {
        return json::parse(load_payload(arg));
    } catch (const json::parse_error& e) {
        throw ValidationError("malformed " + what + ": " + e.what());
    }
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
    std::vector<int> out;
    std::string cur;
    for (char c : s + ",") {
        if (c == ',') {
            if (cur.empty()) throw ValidationError(what + ": empty entry");
            try {
                out.push_back(std::stoi(cur));
            } catch (...) {
                throw ValidationError(what + ": bad entry \"" + cur + "\"");
            }
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

int element_index(const std::vector<std::string>& names, const std::string& name) {
    for (size_t x = 0; x < names.size(); ++x)
        if (names[x] == name) return static_cast<int>(x);
    throw ValidationError("unknown element \"" + name + "\"");
}

// The comparability component of `base`, as an induced subposet together with
// the base's index inside it. The localized vertex group only ever sees this
// component.
std::pair<Poset, int> component_of(const Poset& p, int base) {
    for (const std::vector<int>& comp : stratcat::comparability_components(p))
        for (size_t i = 0; i < comp.size(); ++i)
            if (comp[i] == base)
                return {stratcat::induced_subposet(p, comp), static_cast<int>(i)};
    throw stratcat::Error("internal: base element not found in any component");
}

// ---- oracle suites ----------------------------------------------------------

BraidWord random_word(Rng& rng, int n, int len_max) {
    const int len = static_cast<int>(rng.below(static_cast<std::uint64_t>(len_max) + 1));
    BraidWord w{n, {}};
    for (int i = 0; i < len; ++i) {
        const int g = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n) - 1));
        w.letters.push_back(rng.flip() ? g : -g);
    }
    return w;
}

// A word equal to `u` in the braid group, obtained by random applications of
// free insertion, far commutation, and the braid relation (on same-sign
// triples, where it holds verbatim for inverses too).
BraidWord rewrite_equivalent(Rng& rng, const BraidWord& u, int moves) {
    BraidWord w = u;
    for (int m = 0; m < moves; ++m) {
        const int kind = static_cast<int>(rng.below(3));
        if (kind == 0) {
            const int g = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(w.n) - 1));
            const size_t pos = rng.below(w.letters.size() + 1);
            const int first = rng.flip() ? g : -g;
            w.letters.insert(w.letters.begin() + static_cast<long>(pos), {first, -first});
        } else if (kind == 1 && w.letters.size() >= 2) {
            std::vector<size_t> spots;
            for (size_t i = 0; i + 1 < w.letters.size(); ++i)
                if (std::abs(std::abs(w.letters[i]) - std::abs(w.letters[i + 1])) >= 2)
                    spots.push_back(i);
            if (!spots.empty()) {
                const size_t i = spots[rng.below(spots.size())];
                std::swap(w.letters[i], w.letters[i + 1]);
            }
        } else if (kind == 2 && w.letters.size() >= 3) {
            std::vector<size_t> spots;
            for (size_t i = 0; i + 2 < w.letters.size(); ++i) {
                const int a = w.letters[i], b = w.letters[i + 1], c = w.letters[i + 2];
                if (a == c && ((a > 0) == (b > 0)) && std::abs(std::abs(a) - std::abs(b)) == 1)
                    spots.push_back(i);
            }
            if (!spots.empty()) {
                const size_t i = spots[rng.below(spots.size())];
                std::swap(w.letters[i], w.letters[i + 1]);
                w.letters[i + 2] = w.letters[i];
            }
        }
    }
    return w;
}

std::vector<int> random_composition(Rng& rng, int n) {
    std::vector<int> parts;
    int rem = n;
    while (rem > 0) {
        const int part = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(rem)));
        parts.push_back(part);
        rem -= part;
    }
    return parts;
}

// Random word whose letters all cross strands inside single blocks of the
// composition — a member of the parabolic subgroup by construction.
BraidWord random_block_internal_word(Rng& rng, const std::vector<int>& widths, int len) {
    int n = 0;
    std::vector<int> gens;
    for (int w : widths) {
        for (int c = n + 1; c <= n + w - 1; ++c) gens.push_back(c);
        n += w;
    }
    BraidWord out{n, {}};
    if (gens.empty()) return out;
    for (int i = 0; i < len; ++i) {
        const int g = gens[rng.below(gens.size())];
        out.letters.push_back(rng.flip() ? g : -g);
    }
    return out;
}

json run_oracle_braid(std::uint64_t seed, int pairs, int n_max, int len_max, int samples) {
    if (n_max < 3 || n_max > 16) throw ValidationError("--n-max must be in 3..16 for braid");
    if (pairs < 1 || len_max < 1 || samples < 1)
        throw ValidationError("--pairs, --len-max, --samples must be positive");
    Rng rng(seed);
    json checks = json::array();
    bool ok = true;
    for (int n = 3; n <= n_max; ++n) {
        int bad = 0;
        for (int t = 0; t < pairs; ++t) {
            const BraidWord u = random_word(rng, n, len_max);
            const BraidWord v = rng.flip() ? rewrite_equivalent(rng, u, 4)
                                           : random_word(rng, n, len_max);
            if (stratcat::equal(u, v) != stratcat::artin_equal(u, v)) ++bad;
        }
        ok = ok && bad == 0;
        checks.push_back(json{{"name", "nf_vs_artin"}, {"n", n}, {"pairs", pairs},
                              {"disagreements", bad}});
    }
    for (int n = 2; n <= std::min(n_max, 6); ++n) {
        int bad = 0;
        for (int t = 0; t < samples; ++t) {
            const std::vector<int> widths = random_composition(rng, n);
            const bool planted = rng.flip();
            const BraidWord w = planted
                                    ? random_block_internal_word(rng, widths, len_max / 2)
                                    : random_word(rng, n, len_max / 2);
            const bool fast = stratcat::parabolic_member(w, widths);
            const bool slow = stratcat::parabolic_member_oracle(w, widths);
            if (fast != slow || (planted && !fast)) ++bad;
        }
        ok = ok && bad == 0;
        checks.push_back(json{{"name", "parabolic_vs_delete"}, {"n", n}, {"samples", samples},
                              {"disagreements", bad}});
    }
    return json{{"suite", "braid"}, {"seed", seed}, {"checks", std::move(checks)}, {"ok", ok}};
}

json run_oracle_spn(int n_max) {
    if (n_max < 1 || n_max > 6)
        throw ValidationError("--n-max must be in 1..6 for spn (the oracle materializes S_n)");
    int pairs_checked = 0, bad = 0;
    for (int n = 1; n <= n_max; ++n)
        for (const auto& [p, q] : stratcat::samplers::refinement_pairs(n)) {
            std::vector<std::vector<std::vector<int>>> mine;
            for (const auto& pat : stratcat::double_cosets(p, q)) mine.push_back(pat.splits);
            std::sort(mine.begin(), mine.end());
            const auto brute = stratcat::double_cosets_oracle(p, q);
            if (mine != brute) ++bad;
            ++pairs_checked;
        }
    return json{{"suite", "spn"}, {"n_max", n_max}, {"pairs_checked", pairs_checked},
                {"disagreements", bad}, {"ok", bad == 0}};
}

json run_oracle_poset(int n_max) {
    if (n_max < 1 || n_max > 6) throw ValidationError("--n-max must be in 1..6 for poset");
    int categories = 0, h1_components = 0, bad = 0;
    for (int n = 1; n <= n_max; ++n)
        for (const Poset& p : stratcat::all_posets(n)) {
            const stratcat::ThinCategory cat = stratcat::poset_category(p);
            for (int x = 0; x < p.size(); ++x)
                for (int y = 0; y < p.size(); ++y)
                    if (cat.hom(x, y) != p.leq(x, y)) ++bad;
            ++categories;
            for (const std::vector<int>& comp : stratcat::comparability_components(p)) {
                const Poset q = stratcat::induced_subposet(p, comp);
                const Abelianization via_localization = stratcat::abelianization(
                    stratcat::localize_vertex_group(stratcat::present_poset(q), 0));
                if (!(via_localization == stratcat::nerve_h1(q, 0))) ++bad;
                ++h1_components;
            }
        }
    return json{{"suite", "poset"}, {"n_max", n_max}, {"categories", categories},
                {"h1_components", h1_components}, {"disagreements", bad}, {"ok", bad == 0}};
}

json run_oracle_cosheaf(std::uint64_t seed, int points_max, int trials) {
    if (points_max < 2 || points_max > 8)
        throw ValidationError("--points-max must be in 2..8 for cosheaf");
    if (trials < 1) throw ValidationError("--trials must be positive");
    Rng rng(seed);
    int oracle_checked = 0, mutants = 0, bad = 0;
    for (int t = 0; t < trials; ++t) {
        const int n = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(points_max) - 1));
        const Poset base = stratcat::samplers::random_poset(rng, n);

        const stratcat::PosetFunctor g =
            stratcat::samplers::random_functor(rng, base, 3, Variance::contravariant);
        const Precosheaf f = stratcat::cosheaf_from_functor(g);
        const stratcat::CosheafReport mine = stratcat::cosheaf_check(f);
        if (!mine.ok) ++bad;
        const int nonempty_opens = f.open_count() - 1;
        if (nonempty_opens <= 14) {
            const stratcat::AllCoversWitness brute = stratcat::all_covers_cosheaf_oracle(f);
            if (mine.ok != brute.ok) ++bad;
            ++oracle_checked;
            if (std::optional<Precosheaf> broken = stratcat::samplers::mutate_non_cosheaf(rng, f)) {
                const stratcat::CosheafReport mb = stratcat::cosheaf_check(*broken);
                const stratcat::AllCoversWitness bb = stratcat::all_covers_cosheaf_oracle(*broken);
                if (mb.ok || bb.ok || mb.open_index != bb.open_index) ++bad;
                ++mutants;
            }
        }
        if (!stratcat::functor_roundtrip(g).ok) ++bad;

        const stratcat::PosetFunctor h =
            stratcat::samplers::random_functor(rng, base, 3, Variance::covariant);
        if (!stratcat::functor_roundtrip(h).ok) ++bad;
    }
    return json{{"suite", "cosheaf"}, {"seed", seed}, {"points_max", points_max},
                {"trials", trials}, {"oracle_checked", oracle_checked}, {"mutants", mutants},
                {"disagreements", bad}, {"ok", bad == 0}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "strat-cat: fundamental categories of stratified spaces.\n"
        "Computes exit-path categories of finite po-spaces, sign skeletons of real\n"
        "projective space, braid-indexed strata of symmetric products, and cosheaf\n"
        "display spaces, each validated against independent oracles.\n"
        "JSON results on stdout; diagnostics on stderr. Exit codes: 0 success,\n"
        "1 oracle disagreement, 2 invalid input, 3 inconclusive within bounds."};
    app.require_subcommand(1);

    json result;
    int code = 0;

    // ---- poset ---------------------------------------------------------------
    CLI::App* poset = app.add_subcommand(
        "poset", "Fundamental categories of finite posets (payloads: preorder JSON\n"
                 "{\"elements\":[names],\"leq\":[[bool,...],...]}; the relation is closed\n"
                 "reflexively and transitively, then antisymmetry is required)");
    poset->require_subcommand(1);
    {
        static std::string payload;
        CLI::App* cat = poset->add_subcommand(
            "cat", "Present the fundamental (exit-path) category of a poset: one\n"
                   "generating arrow per Hasse cover, one relation per parallel path\n"
                   "pair. Output: {\"objects\":...,\"arrows\":[{\"name\",\"src\",\"dst\"}],\n"
                   "\"relations\":[[[arrow names],[arrow names]],...]}");
        cat->add_option("payload", payload, "poset JSON (inline or file path)")->required();
        cat->callback([&] {
            const Poset p = stratcat::io::poset_from_json(parse_payload(payload, "poset JSON"));
            result = stratcat::io::category_to_json(stratcat::present_poset(p));
        });
    }
    {
        static std::string payload, base_name;
        CLI::App* loc = poset->add_subcommand(
            "localize", "Vertex group of the groupoidification at --base, presented by\n"
                        "generators and relators. Computed in the comparability component\n"
                        "of the base element. Output: {\"generators\":[names],\n"
                        "\"relators\":[[letters],...]} with case-swap denoting inverses");
        loc->add_option("payload", payload, "poset JSON (inline or file path)")->required();
        loc->add_option("--base", base_name, "element at which to take the vertex group "
                                             "(default: first element)");
        loc->callback([&] {
            const Poset p = stratcat::io::poset_from_json(parse_payload(payload, "poset JSON"));
            const int base = base_name.empty() ? 0 : element_index(p.elements(), base_name);
            const auto [comp, pos] = component_of(p, base);
            result = stratcat::io::presentation_to_json(
                stratcat::localize_vertex_group(stratcat::present_poset(comp), pos));
        });
    }
    {
        static std::string payload, base_name;
        CLI::App* ab = poset->add_subcommand(
            "pi1ab", "Abelianized vertex group of the groupoidification at --base\n"
                     "(first homology of the base's comparability component).\n"
                     "Output: {\"rank\":r,\"torsion\":[invariant factors]}");
        ab->add_option("payload", payload, "poset JSON (inline or file path)")->required();
        ab->add_option("--base", base_name, "element at which to take the vertex group "
                                            "(default: first element)");
        ab->callback([&] {
            const Poset p = stratcat::io::poset_from_json(parse_payload(payload, "poset JSON"));
            const int base = base_name.empty() ? 0 : element_index(p.elements(), base_name);
            const auto [comp, pos] = component_of(p, base);
            result = stratcat::io::abelianization_to_json(stratcat::abelianization(
                stratcat::localize_vertex_group(stratcat::present_poset(comp), pos)));
        });
    }

    // ---- braid ---------------------------------------------------------------
    CLI::App* braid = app.add_subcommand(
        "braid", "Garside braid engine (words: \"s1 s2^-1 ...\" text with optional\n"
                 "\"n=<k>\" header, or JSON [[i,sign],...]; generators are 1-based,\n"
                 "s<i> crosses strand i over strand i+1)");
    braid->require_subcommand(1);
    {
        static std::string word;
        static int n = -1;
        CLI::App* nf = braid->add_subcommand(
            "nf", "Left-greedy Garside normal form. Output: {\"n\":...,\"delta\":d,\n"
                  "\"factors\":[[permutation images],...],\"word\":\"s1 ...\"}");
        nf->add_option("--n", n, "strand count")->required();
        nf->add_option("word", word, "braid word")->required();
        nf->callback([&] {
            const stratcat::NormalForm form =
                stratcat::normal_form(stratcat::io::braid_from_text_or_array(word, n));
            json factors = json::array();
            for (const auto& f : form.factors) factors.push_back(f.images());
            result = json{{"n", form.n}, {"delta", form.delta}, {"factors", std::move(factors)},
                          {"word", stratcat::io::braid_word_text(
                                       stratcat::braid_from_normal_form(form))}};
        });
    }
    {
        static std::string word_a, word_b;
        static int n = -1;
        CLI::App* eq = braid->add_subcommand(
            "eq", "Decide equality of two braid words via normal forms.\n"
                  "Output: {\"equal\":bool}");
        eq->add_option("--n", n, "strand count")->required();
        eq->add_option("first", word_a, "first braid word")->required();
        eq->add_option("second", word_b, "second braid word")->required();
        eq->callback([&] {
            result = json{{"equal",
                           stratcat::equal(stratcat::io::braid_from_text_or_array(word_a, n),
                                           stratcat::io::braid_from_text_or_array(word_b, n))}};
        });
    }
    {
        static std::string word;
        static int n = -1;
        CLI::App* perm = braid->add_subcommand(
            "perm", "Underlying permutation of a braid word, as the 0-based image\n"
                    "array strand -> final position. Output: {\"perm\":[...]}");
        perm->add_option("--n", n, "strand count")->required();
        perm->add_option("word", word, "braid word")->required();
        perm->callback([&] {
            result = json{{"perm", stratcat::permutation_of(
                                       stratcat::io::braid_from_text_or_array(word, n))
                                       .images()}};
        });
    }
    {
        static std::string word, widths_text;
        static int n = -1;
        CLI::App* cab = braid->add_subcommand(
            "cable", "Cable a block braid: replace strand i (counted at the start) by\n"
                     "--widths[i] parallel strands. Output: {\"n\":total,\"word\":...}");
        cab->add_option("--n", n, "strand count of the block braid (default: widths count)");
        cab->add_option("--widths", widths_text, "comma-separated bundle widths, one per strand")
            ->required();
        cab->add_option("word", word, "block braid word")->required();
        cab->callback([&] {
            const std::vector<int> widths = parse_int_list(widths_text, "--widths");
            if (n >= 1 && n != static_cast<int>(widths.size()))
                throw ValidationError("--n must equal the number of --widths entries");
            const BraidWord cabled = stratcat::cable(
                stratcat::io::braid_from_text_or_array(word, static_cast<int>(widths.size())),
                widths);
            result = json{{"n", cabled.n}, {"word", stratcat::io::braid_word_text(cabled)}};
        });
    }
    {
        static std::string word, widths_text;
        static int n = -1;
        CLI::App* mem = braid->add_subcommand(
            "member", "Decide membership in the parabolic subgroup of consecutive\n"
                      "blocks given by --widths (sum = strand count).\n"
                      "Output: {\"member\":bool}");
        mem->add_option("--n", n, "strand count (default: sum of widths)");
        mem->add_option("--widths", widths_text, "comma-separated block widths")->required();
        mem->add_option("word", word, "braid word")->required();
        mem->callback([&] {
            const std::vector<int> widths = parse_int_list(widths_text, "--widths");
            int total = 0;
            for (int w : widths) total += w;
            if (n >= 1 && n != total)
                throw ValidationError("--n must equal the sum of the --widths entries");
            result = json{{"member",
                           stratcat::parabolic_member(
                               stratcat::io::braid_from_text_or_array(word, total), widths)}};
        });
    }

    // ---- spn -----------------------------------------------------------------
    CLI::App* spn = app.add_subcommand(
        "spn", "Strata of the symmetric product and their exit-path hom sets\n"
               "(morphism payloads: {\"n\":...,\"P\":[...],\"Q\":[...],\"braid\":\"s1 ...\"};\n"
               "partitions are weakly decreasing arrays)");
    spn->require_subcommand(1);
    {
        static std::string p_text, q_text;
        static int n = -1;
        CLI::App* ref = spn->add_subcommand(
            "refines", "Whether Q refines P, i.e. exit paths from the P-stratum to the\n"
                       "Q-stratum exist. Output: {\"refines\":bool}");
        ref->add_option("--n", n, "total (default: partition sum)");
        ref->add_option("--p", p_text, "coarse partition, e.g. 3,2")->required();
        ref->add_option("--q", q_text, "fine partition, e.g. 2,1,1,1")->required();
        ref->callback([&] {
            const AbstractPartition p = stratcat::io::partition_from_string(p_text, "--p");
            const AbstractPartition q = stratcat::io::partition_from_string(q_text, "--q");
            if (p.n() != q.n()) throw ValidationError("--p and --q must partition the same n");
            if (n >= 1 && n != p.n())
                throw ValidationError("--n must equal the partition sum");
            result = json{{"refines", stratcat::refines(p, q)}};
        });
    }
    {
        static std::string p_text, q_text;
        static int n = -1;
        CLI::App* pi0 = spn->add_subcommand(
            "pi0", "Connected components of the space of exit paths P -> Q: the double\n"
                   "cosets IS_P\\S_{P,Q}/S_Q, one pattern per component.\n"
                   "Output: {\"count\":k,\"patterns\":[{\"blocks\":[{\"size\",\"splits\"},...]},...]}");
        pi0->add_option("--n", n, "total (default: partition sum)");
        pi0->add_option("--p", p_text, "coarse partition, e.g. 3,2")->required();
        pi0->add_option("--q", q_text, "fine partition, e.g. 2,1,1,1")->required();
        pi0->callback([&] {
            const AbstractPartition p = stratcat::io::partition_from_string(p_text, "--p");
            const AbstractPartition q = stratcat::io::partition_from_string(q_text, "--q");
            if (p.n() != q.n()) throw ValidationError("--p and --q must partition the same n");
            if (n >= 1 && n != p.n())
                throw ValidationError("--n must equal the partition sum");
            const std::vector<stratcat::RefinementPattern> cosets = stratcat::double_cosets(p, q);
            json patterns = json::array();
            for (const auto& pat : cosets)
                patterns.push_back(stratcat::io::pattern_to_json(p, pat));
            result = json{{"count", cosets.size()}, {"patterns", std::move(patterns)}};
        });
    }
    {
        static std::string payload_a, payload_b;
        CLI::App* homeq = spn->add_subcommand(
            "homeq", "Decide equality of two exit-path morphisms with the same P and Q\n"
                     "(equality modulo the internal braid group IB_P).\n"
                     "Output: {\"equal\":bool}");
        homeq->add_option("first", payload_a, "morphism JSON (inline or file path)")->required();
        homeq->add_option("second", payload_b, "morphism JSON (inline or file path)")->required();
        homeq->callback([&] {
            result = json{
                {"equal", stratcat::hom_equal(
                              stratcat::io::hom_from_json(parse_payload(payload_a, "morphism")),
                              stratcat::io::hom_from_json(parse_payload(payload_b, "morphism")))}};
        });
    }
    {
        static std::string payload_a, payload_b;
        CLI::App* comp = spn->add_subcommand(
            "compose", "Compose exit-path morphisms P -> Q and Q -> R (diagrammatic\n"
                       "order: first argument first). Output: the composite morphism");
        comp->add_option("first", payload_a, "morphism JSON (inline or file path)")->required();
        comp->add_option("second", payload_b, "morphism JSON (inline or file path)")->required();
        comp->callback([&] {
            result = stratcat::io::hom_to_json(stratcat::compose(
                stratcat::io::hom_from_json(parse_payload(payload_a, "morphism")),
                stratcat::io::hom_from_json(parse_payload(payload_b, "morphism"))));
        });
    }
    {
        static std::string p_text, payload;
        static int n = -1;
        CLI::App* cover = spn->add_subcommand(
            "cover", "Branched-cover functor. With --p: the fiber over the P-stratum,\n"
                     "the cosets IS_P\\S_n as sorted canonical representatives\n"
                     "({\"count\":k,\"representatives\":[[images],...]}). With a morphism\n"
                     "payload: the induced map on fibers, contravariant\n"
                     "({\"src_count\",\"dst_count\",\"map\":[src fiber index per dst index]})");
        cover->add_option("--n", n, "total number of points");
        cover->add_option("--p", p_text, "stratum partition, e.g. 2,1,1");
        cover->add_option("morphism", payload, "morphism JSON (inline or file path)");
        cover->callback([&] {
            if (p_text.empty() == payload.empty())
                throw ValidationError("pass exactly one of --p or a morphism payload");
            if (!p_text.empty()) {
                const AbstractPartition p = stratcat::io::partition_from_string(p_text, "--p");
                if (n >= 1 && n != p.n())
                    throw ValidationError("--n must equal the partition sum");
                const stratcat::BranchedCover cov = stratcat::branched_cover(p.n());
                json reps = json::array();
                for (const auto& rep : cov.fiber(p)) reps.push_back(rep.images());
                result = json{{"count", reps.size()}, {"representatives", std::move(reps)}};
            } else {
                const stratcat::HomMorphism m =
                    stratcat::io::hom_from_json(parse_payload(payload, "morphism"));
                if (n >= 1 && n != m.src.n())
                    throw ValidationError("--n must equal the morphism's n");
                const stratcat::BranchedCover cov = stratcat::branched_cover(m.src.n());
                result = json{{"src_count", cov.fiber(m.src).size()},
                              {"dst_count", cov.fiber(m.dst).size()},
                              {"map", cov.morphism_map(m)}};
            }
        });
    }

    // ---- rpn -----------------------------------------------------------------
    CLI::App* rpn = app.add_subcommand(
        "rpn", "Sign skeleton of real projective n-space stratified by the standard flag");
    rpn->require_subcommand(1);
    {
        static int n = -1;
        CLI::App* sk = rpn->add_subcommand(
            "skeleton", "The sign skeleton as a presented category: objects x0..xn, two\n"
                        "arrows a_i, b_i per consecutive pair, multiplicative relations.\n"
                        "Output: presented-category JSON");
        sk->add_option("--n", n, "dimension (>= 1)")->required();
        sk->callback([&] {
            result = stratcat::io::category_to_json(stratcat::rp_skeleton(n));
        });
    }
    {
        static int n = -1, bound = 1000;
        CLI::App* pi1 = rpn->add_subcommand(
            "pi1", "Order of the localized vertex group of the sign skeleton by coset\n"
                   "enumeration. Output: {\"order\":k}; exits 3 with\n"
                   "{\"completed\":false,\"bound\":B} if the enumeration exceeds the bound");
        pi1->add_option("--n", n, "dimension (>= 1)")->required();
        pi1->add_option("--bound", bound, "maximum live cosets (default 1000)");
        pi1->callback([&] {
            if (bound < 1) throw ValidationError("--bound must be positive");
            const stratcat::CosetResult r = stratcat::coset_enumerate(
                stratcat::localize_vertex_group(stratcat::rp_skeleton(n), 0), bound);
            if (r.completed) {
                result = json{{"order", r.order}};
            } else {
                result = json{{"completed", false}, {"bound", bound}};
                code = 3;
            }
        });
    }

    // ---- cosheaf ---------------------------------------------------------------
    CLI::App* cosheaf = app.add_subcommand(
        "cosheaf", "Cosheaves on finite spaces, display spaces, and functor round trips\n"
                   "(precosheaf payloads: {\"space\":{\"points\",\"opens\"},\n"
                   "\"cosections\":{\"<open index>\":[0..k-1]},\n"
                   "\"extensions\":{\"<u>⊆<v>\":[mapping array]}} with opens indexed by\n"
                   "size then bitmask; '<' is accepted in place of ⊆ on input)");
    cosheaf->require_subcommand(1);
    {
        static std::string payload;
        CLI::App* chk = cosheaf->add_subcommand(
            "check", "Test the gluing condition at every open against every cover.\n"
                     "Output: {\"cosheaf\":true} or {\"cosheaf\":false,\"open\":u,\n"
                     "\"cover\":[open indices]} naming a failing cover");
        chk->add_option("payload", payload, "precosheaf JSON (inline or file path)")->required();
        chk->callback([&] {
            const Precosheaf f =
                stratcat::io::precosheaf_from_json(parse_payload(payload, "precosheaf"));
            const stratcat::CosheafReport r = stratcat::cosheaf_check(f);
            result = r.ok ? json{{"cosheaf", true}}
                          : json{{"cosheaf", false}, {"open", r.open_index}, {"cover", r.cover}};
        });
    }
    {
        static std::string payload;
        CLI::App* disp = cosheaf->add_subcommand(
            "display", "Display space of a precosheaf: one point per costalk germ, over\n"
                       "the base. Output: {\"space\":{\"total\",\"base\",\"projection\"},\n"
                       "\"germs\":[[base point, costalk value],...]}");
        disp->add_option("payload", payload, "precosheaf JSON (inline or file path)")->required();
        disp->callback([&] {
            const Precosheaf f =
                stratcat::io::precosheaf_from_json(parse_payload(payload, "precosheaf"));
            result = stratcat::io::display_to_json(stratcat::display_space(f));
        });
    }
    {
        static std::string payload;
        CLI::App* cls = cosheaf->add_subcommand(
            "classify", "Classify a space over a base (payload: {\"total\":finite space,\n"
                        "\"base\":finite space,\"projection\":[...]}) as a spread,\n"
                        "complete, uniquely complete, locally connected; witnesses are\n"
                        "reported for every failing property");
        cls->add_option("payload", payload, "space-over JSON (inline or file path)")->required();
        cls->callback([&] {
            const stratcat::SpaceOverX y =
                stratcat::io::space_over_from_json(parse_payload(payload, "space over a base"));
            result = stratcat::io::spread_report_to_json(stratcat::classify_spread(y));
        });
    }
    {
        static std::string payload;
        CLI::App* fy = cosheaf->add_subcommand(
            "cosheafify", "Universal cosheaf on a precosheaf: the components cosheaf of\n"
                          "its display space, with the canonical map back. Output:\n"
                          "{\"cosheaf\":precosheaf,\"to_original\":{\"<open>\":[...]},\n"
                          "\"counit_iso\":bool (true exactly when the input is a cosheaf)}");
        fy->add_option("payload", payload, "precosheaf JSON (inline or file path)")->required();
        fy->callback([&] {
            const Precosheaf f =
                stratcat::io::precosheaf_from_json(parse_payload(payload, "precosheaf"));
            const stratcat::Cosheafification c = stratcat::cosheafify(f);
            json to_original = json::object();
            for (int u = 0; u < static_cast<int>(c.to_original.size()); ++u)
                to_original[std::to_string(u)] = c.to_original[static_cast<size_t>(u)];
            result = json{{"cosheaf", stratcat::io::precosheaf_to_json(c.cosheaf)},
                          {"to_original", std::move(to_original)},
                          {"counit_iso", stratcat::counit_is_iso(f, c)}};
        });
    }
    {
        static std::string payload;
        CLI::App* rt = cosheaf->add_subcommand(
            "roundtrip", "Round-trip a poset functor (payload: {\"poset\",\"variance\",\n"
                         "\"sets\":{element:cardinality},\"maps\":{\"x<y\":[array]}}) through\n"
                         "its etale space (covariant) or display space (contravariant) and\n"
                         "read it back. Output: {\"ok\",\"structure_ok\",\"recovered\"} plus\n"
                         "\"space\" and \"readback\" when the structure checks pass");
        rt->add_option("payload", payload, "poset functor JSON (inline or file path)")
            ->required();
        rt->callback([&] {
            const stratcat::PosetFunctor g =
                stratcat::io::functor_from_json(parse_payload(payload, "poset functor"));
            const stratcat::RoundtripReport r = stratcat::functor_roundtrip(g);
            result = json{{"ok", r.ok}, {"structure_ok", r.structure_ok},
                          {"recovered", r.recovered}};
            if (r.structure_ok) {
                result["space"] = stratcat::io::space_over_to_json(r.space);
                result["readback"] = stratcat::io::functor_to_json(r.readback);
            }
        });
    }

    // ---- oracle ----------------------------------------------------------------
    {
        static std::string suite;
        static std::uint64_t seed = 7;
        static int pairs = 2000, len_max = 30, samples = 300, trials = 25;
        static int n_max = -1, points_max = 5;
        CLI::App* oracle = app.add_subcommand(
            "oracle", "Run an independent cross-check suite: braid (normal form vs the\n"
                      "free-group action; parabolic membership vs delete/recable), spn\n"
                      "(double cosets vs orbit enumeration over S_n), poset (exit-path\n"
                      "categories vs the order; localized homology vs the nerve), cosheaf\n"
                      "(gluing vs the all-covers oracle; functor round trips), or all.\n"
                      "Exit 1 on any disagreement");
        oracle->add_option("suite", suite, "braid | spn | poset | cosheaf | all")->required();
        oracle->add_option("--seed", seed, "PRNG seed (default 7)");
        oracle->add_option("--pairs", pairs, "braid: word pairs per strand count (default 2000)");
        oracle->add_option("--len-max", len_max, "braid: maximum word length (default 30)");
        oracle->add_option("--samples", samples,
                           "braid: parabolic membership samples per n (default 300)");
        oracle->add_option("--n-max", n_max,
                           "braid/spn/poset: largest n (defaults 6 / 5 / 5)");
        oracle->add_option("--points-max", points_max,
                           "cosheaf: largest base size (default 5)");
        oracle->add_option("--trials", trials, "cosheaf: sampled instances (default 25)");
        oracle->callback([&] {
            auto pick = [](int flag, int fallback) { return flag >= 0 ? flag : fallback; };
            if (suite == "braid") {
                result = run_oracle_braid(seed, pairs, pick(n_max, 6), len_max, samples);
            } else if (suite == "spn") {
                result = run_oracle_spn(pick(n_max, 5));
            } else if (suite == "poset") {
                result = run_oracle_poset(pick(n_max, 5));
            } else if (suite == "cosheaf") {
                result = run_oracle_cosheaf(seed, points_max, trials);
            } else if (suite == "all") {
                json suites = json::array();
                suites.push_back(run_oracle_braid(seed, pairs, pick(n_max, 6), len_max,
                                                  samples));
                suites.push_back(run_oracle_spn(pick(n_max, 5)));
                suites.push_back(run_oracle_poset(pick(n_max, 5)));
                suites.push_back(run_oracle_cosheaf(seed, points_max, trials));
                bool ok = true;
                for (const auto& s : suites) ok = ok && s.at("ok").get<bool>();
                result = json{{"suites", std::move(suites)}, {"ok", ok}};
            } else {
                throw ValidationError("unknown suite \"" + suite +
                                      "\" (expected braid, spn, poset, cosheaf, or all)");
            }
            if (!result.at("ok").get<bool>()) code = 1;
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << " (see --help)\n";
        return 2;
    } catch (const stratcat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::cout << result.dump() << "\n";
    return code;
}
