// Command-line surface: analyze, solve, verify, gen-bk, reduce, extract, dot.
// Machine-readable JSON reports go to stdout; diagnostics go to stderr.
// Exit codes: 0 success/found, 1 negative result, 2 error, 3 limit exceeded.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "carsync/bk_family.hpp"
#include "carsync/cluster.hpp"
#include "carsync/io.hpp"
#include "carsync/pfa.hpp"
#include "carsync/sat_reduction.hpp"
#include "carsync/search.hpp"

using json = nlohmann::json;
using namespace carsync;

namespace {

constexpr int kExitFound = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;
constexpr int kExitLimit = 3;

class Stopwatch {
public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json input_block(const std::string& path, const std::string& content) {
    return json{{"path", path}, {"digest", digest_hex(content)}};
}

json word_block(const Pfa& pfa, const Word& w, bool compact) {
    json names = json::array();
    for (LetterIndex a : w) names.push_back(pfa.letter_name(a));
    return json{{"word", names}, {"word_text", word_text(pfa, w, compact)},
                {"length", w.size()}};
}

NamedPfa load_pfa(const std::string& path, std::string& content) {
    content = read_text_file(path);
    return parse_pfa_document(content);
}

LetterIndex resolve_letter_arg(const Pfa& pfa, const std::string& token) {
    if (auto idx = pfa.letter_index(token)) return *idx;
    throw std::invalid_argument("unknown letter '" + token + "'");
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

json letter_analysis(const Pfa& pfa, LetterIndex a) {
    const ClusterDecomposition d = decompose(pfa, a);
    json cycles = json::array();
    for (const Cluster& cluster : d.clusters) cycles.push_back(cluster.cycle.size());
    return json{{"letter", pfa.letter_name(a)},
                {"clusters", d.clusters.size()},
                {"cycle_lengths", cycles},
                {"levels", d.level},
                {"graph_level", d.graph_level},
                {"one_cluster", d.clusters.size() == 1}};
}

json prerequisites_block(const Pfa& pfa) {
    const PrerequisiteReport report = sync_prerequisites(pfa);
    json out{{"passed", report.passed()}, {"violations", report.violations}};
    json totals = json::array();
    for (LetterIndex a : report.total_letters) totals.push_back(pfa.letter_name(a));
    out["total_letters"] = totals;
    if (report.cycle_cover) {
        json cover{{"cluster_letter", pfa.letter_name(report.cycle_cover->cluster_letter)},
                   {"cycle_size", report.cycle_cover->cycle_size}};
        if (report.cycle_cover->cover_letter)
            cover["cover_letter"] = pfa.letter_name(*report.cycle_cover->cover_letter);
        else
            cover["cover_letter"] = nullptr;
        out["cycle_cover"] = cover;
    }
    return out;
}

int run_analyze(const std::string& path, const std::string& letter) {
    Stopwatch timer;
    std::string content;
    const NamedPfa doc = load_pfa(path, content);
    json letters = json::array();
    if (!letter.empty()) {
        const LetterIndex a = resolve_letter_arg(doc.pfa, letter);
        letters.push_back(letter_analysis(doc.pfa, a));  // throws if not total
    } else {
        for (LetterIndex a = 0; a < static_cast<LetterIndex>(doc.pfa.alphabet_size()); ++a)
            if (is_total(doc.pfa, a)) letters.push_back(letter_analysis(doc.pfa, a));
    }
    json report{{"command", "analyze"},
                {"input", input_block(path, content)},
                {"outcome", "ok"},
                {"letters", letters},
                {"prerequisites", prerequisites_block(doc.pfa)}};
    report["timing_ms"] = timer.elapsed_ms();
    emit(report);
    return kExitFound;
}

int run_solve(const std::string& path, std::uint64_t max_visited, std::size_t max_depth,
              bool compact) {
    Stopwatch timer;
    std::string content;
    const NamedPfa doc = load_pfa(path, content);
    SearchLimits limits;
    limits.max_visited = max_visited;
    limits.max_depth = max_depth;
    const SearchOutcome outcome = shortest_sync_word(doc.pfa, limits);

    json report{{"command", "solve"}, {"input", input_block(path, content)}};
    int code = kExitError;
    if (const auto* found = std::get_if<Found>(&outcome)) {
        report["outcome"] = "found";
        report.update(word_block(doc.pfa, found->word, compact));
        report["state"] = doc.state_label(found->state);
        code = kExitFound;
    } else if (std::holds_alternative<NotSynchronizing>(outcome)) {
        report["outcome"] = "not_synchronizing";
        code = kExitNegative;
    } else {
        const auto& limit = std::get<LimitExceeded>(outcome);
        report["outcome"] = "limit_exceeded";
        report["visited"] = limit.visited;
        report["depth"] = limit.depth;
        code = kExitLimit;
    }
    report["timing_ms"] = timer.elapsed_ms();
    emit(report);
    return code;
}

int run_verify(const std::string& path, const std::vector<std::string>& tokens, bool compact) {
    std::string content;
    const NamedPfa doc = load_pfa(path, content);
    const Word w = parse_word(doc.pfa, tokens, compact);
    const VerifyOutcome outcome = verify_word(doc.pfa, w);
    if (const auto* sync = std::get_if<Synchronizing>(&outcome)) {
        std::cout << "Synchronizing: every state maps to '" << doc.state_label(sync->state)
                  << "' (word length " << w.size() << ")\n";
        return kExitFound;
    }
    if (const auto* rest = std::get_if<NotSingleton>(&outcome)) {
        std::cout << "NotSingleton: final set " << rest->final_set.to_string() << " has size "
                  << rest->final_set.size() << "\n";
        return kExitNegative;
    }
    const auto& blocked = std::get<Undefined>(outcome);
    std::cout << "Undefined: position " << blocked.position << ", state '"
              << doc.state_label(blocked.state) << "' has no transition on letter '"
              << doc.pfa.letter_name(blocked.letter) << "'\n";
    return kExitNegative;
}

int run_gen_bk(int k, const std::string& out_path) {
    Stopwatch timer;
    BkInstance instance = generate_bk(k);
    const NamedPfa doc{std::move(instance.pfa), std::move(instance.state_names)};
    write_text_file(out_path, serialize_pfa_document(doc));
    const std::string word_path = out_path + ".word";
    write_text_file(word_path, word_text(doc.pfa, instance.expected_word) + "\n");

    json report{{"command", "gen-bk"},
                {"outcome", "ok"},
                {"k", k},
                {"states", doc.pfa.state_count()},
                {"alphabet_size", doc.pfa.alphabet_size()},
                {"output", out_path},
                {"word_file", word_path}};
    report.update(word_block(doc.pfa, instance.expected_word, false));
    report["timing_ms"] = timer.elapsed_ms();
    emit(report);
    return kExitFound;
}

int run_reduce(const std::string& cnf_path, const std::string& out_path,
               std::string map_path) {
    Stopwatch timer;
    const std::string content = read_text_file(cnf_path);
    const CnfFormula phi = parse_dimacs(content);
    ReductionOutput out = reduce(phi);
    const NamedPfa doc{std::move(out.pfa), std::move(out.state_names)};
    write_text_file(out_path, serialize_pfa_document(doc));

    if (map_path.empty()) map_path = out_path + ".map.json";
    json states = json::object();
    for (StateIndex q = 0; q < static_cast<StateIndex>(doc.pfa.state_count()); ++q)
        states[doc.state_names[static_cast<std::size_t>(q)]] = q;
    json map{{"format", "carsync-map v1"},
             {"variables", out.variable_count},
             {"clauses", out.clause_count},
             {"states", states},
             {"s_init", out.s_init.to_vector()},
             {"s_end", out.s_end.to_vector()}};
    write_text_file(map_path, map.dump(2) + "\n");

    json report{{"command", "reduce"},
                {"input", input_block(cnf_path, content)},
                {"outcome", "ok"},
                {"variables", out.variable_count},
                {"clauses", out.clause_count},
                {"states", doc.pfa.state_count()},
                {"output", out_path},
                {"map_file", map_path}};
    report["timing_ms"] = timer.elapsed_ms();
    emit(report);
    return kExitFound;
}

int run_extract(const std::string& map_path, const std::vector<std::string>& tokens,
                bool compact) {
    const json map = json::parse(read_text_file(map_path));
    if (!map.contains("variables"))
        throw std::invalid_argument("map file lacks a 'variables' field");
    const int n = map["variables"].get<int>();

    // the word must look like a^k b v b with |v| = n
    Pfa shape(1, {"a", "b"});  // alphabet holder for token parsing
    const Word w = parse_word(shape, tokens, compact);
    std::size_t k = 0;
    while (k < w.size() && w[k] == 0) ++k;
    const std::size_t rest = w.size() - k;
    if (rest != static_cast<std::size_t>(n) + 2 || w[k] != 1 || w.back() != 1) {
        std::cerr << "error: word does not have the shape a^k b v b with |v| = " << n
                  << " (prefix of " << k << " a's, then " << rest << " letters)\n";
        return kExitError;
    }
    const Word window(w.begin() + static_cast<std::ptrdiff_t>(k) + 1, w.end() - 1);
    const Assignment e = word_to_assignment(window);

    std::cout << "v";
    for (int j = 0; j < n; ++j)
        std::cout << ' ' << (e[static_cast<std::size_t>(j)] ? j + 1 : -(j + 1));
    std::cout << " 0\n";
    return kExitFound;
}

int run_dot(const std::string& path, const std::string& out_path, const std::string& letter) {
    Stopwatch timer;
    std::string content;
    const NamedPfa doc = load_pfa(path, content);
    std::optional<LetterIndex> cycle_letter;
    if (!letter.empty()) cycle_letter = resolve_letter_arg(doc.pfa, letter);
    write_text_file(out_path, to_dot(doc, cycle_letter));
    json report{{"command", "dot"},
                {"input", input_block(path, content)},
                {"outcome", "ok"},
                {"output", out_path},
                {"timing_ms", timer.elapsed_ms()}};
    emit(report);
    return kExitFound;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"careful synchronization toolkit for partial finite automata"};
    app.require_subcommand(1);

    std::string path, letter, out_path, map_path;
    std::vector<std::string> word_tokens;
    std::uint64_t max_visited = SearchLimits{}.max_visited;
    std::size_t max_depth = SearchLimits{}.max_depth;
    bool compact = false;
    int k = 0;

    auto* analyze = app.add_subcommand("analyze", "cluster structure of a letter");
    analyze->add_option("file", path)->required();
    analyze->add_option("--letter", letter, "letter to decompose (default: all total letters)");

    auto* solve = app.add_subcommand("solve", "shortest carefully synchronizing word");
    solve->add_option("file", path)->required();
    solve->add_option("--max-visited", max_visited, "visited set cap");
    solve->add_option("--max-depth", max_depth, "search depth cap");
    solve->add_flag("--compact", compact, "print the word without separators");

    auto* verify = app.add_subcommand("verify", "check a candidate word");
    verify->add_option("file", path)->required();
    verify->add_option("word", word_tokens, "space-separated letter names")->required();
    verify->add_flag("--compact", compact, "split tokens into single-character letters");

    auto* gen_bk = app.add_subcommand("gen-bk", "generate the exponential-threshold family");
    gen_bk->add_option("k", k)->required();
    gen_bk->add_option("-o,--output", out_path)->required();

    auto* reduce_cmd = app.add_subcommand("reduce", "compile a 3-CNF formula to an automaton");
    reduce_cmd->add_option("cnf", path)->required();
    reduce_cmd->add_option("-o,--output", out_path)->required();
    reduce_cmd->add_option("--map", map_path, "state-map sidecar path");

    auto* extract = app.add_subcommand("extract", "read an assignment out of a solving word");
    extract->add_option("map", path)->required();
    extract->add_option("word", word_tokens)->required();
    extract->add_flag("--compact", compact);

    auto* dot = app.add_subcommand("dot", "export to Graphviz");
    dot->add_option("file", path)->required();
    dot->add_option("-o,--output", out_path)->required();
    dot->add_option("--letter", letter, "highlight this letter's cycle states");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitError;
    }

    try {
        if (analyze->parsed()) return run_analyze(path, letter);
        if (solve->parsed()) return run_solve(path, max_visited, max_depth, compact);
        if (verify->parsed()) return run_verify(path, word_tokens, compact);
        if (gen_bk->parsed()) return run_gen_bk(k, out_path);
        if (reduce_cmd->parsed()) return run_reduce(path, out_path, map_path);
        if (extract->parsed()) return run_extract(path, word_tokens, compact);
        if (dot->parsed()) return run_dot(path, out_path, letter);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
