#include "carsync/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "carsync/cluster.hpp"

namespace carsync {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream in{std::string(line)};
    std::vector<std::string> tokens;
    std::string t;
    while (in >> t) tokens.push_back(t);
    return tokens;
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(),
                                     [](unsigned char c) { return std::isdigit(c); });
}

// Numeric token, rejecting anything too long to be a sane index.
std::optional<std::size_t> parse_number(const std::string& token) {
    if (!all_digits(token) || token.size() > 12) return std::nullopt;
    return std::stoull(token);
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

std::string NamedPfa::state_label(StateIndex q) const {
    if (state_names.empty()) return std::to_string(q);
    return state_names[static_cast<std::size_t>(q)];
}

NamedPfa parse_pfa_document(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;

    // Pull the next non-empty token line.
    const auto next_line = [&](std::vector<std::string>& tokens) {
        while (std::getline(in, raw)) {
            ++line_no;
            tokens = tokenize(raw);
            if (!tokens.empty()) return true;
        }
        return false;
    };

    std::vector<std::string> tokens;
    if (!next_line(tokens) || tokens.size() != 2 || tokens[0] != "pfa" || tokens[1] != "v1")
        throw ParseError(line_no == 0 ? 1 : line_no, "expected header 'pfa v1'");

    if (!next_line(tokens) || tokens.size() != 2 || !parse_number(tokens[1]) ||
        tokens[0] != "states")
        throw ParseError(line_no, "expected 'states <n>'");
    const std::size_t n = *parse_number(tokens[1]);
    if (n < 1) throw ParseError(line_no, "state count must be at least 1");

    if (!next_line(tokens)) throw ParseError(line_no, "expected 'alphabet ...'");

    std::vector<std::string> names;
    if (tokens[0] == "names") {
        if (tokens.size() != n + 1)
            throw ParseError(line_no, "'names' must list exactly " + std::to_string(n) +
                                          " names");
        names.assign(tokens.begin() + 1, tokens.end());
        for (std::size_t i = 0; i < names.size(); ++i)
            for (std::size_t j = i + 1; j < names.size(); ++j)
                if (names[i] == names[j])
                    throw ParseError(line_no, "duplicate state name '" + names[i] + "'");
        if (!next_line(tokens)) throw ParseError(line_no, "expected 'alphabet ...'");
    }

    if (tokens[0] != "alphabet" || tokens.size() < 2)
        throw ParseError(line_no, "expected 'alphabet <letter> ...'");
    std::vector<std::string> alphabet(tokens.begin() + 1, tokens.end());

    NamedPfa doc{Pfa(n, std::move(alphabet)), std::move(names)};

    const auto resolve_state = [&](const std::string& token) -> StateIndex {
        if (!doc.state_names.empty()) {
            const auto it = std::find(doc.state_names.begin(), doc.state_names.end(), token);
            if (it != doc.state_names.end())
                return static_cast<StateIndex>(it - doc.state_names.begin());
        }
        if (const auto idx = parse_number(token); idx && *idx < n)
            return static_cast<StateIndex>(*idx);
        throw ParseError(line_no, "unknown state '" + token + "'");
    };
    const auto resolve_letter = [&](const std::string& token) -> LetterIndex {
        if (auto idx = doc.pfa.letter_index(token)) return *idx;
        if (const auto idx = parse_number(token); idx && *idx < doc.pfa.alphabet_size())
            return static_cast<LetterIndex>(*idx);
        throw ParseError(line_no, "unknown letter '" + token + "'");
    };

    while (next_line(tokens)) {
        if (tokens.size() != 3)
            throw ParseError(line_no, "expected '<src> <letter> <dst>'");
        const StateIndex src = resolve_state(tokens[0]);
        const LetterIndex letter = resolve_letter(tokens[1]);
        const StateIndex dst = resolve_state(tokens[2]);
        if (doc.pfa.defined(src, letter))
            throw ParseError(line_no, "duplicate transition for (" + tokens[0] + ", " +
                                          tokens[1] + ")");
        doc.pfa.set_transition(src, letter, dst);
    }
    return doc;
}

std::string serialize_pfa_document(const NamedPfa& doc) {
    std::ostringstream out;
    out << "pfa v1\n";
    out << "states " << doc.pfa.state_count() << "\n";
    if (!doc.state_names.empty()) {
        out << "names";
        for (const std::string& name : doc.state_names) out << ' ' << name;
        out << "\n";
    }
    out << "alphabet";
    for (const std::string& letter : doc.pfa.alphabet()) out << ' ' << letter;
    out << "\n";
    for (StateIndex q = 0; q < static_cast<StateIndex>(doc.pfa.state_count()); ++q)
        for (LetterIndex a = 0; a < static_cast<LetterIndex>(doc.pfa.alphabet_size()); ++a) {
            const StateIndex t = doc.pfa.target(q, a);
            if (t == Pfa::kUndefined) continue;
            out << doc.state_label(q) << ' ' << doc.pfa.letter_name(a) << ' '
                << doc.state_label(t) << "\n";
        }
    return out.str();
}

std::string to_dot(const NamedPfa& doc, std::optional<LetterIndex> cycle_letter) {
    std::ostringstream out;
    out << "digraph pfa {\n  rankdir=LR;\n  node [shape=circle];\n";

    std::vector<bool> on_cycle(doc.pfa.state_count(), false);
    if (cycle_letter && is_total(doc.pfa, *cycle_letter)) {
        const ClusterDecomposition d = decompose(doc.pfa, *cycle_letter);
        for (const Cluster& cluster : d.clusters)
            for (StateIndex q : cluster.cycle) on_cycle[static_cast<std::size_t>(q)] = true;
    }
    for (StateIndex q = 0; q < static_cast<StateIndex>(doc.pfa.state_count()); ++q) {
        out << "  " << quote(doc.state_label(q));
        if (on_cycle[static_cast<std::size_t>(q)]) out << " [shape=doublecircle]";
        out << ";\n";
    }

    std::map<std::pair<StateIndex, StateIndex>, std::string> edges;
    for (StateIndex q = 0; q < static_cast<StateIndex>(doc.pfa.state_count()); ++q)
        for (LetterIndex a = 0; a < static_cast<LetterIndex>(doc.pfa.alphabet_size()); ++a) {
            const StateIndex t = doc.pfa.target(q, a);
            if (t == Pfa::kUndefined) continue;
            std::string& label = edges[{q, t}];
            if (!label.empty()) label += ',';
            label += doc.pfa.letter_name(a);
        }
    for (const auto& [edge, label] : edges)
        out << "  " << quote(doc.state_label(edge.first)) << " -> "
            << quote(doc.state_label(edge.second)) << " [label=" << quote(label) << "];\n";
    out << "}\n";
    return out.str();
}

std::string word_text(const Pfa& pfa, const Word& w, bool compact) {
    if (compact)
        for (const std::string& name : pfa.alphabet())
            if (name.size() != 1)
                throw std::invalid_argument(
                    "compact words need single-character letter names; '" + name +
                    "' is longer");
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!compact && i > 0) out += ' ';
        out += pfa.letter_name(w[i]);
    }
    return out;
}

Word parse_word(const Pfa& pfa, const std::vector<std::string>& tokens, bool compact) {
    Word w;
    const auto resolve = [&](const std::string& token) {
        if (auto idx = pfa.letter_index(token)) return *idx;
        if (const auto idx = parse_number(token); idx && *idx < pfa.alphabet_size())
            return static_cast<LetterIndex>(*idx);
        throw std::invalid_argument("unknown letter '" + token + "'");
    };
    for (const std::string& token : tokens) {
        if (compact) {
            for (char c : token) w.push_back(resolve(std::string(1, c)));
        } else {
            w.push_back(resolve(token));
        }
    }
    return w;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string digest_hex(std::string_view bytes) {
    static const char* hex = "0123456789abcdef";
    const std::uint64_t h = fnv1a64(bytes);
    std::string out = "fnv1a64:";
    for (int shift = 60; shift >= 0; shift -= 4) out += hex[(h >> shift) & 0xf];
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

}  // namespace carsync
