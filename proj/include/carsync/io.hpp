#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "carsync/pfa.hpp"

namespace carsync {

/// An automaton together with optional display names for its states.
/// The core model works on dense indices only; names exist for files,
/// reports and DOT output.
struct NamedPfa {
    Pfa pfa;
    std::vector<std::string> state_names;  // empty, or exactly one per state

    std::string state_label(StateIndex q) const;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {}

    std::size_t line;
};

/// Line-oriented text format:
///
///   pfa v1
///   states <n>
///   names <n1> <n2> ...        # optional
///   alphabet <l1> <l2> ...
///   <src> <letter> <dst>       # one line per defined transition
///
/// States and letters may be referred to by name or by index; '#' starts
/// a comment; pairs without a line are undefined. Duplicate (src, letter)
/// lines are an error.
NamedPfa parse_pfa_document(std::string_view text);
std::string serialize_pfa_document(const NamedPfa& doc);

/// Graphviz export with letters as edge labels (merged per state pair)
/// and undefined pairs simply absent. When a letter is given and total,
/// its cycle states are drawn with a distinct shape.
std::string to_dot(const NamedPfa& doc, std::optional<LetterIndex> cycle_letter = std::nullopt);

/// Words cross the CLI boundary as space-separated letter names; compact
/// form concatenates them and is only allowed while every letter name is
/// a single character.
std::string word_text(const Pfa& pfa, const Word& w, bool compact = false);
Word parse_word(const Pfa& pfa, const std::vector<std::string>& tokens, bool compact = false);

std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_hex(std::string_view bytes);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace carsync
