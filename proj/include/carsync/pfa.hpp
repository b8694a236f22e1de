#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace carsync {

using StateIndex = std::int32_t;
using LetterIndex = std::int32_t;

/// A finite sequence of letter indices. The empty word is legal everywhere.
using Word = std::vector<LetterIndex>;

/// A subset of the states [0, capacity) with bit-vector semantics.
///
/// Equality is extensional: two sets with the same capacity are equal
/// exactly when they contain the same members. Bits above the capacity
/// are kept zero so that word-wise comparison and hashing are valid.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(std::size_t capacity)
        : capacity_(capacity), words_((capacity + 63) / 64, 0) {}

    static StateSet full(std::size_t capacity);

    std::size_t capacity() const { return capacity_; }
    std::size_t size() const;
    bool empty() const;

    bool contains(StateIndex q) const {
        return (words_[static_cast<std::size_t>(q) >> 6] >>
                (static_cast<std::size_t>(q) & 63)) & 1u;
    }

    void insert(StateIndex q);
    void remove(StateIndex q);
    void clear();

    bool is_subset_of(const StateSet& other) const;

    /// Smallest member. Precondition: non-empty.
    StateIndex front() const;

    /// The unique member of a singleton set, or nullopt.
    std::optional<StateIndex> only_member() const;

    std::vector<StateIndex> to_vector() const;

    /// Visit members in ascending order.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const int b = std::countr_zero(bits);
                fn(static_cast<StateIndex>(w * 64 + static_cast<std::size_t>(b)));
                bits &= bits - 1;
            }
        }
    }

    bool operator==(const StateSet&) const = default;

    std::size_t hash() const;
    std::string to_string() const;

private:
    std::size_t capacity_ = 0;
    std::vector<std::uint64_t> words_;
};

struct StateSetHash {
    std::size_t operator()(const StateSet& s) const { return s.hash(); }
};

StateSet singleton_set(std::size_t capacity, StateIndex q);

/// A partial deterministic automaton: a fixed number of states addressed
/// by dense indices 0..n-1, an ordered alphabet of named letters, and a
/// transition table in which (state, letter) pairs may be left undefined.
///
/// The alphabet order is fixed at construction; it defines the
/// lexicographic word order used for deterministic search tie-breaking.
/// Instances are immutable once fully constructed (single-writer setup
/// via set_transition, shared reads afterwards).
class Pfa {
public:
    static constexpr StateIndex kUndefined = -1;

    Pfa(std::size_t state_count, std::vector<std::string> alphabet);

    std::size_t state_count() const { return n_; }
    std::size_t alphabet_size() const { return alphabet_.size(); }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::string& letter_name(LetterIndex a) const;
    std::optional<LetterIndex> letter_index(std::string_view name) const;

    /// Define delta(q, a) = target. Each pair may be defined only once.
    void set_transition(StateIndex q, LetterIndex a, StateIndex target);

    /// Target state, or kUndefined.
    StateIndex target(StateIndex q, LetterIndex a) const {
        return table_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(q)];
    }

    bool defined(StateIndex q, LetterIndex a) const {
        return target(q, a) != kUndefined;
    }

    std::size_t defined_transition_count() const;

private:
    void check_state(StateIndex q) const;
    void check_letter(LetterIndex a) const;

    std::size_t n_;
    std::vector<std::string> alphabet_;
    std::vector<StateIndex> table_;  // letter-major: table_[a * n_ + q]
};

/// Image of `s` under one letter, or nullopt if the letter is undefined
/// on at least one member. A blocked move is normal control flow, not an
/// error. The empty set maps to the empty set under any letter.
std::optional<StateSet> apply_letter(const Pfa& pfa, const StateSet& s, LetterIndex a);

/// Allocation-free variant: writes the image into `out` and returns false
/// as soon as a member has no transition.
bool apply_letter_into(const Pfa& pfa, const StateSet& s, LetterIndex a, StateSet& out);

/// Left-to-right fold of apply_letter; nullopt as soon as any step is
/// undefined. apply_word(s, epsilon) = s.
std::optional<StateSet> apply_word(const Pfa& pfa, const StateSet& s, const Word& w);

/// {q : delta(q, a) defined and in s}. Total, never blocked.
StateSet preimage(const Pfa& pfa, const StateSet& s, LetterIndex a);

/// True iff delta(q, a) is defined for every state q.
bool is_total(const Pfa& pfa, LetterIndex a);

}  // namespace carsync
