#include "carsync/pfa.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace carsync {

StateSet StateSet::full(std::size_t capacity) {
    StateSet s(capacity);
    for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~0ull;
    if (capacity % 64 != 0 && !s.words_.empty())
        s.words_.back() &= (1ull << (capacity % 64)) - 1;
    return s;
}

std::size_t StateSet::size() const {
    std::size_t total = 0;
    for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

bool StateSet::empty() const {
    for (std::uint64_t w : words_)
        if (w != 0) return false;
    return true;
}

void StateSet::insert(StateIndex q) {
    if (q < 0 || static_cast<std::size_t>(q) >= capacity_)
        throw std::out_of_range("StateSet::insert: state " + std::to_string(q) +
                                " outside capacity " + std::to_string(capacity_));
    words_[static_cast<std::size_t>(q) >> 6] |= 1ull << (static_cast<std::size_t>(q) & 63);
}

void StateSet::remove(StateIndex q) {
    if (q < 0 || static_cast<std::size_t>(q) >= capacity_)
        throw std::out_of_range("StateSet::remove: state out of range");
    words_[static_cast<std::size_t>(q) >> 6] &= ~(1ull << (static_cast<std::size_t>(q) & 63));
}

void StateSet::clear() {
    std::fill(words_.begin(), words_.end(), 0);
}

bool StateSet::is_subset_of(const StateSet& other) const {
    if (capacity_ != other.capacity_)
        throw std::invalid_argument("StateSet::is_subset_of: capacity mismatch");
    for (std::size_t w = 0; w < words_.size(); ++w)
        if ((words_[w] & ~other.words_[w]) != 0) return false;
    return true;
}

StateIndex StateSet::front() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] != 0)
            return static_cast<StateIndex>(w * 64 +
                   static_cast<std::size_t>(std::countr_zero(words_[w])));
    throw std::logic_error("StateSet::front: empty set");
}

std::optional<StateIndex> StateSet::only_member() const {
    if (size() != 1) return std::nullopt;
    return front();
}

std::vector<StateIndex> StateSet::to_vector() const {
    std::vector<StateIndex> out;
    out.reserve(size());
    for_each([&](StateIndex q) { out.push_back(q); });
    return out;
}

std::size_t StateSet::hash() const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ capacity_;
    for (std::uint64_t w : words_) {
        h ^= w;
        h *= 0xff51afd7ed558ccdull;
        h ^= h >> 33;
    }
    return static_cast<std::size_t>(h);
}

std::string StateSet::to_string() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for_each([&](StateIndex q) {
        if (!first) os << ',';
        os << q;
        first = false;
    });
    os << '}';
    return os.str();
}

StateSet singleton_set(std::size_t capacity, StateIndex q) {
    StateSet s(capacity);
    s.insert(q);
    return s;
}

Pfa::Pfa(std::size_t state_count, std::vector<std::string> alphabet)
    : n_(state_count), alphabet_(std::move(alphabet)) {
    if (n_ < 1) throw std::invalid_argument("Pfa: state count must be at least 1");
    if (alphabet_.empty()) throw std::invalid_argument("Pfa: alphabet must be non-empty");
    for (std::size_t i = 0; i < alphabet_.size(); ++i) {
        if (alphabet_[i].empty())
            throw std::invalid_argument("Pfa: letter names must be non-empty");
        for (std::size_t j = i + 1; j < alphabet_.size(); ++j)
            if (alphabet_[i] == alphabet_[j])
                throw std::invalid_argument("Pfa: duplicate letter name '" + alphabet_[i] + "'");
    }
    table_.assign(n_ * alphabet_.size(), kUndefined);
}

const std::string& Pfa::letter_name(LetterIndex a) const {
    check_letter(a);
    return alphabet_[static_cast<std::size_t>(a)];
}

std::optional<LetterIndex> Pfa::letter_index(std::string_view name) const {
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
        if (alphabet_[i] == name) return static_cast<LetterIndex>(i);
    return std::nullopt;
}

void Pfa::set_transition(StateIndex q, LetterIndex a, StateIndex target) {
    check_state(q);
    check_letter(a);
    check_state(target);
    StateIndex& cell = table_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(q)];
    if (cell != kUndefined)
        throw std::logic_error("Pfa::set_transition: (" + std::to_string(q) + ", " +
                               alphabet_[static_cast<std::size_t>(a)] + ") already defined");
    cell = target;
}

std::size_t Pfa::defined_transition_count() const {
    std::size_t count = 0;
    for (StateIndex t : table_)
        if (t != kUndefined) ++count;
    return count;
}

void Pfa::check_state(StateIndex q) const {
    if (q < 0 || static_cast<std::size_t>(q) >= n_)
        throw std::out_of_range("Pfa: state index " + std::to_string(q) + " out of range");
}

void Pfa::check_letter(LetterIndex a) const {
    if (a < 0 || static_cast<std::size_t>(a) >= alphabet_.size())
        throw std::out_of_range("Pfa: letter index " + std::to_string(a) + " out of range");
}

namespace {

void check_application(const Pfa& pfa, const StateSet& s, LetterIndex a) {
    if (a < 0 || static_cast<std::size_t>(a) >= pfa.alphabet_size())
        throw std::out_of_range("apply: letter index out of range");
    if (s.capacity() != pfa.state_count())
        throw std::invalid_argument("apply: set capacity does not match state count");
}

}  // namespace

bool apply_letter_into(const Pfa& pfa, const StateSet& s, LetterIndex a, StateSet& out) {
    out = StateSet(pfa.state_count());
    bool blocked = false;
    s.for_each([&](StateIndex q) {
        if (blocked) return;
        const StateIndex t = pfa.target(q, a);
        if (t == Pfa::kUndefined) {
            blocked = true;
            return;
        }
        out.insert(t);
    });
    return !blocked;
}

std::optional<StateSet> apply_letter(const Pfa& pfa, const StateSet& s, LetterIndex a) {
    check_application(pfa, s, a);
    StateSet out;
    if (!apply_letter_into(pfa, s, a, out)) return std::nullopt;
    return out;
}

std::optional<StateSet> apply_word(const Pfa& pfa, const StateSet& s, const Word& w) {
    for (LetterIndex a : w)
        if (a < 0 || static_cast<std::size_t>(a) >= pfa.alphabet_size())
            throw std::out_of_range("apply_word: letter index out of range");
    if (s.capacity() != pfa.state_count())
        throw std::invalid_argument("apply_word: set capacity does not match state count");
    StateSet current = s;
    StateSet next;
    for (LetterIndex a : w) {
        if (!apply_letter_into(pfa, current, a, next)) return std::nullopt;
        std::swap(current, next);
    }
    return current;
}

StateSet preimage(const Pfa& pfa, const StateSet& s, LetterIndex a) {
    check_application(pfa, s, a);
    StateSet out(pfa.state_count());
    for (StateIndex q = 0; q < static_cast<StateIndex>(pfa.state_count()); ++q) {
        const StateIndex t = pfa.target(q, a);
        if (t != Pfa::kUndefined && s.contains(t)) out.insert(q);
    }
    return out;
}

bool is_total(const Pfa& pfa, LetterIndex a) {
    if (a < 0 || static_cast<std::size_t>(a) >= pfa.alphabet_size())
        throw std::out_of_range("is_total: letter index out of range");
    for (StateIndex q = 0; q < static_cast<StateIndex>(pfa.state_count()); ++q)
        if (!pfa.defined(q, a)) return false;
    return true;
}

}  // namespace carsync
