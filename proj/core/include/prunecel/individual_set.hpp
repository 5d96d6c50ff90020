#ifndef PRUNECEL_INDIVIDUAL_SET_HPP
#define PRUNECEL_INDIVIDUAL_SET_HPP

#include <bit>
#include <cassert>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace prunecel {

using IndividualId = std::uint32_t;

// A subset of the interpretation domain, as a fixed-universe bitset.
// Complement is always relative to the universe it was created with.
class IndividualSet {
  public:
    IndividualSet() = default;
    explicit IndividualSet(std::size_t universe_size)
        : universe_(universe_size), words_((universe_size + 63) / 64, 0) {}

    static IndividualSet full(std::size_t universe_size) {
        IndividualSet s(universe_size);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    std::size_t universe_size() const { return universe_; }

    void add(IndividualId id) {
        assert(id < universe_);
        words_[id >> 6] |= std::uint64_t{1} << (id & 63);
    }
    void remove(IndividualId id) {
        assert(id < universe_);
        words_[id >> 6] &= ~(std::uint64_t{1} << (id & 63));
    }
    bool contains(IndividualId id) const {
        if (id >= universe_) return false;
        return (words_[id >> 6] >> (id & 63)) & 1;
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += std::popcount(w);
        return n;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    bool intersects(const IndividualSet& other) const {
        assert(universe_ == other.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }
    std::size_t count_intersection(const IndividualSet& other) const {
        assert(universe_ == other.universe_);
        std::size_t n = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            n += std::popcount(words_[i] & other.words_[i]);
        return n;
    }
    bool is_subset_of(const IndividualSet& other) const {
        assert(universe_ == other.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    IndividualSet& operator|=(const IndividualSet& other) {
        assert(universe_ == other.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }
    IndividualSet& operator&=(const IndividualSet& other) {
        assert(universe_ == other.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
        return *this;
    }
    IndividualSet& operator-=(const IndividualSet& other) {
        assert(universe_ == other.universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
        return *this;
    }

    friend IndividualSet operator|(IndividualSet a, const IndividualSet& b) { return a |= b; }
    friend IndividualSet operator&(IndividualSet a, const IndividualSet& b) { return a &= b; }
    friend IndividualSet operator-(IndividualSet a, const IndividualSet& b) { return a -= b; }

    IndividualSet complement() const {
        IndividualSet s(universe_);
        for (std::size_t i = 0; i < words_.size(); ++i) s.words_[i] = ~words_[i];
        s.trim();
        return s;
    }

    bool operator==(const IndividualSet& other) const = default;

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                unsigned bit = std::countr_zero(w);
                fn(static_cast<IndividualId>(i * 64 + bit));
                w &= w - 1;
            }
        }
    }

    std::vector<IndividualId> to_vector() const {
        std::vector<IndividualId> out;
        out.reserve(count());
        for_each([&](IndividualId id) { out.push_back(id); });
        return out;
    }

    // Raw storage, usable as a hashable identity for "same covered set" checks.
    const std::vector<std::uint64_t>& words() const { return words_; }

  private:
    void trim() {
        unsigned tail = universe_ & 63;
        if (tail != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << tail) - 1;
    }

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace prunecel

#endif
