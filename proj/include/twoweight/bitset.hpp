#pragma once

// Flat bitset with word access, sized at runtime. The incidence and adjacency
// kernels live on AND+popcount loops over the raw words.

#include <algorithm>
#include <cstdint>
#include <cstddef>
#include <vector>

#if defined(_MSC_VER)
#include <intrin.h>
#endif

namespace twoweight {

class Bitset {
public:
    Bitset() = default;
    explicit Bitset(size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    size_t size() const { return bits_; }

    void set(size_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
    void reset(size_t i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void clear_all() { std::fill(words_.begin(), words_.end(), 0); }

    size_t count() const {
        size_t c = 0;
        for (uint64_t w : words_) c += popcount(w);
        return c;
    }

    bool intersects(const Bitset& other) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    bool is_subset_of(const Bitset& other) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    size_t intersection_count(const Bitset& other) const {
        size_t c = 0;
        for (size_t i = 0; i < words_.size(); ++i) c += popcount(words_[i] & other.words_[i]);
        return c;
    }

    const uint64_t* words() const { return words_.data(); }
    size_t word_count() const { return words_.size(); }

    static size_t popcount(uint64_t w) {
#if defined(_MSC_VER)
        return static_cast<size_t>(__popcnt64(w));
#else
        return static_cast<size_t>(__builtin_popcountll(w));
#endif
    }

private:
    size_t bits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace twoweight
