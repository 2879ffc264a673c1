#pragma once

// Fixed-size bit table with the shift-or primitives used by the coin DPs.

#include <bit>
#include <cstdint>
#include <vector>

namespace lsq {

class BitTable {
public:
    BitTable() = default;
    explicit BitTable(std::uint64_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::uint64_t size() const noexcept { return size_; }

    bool test(std::uint64_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::uint64_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

    std::uint64_t count() const noexcept {
        std::uint64_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
        return c;
    }

    // this |= src << shift, truncated to size(). src must have the same size
    // and must not alias this.
    void or_shifted(const BitTable& src, std::uint64_t shift) noexcept {
        if (shift >= size_) return;
        const std::uint64_t ws = shift >> 6;
        const unsigned bs = static_cast<unsigned>(shift & 63);
        const std::uint64_t nw = words_.size();
        for (std::uint64_t w = nw; w-- > ws;) {
            std::uint64_t v = src.words_[w - ws] << bs;
            if (bs != 0 && w > ws) v |= src.words_[w - ws - 1] >> (64 - bs);
            words_[w] |= v;
        }
        mask_tail();
    }

    // Unbounded coin step: afterwards bit i is set iff i - j*coin was set
    // beforehand for some j >= 0.
    void close_under(std::uint64_t coin) noexcept {
        if (coin == 0 || coin >= size_) return;
        if (coin >= 64) {
            // Ascending word order: every source word lies strictly below
            // the destination word and is already final.
            const std::uint64_t ws = coin >> 6;
            const unsigned bs = static_cast<unsigned>(coin & 63);
            for (std::uint64_t w = ws; w < words_.size(); ++w) {
                std::uint64_t v = words_[w - ws] << bs;
                if (bs != 0 && w > ws) v |= words_[w - ws - 1] >> (64 - bs);
                words_[w] |= v;
            }
            mask_tail();
            return;
        }
        // Doubling: after shifts by coin, 2 coin, 4 coin, ... every multiple
        // below size() has been reached.
        for (std::uint64_t step = coin; step < size_; step *= 2) {
            const BitTable snapshot = *this;
            or_shifted(snapshot, step);
        }
    }

    friend bool operator==(const BitTable&, const BitTable&) = default;

private:
    void mask_tail() noexcept {
        const unsigned tail = static_cast<unsigned>(size_ & 63);
        if (tail != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << tail) - 1;
    }

    std::uint64_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace lsq
