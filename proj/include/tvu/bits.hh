// bits.hh -- small dynamic bitset used for NFA state sets and index sets

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tvu {

class Bits {
  public:
    Bits() = default;
    explicit Bits(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    size_t size() const { return n_; }
    bool test(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i) { w_[i >> 6] |= uint64_t{1} << (i & 63); }
    void reset(size_t i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    void clear() { for (auto& w : w_) w = 0; }

    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }
    size_t count() const {
        size_t c = 0;
        for (auto w : w_) c += static_cast<size_t>(__builtin_popcountll(w));
        return c;
    }

    Bits& operator|=(const Bits& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    Bits& operator&=(const Bits& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    bool intersects(const Bits& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }
    bool is_subset_of(const Bits& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    bool operator==(const Bits& o) const = default;

    /// Visit every set index in increasing order.
    template <typename F>
    void for_each(F&& f) const {
        for (size_t wi = 0; wi < w_.size(); ++wi) {
            uint64_t w = w_[wi];
            while (w) {
                unsigned b = static_cast<unsigned>(__builtin_ctzll(w));
                f(wi * 64 + b);
                w &= w - 1;
            }
        }
    }

    const std::vector<uint64_t>& words() const { return w_; }

  private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace tvu
