#ifndef RAINBOW_VERTEX_SET_HPP
#define RAINBOW_VERTEX_SET_HPP

#include <bit>
#include <cstdint>
#include <vector>

namespace rainbow {

/// Fixed-capacity bitset over vertex ids.
class VertexSet {
  public:
    VertexSet() = default;
    explicit VertexSet(int capacity) : words_((capacity + 63) / 64, 0) {}

    void insert(int v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void erase(int v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    [[nodiscard]] bool contains(int v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }

    [[nodiscard]] bool intersects(const VertexSet & o) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i])
                return true;
        return false;
    }

    VertexSet & operator|=(const VertexSet & o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= o.words_[i];
        return *this;
    }

    VertexSet & operator&=(const VertexSet & o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= o.words_[i];
        return *this;
    }

    [[nodiscard]] int count() const
    {
        int n = 0;
        for (auto w : words_)
            n += std::popcount(w);
        return n;
    }

    [[nodiscard]] bool empty() const
    {
        for (auto w : words_)
            if (w)
                return false;
        return true;
    }

    /// Lowest member, or -1.
    [[nodiscard]] int first() const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i])
                return static_cast<int>(i * 64) + std::countr_zero(words_[i]);
        return -1;
    }

    friend bool operator==(const VertexSet &, const VertexSet &) = default;

  private:
    std::vector<std::uint64_t> words_;
};

} // namespace rainbow

#endif
