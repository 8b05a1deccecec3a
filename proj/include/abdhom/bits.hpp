#ifndef ABDHOM_BITS_HPP
#define ABDHOM_BITS_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace abdhom {

// Small fixed-width bitset sized at runtime. Unused high bits stay zero so
// that equality and hashing work on the raw words.
class Bits {
public:
  Bits() = default;
  explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    if (v) w_[i >> 6] |= std::uint64_t{1} << (i & 63);
    else w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  bool operator[](std::size_t i) const { return test(i); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }
  bool any() const { return !none(); }

  Bits& operator|=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  // a \ b
  friend Bits operator-(Bits a, const Bits& b) {
    for (std::size_t i = 0; i < a.w_.size(); ++i) a.w_[i] &= ~b.w_[i];
    return a;
  }

  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  std::size_t hash() const {
    std::size_t h = n_;
    for (auto w : w_) h ^= static_cast<std::size_t>(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

  const std::vector<std::uint64_t>& words() const { return w_; }

  friend bool operator==(const Bits&, const Bits&) = default;
  friend auto operator<=>(const Bits&, const Bits&) = default;

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

inline void hash_mix(std::size_t& h, std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }

}  // namespace abdhom

#endif
