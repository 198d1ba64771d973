#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace topgroups {

/// Fixed-width bit set over the element indices of one group. Sized at
/// construction to the parent order; subgroup membership, containment and
/// equality tests all reduce to word operations.
class MemberSet {
 public:
  MemberSet() = default;
  explicit MemberSet(int universe)
      : bits_(universe), words_((static_cast<std::size_t>(universe) + 63) / 64, 0) {}

  int universe() const { return bits_; }

  bool test(int i) const { return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u; }
  void set(int i) { words_[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { words_[static_cast<std::size_t>(i) >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  int count() const {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }

  bool subset_of(const MemberSet& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }

  bool intersects(const MemberSet& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }

  int intersection_count(const MemberSet& o) const {
    int c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k)
      c += std::popcount(words_[k] & o.words_[k]);
    return c;
  }

  MemberSet intersect(const MemberSet& o) const {
    MemberSet r(bits_);
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] & o.words_[k];
    return r;
  }

  MemberSet unite(const MemberSet& o) const {
    MemberSet r(bits_);
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] | o.words_[k];
    return r;
  }

  bool operator==(const MemberSet&) const = default;

  /// Orders sets like their sorted element lists: at the first differing
  /// index, the set that contains it sorts first.
  int compare_lex(const MemberSet& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t diff = words_[k] ^ o.words_[k];
      if (diff) {
        std::uint64_t low = diff & (~diff + 1);
        return (words_[k] & low) ? -1 : 1;
      }
    }
    return 0;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : words_) {
      h ^= static_cast<std::size_t>(w);
      h *= 1099511628211ull;
    }
    return h;
  }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        int b = std::countr_zero(w);
        out.push_back(static_cast<int>(k * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
    return out;
  }

 private:
  int bits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct MemberSetHash {
  std::size_t operator()(const MemberSet& m) const { return m.hash(); }
};

}  // namespace topgroups
