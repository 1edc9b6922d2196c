#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace blanketlab {

using NodeIndex = std::uint32_t;

// Fixed-universe bitset over the node indices of one graph. Iteration order
// is index order, which graphs keep equal to canonical label order.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe);
  NodeSet(std::size_t universe, std::initializer_list<NodeIndex> members);

  static NodeSet full(std::size_t universe);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept;
  bool empty() const noexcept;

  bool contains(NodeIndex i) const noexcept {
    return i < universe_ && ((words_[i >> 6] >> (i & 63)) & 1U) != 0;
  }
  void insert(NodeIndex i);
  void erase(NodeIndex i);

  NodeSet& operator|=(const NodeSet& other);
  NodeSet& operator&=(const NodeSet& other);
  NodeSet& operator-=(const NodeSet& other);

  friend NodeSet operator|(NodeSet a, const NodeSet& b) { return a |= b; }
  friend NodeSet operator&(NodeSet a, const NodeSet& b) { return a &= b; }
  friend NodeSet operator-(NodeSet a, const NodeSet& b) { return a -= b; }

  bool is_subset_of(const NodeSet& other) const;
  bool intersects(const NodeSet& other) const;

  std::vector<NodeIndex> elements() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int bit = __builtin_ctzll(bits);
        f(static_cast<NodeIndex>(w * 64 + static_cast<std::size_t>(bit)));
        bits &= bits - 1;
      }
    }
  }

  friend bool operator==(const NodeSet& a, const NodeSet& b) = default;
  // Orders by element sequence, so sets sort as their sorted label lists do.
  friend std::strong_ordering operator<=>(const NodeSet& a, const NodeSet& b);

 private:
  void check_universe(const NodeSet& other) const;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace blanketlab
