#include "blanketlab/node_set.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "blanketlab/error.hpp"

namespace blanketlab {

NodeSet::NodeSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

NodeSet::NodeSet(std::size_t universe, std::initializer_list<NodeIndex> members)
    : NodeSet(universe) {
  for (NodeIndex i : members) insert(i);
}

NodeSet NodeSet::full(std::size_t universe) {
  NodeSet s(universe);
  for (std::size_t i = 0; i < universe; ++i) s.insert(static_cast<NodeIndex>(i));
  return s;
}

std::size_t NodeSet::size() const noexcept {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool NodeSet::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

void NodeSet::insert(NodeIndex i) {
  if (i >= universe_) {
    throw Error(ErrorCode::UnknownNode, "node index " + std::to_string(i) + " outside set universe");
  }
  words_[i >> 6] |= std::uint64_t{1} << (i & 63);
}

void NodeSet::erase(NodeIndex i) {
  if (i < universe_) words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

void NodeSet::check_universe(const NodeSet& other) const {
  if (other.universe_ != universe_) {
    throw Error(ErrorCode::InvalidArgument, "node sets over different graphs combined");
  }
}

NodeSet& NodeSet::operator|=(const NodeSet& other) {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

NodeSet& NodeSet::operator&=(const NodeSet& other) {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

NodeSet& NodeSet::operator-=(const NodeSet& other) {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
  return *this;
}

bool NodeSet::is_subset_of(const NodeSet& other) const {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

bool NodeSet::intersects(const NodeSet& other) const {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

std::vector<NodeIndex> NodeSet::elements() const {
  std::vector<NodeIndex> out;
  for_each([&](NodeIndex i) { out.push_back(i); });
  return out;
}

std::strong_ordering operator<=>(const NodeSet& a, const NodeSet& b) {
  if (auto c = a.universe_ <=> b.universe_; c != 0) return c;
  const auto ea = a.elements();
  const auto eb = b.elements();
  return std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(), eb.end());
}

}  // namespace blanketlab
