#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>

namespace causal {

using Var = std::size_t;

inline constexpr std::size_t kMaxVariables = 32;

/// Set of variable indices stored as a bitmask. Iteration is in ascending
/// index order, which is also the canonical variable order.
class VarSet {
 public:
  using Mask = std::uint32_t;

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Var;
    using difference_type = std::ptrdiff_t;
    using pointer = const Var*;
    using reference = Var;

    constexpr iterator() = default;
    constexpr explicit iterator(Mask rest) : rest_(rest) {}
    constexpr Var operator*() const { return static_cast<Var>(std::countr_zero(rest_)); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator copy = *this;
      ++*this;
      return copy;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    Mask rest_ = 0;
  };

  constexpr VarSet() = default;
  constexpr explicit VarSet(Mask mask) : mask_(mask) {}
  constexpr VarSet(std::initializer_list<Var> vars) {
    for (Var v : vars) mask_ |= bit(v);
  }

  static constexpr VarSet single(Var v) { return VarSet(bit(v)); }
  /// {0, ..., n-1}
  static constexpr VarSet first(std::size_t n) {
    return VarSet(n >= 32 ? ~Mask{0} : static_cast<Mask>((Mask{1} << n) - 1));
  }

  constexpr Mask mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  constexpr bool contains(Var v) const { return v < kMaxVariables && (mask_ & bit(v)) != 0; }
  constexpr bool subset_of(VarSet other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool intersects(VarSet other) const { return (mask_ & other.mask_) != 0; }
  constexpr Var lowest() const { return static_cast<Var>(std::countr_zero(mask_)); }
  constexpr Var highest() const { return static_cast<Var>(31 - std::countl_zero(mask_)); }

  constexpr VarSet& insert(Var v) {
    mask_ |= bit(v);
    return *this;
  }
  constexpr VarSet& erase(Var v) {
    mask_ &= ~bit(v);
    return *this;
  }
  constexpr VarSet with(Var v) const { return VarSet(mask_ | bit(v)); }
  constexpr VarSet without(Var v) const { return VarSet(mask_ & ~bit(v)); }

  constexpr iterator begin() const { return iterator(mask_); }
  constexpr iterator end() const { return iterator(0); }

  friend constexpr VarSet operator|(VarSet a, VarSet b) { return VarSet(a.mask_ | b.mask_); }
  friend constexpr VarSet operator&(VarSet a, VarSet b) { return VarSet(a.mask_ & b.mask_); }
  friend constexpr VarSet operator-(VarSet a, VarSet b) { return VarSet(a.mask_ & ~b.mask_); }
  constexpr VarSet& operator|=(VarSet o) {
    mask_ |= o.mask_;
    return *this;
  }
  constexpr VarSet& operator&=(VarSet o) {
    mask_ &= o.mask_;
    return *this;
  }
  constexpr VarSet& operator-=(VarSet o) {
    mask_ &= ~o.mask_;
    return *this;
  }
  friend constexpr bool operator==(VarSet, VarSet) = default;
  friend constexpr auto operator<=>(VarSet a, VarSet b) { return a.mask_ <=> b.mask_; }

 private:
  static constexpr Mask bit(Var v) { return Mask{1} << v; }
  Mask mask_ = 0;
};

/// Calls fn(subset) for every subset of `set`, starting with the empty set and
/// ending with `set` itself (ascending mask order).
template <typename Fn>
void for_each_subset(VarSet set, Fn&& fn) {
  const VarSet::Mask full = set.mask();
  VarSet::Mask sub = 0;
  while (true) {
    fn(VarSet(sub));
    if (sub == full) break;
    sub = (sub - full) & full;
  }
}

}  // namespace causal
