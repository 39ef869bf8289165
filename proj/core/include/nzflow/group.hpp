#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace nzflow {

/// An element of a product of at most two cyclic groups, stored as residues.
/// Cyclic groups use only the first component; the second stays 0.
struct GroupElem {
  std::array<std::uint8_t, 2> residues{0, 0};

  friend auto operator<=>(const GroupElem&, const GroupElem&) = default;
};

/// Finite abelian group descriptor: Zk (k >= 2), Z2xZ2 or Z2xZ3.
class Group {
 public:
  enum class Kind { kCyclic, kZ2xZ2, kZ2xZ3 };

  static Group cyclic(int k);
  static Group z2xz2() { return Group(Kind::kZ2xZ2, 2, 2); }
  static Group z2xz3() { return Group(Kind::kZ2xZ3, 2, 3); }

  /// Accepts "z2".."zN", "z2xz2", "z2xz3" (case-insensitive).
  static Group parse(std::string_view name);

  Kind kind() const { return kind_; }
  int order() const { return moduli_[0] * moduli_[1]; }
  int components() const { return kind_ == Kind::kCyclic ? 1 : 2; }
  int modulus(int component) const { return moduli_[component]; }
  std::string name() const;

  GroupElem zero() const { return {}; }
  GroupElem add(GroupElem a, GroupElem b) const;
  GroupElem sub(GroupElem a, GroupElem b) const;
  GroupElem neg(GroupElem a) const;
  bool is_zero(GroupElem a) const { return a.residues[0] == 0 && a.residues[1] == 0; }
  bool contains(GroupElem a) const;

  /// Mixed-radix index in [0, order()); first component varies fastest.
  int encode(GroupElem a) const { return a.residues[0] + moduli_[0] * a.residues[1]; }
  GroupElem decode(int code) const;

  /// Builds an element from raw residues, reducing each modulo its component.
  GroupElem make(int r0, int r1 = 0) const;

  /// "r0" for cyclic groups, "r0|r1" for products.
  std::string format(GroupElem a) const;

  friend bool operator==(const Group& a, const Group& b) {
    return a.kind_ == b.kind_ && a.moduli_ == b.moduli_;
  }

 private:
  Group(Kind kind, int m0, int m1) : kind_(kind), moduli_{m0, m1} {}

  Kind kind_;
  std::array<int, 2> moduli_;
};

}  // namespace nzflow
