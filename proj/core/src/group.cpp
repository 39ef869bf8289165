#include "nzflow/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "nzflow/errors.hpp"

namespace nzflow {

Group Group::cyclic(int k) {
  if (k < 2 || k > 255) throw PreconditionError("cyclic group order must lie in [2, 255]");
  return Group(Kind::kCyclic, k, 1);
}

Group Group::parse(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "z2xz2") return z2xz2();
  if (s == "z2xz3") return z2xz3();
  if (s.size() >= 2 && s[0] == 'z') {
    int k = 0;
    auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), k);
    if (ec == std::errc() && ptr == s.data() + s.size()) return cyclic(k);
  }
  throw PreconditionError("unknown group '" + std::string(name) + "'");
}

std::string Group::name() const {
  switch (kind_) {
    case Kind::kZ2xZ2:
      return "z2xz2";
    case Kind::kZ2xZ3:
      return "z2xz3";
    case Kind::kCyclic:
      break;
  }
  return "z" + std::to_string(moduli_[0]);
}

GroupElem Group::add(GroupElem a, GroupElem b) const {
  GroupElem r;
  for (int i = 0; i < 2; ++i) r.residues[i] = static_cast<std::uint8_t>((a.residues[i] + b.residues[i]) % moduli_[i]);
  return r;
}

GroupElem Group::neg(GroupElem a) const {
  GroupElem r;
  for (int i = 0; i < 2; ++i) r.residues[i] = static_cast<std::uint8_t>((moduli_[i] - a.residues[i]) % moduli_[i]);
  return r;
}

GroupElem Group::sub(GroupElem a, GroupElem b) const { return add(a, neg(b)); }

bool Group::contains(GroupElem a) const {
  return a.residues[0] < moduli_[0] && a.residues[1] < moduli_[1];
}

GroupElem Group::decode(int code) const {
  GroupElem r;
  r.residues[0] = static_cast<std::uint8_t>(code % moduli_[0]);
  r.residues[1] = static_cast<std::uint8_t>(code / moduli_[0]);
  return r;
}

GroupElem Group::make(int r0, int r1) const {
  auto reduce = [](int r, int m) { return static_cast<std::uint8_t>(((r % m) + m) % m); };
  return GroupElem{{reduce(r0, moduli_[0]), reduce(r1, moduli_[1])}};
}

std::string Group::format(GroupElem a) const {
  std::string out = std::to_string(a.residues[0]);
  if (components() == 2) {
    out += '|';
    out += std::to_string(a.residues[1]);
  }
  return out;
}

}  // namespace nzflow
