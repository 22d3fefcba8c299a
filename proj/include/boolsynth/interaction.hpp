#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace boolsynth {

enum class Interaction : std::uint8_t { nop, inp, out, set, res, swap, used, free };

inline constexpr std::array<Interaction, 8> kAllInteractions = {
    Interaction::nop, Interaction::inp,  Interaction::out,  Interaction::set,
    Interaction::res, Interaction::swap, Interaction::used, Interaction::free};

// -1 encodes "undefined".
constexpr int apply_interaction(Interaction i, int b) {
  constexpr int table[8][2] = {
      {0, 1},   // nop
      {-1, 0},  // inp
      {1, -1},  // out
      {1, 1},   // set
      {0, 0},   // res
      {1, 0},   // swap
      {-1, 1},  // used
      {0, -1},  // free
  };
  return table[static_cast<int>(i)][b];
}

constexpr Interaction mirror(Interaction i) {
  switch (i) {
    case Interaction::inp: return Interaction::out;
    case Interaction::out: return Interaction::inp;
    case Interaction::set: return Interaction::res;
    case Interaction::res: return Interaction::set;
    case Interaction::used: return Interaction::free;
    case Interaction::free: return Interaction::used;
    default: return i;
  }
}

std::string_view to_string(Interaction i);
std::optional<Interaction> parse_interaction(std::string_view s);

// A type of nets: a subset of the eight interactions, stored as a bitmask.
class NetType {
 public:
  constexpr NetType() = default;
  constexpr explicit NetType(std::uint8_t bits) : bits_(bits) {}
  constexpr NetType(std::initializer_list<Interaction> xs) {
    for (auto x : xs) bits_ |= bit(x);
  }

  static constexpr std::uint8_t bit(Interaction i) {
    return static_cast<std::uint8_t>(1u << static_cast<int>(i));
  }

  constexpr bool has(Interaction i) const { return bits_ & bit(i); }
  constexpr std::uint8_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(NetType o) const { return (bits_ & o.bits_) == o.bits_; }
  constexpr bool intersects(NetType o) const { return bits_ & o.bits_; }
  constexpr NetType operator|(NetType o) const { return NetType(bits_ | o.bits_); }
  constexpr NetType operator&(NetType o) const { return NetType(bits_ & o.bits_); }
  constexpr NetType without(NetType o) const { return NetType(bits_ & ~o.bits_); }
  constexpr bool operator==(const NetType&) const = default;

  std::vector<Interaction> members() const;
  int size() const;

 private:
  std::uint8_t bits_ = 0;
};

inline constexpr NetType kEnter{Interaction::out, Interaction::set, Interaction::swap};
inline constexpr NetType kExit{Interaction::inp, Interaction::res, Interaction::swap};
inline constexpr NetType kKeepPlus{Interaction::nop, Interaction::set, Interaction::used};
inline constexpr NetType kKeepMinus{Interaction::nop, Interaction::res, Interaction::free};

NetType mirror_type(NetType t);

// "nop,inp,out" in canonical interaction order.
std::string format_type(NetType t);

// Order-insensitive; throws std::invalid_argument on unknown or duplicate names.
NetType parse_type(std::string_view text);

}  // namespace boolsynth
