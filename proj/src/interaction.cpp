#include <boolsynth/interaction.hpp>

#include <bit>
#include <stdexcept>

namespace boolsynth {

namespace {
constexpr std::array<std::string_view, 8> kNames = {"nop", "inp", "out", "set", "res", "swap", "used", "free"};
}

std::string_view to_string(Interaction i) { return kNames[static_cast<int>(i)]; }

std::optional<Interaction> parse_interaction(std::string_view s) {
  for (int i = 0; i < 8; ++i)
    if (kNames[i] == s) return static_cast<Interaction>(i);
  return std::nullopt;
}

std::vector<Interaction> NetType::members() const {
  std::vector<Interaction> out;
  for (auto i : kAllInteractions)
    if (has(i)) out.push_back(i);
  return out;
}

int NetType::size() const { return std::popcount(bits_); }

NetType mirror_type(NetType t) {
  NetType out;
  for (auto i : kAllInteractions)
    if (t.has(i)) out = out | NetType{mirror(i)};
  return out;
}

std::string format_type(NetType t) {
  std::string out;
  for (auto i : t.members()) {
    if (!out.empty()) out += ',';
    out += to_string(i);
  }
  return out;
}

NetType parse_type(std::string_view text) {
  NetType t;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    auto i = parse_interaction(item);
    if (!i) throw std::invalid_argument("unknown interaction '" + std::string(item) + "'");
    if (t.has(*i)) throw std::invalid_argument("duplicate interaction '" + std::string(item) + "'");
    t = t | NetType{*i};
    pos = comma + 1;
  }
  return t;
}

}  // namespace boolsynth
