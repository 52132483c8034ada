#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace basilica {

class AddressError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Checks a base-graph token. A token is either a single ASCII letter
/// ("a", "x") or a bracketed name ("[l0]", "[#3]"). Neither form can end in
/// a digit, so an address string splits uniquely into token + digit path.
inline bool is_valid_root(std::string_view root) {
  if (root.size() == 1) {
    const char c = root[0];
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  }
  if (root.size() < 3 || root.front() != '[' || root.back() != ']') return false;
  for (std::size_t i = 1; i + 1 < root.size(); ++i) {
    if (root[i] == '[' || root[i] == ']') return false;
  }
  return true;
}

/// Hierarchical edge address: a base-graph token followed by replacement
/// symbols '1', '2', '3'. Rendered without separators, e.g. "d13".
struct Address {
  std::string root;
  std::string path;

  Address() = default;
  Address(std::string r, std::string p) : root(std::move(r)), path(std::move(p)) {}
  /// Parses the rendered form, e.g. Address("d13").
  Address(std::string_view text) : Address(parse(text)) {}
  Address(const char* text) : Address(parse(text)) {}
  Address(const std::string& text) : Address(parse(text)) {}

  static Address parse(std::string_view text) {
    if (text.empty()) throw AddressError("empty address");
    std::size_t root_len = 1;
    if (text[0] == '[') {
      const auto close = text.find(']');
      if (close == std::string_view::npos) throw AddressError("unterminated token in '" + std::string(text) + "'");
      root_len = close + 1;
    }
    Address a(std::string(text.substr(0, root_len)), std::string(text.substr(root_len)));
    if (!is_valid_root(a.root)) throw AddressError("invalid base token in '" + std::string(text) + "'");
    for (char c : a.path) {
      if (c < '1' || c > '3') throw AddressError("invalid replacement symbol in '" + std::string(text) + "'");
    }
    return a;
  }

  [[nodiscard]] std::string str() const { return root + path; }
  [[nodiscard]] std::size_t depth() const { return path.size(); }

  [[nodiscard]] Address child(int i) const { return Address(root, path + static_cast<char>('0' + i)); }

  [[nodiscard]] bool has_parent() const { return !path.empty(); }
  [[nodiscard]] Address parent() const { return Address(root, path.substr(0, path.size() - 1)); }
  /// Last replacement symbol (1, 2 or 3), or 0 for a bare base token.
  [[nodiscard]] int last_symbol() const { return path.empty() ? 0 : path.back() - '0'; }

  /// True when this address is a (not necessarily proper) prefix of `other`.
  [[nodiscard]] bool is_prefix_of(const Address& other) const {
    return root == other.root && other.path.compare(0, path.size(), path) == 0;
  }

  /// Suffix of `other` below this address; requires is_prefix_of(other).
  [[nodiscard]] std::string suffix_of(const Address& other) const { return other.path.substr(path.size()); }

  /// Replaces the prefix `from` with `to`; requires from.is_prefix_of(*this).
  [[nodiscard]] Address rebased(const Address& from, const Address& to) const {
    return Address(to.root, to.path + path.substr(from.path.size()));
  }

  auto operator<=>(const Address&) const = default;
  bool operator==(const Address&) const = default;
};

/// Vertex name. Either a base token ("x", "[o2]") or an edge address followed
/// by the interior symbol '4' ("b4", "d134").
struct Vertex {
  std::string name;

  Vertex() = default;
  Vertex(std::string n) : name(std::move(n)) {}
  Vertex(const char* n) : name(n) {}

  static Vertex interior_of(const Address& edge) { return Vertex{edge.str() + "4"}; }

  [[nodiscard]] bool is_interior() const { return !name.empty() && name.back() == '4'; }
  /// Edge whose expansion created this vertex; requires is_interior().
  [[nodiscard]] Address creator() const { return Address::parse(std::string_view(name).substr(0, name.size() - 1)); }

  auto operator<=>(const Vertex&) const = default;
  bool operator==(const Vertex&) const = default;
};

/// Symbol naming the interior vertex of the replacement graph.
inline constexpr int kInteriorSymbol = 4;

}  // namespace basilica
