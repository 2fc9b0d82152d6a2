#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace bstlab {

__extension__ using Wide = __int128;

/// Exact rational search key. Real keys are integers (den == 1); auxiliary
/// keys used by constructions sit strictly between integers.
class Key {
 public:
  constexpr Key() = default;
  constexpr Key(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design of integer keys
  Key(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  /// Integer value; throws std::domain_error for auxiliary keys.
  std::int64_t as_integer() const;

  std::string to_string() const;
  static std::optional<Key> parse(std::string_view text);

  friend bool operator==(const Key& a, const Key& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Key& a, const Key& b) {
    const Wide lhs = static_cast<Wide>(a.num_) * b.den_;
    const Wide rhs = static_cast<Wide>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend Key operator+(const Key& a, const Key& b);
  friend Key operator-(const Key& a, const Key& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace bstlab

template <>
struct std::hash<bstlab::Key> {
  std::size_t operator()(const bstlab::Key& k) const noexcept {
    return std::hash<std::int64_t>{}(k.num()) * 1000003u ^ std::hash<std::int64_t>{}(k.den());
  }
};
