#include "bstlab/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace bstlab {

Key::Key(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("Key: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / (g == 0 ? 1 : g);
  den_ = den / (g == 0 ? 1 : g);
}

std::int64_t Key::as_integer() const {
  if (den_ != 1) throw std::domain_error("Key " + to_string() + " is not an integer");
  return num_;
}

std::string Key::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {
std::optional<std::int64_t> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}
}  // namespace

std::optional<Key> Key::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    auto v = parse_int(text);
    if (!v) return std::nullopt;
    return Key(*v);
  }
  auto p = parse_int(text.substr(0, slash));
  auto q = parse_int(text.substr(slash + 1));
  if (!p || !q || *q <= 0) return std::nullopt;
  return Key(*p, *q);
}

Key operator+(const Key& a, const Key& b) {
  return Key(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Key operator-(const Key& a, const Key& b) {
  return Key(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

}  // namespace bstlab
