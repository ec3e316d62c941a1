#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace rqca {

inline constexpr std::size_t kMaxRank = 16;

// Fixed-capacity integer vector used as a Laurent exponent.
class Exponent {
 public:
  Exponent() = default;
  explicit Exponent(std::size_t n);
  Exponent(std::initializer_list<int> values);
  explicit Exponent(const std::vector<long long>& values);

  static Exponent unit(std::size_t n, std::size_t i);

  std::size_t size() const { return n_; }
  std::int32_t& operator[](std::size_t i) { return v_[i]; }
  std::int32_t operator[](std::size_t i) const { return v_[i]; }
  const std::int32_t* begin() const { return v_.data(); }
  const std::int32_t* end() const { return v_.data() + n_; }

  long long degree() const;
  bool is_zero() const;
  std::vector<long long> to_vector() const;
  std::string to_string() const;  // "[1,0,-2]"

  Exponent& operator+=(const Exponent& o);
  Exponent& operator-=(const Exponent& o);
  friend Exponent operator+(Exponent a, const Exponent& b) { return a += b; }
  friend Exponent operator-(Exponent a, const Exponent& b) { return a -= b; }
  Exponent operator-() const;
  Exponent scaled(long long k) const;

  friend bool operator==(const Exponent& a, const Exponent& b);
  friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }

 private:
  std::array<std::int32_t, kMaxRank> v_{};
  std::uint8_t n_ = 0;
};

// Degree-lexicographic order: total degree first, ties broken lexicographically.
struct DegLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

}  // namespace rqca
