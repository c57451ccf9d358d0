#ifndef ATOMLIGHT_HALF_INTEGER_HPP
#define ATOMLIGHT_HALF_INTEGER_HPP

#include <compare>
#include <stdexcept>
#include <string>

namespace atomlight {

/// Non-negative angular momentum quantum number stored as 2j, so that
/// j in {0, 1/2, 1, 3/2, ...} is exact and triangle tests are pure
/// integer arithmetic.
class HalfInteger {
  public:
    constexpr HalfInteger() = default;

    // implicit from a whole quantum number (j = n)
    constexpr HalfInteger(int whole) : twice_(2 * whole) {
        if (whole < 0)
            throw std::invalid_argument("HalfInteger: negative quantum number");
    }

    static constexpr HalfInteger from_twice(int twice) {
        if (twice < 0)
            throw std::invalid_argument("HalfInteger: negative quantum number");
        HalfInteger h;
        h.twice_ = twice;
        return h;
    }

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

    std::string str() const {
        if (is_integer())
            return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

  private:
    int twice_ = 0;
};

namespace literals {
// j = n/2 for odd n, e.g. 3_half is j = 3/2
constexpr HalfInteger operator""_half(unsigned long long twice) {
    return HalfInteger::from_twice(static_cast<int>(twice));
}
} // namespace literals

} // namespace atomlight

#endif
