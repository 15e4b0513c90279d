#pragma once

#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qpos::zx {

// Exact rational multiple of pi, reduced and normalized into [0, 2).
// Spider phases never touch floating point until tensor evaluation.
class Phase {
  public:
    constexpr Phase() = default;
    Phase(std::int64_t num, std::int64_t den) {
        if (den == 0) throw std::invalid_argument("phase: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        num %= 2 * den;
        if (num < 0) num += 2 * den;
        num_ = num;
        den_ = den;
    }

    static Phase zero() { return Phase(); }
    static Phase pi() { return Phase(1, 1); }
    static Phase half_pi() { return Phase(1, 2); }
    static Phase quarter_pi() { return Phase(1, 4); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Phase operator+(const Phase& other) const {
        const std::int64_t g = std::gcd(den_, other.den_);
        const std::int64_t lcm = den_ / g * other.den_;
        return Phase(num_ * (lcm / den_) + other.num_ * (lcm / other.den_), lcm);
    }
    Phase operator-(const Phase& other) const { return *this + (-other); }
    Phase operator-() const { return Phase(-num_, den_); }
    bool operator==(const Phase& other) const = default;

    bool is_zero() const { return num_ == 0; }
    // multiple of pi (0 or pi)
    bool is_pauli() const { return den_ == 1; }
    // multiple of pi/2
    bool is_clifford() const { return den_ <= 2; }
    // exactly +-pi/2
    bool is_proper_clifford() const { return den_ == 2; }

    double radians() const {
        return std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace qpos::zx
