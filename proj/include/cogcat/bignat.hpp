#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cogcat {

/// Arbitrary-precision natural number with just enough surface for the
/// Bell triangle: construction, addition, comparison, decimal printing.
/// Limbs are base 10^9, least significant first.
class bignat {
public:
    bignat() = default;

    bignat(std::uint64_t value) { // NOLINT(google-explicit-constructor)
        while (value > 0) {
            limbs_.push_back(static_cast<std::uint32_t>(value % base));
            value /= base;
        }
    }

    bignat& operator+=(const bignat& other) {
        if (other.limbs_.size() > limbs_.size())
            limbs_.resize(other.limbs_.size(), 0);
        std::uint32_t carry = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t sum = std::uint64_t{limbs_[i]} + carry;
            if (i < other.limbs_.size()) sum += other.limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(sum % base);
            carry = static_cast<std::uint32_t>(sum / base);
        }
        if (carry) limbs_.push_back(carry);
        return *this;
    }

    friend bignat operator+(bignat a, const bignat& b) {
        a += b;
        return a;
    }

    friend bool operator==(const bignat& a, const bignat& b) noexcept {
        return a.limbs_ == b.limbs_;
    }
    friend bool operator!=(const bignat& a, const bignat& b) noexcept { return !(a == b); }

    bool is_zero() const noexcept { return limbs_.empty(); }

    /// Lossy conversion for small values; callers check digit count first.
    double to_double() const noexcept {
        double out = 0.0;
        for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it)
            out = out * static_cast<double>(base) + static_cast<double>(*it);
        return out;
    }

    std::string to_string() const {
        if (limbs_.empty()) return "0";
        std::string out = std::to_string(limbs_.back());
        for (auto it = limbs_.rbegin() + 1; it != limbs_.rend(); ++it) {
            std::string chunk = std::to_string(*it);
            out.append(9 - chunk.size(), '0');
            out += chunk;
        }
        return out;
    }

private:
    static constexpr std::uint64_t base = 1'000'000'000;
    std::vector<std::uint32_t> limbs_;
};

} // namespace cogcat
