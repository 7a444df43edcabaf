#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace bergspec {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double neg_infinity = -std::numeric_limits<double>::infinity();

/// A real number or the sentinel -inf. NaN and +inf are rejected.
class ExtReal {
public:
    constexpr ExtReal() = default;
    ExtReal(double value) : value_(value) {  // NOLINT(google-explicit-constructor)
        if (std::isnan(value) || value == std::numeric_limits<double>::infinity())
            throw std::invalid_argument("ExtReal: value must be finite or -inf");
    }

    static ExtReal neg_inf() { return ExtReal(neg_infinity); }

    bool is_neg_inf() const { return std::isinf(value_); }
    bool is_finite() const { return !is_neg_inf(); }
    double value() const { return value_; }

    ExtReal operator+(double shift) const { return is_neg_inf() ? *this : ExtReal(value_ + shift); }

    friend auto operator<=>(ExtReal a, ExtReal b) { return a.value_ <=> b.value_; }
    friend bool operator==(ExtReal a, ExtReal b) { return a.value_ == b.value_; }

private:
    double value_ = 0.0;
};

inline ExtReal max(ExtReal a, ExtReal b) { return a < b ? b : a; }
inline ExtReal min(ExtReal a, ExtReal b) { return a < b ? a : b; }

/// exp(t * x) with exp(-inf) = 0 and the convention exp(0 * -inf) = 1.
inline double exp_scaled(ExtReal x, double t) {
    if (t == 0.0) return 1.0;
    if (x.is_neg_inf()) return 0.0;
    return std::exp(t * x.value());
}

/// Boundary value of a semicocycle generator: a complex number or -inf.
struct Beta {
    cplx value{};
    bool neg_inf = false;

    static Beta minus_infinity() { return Beta{cplx{}, true}; }
    ExtReal real() const { return neg_inf ? ExtReal::neg_inf() : ExtReal(value.real()); }
    friend bool operator==(Beta const&, Beta const&) = default;
};

}  // namespace bergspec
