#pragma once

#include <cmath>
#include <ostream>

namespace hecke {

// unevaluated sum hi + lo, |lo| <= ulp(hi)/2
struct DoubleDouble {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DoubleDouble() = default;
    constexpr DoubleDouble(double x) : hi(x), lo(0.0) {}
    constexpr DoubleDouble(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }

    static DoubleDouble two_sum(double a, double b) {
        double s = a + b;
        double bb = s - a;
        double e = (a - (s - bb)) + (b - bb);
        return {s, e};
    }
    static DoubleDouble quick_two_sum(double a, double b) {
        double s = a + b;
        return {s, b - (s - a)};
    }
    static DoubleDouble two_prod(double a, double b) {
        double p = a * b;
        return {p, std::fma(a, b, -p)};
    }

    DoubleDouble operator-() const { return {-hi, -lo}; }

    friend DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
        DoubleDouble s = two_sum(a.hi, b.hi);
        DoubleDouble t = two_sum(a.lo, b.lo);
        s.lo += t.hi;
        s = quick_two_sum(s.hi, s.lo);
        s.lo += t.lo;
        return quick_two_sum(s.hi, s.lo);
    }
    friend DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }
    friend DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
        DoubleDouble p = two_prod(a.hi, b.hi);
        p.lo += a.hi * b.lo + a.lo * b.hi;
        return quick_two_sum(p.hi, p.lo);
    }
    friend DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
        double q1 = a.hi / b.hi;
        DoubleDouble r = a - b * DoubleDouble(q1);
        double q2 = r.hi / b.hi;
        r = r - b * DoubleDouble(q2);
        double q3 = r.hi / b.hi;
        return quick_two_sum(q1, q2) + DoubleDouble(q3);
    }

    DoubleDouble& operator+=(DoubleDouble o) { return *this = *this + o; }
    DoubleDouble& operator-=(DoubleDouble o) { return *this = *this - o; }
    DoubleDouble& operator*=(DoubleDouble o) { return *this = *this * o; }
    DoubleDouble& operator/=(DoubleDouble o) { return *this = *this / o; }

    friend bool operator<(DoubleDouble a, DoubleDouble b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
    friend bool operator>(DoubleDouble a, DoubleDouble b) { return b < a; }
    friend bool operator<=(DoubleDouble a, DoubleDouble b) { return !(b < a); }
    friend bool operator>=(DoubleDouble a, DoubleDouble b) { return !(a < b); }
    friend bool operator==(DoubleDouble a, DoubleDouble b) { return a.hi == b.hi && a.lo == b.lo; }
    friend bool operator!=(DoubleDouble a, DoubleDouble b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, DoubleDouble x) { return os << double(x); }
};

inline DoubleDouble abs(DoubleDouble x) { return x.hi < 0 ? -x : x; }

inline DoubleDouble sqrt(DoubleDouble x) {
    if (x.hi <= 0) return DoubleDouble(0.0);
    double y = std::sqrt(x.hi);
    DoubleDouble yy = DoubleDouble::two_prod(y, y);
    DoubleDouble r = x - yy;
    return DoubleDouble::quick_two_sum(y, r.hi / (2.0 * y));
}

inline double to_double(double x) { return x; }
inline double to_double(DoubleDouble x) { return x.hi + x.lo; }

template <typename Real>
struct RealTraits;

template <>
struct RealTraits<double> {
    static double pi() { return M_PI; }
    static double sin(double x) { return std::sin(x); }
    static double cos(double x) { return std::cos(x); }
    static double sqrt(double x) { return std::sqrt(x); }
    static double log(double x) { return std::log(x); }
    static constexpr const char* name = "double";
};

template <>
struct RealTraits<DoubleDouble> {
    static DoubleDouble pi() { return {3.141592653589793116, 1.2246467991473532e-16}; }

    // Taylor series, argument assumed in [-4, 4]
    static DoubleDouble sin(DoubleDouble x) {
        DoubleDouble term = x, sum = x, x2 = x * x;
        for (int n = 1; n < 40; ++n) {
            term = -(term * x2) / DoubleDouble(double((2 * n) * (2 * n + 1)));
            sum += term;
            if (std::abs(term.hi) < 1e-34) break;
        }
        return sum;
    }
    static DoubleDouble cos(DoubleDouble x) {
        DoubleDouble term(1.0), sum(1.0), x2 = x * x;
        for (int n = 1; n < 40; ++n) {
            term = -(term * x2) / DoubleDouble(double((2 * n - 1) * (2 * n)));
            sum += term;
            if (std::abs(term.hi) < 1e-34) break;
        }
        return sum;
    }
    static DoubleDouble sqrt(DoubleDouble x) { return hecke::sqrt(x); }
    // log to double accuracy with a first-order correction from lo
    static DoubleDouble log(DoubleDouble x) { return DoubleDouble(std::log(x.hi) + x.lo / x.hi); }
    static constexpr const char* name = "dd";
};

} // namespace hecke
