#pragma once

// Forward-mode dual numbers.  Nesting (Dual<Dual<double>>, ...) yields exact
// mixed higher-order partials: seed one variable per nesting level.

#include <cmath>
#include <type_traits>

namespace dsusy {

template <class T>
struct Dual {
    T v{};  // value
    T d{};  // infinitesimal part

    constexpr Dual() = default;
    constexpr Dual(const T& value) : v(value), d(T(0)) {}  // NOLINT: implicit lift
    constexpr Dual(const T& value, const T& eps) : v(value), d(eps) {}

    template <class U, std::enable_if_t<std::is_arithmetic_v<U> && !std::is_same_v<U, T>, int> = 0>
    constexpr Dual(U value) : v(T(value)), d(T(0)) {}  // NOLINT

    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
    Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
    Dual& operator/=(const Dual& o) {
        T inv = T(1) / o.v;
        v *= inv;
        d = (d - v * o.d) * inv;
        return *this;
    }
};

template <class T> struct is_dual : std::false_type {};
template <class T> struct is_dual<Dual<T>> : std::true_type {};

inline double value_of(double x) { return x; }
template <class T> double value_of(const Dual<T>& x) { return value_of(x.v); }

template <class T> Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <class T> Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <class T> Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <class T> Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }
template <class T> Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T> Dual<T> operator+(const Dual<T>& a) { return a; }

// Mixed operations with plain arithmetic scalars.
template <class T> Dual<T> operator+(Dual<T> a, double b) { a.v += T(b); return a; }
template <class T> Dual<T> operator+(double a, Dual<T> b) { b.v += T(a); return b; }
template <class T> Dual<T> operator-(Dual<T> a, double b) { a.v -= T(b); return a; }
template <class T> Dual<T> operator-(double a, const Dual<T>& b) { return {T(a) - b.v, -b.d}; }
template <class T> Dual<T> operator*(const Dual<T>& a, double b) { return {a.v * b, a.d * b}; }
template <class T> Dual<T> operator*(double a, const Dual<T>& b) { return {a * b.v, a * b.d}; }
template <class T> Dual<T> operator/(const Dual<T>& a, double b) { return {a.v / b, a.d / b}; }
template <class T> Dual<T> operator/(double a, const Dual<T>& b) { return Dual<T>(T(a)) / b; }

template <class T> bool operator<(const Dual<T>& a, const Dual<T>& b) { return value_of(a) < value_of(b); }
template <class T> bool operator>(const Dual<T>& a, const Dual<T>& b) { return value_of(a) > value_of(b); }
template <class T> bool operator<(const Dual<T>& a, double b) { return value_of(a) < b; }
template <class T> bool operator>(const Dual<T>& a, double b) { return value_of(a) > b; }

// Elementary functions: chain rule on the infinitesimal part.
using std::sin, std::cos, std::tan, std::exp, std::log, std::sqrt, std::sinh, std::cosh,
    std::tanh, std::atan, std::asin, std::asinh, std::abs;

template <class T> Dual<T> sin(const Dual<T>& x) { return {sin(x.v), x.d * cos(x.v)}; }
template <class T> Dual<T> cos(const Dual<T>& x) { return {cos(x.v), -(x.d * sin(x.v))}; }
template <class T> Dual<T> tan(const Dual<T>& x) {
    T t = tan(x.v);
    return {t, x.d * (T(1) + t * t)};
}
template <class T> Dual<T> exp(const Dual<T>& x) {
    T e = exp(x.v);
    return {e, x.d * e};
}
template <class T> Dual<T> log(const Dual<T>& x) { return {log(x.v), x.d / x.v}; }
template <class T> Dual<T> sqrt(const Dual<T>& x) {
    T s = sqrt(x.v);
    return {s, x.d / (T(2) * s)};
}
template <class T> Dual<T> sinh(const Dual<T>& x) { return {sinh(x.v), x.d * cosh(x.v)}; }
template <class T> Dual<T> cosh(const Dual<T>& x) { return {cosh(x.v), x.d * sinh(x.v)}; }
template <class T> Dual<T> tanh(const Dual<T>& x) {
    T t = tanh(x.v);
    return {t, x.d * (T(1) - t * t)};
}
template <class T> Dual<T> atan(const Dual<T>& x) { return {atan(x.v), x.d / (T(1) + x.v * x.v)}; }
template <class T> Dual<T> asin(const Dual<T>& x) {
    return {asin(x.v), x.d / sqrt(T(1) - x.v * x.v)};
}
template <class T> Dual<T> asinh(const Dual<T>& x) {
    return {asinh(x.v), x.d / sqrt(T(1) + x.v * x.v)};
}

template <class T> T square(const T& x) { return x * x; }

// Seeding helpers.
template <class T> Dual<T> variable(const T& x) { return {x, T(1)}; }
template <class T> Dual<T> constant(const T& x) { return {x, T(0)}; }

}  // namespace dsusy
