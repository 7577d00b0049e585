#pragma once

// Truncated Taylor series in one variable: c[k] = (1/k!) d^k/da^k.
// Coefficients may themselves be Duals to carry an x-derivative alongside.

#include <cstddef>
#include <vector>

namespace dsusy {

template <class T>
class Jet {
public:
    Jet() = default;
    Jet(std::size_t order, const T& value) : c_(order + 1, T(0.0)) { c_[0] = value; }

    static Jet variable(std::size_t order, const T& value) {
        Jet j(order, value);
        if (order > 0) j.c_[1] = T(1.0);
        return j;
    }

    std::size_t order() const { return c_.size() - 1; }
    const T& operator[](std::size_t k) const { return c_[k]; }
    T& operator[](std::size_t k) { return c_[k]; }

    Jet& operator+=(const Jet& o) {
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) {
        for (auto& v : a.c_) v = -v;
        return a;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(a.order(), T(0.0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) {
            T acc(0.0);
            for (std::size_t j = 0; j <= k; ++j) acc += a.c_[j] * b.c_[k - j];
            r.c_[k] = acc;
        }
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) {
        Jet r(a.order(), T(0.0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) {
            T acc = a.c_[k];
            for (std::size_t j = 1; j <= k; ++j) acc -= b.c_[j] * r.c_[k - j];
            r.c_[k] = acc / b.c_[0];
        }
        return r;
    }

    friend Jet operator+(Jet a, const T& s) { a.c_[0] += s; return a; }
    friend Jet operator+(const T& s, Jet a) { a.c_[0] += s; return a; }
    friend Jet operator-(Jet a, const T& s) { a.c_[0] -= s; return a; }
    friend Jet operator-(const T& s, const Jet& a) { return Jet(a.order(), s) - a; }
    friend Jet operator*(Jet a, const T& s) {
        for (auto& v : a.c_) v *= s;
        return a;
    }
    friend Jet operator*(const T& s, Jet a) { return a * s; }
    friend Jet operator/(Jet a, const T& s) {
        for (auto& v : a.c_) v /= s;
        return a;
    }
    friend Jet operator/(const T& s, const Jet& a) { return Jet(a.order(), s) / a; }

private:
    std::vector<T> c_;
};

/// x^p for integer p >= 0 by repeated squaring.
template <class S>
S int_pow(const S& x, int p, const S& one) {
    S result = one;
    S base = x;
    while (p > 0) {
        if (p & 1) result = result * base;
        base = base * base;
        p >>= 1;
    }
    return result;
}

}  // namespace dsusy
