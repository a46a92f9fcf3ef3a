// Minimal complex type over a generic real scalar (double or DD).
// std::complex is only specified for the builtin floating types, so the
// series kernels use this instead and convert at the API boundary.
#pragma once

#include <cmath>
#include <complex>

#include "thetascope/dd.hpp"

namespace thetascope {

template <class R>
struct Cx {
    R re{};
    R im{};

    constexpr Cx() = default;
    constexpr Cx(R r) : re(r) {}
    constexpr Cx(R r, R i) : re(r), im(i) {}
};

template <class R> inline Cx<R> operator+(Cx<R> a, Cx<R> b) { return {a.re + b.re, a.im + b.im}; }
template <class R> inline Cx<R> operator-(Cx<R> a, Cx<R> b) { return {a.re - b.re, a.im - b.im}; }
template <class R> inline Cx<R> operator-(Cx<R> a) { return {-a.re, -a.im}; }

template <class R> inline Cx<R> operator*(Cx<R> a, Cx<R> b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <class R> inline Cx<R> operator*(Cx<R> a, R s) { return {a.re * s, a.im * s}; }
template <class R> inline Cx<R> operator*(R s, Cx<R> a) { return a * s; }

template <class R> inline Cx<R> operator/(Cx<R> a, R s) { return {a.re / s, a.im / s}; }

template <class R> inline Cx<R> operator/(Cx<R> a, Cx<R> b) {
    R d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

template <class R> inline Cx<R>& operator+=(Cx<R>& a, Cx<R> b) { a = a + b; return a; }
template <class R> inline Cx<R>& operator-=(Cx<R>& a, Cx<R> b) { a = a - b; return a; }
template <class R> inline Cx<R>& operator*=(Cx<R>& a, Cx<R> b) { a = a * b; return a; }

template <class R> inline Cx<R> conj(Cx<R> a) { return {a.re, -a.im}; }

template <class R> inline R norm(Cx<R> a) { return a.re * a.re + a.im * a.im; }

inline double abs(Cx<double> a) { return std::hypot(a.re, a.im); }
inline DD abs(Cx<DD> a) { return sqrt(norm(a)); }

// Scalar-type conversions.
inline double scalar_to_double(double x) { return x; }
inline double scalar_to_double(DD x) { return to_double(x); }

template <class R> inline std::complex<double> to_std(Cx<R> a) {
    return {scalar_to_double(a.re), scalar_to_double(a.im)};
}

inline Cx<double> from_std(std::complex<double> z) { return {z.real(), z.imag()}; }

template <class R> inline Cx<R> widen(std::complex<double> z) { return {R(z.real()), R(z.imag())}; }

// Magnitude as plain double, for bounds and stopping tests.
template <class R> inline double abs_estimate(Cx<R> a) {
    return std::hypot(scalar_to_double(a.re), scalar_to_double(a.im));
}

} // namespace thetascope
