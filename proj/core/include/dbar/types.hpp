#ifndef DBAR_TYPES_HPP
#define DBAR_TYPES_HPP

#include <array>
#include <cmath>
#include <complex>

namespace dbar {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// 2x2 complex matrix with the handful of operations the solver needs.
/// Entries are stored row-major: m[0]=a11, m[1]=a12, m[2]=a21, m[3]=a22.
struct Mat2 {
    std::array<Complex, 4> m{};

    static Mat2 identity() { return Mat2{{Complex(1), Complex(0), Complex(0), Complex(1)}}; }
    static Mat2 zero() { return Mat2{}; }

    Complex& operator()(int r, int c) { return m[2 * r + c]; }
    const Complex& operator()(int r, int c) const { return m[2 * r + c]; }

    Mat2& operator+=(const Mat2& o) {
        for (int i = 0; i < 4; ++i) m[i] += o.m[i];
        return *this;
    }
    Mat2& operator-=(const Mat2& o) {
        for (int i = 0; i < 4; ++i) m[i] -= o.m[i];
        return *this;
    }
    Mat2& operator*=(Complex s) {
        for (int i = 0; i < 4; ++i) m[i] *= s;
        return *this;
    }

    friend Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
    friend Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
    friend Mat2 operator*(Mat2 a, Complex s) { return a *= s; }
    friend Mat2 operator*(Complex s, Mat2 a) { return a *= s; }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        Mat2 r;
        r.m[0] = a.m[0] * b.m[0] + a.m[1] * b.m[2];
        r.m[1] = a.m[0] * b.m[1] + a.m[1] * b.m[3];
        r.m[2] = a.m[2] * b.m[0] + a.m[3] * b.m[2];
        r.m[3] = a.m[2] * b.m[1] + a.m[3] * b.m[3];
        return r;
    }

    double frobenius() const {
        double s = 0.0;
        for (const auto& e : m) s += std::norm(e);
        return std::sqrt(s);
    }
};

/// sigma3 = diag(1,-1).
inline Mat2 sigma3() { return Mat2{{Complex(1), Complex(0), Complex(0), Complex(-1)}}; }

/// [sigma3, A] = sigma3*A - A*sigma3; kills the diagonal, doubles the
/// off-diagonal (with a sign flip on the 21 entry).
inline Mat2 sigma3_commutator(const Mat2& a) {
    Mat2 r;
    r(0, 1) = 2.0 * a(0, 1);
    r(1, 0) = -2.0 * a(1, 0);
    return r;
}

}  // namespace dbar

#endif
