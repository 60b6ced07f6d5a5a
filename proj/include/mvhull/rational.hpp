// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mvhull {

using Int = mpz_class;

/// Exact rational number in lowest terms with a positive denominator.
/// Zero is always 0/1. Serialized as "p/q", or "p" when q = 1.
class Rat {
public:
    Rat() = default;
    Rat(long n) : v_(n) {}                      // NOLINT: implicit on purpose
    Rat(int n) : v_(static_cast<long>(n)) {}    // NOLINT
    Rat(const Int& num, const Int& den);
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    static Rat parse(std::string_view text);

    Int num() const { return v_.get_num(); }
    Int den() const { return v_.get_den(); }
    const mpq_class& raw() const noexcept { return v_; }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Int floor() const;
    Int ceil() const;

    std::string str() const;

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
    mpq_class v_;
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }
inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// Rational vector indexed by a finite point set.
class QVector {
public:
    QVector() = default;
    explicit QVector(std::size_t m, const Rat& fill = Rat{}) : e_(m, fill) {}
    QVector(std::initializer_list<Rat> xs) : e_(xs) {}
    explicit QVector(std::vector<Rat> xs) : e_(std::move(xs)) {}

    /// Parses "p/q,p/q,..." with optional surrounding parentheses.
    static QVector parse(std::string_view text);
    static QVector constant(std::size_t m, const Rat& value) { return QVector(m, value); }

    std::size_t size() const noexcept { return e_.size(); }
    bool empty() const noexcept { return e_.empty(); }
    const Rat& operator[](std::size_t i) const { return e_[i]; }
    Rat& operator[](std::size_t i) { return e_[i]; }
    auto begin() const noexcept { return e_.begin(); }
    auto end() const noexcept { return e_.end(); }
    auto begin() noexcept { return e_.begin(); }
    auto end() noexcept { return e_.end(); }
    const std::vector<Rat>& entries() const noexcept { return e_; }

    bool is_zero() const;
    /// Indices i with entry != 0.
    std::vector<std::size_t> support() const;
    /// Least common multiple of entry denominators (1 for the empty vector).
    Int common_denominator() const;

    QVector& operator+=(const QVector& o);
    QVector& operator-=(const QVector& o);
    QVector& operator*=(const Rat& s);

    friend QVector operator+(QVector a, const QVector& b) { return a += b; }
    friend QVector operator-(QVector a, const QVector& b) { return a -= b; }
    friend QVector operator*(const Rat& s, QVector a) { return a *= s; }
    friend QVector operator*(QVector a, const Rat& s) { return a *= s; }

    friend bool operator==(const QVector&, const QVector&) = default;
    friend auto operator<=>(const QVector& a, const QVector& b) { return a.e_ <=> b.e_; }

    /// "(p/q,...)".
    std::string str() const;
    friend std::ostream& operator<<(std::ostream& os, const QVector& v);

private:
    std::vector<Rat> e_;
};

/// Pointwise positive part x ∨ 0.
QVector positive_part(const QVector& v);
/// Pointwise order: true iff a[i] <= b[i] for all i.
bool pointwise_leq(const QVector& a, const QVector& b);
/// True iff every entry lies in [0, 1].
bool in_unit_cube(const QVector& v);

}  // namespace mvhull
