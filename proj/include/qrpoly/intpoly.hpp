#ifndef QRPOLY_INTPOLY_HPP
#define QRPOLY_INTPOLY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qrpoly/errors.hpp"

namespace qrpoly {

/**
 * Dense univariate polynomial over Z with arbitrary-precision coefficients,
 * stored in ascending order.  The zero polynomial has an empty coefficient
 * vector and degree -1 (standing in for "degree minus infinity").
 */
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<mpz_class> ascending) : c_(std::move(ascending)) { trim(); }

    static IntPoly monomial(const mpz_class& coeff, std::size_t degree) {
        std::vector<mpz_class> v(degree + 1);
        v[degree] = coeff;
        return IntPoly(std::move(v));
    }

    /** 1 + x + ... + x^(p-1), the cyclotomic quotient (x^p - 1)/(x - 1). */
    static IntPoly geometric(std::size_t p) {
        if (p == 0) throw input_error("IntPoly::geometric: p must be positive");
        return IntPoly(std::vector<mpz_class>(p, mpz_class(1)));
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const mpz_class& coeff(std::size_t i) const {
        static const mpz_class zero(0);
        return i < c_.size() ? c_[i] : zero;
    }

    void set_coeff(std::size_t i, const mpz_class& v) {
        if (i >= c_.size()) c_.resize(i + 1);
        c_[i] = v;
        trim();
    }

    const std::vector<mpz_class>& coeffs() const { return c_; }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<mpz_class> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
        return IntPoly(std::move(v));
    }

    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<mpz_class> v(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
        return IntPoly(std::move(v));
    }

    IntPoly operator-() const {
        std::vector<mpz_class> v(c_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = -c_[i];
        return IntPoly(std::move(v));
    }

    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return IntPoly();
        std::vector<mpz_class> v(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
        }
        return IntPoly(std::move(v));
    }

    friend IntPoly operator*(const mpz_class& s, const IntPoly& a) {
        std::vector<mpz_class> v(a.c_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = s * a.c_[i];
        return IntPoly(std::move(v));
    }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

    /** P(-x). */
    IntPoly at_negated_argument() const {
        std::vector<mpz_class> v(c_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = (i % 2 == 0) ? c_[i] : -c_[i];
        return IntPoly(std::move(v));
    }

    /** P(x^2). */
    IntPoly at_squared_argument() const {
        if (is_zero()) return IntPoly();
        std::vector<mpz_class> v(2 * c_.size() - 1);
        for (std::size_t i = 0; i < c_.size(); ++i) v[2 * i] = c_[i];
        return IntPoly(std::move(v));
    }

    /** x^n * P(1/x); requires deg P <= n. */
    IntPoly reversed(std::size_t n) const {
        if (degree() > static_cast<long>(n))
            throw input_error("IntPoly::reversed: degree exceeds the reversal window");
        std::vector<mpz_class> v(n + 1);
        for (std::size_t i = 0; i < c_.size(); ++i) v[n - i] = c_[i];
        return IntPoly(std::move(v));
    }

    /** Renders like "2x^3+x^2-x-2"; the zero polynomial renders as "0". */
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (long d = degree(); d >= 0; --d) {
            const mpz_class& k = c_[static_cast<std::size_t>(d)];
            if (k == 0) continue;
            mpz_class mag = abs(k);
            if (out.empty()) {
                if (k < 0) out += "-";
            } else {
                out += (k < 0) ? "-" : "+";
            }
            bool unit = (mag == 1);
            if (d == 0 || !unit) out += mag.get_str();
            if (d > 0) {
                out += "x";
                if (d > 1) out += "^" + std::to_string(d);
            }
        }
        return out;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<mpz_class> c_;
};

} // namespace qrpoly

#endif // QRPOLY_INTPOLY_HPP
