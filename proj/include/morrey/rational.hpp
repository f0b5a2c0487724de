#pragma once

// Exact rational scalar extended with a +infinity tag. Classification logic
// compares smoothness offsets and integrability thresholds exactly; floating
// point appears only in the norm engines.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace morrey {

using BigRational = boost::multiprecision::cpp_rational;

class ExtRational {
public:
    ExtRational() = default;
    ExtRational(int v) : v_(v) {}                     // NOLINT: implicit by design
    ExtRational(std::int64_t v) : v_(v) {}            // NOLINT
    ExtRational(std::int64_t num, std::int64_t den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        v_ = BigRational(num, den);
    }
    explicit ExtRational(BigRational v) : v_(std::move(v)) {}

    static ExtRational infinity() {
        ExtRational r;
        r.inf_ = true;
        return r;
    }

    // Accepts "a", "a/b", "-a/b", or "inf".
    static ExtRational parse(const std::string& text);

    bool is_inf() const { return inf_; }
    bool is_finite() const { return !inf_; }

    const BigRational& value() const {
        if (inf_) throw std::domain_error("finite value of infinity requested");
        return v_;
    }

    int sign() const {
        if (inf_) return 1;
        return v_.sign();
    }

    double to_double() const {
        if (inf_) return std::numeric_limits<double>::infinity();
        return v_.convert_to<double>();
    }

    std::string str() const {
        if (inf_) return "inf";
        return v_.str();
    }

    // 1/x with the boundary conventions used throughout: 1/inf = 0, 1/0 = inf.
    ExtRational reciprocal() const {
        if (inf_) return ExtRational(0);
        if (v_.is_zero()) return infinity();
        if (v_ < 0) throw std::domain_error("reciprocal of negative value");
        return ExtRational(BigRational(1) / v_);
    }

    friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
        if (a.inf_ || b.inf_) return infinity();
        return ExtRational(a.v_ + b.v_);
    }
    friend ExtRational operator-(const ExtRational& a, const ExtRational& b) {
        if (b.inf_) throw std::domain_error("subtraction of infinity");
        if (a.inf_) return infinity();
        return ExtRational(a.v_ - b.v_);
    }
    friend ExtRational operator*(const ExtRational& a, const ExtRational& b) {
        if (a.inf_ || b.inf_) {
            const ExtRational& fin = a.inf_ ? b : a;
            if (fin.is_inf() || fin.sign() > 0) return infinity();
            throw std::domain_error("indeterminate or negative product with infinity");
        }
        return ExtRational(a.v_ * b.v_);
    }
    friend ExtRational operator/(const ExtRational& a, const ExtRational& b) {
        if (a.inf_ && b.inf_) throw std::domain_error("inf/inf requires the ratio convention");
        if (b.inf_) return ExtRational(0);
        if (a.inf_) {
            if (b.sign() <= 0) throw std::domain_error("division of infinity by non-positive value");
            return infinity();
        }
        if (b.v_.is_zero()) throw std::domain_error("division by zero");
        return ExtRational(a.v_ / b.v_);
    }
    ExtRational operator-() const {
        if (inf_) throw std::domain_error("negation of infinity");
        return ExtRational(-v_);
    }

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
        return a.v_ == b.v_;
    }
    friend bool operator!=(const ExtRational& a, const ExtRational& b) { return !(a == b); }
    friend bool operator<(const ExtRational& a, const ExtRational& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator>(const ExtRational& a, const ExtRational& b) { return b < a; }
    friend bool operator<=(const ExtRational& a, const ExtRational& b) { return !(b < a); }
    friend bool operator>=(const ExtRational& a, const ExtRational& b) { return !(a < b); }

private:
    bool inf_ = false;
    BigRational v_ = 0;
};

inline ExtRational min(const ExtRational& a, const ExtRational& b) { return a < b ? a : b; }
inline ExtRational max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }

// max(x, 0) for finite or infinite x.
inline ExtRational positive_part(const ExtRational& x) {
    return x.sign() > 0 ? x : ExtRational(0);
}

inline ExtRational ExtRational::parse(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF") return infinity();
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return ExtRational(BigRational(boost::multiprecision::cpp_int(text)));
        }
        boost::multiprecision::cpp_int num(text.substr(0, slash));
        boost::multiprecision::cpp_int den(text.substr(slash + 1));
        if (den == 0) throw std::domain_error("rational with zero denominator");
        return ExtRational(BigRational(num, den));
    } catch (const std::runtime_error&) {
        throw std::domain_error("unparseable rational: '" + text + "'");
    }
}

}  // namespace morrey
