#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qtor {

struct ArithmeticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a coefficient has no value at the chosen root of unity.
struct SpecializationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::int64_t add_ck(std::int64_t a, std::int64_t b);
std::int64_t mul_ck(std::int64_t a, std::int64_t b);

// Sparse element of Z[q, q^-1]. Terms sorted by exponent, no zero coefficients.
class LaurentPoly {
public:
    using Term = std::pair<std::int64_t, std::int64_t>;  // (exponent, coefficient)

    LaurentPoly() = default;
    LaurentPoly(std::int64_t c);  // NOLINT: constants convert implicitly
    static LaurentPoly mono(std::int64_t coeff, std::int64_t exp);
    static LaurentPoly qpow(std::int64_t exp) { return mono(1, exp); }
    static LaurentPoly from_terms(std::vector<Term> t);

    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_monomial() const { return t_.size() == 1; }
    bool is_one() const { return t_.size() == 1 && t_[0].first == 0 && t_[0].second == 1; }
    std::int64_t min_exp() const;
    std::int64_t max_exp() const;
    std::int64_t coeff(std::int64_t e) const;
    std::int64_t content() const;
    std::int64_t eval_at_one() const;

    LaurentPoly shifted(std::int64_t k) const;
    LaurentPoly scaled(std::int64_t c) const;
    LaurentPoly divided_by_int(std::int64_t c) const;  // must be exact
    LaurentPoly div_exact(const LaurentPoly& d) const;  // throws if d does not divide

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.t_ == b.t_; }
    friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) { return a.t_ < b.t_; }

    std::string str() const;

private:
    std::vector<Term> t_;
};

// primitive gcd in Z[q] of two Laurent polynomials (q-power part discarded), leading coeff > 0
LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b);

LaurentPoly qint(std::int64_t l);
LaurentPoly qfactorial(int m);
LaurentPoly qbinom(int m, int k);

// Element of Q(q) kept in canonical form: den has lowest exponent 0 and a
// positive lowest coefficient, num/den coprime, joint integer content 1.
class RationalQ {
public:
    RationalQ() : den_(1) {}
    RationalQ(std::int64_t c) : num_(c), den_(1) {}  // NOLINT
    RationalQ(LaurentPoly p) : num_(std::move(p)), den_(1) {}  // NOLINT
    RationalQ(LaurentPoly n, LaurentPoly d);
    static RationalQ qpow(std::int64_t e) { return RationalQ(LaurentPoly::qpow(e)); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_laurent() const { return den_.is_one(); }
    bool is_one() const { return den_.is_one() && num_.is_one(); }

    RationalQ times_qpow(std::int64_t k) const;
    RationalQ inverse() const;
    RationalQ pow(int e) const;

    RationalQ operator-() const;
    friend RationalQ operator+(const RationalQ& a, const RationalQ& b);
    friend RationalQ operator-(const RationalQ& a, const RationalQ& b);
    friend RationalQ operator*(const RationalQ& a, const RationalQ& b);
    friend RationalQ operator/(const RationalQ& a, const RationalQ& b);
    RationalQ& operator+=(const RationalQ& o) { return *this = *this + o; }
    RationalQ& operator-=(const RationalQ& o) { return *this = *this - o; }
    RationalQ& operator*=(const RationalQ& o) { return *this = *this * o; }
    friend bool operator==(const RationalQ& a, const RationalQ& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::string str() const;

private:
    struct Raw {};
    RationalQ(LaurentPoly n, LaurentPoly d, Raw) : num_(std::move(n)), den_(std::move(d)) {}
    void normalize();
    LaurentPoly num_, den_;
};

enum class Dir { plus, minus };

// Truncated series in w, where w = z (plus) or w = z^-1 (minus).
struct QSeries {
    Dir dir = Dir::plus;
    std::vector<RationalQ> c;  // c[s] multiplies w^s
    int order() const { return static_cast<int>(c.size()) - 1; }
    const RationalQ& at(int s) const;
};

using ZPoly = std::vector<RationalQ>;  // coefficients of w^0, w^1, ...

QSeries series_of_rational(const ZPoly& num, const ZPoly& den, Dir dir, int order);
QSeries series_mul(const QSeries& a, const QSeries& b, int order);
QSeries series_log(const QSeries& s, int order);
QSeries series_exp(const QSeries& s, int order);

// Cyclotomic polynomial Phi_N, ascending integer coefficients. Cached per N.
const std::vector<std::int64_t>& cyclotomic(int N);
void set_cyclotomic_cache_dir(const std::string& dir);

// Element of Q[q]/Phi_N(q), i.e. of Q(eps) for eps a primitive N-th root of unity.
class CycloElem {
public:
    CycloElem() = default;
    explicit CycloElem(int N);
    CycloElem(int N, std::int64_t c);
    static CycloElem from_laurent(const LaurentPoly& p, int N);
    static CycloElem eps_pow(int N, std::int64_t e);

    int order() const { return N_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    bool is_zero() const;

    CycloElem operator-() const;
    friend CycloElem operator+(const CycloElem& a, const CycloElem& b);
    friend CycloElem operator-(const CycloElem& a, const CycloElem& b);
    friend CycloElem operator*(const CycloElem& a, const CycloElem& b);
    friend CycloElem operator/(const CycloElem& a, const CycloElem& b);
    CycloElem& operator+=(const CycloElem& o) { return *this = *this + o; }
    CycloElem inverse() const;
    friend bool operator==(const CycloElem& a, const CycloElem& b) { return a.N_ == b.N_ && a.c_ == b.c_; }

    std::string str() const;

private:
    void reduce(std::vector<mpq_class> raw);
    int N_ = 0;
    std::vector<mpq_class> c_;
};

CycloElem eval_cyclotomic(const RationalQ& p, int N);

}  // namespace qtor
