#include "qtor/qcoeff.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qtor {

std::int64_t add_ck(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("int64 overflow in addition");
    return r;
}

std::int64_t mul_ck(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("int64 overflow in product");
    return r;
}

static std::int64_t to_i64(const mpz_class& z) {
    if (!z.fits_slong_p()) throw ArithmeticError("coefficient exceeds int64");
    return z.get_si();
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(std::int64_t c) {
    if (c != 0) t_.emplace_back(0, c);
}

LaurentPoly LaurentPoly::mono(std::int64_t coeff, std::int64_t exp) {
    LaurentPoly p;
    if (coeff != 0) p.t_.emplace_back(exp, coeff);
    return p;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> t) {
    std::sort(t.begin(), t.end());
    LaurentPoly p;
    for (auto& [e, c] : t) {
        if (!p.t_.empty() && p.t_.back().first == e)
            p.t_.back().second = add_ck(p.t_.back().second, c);
        else
            p.t_.emplace_back(e, c);
    }
    std::erase_if(p.t_, [](const Term& x) { return x.second == 0; });
    return p;
}

std::int64_t LaurentPoly::min_exp() const {
    if (t_.empty()) throw ArithmeticError("min_exp of zero");
    return t_.front().first;
}

std::int64_t LaurentPoly::max_exp() const {
    if (t_.empty()) throw ArithmeticError("max_exp of zero");
    return t_.back().first;
}

std::int64_t LaurentPoly::coeff(std::int64_t e) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), Term{e, INT64_MIN});
    return (it != t_.end() && it->first == e) ? it->second : 0;
}

std::int64_t LaurentPoly::content() const {
    std::int64_t g = 0;
    for (auto& [e, c] : t_) g = std::gcd(g, c < 0 ? -c : c);
    return g;
}

std::int64_t LaurentPoly::eval_at_one() const {
    std::int64_t s = 0;
    for (auto& [e, c] : t_) s = add_ck(s, c);
    return s;
}

LaurentPoly LaurentPoly::shifted(std::int64_t k) const {
    LaurentPoly p = *this;
    for (auto& [e, c] : p.t_) e = add_ck(e, k);
    return p;
}

LaurentPoly LaurentPoly::scaled(std::int64_t k) const {
    if (k == 0) return {};
    LaurentPoly p = *this;
    for (auto& [e, c] : p.t_) c = mul_ck(c, k);
    return p;
}

LaurentPoly LaurentPoly::divided_by_int(std::int64_t k) const {
    LaurentPoly p = *this;
    for (auto& [e, c] : p.t_) {
        if (c % k != 0) throw ArithmeticError("inexact integer division");
        c /= k;
    }
    return p;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly p = *this;
    for (auto& [e, c] : p.t_) c = -c;
    return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (o.t_.empty()) return *this;
    if (t_.empty()) return *this = o;
    std::vector<Term> r;
    r.reserve(t_.size() + o.t_.size());
    auto a = t_.cbegin();
    auto b = o.t_.cbegin();
    while (a != t_.end() || b != o.t_.end()) {
        if (b == o.t_.end() || (a != t_.end() && a->first < b->first)) {
            r.push_back(*a++);
        } else if (a == t_.end() || b->first < a->first) {
            r.push_back(*b++);
        } else {
            std::int64_t c = add_ck(a->second, b->second);
            if (c != 0) r.emplace_back(a->first, c);
            ++a, ++b;
        }
    }
    t_ = std::move(r);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.t_.empty() || b.t_.empty()) return {};
    if (a.t_.size() == 1) {
        LaurentPoly p = b.scaled(a.t_[0].second);
        return p.shifted(a.t_[0].first);
    }
    if (b.t_.size() == 1) return b * a;
    std::vector<LaurentPoly::Term> r;
    r.reserve(a.t_.size() * b.t_.size());
    for (auto& [ea, ca] : a.t_)
        for (auto& [eb, cb] : b.t_) r.emplace_back(add_ck(ea, eb), mul_ck(ca, cb));
    return LaurentPoly::from_terms(std::move(r));
}

// dense helpers over mpz; index = degree
using ZVec = std::vector<mpz_class>;

static ZVec to_dense(const LaurentPoly& p, std::int64_t shift) {
    ZVec v(static_cast<size_t>(p.max_exp() - shift + 1));
    for (auto& [e, c] : p.terms()) v[static_cast<size_t>(e - shift)] = c;
    return v;
}

static LaurentPoly from_dense(const ZVec& v, std::int64_t shift) {
    std::vector<LaurentPoly::Term> t;
    for (size_t k = 0; k < v.size(); ++k)
        if (v[k] != 0) t.emplace_back(static_cast<std::int64_t>(k) + shift, to_i64(v[k]));
    return LaurentPoly::from_terms(std::move(t));
}

static void trim(ZVec& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

static mpz_class zcontent(const ZVec& v) {
    mpz_class g = 0;
    for (auto& x : v) g = gcd(g, x);
    return g;
}

LaurentPoly LaurentPoly::div_exact(const LaurentPoly& d) const {
    if (d.is_zero()) throw ArithmeticError("division by zero polynomial");
    if (is_zero()) return {};
    if (d.is_monomial()) {
        return divided_by_int(d.t_[0].second).shifted(-d.t_[0].first);
    }
    ZVec a = to_dense(*this, min_exp());
    ZVec b = to_dense(d, d.min_exp());
    if (a.size() < b.size()) throw ArithmeticError("non-exact polynomial division");
    ZVec qv(a.size() - b.size() + 1);
    for (size_t k = qv.size(); k-- > 0;) {
        mpz_class num = a[k + b.size() - 1];
        if (num == 0) continue;
        if (!mpz_divisible_p(num.get_mpz_t(), b.back().get_mpz_t()))
            throw ArithmeticError("non-exact polynomial division");
        mpz_class f = num / b.back();
        qv[k] = f;
        for (size_t j = 0; j < b.size(); ++j) a[k + j] -= f * b[j];
    }
    for (auto& x : a)
        if (x != 0) throw ArithmeticError("non-exact polynomial division");
    return from_dense(qv, min_exp() - d.min_exp());
}

std::string LaurentPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        auto [e, c] = *it;
        if (c < 0)
            os << (first ? "-" : "-");
        else if (!first)
            os << "+";
        std::int64_t a = c < 0 ? -c : c;
        if (e == 0) {
            os << a;
        } else {
            if (a != 1) os << a << "*";
            os << "q";
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

// pseudo-remainder sequence, primitive parts kept at each step
LaurentPoly poly_gcd(const LaurentPoly& pa, const LaurentPoly& pb) {
    if (pa.is_zero()) return pb.is_zero() ? LaurentPoly(0) : LaurentPoly(1);
    if (pb.is_zero()) return LaurentPoly(1);
    ZVec a = to_dense(pa, pa.min_exp());
    ZVec b = to_dense(pb, pb.min_exp());
    if (a.size() < b.size()) std::swap(a, b);
    auto prim = [](ZVec& v) {
        mpz_class g = zcontent(v);
        if (g != 0 && g != 1)
            for (auto& x : v) x /= g;
    };
    prim(a);
    prim(b);
    while (b.size() > 1) {
        // a := prem(a, b)
        while (a.size() >= b.size() && !a.empty()) {
            mpz_class lead = a.back();
            size_t sh = a.size() - b.size();
            for (auto& x : a) x *= b.back();
            for (size_t j = 0; j < b.size(); ++j) a[sh + j] -= lead * b[j];
            trim(a);
        }
        if (a.empty()) {
            a = b;
            b.clear();
            break;
        }
        prim(a);
        std::swap(a, b);
    }
    if (!b.empty()) return LaurentPoly(1);  // constant remainder: coprime
    if (a.back() < 0)
        for (auto& x : a) x = -x;
    return from_dense(a, 0);
}

LaurentPoly qint(std::int64_t l) {
    // q^{l-1} + q^{l-3} + ... + q^{1-l}
    if (l == 0) return {};
    std::int64_t a = l < 0 ? -l : l;
    std::vector<LaurentPoly::Term> t;
    for (std::int64_t k = 0; k < a; ++k) t.emplace_back(a - 1 - 2 * k, 1);
    LaurentPoly p = LaurentPoly::from_terms(std::move(t));
    return l < 0 ? -p : p;
}

LaurentPoly qfactorial(int m) {
    LaurentPoly p(1);
    for (int k = 2; k <= m; ++k) p = p * qint(k);
    return p;
}

LaurentPoly qbinom(int m, int k) {
    if (m < 0 || k < 0 || k > m) throw std::invalid_argument("qbinom: need 0 <= k <= m");
    return qfactorial(m).div_exact(qfactorial(k) * qfactorial(m - k));
}

// ---------------------------------------------------------------- RationalQ

RationalQ::RationalQ(LaurentPoly n, LaurentPoly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw ArithmeticError("RationalQ with zero denominator");
    normalize();
}

void RationalQ::normalize() {
    if (num_.is_zero()) {
        den_ = LaurentPoly(1);
        return;
    }
    std::int64_t k = den_.min_exp();
    if (k != 0) {
        num_ = num_.shifted(-k);
        den_ = den_.shifted(-k);
    }
    if (!den_.is_monomial()) {
        LaurentPoly g = poly_gcd(num_, den_);
        if (!g.is_one() && g.max_exp() > 0) {
            num_ = num_.div_exact(g);
            den_ = den_.div_exact(g);
        }
    }
    std::int64_t c = std::gcd(num_.content(), den_.content());
    if (den_.terms().front().second < 0) c = -c;
    if (c != 1) {
        num_ = num_.divided_by_int(c);
        den_ = den_.divided_by_int(c);
    }
}

RationalQ RationalQ::times_qpow(std::int64_t k) const {
    return RationalQ(num_.shifted(k), den_, Raw{});
}

RationalQ RationalQ::inverse() const {
    if (is_zero()) throw ArithmeticError("inverse of zero");
    return RationalQ(den_, num_);
}

RationalQ RationalQ::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    RationalQ r(1), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

RationalQ RationalQ::operator-() const { return RationalQ(-num_, den_, Raw{}); }

RationalQ operator+(const RationalQ& a, const RationalQ& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        if (a.den_.is_one()) return RationalQ(a.num_ + b.num_, a.den_, RationalQ::Raw{});
        return RationalQ(a.num_ + b.num_, a.den_);
    }
    return RationalQ(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalQ operator-(const RationalQ& a, const RationalQ& b) { return a + (-b); }

RationalQ operator*(const RationalQ& a, const RationalQ& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_one() && b.den_.is_one()) return RationalQ(a.num_ * b.num_, a.den_, RationalQ::Raw{});
    // a unit times anything stays canonical up to a sign fix
    auto unit = [](const RationalQ& x) {
        return x.den_.is_one() && x.num_.is_monomial() &&
               (x.num_.terms()[0].second == 1 || x.num_.terms()[0].second == -1);
    };
    if (unit(a)) return RationalQ(b.num_ * a.num_, b.den_, RationalQ::Raw{});
    if (unit(b)) return RationalQ(a.num_ * b.num_, a.den_, RationalQ::Raw{});
    return RationalQ(a.num_ * b.num_, a.den_ * b.den_);
}

RationalQ operator/(const RationalQ& a, const RationalQ& b) { return a * b.inverse(); }

std::string RationalQ::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

// ---------------------------------------------------------------- series

const RationalQ& QSeries::at(int s) const {
    static const RationalQ zero;
    if (s < 0 || s >= static_cast<int>(c.size())) return zero;
    return c[static_cast<size_t>(s)];
}

QSeries series_of_rational(const ZPoly& num, const ZPoly& den, Dir dir, int order) {
    if (order < 0) throw std::invalid_argument("negative truncation order");
    if (den.empty() || den[0].is_zero())
        throw ArithmeticError("series expansion: constant term of denominator is not invertible");
    QSeries s;
    s.dir = dir;
    s.c.resize(static_cast<size_t>(order) + 1);
    RationalQ inv0 = den[0].inverse();
    for (int k = 0; k <= order; ++k) {
        RationalQ acc = k < static_cast<int>(num.size()) ? num[static_cast<size_t>(k)] : RationalQ();
        for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j)
            acc -= den[static_cast<size_t>(j)] * s.c[static_cast<size_t>(k - j)];
        s.c[static_cast<size_t>(k)] = acc * inv0;
    }
    return s;
}

QSeries series_mul(const QSeries& a, const QSeries& b, int order) {
    QSeries r;
    r.dir = a.dir;
    r.c.resize(static_cast<size_t>(order) + 1);
    for (int k = 0; k <= order; ++k)
        for (int j = 0; j <= k; ++j) r.c[static_cast<size_t>(k)] += a.at(j) * b.at(k - j);
    return r;
}

QSeries series_log(const QSeries& s, int order) {
    if (!s.at(0).is_one()) throw std::invalid_argument("series_log: constant term must be 1");
    // m f_m = m s_m - sum_{k<m} k f_k s_{m-k}
    QSeries f;
    f.dir = s.dir;
    f.c.resize(static_cast<size_t>(order) + 1);
    for (int m = 1; m <= order; ++m) {
        RationalQ acc = s.at(m) * RationalQ(m);
        for (int k = 1; k < m; ++k) acc -= RationalQ(k) * f.c[static_cast<size_t>(k)] * s.at(m - k);
        f.c[static_cast<size_t>(m)] = acc / RationalQ(m);
    }
    return f;
}

QSeries series_exp(const QSeries& f, int order) {
    if (!f.at(0).is_zero()) throw std::invalid_argument("series_exp: constant term must be 0");
    QSeries e;
    e.dir = f.dir;
    e.c.resize(static_cast<size_t>(order) + 1);
    e.c[0] = RationalQ(1);
    for (int m = 1; m <= order; ++m) {
        RationalQ acc;
        for (int k = 1; k <= m; ++k) acc += RationalQ(k) * f.at(k) * e.c[static_cast<size_t>(m - k)];
        e.c[static_cast<size_t>(m)] = acc / RationalQ(m);
    }
    return e;
}

// ---------------------------------------------------------------- cyclotomic

namespace {
std::mutex g_cyclo_mu;
std::map<int, std::vector<std::int64_t>> g_cyclo;
std::string g_cyclo_dir;

std::vector<std::int64_t> compute_cyclotomic(int N) {
    // q^N - 1 divided by Phi_d for every proper divisor d
    LaurentPoly p = LaurentPoly::qpow(N) - LaurentPoly(1);
    for (int d = 1; d < N; ++d) {
        if (N % d) continue;
        const auto& fd = cyclotomic(d);
        std::vector<LaurentPoly::Term> t;
        for (size_t k = 0; k < fd.size(); ++k)
            if (fd[k]) t.emplace_back(static_cast<std::int64_t>(k), fd[k]);
        p = p.div_exact(LaurentPoly::from_terms(t));
    }
    std::vector<std::int64_t> out(static_cast<size_t>(p.max_exp()) + 1, 0);
    for (auto& [e, c] : p.terms()) out[static_cast<size_t>(e)] = c;
    return out;
}
}  // namespace

void set_cyclotomic_cache_dir(const std::string& dir) {
    std::lock_guard<std::mutex> lk(g_cyclo_mu);
    g_cyclo_dir = dir;
}

const std::vector<std::int64_t>& cyclotomic(int N) {
    if (N <= 0) throw std::invalid_argument("cyclotomic: N must be positive");
    {
        std::lock_guard<std::mutex> lk(g_cyclo_mu);
        auto it = g_cyclo.find(N);
        if (it != g_cyclo.end()) return it->second;
    }
    std::vector<std::int64_t> v;
    std::string dir;
    {
        std::lock_guard<std::mutex> lk(g_cyclo_mu);
        dir = g_cyclo_dir;
    }
    std::string path = dir.empty() ? "" : dir + "/phi_" + std::to_string(N) + ".txt";
    if (!path.empty()) {
        std::ifstream in(path);
        std::int64_t x;
        while (in >> x) v.push_back(x);
    }
    if (v.empty()) {
        v = compute_cyclotomic(N);
        if (!path.empty()) {
            std::ofstream out(path);
            for (auto x : v) out << x << ' ';
        }
    }
    std::lock_guard<std::mutex> lk(g_cyclo_mu);
    return g_cyclo.emplace(N, std::move(v)).first->second;
}

CycloElem::CycloElem(int N) : N_(N), c_(cyclotomic(N).size() - 1) {}

CycloElem::CycloElem(int N, std::int64_t c) : CycloElem(N) {
    if (!c_.empty()) c_[0] = c;
}

bool CycloElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpq_class& x) { return x == 0; });
}

void CycloElem::reduce(std::vector<mpq_class> raw) {
    const auto& phi = cyclotomic(N_);
    size_t d = phi.size() - 1;  // Phi_N is monic of degree d
    for (size_t k = raw.size(); k-- > d;) {
        if (raw[k] == 0) continue;
        mpq_class f = raw[k];
        for (size_t j = 0; j <= d; ++j) raw[k - d + j] -= f * phi[j];
    }
    raw.resize(d);
    c_ = std::move(raw);
}

CycloElem CycloElem::from_laurent(const LaurentPoly& p, int N) {
    CycloElem r(N);
    std::vector<mpq_class> raw(static_cast<size_t>(N));
    for (auto& [e, c] : p.terms()) {
        std::int64_t k = ((e % N) + N) % N;
        raw[static_cast<size_t>(k)] += c;
    }
    r.reduce(std::move(raw));
    return r;
}

CycloElem CycloElem::eps_pow(int N, std::int64_t e) { return from_laurent(LaurentPoly::qpow(e), N); }

CycloElem CycloElem::operator-() const {
    CycloElem r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

static void same_root(const CycloElem& a, const CycloElem& b) {
    if (a.order() != b.order()) throw std::invalid_argument("CycloElem: mismatched roots of unity");
}

CycloElem operator+(const CycloElem& a, const CycloElem& b) {
    same_root(a, b);
    CycloElem r = a;
    for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] += b.c_[k];
    return r;
}

CycloElem operator-(const CycloElem& a, const CycloElem& b) { return a + (-b); }

CycloElem operator*(const CycloElem& a, const CycloElem& b) {
    same_root(a, b);
    std::vector<mpq_class> raw(a.c_.size() + b.c_.size());
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) raw[i + j] += a.c_[i] * b.c_[j];
    }
    CycloElem r(a.N_);
    r.reduce(std::move(raw));
    return r;
}

// extended Euclid in Q[q] against Phi_N
CycloElem CycloElem::inverse() const {
    if (is_zero()) throw SpecializationError("inverse of zero at root of unity");
    using QVec = std::vector<mpq_class>;
    auto deg = [](const QVec& v) {
        int d = static_cast<int>(v.size()) - 1;
        while (d >= 0 && v[static_cast<size_t>(d)] == 0) --d;
        return d;
    };
    const auto& phi = cyclotomic(N_);
    QVec r0(phi.begin(), phi.end()), r1 = c_;
    QVec s0{0}, s1{1};
    while (deg(r1) > 0) {
        int d0 = deg(r0), d1 = deg(r1);
        QVec qv(static_cast<size_t>(d0 - d1 + 1));
        QVec rem = r0;
        for (int k = d0 - d1; k >= 0; --k) {
            mpq_class f = rem[static_cast<size_t>(k + d1)] / r1[static_cast<size_t>(d1)];
            qv[static_cast<size_t>(k)] = f;
            for (int j = 0; j <= d1; ++j) rem[static_cast<size_t>(k + j)] -= f * r1[static_cast<size_t>(j)];
        }
        QVec s2(std::max(s0.size(), qv.size() + s1.size()));
        for (size_t k = 0; k < s0.size(); ++k) s2[k] += s0[k];
        for (size_t i = 0; i < qv.size(); ++i)
            for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= qv[i] * s1[j];
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (deg(r1) < 0) throw SpecializationError("element not invertible mod cyclotomic polynomial");
    mpq_class c = r1[0];
    for (auto& x : s1) x /= c;
    CycloElem out(N_);
    out.reduce(std::move(s1));
    return out;
}

CycloElem operator/(const CycloElem& a, const CycloElem& b) { return a * b.inverse(); }

std::string CycloElem::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t k = c_.size(); k-- > 0;) {
        if (c_[k] == 0) continue;
        mpq_class a = abs(c_[k]);
        os << (c_[k] < 0 ? "-" : (first ? "" : "+"));
        if (k == 0 || a != 1) os << a.get_str() << (k ? "*" : "");
        if (k) os << "e" << (k > 1 ? "^" + std::to_string(k) : "");
        first = false;
    }
    return first ? "0" : os.str();
}

CycloElem eval_cyclotomic(const RationalQ& p, int N) {
    CycloElem den = CycloElem::from_laurent(p.den(), N);
    if (den.is_zero())
        throw SpecializationError("denominator " + p.den().str() + " vanishes at a primitive " +
                                  std::to_string(N) + "-th root of unity");
    return CycloElem::from_laurent(p.num(), N) / den;
}

}  // namespace qtor
