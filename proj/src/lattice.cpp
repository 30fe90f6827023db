#include "qtor/lattice.hpp"

#include <sstream>

#include "qtor/qcoeff.hpp"

namespace qtor {

std::int64_t Weight::level() const {
    std::int64_t s = 0;
    for (auto x : h) s = add_ck(s, x);
    return s;
}

bool Weight::is_zero() const {
    for (auto x : h)
        if (x) return false;
    return delta == Delta(0);
}

Weight& Weight::operator+=(const Weight& o) {
    if (h.empty()) h.assign(o.h.size(), 0);
    if (o.h.size() != h.size() && !o.h.empty()) throw LatticeError("weights of different rank");
    for (std::size_t k = 0; k < o.h.size(); ++k) h[k] = add_ck(h[k], o.h[k]);
    delta += o.delta;
    return *this;
}

Weight& Weight::operator-=(const Weight& o) { return *this += -o; }

Weight Weight::operator-() const {
    Weight w = *this;
    for (auto& x : w.h) x = -x;
    w.delta = -w.delta;
    return w;
}

Weight operator*(std::int64_t k, const Weight& w) {
    Weight r = w;
    for (auto& x : r.h) x = mul_ck(x, k);
    r.delta *= k;
    return r;
}

std::string delta_str(Delta d) { return std::to_string(d.numerator()) + "/" + std::to_string(d.denominator()); }

Delta parse_delta(const std::string& s) {
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Delta(std::stoll(s));
        std::size_t pos = 0;
        std::int64_t p = std::stoll(s.substr(0, slash), &pos);
        if (pos != slash) throw LatticeError("bad delta: " + s);
        std::int64_t q = std::stoll(s.substr(slash + 1));
        if (q == 0) throw LatticeError("zero denominator in delta: " + s);
        return Delta(p, q);
    } catch (const std::logic_error&) {
        throw LatticeError("bad delta: " + s);
    }
}

std::string Weight::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < h.size(); ++k) os << (k ? "," : "") << h[k];
    os << "; " << delta_str(delta) << ")";
    return os.str();
}

RootSystem::RootSystem(int n, int parity_offset) : n_(n), off_(((parity_offset % 2) + 2) % 2) {
    if (n < 3) throw LatticeError("rank n must be at least 3, got " + std::to_string(n));
    if (n % 2 == 0) throw EvenRankError("rank n must be odd, got " + std::to_string(n));
}

void RootSystem::check_node(int i) const {
    if (i < 0 || i > n_) throw LatticeError("node out of range: " + std::to_string(i));
}

int RootSystem::cartan(int i, int j) const {
    check_node(i);
    check_node(j);
    if (i == j) return 2;
    if (node(i + 1) == j || node(i - 1) == j) return -1;
    return 0;
}

int RootSystem::dist(int ell) const {
    if (ell < 1 || ell > n_) throw LatticeError("ell out of range: " + std::to_string(ell));
    return std::min(ell, n_ + 1 - ell);
}

Weight RootSystem::alpha(int i) const {
    check_node(i);
    Weight w = zero();
    for (int j = 0; j <= n_; ++j) w.h[static_cast<std::size_t>(j)] = cartan(j, i);
    w.delta = (i == 0) ? 1 : 0;
    return w;
}

Weight RootSystem::Lambda(int i) const {
    check_node(i);
    Weight w = zero();
    w.h[static_cast<std::size_t>(i)] = 1;
    return w;
}

Weight RootSystem::varpi(int ell) const {
    if (ell < 1 || ell > n_) throw LatticeError("ell out of range: " + std::to_string(ell));
    return Lambda(ell) - Lambda(0);
}

Weight RootSystem::delta() const {
    Weight w = zero();
    w.delta = 1;
    return w;
}

Weight RootSystem::reflect(const Weight& w, int i) const { return w - w(i) * alpha(i); }

}  // namespace qtor
