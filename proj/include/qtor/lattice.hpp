#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace qtor {

using Delta = boost::rational<std::int64_t>;

struct LatticeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The type A_n^(1) construction needs n odd.
struct EvenRankError : LatticeError {
    using LatticeError::LatticeError;
};

// Element of P: values on h_0..h_n plus the coefficient of delta.
struct Weight {
    std::vector<std::int64_t> h;
    Delta delta{0};

    Weight() = default;
    explicit Weight(std::size_t nodes) : h(nodes, 0) {}
    Weight(std::vector<std::int64_t> hv, Delta d) : h(std::move(hv)), delta(d) {}

    std::int64_t operator()(int i) const { return h.at(static_cast<std::size_t>(i)); }
    std::int64_t level() const;
    bool is_zero() const;

    Weight& operator+=(const Weight& o);
    Weight& operator-=(const Weight& o);
    Weight operator-() const;
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator*(std::int64_t k, const Weight& w);
    friend bool operator==(const Weight& a, const Weight& b) { return a.h == b.h && a.delta == b.delta; }
    friend bool operator<(const Weight& a, const Weight& b) {
        return a.h != b.h ? a.h < b.h : a.delta < b.delta;
    }

    std::string str() const;
};

std::string delta_str(Delta d);       // always "p/q"
Delta parse_delta(const std::string& s);  // accepts "p/q" or "p"

class RootSystem {
public:
    // parity of node i is (i + parity_offset) mod 2
    explicit RootSystem(int n, int parity_offset = 0);
    // parity adapted to the fundamental anchor Y_{l,0} Y_{0,d_l}^{-1}
    static RootSystem for_anchor(int n, int ell) { return RootSystem(n, ell % 2); }

    int n() const { return n_; }
    int nodes() const { return n_ + 1; }
    int r() const { return (n_ - 1) / 2; }
    int parity_offset() const { return off_; }
    int parity(int i) const { return static_cast<int>(((node(i) + off_) % 2 + 2) % 2); }
    int node(std::int64_t i) const { return static_cast<int>(((i % nodes()) + nodes()) % nodes()); }
    int cartan(int i, int j) const;
    int dist(int ell) const;  // d_l = min(l, n+1-l)

    Weight zero() const { return Weight(static_cast<std::size_t>(nodes())); }
    Weight alpha(int i) const;
    Weight Lambda(int i) const;
    Weight varpi(int ell) const;
    Weight delta() const;
    Weight reflect(const Weight& w, int i) const;

    friend bool operator==(const RootSystem& a, const RootSystem& b) {
        return a.n_ == b.n_ && a.off_ == b.off_;
    }

private:
    void check_node(int i) const;
    int n_;
    int off_;
};

}  // namespace qtor
