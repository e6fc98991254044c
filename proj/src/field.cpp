#include "lcbc/field.hpp"

#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace lcbc {

namespace {

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// little-endian polynomial helpers over GF(p); vectors may carry high zeros
using Poly = std::vector<std::uint64_t>;

int degree(const Poly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[static_cast<size_t>(i)] != 0) return i;
    return -1;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    return c;
}

std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) {
    // extended Euclid on signed residues
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("not invertible");
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
}

// reduce a mod m where m is monic of degree n (m given WITH leading 1)
void poly_reduce(Poly& a, const Poly& m, std::uint64_t p) {
    int n = degree(m);
    for (int i = degree(a); i >= n; --i) {
        std::uint64_t c = a[static_cast<size_t>(i)];
        if (c == 0) continue;
        a[static_cast<size_t>(i)] = 0;
        for (int j = 0; j < n; ++j) {
            std::uint64_t sub = (c * m[static_cast<size_t>(j)]) % p;
            size_t k = static_cast<size_t>(i - n + j);
            a[k] = (a[k] + p - sub) % p;
        }
    }
    a.resize(static_cast<size_t>(n));
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
    Poly c = poly_mul(a, b, p);
    poly_reduce(c, m, p);
    return c;
}

// x^(p^k) mod m via k successive p-th powers; deg m >= 2 by the caller
Poly frobenius_iter(const Poly& m, std::uint64_t p, unsigned k) {
    int n = degree(m);
    Poly x(static_cast<size_t>(n), 0);
    x[1] = 1;
    for (unsigned it = 0; it < k; ++it) {
        // x <- x^p by square-and-multiply
        Poly base = x;
        Poly acc(static_cast<size_t>(n), 0);
        acc[0] = 1;
        std::uint64_t e = p;
        while (e > 0) {
            if (e & 1) acc = poly_mulmod(acc, base, m, p);
            base = poly_mulmod(base, base, m, p);
            e >>= 1;
        }
        x = acc;
    }
    return x;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    while (degree(b) >= 0) {
        // a mod b with b made monic on the fly
        int db = degree(b);
        std::uint64_t lead_inv = inv_mod_p(b[static_cast<size_t>(db)], p);
        for (int i = degree(a); i >= db; --i) {
            std::uint64_t c = a[static_cast<size_t>(i)];
            if (c == 0) continue;
            std::uint64_t f = (c * lead_inv) % p;
            for (int j = 0; j <= db; ++j) {
                size_t k = static_cast<size_t>(i - db + j);
                a[k] = (a[k] + p - (f * b[static_cast<size_t>(j)]) % p) % p;
            }
        }
        std::swap(a, b);
    }
    return a;
}

bool is_irreducible(const Poly& m, std::uint64_t p) {
    int n = degree(m);
    if (n < 1) return false;
    if (n == 1) return true;
    // x^(p^n) == x mod m
    Poly xn = frobenius_iter(m, p, static_cast<unsigned>(n));
    Poly x(static_cast<size_t>(n), 0);
    x[1] = 1;
    if (xn != x) return false;
    // gcd(x^(p^(n/r)) - x, m) == const for every prime r | n
    int nn = n;
    for (int r = 2; r * r <= nn; ++r) {
        if (nn % r != 0) continue;
        while (nn % r == 0) nn /= r;
        Poly t = frobenius_iter(m, p, static_cast<unsigned>(n / r));
        t[1] = (t[1] + p - 1) % p;
        if (degree(poly_gcd(t, m, p)) > 0) return false;
    }
    if (nn > 1) {
        Poly t = frobenius_iter(m, p, static_cast<unsigned>(n / nn));
        t[1] = (t[1] + p - 1) % p;
        if (degree(poly_gcd(t, m, p)) > 0) return false;
    }
    return true;
}

}  // namespace

FieldSpec::FieldSpec(std::uint64_t p, unsigned n) : p_(p), n_(n) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic is not prime");
    if (n < 1) throw std::invalid_argument("extension degree must be >= 1");
    // coefficient products must fit the 64-bit accumulator
    if (p >= (1ULL << 31)) throw std::invalid_argument("characteristic exceeds the 2^31 budget");
    constexpr std::uint64_t cap = 1ULL << 63;
    std::uint64_t ord = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (ord > cap / p) throw std::invalid_argument("field order exceeds the 2^63 element budget");
        ord *= p;
    }
    order_ = ord;
    if (n_ == 1) {
        mod_ = {0};  // formal modulus x
    } else {
        // scan non-leading coefficient encodings in increasing order
        mod_.assign(n_, 0);
        bool found = false;
        for (std::uint64_t enc = 0; enc < order_; ++enc) {
            Poly cand(n_ + 1, 0);
            std::uint64_t e = enc;
            for (unsigned j = 0; j < n_; ++j) { cand[j] = e % p_; e /= p_; }
            cand[n_] = 1;
            if (is_irreducible(cand, p_)) {
                for (unsigned j = 0; j < n_; ++j) mod_[j] = cand[j];
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("no irreducible modulus found");
    }
    build_tables();
}

std::uint64_t FieldSpec::modulus_encoding() const {
    std::uint64_t e = 1;
    for (unsigned j = 0; j < n_; ++j) e = e * p_;  // leading term p^n
    std::uint64_t acc = 0, pw = 1;
    for (unsigned j = 0; j < n_; ++j) { acc += mod_[j] * pw; pw *= p_; }
    return acc + e;
}

void FieldSpec::build_tables() {
    // exp/log tables pay off only for extension fields of modest size
    if (n_ == 1 || order_ > (1ULL << 16)) return;
    // find a multiplicative generator by testing orders against q-1 factors
    std::uint64_t qm1 = order_ - 1;
    std::vector<std::uint64_t> factors;
    std::uint64_t t = qm1;
    for (std::uint64_t d = 2; d * d <= t; ++d) {
        if (t % d == 0) { factors.push_back(d); while (t % d == 0) t /= d; }
    }
    if (t > 1) factors.push_back(t);
    std::uint64_t g = 0;
    for (std::uint64_t cand = 2; cand < order_; ++cand) {
        bool ok = true;
        for (std::uint64_t f : factors) {
            // cand^((q-1)/f) via generic mul
            std::uint64_t e = qm1 / f, acc = 1, base = cand;
            while (e > 0) {
                if (e & 1) acc = mul_generic(acc, base);
                base = mul_generic(base, base);
                e >>= 1;
            }
            if (acc == 1) { ok = false; break; }
        }
        if (ok) { g = cand; break; }
    }
    exp_.assign(qm1, 0);
    log_.assign(order_, 0);
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < qm1; ++i) {
        exp_[i] = v;
        log_[v] = i;
        v = mul_generic(v, g);
    }
}

std::uint64_t FieldSpec::add(std::uint64_t a, std::uint64_t b) const {
    if (n_ == 1) { std::uint64_t s = a + b; return s >= p_ ? s - p_ : s; }
    std::uint64_t r = 0, pw = 1;
    for (unsigned j = 0; j < n_; ++j) {
        std::uint64_t ca = a % p_, cb = b % p_;
        a /= p_; b /= p_;
        std::uint64_t s = ca + cb; if (s >= p_) s -= p_;
        r += s * pw; pw *= p_;
    }
    return r;
}

std::uint64_t FieldSpec::neg(std::uint64_t a) const {
    if (n_ == 1) return a == 0 ? 0 : p_ - a;
    std::uint64_t r = 0, pw = 1;
    for (unsigned j = 0; j < n_; ++j) {
        std::uint64_t c = a % p_; a /= p_;
        r += (c == 0 ? 0 : p_ - c) * pw; pw *= p_;
    }
    return r;
}

std::uint64_t FieldSpec::sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

std::uint64_t FieldSpec::mul_generic(std::uint64_t a, std::uint64_t b) const {
    if (n_ == 1) return (a * b) % p_;  // p < 2^31.5 by the order cap
    Poly pa(n_), pb(n_);
    std::uint64_t ta = a, tb = b;
    for (unsigned j = 0; j < n_; ++j) { pa[j] = ta % p_; ta /= p_; pb[j] = tb % p_; tb /= p_; }
    Poly m(mod_);
    m.push_back(1);
    Poly c = poly_mulmod(pa, pb, m, p_);
    std::uint64_t r = 0, pw = 1;
    for (unsigned j = 0; j < n_; ++j) { r += c[j] * pw; pw *= p_; }
    return r;
}

std::uint64_t FieldSpec::mul(std::uint64_t a, std::uint64_t b) const {
    if (!exp_.empty()) {
        if (a == 0 || b == 0) return 0;
        std::uint64_t qm1 = order_ - 1;
        std::uint64_t s = log_[a] + log_[b];
        if (s >= qm1) s -= qm1;
        return exp_[s];
    }
    return mul_generic(a, b);
}

std::uint64_t FieldSpec::inv(std::uint64_t a) const {
    if (a == 0) throw std::domain_error("division by zero");
    if (n_ == 1) return inv_mod_p(a, p_);
    if (!exp_.empty()) {
        std::uint64_t qm1 = order_ - 1;
        std::uint64_t l = log_[a];
        return exp_[(qm1 - l) % qm1];
    }
    return pow(a, order_ - 2);
}

std::uint64_t FieldSpec::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t acc = 1, base = a;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::vector<std::uint64_t> FieldSpec::coeffs(std::uint64_t a) const {
    std::vector<std::uint64_t> c(n_);
    for (unsigned j = 0; j < n_; ++j) { c[j] = a % p_; a /= p_; }
    return c;
}

std::uint64_t FieldSpec::from_coeffs(const std::vector<std::uint64_t>& c) const {
    std::uint64_t r = 0, pw = 1;
    for (unsigned j = 0; j < n_ && j < c.size(); ++j) { r += (c[j] % p_) * pw; pw *= p_; }
    return r;
}

Field make_field(std::uint64_t p, unsigned n) {
    // memoized: table construction for large extensions is costly and the
    // result is immutable
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, unsigned>, Field> cache;
    std::lock_guard<std::mutex> lock(mu);
    Field& slot = cache[{p, n}];
    if (!slot) slot = std::make_shared<const FieldSpec>(p, n);
    return slot;
}

std::uint64_t sample_uniform(const FieldSpec& f, Rng& rng) {
    std::uint64_t q = f.order();
    // rejection sampling keeps the draw exactly uniform
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() / q * q;
    std::uint64_t v;
    do { v = rng(); } while (v >= limit);
    return v % q;
}

Embedding::Embedding(Field src, Field dst) : src_(std::move(src)), dst_(std::move(dst)) {
    if (src_->p() != dst_->p() || dst_->n() % src_->n() != 0)
        throw std::invalid_argument("incompatible embedding degrees");
    unsigned n = src_->n();
    // first root of the source modulus in the target, by integer encoding
    std::uint64_t beta = 0;
    bool found = false;
    for (std::uint64_t cand = 0; cand < dst_->order(); ++cand) {
        // evaluate x^n + sum mod_j x^j at cand inside dst
        std::uint64_t acc = dst_->pow(cand, n);
        std::uint64_t pw = 1;
        for (unsigned j = 0; j < n; ++j) {
            acc = dst_->add(acc, dst_->mul(src_->modulus()[j] % dst_->p(), pw));
            pw = dst_->mul(pw, cand);
        }
        if (acc == 0) { beta = cand; found = true; break; }
    }
    if (!found) throw std::logic_error("source modulus has no root in target");
    beta_pow_.assign(n, 1);
    for (unsigned j = 1; j < n; ++j) beta_pow_[j] = dst_->mul(beta_pow_[j - 1], beta);
}

std::uint64_t Embedding::operator()(std::uint64_t a) const {
    std::uint64_t r = 0;
    unsigned n = src_->n();
    std::uint64_t p = src_->p();
    for (unsigned j = 0; j < n; ++j) {
        std::uint64_t c = a % p; a /= p;
        if (c != 0) r = dst_->add(r, dst_->mul(c, beta_pow_[j]));
    }
    return r;
}

}  // namespace lcbc
