#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace lcbc {

/// Prime-power field GF(p^n) with a fixed monic irreducible modulus.
/// Elements are stored as integer encodings e = sum coeffs[j] * p^j with
/// coeffs the little-endian polynomial representation; e < p^n always.
/// Construction is deterministic: the modulus is the lexicographically
/// smallest monic irreducible of degree n over GF(p), where candidates are
/// ordered by the integer encoding of their non-leading coefficients.
/// For n = 1 the modulus is the formal polynomial x, i.e. plain mod-p.
class FieldSpec {
public:
    FieldSpec(std::uint64_t p, unsigned n);

    std::uint64_t p() const { return p_; }
    unsigned n() const { return n_; }
    /// q = p^n, the element count. Capped at 2^63.
    std::uint64_t order() const { return order_; }
    /// Non-leading modulus coefficients, little-endian, length n (leading 1 implicit).
    const std::vector<std::uint64_t>& modulus() const { return mod_; }
    /// Integer encoding of the modulus including the leading term.
    std::uint64_t modulus_encoding() const;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t neg(std::uint64_t a) const;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv(std::uint64_t a) const;  // throws on a == 0
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;

    std::vector<std::uint64_t> coeffs(std::uint64_t a) const;
    std::uint64_t from_coeffs(const std::vector<std::uint64_t>& c) const;

    bool same_as(const FieldSpec& other) const {
        return p_ == other.p_ && n_ == other.n_ && mod_ == other.mod_;
    }

private:
    std::uint64_t mul_generic(std::uint64_t a, std::uint64_t b) const;
    void build_tables();

    std::uint64_t p_;
    unsigned n_;
    std::uint64_t order_;
    std::vector<std::uint64_t> mod_;
    // exp/log tables for small extension fields; empty when unused
    std::vector<std::uint64_t> exp_, log_;
};

using Field = std::shared_ptr<const FieldSpec>;

/// Deterministic field construction; throws std::invalid_argument on
/// non-prime p, n < 1, or p^n exceeding the 2^63 element budget.
Field make_field(std::uint64_t p, unsigned n);

using Rng = std::mt19937_64;

/// Uniform draw over all q elements; same seed, same stream.
std::uint64_t sample_uniform(const FieldSpec& f, Rng& rng);

/// Homomorphic embedding GF(p^n) -> GF(p^(n*z)): the source generator maps
/// to the first root of the source modulus in the target, in integer
/// encoding order.
class Embedding {
public:
    Embedding(Field src, Field dst);  // throws on incompatible degrees
    std::uint64_t operator()(std::uint64_t a) const;
    const Field& src() const { return src_; }
    const Field& dst() const { return dst_; }

private:
    Field src_, dst_;
    std::vector<std::uint64_t> beta_pow_;  // beta^0 .. beta^(n-1) in dst
};

}  // namespace lcbc
