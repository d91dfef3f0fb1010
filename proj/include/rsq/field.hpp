#ifndef RSQ_FIELD_HPP
#define RSQ_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace rsq {

/// Precondition violation on otherwise well-formed data.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input (files, identifiers, schemas).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Coefficient field: the rationals, or a prime field F_p with p < 2^31.
class FieldSpec {
  public:
    enum class Kind { Rationals, Prime };

    FieldSpec() = default;
    static FieldSpec rationals()
    {
        FieldSpec f;
        f.kind_ = Kind::Rationals;
        f.p_ = 0;
        return f;
    }
    static FieldSpec prime(std::int64_t p);

    /// Accepts "q" or "fp:P".
    static FieldSpec parse(const std::string& text);

    Kind kind() const { return kind_; }
    bool is_prime_field() const { return kind_ == Kind::Prime; }
    std::int64_t p() const { return p_; }
    std::string str() const;

    bool operator==(const FieldSpec& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

  private:
    Kind kind_ = Kind::Prime;
    std::int64_t p_ = 32003;
};

/// A single field element. Prime-field values are canonical residues in
/// [0, p); rational values are normalized mpq.
class Scalar {
  public:
    Scalar() = default;
    explicit Scalar(FieldSpec f) : f_(f) {}
    Scalar(FieldSpec f, std::int64_t value) : f_(f) { *this = from_int(f, value); }

    static Scalar from_int(FieldSpec f, std::int64_t v);
    static Scalar from_mpq(FieldSpec f, const mpq_class& v);
    /// Parses "n" or "n/d" (reduced into the field).
    static Scalar from_string(FieldSpec f, const std::string& text);

    FieldSpec field() const { return f_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar neg() const;
    Scalar inv() const;  // DomainError on zero

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const;

    /// Prime-field residue (prime fields only).
    std::int64_t fp_value() const { return a_; }
    /// Rational value (rationals only).
    const mpq_class& q_value() const { return q_; }

  private:
    FieldSpec f_;
    std::int64_t a_ = 0;  // residue when prime
    mpq_class q_ = 0;     // value when rational

    void check_same(const Scalar& o) const;
};

std::int64_t fp_add(std::int64_t a, std::int64_t b, std::int64_t p);
std::int64_t fp_sub(std::int64_t a, std::int64_t b, std::int64_t p);
std::int64_t fp_mul(std::int64_t a, std::int64_t b, std::int64_t p);
std::int64_t fp_neg(std::int64_t a, std::int64_t p);
std::int64_t fp_inv(std::int64_t a, std::int64_t p);  // DomainError on zero
std::int64_t fp_reduce(std::int64_t v, std::int64_t p);

}  // namespace rsq

#endif
