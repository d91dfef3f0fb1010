#include "rsq/field.hpp"

namespace rsq {

static bool is_prime_u64(std::int64_t n)
{
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime(std::int64_t p)
{
    if (p < 2 || p >= (std::int64_t(1) << 31) || !is_prime_u64(p))
        throw ParseError("field modulus must be a prime < 2^31, got " + std::to_string(p));
    FieldSpec f;
    f.kind_ = Kind::Prime;
    f.p_ = p;
    return f;
}

FieldSpec FieldSpec::parse(const std::string& text)
{
    if (text == "q" || text == "Q") return rationals();
    if (text.rfind("fp:", 0) == 0) {
        try {
            return prime(std::stoll(text.substr(3)));
        } catch (const std::invalid_argument&) {
            throw ParseError("bad field spec: " + text);
        } catch (const std::out_of_range&) {
            throw ParseError("bad field spec: " + text);
        }
    }
    throw ParseError("bad field spec: " + text + " (expected 'q' or 'fp:P')");
}

std::string FieldSpec::str() const
{
    return kind_ == Kind::Rationals ? "q" : "fp:" + std::to_string(p_);
}

std::int64_t fp_reduce(std::int64_t v, std::int64_t p)
{
    std::int64_t r = v % p;
    return r < 0 ? r + p : r;
}
std::int64_t fp_add(std::int64_t a, std::int64_t b, std::int64_t p) { return (a + b) % p; }
std::int64_t fp_sub(std::int64_t a, std::int64_t b, std::int64_t p) { return fp_reduce(a - b, p); }
std::int64_t fp_mul(std::int64_t a, std::int64_t b, std::int64_t p) { return (a * b) % p; }
std::int64_t fp_neg(std::int64_t a, std::int64_t p) { return a == 0 ? 0 : p - a; }

std::int64_t fp_inv(std::int64_t a, std::int64_t p)
{
    if (a == 0) throw DomainError("division by zero in F_p");
    // extended Euclid
    std::int64_t t = 0, newt = 1, r = p, newr = a;
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    return fp_reduce(t, p);
}

Scalar Scalar::from_int(FieldSpec f, std::int64_t v)
{
    Scalar s(f);
    if (f.is_prime_field())
        s.a_ = fp_reduce(v, f.p());
    else
        s.q_ = mpq_class(static_cast<long>(v));
    return s;
}

Scalar Scalar::from_mpq(FieldSpec f, const mpq_class& v)
{
    Scalar s(f);
    if (f.is_prime_field()) {
        mpz_class p(static_cast<long>(f.p()));
        mpz_class num = v.get_num() % p;
        mpz_class den = v.get_den() % p;
        std::int64_t n = fp_reduce(num.get_si(), f.p());
        std::int64_t d = fp_reduce(den.get_si(), f.p());
        s.a_ = fp_mul(n, fp_inv(d, f.p()), f.p());
    } else {
        s.q_ = v;
        s.q_.canonicalize();
    }
    return s;
}

Scalar Scalar::from_string(FieldSpec f, const std::string& text)
{
    try {
        mpq_class v(text);
        v.canonicalize();
        return from_mpq(f, v);
    } catch (const std::invalid_argument&) {
        throw ParseError("bad scalar: " + text);
    }
}

bool Scalar::is_zero() const
{
    return f_.is_prime_field() ? a_ == 0 : q_ == 0;
}

bool Scalar::is_one() const
{
    return f_.is_prime_field() ? a_ == 1 : q_ == 1;
}

void Scalar::check_same(const Scalar& o) const
{
    if (f_ != o.f_) throw DomainError("mixed fields in scalar arithmetic");
}

Scalar Scalar::operator+(const Scalar& o) const
{
    check_same(o);
    Scalar r(f_);
    if (f_.is_prime_field())
        r.a_ = fp_add(a_, o.a_, f_.p());
    else
        r.q_ = q_ + o.q_;
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const
{
    check_same(o);
    Scalar r(f_);
    if (f_.is_prime_field())
        r.a_ = fp_sub(a_, o.a_, f_.p());
    else
        r.q_ = q_ - o.q_;
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const
{
    check_same(o);
    Scalar r(f_);
    if (f_.is_prime_field())
        r.a_ = fp_mul(a_, o.a_, f_.p());
    else
        r.q_ = q_ * o.q_;
    return r;
}

Scalar Scalar::neg() const
{
    Scalar r(f_);
    if (f_.is_prime_field())
        r.a_ = fp_neg(a_, f_.p());
    else
        r.q_ = -q_;
    return r;
}

Scalar Scalar::inv() const
{
    Scalar r(f_);
    if (f_.is_prime_field()) {
        r.a_ = fp_inv(a_, f_.p());
    } else {
        if (q_ == 0) throw DomainError("division by zero");
        r.q_ = 1 / q_;
    }
    return r;
}

bool Scalar::operator==(const Scalar& o) const
{
    if (f_ != o.f_) return false;
    return f_.is_prime_field() ? a_ == o.a_ : q_ == o.q_;
}

std::string Scalar::str() const
{
    return f_.is_prime_field() ? std::to_string(a_) : q_.get_str();
}

}  // namespace rsq
