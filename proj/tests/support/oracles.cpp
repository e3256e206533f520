#include "oracles.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {
constexpr mpfr_prec_t kPrecision = 256;
}

double cos_direct(std::uint64_t n, std::uint64_t l, std::uint64_t m)
{
    if (l == 0)
        throw std::domain_error("cos_direct: l must be >= 1");
    mpfr_t x, two_pi;
    mpfr_init2(x, kPrecision);
    mpfr_init2(two_pi, kPrecision);
    mpfr_const_pi(two_pi, MPFR_RNDN);
    mpfr_mul_ui(two_pi, two_pi, 2, MPFR_RNDN);
    // m^2 n is at most ~1e18 for the tested ranges: exact at 256 bits.
    mpfr_set_ui(x, static_cast<unsigned long>(m), MPFR_RNDN);
    mpfr_mul_ui(x, x, static_cast<unsigned long>(m), MPFR_RNDN);
    mpfr_mul_ui(x, x, static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_div_ui(x, x, static_cast<unsigned long>(l), MPFR_RNDN);
    mpfr_mul(x, x, two_pi, MPFR_RNDN);
    mpfr_cos(x, x, MPFR_RNDN);
    const double out = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    mpfr_clear(two_pi);
    return out;
}

double gauss_sum_direct(std::uint64_t n, std::uint64_t l, int m_max)
{
    if (m_max < 0)
        throw std::domain_error("gauss_sum_direct: m_max must be >= 0");
    mpfr_t acc, x, two_pi;
    mpfr_init2(acc, kPrecision);
    mpfr_init2(x, kPrecision);
    mpfr_init2(two_pi, kPrecision);
    mpfr_set_zero(acc, 1);
    mpfr_const_pi(two_pi, MPFR_RNDN);
    mpfr_mul_ui(two_pi, two_pi, 2, MPFR_RNDN);
    for (int m = 0; m <= m_max; ++m) {
        mpfr_set_ui(x, static_cast<unsigned long>(m), MPFR_RNDN);
        mpfr_mul_ui(x, x, static_cast<unsigned long>(m), MPFR_RNDN);
        mpfr_mul_ui(x, x, static_cast<unsigned long>(n), MPFR_RNDN);
        mpfr_div_ui(x, x, static_cast<unsigned long>(l), MPFR_RNDN);
        mpfr_mul(x, x, two_pi, MPFR_RNDN);
        mpfr_cos(x, x, MPFR_RNDN);
        mpfr_add(acc, acc, x, MPFR_RNDN);
    }
    mpfr_div_ui(acc, acc, static_cast<unsigned long>(m_max) + 1, MPFR_RNDN);
    const double out = mpfr_get_d(acc, MPFR_RNDN);
    mpfr_clear(acc);
    mpfr_clear(x);
    mpfr_clear(two_pi);
    return out;
}

std::uint64_t phase_numerator_mod(int k, std::uint64_t n, std::uint64_t l)
{
    if (k < 1)
        throw std::domain_error("phase_numerator_mod: k must be >= 1");
    if (l == 0)
        throw std::domain_error("phase_numerator_mod: l must be >= 1");
    mpz_t num, mod, r;
    mpz_init(num);
    mpz_init(mod);
    mpz_init(r);
    mpz_set_ui(num, static_cast<unsigned long>(n));
    mpz_mul_ui(num, num, 2ul * static_cast<unsigned long>(k) - 1ul);
    if (k % 2 == 1)
        mpz_neg(num, num);
    mpz_set_ui(mod, static_cast<unsigned long>(l));
    mpz_mul_ui(mod, mod, 2ul);
    mpz_mod(r, num, mod);  // GMP's mod is nonnegative for positive modulus
    const std::uint64_t out = mpz_get_ui(r);
    mpz_clear(num);
    mpz_clear(mod);
    mpz_clear(r);
    return out;
}

namespace {

Mat2 multiply(const Mat2& p, const Mat2& q)
{
    return {p.gg * q.gg + p.ge * q.eg, p.gg * q.ge + p.ge * q.ee,
            p.eg * q.gg + p.ee * q.eg, p.eg * q.ge + p.ee * q.ee};
}

} // namespace

Mat2 rotation_exp(double theta, double phi)
{
    // Generator: -i theta/2 [[0, e^{-i phi}], [e^{i phi}, 0]].
    const std::complex<double> i(0.0, 1.0);
    Mat2 gen{0.0, -i * 0.5 * theta * std::exp(-i * phi),
             -i * 0.5 * theta * std::exp(i * phi), 0.0};

    int squarings = 0;
    double scale = std::abs(0.5 * theta);
    while (scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    const double factor = std::ldexp(1.0, -squarings);
    gen.ge *= factor;
    gen.eg *= factor;

    Mat2 result{1.0, 0.0, 0.0, 1.0};
    Mat2 term{1.0, 0.0, 0.0, 1.0};
    for (int order = 1; order <= 24; ++order) {
        term = multiply(term, gen);
        const double inv = 1.0 / order;
        term.gg *= inv;
        term.ge *= inv;
        term.eg *= inv;
        term.ee *= inv;
        result.gg += term.gg;
        result.ge += term.ge;
        result.eg += term.eg;
        result.ee += term.ee;
    }
    for (int s = 0; s < squarings; ++s)
        result = multiply(result, result);
    return result;
}

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    if (n % 3 == 0)
        return n == 3;
    for (std::uint64_t d = 5; d <= n / d; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0)
            return false;
    }
    return true;
}

std::vector<std::uint64_t> divisors_between(std::uint64_t n, std::uint64_t lo,
                                            std::uint64_t hi)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = lo; d <= hi && d >= lo; ++d)
        if (d != 0 && n % d == 0)
            out.push_back(d);
    return out;
}

} // namespace oracle
