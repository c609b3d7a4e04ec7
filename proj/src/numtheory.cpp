#include "riemannphi/numtheory.hpp"

#include <sstream>

namespace rphi {

Rational::Rational(cpp_int num, cpp_int den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    cpp_int g = gcd(num < 0 ? cpp_int(-num) : num, den);
    if (g > 1) { num /= g; den /= g; }
    p = num;
    q = den;
}

real Rational::to_real() const {
    scoped_digits guard(working_digits() + 10);
    real n(p), d(q);
    real r = n / d;
    return r;
}

int jacobi_symbol(const cpp_int& p, const cpp_int& q) {
    if (q <= 0 || q % 2 == 0) throw std::invalid_argument("jacobi_symbol: q must be odd and positive");
    cpp_int a = p % q;
    if (a < 0) a += q;
    cpp_int n = q;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            cpp_int r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

GaussianInt epsilon_factor(const cpp_int& n) {
    cpp_int r = n % 4;
    if (r < 0) r += 4;
    if (r == 1) return GaussianInt{1, 0};
    if (r == 3) return GaussianInt{0, 1};
    throw std::invalid_argument("epsilon_factor: n must be odd");
}

cpp_int mod_inverse(const cpp_int& a, const cpp_int& modulus) {
    cpp_int r0 = modulus, r1 = a % modulus;
    if (r1 < 0) r1 += modulus;
    cpp_int t0 = 0, t1 = 1;
    while (r1 != 0) {
        cpp_int qt = r0 / r1;
        cpp_int r2 = r0 - qt * r1;
        r0 = r1; r1 = r2;
        cpp_int t2 = t0 - qt * t1;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
    if (t0 < 0) t0 += modulus;
    return t0;
}

namespace {

GaussianInt gi_mul(GaussianInt x, GaussianInt y) {
    return GaussianInt{x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

cpp_int normalize_residue(const cpp_int& p, const cpp_int& q) {
    // into [1, q]
    cpp_int r = p % q;
    if (r < 0) r += q;
    if (r == 0) r = q;
    return r;
}

} // namespace

GaussSumValue gauss_sum_closed(const cpp_int& q, const cpp_int& p_in) {
    if (q < 1) throw std::invalid_argument("gauss_sum_closed: q must be >= 1");
    cpp_int p = normalize_residue(p_in, q);
    if (gcd(p, q) != 1) throw std::invalid_argument("gauss_sum_closed: gcd(p, q) != 1");

    GaussSumValue out;
    out.q = q;
    cpp_int qm4 = q % 4;
    if (q % 2 == 1) {
        out.branch = GaussSumValue::Branch::odd_q;
        GaussianInt c = epsilon_factor(q);
        int j = jacobi_symbol(p, q);
        out.a = c.re * j;
        out.b = c.im * j;
    } else if (qm4 == 2) {
        out.branch = GaussSumValue::Branch::q2mod4;
        out.a = out.b = 0;
    } else {
        out.branch = GaussSumValue::Branch::q0mod4;
        GaussianInt eps = epsilon_factor(p);
        GaussianInt c = gi_mul(GaussianInt{1, 1}, GaussianInt{eps.re, -eps.im});
        int j = jacobi_symbol(q, p); // p odd since coprime to even q
        out.a = c.re * j;
        out.b = c.im * j;
    }
    return out;
}

Complex GaussSumValue::to_complex() const {
    real rq = sqrt(real(q));
    return Complex(a * rq, b * rq);
}

std::string GaussSumValue::exact_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    os << "(" << a << (b >= 0 ? "+" : "") << b << "i)*sqrt(" << q << ")";
    return os.str();
}

namespace detail {

std::vector<Complex> unit_root_table(long long q) {
    std::vector<Complex> table;
    table.reserve(static_cast<size_t>(q));
    real invq = real(1) / q;
    for (long long j = 0; j < q; ++j) table.push_back(cis2pi(j * invq));
    return table;
}

ComplexWithError gauss_sum_brute_tab(long long q, long long p, long long m,
                                     std::span<const Complex> table) {
    Complex acc;
    for (long long j = 1; j <= q; ++j) {
        // exact residue (p j^2 + m j) mod q before any trigonometry
        unsigned __int128 jj = static_cast<unsigned __int128>(j);
        unsigned __int128 k = (static_cast<unsigned __int128>(((p % q) + q) % q) * ((jj * jj) % q)) % q;
        k = (k + static_cast<unsigned __int128>(((m % q) + q) % q) * jj) % q;
        acc += table[static_cast<size_t>(k)];
    }
    real est = (4 * real(q) + 8) * working_eps() * sqrt(2 * real(q) + 1);
    return ComplexWithError{acc, est};
}

} // namespace detail

ComplexWithError gauss_sum_brute(long long q, long long p) {
    if (q < 1) throw std::invalid_argument("gauss_sum_brute: q must be >= 1");
    if (gcd(cpp_int(p), cpp_int(q)) != 1) throw std::invalid_argument("gauss_sum_brute: gcd(p, q) != 1");
    auto table = detail::unit_root_table(q);
    return detail::gauss_sum_brute_tab(q, p, 0, table);
}

ComplexWithError gauss_sum_general_brute(long long q, long long p, long long m) {
    if (q < 1) throw std::invalid_argument("gauss_sum_general_brute: q must be >= 1");
    if (gcd(cpp_int(p), cpp_int(q)) != 1) throw std::invalid_argument("gauss_sum_general_brute: gcd(p, q) != 1");
    auto table = detail::unit_root_table(q);
    return detail::gauss_sum_brute_tab(q, p, m, table);
}

GeneralGaussSum gauss_sum_general(const cpp_int& q, const cpp_int& p_in, const cpp_int& m_in) {
    if (q < 1) throw std::invalid_argument("gauss_sum_general: q must be >= 1");
    cpp_int p = normalize_residue(p_in, q);
    if (gcd(p, q) != 1) throw std::invalid_argument("gauss_sum_general: gcd(p, q) != 1");
    cpp_int m = m_in % q;
    if (m < 0) m += q;

    GeneralGaussSum out;
    bool m_even_solvable = (q % 2 == 1) || (m % 2 == 0);
    if (m_even_solvable) {
        // m = 2 m' mod q: S(q,p,m) = e(-p* m'^2 / q) S(q,p)
        cpp_int mprime = (q % 2 == 1) ? cpp_int((m * ((q + 1) / 2)) % q) : cpp_int(m / 2);
        cpp_int pstar = (q == 1) ? cpp_int(0) : mod_inverse(p, q);
        cpp_int k = (pstar * ((mprime * mprime) % q)) % q;
        out.reduction = GeneralGaussSum::Reduction::shift;
        out.rot_num = k;
        out.rot_den = q;
        out.scale = 1;
        out.base = gauss_sum_closed(q, p);
    } else if (q % 4 == 2) {
        // q = 2 mod 4, m odd: S(q,p,m) = (1/2) e(-p* m^2 / 4q) S(4q,p),
        // with p* the inverse of p mod 4q (needed for the exact phase).
        cpp_int q4 = 4 * q;
        cpp_int pstar = mod_inverse(p, q4);
        cpp_int k = (pstar * ((m * m) % q4)) % q4;
        out.reduction = GeneralGaussSum::Reduction::odd_residues;
        out.rot_num = k;
        out.rot_den = q4;
        out.scale = 2;
        out.base = gauss_sum_closed(q4, p);
    } else {
        out.reduction = GeneralGaussSum::Reduction::zero;
        out.rot_num = 0;
        out.rot_den = 1;
        out.scale = 1;
        out.base = GaussSumValue{0, 0, q, GaussSumValue::Branch::q0mod4};
        out.value = Complex();
        out.est_error = 0;
        return out;
    }

    if (out.base.is_zero()) {
        out.value = Complex();
        out.est_error = 0;
        return out;
    }
    scoped_digits guard(working_digits());
    real turns = -real(out.rot_num) / real(out.rot_den);
    Complex rot = cis2pi(turns);
    out.value = rot * out.base.to_complex();
    if (out.scale == 2) out.value = out.value / real(2);
    out.est_error = 16 * working_eps() * sqrt(2 * real(q));
    return out;
}

} // namespace rphi
