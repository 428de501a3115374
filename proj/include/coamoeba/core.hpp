// Exponential polynomials with integer support and the small lattice and
// volume helpers the rest of the library is built on.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coamoeba {

using Int = std::int64_t;
using IntVec = std::vector<Int>;
using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// One monomial c * exp(alpha . z).
struct Term {
    IntVec alpha;
    Complex c;
};

/// f(z) = sum_alpha c_alpha exp(alpha . z) with support A in Z^n.
///
/// Construction validates the support: every exponent has n entries, no
/// exponent repeats, and no coefficient is zero or negligible relative to
/// the largest one (|c| < 1e-14 max|c|). A single term is legal; its Newton
/// polytope is a point and every downstream object is empty.
class ExpPoly {
public:
    ExpPoly(std::size_t n, std::vector<Term> terms);

    std::size_t dim() const { return n_; }
    std::size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Term& term(std::size_t i) const { return terms_[i]; }

    std::vector<IntVec> support() const;

    /// Index of the term with exponent alpha, or size() when absent.
    std::size_t find(std::span<const Int> alpha) const;

    /// e^{alpha . z} f, i.e. the support shifted by `shift`.
    ExpPoly translated(std::span<const Int> shift) const;

    Complex evaluate(std::span<const Complex> z) const;

    /// True when the polytope degenerates to a point.
    bool is_monomial() const { return terms_.size() < 2; }

private:
    std::size_t n_;
    std::vector<Term> terms_;
};

/// v / gcd(|v_1|, ..., |v_n|). Throws std::invalid_argument("zero direction")
/// for v = 0.
IntVec primitive_vector(std::span<const Int> v);

/// Vol_k(B^k) = pi^{k/2} / Gamma(k/2 + 1).
double unit_ball_volume(int k);

Int gcd_of(std::span<const Int> v);
Int dot(std::span<const Int> a, std::span<const Int> b);
double norm(std::span<const Int> v);
bool lex_less(std::span<const Int> a, std::span<const Int> b);
IntVec subtract(std::span<const Int> a, std::span<const Int> b);

/// Reduce an angle to [0, 2pi).
double wrap_angle(double t);
/// Reduce an angle to (-pi, pi].
double centered_angle(double t);

std::string format_vector(std::span<const Int> v);

}  // namespace coamoeba
