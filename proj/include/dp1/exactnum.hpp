#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dp1/errors.hpp"

namespace dp1::exactnum {

using big_int = boost::multiprecision::cpp_int;
using big_rat = boost::multiprecision::cpp_rational;

enum class field_kind { prime, extension, rational };

struct field_spec;
using field_ref = std::shared_ptr<const field_spec>;

// Immutable description of a coefficient field. Prime fields are GF(p),
// extension fields are GF(p)[x]/(modulus) with a distinguished generator a
// (the residue of x), rationals are arbitrary-precision.
struct field_spec {
    field_kind kind;
    std::uint64_t p = 0;                  // characteristic; 0 for rationals
    std::vector<std::uint64_t> modulus;   // little-endian, monic; empty unless extension
    std::string descriptor;               // canonical descriptor string

    std::size_t degree() const { return modulus.empty() ? 1 : modulus.size() - 1; }
    // p^degree as a big integer; 0 means infinite (rationals)
    big_int cardinality() const;
};

// Descriptor grammar: "QQ" | "q:<p>" | "gf:<p>:<monic polynomial in x>".
// Throws parse_error / not_prime_error / reducible_error.
field_ref make_field(const std::string& descriptor);

// Structural compatibility: same kind, characteristic and modulus.
bool same_field(const field_ref& a, const field_ref& b);

// A field element. Exactly one representation is active depending on the
// field kind; all representations are kept canonical so that equality is
// representation equality.
struct element {
    field_ref f;
    std::uint64_t r = 0;            // prime-field residue in [0, p)
    std::vector<std::uint64_t> v;   // extension coordinates, size == degree
    big_rat q;                      // rational value, always reduced

    bool is_zero() const;
    bool is_one() const;
    bool operator==(const element& o) const;
    bool operator!=(const element& o) const { return !(*this == o); }
};

element zero(const field_ref& f);
element one(const field_ref& f);
element from_int(const field_ref& f, long long n);
// The residue of x in an extension field. Throws dp1_error for other kinds.
element generator(const field_ref& f);

element add(const element& a, const element& b);
element sub(const element& a, const element& b);
element mul(const element& a, const element& b);
element neg(const element& a);
// Throw division_by_zero on zero divisor.
element inv(const element& a);
element div(const element& a, const element& b);
// Negative exponents invert first.
element pow(const element& a, long long n);
element pow(const element& a, const big_int& n);

inline element operator+(const element& a, const element& b) { return add(a, b); }
inline element operator-(const element& a, const element& b) { return sub(a, b); }
inline element operator*(const element& a, const element& b) { return mul(a, b); }
inline element operator/(const element& a, const element& b) { return div(a, b); }
inline element operator-(const element& a) { return neg(a); }

// Total order used for canonical sorting (within one field): prime fields by
// residue, extension fields by coordinate vector read from the top, rationals
// by value.
bool element_less(const element& a, const element& b);

// Element grammar: rationals "num[/den]"; prime fields a signed integer;
// extension fields sums of terms like "a^19", "2a", "a^2+a+1", "5".
element parse_element(const field_ref& f, const std::string& text);
std::string to_string(const element& e);

// The i-th element in the canonical enumeration of a finite field (i in
// [0, p^k)): digits of i in base p give the coordinates.
element nth_element(const field_ref& f, const big_int& i);

// Uniform random element of a finite field.
element random_element(const field_ref& f, std::mt19937_64& rng);

// ----------------------------------------------------------------------------
// Univariate polynomials over a field, little-endian coefficients with no
// trailing zeros (the zero polynomial has an empty coefficient vector).

struct polynomial {
    field_ref f;
    std::vector<element> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
};

polynomial make_poly(const field_ref& f, std::vector<element> coeffs);
polynomial poly_from_ints(const field_ref& f, const std::vector<long long>& coeffs);
element eval(const polynomial& g, const element& x);

polynomial p_add(const polynomial& a, const polynomial& b);
polynomial p_sub(const polynomial& a, const polynomial& b);
polynomial p_mul(const polynomial& a, const polynomial& b);
// Division with remainder; divisor must be nonzero.
polynomial p_divmod(const polynomial& a, const polynomial& b, polynomial& rem);
// Monic gcd.
polynomial p_gcd(polynomial a, polynomial b);
polynomial p_powmod(const polynomial& base, const big_int& e, const polynomial& mod);
polynomial derivative(const polynomial& g);

// Frobenius-power irreducibility test over a finite coefficient field.
bool is_irreducible(const polynomial& g);

// All roots in the coefficient field, canonically sorted. Fields of size up
// to scan_bound are scanned exhaustively; larger fields use gcd with x^q - x
// followed by equal-degree splitting (trace splitting in characteristic 2).
std::vector<element> all_roots(const polynomial& g,
                               std::uint64_t scan_bound = 1ull << 20);
std::optional<element> find_root(const polynomial& g,
                                 std::uint64_t scan_bound = 1ull << 20);

// Lift a polynomial with prime-subfield coefficients into fresh extensions
// GF(p^d), d = 1..max_degree (moduli chosen as the lexicographically first
// irreducible of each degree), until a root appears.
struct extension_root {
    field_ref field;
    element root;
};
std::optional<extension_root> find_root_in_extension(
    const polynomial& g, unsigned max_degree,
    std::uint64_t scan_bound = 1ull << 20);

// Lexicographically first monic irreducible of the given degree over GF(p).
polynomial first_irreducible(std::uint64_t p, unsigned degree);

// Map an element of GF(p) (or a prime-subfield element of an extension) into
// another field of the same characteristic. Throws spec_mismatch if the value
// does not lie in the prime subfield.
element lift_to(const field_ref& target, const element& e);

bool is_prime_u64(std::uint64_t n);

}  // namespace dp1::exactnum
