#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dp1/errors.hpp"
#include "dp1/exactnum.hpp"
#include "dp1/plane.hpp"

// Randomized verification of the determinantal identities behind the two
// special point configurations. Each identity compares a determinant built
// from parametrized points with a factored closed form; agreement at n
// uniform samples over GF(p) bounds the false-accept probability by
// n * degree / p.
namespace dp1::identities {

using exactnum::element;
using exactnum::field_ref;

// The two parameter families. key1 points live over (a,b,c,m,u,v); the
// odd-characteristic key2 points over (l,m,s,t,u). The char-2 variant
// carries no free parameters, only a fixed configuration.
enum class family { key1, key2_oddchar, key2_char2 };

inline constexpr int kMaxVars = 6;

// Variable names in storage order. key2 exposes a sixth name "v" for the
// substitution variable used by the phi split.
const std::array<std::string, kMaxVars>& variable_names(family which);

struct param_config {
    family which = family::key1;
    field_ref f;
    std::vector<element> params;
};

// Arity and field checks only; admissibility is per identity.
param_config make_param_config(family which, const field_ref& f,
                               std::vector<element> params);

// ---------------------------------------------------------------------------
// Sparse integer-coefficient polynomials in at most kMaxVars variables.
// The closed forms below are composed from these; evaluation happens in the
// sample field element by element.

struct mpoly {
    struct term {
        long long c = 0;
        std::array<std::int8_t, kMaxVars> e{};
    };
    std::vector<term> terms;  // sorted by exponent tuple, coefficients nonzero
};

mpoly mp_const(long long n);
mpoly mp_var(int idx);
mpoly operator+(const mpoly& a, const mpoly& b);
mpoly operator-(const mpoly& a, const mpoly& b);
mpoly operator*(const mpoly& a, const mpoly& b);
mpoly operator-(const mpoly& a);
mpoly mp_pow(const mpoly& a, int n);
bool is_zero(const mpoly& a);
int total_degree(const mpoly& a);
int degree_in(const mpoly& a, int var);
// Coefficient of var^k as a polynomial in the remaining variables.
mpoly coefficient_of(const mpoly& a, int var, int k);
element eval(const mpoly& a, const field_ref& f,
             const std::vector<element>& vals);
std::string to_string(const mpoly& a, family which);

// ---------------------------------------------------------------------------
// Closed forms. Variable order: key1 (a,b,c,m,u,v), key2 (l,m,s,t,u,v).

const mpoly& key1_alpha();  // a - ac - bc + bm
const mpoly& key1_beta();   // b(a-1)m^2 + b(c-2a)m + a(b+c-1)
const mpoly& key1_gamma();  // bm^3 + (1-bc-c)m^2 + (c-1)^2 m + a(1-c) + c^2 - c
const mpoly& key1_delta();  // cubic in m, linear in a
const mpoly& key1_f1();
const mpoly& key1_f2();
const mpoly& key1_f3();
// -2abm(m-1)^3 (b-1)(a-1)(a+b-1) f1 f2 f3; every coefficient is even, so
// the expression is identically zero in characteristic 2.
const mpoly& key1_expression();

const mpoly& key2_g();   // ls - l - ms - m + 2s
const mpoly& key2_a1();  // (l-1)(u+1) - (m+1)(t-1)
const mpoly& key2_a2();  // (l+1)(u+1) - (m+1)(t+1)
const mpoly& key2_f1();
// Coefficients (a,b,c,d,e,f) of the quadratic factor
// a t^2 + b tu + c u^2 + d t + e u + f of det(N):
//   a = (s+1)(m-1)(m+1),    b = d = -2s(m-1)(l+1),
//   c = (s-1)(l-1)(l+1),    e = 2s(m-1)(l+1),      f = (m-l)g.
const std::array<mpoly, 6>& key2_f2_coefficients();
const mpoly& key2_f2();
const mpoly& key2_gamma_tilde();  // (m-u)(l-1)g + (l-s)(m-1)a1
// The linear-in-t split of f2 after u = v(t-l) + m: f2 = (t-l)(alpha t - beta).
const mpoly& key2_phi_alpha();  // in l, m, s, v
const mpoly& key2_phi_beta();

// ---------------------------------------------------------------------------
// Point builders. Coordinates are returned raw (unnormalized), because the
// determinant identities hold for these exact representatives; projective
// rescaling would change both sides by unit factors.

// Q1..Q8 then P:
//   Q1=(0:1:1)  Q2=(0:1:a)  Q3=(1:0:1)  Q4=(1:0:b)  Q5=(1:1:1)
//   Q6=(1:1:u)  Q7=(m:1:v)  Q8=(m:1:c)  P=(0:0:1)
std::array<plane::raw_point, 9> key1_raw_points(const field_ref& f,
                                                const std::vector<element>& p);
// R1..R8 then P; R3, R4, R7, R8 lie on the conic x^2 + y^2 - z^2 = 2lxy or
// its m-analogue via the tangent-slope parametrization, R2 is the second
// intersection of a derived conic with the line y = 0:
//   R1=(1:0:1)  R5=(0:1:1)  R6=(0:-1:1)  P=(-1:0:1)
std::array<plane::raw_point, 9> key2_raw_points(const field_ref& f,
                                                const std::vector<element>& p);

// Fixed characteristic-2 configuration: the four base points R1=(1:0:1),
// R5=(0:1:0), R6=(0:1:1), P=(1:0:0) and the quadric pencil generators
// z^2 + xz + yz and xy, all of which vanish at every base point.
struct char2_config {
    std::array<plane::point, 4> pts;
    std::array<plane::curve, 2> quadrics;
};
char2_config key2_char2_setup(const field_ref& f);

// ---------------------------------------------------------------------------
// Identity specifications and reports.

enum class mat_kind { conic6, cubic10 };

struct identity_spec {
    std::string name;
    family fam = family::key1;
    mat_kind lhs = mat_kind::cubic10;
    std::vector<int> point_seq;      // indices into the 9-point array
    std::vector<mpoly> rhs_factors;  // right side as a product, kept factored
    std::string rhs_text;            // human-readable factored form
    std::vector<mpoly> exclusions;   // sampled tuples must keep these nonzero
    int degree_bound = 0;            // covers both sides
};

// KEY1-DETL, KEY1-DETLP, KEY2-DETN.
const std::vector<identity_spec>& builtin_identities();
const identity_spec& find_identity(const std::string& name);

element lhs_value(const identity_spec& spec, const param_config& cfg);
element rhs_value(const identity_spec& spec, const param_config& cfg);

struct counterexample {
    int sample_index = 0;
    std::vector<std::string> params;
    std::string lhs;
    std::string rhs;
};

struct report {
    std::string name;
    std::uint64_t prime = 0;
    std::uint64_t seed = 0;
    int samples = 0;
    int passes = 0;
    int failures = 0;
    int degree_bound = 0;
    double error_probability = 0.0;  // samples * degree_bound / prime
    std::uint64_t rejected = 0;      // tuples resampled away
    std::vector<std::string> param_names;
    std::vector<counterexample> counterexamples;
    // Ratio model, filled by the proportionality check.
    bool has_ratio_model = false;
    int alpha_exponent = 0;
    int gamma_exponent = 0;
    std::string ratio_constant;
    bool ok() const { return failures == 0; }
};

std::string report_to_json(const report& r);

// Evaluates both sides of the identity at `samples` admissible uniform
// tuples. Requires p prime and p > 2 * degree bound. Tuples on an excluded
// locus are resampled, at most 10^6 attempts per sample.
report check_identity(const identity_spec& spec, int samples, std::uint64_t p,
                      std::uint64_t seed);

enum class det_target { conic_Q3_to_Q8 };

// For a factor linear in the solve variable: samples the remaining base
// parameters, solves the factor, derives u = -delta/gamma and
// v = -beta/alpha, and asserts the target determinant vanishes. Linearity
// is established by exact coefficient extraction.
report check_vanishing_on_locus(const mpoly& factor, det_target target,
                                int solvefor, int samples, std::uint64_t p,
                                std::uint64_t seed);

// The four algebraic identities tying the key2 quadratic factor together:
// the discriminant double expression, the f2 combination, the gamma-tilde
// combination with its vanishing locus, and the phi split. One report per
// identity, in that order.
std::vector<report> check_combination_identities(int samples, std::uint64_t p,
                                                 std::uint64_t seed);

// Evaluates det(L'') at the derived (u,v) against the closed expression in
// (a,b,c,m) and fits ratio = constant * alpha^i * gamma^j, asserting the
// model across all samples; also checks both sides vanish together on the
// f1 locus.
report check_key1_expression_proportionality(int samples, std::uint64_t p,
                                             std::uint64_t seed);

// Everything above with default sample counts, filtered by family:
// "key1", "key2", or "all".
std::vector<report> run_all(const std::string& which, int samples,
                            std::uint64_t p, std::uint64_t seed);

}  // namespace dp1::identities
