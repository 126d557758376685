#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dp1/errors.hpp"
#include "dp1/exactnum.hpp"
#include "dp1/picard.hpp"

namespace dp1::plane {

using exactnum::element;
using exactnum::field_ref;

// Unnormalized homogeneous coordinates; used where exact determinant values
// matter (they rescale with the inputs).
using raw_point = std::array<element, 3>;

// Point of the projective plane, normalized so the first nonzero coordinate
// is one; equality is coordinate equality.
struct point {
    std::array<element, 3> x;
    bool operator==(const point& o) const { return x == o.x; }
    bool operator!=(const point& o) const { return !(*this == o); }
};

point make_point(const raw_point& coords);
point make_point(const field_ref& f, long long x, long long y, long long z);
std::string to_string(const point& p);

// Monomials of degree d in x, y, z in decreasing lexicographic order with
// x > y > z, as exponent triples.
const std::vector<std::array<int, 3>>& monomials(int d);
std::string monomial_name(const std::array<int, 3>& m);

// Homogeneous form of degree d with coefficients in the monomial order
// above. Canonical scaling: first nonzero coefficient is one.
struct curve {
    field_ref f;
    int degree = 0;
    std::vector<element> c;
};

curve make_curve(const field_ref& f, int degree, std::vector<element> coeffs);
curve canonicalize(const curve& k);
bool same_curve(const curve& a, const curve& b);  // up to scalar
element eval_curve(const curve& k, const raw_point& p);
element eval_curve(const curve& k, const point& p);
std::string to_string(const curve& k);

// Restriction of a form to the line spanned by a and b: the coefficients of
// the binary form F(s*a + t*b) in s^d, s^(d-1) t, ..., t^d.
std::vector<element> restrict_to_line(const curve& k, const raw_point& a,
                                      const raw_point& b);

// ---------------------------------------------------------------------------
// Determinantal incidence matrices. Rows are monomial evaluations at the
// given points, plus derivative rows for the two larger matrices; the
// determinants rescale with the input coordinates, so callers that compare
// exact values must pass raw coordinates.

using matrix = std::vector<std::vector<element>>;

element det(matrix m);

// 3x3 collinearity matrix.
matrix build_M(const std::vector<raw_point>& pts);
// 6x6 conic matrix.
matrix build_N(const std::vector<raw_point>& pts);
// 10x10 cubic matrix: monomial rows at all eight points and x- and
// z-derivative rows at the last one.
matrix build_L(const std::vector<raw_point>& pts);
// 15x15 quartic matrix: monomial rows at nine points and derivative rows at
// the last three. alpha[i] selects the coordinate (0,1,2 for x,y,z) that is
// NOT differentiated at the i-th designated point; the two derivative rows
// use the remaining coordinates in their natural order.
matrix build_H(const std::vector<raw_point>& pts, const std::array<int, 3>& alpha);

element det_M(const std::vector<raw_point>& pts);
element det_N(const std::vector<raw_point>& pts);
element det_L(const std::vector<raw_point>& pts);
element det_H(const std::vector<raw_point>& pts, const std::array<int, 3>& alpha);

// ---------------------------------------------------------------------------

// Eight labelled points over a common field. Stored leniently; the
// general-position audit reports duplicates instead of refusing them.
struct config {
    field_ref f;
    std::array<point, 8> pts;
};

config make_config(const field_ref& f, const std::array<point, 8>& pts);

struct gp_report {
    bool ok = true;
    std::string reason;        // empty when ok
    std::vector<int> subset;   // offending point indices, 0-based
};

// No repeated points, no collinear triple, no conic through six, no cubic
// through all eight singular at one of them. The cubic condition uses the
// determinant criterion when its caveat holds (nonzero y at the designated
// point, characteristic not 3) and the unconditional rank test otherwise.
gp_report general_position(const config& cfg);

// ---------------------------------------------------------------------------

struct constraint {
    point p;
    int mult = 1;
};

// Basis of the space of degree-d forms meeting all constraints, each
// canonicalized. Multiplicity conditions are imposed characteristic-safely
// by translating the point to (0:0:1) and killing all low-order
// coefficients.
std::vector<curve> interpolation_basis(const field_ref& f, int degree,
                                       const std::vector<constraint>& cons);

// The unique such curve; throws no_curve_error or not_unique_error.
curve interpolate(const field_ref& f, int degree,
                  const std::vector<constraint>& cons);

// The unique cubic through seven points that is singular at the first one.
// Hypotheses checked: the first six points pairwise distinct, no three of
// them collinear, not all six on a conic, and the line through the first
// and last points avoids the five others. The result is verified not to
// contain that line.
curve unique_singular_cubic(const std::array<point, 7>& pts);

// ---------------------------------------------------------------------------

struct curve_or_marker {
    std::optional<curve> crv;
    int blown_index = -1;  // set when the class is one of the E_i
};

// Plane model of the exceptional class c over the configuration: degree
// c.a curve with multiplicity c.b[i] at point i, or the marker for a
// blown-up point. Interpolation failures trigger a general-position
// re-audit and are reported as such.
curve_or_marker exceptional_curve(const config& cfg, const picard::cls& c);

struct concurrency_result {
    int count = 0;
    std::vector<picard::cls> classes;
    bool on_ramification = false;
};

// Number of exceptional classes whose plane model passes through P, the
// classes themselves, and whether they contain a partner pair. When P
// coincides with a configuration point, the matching E_i markers are
// included in the count.
concurrency_result concurrency_count(const config& cfg, const point& P);

// The ten curves attached to the configuration: the line through points 1
// and 2, the line through points 3 and 4, four conics, and four singular
// quartics, in that order.
std::array<curve, 10> ten_curves(const config& cfg);
// Their classes, in the same order.
const std::array<picard::cls, 10>& ten_curve_classes();
// The common point of the two lines.
point line_intersection(const curve& l1, const curve& l2);

// ---------------------------------------------------------------------------

// Weighted-surface parametrization check. Locates rho with rho^2 = rho + 1
// and sigma with (beta + rho^5) sigma^5 = 1 in GF(p^d) for d = 1..max_degree,
// substitutes the parametrization into the defining quintic relation, and
// confirms it vanishes identically.
struct weighted_pair {
    field_ref k;
    element rho;
    element sigma;
};

struct weighted_report {
    std::uint64_t p = 0;
    long long beta = 0;
    std::vector<int> pairs_per_degree;  // [d-1] = pairs found scanning GF(p^d)
    std::vector<weighted_pair> pairs;   // from the largest scanned field
    bool identity_ok = false;
    bool base_point_incident = false;
    int total_pairs = 0;
};

weighted_report verify_weighted_example(std::uint64_t p, long long beta,
                                        unsigned max_degree);

// ---------------------------------------------------------------------------
// Serialization.

// {"field": "<descriptor>", "points": [["x","y","z"], ...]} with exactly
// eight points.
config parse_points_json(const std::string& text);
std::string points_to_json(const config& cfg);
// {"degree": d, "coeffs": {"x^3": "1", ...}}, zero coefficients omitted.
std::string curve_to_json(const curve& k);

}  // namespace dp1::plane
