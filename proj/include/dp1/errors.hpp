#pragma once

#include <stdexcept>
#include <string>

namespace dp1 {

struct dp1_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// descriptor / element / input text that does not parse
struct parse_error : dp1_error {
    using dp1_error::dp1_error;
};

// field construction
struct not_prime_error : dp1_error {
    using dp1_error::dp1_error;
};
struct reducible_error : dp1_error {
    using dp1_error::dp1_error;
};

// arithmetic
struct division_by_zero : dp1_error {
    using dp1_error::dp1_error;
};
struct spec_mismatch : dp1_error {
    using dp1_error::dp1_error;
};

// lattice
struct not_exceptional : dp1_error {
    using dp1_error::dp1_error;
};

// search
struct search_exhausted : dp1_error {
    using dp1_error::dp1_error;
};
struct type_mismatch : dp1_error {
    using dp1_error::dp1_error;
};

// plane geometry
struct bad_arity : dp1_error {
    using dp1_error::dp1_error;
};
struct hypothesis_violated : dp1_error {
    using dp1_error::dp1_error;
};
struct no_curve_error : dp1_error {
    using dp1_error::dp1_error;
};
struct not_unique_error : dp1_error {
    int dimension;
    explicit not_unique_error(int dim, const std::string& msg)
        : dp1_error(msg), dimension(dim) {}
};

// identity checking
struct degenerate_sample : dp1_error {
    using dp1_error::dp1_error;
};
struct nonlinear_in_solve_variable : dp1_error {
    using dp1_error::dp1_error;
};
struct ratio_not_constant : dp1_error {
    using dp1_error::dp1_error;
};

// root search
struct root_not_found : dp1_error {
    using dp1_error::dp1_error;
};

// fixtures
struct fixture_mismatch : dp1_error {
    using dp1_error::dp1_error;
};

}  // namespace dp1
