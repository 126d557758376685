#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dp1/errors.hpp"
#include "dp1/picard.hpp"

namespace dp1::weyl {

// Lattice isometry fixing the canonical class, stored by basis images:
// img[0] is the image of L, img[i] the image of E_i. The group generated by
// the root reflections is all of these, so no element enumeration is ever
// needed.
struct isometry {
    std::array<picard::cls, 9> img;
    bool operator==(const isometry&) const = default;
};

isometry identity();
picard::cls apply(const isometry& w, const picard::cls& x);
// a after b
isometry compose(const isometry& a, const isometry& b);
isometry inverse(const isometry& w);
// preserves the pairing on the basis and fixes K
bool is_isometry(const isometry& w);

// Reflection in a root; throws type_mismatch unless r has norm 2 and is
// orthogonal to K.
picard::cls reflect(const picard::cls& x, const picard::root& r);
isometry reflection(const picard::root& r);

// E1-E2, ..., E7-E8, L-E1-E2-E3
const std::array<picard::root, 8>& simple_roots();

// Random word in the simple reflections, deterministic under the seed.
isometry random_element(std::uint64_t seed, int word_length = 64);

// Orbit of a class under the reflection group, by closure under the simple
// reflections; throws dp1_error if max_size is exceeded.
std::vector<picard::cls> orbit(const picard::cls& start,
                               std::size_t max_size = 100000);

// Find an isometry sending src[i] to dst[i] for every i. Sizes must agree
// (type_mismatch otherwise); returns nullopt when no such isometry exists.
std::optional<isometry> find_isometry(const std::vector<picard::cls>& src,
                                      const std::vector<picard::cls>& dst);

}  // namespace dp1::weyl
