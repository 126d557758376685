#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "dp1/errors.hpp"

namespace dp1::picard {

// Divisor class a*L - sum_i b[i]*E_i on the plane blown up in eight points,
// where L is the line class and E_i the exceptional divisors. The
// intersection pairing is a*a' - sum_i b[i]*b'[i]. Default comparison is
// lexicographic on (a, b), which is also the canonical enumeration order.
struct cls {
    int a = 0;
    std::array<int, 8> b{};
    auto operator<=>(const cls&) const = default;
};

// Element of K-perp with self-pairing -2, stored in the same coordinates.
// The lattice pairing on these is the negative of the divisor pairing, so
// roots have norm 2.
struct root {
    int a = 0;
    std::array<int, 8> b{};
    auto operator<=>(const root&) const = default;
};

// The canonical class -3L + E_1 + ... + E_8.
cls canonical_K();

int pairing(const cls& x, const cls& y);
int self_intersection(const cls& x);
// c.c = c.K = -1
bool is_exceptional(const cls& x);

cls cls_add(const cls& x, const cls& y);
cls cls_sub(const cls& x, const cls& y);
cls cls_scale(int n, const cls& x);

// The 240 exceptional classes in canonical order: ascending in the line
// coefficient, then lexicographically in the multiplicity vector.
const std::vector<cls>& exceptional_classes();
// Position of x in the canonical order; throws not_exceptional.
int exceptional_index(const cls& x);
const cls& exceptional_class(int idx);

// The unique exceptional class meeting x with multiplicity three: -x - 2K.
cls partner(const cls& x);

// pairing value -> count over all 240 exceptional classes
std::map<int, int> degree_profile(const cls& x);
// number of exceptional f with f.x = wx and f.y = wy
int count_joint_profile(const cls& x, const cls& y, int wx, int wy);

// x + K; exceptional classes land on norm-2 lattice vectors.
root to_root(const cls& x);
cls from_root(const root& r);
int root_pairing(const root& u, const root& v);
bool is_root(const root& r);

// Class of the strict transform of a plane curve of degree d with
// multiplicity mults[i] at the i-th blown-up point.
cls strict_transform_class(int degree, const std::array<int, 8>& mults);

// Serialization "a;b1,b2,...,b8".
cls parse_class(const std::string& text);
std::string to_string(const cls& x);

}  // namespace dp1::picard
