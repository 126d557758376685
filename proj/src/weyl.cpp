#include "dp1/weyl.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

namespace dp1::weyl {

using picard::cls;
using picard::root;

namespace {

cls basis_cls(int i) {
    // i = 0 is L, i = 1..8 is E_i
    cls c;
    if (i == 0) c.a = 1;
    else c.b[i - 1] = -1;
    return c;
}

int basis_gram(int i, int j) {
    if (i != j) return 0;
    return i == 0 ? 1 : -1;
}

}  // namespace

isometry identity() {
    isometry w;
    for (int i = 0; i < 9; ++i) w.img[i] = basis_cls(i);
    return w;
}

cls apply(const isometry& w, const cls& x) {
    cls out = picard::cls_scale(x.a, w.img[0]);
    for (int i = 0; i < 8; ++i)
        out = picard::cls_sub(out, picard::cls_scale(x.b[i], w.img[i + 1]));
    return out;
}

isometry compose(const isometry& a, const isometry& b) {
    isometry w;
    for (int i = 0; i < 9; ++i) w.img[i] = apply(a, b.img[i]);
    return w;
}

isometry inverse(const isometry& w) {
    // <w^-1(u), v> = <u, w(v)>, and extracting coordinates against the
    // diagonal Gram form folds every sign into the storage convention
    isometry r;
    for (int i = 0; i < 9; ++i) {
        cls bi = basis_cls(i);
        cls col;
        col.a = picard::pairing(bi, w.img[0]);
        for (int j = 1; j < 9; ++j) col.b[j - 1] = picard::pairing(bi, w.img[j]);
        r.img[i] = col;
    }
    return r;
}

bool is_isometry(const isometry& w) {
    for (int i = 0; i < 9; ++i)
        for (int j = i; j < 9; ++j)
            if (picard::pairing(w.img[i], w.img[j]) != basis_gram(i, j))
                return false;
    return apply(w, picard::canonical_K()) == picard::canonical_K();
}

cls reflect(const cls& x, const root& r) {
    if (!picard::is_root(r))
        throw type_mismatch("reflection requires a norm-two vector orthogonal to K");
    cls rc{r.a, r.b};
    return picard::cls_add(x, picard::cls_scale(picard::pairing(x, rc), rc));
}

isometry reflection(const root& r) {
    isometry w;
    for (int i = 0; i < 9; ++i) w.img[i] = reflect(basis_cls(i), r);
    return w;
}

const std::array<root, 8>& simple_roots() {
    static const std::array<root, 8> roots = [] {
        std::array<root, 8> rs{};
        for (int i = 0; i < 7; ++i) {
            rs[i].b[i] = -1;
            rs[i].b[i + 1] = 1;
        }
        rs[7].a = 1;
        rs[7].b[0] = rs[7].b[1] = rs[7].b[2] = 1;
        return rs;
    }();
    return roots;
}

isometry random_element(std::uint64_t seed, int word_length) {
    std::mt19937_64 rng(seed ^ 0xa0761d6478bd642full);
    isometry w = identity();
    const auto& roots = simple_roots();
    for (int i = 0; i < word_length; ++i)
        w = compose(reflection(roots[rng() % 8]), w);
    return w;
}

std::vector<cls> orbit(const cls& start, std::size_t max_size) {
    std::set<cls> seen{start};
    std::deque<cls> todo{start};
    const auto& roots = simple_roots();
    while (!todo.empty()) {
        cls c = todo.front();
        todo.pop_front();
        for (const auto& r : roots) {
            cls d = reflect(c, r);
            if (seen.insert(d).second) {
                if (seen.size() > max_size)
                    throw dp1_error("orbit exceeded the size bound");
                todo.push_back(d);
            }
        }
    }
    return std::vector<cls>(seen.begin(), seen.end());
}

namespace {

struct basis_search {
    const std::vector<cls>& src;
    const std::vector<cls>& dst;
    std::array<cls, 8> chosen{};
    std::optional<isometry> result;

    bool descend(int level) {
        if (level == 8) {
            cls sum;
            for (const auto& c : chosen) sum = picard::cls_add(sum, c);
            cls num = picard::cls_sub(sum, picard::canonical_K());
            if (num.a % 3) return false;
            for (int i = 0; i < 8; ++i)
                if (num.b[i] % 3) return false;
            isometry w;
            w.img[0].a = num.a / 3;
            for (int i = 0; i < 8; ++i) w.img[0].b[i] = num.b[i] / 3;
            for (int i = 0; i < 8; ++i) w.img[i + 1] = chosen[i];
            if (!is_isometry(w)) return false;
            for (std::size_t j = 0; j < src.size(); ++j)
                if (apply(w, src[j]) != dst[j]) return false;
            result = w;
            return true;
        }
        cls ei = basis_cls(level + 1);
        for (const auto& c : picard::exceptional_classes()) {
            bool ok = true;
            for (std::size_t j = 0; j < src.size() && ok; ++j)
                if (picard::pairing(c, dst[j]) != picard::pairing(ei, src[j]))
                    ok = false;
            for (int k = 0; k < level && ok; ++k)
                if (picard::pairing(c, chosen[k]) != 0) ok = false;
            if (!ok) continue;
            chosen[level] = c;
            if (descend(level + 1)) return true;
        }
        return false;
    }
};

}  // namespace

std::optional<isometry> find_isometry(const std::vector<cls>& src,
                                      const std::vector<cls>& dst) {
    if (src.size() != dst.size())
        throw type_mismatch("source and target lists differ in length");
    for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t j = i; j < src.size(); ++j)
            if (picard::pairing(src[i], src[j]) != picard::pairing(dst[i], dst[j]))
                return std::nullopt;
    if (src.empty()) return identity();
    basis_search s{src, dst};
    if (s.descend(0)) return s.result;
    return std::nullopt;
}

}  // namespace dp1::weyl
