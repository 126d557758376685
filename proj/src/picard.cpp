#include "dp1/picard.hpp"

#include <algorithm>
#include <sstream>

namespace dp1::picard {

cls canonical_K() {
    return cls{-3, {-1, -1, -1, -1, -1, -1, -1, -1}};
}

int pairing(const cls& x, const cls& y) {
    int s = x.a * y.a;
    for (int i = 0; i < 8; ++i) s -= x.b[i] * y.b[i];
    return s;
}

int self_intersection(const cls& x) { return pairing(x, x); }

bool is_exceptional(const cls& x) {
    return self_intersection(x) == -1 && pairing(x, canonical_K()) == -1;
}

cls cls_add(const cls& x, const cls& y) {
    cls r{x.a + y.a, {}};
    for (int i = 0; i < 8; ++i) r.b[i] = x.b[i] + y.b[i];
    return r;
}

cls cls_sub(const cls& x, const cls& y) {
    cls r{x.a - y.a, {}};
    for (int i = 0; i < 8; ++i) r.b[i] = x.b[i] - y.b[i];
    return r;
}

cls cls_scale(int n, const cls& x) {
    cls r{n * x.a, {}};
    for (int i = 0; i < 8; ++i) r.b[i] = n * x.b[i];
    return r;
}

namespace {

std::vector<cls> generate_exceptional() {
    // one prototype per line coefficient, multiplicities sorted ascending
    const std::array<std::pair<int, std::array<int, 8>>, 7> rows{{
        {0, {-1, 0, 0, 0, 0, 0, 0, 0}},
        {1, {0, 0, 0, 0, 0, 0, 1, 1}},
        {2, {0, 0, 0, 1, 1, 1, 1, 1}},
        {3, {0, 1, 1, 1, 1, 1, 1, 2}},
        {4, {1, 1, 1, 1, 1, 2, 2, 2}},
        {5, {1, 1, 2, 2, 2, 2, 2, 2}},
        {6, {2, 2, 2, 2, 2, 2, 2, 3}},
    }};
    std::vector<cls> out;
    out.reserve(240);
    for (const auto& [a, proto] : rows) {
        std::array<int, 8> b = proto;
        do {
            out.push_back(cls{a, b});
        } while (std::next_permutation(b.begin(), b.end()));
    }
    return out;
}

}  // namespace

const std::vector<cls>& exceptional_classes() {
    static const std::vector<cls> table = generate_exceptional();
    return table;
}

namespace {

const std::map<cls, int>& index_table() {
    static const std::map<cls, int> table = [] {
        std::map<cls, int> t;
        const auto& all = exceptional_classes();
        for (int i = 0; i < static_cast<int>(all.size()); ++i) t[all[i]] = i;
        return t;
    }();
    return table;
}

}  // namespace

int exceptional_index(const cls& x) {
    auto it = index_table().find(x);
    if (it == index_table().end())
        throw not_exceptional("class " + to_string(x) + " is not exceptional");
    return it->second;
}

const cls& exceptional_class(int idx) {
    const auto& all = exceptional_classes();
    if (idx < 0 || idx >= static_cast<int>(all.size()))
        throw dp1_error("exceptional class index out of range");
    return all[idx];
}

cls partner(const cls& x) {
    if (!is_exceptional(x))
        throw not_exceptional("partner is defined for exceptional classes only");
    return cls_sub(cls_scale(-1, x), cls_scale(2, canonical_K()));
}

std::map<int, int> degree_profile(const cls& x) {
    std::map<int, int> out;
    for (const cls& e : exceptional_classes()) ++out[pairing(x, e)];
    return out;
}

int count_joint_profile(const cls& x, const cls& y, int wx, int wy) {
    int n = 0;
    for (const cls& e : exceptional_classes())
        if (pairing(x, e) == wx && pairing(y, e) == wy) ++n;
    return n;
}

root to_root(const cls& x) {
    if (!is_exceptional(x))
        throw not_exceptional("only exceptional classes map to roots here");
    cls s = cls_add(x, canonical_K());
    return root{s.a, s.b};
}

cls from_root(const root& r) {
    return cls_sub(cls{r.a, r.b}, canonical_K());
}

int root_pairing(const root& u, const root& v) {
    return -pairing(cls{u.a, u.b}, cls{v.a, v.b});
}

bool is_root(const root& r) {
    cls c{r.a, r.b};
    return pairing(c, c) == -2 && pairing(c, canonical_K()) == 0;
}

cls strict_transform_class(int degree, const std::array<int, 8>& mults) {
    return cls{degree, mults};
}

cls parse_class(const std::string& text) {
    std::istringstream in(text);
    cls x;
    char sep;
    if (!(in >> x.a >> sep) || sep != ';')
        throw parse_error("bad class '" + text + "'");
    for (int i = 0; i < 8; ++i) {
        if (i && (!(in >> sep) || sep != ','))
            throw parse_error("bad class '" + text + "'");
        if (!(in >> x.b[i])) throw parse_error("bad class '" + text + "'");
    }
    char extra;
    if (in >> extra) throw parse_error("bad class '" + text + "'");
    return x;
}

std::string to_string(const cls& x) {
    std::string s = std::to_string(x.a) + ";";
    for (int i = 0; i < 8; ++i) {
        if (i) s += ",";
        s += std::to_string(x.b[i]);
    }
    return s;
}

}  // namespace dp1::picard
