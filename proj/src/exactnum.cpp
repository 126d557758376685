#include "dp1/exactnum.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace dp1::exactnum {

namespace {

std::uint64_t addmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
}

std::uint64_t submod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return a >= b ? a - b : a + p - b;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw division_by_zero("division by zero in GF(p)");
    return powmod(a % p, p - 2, p);
}

// --- dense little-endian polynomials over GF(p), raw residues -----------

using pvec = std::vector<std::uint64_t>;

int pv_deg(const pvec& v) {
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
        if (v[i]) return i;
    return -1;
}

void pv_trim(pvec& v) { v.resize(pv_deg(v) + 1); }

pvec pv_mul(const pvec& a, const pvec& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    pvec r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = addmod(r[i + j], mulmod(a[i], b[j], p), p);
    }
    pv_trim(r);
    return r;
}

pvec pv_sub(const pvec& a, const pvec& b, std::uint64_t p) {
    pvec r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0;
        std::uint64_t y = i < b.size() ? b[i] : 0;
        r[i] = submod(x, y, p);
    }
    pv_trim(r);
    return r;
}

// a mod b, with b nonzero; also exposes the quotient
pvec pv_divmod(pvec a, const pvec& b, std::uint64_t p, pvec* quot) {
    int db = pv_deg(b);
    std::uint64_t linv = invmod(b[db], p);
    pv_trim(a);
    pvec q(a.size() > static_cast<std::size_t>(db)
               ? a.size() - db : 0, 0);
    for (int i = pv_deg(a); i >= db; --i) {
        std::uint64_t c = mulmod(a[i], linv, p);
        if (!c) continue;
        q[i - db] = c;
        for (int j = 0; j <= db; ++j)
            a[i - db + j] = submod(a[i - db + j], mulmod(c, b[j], p), p);
    }
    pv_trim(a);
    if (quot) { pv_trim(q); *quot = q; }
    return a;
}

// inverse of a modulo m in GF(p)[x], m irreducible, a nonzero mod m
pvec pv_invmod(const pvec& a, const pvec& m, std::uint64_t p) {
    pvec r0 = m, r1 = a, t0, t1 = {1};
    pv_trim(r1);
    if (r1.empty()) throw division_by_zero("division by zero in extension field");
    while (!r1.empty()) {
        pvec q;
        pvec r2 = pv_divmod(r0, r1, p, &q);
        r0 = std::move(r1);
        r1 = std::move(r2);
        pvec t2 = pv_sub(t0, pv_mul(q, t1, p), p);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    std::uint64_t s = invmod(r0[pv_deg(r0)], p);
    for (auto& c : t0) c = mulmod(c, s, p);
    return pv_divmod(t0, m, p, nullptr);
}

// --- primality ----------------------------------------------------------

bool miller_rabin_once(std::uint64_t n, std::uint64_t a,
                       std::uint64_t d, int s) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// --- generic token scanning ---------------------------------------------

struct scanner {
    const std::string& s;
    std::size_t i = 0;
    explicit scanner(const std::string& str) : s(str) {}
    void skip_ws() { while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i; }
    bool done() { skip_ws(); return i >= s.size(); }
    char peek() { skip_ws(); return i < s.size() ? s[i] : '\0'; }
    bool eat(char c) {
        if (peek() == c) { ++i; return true; }
        return false;
    }
    big_int uint_token() {
        skip_ws();
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) throw parse_error("expected integer in '" + s + "'");
        big_int v(s.substr(i, j - i));
        i = j;
        return v;
    }
};

// Sum of signed terms "c", "c*v^e", "cv^e", "v", "v^e" in the variable
// `var`; returns exponent -> coefficient accumulated over the integers.
std::vector<std::pair<std::uint64_t, big_int>>
parse_terms(const std::string& text, char var) {
    scanner sc(text);
    std::vector<std::pair<std::uint64_t, big_int>> out;
    bool first = true;
    while (!sc.done()) {
        big_int sign = 1;
        if (sc.eat('+')) {
        } else if (sc.eat('-')) {
            sign = -1;
        } else if (!first) {
            throw parse_error("expected '+' or '-' in '" + text + "'");
        }
        first = false;
        big_int coeff = 1;
        bool saw_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
            coeff = sc.uint_token();
            saw_coeff = true;
            sc.eat('*');
        }
        std::uint64_t exp = 0;
        if (sc.peek() == var) {
            sc.eat(var);
            exp = 1;
            if (sc.eat('^')) {
                big_int e = sc.uint_token();
                if (e > 1000000000) throw parse_error("exponent too large in '" + text + "'");
                exp = e.convert_to<std::uint64_t>();
            }
        } else if (!saw_coeff) {
            throw parse_error("expected term in '" + text + "'");
        }
        out.emplace_back(exp, sign * coeff);
    }
    if (out.empty()) throw parse_error("empty expression");
    return out;
}

std::uint64_t reduce_big(const big_int& v, std::uint64_t p) {
    big_int m = v % p;
    if (m < 0) m += p;
    return m.convert_to<std::uint64_t>();
}

pvec parse_pvec(const std::string& text, char var, std::uint64_t p) {
    auto terms = parse_terms(text, var);
    std::uint64_t maxe = 0;
    for (auto& [e, c] : terms) maxe = std::max(maxe, e);
    if (maxe > 4096) throw parse_error("polynomial degree too large");
    std::vector<big_int> acc(maxe + 1, 0);
    for (auto& [e, c] : terms) acc[e] += c;
    pvec out(maxe + 1);
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = reduce_big(acc[i], p);
    pv_trim(out);
    return out;
}

std::string pvec_to_string(const pvec& v, char var) {
    std::string out;
    for (int i = pv_deg(v); i >= 0; --i) {
        if (!v[i]) continue;
        if (!out.empty()) out += '+';
        if (i == 0) {
            out += std::to_string(v[i]);
        } else {
            if (v[i] != 1) out += std::to_string(v[i]);
            out += var;
            if (i > 1) out += '^' + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

void require_same(const field_ref& a, const field_ref& b) {
    if (!same_field(a, b))
        throw spec_mismatch("operands belong to different fields");
}

constexpr std::uint64_t kMaxChar = 1ull << 62;

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull,
                            19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!miller_rabin_once(n, a, d, s)) return false;
    }
    return true;
}

big_int field_spec::cardinality() const {
    if (kind == field_kind::rational) return 0;
    big_int c = 1;
    for (std::size_t i = 0; i < degree(); ++i) c *= p;
    return c;
}

field_ref make_field(const std::string& descriptor) {
    if (descriptor == "QQ") {
        auto s = std::make_shared<field_spec>();
        s->kind = field_kind::rational;
        s->descriptor = "QQ";
        return s;
    }
    auto bad = [&]() -> parse_error {
        return parse_error("bad field descriptor '" + descriptor + "'");
    };
    auto parse_char = [&](const std::string& part) {
        scanner sc(part);
        big_int v = sc.uint_token();
        if (!sc.done()) throw bad();
        if (v >= kMaxChar) throw parse_error("characteristic too large");
        std::uint64_t p = v.convert_to<std::uint64_t>();
        if (!is_prime_u64(p)) throw not_prime_error(
            "characteristic " + part + " is not prime");
        return p;
    };
    if (descriptor.rfind("q:", 0) == 0) {
        std::uint64_t p = parse_char(descriptor.substr(2));
        auto s = std::make_shared<field_spec>();
        s->kind = field_kind::prime;
        s->p = p;
        s->descriptor = "q:" + std::to_string(p);
        return s;
    }
    if (descriptor.rfind("gf:", 0) == 0) {
        std::size_t c2 = descriptor.find(':', 3);
        if (c2 == std::string::npos) throw bad();
        std::uint64_t p = parse_char(descriptor.substr(3, c2 - 3));
        pvec mod = parse_pvec(descriptor.substr(c2 + 1), 'x', p);
        int d = pv_deg(mod);
        if (d < 1) throw parse_error("modulus must have degree at least 1");
        if (mod[d] != 1) throw parse_error("modulus must be monic");
        auto s = std::make_shared<field_spec>();
        s->kind = field_kind::extension;
        s->p = p;
        s->modulus = mod;
        s->descriptor = "gf:" + std::to_string(p) + ":" + pvec_to_string(mod, 'x');
        {
            auto base = std::make_shared<field_spec>();
            base->kind = field_kind::prime;
            base->p = p;
            base->descriptor = "q:" + std::to_string(p);
            std::vector<element> ce;
            for (auto c : mod) {
                element e;
                e.f = base;
                e.r = c;
                ce.push_back(e);
            }
            polynomial mp{base, std::move(ce)};
            if (!is_irreducible(mp))
                throw reducible_error("modulus " + pvec_to_string(mod, 'x') +
                                      " is reducible over GF(" +
                                      std::to_string(p) + ")");
        }
        return s;
    }
    throw bad();
}

bool same_field(const field_ref& a, const field_ref& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    return a->kind == b->kind && a->p == b->p && a->modulus == b->modulus;
}

bool element::is_zero() const {
    switch (f->kind) {
        case field_kind::prime: return r == 0;
        case field_kind::rational: return q == 0;
        case field_kind::extension:
            return std::all_of(v.begin(), v.end(),
                               [](std::uint64_t c) { return c == 0; });
    }
    return false;
}

bool element::is_one() const {
    switch (f->kind) {
        case field_kind::prime: return r == 1 % f->p;
        case field_kind::rational: return q == 1;
        case field_kind::extension: {
            if (v.empty() || v[0] != 1 % f->p) return false;
            for (std::size_t i = 1; i < v.size(); ++i)
                if (v[i]) return false;
            return true;
        }
    }
    return false;
}

bool element::operator==(const element& o) const {
    if (!same_field(f, o.f)) return false;
    switch (f->kind) {
        case field_kind::prime: return r == o.r;
        case field_kind::rational: return q == o.q;
        case field_kind::extension: return v == o.v;
    }
    return false;
}

element zero(const field_ref& f) {
    element e;
    e.f = f;
    if (f->kind == field_kind::extension) e.v.assign(f->degree(), 0);
    return e;
}

element one(const field_ref& f) { return from_int(f, 1); }

element from_int(const field_ref& f, long long n) {
    element e = zero(f);
    switch (f->kind) {
        case field_kind::rational:
            e.q = n;
            break;
        case field_kind::prime: {
            long long m = n % static_cast<long long>(f->p);
            if (m < 0) m += f->p;
            e.r = static_cast<std::uint64_t>(m);
            break;
        }
        case field_kind::extension: {
            long long m = n % static_cast<long long>(f->p);
            if (m < 0) m += f->p;
            e.v[0] = static_cast<std::uint64_t>(m);
            break;
        }
    }
    return e;
}

element generator(const field_ref& f) {
    if (f->kind != field_kind::extension)
        throw dp1_error("field has no distinguished generator");
    element e = zero(f);
    if (f->degree() == 1) {
        // x reduces to -modulus[0]
        e.v[0] = submod(0, f->modulus[0] % f->p, f->p);
    } else {
        e.v[1] = 1;
    }
    return e;
}

element add(const element& a, const element& b) {
    require_same(a.f, b.f);
    element e = a;
    switch (a.f->kind) {
        case field_kind::rational: e.q += b.q; break;
        case field_kind::prime: e.r = addmod(a.r, b.r, a.f->p); break;
        case field_kind::extension:
            for (std::size_t i = 0; i < e.v.size(); ++i)
                e.v[i] = addmod(a.v[i], b.v[i], a.f->p);
            break;
    }
    return e;
}

element sub(const element& a, const element& b) {
    require_same(a.f, b.f);
    element e = a;
    switch (a.f->kind) {
        case field_kind::rational: e.q -= b.q; break;
        case field_kind::prime: e.r = submod(a.r, b.r, a.f->p); break;
        case field_kind::extension:
            for (std::size_t i = 0; i < e.v.size(); ++i)
                e.v[i] = submod(a.v[i], b.v[i], a.f->p);
            break;
    }
    return e;
}

element neg(const element& a) {
    element e = a;
    switch (a.f->kind) {
        case field_kind::rational: e.q = -a.q; break;
        case field_kind::prime: e.r = submod(0, a.r, a.f->p); break;
        case field_kind::extension:
            for (std::size_t i = 0; i < e.v.size(); ++i)
                e.v[i] = submod(0, a.v[i], a.f->p);
            break;
    }
    return e;
}

element mul(const element& a, const element& b) {
    require_same(a.f, b.f);
    element e = a;
    switch (a.f->kind) {
        case field_kind::rational: e.q *= b.q; break;
        case field_kind::prime: e.r = mulmod(a.r, b.r, a.f->p); break;
        case field_kind::extension: {
            std::uint64_t p = a.f->p;
            std::size_t k = a.v.size();
            pvec buf(2 * k - 1, 0);
            for (std::size_t i = 0; i < k; ++i) {
                if (!a.v[i]) continue;
                for (std::size_t j = 0; j < k; ++j)
                    buf[i + j] = addmod(buf[i + j], mulmod(a.v[i], b.v[j], p), p);
            }
            const pvec& m = a.f->modulus;
            for (std::size_t i = 2 * k - 2; i >= k; --i) {
                std::uint64_t c = buf[i];
                if (!c) continue;
                buf[i] = 0;
                for (std::size_t j = 0; j < k; ++j)
                    buf[i - k + j] = submod(buf[i - k + j], mulmod(c, m[j], p), p);
                if (i == k) break;
            }
            buf.resize(k);
            e.v = std::move(buf);
            break;
        }
    }
    return e;
}

element inv(const element& a) {
    if (a.is_zero()) throw division_by_zero("inverse of zero");
    element e = a;
    switch (a.f->kind) {
        case field_kind::rational: e.q = 1 / a.q; break;
        case field_kind::prime: e.r = invmod(a.r, a.f->p); break;
        case field_kind::extension: {
            pvec t = pv_invmod(a.v, a.f->modulus, a.f->p);
            t.resize(a.f->degree(), 0);
            e.v = std::move(t);
            break;
        }
    }
    return e;
}

element div(const element& a, const element& b) { return mul(a, inv(b)); }

element pow(const element& a, long long n) {
    if (n < 0) return pow(inv(a), big_int(-n));
    return pow(a, big_int(n));
}

element pow(const element& a, const big_int& n) {
    if (n < 0) return pow(inv(a), big_int(-n));
    element r = one(a.f);
    if (n == 0) return r;
    element base = a;
    for (int b = static_cast<int>(boost::multiprecision::msb(n)); b >= 0; --b) {
        r = mul(r, r);
        if (boost::multiprecision::bit_test(n, b)) r = mul(r, base);
    }
    return r;
}

bool element_less(const element& a, const element& b) {
    switch (a.f->kind) {
        case field_kind::prime: return a.r < b.r;
        case field_kind::rational: return a.q < b.q;
        case field_kind::extension:
            return std::lexicographical_compare(
                a.v.rbegin(), a.v.rend(), b.v.rbegin(), b.v.rend());
    }
    return false;
}

element parse_element(const field_ref& f, const std::string& text) {
    switch (f->kind) {
        case field_kind::rational: {
            scanner sc(text);
            big_int sign = 1;
            if (sc.eat('-')) sign = -1;
            else sc.eat('+');
            big_int num = sign * sc.uint_token();
            big_int den = 1;
            if (sc.eat('/')) den = sc.uint_token();
            if (!sc.done()) throw parse_error("bad rational '" + text + "'");
            if (den == 0) throw parse_error("zero denominator in '" + text + "'");
            element e = zero(f);
            e.q = big_rat(num, den);
            return e;
        }
        case field_kind::prime: {
            scanner sc(text);
            big_int sign = 1;
            if (sc.eat('-')) sign = -1;
            else sc.eat('+');
            big_int v = sign * sc.uint_token();
            if (!sc.done()) throw parse_error("bad residue '" + text + "'");
            element e = zero(f);
            e.r = reduce_big(v, f->p);
            return e;
        }
        case field_kind::extension: {
            auto terms = parse_terms(text, 'a');
            element acc = zero(f);
            element g = generator(f);
            for (auto& [e, c] : terms) {
                element t = zero(f);
                t.v[0] = reduce_big(c, f->p);
                if (e > 0) t = mul(t, pow(g, big_int(e)));
                acc = add(acc, t);
            }
            return acc;
        }
    }
    throw parse_error("unreachable");
}

std::string to_string(const element& e) {
    switch (e.f->kind) {
        case field_kind::rational: {
            big_int num = boost::multiprecision::numerator(e.q);
            big_int den = boost::multiprecision::denominator(e.q);
            if (den == 1) return num.str();
            return num.str() + "/" + den.str();
        }
        case field_kind::prime:
            return std::to_string(e.r);
        case field_kind::extension:
            return pvec_to_string(e.v, 'a');
    }
    return {};
}

element nth_element(const field_ref& f, const big_int& i) {
    if (f->kind == field_kind::rational)
        throw dp1_error("cannot enumerate an infinite field");
    element e = zero(f);
    big_int n = i;
    if (f->kind == field_kind::prime) {
        e.r = (n % f->p).convert_to<std::uint64_t>();
        return e;
    }
    for (std::size_t d = 0; d < f->degree(); ++d) {
        e.v[d] = (n % f->p).convert_to<std::uint64_t>();
        n /= f->p;
    }
    return e;
}

element random_element(const field_ref& f, std::mt19937_64& rng) {
    if (f->kind == field_kind::rational)
        throw dp1_error("cannot sample uniformly from an infinite field");
    element e = zero(f);
    if (f->kind == field_kind::prime) {
        e.r = rng() % f->p;
        return e;
    }
    for (auto& c : e.v) c = rng() % f->p;
    return e;
}

// ----------------------------------------------------------------------------
// Polynomials

polynomial make_poly(const field_ref& f, std::vector<element> coeffs) {
    for (auto& c : coeffs) require_same(f, c.f);
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    return polynomial{f, std::move(coeffs)};
}

polynomial poly_from_ints(const field_ref& f, const std::vector<long long>& coeffs) {
    std::vector<element> ce;
    ce.reserve(coeffs.size());
    for (long long c : coeffs) ce.push_back(from_int(f, c));
    return make_poly(f, std::move(ce));
}

element eval(const polynomial& g, const element& x) {
    element acc = zero(g.f);
    for (auto it = g.c.rbegin(); it != g.c.rend(); ++it)
        acc = add(mul(acc, x), *it);
    return acc;
}

polynomial p_add(const polynomial& a, const polynomial& b) {
    require_same(a.f, b.f);
    std::vector<element> c(std::max(a.c.size(), b.c.size()), zero(a.f));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < a.c.size()) c[i] = add(c[i], a.c[i]);
        if (i < b.c.size()) c[i] = add(c[i], b.c[i]);
    }
    return make_poly(a.f, std::move(c));
}

polynomial p_sub(const polynomial& a, const polynomial& b) {
    require_same(a.f, b.f);
    std::vector<element> c(std::max(a.c.size(), b.c.size()), zero(a.f));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < a.c.size()) c[i] = add(c[i], a.c[i]);
        if (i < b.c.size()) c[i] = sub(c[i], b.c[i]);
    }
    return make_poly(a.f, std::move(c));
}

polynomial p_mul(const polynomial& a, const polynomial& b) {
    require_same(a.f, b.f);
    if (a.is_zero() || b.is_zero()) return polynomial{a.f, {}};
    std::vector<element> c(a.c.size() + b.c.size() - 1, zero(a.f));
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            c[i + j] = add(c[i + j], mul(a.c[i], b.c[j]));
    }
    return make_poly(a.f, std::move(c));
}

polynomial p_divmod(const polynomial& a, const polynomial& b, polynomial& rem) {
    require_same(a.f, b.f);
    if (b.is_zero()) throw division_by_zero("polynomial division by zero");
    std::vector<element> r = a.c;
    int db = b.degree();
    element linv = inv(b.c[db]);
    std::vector<element> q;
    if (a.degree() >= db) q.assign(a.degree() - db + 1, zero(a.f));
    for (int i = a.degree(); i >= db; --i) {
        if (r[i].is_zero()) continue;
        element c = mul(r[i], linv);
        q[i - db] = c;
        for (int j = 0; j <= db; ++j)
            r[i - db + j] = sub(r[i - db + j], mul(c, b.c[j]));
    }
    rem = make_poly(a.f, std::move(r));
    return make_poly(a.f, std::move(q));
}

polynomial p_gcd(polynomial a, polynomial b) {
    while (!b.is_zero()) {
        polynomial r;
        p_divmod(a, b, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) {
        element s = inv(a.c.back());
        for (auto& c : a.c) c = mul(c, s);
    }
    return a;
}

polynomial p_powmod(const polynomial& base, const big_int& e, const polynomial& mod) {
    polynomial r = make_poly(base.f, {one(base.f)});
    polynomial rem;
    p_divmod(r, mod, rem);
    r = rem;
    if (e == 0) return r;
    polynomial b = base;
    p_divmod(b, mod, rem);
    b = rem;
    for (int i = static_cast<int>(boost::multiprecision::msb(e)); i >= 0; --i) {
        p_divmod(p_mul(r, r), mod, rem);
        r = rem;
        if (boost::multiprecision::bit_test(e, i)) {
            p_divmod(p_mul(r, b), mod, rem);
            r = rem;
        }
    }
    return r;
}

polynomial derivative(const polynomial& g) {
    std::vector<element> c;
    for (std::size_t i = 1; i < g.c.size(); ++i)
        c.push_back(mul(from_int(g.f, static_cast<long long>(i)), g.c[i]));
    return make_poly(g.f, std::move(c));
}

namespace {

polynomial monic(const polynomial& g) {
    if (g.is_zero() || g.c.back().is_one()) return g;
    element s = inv(g.c.back());
    polynomial m = g;
    for (auto& c : m.c) c = mul(c, s);
    return m;
}

polynomial poly_x(const field_ref& f) {
    return make_poly(f, {zero(f), one(f)});
}

}  // namespace

bool is_irreducible(const polynomial& g) {
    if (g.f->kind == field_kind::rational)
        throw dp1_error("irreducibility test requires a finite field");
    int d = g.degree();
    if (d < 1) return false;
    polynomial m = monic(g);
    big_int q = g.f->cardinality();
    polynomial x = poly_x(g.f);
    big_int qd = 1;
    for (int i = 0; i < d; ++i) qd *= q;
    polynomial fr = p_powmod(x, qd, m);
    if (!p_sub(fr, x).is_zero()) {
        polynomial rem;
        p_divmod(fr, m, rem);
        polynomial xr;
        p_divmod(x, m, xr);
        if (!p_sub(rem, xr).is_zero()) return false;
    }
    int n = d;
    for (int ell = 2; ell * ell <= n; ++ell) {
        if (n % ell) continue;
        while (n % ell == 0) n /= ell;
        big_int qt = 1;
        for (int i = 0; i < d / ell; ++i) qt *= q;
        polynomial h = p_sub(p_powmod(x, qt, m), x);
        if (p_gcd(h, m).degree() != 0) return false;
    }
    if (n > 1) {
        big_int qt = 1;
        for (int i = 0; i < d / n; ++i) qt *= q;
        polynomial h = p_sub(p_powmod(x, qt, m), x);
        if (p_gcd(h, m).degree() != 0) return false;
    }
    return true;
}

namespace {

// Equal-degree splitting of a monic squarefree product of linear factors.
void split_linear(const polynomial& g, std::vector<element>& roots,
                  std::mt19937_64& rng) {
    if (g.degree() == 0) return;
    if (g.degree() == 1) {
        roots.push_back(neg(g.c[0]));
        return;
    }
    const field_ref& f = g.f;
    big_int q = f->cardinality();
    for (;;) {
        std::vector<element> rc;
        for (int i = 0; i < g.degree(); ++i) rc.push_back(random_element(f, rng));
        polynomial r = make_poly(f, std::move(rc));
        if (r.is_zero()) continue;
        polynomial d;
        if (f->p == 2) {
            // trace map: r + r^2 + r^4 + ... over GF(2)
            unsigned m = 0;
            big_int t = q;
            while (t > 1) { t >>= 1; ++m; }
            polynomial acc = r, sq = r, rem;
            for (unsigned i = 1; i < m; ++i) {
                p_divmod(p_mul(sq, sq), g, rem);
                sq = rem;
                acc = p_add(acc, sq);
            }
            d = p_gcd(acc, g);
        } else {
            polynomial s = p_powmod(r, (q - 1) / 2, g);
            d = p_gcd(p_sub(s, make_poly(f, {one(f)})), g);
        }
        if (d.degree() > 0 && d.degree() < g.degree()) {
            polynomial rem, quo = p_divmod(g, d, rem);
            split_linear(d, roots, rng);
            split_linear(quo, roots, rng);
            return;
        }
    }
}

}  // namespace

std::vector<element> all_roots(const polynomial& g, std::uint64_t scan_bound) {
    if (g.is_zero()) throw dp1_error("every value is a root of the zero polynomial");
    if (g.degree() == 0) return {};
    if (g.f->kind == field_kind::rational) {
        // Exact treatment of the degrees that actually occur here.
        if (g.degree() == 1) return {neg(div(g.c[0], g.c[1]))};
        if (g.degree() == 2) {
            element a = g.c[2], b = g.c[1], c = g.c[0];
            big_rat disc = (b.q * b.q - 4 * a.q * c.q);
            big_int num = boost::multiprecision::numerator(disc);
            big_int den = boost::multiprecision::denominator(disc);
            if (num < 0) return {};
            big_int sn = boost::multiprecision::sqrt(num);
            big_int sd = boost::multiprecision::sqrt(den);
            if (sn * sn != num || sd * sd != den) return {};
            element root = zero(g.f);
            root.q = big_rat(sn, sd);
            element two_a = add(a, a);
            std::vector<element> out = {div(sub(root, b), two_a),
                                        div(sub(neg(root), b), two_a)};
            std::sort(out.begin(), out.end(), element_less);
            out.erase(std::unique(out.begin(), out.end()), out.end());
            return out;
        }
        throw dp1_error("rational root search beyond degree 2 is not supported");
    }
    big_int q = g.f->cardinality();
    std::vector<element> roots;
    if (q <= scan_bound) {
        std::uint64_t n = q.convert_to<std::uint64_t>();
        for (std::uint64_t i = 0; i < n; ++i) {
            element x = nth_element(g.f, i);
            if (eval(g, x).is_zero()) roots.push_back(x);
        }
        return roots;
    }
    polynomial m = monic(g);
    polynomial x = poly_x(g.f);
    polynomial lin = p_gcd(p_sub(p_powmod(x, q, m), x), m);
    if (lin.degree() <= 0) return {};
    std::mt19937_64 rng(0x5deece66dull);
    split_linear(lin, roots, rng);
    std::sort(roots.begin(), roots.end(), element_less);
    return roots;
}

std::optional<element> find_root(const polynomial& g, std::uint64_t scan_bound) {
    auto roots = all_roots(g, scan_bound);
    if (roots.empty()) return std::nullopt;
    return roots.front();
}

polynomial first_irreducible(std::uint64_t p, unsigned degree) {
    if (!is_prime_u64(p)) throw not_prime_error("characteristic is not prime");
    if (degree < 1) throw dp1_error("degree must be positive");
    auto base = make_field("q:" + std::to_string(p));
    // odometer over the lower coefficients, last index fastest
    pvec tail(degree, 0);
    for (;;) {
        std::vector<element> c;
        for (auto t : tail) c.push_back(from_int(base, static_cast<long long>(t)));
        c.push_back(one(base));
        polynomial cand = make_poly(base, std::move(c));
        if (is_irreducible(cand)) return cand;
        int i = static_cast<int>(degree) - 1;
        while (i >= 0) {
            if (++tail[i] < p) break;
            tail[i] = 0;
            --i;
        }
        if (i < 0) throw dp1_error("no irreducible polynomial found");
    }
}

element lift_to(const field_ref& target, const element& e) {
    if (target->kind == field_kind::rational || e.f->kind == field_kind::rational) {
        if (target->kind == field_kind::rational &&
            e.f->kind == field_kind::rational)
            return e;
        throw spec_mismatch("cannot lift between zero and positive characteristic");
    }
    if (target->p != e.f->p)
        throw spec_mismatch("cannot lift across different characteristics");
    std::uint64_t c0;
    if (e.f->kind == field_kind::prime) {
        c0 = e.r;
    } else {
        for (std::size_t i = 1; i < e.v.size(); ++i)
            if (e.v[i])
                throw spec_mismatch("element does not lie in the prime subfield");
        c0 = e.v.empty() ? 0 : e.v[0];
    }
    element out = zero(target);
    if (target->kind == field_kind::prime) out.r = c0;
    else out.v[0] = c0;
    return out;
}

std::optional<extension_root> find_root_in_extension(
    const polynomial& g, unsigned max_degree, std::uint64_t scan_bound) {
    if (g.f->kind == field_kind::rational)
        throw dp1_error("extension search requires positive characteristic");
    std::uint64_t p = g.f->p;
    auto base = make_field("q:" + std::to_string(p));
    std::vector<element> pc;
    for (const auto& c : g.c) pc.push_back(lift_to(base, c));
    polynomial gp = make_poly(base, std::move(pc));
    for (unsigned d = 1; d <= max_degree; ++d) {
        field_ref k;
        if (d == 1) {
            k = base;
        } else {
            polynomial m = first_irreducible(p, d);
            std::string desc = "gf:" + std::to_string(p) + ":";
            pvec mv;
            for (const auto& c : m.c) mv.push_back(c.r);
            desc += pvec_to_string(mv, 'x');
            k = make_field(desc);
        }
        std::vector<element> kc;
        for (const auto& c : gp.c) kc.push_back(lift_to(k, c));
        polynomial gk = make_poly(k, std::move(kc));
        auto r = find_root(gk, scan_bound);
        if (r) return extension_root{k, *r};
    }
    return std::nullopt;
}

}  // namespace dp1::exactnum
