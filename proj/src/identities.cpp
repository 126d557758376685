#include "dp1/identities.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dp1::identities {

namespace {

using exactnum::from_int;
using exactnum::one;
using exactnum::random_element;
using exactnum::zero;

constexpr std::uint64_t kMaxResample = 1000000;

// key1 variable indices
constexpr int vA = 0, vB = 1, vC = 2, vM = 3, vU = 4, vV = 5;
// key2 variable indices (vV doubles as the substitution variable)
constexpr int vL = 0, vM2 = 1, vS = 2, vT = 3, vU2 = 4, vV2 = 5;

const std::array<std::string, kMaxVars> kKey1Names = {"a", "b", "c",
                                                      "m", "u", "v"};
const std::array<std::string, kMaxVars> kKey2Names = {"l", "m", "s",
                                                      "t", "u", "v"};

mpoly normalized(std::vector<mpoly::term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const mpoly::term& a, const mpoly::term& b) { return a.e < b.e; });
    mpoly out;
    for (const auto& t : terms) {
        if (!out.terms.empty() && out.terms.back().e == t.e) {
            out.terms.back().c += t.c;
            if (out.terms.back().c == 0) out.terms.pop_back();
        } else if (t.c != 0) {
            out.terms.push_back(t);
        }
    }
    return out;
}

// shorthand for building the closed forms
mpoly V(int i) { return mp_var(i); }
mpoly C(long long n) { return mp_const(n); }

element eval_product(const std::vector<mpoly>& factors, const field_ref& f,
                     const std::vector<element>& vals) {
    element out = one(f);
    for (const auto& p : factors) out = out * eval(p, f, vals);
    return out;
}

void validate_run(std::uint64_t p, int degree_bound, int samples) {
    if (!exactnum::is_prime_u64(p))
        throw not_prime_error("sampling modulus " + std::to_string(p) +
                              " is not prime");
    if (p <= 2ull * static_cast<std::uint64_t>(degree_bound))
        throw dp1_error("prime " + std::to_string(p) +
                        " does not exceed twice the degree bound " +
                        std::to_string(degree_bound));
    if (samples < 1) throw dp1_error("sample count must be positive");
}

field_ref prime_field(std::uint64_t p) {
    return exactnum::make_field("q:" + std::to_string(p));
}

// Uniform tuple with every exclusion polynomial nonzero. `vals` is sized
// kMaxVars; only the first nvars entries are drawn.
std::vector<element> sample_admissible(const field_ref& f, std::mt19937_64& rng,
                                       int nvars,
                                       const std::vector<mpoly>& exclusions,
                                       std::uint64_t& rejected) {
    for (std::uint64_t attempt = 0; attempt < kMaxResample; ++attempt) {
        std::vector<element> vals(kMaxVars, zero(f));
        for (int i = 0; i < nvars; ++i) vals[i] = random_element(f, rng);
        bool ok = true;
        for (const auto& ex : exclusions) {
            if (eval(ex, f, vals).is_zero()) {
                ok = false;
                break;
            }
        }
        if (ok) return vals;
        ++rejected;
    }
    throw degenerate_sample("no admissible parameter tuple found in " +
                            std::to_string(kMaxResample) + " attempts");
}

std::vector<std::string> name_list(family which, int nvars) {
    const auto& names = variable_names(which);
    return std::vector<std::string>(names.begin(), names.begin() + nvars);
}

counterexample record_sample(int index, family which, int nvars,
                             const std::vector<element>& vals,
                             const element& lhs, const element& rhs) {
    counterexample ce;
    ce.sample_index = index;
    for (int i = 0; i < nvars; ++i) ce.params.push_back(exactnum::to_string(vals[i]));
    ce.lhs = exactnum::to_string(lhs);
    ce.rhs = exactnum::to_string(rhs);
    return ce;
}

report base_report(const std::string& name, std::uint64_t p, std::uint64_t seed,
                   int samples, int degree_bound, family which, int nvars) {
    report r;
    r.name = name;
    r.prime = p;
    r.seed = seed;
    r.samples = samples;
    r.degree_bound = degree_bound;
    r.error_probability = static_cast<double>(samples) *
                          static_cast<double>(degree_bound) /
                          static_cast<double>(p);
    r.param_names = name_list(which, nvars);
    return r;
}

std::vector<plane::raw_point> select_points(
    const std::array<plane::raw_point, 9>& pts, const std::vector<int>& seq) {
    std::vector<plane::raw_point> out;
    out.reserve(seq.size());
    for (int i : seq) out.push_back(pts[i]);
    return out;
}

// Solves factor = 0 for `solvefor` given values of the other variables;
// null when the leading coefficient vanishes at the sample.
std::optional<element> solve_linear(const mpoly& lead, const mpoly& constant,
                                    const field_ref& f,
                                    const std::vector<element>& vals) {
    element a = eval(lead, f, vals);
    if (a.is_zero()) return std::nullopt;
    return -eval(constant, f, vals) / a;
}

element powi(const element& e, int k) { return exactnum::pow(e, k); }

}  // namespace

// ---------------------------------------------------------------------------
// mpoly arithmetic

mpoly mp_const(long long n) {
    mpoly out;
    if (n != 0) out.terms.push_back({n, {}});
    return out;
}

mpoly mp_var(int idx) {
    if (idx < 0 || idx >= kMaxVars) throw dp1_error("variable index out of range");
    mpoly out;
    mpoly::term t;
    t.c = 1;
    t.e[idx] = 1;
    out.terms.push_back(t);
    return out;
}

mpoly operator+(const mpoly& a, const mpoly& b) {
    std::vector<mpoly::term> terms = a.terms;
    terms.insert(terms.end(), b.terms.begin(), b.terms.end());
    return normalized(std::move(terms));
}

mpoly operator-(const mpoly& a, const mpoly& b) { return a + (-b); }

mpoly operator-(const mpoly& a) {
    mpoly out = a;
    for (auto& t : out.terms) t.c = -t.c;
    return out;
}

mpoly operator*(const mpoly& a, const mpoly& b) {
    std::vector<mpoly::term> terms;
    terms.reserve(a.terms.size() * b.terms.size());
    for (const auto& ta : a.terms) {
        for (const auto& tb : b.terms) {
            mpoly::term t;
            t.c = ta.c * tb.c;
            for (int i = 0; i < kMaxVars; ++i)
                t.e[i] = static_cast<std::int8_t>(ta.e[i] + tb.e[i]);
            terms.push_back(t);
        }
    }
    return normalized(std::move(terms));
}

mpoly mp_pow(const mpoly& a, int n) {
    if (n < 0) throw dp1_error("negative polynomial power");
    mpoly out = mp_const(1);
    for (int i = 0; i < n; ++i) out = out * a;
    return out;
}

bool is_zero(const mpoly& a) { return a.terms.empty(); }

int total_degree(const mpoly& a) {
    int d = 0;
    for (const auto& t : a.terms) {
        int s = 0;
        for (int i = 0; i < kMaxVars; ++i) s += t.e[i];
        d = std::max(d, s);
    }
    return d;
}

int degree_in(const mpoly& a, int var) {
    int d = 0;
    for (const auto& t : a.terms) d = std::max(d, static_cast<int>(t.e[var]));
    return d;
}

mpoly coefficient_of(const mpoly& a, int var, int k) {
    mpoly out;
    for (const auto& t : a.terms) {
        if (t.e[var] == k) {
            mpoly::term u = t;
            u.e[var] = 0;
            out.terms.push_back(u);
        }
    }
    return normalized(std::move(out.terms));
}

element eval(const mpoly& a, const field_ref& f,
             const std::vector<element>& vals) {
    element acc = zero(f);
    for (const auto& t : a.terms) {
        element tv = from_int(f, t.c);
        for (int i = 0; i < kMaxVars; ++i) {
            if (t.e[i] == 0) continue;
            if (i >= static_cast<int>(vals.size()))
                throw dp1_error("mpoly evaluation is missing variable " +
                                std::to_string(i));
            tv = tv * exactnum::pow(vals[i], t.e[i]);
        }
        acc = acc + tv;
    }
    return acc;
}

std::string to_string(const mpoly& a, family which) {
    if (a.terms.empty()) return "0";
    const auto& names = variable_names(which);
    std::string out;
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
        const auto& t = a.terms[i];
        long long c = t.c;
        if (i == 0) {
            if (c < 0) {
                out += "-";
                c = -c;
            }
        } else {
            out += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        std::string mon;
        for (int v = 0; v < kMaxVars; ++v) {
            if (t.e[v] == 0) continue;
            if (!mon.empty()) mon += "*";
            mon += names[v];
            if (t.e[v] > 1) mon += "^" + std::to_string(t.e[v]);
        }
        if (mon.empty()) {
            out += std::to_string(c);
        } else {
            if (c != 1) out += std::to_string(c) + "*";
            out += mon;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closed forms

const std::array<std::string, kMaxVars>& variable_names(family which) {
    return which == family::key1 ? kKey1Names : kKey2Names;
}

const mpoly& key1_alpha() {
    static const mpoly p = V(vA) - V(vA) * V(vC) - V(vB) * V(vC) + V(vB) * V(vM);
    return p;
}

const mpoly& key1_beta() {
    static const mpoly p = V(vB) * (V(vA) - C(1)) * V(vM) * V(vM) +
                           V(vB) * (V(vC) - C(2) * V(vA)) * V(vM) +
                           V(vA) * (V(vB) + V(vC) - C(1));
    return p;
}

const mpoly& key1_gamma() {
    static const mpoly p =
        V(vB) * mp_pow(V(vM), 3) +
        (C(1) - V(vB) * V(vC) - V(vC)) * V(vM) * V(vM) +
        (V(vC) * V(vC) - C(2) * V(vC) + C(1)) * V(vM) +
        V(vA) * (C(1) - V(vC)) + V(vC) * V(vC) - V(vC);
    return p;
}

const mpoly& key1_delta() {
    static const mpoly p = [] {
        mpoly a = V(vA), b = V(vB), c = V(vC), m = V(vM);
        mpoly m2 = m * m, m3 = m2 * m, c2 = c * c, c3 = c2 * c;
        return -a * b * m3 +
               (a * b * c + a * b + a * c - a + b - C(2) * b * c) * m2 +
               (a * b - C(2) * a * b * c + a + C(2) * b * c2 - b - a * c2 +
                C(2) * c2 - C(2) * c) * m +
               a * (b * c - b + C(2) * c2 - C(2) * c) - b * c2 + b * c -
               C(2) * c3 + C(2) * c2;
    }();
    return p;
}

const mpoly& key1_f1() {
    static const mpoly p = [] {
        mpoly a = V(vA), b = V(vB), c = V(vC), m = V(vM);
        return a * c - a + b * c * m - b * m * m - c * c + c * m + c - m;
    }();
    return p;
}

const mpoly& key1_f2() {
    static const mpoly p = [] {
        mpoly a = V(vA), b = V(vB), c = V(vC), m = V(vM);
        return a * b * m * m - C(2) * a * b * m + a * b - a * c * c +
               C(2) * a * c - a - b * c * c + C(2) * b * c * m - b * m * m;
    }();
    return p;
}

const mpoly& key1_f3() {
    static const mpoly p = [] {
        mpoly a = V(vA), b = V(vB), c = V(vC), m = V(vM);
        mpoly m2 = m * m, m3 = m2 * m, c2 = c * c, c3 = c2 * c;
        return a * b * c * m2 - C(2) * a * b * c * m + a * b * c - a * b * m3 +
               a * b * m2 + a * b * m - a * b - a * c2 * m + C(2) * a * c2 +
               a * c * m2 - C(3) * a * c - a * m2 + a * m + a +
               C(2) * b * c2 * m - b * c2 - C(3) * b * c * m2 + b * c +
               b * m3 + b * m2 - b * m - C(2) * c3 + C(3) * c2 * m +
               C(3) * c2 - c * m2 - C(4) * c * m - c + m2 + m;
    }();
    return p;
}

const mpoly& key1_expression() {
    static const mpoly p = [] {
        mpoly a = V(vA), b = V(vB), m = V(vM);
        return C(-2) * a * b * m * mp_pow(m - C(1), 3) * (b - C(1)) *
               (a - C(1)) * (a + b - C(1)) * key1_f1() * key1_f2() * key1_f3();
    }();
    return p;
}

const mpoly& key2_g() {
    static const mpoly p = [] {
        mpoly l = V(vL), m = V(vM2), s = V(vS);
        return l * s - l - m * s - m + C(2) * s;
    }();
    return p;
}

const mpoly& key2_a1() {
    static const mpoly p = (V(vL) - C(1)) * (V(vU2) + C(1)) -
                           (V(vM2) + C(1)) * (V(vT) - C(1));
    return p;
}

const mpoly& key2_a2() {
    static const mpoly p = (V(vL) + C(1)) * (V(vU2) + C(1)) -
                           (V(vM2) + C(1)) * (V(vT) + C(1));
    return p;
}

const mpoly& key2_f1() {
    static const mpoly p = [] {
        mpoly l = V(vL), m = V(vM2), s = V(vS), t = V(vT), u = V(vU2);
        return l * l * u + l * l - l * m * u - l * m - l * s * u - l * s -
               l * t * u - l * t + l * u * u + l * u + m * s * t + m * s +
               m * t - m * u + s * t - s * u - t * u + u * u;
    }();
    return p;
}

const std::array<mpoly, 6>& key2_f2_coefficients() {
    static const std::array<mpoly, 6> coeffs = [] {
        mpoly l = V(vL), m = V(vM2), s = V(vS);
        mpoly ca = (s + C(1)) * (m - C(1)) * (m + C(1));
        mpoly cb = C(-2) * s * (m - C(1)) * (l + C(1));
        mpoly cc = (s - C(1)) * (l - C(1)) * (l + C(1));
        mpoly cf = (m - l) * key2_g();
        return std::array<mpoly, 6>{ca, cb, cc, cb, -cb, cf};
    }();
    return coeffs;
}

const mpoly& key2_f2() {
    static const mpoly p = [] {
        const auto& k = key2_f2_coefficients();
        mpoly t = V(vT), u = V(vU2);
        return k[0] * t * t + k[1] * t * u + k[2] * u * u + k[3] * t +
               k[4] * u + k[5];
    }();
    return p;
}

const mpoly& key2_gamma_tilde() {
    static const mpoly p = [] {
        mpoly l = V(vL), m = V(vM2), s = V(vS), u = V(vU2);
        return (m - u) * (l - C(1)) * key2_g() +
               (l - s) * (m - C(1)) * key2_a1();
    }();
    return p;
}

const mpoly& key2_phi_alpha() {
    static const mpoly p = [] {
        mpoly l = V(vL), m = V(vM2), s = V(vS), v = V(vV2);
        mpoly l2 = l * l, m2 = m * m, v2 = v * v;
        return l2 * s * v2 - l2 * v2 - C(2) * l * m * s * v +
               C(2) * l * s * v + m2 * s + m2 - C(2) * m * s * v - s * v2 +
               C(2) * s * v - s + v2 - C(1);
    }();
    return p;
}

const mpoly& key2_phi_beta() {
    static const mpoly p = [] {
        mpoly l = V(vL), m = V(vM2), s = V(vS), v = V(vV2);
        mpoly l2 = l * l, l3 = l2 * l, m2 = m * m, v2 = v * v;
        return l3 * s * v2 - l3 * v2 - C(2) * l2 * m * s * v +
               C(2) * l2 * m * v + l * m2 * s - l * m2 - C(2) * l * m * s * v -
               l * s * v2 + C(2) * l * s * v - l * s + l * v2 + l +
               C(2) * m2 * s - C(2) * m * v + C(2) * s * v - C(2) * s;
    }();
    return p;
}

// ---------------------------------------------------------------------------
// Point builders

param_config make_param_config(family which, const field_ref& f,
                               std::vector<element> params) {
    std::size_t want = which == family::key1      ? 6
                       : which == family::key2_oddchar ? 5
                                                       : 0;
    if (params.size() != want)
        throw bad_arity("expected " + std::to_string(want) +
                        " parameters for this family, got " +
                        std::to_string(params.size()));
    for (const auto& e : params)
        if (!exactnum::same_field(e.f, f))
            throw type_mismatch("parameter from a different field");
    return param_config{which, f, std::move(params)};
}

std::array<plane::raw_point, 9> key1_raw_points(const field_ref& f,
                                                const std::vector<element>& p) {
    if (p.size() < 6) throw bad_arity("key1 points need six parameters");
    const element &a = p[0], &b = p[1], &c = p[2], &m = p[3], &u = p[4],
                  &v = p[5];
    element e0 = zero(f), e1 = one(f);
    return {plane::raw_point{e0, e1, e1}, {e0, e1, a}, {e1, e0, e1},
            {e1, e0, b},                 {e1, e1, e1}, {e1, e1, u},
            {m, e1, v},                  {m, e1, c},   {e0, e0, e1}};
}

std::array<plane::raw_point, 9> key2_raw_points(const field_ref& f,
                                                const std::vector<element>& p) {
    if (p.size() < 5) throw bad_arity("key2 points need five parameters");
    // tangent-line parametrization: a point of the conic for parameter w
    // paired with slope q is (1 - w^2 : 2q - 2w : 2qw - w^2 - 1)
    static const auto conic_pt = [](int slope_var, int par_var) {
        mpoly q = V(slope_var), w = V(par_var);
        return std::array<mpoly, 3>{C(1) - w * w, C(2) * q - C(2) * w,
                                    C(2) * q * w - w * w - C(1)};
    };
    static const std::array<mpoly, 3> r3 = conic_pt(vL, vS);
    static const std::array<mpoly, 3> r4 = conic_pt(vM2, vS);
    static const std::array<mpoly, 3> r7 = conic_pt(vL, vT);
    static const std::array<mpoly, 3> r8 = conic_pt(vM2, vU2);
    static const mpoly r2x = [] {
        mpoly l = V(vL), m = V(vM2), s = V(vS), t = V(vT), u = V(vU2);
        return -(l * s * u + l * s + l * t * u + l * t - l * u * u + l -
                 m * s * t - m * s - m * t - m - s * t + s * u + t * u -
                 u * u);
    }();
    static const mpoly r2z = [] {
        mpoly l = V(vL), m = V(vM2), s = V(vS), t = V(vT), u = V(vU2);
        return (C(2) * l * l - C(2) * l * m - l * s - l * t) * (u + C(1)) +
               l * u * u + C(2) * l * u + l + m * s * t + m * s + m * t -
               C(2) * m * u - m + s * t - s * u - t * u + u * u;
    }();

    std::vector<element> vals(p.begin(), p.end());
    vals.resize(kMaxVars, zero(f));
    element e0 = zero(f), e1 = one(f);
    auto at = [&](const std::array<mpoly, 3>& c) {
        return plane::raw_point{eval(c[0], f, vals), eval(c[1], f, vals),
                                eval(c[2], f, vals)};
    };
    return {plane::raw_point{e1, e0, e1},
            {eval(r2x, f, vals), e0, eval(r2z, f, vals)},
            at(r3),
            at(r4),
            {e0, e1, e1},
            {e0, -e1, e1},
            at(r7),
            at(r8),
            {-e1, e0, e1}};
}

char2_config key2_char2_setup(const field_ref& f) {
    if (f->p != 2)
        throw hypothesis_violated(
            "the quadric-pencil configuration needs characteristic 2");
    element e0 = zero(f), e1 = one(f);
    char2_config out{
        {plane::make_point({e1, e0, e1}), plane::make_point({e0, e1, e0}),
         plane::make_point({e0, e1, e1}), plane::make_point({e1, e0, e0})},
        {plane::make_curve(f, 2, {e0, e0, e1, e0, e1, e1}),
         plane::make_curve(f, 2, {e0, e1, e0, e0, e0, e0})}};
    for (const auto& q : out.quadrics)
        for (const auto& pt : out.pts)
            if (!plane::eval_curve(q, pt).is_zero())
                throw dp1_error("pencil generator misses a base point");
    return out;
}

// ---------------------------------------------------------------------------
// Identity specifications

const std::vector<identity_spec>& builtin_identities() {
    static const std::vector<identity_spec> specs = [] {
        std::vector<identity_spec> out;

        mpoly a = V(vA), b = V(vB), c = V(vC), m = V(vM), u = V(vU), v = V(vV);
        {
            identity_spec s;
            s.name = "KEY1-DETL";
            s.fam = family::key1;
            s.lhs = mat_kind::cubic10;
            s.point_seq = {0, 1, 2, 3, 6, 7, 8, 4};  // Q1 Q2 Q3 Q4 Q7 Q8 P Q5
            s.rhs_factors = {C(-1),    m,        m - C(1),
                             c - v,    b - C(1), a - C(1),
                             key1_alpha() * v + key1_beta()};
            s.rhs_text =
                "-m(m-1)(c-v)(b-1)(a-1)((a-ac-bc+bm)v + b(a-1)m^2 + "
                "b(c-2a)m + a(b+c-1))";
            s.exclusions = {m, m - C(1), c - v, b - C(1), a - C(1)};
            // eight cubic-monomial rows of degree <= 3 in the parameters
            // plus two derivative rows of degree <= 2
            s.degree_bound = 28;
            out.push_back(std::move(s));
        }
        {
            identity_spec s;
            s.name = "KEY1-DETLP";
            s.fam = family::key1;
            s.lhs = mat_kind::cubic10;
            s.point_seq = {0, 1, 2, 3, 4, 5, 8, 7};  // Q1 Q2 Q3 Q4 Q5 Q6 P Q8
            s.rhs_factors = {C(-1),    m,        u - C(1),
                             m - C(1), b - C(1), a - C(1),
                             key1_gamma() * u + key1_delta()};
            s.rhs_text = "-m(u-1)(m-1)(b-1)(a-1)(gamma u + delta)";
            s.exclusions = {m, u - C(1), m - C(1), b - C(1), a - C(1)};
            s.degree_bound = 28;
            out.push_back(std::move(s));
        }
        {
            mpoly l = V(vL), m2 = V(vM2), sv = V(vS), t = V(vT), u2 = V(vU2);
            identity_spec s;
            s.name = "KEY2-DETN";
            s.fam = family::key2_oddchar;
            s.lhs = mat_kind::conic6;
            s.point_seq = {1, 3, 5, 6, 7, 8};  // R2 R4 R6 R7 R8 P
            s.rhs_factors = {C(64),     u2 + C(1), t + C(1),  sv + C(1),
                             sv - u2,   m2 - u2,   m2 - sv,   l - t,
                             l - m2,    key2_f1(), key2_f2()};
            s.rhs_text =
                "64(u+1)(t+1)(s+1)(s-u)(m-u)(m-s)(l-t)(l-m) f1 f2";
            s.exclusions = {u2 + C(1), t + C(1), sv + C(1), sv - u2,
                            m2 - u2,   m2 - sv,  l - t,     l - m2};
            // conic rows: R2 has cubic coordinates, R4/R7/R8 quadratic,
            // R6 and P constant
            s.degree_bound = 18;
            out.push_back(std::move(s));
        }
        return out;
    }();
    return specs;
}

const identity_spec& find_identity(const std::string& name) {
    std::string key = name;
    if (key == "KEY1-DETL'") key = "KEY1-DETLP";
    for (const auto& s : builtin_identities())
        if (s.name == key) return s;
    throw parse_error("unknown identity " + name);
}

element lhs_value(const identity_spec& spec, const param_config& cfg) {
    auto pts = spec.fam == family::key1 ? key1_raw_points(cfg.f, cfg.params)
                                        : key2_raw_points(cfg.f, cfg.params);
    auto sel = select_points(pts, spec.point_seq);
    return spec.lhs == mat_kind::cubic10 ? plane::det_L(sel)
                                         : plane::det_N(sel);
}

element rhs_value(const identity_spec& spec, const param_config& cfg) {
    std::vector<element> vals = cfg.params;
    vals.resize(kMaxVars, zero(cfg.f));
    return eval_product(spec.rhs_factors, cfg.f, vals);
}

// ---------------------------------------------------------------------------
// Checks

report check_identity(const identity_spec& spec, int samples, std::uint64_t p,
                      std::uint64_t seed) {
    validate_run(p, spec.degree_bound, samples);
    field_ref f = prime_field(p);
    std::mt19937_64 rng(seed);
    int nvars = spec.fam == family::key1 ? 6 : 5;
    report r = base_report(spec.name, p, seed, samples, spec.degree_bound,
                           spec.fam, nvars);
    for (int j = 0; j < samples; ++j) {
        auto vals = sample_admissible(f, rng, nvars, spec.exclusions, r.rejected);
        param_config cfg{spec.fam, f,
                         std::vector<element>(vals.begin(), vals.begin() + nvars)};
        element lhs = lhs_value(spec, cfg);
        element rhs = rhs_value(spec, cfg);
        if (lhs == rhs)
            ++r.passes;
        else {
            ++r.failures;
            r.counterexamples.push_back(
                record_sample(j, spec.fam, nvars, vals, lhs, rhs));
        }
    }
    return r;
}

report check_vanishing_on_locus(const mpoly& factor, det_target target,
                                int solvefor, int samples, std::uint64_t p,
                                std::uint64_t seed) {
    if (target != det_target::conic_Q3_to_Q8)
        throw dp1_error("unknown vanishing target");
    if (degree_in(factor, solvefor) != 1)
        throw nonlinear_in_solve_variable(
            "factor has degree " +
            std::to_string(degree_in(factor, solvefor)) + " in " +
            variable_names(family::key1)[solvefor]);
    const mpoly lead = coefficient_of(factor, solvefor, 1);
    const mpoly constant = coefficient_of(factor, solvefor, 0);

    // cleared-denominator bound on the conic determinant after the rational
    // substitutions for the solved variable and (u, v)
    const int bound = 30;
    validate_run(p, bound, samples);
    field_ref f = prime_field(p);
    std::mt19937_64 rng(seed);
    report r = base_report("VANISHING[" + to_string(factor, family::key1) + "]",
                           p, seed, samples, bound, family::key1, 6);
    const element e0 = zero(f);
    for (int j = 0; j < samples; ++j) {
        std::vector<element> vals;
        bool found = false;
        for (std::uint64_t attempt = 0; attempt < kMaxResample; ++attempt) {
            vals.assign(kMaxVars, e0);
            for (int i = vA; i <= vM; ++i)
                if (i != solvefor) vals[i] = random_element(f, rng);
            auto solved = solve_linear(lead, constant, f, vals);
            if (!solved) {
                ++r.rejected;
                continue;
            }
            vals[solvefor] = *solved;
            element av = eval(key1_alpha(), f, vals);
            element gv = eval(key1_gamma(), f, vals);
            if (av.is_zero() || gv.is_zero()) {
                ++r.rejected;
                continue;
            }
            vals[vU] = -eval(key1_delta(), f, vals) / gv;
            vals[vV] = -eval(key1_beta(), f, vals) / av;
            found = true;
            break;
        }
        if (!found)
            throw degenerate_sample("no admissible locus sample found in " +
                                    std::to_string(kMaxResample) + " attempts");
        auto pts = key1_raw_points(f, vals);
        element d = plane::det_N(select_points(pts, {2, 3, 4, 5, 6, 7}));
        if (d.is_zero())
            ++r.passes;
        else {
            ++r.failures;
            r.counterexamples.push_back(
                record_sample(j, family::key1, 6, vals, d, e0));
        }
    }
    return r;
}

std::vector<report> check_combination_identities(int samples, std::uint64_t p,
                                                 std::uint64_t seed) {
    // the gamma-tilde check includes a conic determinant on a rational locus
    const int det_bound = 30;
    validate_run(p, det_bound, samples);
    field_ref f = prime_field(p);
    const element e0 = zero(f), e1 = one(f);
    std::vector<report> out;

    {
        // discriminant of the quadratic factor, both closed forms
        std::mt19937_64 rng(seed);
        const auto& k = key2_f2_coefficients();
        mpoly l = V(vL), m = V(vM2), s = V(vS);
        std::vector<mpoly> rhs_factors = {
            C(-4),    s - C(1), s + C(1), m - C(1), m + C(1),
            l - C(1), l + C(1), l - m,    key2_g()};
        int bound = 9;
        report r = base_report("DELTA-EXPR", p, seed, samples, bound,
                               family::key2_oddchar, 3);
        for (int j = 0; j < samples; ++j) {
            std::vector<element> vals(kMaxVars, e0);
            for (int i = 0; i < 3; ++i) vals[i] = random_element(f, rng);
            element ka = eval(k[0], f, vals), kb = eval(k[1], f, vals),
                    kc = eval(k[2], f, vals), kd = eval(k[3], f, vals),
                    ke = eval(k[4], f, vals), kf = eval(k[5], f, vals);
            element four = from_int(f, 4);
            element lhs = four * ka * kc * kf - ka * ke * ke - kb * kb * kf +
                          kb * kd * ke - kc * kd * kd;
            element rhs = eval_product(rhs_factors, f, vals);
            if (lhs == rhs)
                ++r.passes;
            else {
                ++r.failures;
                r.counterexamples.push_back(
                    record_sample(j, family::key2_oddchar, 3, vals, lhs, rhs));
            }
        }
        out.push_back(std::move(r));
    }

    {
        // f2 as a combination of a1 and a2
        std::mt19937_64 rng(seed);
        mpoly l = V(vL), s = V(vS), t = V(vT), u = V(vU2);
        report r = base_report("F2-COMB", p, seed, samples, 5,
                               family::key2_oddchar, 5);
        for (int j = 0; j < samples; ++j) {
            std::vector<element> vals(kMaxVars, e0);
            for (int i = 0; i < 5; ++i) vals[i] = random_element(f, rng);
            element lhs = eval(key2_f2(), f, vals);
            element rhs =
                eval((s - C(1)) * (l + C(1)), f, vals) *
                    (vals[vU2] - vals[vT]) * eval(key2_a1(), f, vals) +
                (vals[vT] - e1) * eval(key2_g(), f, vals) *
                    eval(key2_a2(), f, vals);
            if (lhs == rhs)
                ++r.passes;
            else {
                ++r.failures;
                r.counterexamples.push_back(
                    record_sample(j, family::key2_oddchar, 5, vals, lhs, rhs));
            }
        }
        out.push_back(std::move(r));
    }

    {
        // gamma-tilde: expanded form versus the literal combination at a
        // generic tuple, then vanishing (and the conic through R3..R8) on
        // the locus where both combination generators are zero
        std::mt19937_64 rng(seed);
        report r = base_report("GAMMA-COMB", p, seed, samples, det_bound,
                               family::key2_oddchar, 5);
        for (int j = 0; j < samples; ++j) {
            std::vector<element> vals(kMaxVars, e0);
            for (int i = 0; i < 5; ++i) vals[i] = random_element(f, rng);
            element lhs = eval(key2_gamma_tilde(), f, vals);
            element rhs = (vals[vM2] - vals[vU2]) * (vals[vL] - e1) *
                              eval(key2_g(), f, vals) +
                          (vals[vL] - vals[vS]) * (vals[vM2] - e1) *
                              eval(key2_a1(), f, vals);
            bool ok = lhs == rhs;

            std::vector<element> loc(kMaxVars, e0);
            bool found = false;
            for (std::uint64_t attempt = 0; attempt < kMaxResample; ++attempt) {
                loc[vL] = random_element(f, rng);
                loc[vM2] = random_element(f, rng);
                loc[vT] = random_element(f, rng);
                element den = loc[vL] - loc[vM2] + from_int(f, 2);
                if (den.is_zero() || (loc[vL] - e1).is_zero()) {
                    ++r.rejected;
                    continue;
                }
                loc[vS] = (loc[vL] + loc[vM2]) / den;          // zero of g
                loc[vU2] = (loc[vM2] + e1) * (loc[vT] - e1) /
                               (loc[vL] - e1) - e1;            // zero of a1
                found = true;
                break;
            }
            if (!found)
                throw degenerate_sample("no admissible locus sample found in " +
                                        std::to_string(kMaxResample) +
                                        " attempts");
            ok = ok && eval(key2_gamma_tilde(), f, loc).is_zero();
            auto pts = key2_raw_points(f, loc);
            ok = ok &&
                 plane::det_N(select_points(pts, {2, 3, 4, 5, 6, 7})).is_zero();
            if (ok)
                ++r.passes;
            else {
                ++r.failures;
                r.counterexamples.push_back(record_sample(
                    j, family::key2_oddchar, 5, vals,
                    eval(key2_gamma_tilde(), f, loc), e0));
            }
        }
        out.push_back(std::move(r));
    }

    {
        // phi split: substituting u = v(t-l) + m into f2 factors as
        // (t-l)(alpha t - beta); at t = l the substituted f2 vanishes
        std::mt19937_64 rng(seed);
        report r = base_report("PHI-SPLIT", p, seed, samples, 7,
                               family::key2_oddchar, 5);
        r.param_names = {"l", "m", "s", "t", "v"};
        for (int j = 0; j < samples; ++j) {
            std::vector<element> vals(kMaxVars, e0);
            for (int i : {vL, vM2, vS, vT, vV2})
                vals[i] = random_element(f, rng);
            vals[vU2] = vals[vV2] * (vals[vT] - vals[vL]) + vals[vM2];
            element lhs = eval(key2_f2(), f, vals);
            element rhs = (vals[vT] - vals[vL]) *
                          (eval(key2_phi_alpha(), f, vals) * vals[vT] -
                           eval(key2_phi_beta(), f, vals));
            bool ok = lhs == rhs;

            std::vector<element> at_l = vals;
            at_l[vT] = at_l[vL];
            at_l[vU2] = at_l[vM2];
            ok = ok && eval(key2_f2(), f, at_l).is_zero();
            if (ok)
                ++r.passes;
            else {
                ++r.failures;
                counterexample ce;
                ce.sample_index = j;
                for (int i : {vL, vM2, vS, vT, vV2})
                    ce.params.push_back(exactnum::to_string(vals[i]));
                ce.lhs = exactnum::to_string(lhs);
                ce.rhs = exactnum::to_string(rhs);
                r.counterexamples.push_back(std::move(ce));
            }
        }
        out.push_back(std::move(r));
    }

    return out;
}

report check_key1_expression_proportionality(int samples, std::uint64_t p,
                                             std::uint64_t seed) {
    // coarse cleared-denominator bound across determinant, expression and
    // the fitted monomial
    const int bound = 100;
    validate_run(p, bound, samples);
    field_ref f = prime_field(p);
    std::mt19937_64 rng(seed);
    mpoly a = V(vA), b = V(vB), m = V(vM);
    const std::vector<mpoly> exclusions = {a,        a - C(1),     b,
                                           b - C(1), m,            m - C(1),
                                           a + b - C(1),
                                           key1_alpha(), key1_gamma()};
    const std::vector<mpoly> expr_factors = {
        C(-2), a,        b,         m,         mp_pow(m - C(1), 3),
        b - C(1), a - C(1), a + b - C(1),
        key1_f1(), key1_f2(), key1_f3()};
    const mpoly f1_lead = coefficient_of(key1_f1(), vA, 1);
    const mpoly f1_const = coefficient_of(key1_f1(), vA, 0);

    report r = base_report("KEY1-PROP", p, seed, samples, bound, family::key1, 6);
    const element e0 = zero(f);

    struct ratio_obs {
        element ratio, alpha, gamma;
    };
    std::vector<ratio_obs> obs;

    auto derive_uv = [&](std::vector<element>& vals) {
        element av = eval(key1_alpha(), f, vals);
        element gv = eval(key1_gamma(), f, vals);
        vals[vU] = -eval(key1_delta(), f, vals) / gv;
        vals[vV] = -eval(key1_beta(), f, vals) / av;
        return std::pair(av, gv);
    };
    auto detLpp = [&](const std::vector<element>& vals) {
        auto pts = key1_raw_points(f, vals);
        // Q1 Q2 Q3 Q4 Q5 Q6 P Q7, derivative rows taken at Q7
        return plane::det_L(select_points(pts, {0, 1, 2, 3, 4, 5, 8, 6}));
    };

    for (int j = 0; j < samples; ++j) {
        auto vals = sample_admissible(f, rng, 4, exclusions, r.rejected);
        auto [av, gv] = derive_uv(vals);
        element lhs = detLpp(vals);
        element expr = eval_product(expr_factors, f, vals);
        bool ok;
        if (expr.is_zero()) {
            ok = lhs.is_zero();  // zero sets must agree
        } else {
            ok = true;
            obs.push_back({lhs / expr, av, gv});
        }

        // zero-set agreement where the first content factor vanishes
        bool found = false;
        std::vector<element> loc(kMaxVars, e0);
        for (std::uint64_t attempt = 0; attempt < kMaxResample; ++attempt) {
            loc.assign(kMaxVars, e0);
            for (int i = vB; i <= vM; ++i) loc[i] = random_element(f, rng);
            auto solved = solve_linear(f1_lead, f1_const, f, loc);
            if (!solved) {
                ++r.rejected;
                continue;
            }
            loc[vA] = *solved;
            if (eval(key1_alpha(), f, loc).is_zero() ||
                eval(key1_gamma(), f, loc).is_zero()) {
                ++r.rejected;
                continue;
            }
            found = true;
            break;
        }
        if (!found)
            throw degenerate_sample("no admissible locus sample found in " +
                                    std::to_string(kMaxResample) + " attempts");
        derive_uv(loc);
        element locdet = detLpp(loc);
        element locexpr = eval_product(expr_factors, f, loc);
        ok = ok && locdet.is_zero() && locexpr.is_zero();

        if (ok)
            ++r.passes;
        else {
            ++r.failures;
            r.counterexamples.push_back(
                record_sample(j, family::key1, 6, vals, lhs, expr));
        }
    }

    // fit ratio = constant * alpha^i * gamma^j: the exponents come from the
    // first three observations, the constant from the first, and every
    // later observation must reproduce it
    if (obs.size() < 3)
        throw ratio_not_constant("too few nonzero samples to fit the ratio");
    std::optional<std::pair<int, int>> model;
    element constant = e0;
    for (int i = -4; i <= 4; ++i) {
        for (int j2 = -4; j2 <= 4; ++j2) {
            element c0 = obs[0].ratio * powi(obs[0].alpha, -i) *
                         powi(obs[0].gamma, -j2);
            element c1 = obs[1].ratio * powi(obs[1].alpha, -i) *
                         powi(obs[1].gamma, -j2);
            element c2 = obs[2].ratio * powi(obs[2].alpha, -i) *
                         powi(obs[2].gamma, -j2);
            if (c0 == c1 && c1 == c2) {
                if (model)
                    throw ratio_not_constant(
                        "ratio model is ambiguous on the fitting samples");
                model = {i, j2};
                constant = c0;
            }
        }
    }
    if (!model)
        throw ratio_not_constant(
            "no monomial in alpha and gamma matches the observed ratios");
    for (std::size_t k = 0; k < obs.size(); ++k) {
        element ck = obs[k].ratio * powi(obs[k].alpha, -model->first) *
                     powi(obs[k].gamma, -model->second);
        if (ck != constant)
            throw ratio_not_constant("ratio model breaks at sample " +
                                     std::to_string(k));
    }
    r.has_ratio_model = true;
    r.alpha_exponent = model->first;
    r.gamma_exponent = model->second;
    r.ratio_constant = exactnum::to_string(constant);
    return r;
}

std::vector<report> run_all(const std::string& which, int samples,
                            std::uint64_t p, std::uint64_t seed) {
    bool key1 = which == "key1" || which == "all";
    bool key2 = which == "key2" || which == "all";
    if (!key1 && !key2)
        throw parse_error("unknown identity family " + which +
                          " (expected key1, key2 or all)");
    std::vector<report> out;
    if (key1) {
        out.push_back(check_identity(find_identity("KEY1-DETL"), samples, p, seed));
        out.push_back(
            check_identity(find_identity("KEY1-DETLP"), samples, p, seed));
        for (const mpoly* fac : {&key1_f1(), &key1_f2(), &key1_f3()})
            out.push_back(check_vanishing_on_locus(
                *fac, det_target::conic_Q3_to_Q8, vA, samples, p, seed));
        out.push_back(check_key1_expression_proportionality(samples, p, seed));
    }
    if (key2) {
        out.push_back(
            check_identity(find_identity("KEY2-DETN"), samples, p, seed));
        auto combo = check_combination_identities(samples, p, seed);
        for (auto& r : combo) out.push_back(std::move(r));
    }
    return out;
}

std::string report_to_json(const report& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["prime"] = r.prime;
    j["seed"] = r.seed;
    j["samples"] = r.samples;
    j["passes"] = r.passes;
    j["failures"] = r.failures;
    j["degree_bound"] = r.degree_bound;
    j["error_probability"] = r.error_probability;
    j["rejected"] = r.rejected;
    j["ok"] = r.ok();
    nlohmann::ordered_json ces = nlohmann::ordered_json::array();
    for (const auto& ce : r.counterexamples) {
        nlohmann::ordered_json c;
        c["sample"] = ce.sample_index;
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < ce.params.size(); ++i) {
            std::string key = i < r.param_names.size() ? r.param_names[i]
                                                       : "p" + std::to_string(i);
            params[key] = ce.params[i];
        }
        c["params"] = params;
        c["lhs"] = ce.lhs;
        c["rhs"] = ce.rhs;
        ces.push_back(c);
    }
    j["counterexamples"] = ces;
    if (r.has_ratio_model) {
        j["ratio_model"] = {{"constant", r.ratio_constant},
                            {"alpha_exponent", r.alpha_exponent},
                            {"gamma_exponent", r.gamma_exponent}};
    }
    return j.dump();
}

}  // namespace dp1::identities
