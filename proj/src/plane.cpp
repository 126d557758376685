#include "dp1/plane.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dp1::plane {

namespace {

using exactnum::field_kind;
using exactnum::from_int;
using exactnum::one;
using exactnum::zero;

element el(const field_ref& f, long long n) { return from_int(f, n); }

std::uint64_t field_char(const field_ref& f) {
    return f->kind == field_kind::rational ? 0 : f->p;
}

void require_same_field(const field_ref& f, const element& e, const char* what) {
    if (!exactnum::same_field(f, e.f))
        throw type_mismatch(std::string(what) + ": mixed coefficient fields");
}

constexpr int kMaxDegree = 16;

std::vector<std::vector<std::array<int, 3>>> build_monomial_table() {
    std::vector<std::vector<std::array<int, 3>>> t;
    for (int d = 0; d <= kMaxDegree; ++d) {
        std::vector<std::array<int, 3>> mons;
        for (int i = d; i >= 0; --i)
            for (int j = d - i; j >= 0; --j) mons.push_back({i, j, d - i - j});
        t.push_back(std::move(mons));
    }
    return t;
}

// index of x^i y^j z^(d-i-j) within monomials(d)
int mon_index(int d, int i, int j) {
    int di = d - i;
    return di * (di + 1) / 2 + (di - j);
}

element mon_eval(const std::array<int, 3>& m, const raw_point& p) {
    element acc = one(p[0].f);
    for (int k = 0; k < 3; ++k)
        for (int t = 0; t < m[k]; ++t) acc = acc * p[k];
    return acc;
}

// derivative of the monomial with respect to coordinate var, evaluated at p;
// the exponent is reduced into the field, so characteristic quirks are kept
element mon_deriv_eval(const std::array<int, 3>& m, int var, const raw_point& p) {
    if (m[var] == 0) return zero(p[0].f);
    std::array<int, 3> red = m;
    red[var] -= 1;
    return el(p[0].f, m[var]) * mon_eval(red, p);
}

void check_points(const std::vector<raw_point>& pts, std::size_t n, const char* what) {
    if (pts.size() != n)
        throw bad_arity(std::string(what) + ": expected " + std::to_string(n) +
                        " points, got " + std::to_string(pts.size()));
    const field_ref& f = pts[0][0].f;
    for (const auto& p : pts)
        for (const auto& c : p) require_same_field(f, c, what);
}

matrix monomial_rows(int degree, const std::vector<raw_point>& pts) {
    const auto& mons = monomials(degree);
    matrix m;
    for (const auto& p : pts) {
        std::vector<element> row;
        row.reserve(mons.size());
        for (const auto& mon : mons) row.push_back(mon_eval(mon, p));
        m.push_back(std::move(row));
    }
    return m;
}

std::vector<element> deriv_row(int degree, int var, const raw_point& p) {
    const auto& mons = monomials(degree);
    std::vector<element> row;
    row.reserve(mons.size());
    for (const auto& mon : mons) row.push_back(mon_deriv_eval(mon, var, p));
    return row;
}

// ---------------------------------------------------------------------------
// dense homogeneous forms in three variables, coefficients in monomial order

std::vector<element> hp_one(const field_ref& f) { return {one(f)}; }

std::vector<element> hp_mul(const field_ref& f, int da, const std::vector<element>& a,
                            int db, const std::vector<element>& b) {
    int dc = da + db;
    std::vector<element> c(monomials(dc).size(), zero(f));
    const auto& ma = monomials(da);
    const auto& mb = monomials(db);
    for (std::size_t i = 0; i < ma.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < mb.size(); ++j) {
            if (b[j].is_zero()) continue;
            int ci = ma[i][0] + mb[j][0];
            int cj = ma[i][1] + mb[j][1];
            std::size_t k = static_cast<std::size_t>(mon_index(dc, ci, cj));
            c[k] = c[k] + a[i] * b[j];
        }
    }
    return c;
}

// rows that force a degree-d form to vanish to order m at P: translate P to
// (0:0:1) by an invertible substitution and kill every coefficient of total
// (u, v)-degree below m
std::vector<std::vector<element>> mult_rows(const field_ref& f, int d, const point& P,
                                            int m) {
    int piv = 0;
    while (piv < 3 && P.x[piv].is_zero()) ++piv;
    std::array<int, 2> rest{};
    for (int k = 0, t = 0; k < 3; ++k)
        if (k != piv) rest[t++] = k;
    // substitution x_k = s[k][0] u + s[k][1] v + s[k][2] w, sending (0:0:1) to P
    std::array<std::array<element, 3>, 3> s = {{{zero(f), zero(f), zero(f)},
                                                {zero(f), zero(f), zero(f)},
                                                {zero(f), zero(f), zero(f)}}};
    s[rest[0]][0] = one(f);
    s[rest[1]][1] = one(f);
    for (int k = 0; k < 3; ++k) s[k][2] = P.x[k];

    // powers of the three substituted linear forms
    std::array<std::vector<std::vector<element>>, 3> pw;
    for (int k = 0; k < 3; ++k) {
        pw[k].push_back(hp_one(f));
        std::vector<element> lin = {s[k][0], s[k][1], s[k][2]};
        for (int e = 1; e <= d; ++e)
            pw[k].push_back(hp_mul(f, e - 1, pw[k][e - 1], 1, lin));
    }

    const auto& mons = monomials(d);
    std::vector<std::size_t> targets;
    for (std::size_t t = 0; t < mons.size(); ++t)
        if (mons[t][0] + mons[t][1] < m) targets.push_back(t);

    std::vector<std::vector<element>> rows(targets.size(),
                                           std::vector<element>(mons.size(), zero(f)));
    for (std::size_t mi = 0; mi < mons.size(); ++mi) {
        const auto& e = mons[mi];
        std::vector<element> prod = hp_mul(f, e[0], pw[0][e[0]], e[1], pw[1][e[1]]);
        prod = hp_mul(f, e[0] + e[1], prod, e[2], pw[2][e[2]]);
        for (std::size_t t = 0; t < targets.size(); ++t)
            rows[t][mi] = prod[targets[t]];
    }
    return rows;
}

// reduced row echelon form; returns pivot columns, mutates a in place
std::vector<int> rref(std::vector<std::vector<element>>& a, int ncols) {
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < ncols && r < a.size(); ++c) {
        std::size_t sel = r;
        while (sel < a.size() && a[sel][c].is_zero()) ++sel;
        if (sel == a.size()) continue;
        std::swap(a[r], a[sel]);
        element inv_p = exactnum::inv(a[r][c]);
        for (int k = c; k < ncols; ++k) a[r][k] = a[r][k] * inv_p;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            element factor = a[i][c];
            for (int k = c; k < ncols; ++k) a[i][k] = a[i][k] - factor * a[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<std::vector<element>> nullspace(const field_ref& f,
                                            std::vector<std::vector<element>> a,
                                            int ncols) {
    std::vector<int> pivots = rref(a, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<element>> basis;
    for (int fc = 0; fc < ncols; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<element> v(ncols, zero(f));
        v[fc] = one(f);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<element> scale_first_one(std::vector<element> v) {
    for (const auto& e : v) {
        if (e.is_zero()) continue;
        element inv_e = exactnum::inv(e);
        for (auto& x : v) x = x * inv_e;
        break;
    }
    return v;
}

// binary forms in (s, t), coefficient of s^(deg-i) t^i at index i
std::vector<element> bf_mul(const field_ref& f, const std::vector<element>& a,
                            const std::vector<element>& b) {
    std::vector<element> c(a.size() + b.size() - 1, zero(f));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            c[i + j] = c[i + j] + a[i] * b[j];
    }
    return c;
}

std::vector<constraint> class_constraints(const config& cfg, const picard::cls& c) {
    std::vector<constraint> cons;
    for (int i = 0; i < 8; ++i)
        if (c.b[i] > 0) cons.push_back({cfg.pts[i], c.b[i]});
    return cons;
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<std::array<int, 3>>& monomials(int d) {
    static const auto table = build_monomial_table();
    if (d < 0 || d > kMaxDegree)
        throw dp1_error("monomial degree out of range: " + std::to_string(d));
    return table[static_cast<std::size_t>(d)];
}

std::string monomial_name(const std::array<int, 3>& m) {
    static const char* names = "xyz";
    std::string out;
    for (int k = 0; k < 3; ++k) {
        if (m[k] == 0) continue;
        out += names[k];
        if (m[k] > 1) out += "^" + std::to_string(m[k]);
    }
    if (out.empty()) out = "1";
    return out;
}

point make_point(const raw_point& coords) {
    const field_ref& f = coords[0].f;
    require_same_field(f, coords[1], "point");
    require_same_field(f, coords[2], "point");
    int piv = 0;
    while (piv < 3 && coords[piv].is_zero()) ++piv;
    if (piv == 3) throw dp1_error("point: all coordinates are zero");
    element s = exactnum::inv(coords[piv]);
    return point{{coords[0] * s, coords[1] * s, coords[2] * s}};
}

point make_point(const field_ref& f, long long x, long long y, long long z) {
    return make_point(raw_point{el(f, x), el(f, y), el(f, z)});
}

std::string to_string(const point& p) {
    return "(" + exactnum::to_string(p.x[0]) + " : " + exactnum::to_string(p.x[1]) +
           " : " + exactnum::to_string(p.x[2]) + ")";
}

curve make_curve(const field_ref& f, int degree, std::vector<element> coeffs) {
    if (degree < 1) throw dp1_error("curve degree must be at least 1");
    const auto& mons = monomials(degree);
    if (coeffs.size() != mons.size())
        throw bad_arity("curve of degree " + std::to_string(degree) + " needs " +
                        std::to_string(mons.size()) + " coefficients, got " +
                        std::to_string(coeffs.size()));
    bool any = false;
    for (const auto& c : coeffs) {
        require_same_field(f, c, "curve");
        any = any || !c.is_zero();
    }
    if (!any) throw dp1_error("curve: all coefficients are zero");
    return curve{f, degree, std::move(coeffs)};
}

curve canonicalize(const curve& k) {
    curve out = k;
    out.c = scale_first_one(out.c);
    return out;
}

bool same_curve(const curve& a, const curve& b) {
    if (!exactnum::same_field(a.f, b.f) || a.degree != b.degree) return false;
    curve ca = canonicalize(a), cb = canonicalize(b);
    for (std::size_t i = 0; i < ca.c.size(); ++i)
        if (ca.c[i] != cb.c[i]) return false;
    return true;
}

element eval_curve(const curve& k, const raw_point& p) {
    require_same_field(k.f, p[0], "eval");
    require_same_field(k.f, p[1], "eval");
    require_same_field(k.f, p[2], "eval");
    const auto& mons = monomials(k.degree);
    element acc = zero(k.f);
    for (std::size_t i = 0; i < mons.size(); ++i) {
        if (k.c[i].is_zero()) continue;
        acc = acc + k.c[i] * mon_eval(mons[i], p);
    }
    return acc;
}

element eval_curve(const curve& k, const point& p) { return eval_curve(k, p.x); }

std::string to_string(const curve& k) {
    const auto& mons = monomials(k.degree);
    std::string out;
    for (std::size_t i = 0; i < mons.size(); ++i) {
        if (k.c[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string cs = exactnum::to_string(k.c[i]);
        std::string ms = monomial_name(mons[i]);
        if (cs == "1")
            out += ms;
        else if (cs.find_first_of("+-") != std::string::npos && cs[0] != '-')
            out += "(" + cs + ")" + ms;
        else
            out += cs + "*" + ms;
    }
    return out.empty() ? "0" : out;
}

std::vector<element> restrict_to_line(const curve& k, const raw_point& a,
                                      const raw_point& b) {
    const field_ref& f = k.f;
    for (int i = 0; i < 3; ++i) {
        require_same_field(f, a[i], "restrict");
        require_same_field(f, b[i], "restrict");
    }
    std::array<std::vector<std::vector<element>>, 3> pw;
    for (int i = 0; i < 3; ++i) {
        pw[i].push_back({one(f)});
        std::vector<element> lin = {a[i], b[i]};
        for (int e = 1; e <= k.degree; ++e) pw[i].push_back(bf_mul(f, pw[i][e - 1], lin));
    }
    std::vector<element> acc(static_cast<std::size_t>(k.degree) + 1, zero(f));
    const auto& mons = monomials(k.degree);
    for (std::size_t i = 0; i < mons.size(); ++i) {
        if (k.c[i].is_zero()) continue;
        std::vector<element> term = bf_mul(f, pw[0][mons[i][0]], pw[1][mons[i][1]]);
        term = bf_mul(f, term, pw[2][mons[i][2]]);
        for (std::size_t j = 0; j < acc.size(); ++j)
            acc[j] = acc[j] + k.c[i] * term[j];
    }
    return acc;
}

// ---------------------------------------------------------------------------

element det(matrix m) {
    if (m.empty()) throw bad_arity("det: empty matrix");
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw bad_arity("det: matrix is not square");
    const field_ref& f = m[0][0].f;
    bool negate = false;
    element acc = one(f);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t sel = c;
        while (sel < n && m[sel][c].is_zero()) ++sel;
        if (sel == n) return zero(f);
        if (sel != c) {
            std::swap(m[sel], m[c]);
            negate = !negate;
        }
        acc = acc * m[c][c];
        element inv_p = exactnum::inv(m[c][c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            element factor = m[r][c] * inv_p;
            for (std::size_t k = c; k < n; ++k) m[r][k] = m[r][k] - factor * m[c][k];
        }
    }
    return negate ? -acc : acc;
}

matrix build_M(const std::vector<raw_point>& pts) {
    check_points(pts, 3, "M");
    return monomial_rows(1, pts);
}

matrix build_N(const std::vector<raw_point>& pts) {
    check_points(pts, 6, "N");
    return monomial_rows(2, pts);
}

matrix build_L(const std::vector<raw_point>& pts) {
    check_points(pts, 8, "L");
    matrix m = monomial_rows(3, pts);
    m.push_back(deriv_row(3, 0, pts[7]));
    m.push_back(deriv_row(3, 2, pts[7]));
    return m;
}

matrix build_H(const std::vector<raw_point>& pts, const std::array<int, 3>& alpha) {
    check_points(pts, 9, "H");
    for (int a : alpha)
        if (a < 0 || a > 2) throw dp1_error("H: alpha index out of range");
    matrix m = monomial_rows(4, pts);
    for (int i = 0; i < 3; ++i) {
        for (int var = 0; var < 3; ++var) {
            if (var == alpha[i]) continue;
            m.push_back(deriv_row(4, var, pts[6 + static_cast<std::size_t>(i)]));
        }
    }
    return m;
}

element det_M(const std::vector<raw_point>& pts) { return det(build_M(pts)); }
element det_N(const std::vector<raw_point>& pts) { return det(build_N(pts)); }
element det_L(const std::vector<raw_point>& pts) { return det(build_L(pts)); }
element det_H(const std::vector<raw_point>& pts, const std::array<int, 3>& alpha) {
    return det(build_H(pts, alpha));
}

// ---------------------------------------------------------------------------

config make_config(const field_ref& f, const std::array<point, 8>& pts) {
    for (const auto& p : pts)
        for (const auto& c : p.x) require_same_field(f, c, "config");
    return config{f, pts};
}

namespace {

raw_point raw(const point& p) { return p.x; }

// does some cubic pass through all eight points with a singularity at pts[s]
bool singular_cubic_exists(const config& cfg, int s) {
    std::vector<raw_point> seq;
    for (int i = 0; i < 8; ++i)
        if (i != s) seq.push_back(raw(cfg.pts[i]));
    seq.push_back(raw(cfg.pts[s]));
    std::uint64_t chr = field_char(cfg.f);
    if (chr != 3 && !cfg.pts[s].x[1].is_zero()) return det_L(seq).is_zero();
    // determinant criterion unavailable; fall back to an explicit rank test
    std::vector<std::vector<element>> rows;
    const auto& mons = monomials(3);
    for (int i = 0; i < 8; ++i) {
        if (i == s) continue;
        std::vector<element> row;
        row.reserve(mons.size());
        for (const auto& mon : mons) row.push_back(mon_eval(mon, raw(cfg.pts[i])));
        rows.push_back(std::move(row));
    }
    for (auto& r : mult_rows(cfg.f, 3, cfg.pts[s], 2)) rows.push_back(std::move(r));
    return !nullspace(cfg.f, std::move(rows), static_cast<int>(mons.size())).empty();
}

}  // namespace

gp_report general_position(const config& cfg) {
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            if (cfg.pts[i] == cfg.pts[j])
                return {false, "repeated point", {i, j}};
    for (int i = 0; i < 8; ++i)
        for (int j = i + 1; j < 8; ++j)
            for (int k = j + 1; k < 8; ++k)
                if (det_M({raw(cfg.pts[i]), raw(cfg.pts[j]), raw(cfg.pts[k])}).is_zero())
                    return {false, "three points collinear", {i, j, k}};
    std::array<int, 8> idx{0, 1, 2, 3, 4, 5, 6, 7};
    for (int drop1 = 0; drop1 < 8; ++drop1)
        for (int drop2 = drop1 + 1; drop2 < 8; ++drop2) {
            std::vector<raw_point> six;
            std::vector<int> sub;
            for (int i : idx)
                if (i != drop1 && i != drop2) {
                    six.push_back(raw(cfg.pts[i]));
                    sub.push_back(i);
                }
            if (det_N(six).is_zero())
                return {false, "six points on a conic", sub};
        }
    for (int s = 0; s < 8; ++s)
        if (singular_cubic_exists(cfg, s))
            return {false,
                    "cubic through all eight points with a singularity at point " +
                        std::to_string(s + 1),
                    {s}};
    return {};
}

// ---------------------------------------------------------------------------

std::vector<curve> interpolation_basis(const field_ref& f, int degree,
                                       const std::vector<constraint>& cons) {
    if (degree < 1) throw dp1_error("interpolation degree must be at least 1");
    const auto& mons = monomials(degree);
    std::vector<std::vector<element>> rows;
    for (const auto& cst : cons) {
        if (cst.mult < 1) throw dp1_error("interpolation multiplicity must be at least 1");
        for (const auto& c : cst.p.x) require_same_field(f, c, "interpolate");
        if (cst.mult == 1) {
            std::vector<element> row;
            row.reserve(mons.size());
            for (const auto& mon : mons) row.push_back(mon_eval(mon, cst.p.x));
            rows.push_back(std::move(row));
        } else {
            for (auto& r : mult_rows(f, degree, cst.p, cst.mult))
                rows.push_back(std::move(r));
        }
    }
    std::vector<curve> out;
    for (auto& v : nullspace(f, std::move(rows), static_cast<int>(mons.size())))
        out.push_back(curve{f, degree, scale_first_one(std::move(v))});
    return out;
}

curve interpolate(const field_ref& f, int degree, const std::vector<constraint>& cons) {
    std::vector<curve> basis = interpolation_basis(f, degree, cons);
    if (basis.empty())
        throw no_curve_error("no curve of degree " + std::to_string(degree) +
                             " meets the constraints");
    if (basis.size() > 1)
        throw not_unique_error(static_cast<int>(basis.size()),
                               "interpolation space has dimension " +
                                   std::to_string(basis.size()));
    return basis[0];
}

curve unique_singular_cubic(const std::array<point, 7>& pts) {
    const field_ref& f = pts[0].x[0].f;
    for (const auto& p : pts)
        for (const auto& c : p.x) require_same_field(f, c, "singular cubic");
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (pts[i] == pts[j])
                throw hypothesis_violated("first six points are not pairwise distinct");
    if (pts[6] == pts[0])
        throw hypothesis_violated("seventh point coincides with the singular point");
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            for (int k = j + 1; k < 6; ++k)
                if (det_M({raw(pts[i]), raw(pts[j]), raw(pts[k])}).is_zero())
                    throw hypothesis_violated("three of the first six points are collinear");
    if (det_N({raw(pts[0]), raw(pts[1]), raw(pts[2]), raw(pts[3]), raw(pts[4]),
               raw(pts[5])})
            .is_zero())
        throw hypothesis_violated("first six points lie on a conic");
    curve line = interpolate(f, 1, {{pts[0], 1}, {pts[6], 1}});
    for (int i = 1; i < 6; ++i)
        if (eval_curve(line, pts[i]).is_zero())
            throw hypothesis_violated(
                "line through the singular and seventh points meets point " +
                std::to_string(i + 1));
    std::vector<constraint> cons = {{pts[0], 2}};
    for (int i = 1; i < 7; ++i) cons.push_back({pts[i], 1});
    curve cubic = interpolate(f, 3, cons);
    bool contains_line = true;
    for (const auto& c : restrict_to_line(cubic, raw(pts[0]), raw(pts[6])))
        if (!c.is_zero()) {
            contains_line = false;
            break;
        }
    if (contains_line)
        throw hypothesis_violated("resulting cubic contains the line through the "
                                  "singular and seventh points");
    return cubic;
}

// ---------------------------------------------------------------------------

curve_or_marker exceptional_curve(const config& cfg, const picard::cls& c) {
    picard::exceptional_index(c);
    if (c.a == 0) {
        for (int i = 0; i < 8; ++i)
            if (c.b[i] == -1) return {std::nullopt, i};
    }
    try {
        return {interpolate(cfg.f, c.a, class_constraints(cfg, c)), -1};
    } catch (const not_unique_error& e) {
        gp_report audit = general_position(cfg);
        std::string extra = audit.ok ? "general position audit passed"
                                     : "general position audit failed: " + audit.reason;
        throw not_unique_error(e.dimension, std::string(e.what()) + "; " + extra);
    } catch (const no_curve_error& e) {
        gp_report audit = general_position(cfg);
        std::string extra = audit.ok ? "general position audit passed"
                                     : "general position audit failed: " + audit.reason;
        throw no_curve_error(std::string(e.what()) + "; " + extra);
    }
}

concurrency_result concurrency_count(const config& cfg, const point& P) {
    for (const auto& c : P.x) require_same_field(cfg.f, c, "concurrency");
    concurrency_result out;
    for (const auto& c : picard::exceptional_classes()) {
        bool through = false;
        if (c.a == 0) {
            for (int i = 0; i < 8; ++i)
                if (c.b[i] == -1) through = (P == cfg.pts[i]);
        } else {
            curve_or_marker cm = exceptional_curve(cfg, c);
            through = eval_curve(*cm.crv, P).is_zero();
        }
        if (through) {
            out.count += 1;
            out.classes.push_back(c);
        }
    }
    std::set<picard::cls> seen(out.classes.begin(), out.classes.end());
    for (const auto& c : out.classes)
        if (seen.count(picard::partner(c))) {
            out.on_ramification = true;
            break;
        }
    return out;
}

const std::array<picard::cls, 10>& ten_curve_classes() {
    static const std::array<picard::cls, 10> t = {
        picard::parse_class("1;1,1,0,0,0,0,0,0"),
        picard::parse_class("1;0,0,1,1,0,0,0,0"),
        picard::parse_class("2;1,0,1,0,1,1,1,0"),
        picard::parse_class("2;1,0,0,1,1,1,0,1"),
        picard::parse_class("2;0,1,1,0,1,0,1,1"),
        picard::parse_class("2;0,1,0,1,0,1,1,1"),
        picard::parse_class("4;2,1,1,1,1,1,2,2"),
        picard::parse_class("4;1,2,1,1,2,2,1,1"),
        picard::parse_class("4;1,1,2,1,1,2,1,2"),
        picard::parse_class("4;1,1,1,2,2,1,2,1"),
    };
    return t;
}

std::array<curve, 10> ten_curves(const config& cfg) {
    const auto& cls = ten_curve_classes();
    auto get = [&](int i) -> curve {
        curve_or_marker cm = exceptional_curve(cfg, cls[static_cast<std::size_t>(i)]);
        return *cm.crv;
    };
    return {get(0), get(1), get(2), get(3), get(4), get(5), get(6), get(7), get(8), get(9)};
}

point line_intersection(const curve& l1, const curve& l2) {
    if (l1.degree != 1 || l2.degree != 1)
        throw bad_arity("line intersection needs two degree-1 curves");
    if (!exactnum::same_field(l1.f, l2.f))
        throw type_mismatch("line intersection: mixed coefficient fields");
    const auto& a = l1.c;
    const auto& b = l2.c;
    raw_point cross = {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                       a[0] * b[1] - a[1] * b[0]};
    if (cross[0].is_zero() && cross[1].is_zero() && cross[2].is_zero())
        throw dp1_error("line intersection: the lines coincide");
    return make_point(cross);
}

// ---------------------------------------------------------------------------

weighted_report verify_weighted_example(std::uint64_t p, long long beta,
                                        unsigned max_degree) {
    if (max_degree < 1) throw dp1_error("extension degree bound must be at least 1");
    field_ref base = exactnum::make_field("q:" + std::to_string(p));
    if (p == 5) throw hypothesis_violated("characteristic 5 is excluded");
    element b = el(base, beta);
    if (b.is_zero()) throw hypothesis_violated("beta vanishes in the base field");
    // discriminant factor beta^2 + 11 beta - 1 of the generic fiber
    element disc = b * b + el(base, 11) * b - one(base);
    if (disc.is_zero())
        throw hypothesis_violated("discriminant vanishes for this beta");

    weighted_report rep;
    rep.p = p;
    rep.beta = beta;
    rep.identity_ok = true;
    rep.base_point_incident = true;
    int best = -1;
    for (unsigned d = 1; d <= max_degree; ++d) {
        field_ref k;
        if (d == 1) {
            k = base;
        } else {
            exactnum::polynomial mod = exactnum::first_irreducible(p, d);
            std::string desc = "gf:" + std::to_string(p) + ":";
            bool first = true;
            for (int i = static_cast<int>(mod.c.size()) - 1; i >= 0; --i) {
                const element& ce = mod.c[static_cast<std::size_t>(i)];
                if (ce.is_zero()) continue;
                if (!first) desc += "+";
                first = false;
                std::string cs = exactnum::to_string(ce);
                if (i == 0)
                    desc += cs;
                else {
                    if (cs != "1") desc += cs;
                    desc += (i == 1) ? "x" : "x^" + std::to_string(i);
                }
            }
            k = exactnum::make_field(desc);
        }
        element bk = el(k, beta);
        exactnum::polynomial golden =
            exactnum::make_poly(k, {el(k, -1), el(k, -1), one(k)});
        std::vector<weighted_pair> found;
        for (const element& rho : exactnum::all_roots(golden)) {
            element c = bk + exactnum::pow(rho, 5);
            if (c.is_zero()) continue;
            exactnum::polynomial quint = exactnum::make_poly(
                k, {-exactnum::inv(c), zero(k), zero(k), zero(k), zero(k), one(k)});
            for (const element& sigma : exactnum::all_roots(quint))
                found.push_back({k, rho, sigma});
        }
        rep.pairs_per_degree.push_back(static_cast<int>(found.size()));
        for (const auto& pr : found) {
            // x = sigma^2 z^2 + rho sigma z, y = -sigma^3 z^3 + (rho+1) sigma^2 z^2,
            // substituted into the affine chart w = 1 of the defining relation
            element s2 = pr.sigma * pr.sigma;
            element s3 = s2 * pr.sigma;
            exactnum::polynomial x0 =
                exactnum::make_poly(k, {zero(k), pr.rho * pr.sigma, s2});
            exactnum::polynomial y0 = exactnum::make_poly(
                k, {zero(k), zero(k), (pr.rho + one(k)) * s2, -s3});
            exactnum::polynomial z5 = exactnum::make_poly(
                k, {zero(k), zero(k), zero(k), zero(k), zero(k), one(k)});
            exactnum::polynomial cz = exactnum::make_poly(k, {bk + one(k)});
            exactnum::polynomial cb = exactnum::make_poly(k, {bk});
            exactnum::polynomial lhs = exactnum::p_add(
                exactnum::p_add(exactnum::p_mul(y0, y0),
                                exactnum::p_mul(cz, exactnum::p_mul(x0, y0))),
                exactnum::p_mul(cb, y0));
            exactnum::polynomial rhs = exactnum::p_sub(
                exactnum::p_add(exactnum::p_mul(x0, exactnum::p_mul(x0, x0)),
                                exactnum::p_mul(cb, exactnum::p_mul(x0, x0))),
                z5);
            if (!exactnum::p_sub(lhs, rhs).is_zero()) rep.identity_ok = false;
            bool x_const = x0.c.empty() || x0.c[0].is_zero();
            bool y_const = y0.c.empty() || y0.c[0].is_zero();
            if (!(x_const && y_const)) rep.base_point_incident = false;
        }
        if (static_cast<int>(found.size()) >= best) {
            best = static_cast<int>(found.size());
            rep.pairs = std::move(found);
        }
    }
    rep.total_pairs = best < 0 ? 0 : best;
    if (rep.total_pairs == 0)
        throw root_not_found("no (rho, sigma) pair exists in GF(" + std::to_string(p) +
                             "^d) for d up to " + std::to_string(max_degree));
    return rep;
}

// ---------------------------------------------------------------------------

config parse_points_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("points file: ") + e.what());
    }
    if (!j.is_object() || !j.contains("field") || !j.contains("points"))
        throw parse_error("points file: expected an object with field and points");
    field_ref f;
    try {
        f = exactnum::make_field(j.at("field").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("points file: ") + e.what());
    }
    const auto& arr = j.at("points");
    if (!arr.is_array() || arr.size() != 8)
        throw parse_error("points file: expected exactly 8 points");
    std::array<point, 8> pts = {point{{zero(f), zero(f), zero(f)}}, {}, {}, {}, {}, {}, {}, {}};
    for (std::size_t i = 0; i < 8; ++i) {
        const auto& pj = arr[i];
        if (!pj.is_array() || pj.size() != 3)
            throw parse_error("points file: each point needs 3 coordinates");
        raw_point rp = {zero(f), zero(f), zero(f)};
        for (std::size_t c = 0; c < 3; ++c) {
            const auto& cj = pj[c];
            std::string s;
            if (cj.is_string())
                s = cj.get<std::string>();
            else if (cj.is_number_integer())
                s = std::to_string(cj.get<long long>());
            else
                throw parse_error("points file: coordinates must be strings or integers");
            rp[c] = exactnum::parse_element(f, s);
        }
        pts[i] = make_point(rp);
    }
    return make_config(f, pts);
}

std::string points_to_json(const config& cfg) {
    nlohmann::ordered_json j;
    j["field"] = cfg.f->descriptor;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& p : cfg.pts) {
        nlohmann::ordered_json pj = nlohmann::ordered_json::array();
        for (const auto& c : p.x) pj.push_back(exactnum::to_string(c));
        arr.push_back(pj);
    }
    j["points"] = arr;
    return j.dump();
}

std::string curve_to_json(const curve& k) {
    nlohmann::ordered_json j;
    j["degree"] = k.degree;
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::object();
    const auto& mons = monomials(k.degree);
    for (std::size_t i = 0; i < mons.size(); ++i) {
        if (k.c[i].is_zero()) continue;
        coeffs[monomial_name(mons[i])] = exactnum::to_string(k.c[i]);
    }
    j["coeffs"] = coeffs;
    return j.dump();
}

}  // namespace dp1::plane
