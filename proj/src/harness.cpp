#include "dp1/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "dp1/picard.hpp"

namespace dp1::harness {

namespace {

using exactnum::element;
using exactnum::field_kind;
using exactnum::make_field;
using exactnum::parse_element;
using nlohmann::ordered_json;
using plane::config;
using plane::constraint;
using plane::curve;
using plane::point;

// ---------------------------------------------------------------------------
// Fixture tables. Coefficient lists are dense in the monomial order of
// plane::monomials, with "a" the distinguished generator of the extension
// field; comparisons are up to the canonical scaling.

struct curve_rule {
    const char* name;
    int degree;
    std::vector<int> through;  // simple points, 0-based
    std::vector<int> sing;     // double points
    std::vector<const char*> coeffs;
};

struct point_table {
    const char* field;
    std::array<std::array<const char*, 3>, 8> pts;
    std::array<const char*, 3> at;
    int count;
    bool ramified;
    std::vector<curve_rule> curves;
};

const point_table& table_51() {
    static const point_table t{
        "gf:2:x^5+x^2+1",
        {{{"0", "1", "1"},
          {"0", "1", "a^19"},
          {"1", "0", "1"},
          {"1", "0", "a^5"},
          {"1", "1", "1"},
          {"a^20", "a^20", "a^16"},
          {"a^24", "a^25", "1"},
          {"a^30", "1", "a^5"}}},
        {"0", "0", "1"},
        16,
        true,
        {
            {"L1", 1, {0, 1}, {}, {"1", "0", "0"}},
            {"L2", 1, {2, 3}, {}, {"0", "1", "0"}},
            {"L3", 1, {4, 5}, {}, {"1", "1", "0"}},
            {"L4", 1, {6, 7}, {}, {"1", "a^30", "0"}},
            {"C_{1,2}", 3, {2, 3, 4, 5, 6, 7}, {1},
             {"1", "a^24", "a^28", "a^30", "a^9", "a^26", "a^13", "0", "a^6", "0"}},
            {"C_{3,4}", 3, {0, 1, 4, 5, 6, 7}, {3},
             {"1", "a^12", "0", "a^4", "a^11", "a^21", "1", "a^23", "a^12", "0"}},
            {"C_{5,6}", 3, {0, 1, 2, 3, 6, 7}, {5},
             {"1", "a^4", "a^28", "a^25", "a^20", "a^26", "a^17", "a^9", "a^29", "0"}},
            {"C_{7,8}", 3, {0, 1, 2, 3, 4, 5}, {7},
             {"1", "a", "a^28", "a^17", "a^10", "a^26", "a^16", "a^8", "a^28", "0"}},
            {"C_{8,7}", 3, {0, 1, 2, 3, 4, 5}, {6},
             {"1", "a^26", "a^28", "a^19", "a^10", "a^26", "a^16", "a^8", "a^28", "0"}},
        }};
    return t;
}

const point_table& table_52() {
    static const point_table t{
        "QQ",
        {{{"0", "1", "1"},
          {"0", "5", "3"},
          {"1", "0", "1"},
          {"-1", "0", "1"},
          {"1", "1", "1"},
          {"4", "4", "5"},
          {"-2", "2", "1"},
          {"2", "-2", "1"}}},
        {"0", "0", "1"},
        10,
        true,
        {
            {"L1", 1, {0, 1}, {}, {"1", "0", "0"}},
            {"L2", 1, {2, 3}, {}, {"0", "1", "0"}},
            {"L3", 1, {4, 5}, {}, {"1", "-1", "0"}},
            {"L4", 1, {6, 7}, {}, {"1", "1", "0"}},
            {"C_{7,8}", 3, {0, 1, 2, 3, 4, 5}, {7},
             {"1", "-3/4", "0", "-31/12", "10/3", "-1", "-1", "8/3", "-5/3", "0"}},
            {"C_{8,7}", 3, {0, 1, 2, 3, 4, 5}, {6},
             {"1", "13/4", "0", "43/4", "-14", "-1", "15", "-40", "25", "0"}},
        }};
    return t;
}

const point_table& table_54() {
    static const point_table t{
        "gf:3:x^3+2x+1",
        {{{"1", "0", "1"},
          {"a^20", "0", "a^18"},
          {"a^6", "a^23", "a^2"},
          {"a^15", "a^19", "a^18"},
          {"0", "1", "1"},
          {"0", "2", "1"},
          {"a^9", "a^23", "2"},
          {"a^24", "a^7", "a^5"}}},
        {"2", "0", "1"},
        12,
        false,
        {
            {"L1", 1, {0, 1}, {}, {"0", "1", "0"}},
            {"L2", 1, {2, 3}, {}, {"1", "2a^23", "1"}},
            {"C1", 2, {0, 2, 4, 5, 6}, {}, {"1", "a^7", "0", "1", "0", "2"}},
            {"C2", 2, {0, 3, 4, 5, 7}, {}, {"1", "a^16", "0", "1", "0", "2"}},
            {"C3", 2, {1, 2, 4, 6, 7}, {},
             {"1", "0", "a^25", "a^16", "a^11", "a^15"}},
            {"C4", 2, {1, 3, 5, 6, 7}, {},
             {"1", "a^9", "a^25", "a^20", "a^6", "a^15"}},
            {"D1", 4, {1, 2, 3, 4, 5}, {0, 6, 7},
             {"a^4", "a^11", "a^12", "a^24", "a^10", "a^16", "a^16", "a^21",
              "a^17", "a^25", "a^6", "a^12", "0", "a^25", "a^19"}},
            {"D2", 4, {0, 2, 3, 6, 7}, {1, 4, 5},
             {"a^14", "1", "a^16", "a^4", "a^4", "a^21", "a^25", "a^16", "a^12",
              "a^3", "a^5", "0", "a^5", "0", "a^5"}},
            {"D3", 4, {0, 1, 3, 4, 6}, {2, 5, 7},
             {"a^21", "a^4", "a^20", "a^9", "a^19", "a^3", "a^21", "a^11", "a^2",
              "a^7", "a^2", "a^17", "a", "a^4", "a^23"}},
            {"D4", 4, {0, 1, 2, 5, 7}, {3, 4, 6},
             {"a^19", "a^22", "a^18", "a^20", "a^21", "a", "a^2", "a^20", "a^10",
              "a^5", "a^23", "a^20", "a^3", "a^7", "a^21"}},
            {"G1", 5, {5, 6}, {0, 1, 2, 3, 4, 7},
             {"a", "a^8", "2", "a^21", "a^20", "a^23", "a^5", "a^25", "a^22",
              "a^7", "a^25", "a^12", "2", "a^25", "a^2", "a^21", "a^6", "a^8",
              "a", "0", "a^5"}},
            {"G2", 5, {4, 7}, {0, 1, 2, 3, 5, 6},
             {"a^4", "a^11", "a^16", "a^7", "a^16", "1", "a", "a^25", "a^2",
              "a^10", "0", "a^17", "a^15", "a^8", "a^5", "a^14", "a^16", "a^11",
              "a^10", "a^25", "a^8"}},
        }};
    return t;
}

// Six-parameter family cases: (a,b,c,m,u,v) over the given field.
struct family_case {
    int p;
    const char* field;
    std::array<const char*, 6> params;
};

const std::vector<family_case>& family_cases() {
    static const std::vector<family_case> t{
        {3, "gf:3:x^3+2x+1", {"a", "a^20", "a^15", "a^8", "a^2", "a^12"}},
        {5, "gf:5:x^2+4x+2", {"a^19", "a^11", "a^10", "a^21", "a^3", "a^14"}},
        {7, "gf:7:x^2+6x+3", {"3", "a^45", "a^35", "a^4", "a^46", "a^9"}},
        {11, "gf:11:x^2+7x+2", {"a^106", "a^94", "4", "a^62", "a^111", "a^6"}},
        {13, "gf:13:x^2+12x+2",
         {"a^161", "a^156", "a^83", "a^94", "a^132", "a^146"}},
        {17, "gf:17:x^2+16x+3",
         {"a^74", "a^166", "a^64", "a^24", "a^178", "a^250"}},
        {19, "q:19", {"2", "2", "14", "8", "7", "12"}},
    };
    return t;
}

// ---------------------------------------------------------------------------

point parse_point(const field_ref& f, const std::array<const char*, 3>& s) {
    return plane::make_point(
        {parse_element(f, s[0]), parse_element(f, s[1]), parse_element(f, s[2])});
}

point parse_point(const field_ref& f, const std::array<std::string, 3>& s) {
    return plane::make_point(
        {parse_element(f, s[0]), parse_element(f, s[1]), parse_element(f, s[2])});
}

config table_config(const field_ref& f, const point_table& t) {
    std::array<point, 8> pts;
    for (int i = 0; i < 8; ++i) pts[i] = parse_point(f, t.pts[i]);
    return plane::make_config(f, pts);
}

curve rule_expected(const field_ref& f, const curve_rule& r) {
    std::vector<element> c;
    c.reserve(r.coeffs.size());
    for (const char* s : r.coeffs) c.push_back(parse_element(f, s));
    return plane::make_curve(f, r.degree, std::move(c));
}

curve rule_interpolate(const config& cfg, const curve_rule& r) {
    std::vector<constraint> cons;
    for (int i : r.sing) cons.push_back({cfg.pts[i], 2});
    for (int i : r.through) cons.push_back({cfg.pts[i], 1});
    return plane::interpolate(cfg.f, r.degree, cons);
}

void run_gp_check(const std::string& id, const config& cfg, fixture_report& rep) {
    plane::gp_report gp = plane::general_position(cfg);
    if (!gp.ok)
        throw fixture_mismatch(id + " general-position: " + gp.reason);
    rep.checks.push_back({"general-position", true, ""});
}

void run_count_check(const std::string& id, const config& cfg, const point& at,
                     int want_count, bool want_ram, fixture_report& rep) {
    plane::concurrency_result res = plane::concurrency_count(cfg, at);
    rep.count = res.count;
    rep.ramified = res.on_ramification;
    if (res.count != want_count)
        throw fixture_mismatch(id + " count: expected " +
                               std::to_string(want_count) + ", got " +
                               std::to_string(res.count));
    rep.checks.push_back({"count", true, std::to_string(res.count)});
    if (res.on_ramification != want_ram)
        throw fixture_mismatch(id + " ramification flag: expected " +
                               std::string(want_ram ? "true" : "false") +
                               ", got " +
                               std::string(res.on_ramification ? "true" : "false"));
    rep.checks.push_back({"ramification", true, want_ram ? "true" : "false"});
}

fixture_report verify_table(const std::string& id, const point_table& t) {
    fixture_report rep;
    rep.id = id;
    field_ref f = make_field(t.field);
    rep.field = f->descriptor;
    config cfg = table_config(f, t);
    run_gp_check(id, cfg, rep);
    for (const curve_rule& r : t.curves) {
        curve got = rule_interpolate(cfg, r);
        require_same_curve(id + " " + r.name, got, rule_expected(f, r));
        rep.checks.push_back({std::string("curve ") + r.name, true, "exact"});
    }
    run_count_check(id, cfg, parse_point(f, t.at), t.count, t.ramified, rep);
    return rep;
}

fixture_report verify_family(const std::string& id, const family_case& fc) {
    fixture_report rep;
    rep.id = id;
    field_ref f = make_field(fc.field);
    rep.field = f->descriptor;
    std::array<element, 6> par;
    for (int i = 0; i < 6; ++i) par[i] = parse_element(f, fc.params[i]);
    config cfg = plane::make_config(f, family_points(par));
    run_gp_check(id, cfg, rep);

    const element o = exactnum::one(f);
    const element z = exactnum::zero(f);
    struct line_rule {
        const char* name;
        int i, j;
        std::array<element, 3> coeffs;
    };
    // L1: x=0, L2: y=0, L3: x=y, L4: x=my.
    const std::array<line_rule, 4> lines{{{"L1", 0, 1, {o, z, z}},
                                          {"L2", 2, 3, {z, o, z}},
                                          {"L3", 4, 5, {o, -o, z}},
                                          {"L4", 6, 7, {o, -par[3], z}}}};
    for (const line_rule& lr : lines) {
        curve got = plane::interpolate(f, 1, {{cfg.pts[lr.i], 1}, {cfg.pts[lr.j], 1}});
        curve want = plane::make_curve(
            f, 1, {lr.coeffs[0], lr.coeffs[1], lr.coeffs[2]});
        require_same_curve(id + " " + lr.name, got, want);
        rep.checks.push_back({std::string("curve ") + lr.name, true, "exact"});
    }

    point at = plane::make_point(plane::raw_point{z, z, o});
    // The two distinguished cubics contain the common point of the lines.
    struct cubic_rule {
        const char* name;
        int skip, sing;
    };
    for (const cubic_rule& cr :
         {cubic_rule{"C_{7,8}", 6, 7}, cubic_rule{"C_{8,7}", 7, 6}}) {
        std::vector<constraint> cons{{cfg.pts[cr.sing], 2}};
        for (int i = 0; i < 8; ++i)
            if (i != cr.skip && i != cr.sing) cons.push_back({cfg.pts[i], 1});
        curve cub = plane::interpolate(f, 3, cons);
        if (!plane::eval_curve(cub, at).is_zero())
            throw fixture_mismatch(id + " " + cr.name +
                                   " does not contain (0:0:1)");
        rep.checks.push_back(
            {std::string(cr.name) + " contains (0:0:1)", true, ""});
    }

    run_count_check(id, cfg, at, 10, true, rep);
    return rep;
}

fixture_report verify_weighted() {
    fixture_report rep;
    rep.id = "5.6";
    rep.partial = true;
    plane::weighted_report w = plane::verify_weighted_example(7, 1, 4);
    rep.field = w.pairs.empty() ? "gf:7" : w.pairs.front().k->descriptor;
    if (!w.identity_ok)
        throw fixture_mismatch("5.6 parametrization does not satisfy the quintic");
    rep.checks.push_back({"parametrization identity", true, ""});
    if (!w.base_point_incident)
        throw fixture_mismatch("5.6 base point not on the parametrized curves");
    rep.checks.push_back({"base point incidence", true, ""});
    const std::vector<int> want_pairs{0, 2, 0, 10};
    if (w.pairs_per_degree != want_pairs) {
        std::ostringstream os;
        os << "5.6 pairs per degree:";
        for (int n : w.pairs_per_degree) os << ' ' << n;
        throw fixture_mismatch(os.str());
    }
    rep.checks.push_back({"pairs per degree", true, "0 2 0 10"});
    rep.count = w.total_pairs;
    rep.ramified = false;
    if (w.total_pairs != 10)
        throw fixture_mismatch("5.6 pair count: expected 10, got " +
                               std::to_string(w.total_pairs));
    rep.checks.push_back({"pair count", true, "10"});
    return rep;
}

// ---------------------------------------------------------------------------
// Search internals.

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t base, int trial) {
    return splitmix(base ^ splitmix(static_cast<std::uint64_t>(trial) + 1));
}

std::string iso_timestamp() {
    std::time_t t = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::array<std::string, 3> point_strings(const point& p) {
    return {exactnum::to_string(p.x[0]), exactnum::to_string(p.x[1]),
            exactnum::to_string(p.x[2])};
}

search_record make_record(const config& cfg, const point& best,
                          const plane::concurrency_result& res,
                          std::uint64_t seed, const char* mode) {
    search_record rec;
    rec.field = cfg.f->descriptor;
    for (int i = 0; i < 8; ++i) rec.points[i] = point_strings(cfg.pts[i]);
    rec.best = point_strings(best);
    rec.count = res.count;
    rec.ramified = res.on_ramification;
    rec.critical = res.count > theorem_bound(cfg.f->p, res.on_ramification);
    rec.seed = seed;
    rec.timestamp = iso_timestamp();
    rec.mode = mode;
    return rec;
}

struct trial_outcome {
    bool gp_ok = false;
    int best_count = 0;
    std::optional<search_record> record;
};

trial_outcome family_trial(const field_ref& f, int target, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    trial_outcome out;
    std::array<element, 6> par;
    for (auto& e : par) e = exactnum::random_element(f, rng);
    config cfg = plane::make_config(f, family_points(par));
    if (!plane::general_position(cfg).ok) return out;
    out.gp_ok = true;
    point at = plane::make_point(
        plane::raw_point{exactnum::zero(f), exactnum::zero(f), exactnum::one(f)});
    plane::concurrency_result res = plane::concurrency_count(cfg, at);
    out.best_count = res.count;
    if (res.count >= target)
        out.record = make_record(cfg, at, res, seed, "family");
    return out;
}

point random_projective_point(const field_ref& f, std::mt19937_64& rng) {
    for (;;) {
        plane::raw_point raw{exactnum::random_element(f, rng),
                             exactnum::random_element(f, rng),
                             exactnum::random_element(f, rng)};
        if (raw[0].is_zero() && raw[1].is_zero() && raw[2].is_zero()) continue;
        return plane::make_point(raw);
    }
}

// Candidate evaluation points: pairwise crossings of the 28 line models,
// excluding the configuration points themselves (markers would inflate the
// count there without describing the blown-up surface).
trial_outcome random_trial(const field_ref& f, int target, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    trial_outcome out;
    config cfg{f, {}};
    try {
        cfg = random_gp_config(f, rng, 2000);
    } catch (const search_exhausted&) {
        return out;
    }
    out.gp_ok = true;

    const std::vector<picard::cls>& cls = picard::exceptional_classes();
    std::vector<curve> models;  // parallel to cls for a >= 1; lines collected
    std::vector<const curve*> lines;
    models.reserve(cls.size());
    std::vector<int> model_cls;
    for (int ci = 0; ci < static_cast<int>(cls.size()); ++ci) {
        if (cls[static_cast<std::size_t>(ci)].a == 0) continue;
        plane::curve_or_marker cm =
            plane::exceptional_curve(cfg, cls[static_cast<std::size_t>(ci)]);
        models.push_back(*cm.crv);
        model_cls.push_back(ci);
    }
    for (std::size_t k = 0; k < models.size(); ++k)
        if (models[k].degree == 1) lines.push_back(&models[k]);

    std::vector<point> cands;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            point q = plane::line_intersection(*lines[i], *lines[j]);
            bool is_cfg = false;
            for (const point& cp : cfg.pts)
                if (cp == q) is_cfg = true;
            if (is_cfg) continue;
            if (seen.insert(plane::to_string(q)).second) cands.push_back(q);
        }
    }

    int best = -1;
    const point* where = nullptr;
    for (const point& q : cands) {
        int n = 0;
        for (const curve& m : models)
            if (plane::eval_curve(m, q).is_zero()) ++n;
        if (n > best) {
            best = n;
            where = &q;
        }
    }
    if (where == nullptr) return out;
    out.best_count = best;
    if (best >= target) {
        plane::concurrency_result res = plane::concurrency_count(cfg, *where);
        out.record = make_record(cfg, *where, res, seed, "random");
    }
    return out;
}

int resolve_jobs(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("DP1_JOBS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<std::string>& fixture_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v{"5.1", "5.2"};
        for (const family_case& fc : family_cases())
            v.push_back("5.3:" + std::to_string(fc.p));
        v.push_back("5.4");
        v.push_back("5.6");
        return v;
    }();
    return ids;
}

bool fixture_report::ok() const {
    for (const check_result& c : checks)
        if (!c.pass) return false;
    return !checks.empty();
}

void require_same_curve(const std::string& name, const curve& got,
                        const curve& want) {
    if (got.degree != want.degree)
        throw fixture_mismatch(name + ": degree " + std::to_string(got.degree) +
                               " vs " + std::to_string(want.degree));
    curve cg = plane::canonicalize(got);
    curve cw = plane::canonicalize(want);
    if (cg.c == cw.c) return;
    const auto& mons = plane::monomials(got.degree);
    std::ostringstream os;
    os << name << ": coefficient diff:";
    for (std::size_t i = 0; i < mons.size(); ++i) {
        if (cg.c[i] == cw.c[i]) continue;
        os << ' ' << plane::monomial_name(mons[i]) << ": "
           << exactnum::to_string(cg.c[i]) << " vs "
           << exactnum::to_string(cw.c[i]) << ';';
    }
    throw fixture_mismatch(os.str());
}

fixture_report verify_example(const std::string& id) {
    if (id == "5.1") return verify_table(id, table_51());
    if (id == "5.2") return verify_table(id, table_52());
    if (id == "5.4") return verify_table(id, table_54());
    if (id == "5.6") return verify_weighted();
    if (id.rfind("5.3:", 0) == 0) {
        const std::string ps = id.substr(4);
        for (const family_case& fc : family_cases())
            if (std::to_string(fc.p) == ps) return verify_family(id, fc);
    }
    throw parse_error("unknown fixture id: " + id);
}

// ---------------------------------------------------------------------------

bool run_report::all_ok() const {
    for (const run_entry& e : entries)
        if (!e.ok) return false;
    return true;
}

run_report run_fixtures(const std::vector<std::string>& ids) {
    const std::vector<std::string>& want = ids.empty() ? fixture_ids() : ids;
    run_report out;
    for (const std::string& id : want) {
        run_entry e;
        e.id = id;
        e.partial = id == "5.6";
        try {
            fixture_report rep = verify_example(id);
            e.ok = rep.ok();
            e.count = rep.count;
            e.ramified = rep.ramified;
            e.checks = rep.checks;
        } catch (const fixture_mismatch& ex) {
            e.ok = false;
            e.message = ex.what();
        } catch (const dp1_error& ex) {
            e.ok = false;
            e.message = std::string("error: ") + ex.what();
        }
        out.entries.push_back(std::move(e));
    }
    return out;
}

std::string report_json(const run_report& r) {
    ordered_json j;
    j["fixtures"] = ordered_json::array();
    for (const run_entry& e : r.entries) {
        ordered_json je;
        je["id"] = e.id;
        je["ok"] = e.ok;
        if (e.partial) je["partial"] = true;
        if (e.count >= 0) {
            je["count"] = e.count;
            je["ramified"] = e.ramified;
        }
        if (!e.message.empty()) je["message"] = e.message;
        ordered_json checks = ordered_json::array();
        for (const check_result& c : e.checks) {
            ordered_json jc;
            jc["name"] = c.name;
            jc["pass"] = c.pass;
            if (!c.detail.empty()) jc["detail"] = c.detail;
            checks.push_back(std::move(jc));
        }
        je["checks"] = std::move(checks);
        j["fixtures"].push_back(std::move(je));
    }
    j["all_ok"] = r.all_ok();
    return j.dump(2);
}

std::string report_text(const run_report& r) {
    std::ostringstream os;
    for (const run_entry& e : r.entries) {
        os << (e.ok ? "PASS" : "FAIL") << ' ' << e.id;
        if (e.partial) os << " PARTIAL";
        if (e.ok && e.count >= 0)
            os << " (" << e.count << " concurrent, "
               << (e.ramified ? "ramified" : "unramified") << ')';
        if (e.ok && e.id == "5.6") os << " (" << e.count << " pairs)";
        if (!e.ok) os << " " << e.message;
        os << '\n';
    }
    os << (r.all_ok() ? "all fixtures pass" : "FAILURES present") << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------

int theorem_bound(std::uint64_t characteristic, bool ramified) {
    if (ramified) return characteristic == 2 ? 16 : 10;
    return characteristic == 3 ? 12 : 10;
}

std::array<point, 8> family_points(const std::array<element, 6>& params) {
    const field_ref& f = params[0].f;
    const element o = exactnum::one(f);
    const element z = exactnum::zero(f);
    const element &a = params[0], &b = params[1], &c = params[2],
                  &m = params[3], &u = params[4], &v = params[5];
    auto mk = [](const element& x, const element& y, const element& zz) {
        return plane::make_point(plane::raw_point{x, y, zz});
    };
    return {mk(z, o, o), mk(z, o, a), mk(o, z, o), mk(o, z, b),
            mk(o, o, o), mk(o, o, c), mk(m, o, u), mk(m, o, v)};
}

plane::config random_gp_config(const field_ref& f, std::mt19937_64& rng,
                               int max_attempts) {
    for (int att = 0; att < max_attempts; ++att) {
        std::array<point, 8> pts;
        for (auto& p : pts) p = random_projective_point(f, rng);
        config cfg = plane::make_config(f, pts);
        if (plane::general_position(cfg).ok) return cfg;
    }
    throw search_exhausted("no general-position configuration after " +
                           std::to_string(max_attempts) + " attempts");
}

std::string to_jsonl(const search_record& rec) {
    ordered_json j;
    j["field"] = rec.field;
    ordered_json pts = ordered_json::array();
    for (const auto& p : rec.points)
        pts.push_back(ordered_json::array({p[0], p[1], p[2]}));
    j["points"] = std::move(pts);
    j["best"] = ordered_json::array({rec.best[0], rec.best[1], rec.best[2]});
    j["count"] = rec.count;
    j["ramified"] = rec.ramified;
    j["critical"] = rec.critical;
    j["seed"] = rec.seed;
    j["timestamp"] = rec.timestamp;
    j["mode"] = rec.mode;
    return j.dump();
}

search_record record_from_json(const std::string& line) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad search record: ") + e.what());
    }
    try {
        search_record rec;
        rec.field = j.at("field").get<std::string>();
        const auto& pts = j.at("points");
        if (pts.size() != 8) throw parse_error("search record needs 8 points");
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t k = 0; k < 3; ++k)
                rec.points[i][k] = pts[i].at(k).get<std::string>();
        for (std::size_t k = 0; k < 3; ++k)
            rec.best[k] = j.at("best").at(k).get<std::string>();
        rec.count = j.at("count").get<int>();
        rec.ramified = j.at("ramified").get<bool>();
        rec.critical = j.at("critical").get<bool>();
        rec.seed = j.at("seed").get<std::uint64_t>();
        rec.timestamp = j.at("timestamp").get<std::string>();
        rec.mode = j.at("mode").get<std::string>();
        return rec;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad search record: ") + e.what());
    }
}

bool reverify(const search_record& rec) {
    field_ref f = make_field(rec.field);
    std::array<point, 8> pts;
    for (int i = 0; i < 8; ++i) pts[i] = parse_point(f, rec.points[i]);
    config cfg = plane::make_config(f, pts);
    point at = parse_point(f, rec.best);
    plane::concurrency_result res = plane::concurrency_count(cfg, at);
    return res.count == rec.count && res.on_ramification == rec.ramified;
}

search_summary search(const search_options& opts) {
    if (opts.trials < 1) throw dp1_error("search needs at least one trial");
    field_ref f = make_field(opts.field);
    if (f->kind == field_kind::rational)
        throw dp1_error("search requires a finite field");
    const int jobs = std::min(resolve_jobs(opts.jobs), opts.trials);

    std::vector<trial_outcome> outcomes(static_cast<std::size_t>(opts.trials));
    auto worker = [&](int w) {
        for (int i = w; i < opts.trials; i += jobs) {
            std::uint64_t s = trial_seed(opts.seed, i);
            outcomes[static_cast<std::size_t>(i)] =
                opts.mode == search_mode::family
                    ? family_trial(f, opts.target, s)
                    : random_trial(f, opts.target, s);
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(jobs));
        for (int w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
        for (auto& t : threads) t.join();
    }

    search_summary sum;
    sum.trials = opts.trials;
    for (trial_outcome& out : outcomes) {
        if (!out.gp_ok) {
            ++sum.gp_failures;
            continue;
        }
        sum.best_count = std::max(sum.best_count, out.best_count);
        if (out.record) {
            sum.critical = sum.critical || out.record->critical;
            sum.records.push_back(std::move(*out.record));
        }
    }
    sum.kept = static_cast<int>(sum.records.size());

    if (!opts.output_path.empty() && !sum.records.empty()) {
        std::ofstream os(opts.output_path, std::ios::app);
        if (!os) throw dp1_error("cannot open " + opts.output_path);
        for (const search_record& rec : sum.records) os << to_jsonl(rec) << '\n';
        if (!os.flush()) throw dp1_error("write failed: " + opts.output_path);
    }
    return sum;
}

}  // namespace dp1::harness
