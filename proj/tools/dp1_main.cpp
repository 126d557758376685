// dp1: command-line interface to the del Pezzo degree-one toolkit.
#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dp1/egraph.hpp"
#include "dp1/errors.hpp"
#include "dp1/exactnum.hpp"
#include "dp1/harness.hpp"
#include "dp1/identities.hpp"
#include "dp1/picard.hpp"
#include "dp1/plane.hpp"
#include "dp1/weyl.hpp"

namespace {

using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw dp1::dp1_error("cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

// ---------------------------------------------------------------------------

int run_classes(const std::string& format) {
    const auto& all = dp1::picard::exceptional_classes();
    if (format == "json") {
        ordered_json j = ordered_json::array();
        for (std::size_t i = 0; i < all.size(); ++i) {
            ordered_json e;
            e["index"] = i;
            e["class"] = dp1::picard::to_string(all[i]);
            j.push_back(std::move(e));
        }
        std::cout << j.dump(2) << '\n';
    } else {
        for (std::size_t i = 0; i < all.size(); ++i)
            std::cout << i << ": " << dp1::picard::to_string(all[i]) << '\n';
    }
    return 0;
}

int run_graph_stats(const std::string& format) {
    const auto& all = dp1::picard::exceptional_classes();
    std::map<int, int> profile = dp1::picard::degree_profile(all[0]);
    for (const auto& c : all)
        if (dp1::picard::degree_profile(c) != profile)
            throw dp1::dp1_error("degree profile is not constant");
    std::map<int, long long> edges;
    for (const auto& [w, n] : profile)
        if (w >= 0) edges[w] = static_cast<long long>(all.size()) * n / 2;
    if (format == "json") {
        ordered_json j;
        j["vertices"] = all.size();
        for (const auto& [w, n] : profile)
            j["degree_profile"][std::to_string(w)] = n;
        for (const auto& [w, n] : edges)
            j["edges_by_weight"][std::to_string(w)] = n;
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "vertices: " << all.size() << '\n';
        std::cout << "degree profile (pairing: neighbours, same for every vertex):\n";
        for (const auto& [w, n] : profile)
            std::cout << "  " << w << ": " << n << '\n';
        std::cout << "edges by pairing value:\n";
        for (const auto& [w, n] : edges)
            std::cout << "  " << w << ": " << n << '\n';
    }
    return 0;
}

void print_witness(const dp1::egraph::graph& g, const std::vector<int>& verts,
                   const std::string& format, const char* what,
                   int extra_jobs = 1) {
    const auto& all = dp1::picard::exceptional_classes();
    bool ok = dp1::egraph::is_clique(g, verts);
    if (format == "json") {
        ordered_json j;
        j["kind"] = what;
        j["size"] = verts.size();
        j["verified"] = ok;
        if (extra_jobs > 1) j["jobs"] = extra_jobs;
        ordered_json members = ordered_json::array();
        for (int v : verts) {
            ordered_json e;
            e["index"] = v;
            e["class"] = dp1::picard::to_string(all[static_cast<std::size_t>(v)]);
            members.push_back(std::move(e));
        }
        j["members"] = std::move(members);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << what << " size " << verts.size()
                  << (ok ? " (verified)" : " (NOT a clique)") << '\n';
        for (int v : verts)
            std::cout << "  " << v << ": "
                      << dp1::picard::to_string(all[static_cast<std::size_t>(v)])
                      << '\n';
    }
    if (!ok) throw dp1::dp1_error("witness failed re-verification");
}

int run_clique(std::vector<int> weights, int find_size, bool eleven_check,
               std::uint64_t seed, int jobs, const std::string& format) {
    dp1::egraph::graph g = dp1::egraph::build_graph(weights);
    if (eleven_check) {
        std::vector<int> w12{1, 2};
        if (weights != w12)
            throw dp1::dp1_error("--exhaustive-11-check requires --weights 1,2");
        const int samples = 10000;
        int min_ext = -1;
        for (int i = 0; i < samples; ++i) {
            std::vector<int> eleven =
                dp1::egraph::random_clique(g, 11, seed + static_cast<std::uint64_t>(i));
            int next = static_cast<int>(dp1::egraph::eleven_extends(g, eleven).size());
            if (next == 0) {
                std::cout << "FOUND non-extending 11-clique at sample " << i << '\n';
                return 1;
            }
            if (min_ext < 0 || next < min_ext) min_ext = next;
        }
        if (format == "json") {
            ordered_json j;
            j["samples"] = samples;
            j["all_extend"] = true;
            j["min_extensions"] = min_ext;
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << samples << " sampled 11-cliques all extend to 12 "
                      << "(min extensions " << min_ext << ")\n";
        }
        return 0;
    }
    if (find_size > 0) {
        std::vector<int> got = dp1::egraph::random_clique(g, find_size, seed);
        print_witness(g, got, format, "clique");
        return 0;
    }
    std::vector<std::vector<int>> results(static_cast<std::size_t>(jobs));
    if (jobs <= 1) {
        results = {dp1::egraph::max_clique(g, seed)};
    } else {
        // parallel warm starts merged by size, then lexicographic witness
        std::vector<std::thread> threads;
        for (int w = 0; w < jobs; ++w)
            threads.emplace_back([&, w] {
                results[static_cast<std::size_t>(w)] =
                    dp1::egraph::max_clique(g, seed + static_cast<std::uint64_t>(w));
            });
        for (auto& t : threads) t.join();
    }
    std::vector<int> best = results[0];
    for (const auto& r : results)
        if (r.size() > best.size() || (r.size() == best.size() && r < best))
            best = r;
    print_witness(g, best, format, "maximum clique", jobs);
    return 0;
}

int run_weyl_orbit(const std::string& start, const std::string& format) {
    dp1::picard::cls c = dp1::picard::parse_class(start);
    std::vector<dp1::picard::cls> orb = dp1::weyl::orbit(c);
    if (format == "json") {
        ordered_json j;
        j["start"] = dp1::picard::to_string(c);
        j["size"] = orb.size();
        ordered_json members = ordered_json::array();
        for (const auto& x : orb) members.push_back(dp1::picard::to_string(x));
        j["orbit"] = std::move(members);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "orbit size " << orb.size() << '\n';
        for (const auto& x : orb) std::cout << "  " << dp1::picard::to_string(x) << '\n';
    }
    return 0;
}

int run_weyl_map(const std::vector<int>& src, const std::vector<int>& dst,
                 const std::string& format) {
    std::vector<dp1::picard::cls> s, d;
    for (int i : src) s.push_back(dp1::picard::exceptional_class(i));
    for (int i : dst) d.push_back(dp1::picard::exceptional_class(i));
    auto w = dp1::weyl::find_isometry(s, d);
    if (format == "json") {
        ordered_json j;
        j["found"] = w.has_value();
        if (w) {
            ordered_json img = ordered_json::array();
            for (const auto& x : w->img) img.push_back(dp1::picard::to_string(x));
            j["basis_images"] = std::move(img);
            j["verified"] = dp1::weyl::is_isometry(*w);
        }
        std::cout << j.dump(2) << '\n';
    } else if (w) {
        std::cout << "isometry found (images of L, E1..E8):\n";
        for (const auto& x : w->img)
            std::cout << "  " << dp1::picard::to_string(x) << '\n';
        std::cout << (dp1::weyl::is_isometry(*w) ? "verified\n" : "NOT an isometry\n");
    } else {
        std::cout << "no isometry maps the source list to the target list\n";
    }
    return 0;
}

int run_verify(const std::string& id, const std::string& format) {
    std::vector<std::string> ids;
    if (id != "all") {
        const auto& known = dp1::harness::fixture_ids();
        if (std::find(known.begin(), known.end(), id) == known.end())
            throw dp1::parse_error("unknown fixture id: " + id);
        ids.push_back(id);
    }
    dp1::harness::run_report rep = dp1::harness::run_fixtures(ids);
    std::cout << (format == "json" ? dp1::harness::report_json(rep)
                                   : dp1::harness::report_text(rep));
    if (format == "json") std::cout << '\n';
    return rep.all_ok() ? 0 : 1;
}

int run_identities(const std::string& which, int samples, std::uint64_t prime,
                   std::uint64_t seed, const std::string& format) {
    std::vector<dp1::identities::report> reps =
        dp1::identities::run_all(which, samples, prime, seed);
    bool all_ok = true;
    for (const auto& r : reps) all_ok = all_ok && r.ok();
    if (format == "json") {
        ordered_json j;
        j["reports"] = ordered_json::array();
        for (const auto& r : reps)
            j["reports"].push_back(
                ordered_json::parse(dp1::identities::report_to_json(r)));
        j["all_ok"] = all_ok;
        std::cout << j.dump(2) << '\n';
    } else {
        for (const auto& r : reps) {
            std::cout << (r.ok() ? "PASS " : "FAIL ") << r.name << ": "
                      << r.passes << '/' << r.samples << " samples, error bound "
                      << r.error_probability;
            if (r.has_ratio_model)
                std::cout << ", ratio constant " << r.ratio_constant;
            std::cout << '\n';
        }
        std::cout << (all_ok ? "all identity checks pass\n"
                             : "identity FAILURES present\n");
    }
    return all_ok ? 0 : 1;
}

int run_interpolate(const std::string& points_path, const std::string& cls_text) {
    dp1::plane::config cfg = dp1::plane::parse_points_json(read_file(points_path));
    dp1::picard::cls c = dp1::picard::parse_class(cls_text);
    if (dp1::picard::is_exceptional(c)) {
        dp1::plane::curve_or_marker cm = dp1::plane::exceptional_curve(cfg, c);
        if (cm.crv) {
            std::cout << dp1::plane::curve_to_json(*cm.crv) << '\n';
        } else {
            ordered_json j;
            j["marker"] = cm.blown_index;
            std::cout << j.dump() << '\n';
        }
        return 0;
    }
    if (c.a < 1) throw dp1::dp1_error("class has no curve model: degree < 1");
    std::vector<dp1::plane::constraint> cons;
    for (int i = 0; i < 8; ++i) {
        if (c.b[i] < 0)
            throw dp1::dp1_error("class has a negative multiplicity; no curve model");
        if (c.b[i] > 0) cons.push_back({cfg.pts[i], c.b[i]});
    }
    dp1::plane::curve k = dp1::plane::interpolate(cfg.f, c.a, cons);
    std::cout << dp1::plane::curve_to_json(k) << '\n';
    return 0;
}

int run_count(const std::string& points_path, const std::string& at,
              const std::string& format) {
    dp1::plane::config cfg = dp1::plane::parse_points_json(read_file(points_path));
    std::vector<std::string> parts;
    std::stringstream ss(at);
    for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
    if (parts.size() != 3)
        throw dp1::parse_error("--at needs three comma-separated coordinates");
    dp1::plane::raw_point raw{dp1::exactnum::parse_element(cfg.f, parts[0]),
                              dp1::exactnum::parse_element(cfg.f, parts[1]),
                              dp1::exactnum::parse_element(cfg.f, parts[2])};
    dp1::plane::point P = dp1::plane::make_point(raw);
    for (int i = 0; i < 8; ++i)
        if (cfg.pts[static_cast<std::size_t>(i)] == P)
            std::cerr << "warning: point coincides with configuration point " << i + 1
                      << "; counts on the blown-up surface may differ\n";
    dp1::plane::concurrency_result res = dp1::plane::concurrency_count(cfg, P);
    if (format == "json") {
        ordered_json j;
        j["at"] = dp1::plane::to_string(P);
        j["count"] = res.count;
        j["ramified"] = res.on_ramification;
        ordered_json cl = ordered_json::array();
        for (const auto& c : res.classes) cl.push_back(dp1::picard::to_string(c));
        j["classes"] = std::move(cl);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "count " << res.count << " at " << dp1::plane::to_string(P)
                  << (res.on_ramification ? " (ramified)" : " (unramified)") << '\n';
        for (const auto& c : res.classes)
            std::cout << "  " << dp1::picard::to_string(c) << '\n';
    }
    return 0;
}

int run_search(const std::string& field, const std::string& mode, int trials,
               int target, std::uint64_t seed, const std::string& out,
               int jobs, const std::string& format) {
    dp1::harness::search_options opts;
    opts.field = field;
    opts.trials = trials;
    opts.target = target;
    opts.seed = seed;
    opts.output_path = out;
    opts.jobs = jobs;
    if (mode == "family") {
        opts.mode = dp1::harness::search_mode::family;
    } else if (mode == "random") {
        opts.mode = dp1::harness::search_mode::random_octuple;
    } else {
        throw dp1::parse_error("mode must be family or random");
    }
    dp1::harness::search_summary sum = dp1::harness::search(opts);
    if (format == "json") {
        ordered_json j;
        j["trials"] = sum.trials;
        j["gp_failures"] = sum.gp_failures;
        j["kept"] = sum.kept;
        j["best_count"] = sum.best_count;
        j["critical"] = sum.critical;
        ordered_json recs = ordered_json::array();
        for (const auto& r : sum.records)
            recs.push_back(ordered_json::parse(dp1::harness::to_jsonl(r)));
        j["records"] = std::move(recs);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "trials " << sum.trials << ", general position failed in "
                  << sum.gp_failures << ", kept " << sum.kept << ", best count "
                  << sum.best_count << '\n';
        for (const auto& r : sum.records) {
            std::cout << (r.critical ? "  CRITICAL " : "  ") << "count " << r.count
                      << (r.ramified ? " ramified" : " unramified") << " at ("
                      << r.best[0] << " : " << r.best[1] << " : " << r.best[2]
                      << ") seed " << r.seed << '\n';
        }
        if (sum.critical)
            std::cout << "CRITICAL records present: counts exceed the proved bounds\n";
    }
    return sum.critical ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"del Pezzo degree-one toolkit: exceptional classes, cliques, "
                 "curve interpolation, worked examples, identity checks"};
    app.require_subcommand(1);
    std::string format = "text";

    // classes
    auto* sc_classes = app.add_subcommand("classes", "list the 240 exceptional classes");
    std::string cl_format = "text";
    sc_classes->add_option("--format", cl_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // graph-stats
    auto* sc_stats = app.add_subcommand("graph-stats",
                                        "intersection pairing statistics");
    std::string gs_format = "text";
    sc_stats->add_option("--format", gs_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // clique
    auto* sc_clique = app.add_subcommand("clique", "maximum clique of the weighted graph");
    std::vector<int> weights{1, 2, 3};
    int find_size = 0;
    bool eleven_check = false;
    std::uint64_t cq_seed = 0;
    int cq_jobs = 1;
    std::string cq_format = "text";
    sc_clique->add_option("--weights", weights, "allowed pairing values, e.g. 1,2")
        ->delimiter(',');
    sc_clique->add_option("--find-size", find_size, "find a clique of this size");
    sc_clique->add_flag("--exhaustive-11-check", eleven_check,
                        "sample 11-cliques and verify they extend to 12");
    sc_clique->add_option("--seed", cq_seed, "search seed");
    sc_clique->add_option("--jobs", cq_jobs, "parallel warm starts");
    sc_clique->add_option("--format", cq_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // weyl orbit / weyl map
    auto* sc_weyl = app.add_subcommand("weyl", "reflection group operations");
    sc_weyl->require_subcommand(1);
    auto* sc_orbit = sc_weyl->add_subcommand("orbit", "orbit of a class");
    std::string orbit_start;
    std::string wo_format = "text";
    sc_orbit->add_option("--start", orbit_start, "class a;b1,...,b8")->required();
    sc_orbit->add_option("--format", wo_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    auto* sc_map = sc_weyl->add_subcommand("map", "isometry between class lists");
    std::vector<int> map_src, map_dst;
    std::string wm_format = "text";
    sc_map->add_option("--src", map_src, "source class indices, e.g. 0,5,7")
        ->required()
        ->delimiter(',');
    sc_map->add_option("--dst", map_dst, "target class indices")
        ->required()
        ->delimiter(',');
    sc_map->add_option("--format", wm_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // verify-example
    auto* sc_verify = app.add_subcommand("verify-example", "check a worked example");
    std::string verify_id;
    std::string ve_format = "text";
    sc_verify->add_option("id", verify_id, "5.1, 5.2, 5.3:<p>, 5.4, 5.6, or all")
        ->required();
    sc_verify->add_option("--format", ve_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // check-identities
    auto* sc_ident = app.add_subcommand("check-identities",
                                        "randomized polynomial identity checks");
    std::string which = "all";
    int id_samples = 200;
    std::uint64_t id_prime = 2147483647ull;
    std::uint64_t id_seed = 0;
    std::string id_format = "text";
    sc_ident->add_option("--which", which, "key1, key2 or all")
        ->check(CLI::IsMember({"key1", "key2", "all"}));
    sc_ident->add_option("--samples", id_samples, "samples per identity");
    sc_ident->add_option("--prime", id_prime, "evaluation prime");
    sc_ident->add_option("--seed", id_seed, "sampling seed");
    sc_ident->add_option("--format", id_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // interpolate
    auto* sc_interp = app.add_subcommand("interpolate",
                                         "plane model of a class over a configuration");
    std::string ip_points, ip_class;
    sc_interp->add_option("--points", ip_points, "points file (JSON)")->required();
    sc_interp->add_option("--class", ip_class, "class a;b1,...,b8")->required();

    // count
    auto* sc_count = app.add_subcommand("count", "concurrency count at a point");
    std::string ct_points, ct_at;
    std::string ct_format = "text";
    sc_count->add_option("--points", ct_points, "points file (JSON)")->required();
    sc_count->add_option("--at", ct_at, "evaluation point x,y,z")->required();
    sc_count->add_option("--format", ct_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    // search
    auto* sc_search = app.add_subcommand("search", "random configuration search");
    std::string se_field, se_mode = "family", se_out;
    int se_trials = 100, se_target = 10, se_jobs = 0;
    std::uint64_t se_seed = 0;
    std::string se_format = "text";
    sc_search->add_option("--field", se_field, "field descriptor, e.g. gf:3:x^3+2x+1")
        ->required();
    sc_search->add_option("--mode", se_mode, "family or random")
        ->check(CLI::IsMember({"family", "random"}));
    sc_search->add_option("--trials", se_trials, "number of trials");
    sc_search->add_option("--target", se_target, "keep records reaching this count");
    sc_search->add_option("--seed", se_seed, "base seed");
    sc_search->add_option("--out", se_out, "append records to this JSONL file");
    sc_search->add_option("--jobs", se_jobs, "worker count (default DP1_JOBS or 1)");
    sc_search->add_option("--format", se_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sc_classes) return run_classes(cl_format);
        if (*sc_stats) return run_graph_stats(gs_format);
        if (*sc_clique)
            return run_clique(weights, find_size, eleven_check, cq_seed, cq_jobs,
                              cq_format);
        if (*sc_orbit) return run_weyl_orbit(orbit_start, wo_format);
        if (*sc_map) return run_weyl_map(map_src, map_dst, wm_format);
        if (*sc_verify) return run_verify(verify_id, ve_format);
        if (*sc_ident)
            return run_identities(which, id_samples, id_prime, id_seed, id_format);
        if (*sc_interp) return run_interpolate(ip_points, ip_class);
        if (*sc_count) return run_count(ct_points, ct_at, ct_format);
        if (*sc_search)
            return run_search(se_field, se_mode, se_trials, se_target, se_seed,
                              se_out, se_jobs, se_format);
    } catch (const dp1::dp1_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
