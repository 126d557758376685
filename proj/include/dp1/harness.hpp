#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dp1/errors.hpp"
#include "dp1/exactnum.hpp"
#include "dp1/plane.hpp"

namespace dp1::harness {

using exactnum::field_ref;

// ---------------------------------------------------------------------------
// Worked-example fixtures. Each fixture is a labelled point set over a fixed
// field together with the published curve equations and the expected
// concurrency outcome at a distinguished point. Ids:
//   5.1            sixteen concurrent curves, char 2
//   5.2            ten concurrent curves over the rationals
//   5.3:<p>        ten concurrent curves, p in {3,5,7,11,13,17,19}
//   5.4            twelve concurrent curves, char 3
//   5.6            weighted-model incidence checks (partial)

const std::vector<std::string>& fixture_ids();

struct check_result {
    std::string name;
    bool pass = false;
    std::string detail;  // diff or measured value
};

struct fixture_report {
    std::string id;
    std::string field;  // descriptor
    bool partial = false;
    int count = -1;
    bool ramified = false;
    std::vector<check_result> checks;
    bool ok() const;
};

// Runs every check of the fixture: the general-position audit, an exact
// comparison of each published curve against the interpolated one (up to the
// canonical scaling), and the concurrency count with its ramification flag.
// Throws parse_error for an unknown id and fixture_mismatch as soon as a
// check fails, with a coefficient diff in the message.
fixture_report verify_example(const std::string& id);

// Exact comparison up to scalar; throws fixture_mismatch naming the
// monomials whose coefficients differ.
void require_same_curve(const std::string& name, const plane::curve& got,
                        const plane::curve& want);

// ---------------------------------------------------------------------------
// Aggregate runs over several fixtures, with serialization and an exit-code
// convention (0 iff everything passed) applied by the CLI.

struct run_entry {
    std::string id;
    bool ok = false;
    bool partial = false;
    std::string message;  // failure diff when not ok
    int count = -1;
    bool ramified = false;
    std::vector<check_result> checks;
};

struct run_report {
    std::vector<run_entry> entries;
    bool all_ok() const;
};

// Empty id list means every fixture. Failures are captured per entry, never
// thrown.
run_report run_fixtures(const std::vector<std::string>& ids = {});
std::string report_json(const run_report& r);
std::string report_text(const run_report& r);

// ---------------------------------------------------------------------------
// Random configuration search. Family mode draws the six parameters
// (a,b,c,m,u,v) of the four-concurrent-lines setup and evaluates the
// concurrency at the common point (0:0:1) of the lines. Random mode
// resamples uniform octuples until the general-position audit passes, then
// scans the pairwise crossings of the line models through point pairs;
// concurrency away from every such crossing is not scanned. Counts above the
// proved bounds are recorded and flagged CRITICAL, never suppressed.

enum class search_mode { family, random_octuple };

struct search_options {
    std::string field;  // descriptor; must be a finite field
    int trials = 100;
    int target = 10;  // keep records whose count reaches this
    std::uint64_t seed = 0;
    search_mode mode = search_mode::family;
    std::string output_path;  // append JSON lines; empty disables persistence
    int jobs = 0;             // 0: DP1_JOBS env var, else 1
};

struct search_record {
    std::string field;
    std::array<std::array<std::string, 3>, 8> points;  // normalized coordinates
    std::array<std::string, 3> best;                   // evaluation point
    int count = 0;
    bool ramified = false;
    bool critical = false;
    std::uint64_t seed = 0;  // per-trial seed
    std::string timestamp;   // ISO 8601 UTC
    std::string mode;        // "family" or "random"
};

struct search_summary {
    int trials = 0;
    int gp_failures = 0;  // trials that produced no audited configuration
    int kept = 0;
    int best_count = 0;  // best over all audited samples, kept or not
    bool critical = false;
    std::vector<search_record> records;
};

// Largest concurrency compatible with the theorems for the given
// characteristic (0 for the rationals) on or off the ramification curve.
int theorem_bound(std::uint64_t characteristic, bool ramified);

// Runs the trials, splitting them across workers deterministically: the
// record stream for a fixed seed does not depend on the worker count. The
// output file is appended by the aggregating thread only.
search_summary search(const search_options& opts);

std::string to_jsonl(const search_record& rec);
search_record record_from_json(const std::string& line);

// Rebuilds the configuration from the record and recomputes the concurrency
// at the recorded point; true iff count and flag are reproduced.
bool reverify(const search_record& rec);

// Uniform octuple passing the general-position audit; throws
// search_exhausted after max_attempts rejected samples.
plane::config random_gp_config(const field_ref& f, std::mt19937_64& rng,
                               int max_attempts = 1000);

// Points of the six-parameter family: (0:1:1), (0:1:a), (1:0:1), (1:0:b),
// (1:1:1), (1:1:c), (m:1:u), (m:1:v).
std::array<plane::point, 8> family_points(const std::array<exactnum::element, 6>& params);

}  // namespace dp1::harness
