#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace k3 {

// Knobs shared by every check group. `only` filters checks by id prefix;
// empty runs everything.
struct SuiteConfig {
    std::uint64_t seed = 1;
    int trials = 5;
    long height = 20;
    int retries = 32;
    int truncation = 20;
    std::string data_dir = "data";
    std::vector<std::string> only;
};

struct CheckRow {
    std::string id;       // "frames.rho13.s0", ...
    std::string anchor;   // stable group slug, one per check family
    std::string status;   // "pass" | "fail" | "partial" | "skipped"
    std::string details;
};

struct Report {
    std::vector<CheckRow> rows;

    bool all_pass() const;
    int count(const std::string& status) const;
};

// The nine check groups. Each returns one row per individual check and does
// not throw: tool errors become "fail" rows carrying the error text.
std::vector<CheckRow> check_lattice_presentations(const SuiteConfig&);
std::vector<CheckRow> check_frames(const SuiteConfig&);
std::vector<CheckRow> check_pencils(const SuiteConfig&);
std::vector<CheckRow> check_overlattices(const SuiteConfig&);
std::vector<CheckRow> check_map_catalog(const SuiteConfig&);
std::vector<CheckRow> check_local_types(const SuiteConfig&);
std::vector<CheckRow> check_graphs(const SuiteConfig&);
std::vector<CheckRow> check_del_pezzo(const SuiteConfig&);
std::vector<CheckRow> check_conics(const SuiteConfig&);

Report run_suite(const SuiteConfig& cfg);

// Deterministic serializations; the JSON is byte-identical for a fixed
// configuration.
std::string report_json(const Report& r, const SuiteConfig& cfg);
std::string report_markdown(const Report& r, const SuiteConfig& cfg);

}  // namespace k3
