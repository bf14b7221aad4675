// Acceptance gate: runs the nine check groups with the default
// configuration and reports one line per group. Exits nonzero when any
// individual check fails.

#include <cstdio>
#include <string>
#include <vector>

#include "k3/report.hpp"

int main() {
    using namespace k3;

    SuiteConfig cfg;
    cfg.data_dir = K3_DATA_DIR;

    struct Group {
        const char* slug;
        std::vector<CheckRow> (*fn)(const SuiteConfig&);
    };
    const Group groups[] = {
        {"lattice-presentations", check_lattice_presentations},
        {"frame-fibrations", check_frames},
        {"pencil-fibrations", check_pencils},
        {"overlattice-glue", check_overlattices},
        {"map-catalog", check_map_catalog},
        {"local-types", check_local_types},
        {"curve-graphs", check_graphs},
        {"del-pezzo-model", check_del_pezzo},
        {"tangent-conics", check_conics},
    };

    bool all_ok = true;
    int index = 0;
    int total_checks = 0;
    for (const Group& g : groups) {
        ++index;
        std::vector<CheckRow> rows = g.fn(cfg);
        int fails = 0, passes = 0, skips = 0;
        for (const CheckRow& r : rows) {
            if (r.status == "fail") ++fails;
            if (r.status == "pass") ++passes;
            if (r.status == "skipped") ++skips;
        }
        total_checks += static_cast<int>(rows.size());
        if (fails == 0) {
            std::string suffix =
                skips ? ", " + std::to_string(skips) + " skipped" : "";
            std::printf("[%d/9] %s: PASS (%d checks%s)\n", index, g.slug,
                        passes, suffix.c_str());
        } else {
            all_ok = false;
            std::printf("[%d/9] %s: FAIL (%d of %zu checks failed)\n", index,
                        g.slug, fails, rows.size());
            for (const CheckRow& r : rows)
                if (r.status == "fail")
                    std::printf("       %s: %s\n", r.id.c_str(),
                                r.details.c_str());
        }
        std::fflush(stdout);
    }
    std::printf("%s: %d checks across 9 groups\n",
                all_ok ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                total_checks);
    return all_ok ? 0 : 1;
}
