// Command-line front end for the verification suite: runs the check groups,
// inspects fibration models, and prints the classification tables.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "k3/fibration.hpp"
#include "k3/germ.hpp"
#include "k3/graph.hpp"
#include "k3/report.hpp"
#include "k3/surface.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw k3::ToolError("parse", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void print_rows(const std::vector<k3::CheckRow>& rows) {
    for (const auto& r : rows)
        std::cout << r.status << "  " << r.id << "  " << r.details << "\n";
}

bool rows_pass(const std::vector<k3::CheckRow>& rows) {
    for (const auto& r : rows)
        if (r.status != "pass" && r.status != "skipped") return false;
    return true;
}

void print_configuration(const k3::FiberConfiguration& fc) {
    std::cout << "fibers: " << fc.summary() << "\n";
    std::cout << "euler: " << fc.euler_total << "\n";
    std::cout << "2-torsion section: " << (fc.two_torsion ? "yes" : "no")
              << "\n";
    std::cout << "places:\n";
    for (const auto& p : fc.places)
        std::cout << "  " << p.kodaira << " x" << p.place_degree << " at "
                  << p.place << " (root " << p.root << ")\n";
}

k3::TwoElementary parse_triple(const std::string& text) {
    k3::TwoElementary t;
    if (std::sscanf(text.c_str(), "%d,%d,%d", &t.rho, &t.ell, &t.delta) != 3)
        throw k3::ToolError("bad-argument",
                            "--expect wants rho,ell,delta (e.g. 14,4,1)");
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact verification toolkit for 2-elementary K3 families"};
    app.require_subcommand(1);

    k3::SuiteConfig cfg;
    app.add_option("--seed", cfg.seed, "base RNG seed")
        ->envname("K3FORGE_SEED");
    app.add_option("--trials", cfg.trials, "random trials per check");
    app.add_option("--height", cfg.height, "coefficient height bound");
    app.add_option("--retries", cfg.retries, "resampling attempts");
    app.add_option("--truncation", cfg.truncation,
                   "power series truncation order");
    app.add_option("--data-dir", cfg.data_dir, "directory with graph data");

    // lattices verify
    auto* lat = app.add_subcommand("lattices", "lattice computations");
    auto* lat_verify =
        lat->add_subcommand("verify", "check the presentation table and glue");

    // graphs check <file> --expect r,l,d
    auto* gr = app.add_subcommand("graphs", "curve configuration graphs");
    auto* gr_check = gr->add_subcommand("check", "verify one graph file");
    std::string graph_file, expect_str;
    gr_check->add_option("file", graph_file, "graph JSON file")->required();
    gr_check->add_option("--expect", expect_str,
                         "expected rho,ell,delta (overrides the file)");

    // fibrations analyze <file> | fibrations frames --rho N [--variant V]
    auto* fib = app.add_subcommand("fibrations", "elliptic fibration models");
    auto* fib_analyze =
        fib->add_subcommand("analyze", "classify the fibers of a model");
    std::string model_file;
    fib_analyze->add_option("file", model_file, "model JSON file")->required();
    auto* fib_frames =
        fib->add_subcommand("frames", "sample a forced frame instance");
    int rho = 0, variant = 0;
    fib_frames->add_option("--rho", rho, "Picard rank 10..18")->required();
    fib_frames->add_option("--variant", variant, "rank-14 branch (0 or 1)");

    // surfaces verify --family F [--rho N]
    auto* surf = app.add_subcommand("surfaces", "birational surface models");
    auto* surf_verify =
        surf->add_subcommand("verify", "run the map catalog for one family");
    std::string family;
    int surf_rho = 0;
    surf_verify
        ->add_option("--family", family,
                     "rank9 | HN | rank10 | canonical | all")
        ->required();
    surf_verify->add_option("--rho", surf_rho,
                            "also sample the quartic data at this rank");

    // singularities table2
    auto* sing = app.add_subcommand("singularities", "local type classification");
    auto* sing_table =
        sing->add_subcommand("table2", "sample and classify the family germs");

    // run [--only ids] [--format json|md] [--out path]
    auto* run = app.add_subcommand("run", "run the full verification suite");
    std::string format = "json", out_path;
    run->add_option("--only", cfg.only, "restrict to checks with these prefixes");
    run->add_option("--format", format, "json | md")
        ->check(CLI::IsMember({"json", "md"}));
    run->add_option("--out", out_path, "write the report to this file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*lat_verify) {
            auto rows = k3::check_lattice_presentations(cfg);
            auto glue = k3::check_overlattices(cfg);
            rows.insert(rows.end(), glue.begin(), glue.end());
            print_rows(rows);
            return rows_pass(rows) ? 0 : 1;
        }
        if (*gr_check) {
            k3::GraphCase gc = k3::load_graph_case(graph_file);
            if (!expect_str.empty()) gc.expect = parse_triple(expect_str);
            k3::NsCheck ns = k3::ns_check(gc.g, gc.expect);
            std::cout << "lattice: (" << ns.got.rho << "," << ns.got.ell << ","
                      << ns.got.delta << ") "
                      << (ns.matches ? "as expected" : "MISMATCH") << "\n";
            k3::SplitCheck sc;
            if (gc.b.empty() && gc.a.empty()) {
                k3::Z sq = k3::self_int(gc.g, gc.d2);
                sc.ok = sq == 2;
                std::cout << "D2^2 = " << sq.get_str()
                          << (sc.ok ? " as expected" : " MISMATCH (want 2)")
                          << "\n";
            } else {
                sc = k3::check_polarization_split(gc.g, gc.d2, gc.b,
                                                  gc.b_weights, gc.a,
                                                  gc.b_combined);
                std::cout << "degree-4 split: " << (sc.ok ? "ok" : "FAIL")
                          << "\n";
                for (const auto& f : sc.failures) std::cout << "  " << f << "\n";
            }
            bool chains_ok = true;
            if (!gc.a_type.empty()) {
                std::string got = k3::chain_type(gc.g, gc.a);
                chains_ok = chains_ok && got == gc.a_type;
                std::cout << "a-chain: " << got << " (want " << gc.a_type
                          << ")\n";
            }
            if (!gc.b_type.empty()) {
                std::string got = k3::chain_type(gc.g, gc.b);
                chains_ok = chains_ok && got == gc.b_type;
                std::cout << "b-chain: " << got << " (want " << gc.b_type
                          << ")\n";
            }
            return (ns.matches && sc.ok && chains_ok) ? 0 : 1;
        }
        if (*fib_analyze) {
            k3::WeierstrassModel m = k3::model_from_json(read_file(model_file));
            print_configuration(k3::fiber_configuration(m));
            return 0;
        }
        if (*fib_frames) {
            k3::Rng rng(cfg.seed);
            k3::FrameInstance inst =
                k3::forced_frame_instance(rho, variant, rng, cfg.retries);
            std::cout << k3::model_json(inst.model);
            print_configuration(k3::fiber_configuration(inst.model));
            std::cout << "roots wanted: " << k3::frame_root_type(rho, variant)
                      << "\n";
            return 0;
        }
        if (*surf_verify) {
            static const std::map<std::string, std::vector<std::string>> fams{
                {"rank9", {"dp.", "pencil."}},
                {"HN", {"hn.", "vgt."}},
                {"rank10", {"rank10."}},
                {"canonical",
                 {"x.", "s.", "k.", "can.", "dual.", "rank12."}},
                {"all", {""}}};
            auto it = fams.find(family);
            if (it == fams.end())
                throw k3::ToolError("bad-argument",
                                    "unknown family " + family);
            bool ok = true;
            int shown = 0;
            for (const k3::MapCheck& c :
                 k3::run_map_catalog(cfg.seed, cfg.trials)) {
                bool match = false;
                for (const std::string& p : it->second)
                    if (c.id.rfind(p, 0) == 0) match = true;
                if (!match) continue;
                ++shown;
                ok = ok && c.ok;
                std::cout << (c.ok ? "pass" : "fail") << "  " << c.id << "  "
                          << c.detail << "\n";
            }
            if (surf_rho >= 10) {
                k3::Rng rng(cfg.seed);
                k3::QuarticData d =
                    k3::random_quartic_data(surf_rho, variant, rng, 6);
                bool consistent =
                    surf_rho >= 11
                        ? (k3::qd_b8(d) - k3::qd_d4p(d) * d.d4).is_zero()
                        : !k3::qd_sextic(d).is_zero();
                ok = ok && consistent;
                std::cout << (consistent ? "pass" : "fail")
                          << "  sampled quartic data at rank " << surf_rho
                          << "\n";
            }
            if (shown == 0) {
                std::cout << "no catalog entries matched\n";
                return 2;
            }
            return ok ? 0 : 1;
        }
        if (*sing_table) {
            const auto& want = k3::expected_local_types();
            bool ok = true;
            for (std::size_t i = 0; i < want.size(); ++i) {
                k3::LocalTypeRow got = k3::sampled_local_types(
                    i, cfg.seed, cfg.truncation, cfg.retries);
                auto cell = [](const std::string& s) {
                    return s.empty() ? std::string("-") : s;
                };
                bool row_ok =
                    (want[i].s_at_p.empty() || want[i].s_at_p == got.s_at_p) &&
                    (want[i].k_at_p1.empty() ||
                     want[i].k_at_p1 == got.k_at_p1) &&
                    (want[i].k_at_p2.empty() || want[i].k_at_p2 == got.k_at_p2);
                ok = ok && row_ok;
                std::cout << (row_ok ? "pass" : "fail") << "  " << want[i].label
                          << ": S " << cell(got.s_at_p) << ", K "
                          << cell(got.k_at_p1) << " / " << cell(got.k_at_p2)
                          << "\n";
            }
            return ok ? 0 : 1;
        }
        if (*run) {
            k3::Report rep = k3::run_suite(cfg);
            std::string text = format == "json" ? k3::report_json(rep, cfg)
                                                : k3::report_markdown(rep, cfg);
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(out_path);
                if (!out)
                    throw k3::ToolError("bad-argument",
                                        "cannot write " + out_path);
                out << text;
            }
            std::cerr << rep.count("pass") << " pass, " << rep.count("fail")
                      << " fail, " << rep.count("skipped") << " skipped\n";
            return rep.all_pass() ? 0 : 1;
        }
    } catch (const k3::ToolError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
