// Command-line front end for the quadratic-residue polynomial toolkit.
//
//   qrpoly scan --min P --max Q [--checks LIST] [--precision BITS]
//               --out PATH [--cache PATH] [--jobs N] [--th11-grid a:m,...]
//   qrpoly show P --what {split|values|class|pell}
//
// Exit codes: 0 all pass, 1 any fail, 2 indeterminate only, >2 operational.

#include <cstdint>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrpoly/scan.hpp"

namespace {

constexpr int kOperationalExit = 3;

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

std::vector<std::pair<unsigned long, unsigned long>> parse_grid(const std::string& csv) {
    std::vector<std::pair<unsigned long, unsigned long>> grid;
    for (const auto& tok : split_list(csv)) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos)
            throw qrpoly::input_error("th11 grid entries must look like a:m, got '" + tok + "'");
        grid.emplace_back(std::stoul(tok.substr(0, colon)), std::stoul(tok.substr(colon + 1)));
    }
    return grid;
}

void require_desk_prime(std::uint64_t p) {
    if (p < 3 || !qrpoly::is_prime(p))
        throw qrpoly::input_error("p must be an odd prime");
    if (p >= 100000)
        throw qrpoly::input_error("p is beyond the desk range (p < 100000)");
}

int run_show(std::uint64_t p, const std::string& what) {
    using namespace qrpoly;
    require_desk_prime(p);

    if (what == "split") {
        PrimeWork w(p);
        const SplitPair& sp = w.split();
        std::cout << "V = " << sp.V.to_string() << ", U = " << sp.U.to_string() << "\n";
        return 0;
    }
    if (what == "values") {
        PrimeWork w(p);
        const SplitPair& sp = w.split();
        struct Point {
            const char* label;
            std::uint32_t m, a;
        };
        for (const Point& pt : {Point{"omega (zeta_3)", 3, 1}, Point{"i (zeta_4)", 4, 1},
                                Point{"zeta_10", 10, 1}}) {
            CycloSmall A = eval_small(sp.V, pt.m, pt.a);
            CycloSmall B = eval_small(sp.U, pt.m, pt.a);
            std::cout << "G at " << pt.label << ": (A, B) = (" << A.to_string() << ", "
                      << B.to_string() << ")  [G = (A + B*sqrt(p*))/2]\n";
        }
        return 0;
    }
    if (what == "class") {
        if (p % 4 != 3 || p <= 3)
            throw input_error("class data requires p = 3 (mod 4), p > 3");
        PrimeWork w(p);
        std::cout << "h(-p)  = " << w.h_neg() << "\n"
                  << "h(3p)  = " << w.h3p() << "\n"
                  << "eps_3p = " << w.unit3p().to_string() << "\n";
        return 0;
    }
    if (what == "pell") {
        if (p % 4 != 3)
            throw input_error("pell data requires p = 3 (mod 4)");
        if (p <= 3) throw input_error("pell data requires p > 3");
        PrimeWork w(p);
        const PellSolution& pe = w.pell_least();
        const mpz_class x2 = pe.x * pe.x, y2 = pe.y * pe.y;
        std::cout << "(x,y) = (" << pe.x.get_str() << "," << pe.y.get_str() << "), 3*"
                  << x2.get_str() << (pe.sign > 0 ? "+4" : "-4") << " = " << p << "*"
                  << y2.get_str() << "\n";
        return 0;
    }
    throw qrpoly::input_error("unknown --what '" + what + "' (expected split|values|class|pell)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and certified-numeric toolkit for the quadratic-residue polynomial"};
    app.require_subcommand(1);

    // scan
    auto* scan_cmd = app.add_subcommand("scan", "Run checks over a prime range");
    std::uint64_t p_min = 0, p_max = 0;
    std::string checks_csv = "all";
    std::string grid_csv;
    long precision = 192;
    std::string out_path, cache_path;
    unsigned jobs = 1;
    scan_cmd->add_option("--min", p_min, "Lowest prime (>= 3)")->required();
    scan_cmd->add_option("--max", p_max, "Highest prime")->required();
    scan_cmd->add_option("--checks", checks_csv,
                         "Comma list from {lemma21,th11,th12,th13,th14,cor,lem22,g2,j14,berndt} or 'all'");
    scan_cmd->add_option("--th11-grid", grid_csv, "Evaluation grid as a:m pairs, e.g. 1:3,1:4");
    scan_cmd->add_option("--precision", precision, "Working precision in bits (>= 53)");
    scan_cmd->add_option("--out", out_path, "Report path (line-delimited records, appended)")->required();
    scan_cmd->add_option("--cache", cache_path, "Cache path (optional)");
    scan_cmd->add_option("--jobs", jobs, "Worker count");

    // show
    auto* show_cmd = app.add_subcommand("show", "Inspect one prime");
    std::uint64_t show_p = 0;
    std::string what;
    show_cmd->add_option("p", show_p, "Odd prime")->required();
    show_cmd->add_option("--what", what, "One of split|values|class|pell")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kOperationalExit + 1;   // usage problems are operational
    }

    try {
        if (scan_cmd->parsed()) {
            qrpoly::ScanConfig cfg;
            cfg.p_min = p_min;
            cfg.p_max = p_max;
            cfg.checks = (checks_csv == "all") ? qrpoly::known_checks() : split_list(checks_csv);
            if (!grid_csv.empty()) cfg.th11_grid = parse_grid(grid_csv);
            cfg.precision = precision;
            cfg.out_path = out_path;
            cfg.cache_path = cache_path;
            cfg.parallelism = jobs;
            return qrpoly::scan(cfg);
        }
        return run_show(show_p, what);
    } catch (const qrpoly::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOperationalExit;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kOperationalExit + 2;
    }
}
