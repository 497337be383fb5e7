// Command-line front end: build a pencil and emit its nonblocking
// certificate, re-check a stored certificate, or sweep a parameter grid.
//
// Exit codes: 0 success, 1 verification mismatch, 2 precondition rejection,
// 3 I/O or format error.

#include <chrono>
#include <cstdlib>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nbpencil/certificate.hpp"

namespace {

long max_q_budget() {
    if (const char* env = std::getenv("NBPENCIL_MAX_Q")) {
        long v = std::atol(env);
        if (v >= 2) return v;
    }
    return nbp::FiniteField::kDefaultMaxQ;
}

bool is_prime_power(long q) {
    if (q < 2) return false;
    long p = 2;
    while (q % p != 0) ++p;
    while (q > 1) {
        if (q % p != 0) return false;
        q /= p;
    }
    return true;
}

// "2-5" or "2,3,7" or a mix: "2-4,7".
std::vector<long> parse_range(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto dash = part.find('-');
        if (dash == std::string::npos) {
            out.push_back(std::stol(part));
        } else {
            long lo = std::stol(part.substr(0, dash));
            long hi = std::stol(part.substr(dash + 1));
            for (long v = lo; v <= hi; ++v) out.push_back(v);
        }
    }
    return out;
}

struct GridCell {
    std::string construction;
    long q;
    int d;
    int n;
};

struct CellResult {
    GridCell cell;
    std::string verdict;  // all-nonblocking | profile-ok | counterexample | hypothesis-rejected | skipped
    std::string detail;
    long lines_scanned = 0;
    double ms = 0;
    bool failure = false;
};

CellResult run_cell(const GridCell& cell, const std::string& out_dir) {
    CellResult res{cell, "", "", 0, 0, false};
    auto start = std::chrono::steady_clock::now();
    try {
        nbp::FiniteField F = nbp::FiniteField::parse(std::to_string(cell.q), max_q_budget());
        nbp::BuildResult build = nbp::build_certificate(cell.construction, F, cell.d, cell.n, /*audit=*/false);
        res.lines_scanned = nbp::line_count(cell.n, cell.q);
        if (build.profile_ok) {
            res.verdict = cell.construction == "nearmiss" ? "profile-ok" : "all-nonblocking";
        } else {
            res.verdict = "counterexample";
            res.failure = true;
            for (const auto& rec : build.certificate["members"])
                res.detail += "[" + rec["s"].dump() + ":" + rec["t"].dump() + "] " +
                              rec["status"].get<std::string>() + "; ";
        }
        if (!out_dir.empty()) {
            std::string path = out_dir + "/" + cell.construction + "_q" + std::to_string(cell.q) + "_d" +
                               std::to_string(cell.d) + "_n" + std::to_string(cell.n) + ".json";
            nbp::write_certificate(build.certificate, path);
        }
    } catch (const nbp::hypothesis_error& e) {
        res.verdict = "hypothesis-rejected";
        res.detail = e.what();
    } catch (const std::exception& e) {
        res.verdict = "error";
        res.detail = e.what();
        res.failure = true;
    }
    res.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nbpencil: pencils of nonblocking hypersurfaces over finite fields"};
    app.require_subcommand(1);

    // build
    std::string construction, field_spec, out_path;
    int opt_d = 2, opt_n = 2;
    bool audit = true;
    auto* build_cmd = app.add_subcommand("build", "build a pencil and write its certificate");
    build_cmd->add_option("--construction", construction, "plane|highdim|fermat|nearmiss")->required();
    build_cmd->add_option("--field", field_spec, "field spec: p^k or q")->required();
    build_cmd->add_option("--d", opt_d, "degree")->required();
    build_cmd->add_option("--n", opt_n, "ambient dimension (highdim only; default 2)");
    build_cmd->add_flag("--audit,!--no-audit", audit, "full line scan per member (default on)");
    build_cmd->add_option("--out", out_path, "certificate output path")->required();

    // verify
    std::string cert_path;
    auto* verify_cmd = app.add_subcommand("verify", "re-check a stored certificate");
    verify_cmd->add_option("path", cert_path, "certificate file")->required();

    // scan
    std::string grid_spec, out_dir;
    int jobs = 1;
    auto* scan_cmd = app.add_subcommand("scan", "sweep a parameter grid");
    scan_cmd->add_option("--grid", grid_spec,
                         "grid spec: 'constructions;q=RANGE;d=RANGE[;n=RANGE]', e.g. 'plane,nearmiss;q=2-5;d=2-5'")
        ->required();
    scan_cmd->add_option("--jobs", jobs, "parallel cells");
    scan_cmd->add_option("--out-dir", out_dir, "write per-cell certificates here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (build_cmd->parsed()) {
            nbp::FiniteField F = nbp::FiniteField::parse(field_spec, max_q_budget());
            nbp::BuildResult res;
            try {
                res = nbp::build_certificate(construction, F, opt_d, opt_n, audit);
            } catch (const nbp::hypothesis_error& e) {
                std::cerr << "rejected: " << e.what() << "\n";
                return 2;
            }
            nbp::write_certificate(res.certificate, out_path);
            std::cout << (res.profile_ok ? "ok" : "PROFILE VIOLATION") << ": " << construction << " over GF("
                      << F.q() << "), d=" << opt_d << ", " << res.certificate["members"].size()
                      << " members -> " << out_path << "\n";
            return res.profile_ok ? 0 : 1;
        }

        if (verify_cmd->parsed()) {
            int rc = nbp::verify_certificate_file(cert_path, std::cerr);
            std::cout << (rc == 0 ? "verified" : "FAILED") << ": " << cert_path << "\n";
            return rc;
        }

        // scan
        std::vector<std::string> constructions;
        std::vector<long> qs, ds, ns{3};
        {
            std::stringstream ss(grid_spec);
            std::string seg;
            bool first = true;
            while (std::getline(ss, seg, ';')) {
                if (first) {
                    std::stringstream cs(seg);
                    std::string c;
                    while (std::getline(cs, c, ',')) constructions.push_back(c);
                    first = false;
                } else if (seg.rfind("q=", 0) == 0) {
                    qs = parse_range(seg.substr(2));
                } else if (seg.rfind("d=", 0) == 0) {
                    ds = parse_range(seg.substr(2));
                } else if (seg.rfind("n=", 0) == 0) {
                    ns = parse_range(seg.substr(2));
                } else {
                    throw std::invalid_argument("bad grid segment '" + seg + "'");
                }
            }
            if (constructions.empty() || qs.empty() || ds.empty())
                throw std::invalid_argument("grid spec needs constructions, q=..., d=...");
        }

        std::vector<GridCell> cells;
        for (const auto& c : constructions) {
            std::vector<long> dims = c == "highdim" ? ns : std::vector<long>{2};
            for (long n : dims)
                for (long q : qs)
                    for (long d : ds) cells.push_back({c, q, static_cast<int>(d), static_cast<int>(n)});
        }
        constexpr std::size_t kMaxCells = 10000;
        if (cells.size() > kMaxCells) {
            std::cerr << "grid budget exceeded: " << cells.size() << " cells (max " << kMaxCells << ")\n";
            return 2;
        }

        std::vector<CellResult> results(cells.size());
        if (jobs > 1) {
            std::vector<std::future<CellResult>> futs;
            futs.reserve(cells.size());
            for (const auto& cell : cells) {
                if (!is_prime_power(cell.q)) {
                    futs.push_back(std::async(std::launch::deferred, [cell] {
                        return CellResult{cell, "skipped", "not a prime power", 0, 0, false};
                    }));
                } else {
                    futs.push_back(std::async(std::launch::async, run_cell, cell, out_dir));
                }
            }
            for (std::size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
        } else {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                results[i] = is_prime_power(cells[i].q)
                                 ? run_cell(cells[i], out_dir)
                                 : CellResult{cells[i], "skipped", "not a prime power", 0, 0, false};
            }
        }

        bool any_failure = false;
        std::cout << std::left << std::setw(10) << "pencil" << std::setw(5) << "q" << std::setw(4) << "d"
                  << std::setw(4) << "n" << std::setw(22) << "verdict" << std::setw(8) << "lines"
                  << "ms\n";
        for (const auto& r : results) {
            any_failure = any_failure || r.failure;
            std::cout << std::left << std::setw(10) << r.cell.construction << std::setw(5) << r.cell.q
                      << std::setw(4) << r.cell.d << std::setw(4) << r.cell.n << std::setw(22) << r.verdict
                      << std::setw(8) << r.lines_scanned << std::fixed << std::setprecision(1) << r.ms;
            if (!r.detail.empty()) std::cout << "  " << r.detail;
            std::cout << "\n";
        }
        return any_failure ? 1 : 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "rejected: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
