#ifndef QRPOLY_SCAN_HPP
#define QRPOLY_SCAN_HPP

/**
 * Prime-range scan driver: runs a selected battery of checks over every
 * prime in [p_min, p_max], appends one report line per check result, and
 * maintains the per-prime cache.
 *
 * Concurrency model: prime-level work items are handed to a fixed pool of
 * workers; each worker owns its slot in a pre-sized result table, so the
 * only shared mutable state is a pair of status flags and the log stream.
 * The report is emitted by a single writer after all workers join, in
 * ascending prime order with a fixed check order inside each prime, which
 * makes re-runs deterministic record-for-record.
 */

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qrpoly/report.hpp"
#include "qrpoly/verify.hpp"

namespace qrpoly {

/** Known check identifiers, in canonical report order. */
inline const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> k = {"lemma21", "th11", "th12", "th13", "th14",
                                               "cor",     "lem22", "g2",  "j14",  "berndt"};
    return k;
}

struct ScanConfig {
    std::uint64_t p_min = 3;
    std::uint64_t p_max = 3;
    std::vector<std::string> checks;                                ///< non-empty subset of known_checks()
    std::vector<std::pair<unsigned long, unsigned long>> th11_grid; ///< (a, m) pairs; empty = default grid
    long precision = 192;
    std::string out_path;
    std::string cache_path;                                         ///< empty = no cache
    unsigned parallelism = 1;
};

/** The default evaluation grid: m in {3,4,5,6,8,10,12}, all 0 < a < m. */
inline std::vector<std::pair<unsigned long, unsigned long>> default_th11_grid() {
    std::vector<std::pair<unsigned long, unsigned long>> g;
    for (unsigned long m : {3ul, 4ul, 5ul, 6ul, 8ul, 10ul, 12ul})
        for (unsigned long a = 1; a < m; ++a) g.emplace_back(a, m);
    return g;
}

namespace detail {

struct ScanOutcome {
    std::vector<std::string> lines;       // report lines in canonical order
    bool any_fail = false;
    bool any_indeterminate = false;
    bool have_cache_record = false;
    CacheRecord cache_record;
};

inline void validate_config(const ScanConfig& cfg) {
    if (cfg.p_min < 3) throw input_error("scan: p_min must be >= 3");
    if (cfg.p_max < cfg.p_min) throw input_error("scan: p_max must be >= p_min");
    if (cfg.precision < 53) throw input_error("scan: precision must be >= 53");
    if (cfg.checks.empty()) throw input_error("scan: the check list must be non-empty");
    const auto& known = known_checks();
    std::set<std::string> seen;
    for (const auto& c : cfg.checks) {
        if (std::find(known.begin(), known.end(), c) == known.end())
            throw input_error("scan: unknown check '" + c + "'");
        if (!seen.insert(c).second) throw input_error("scan: duplicate check '" + c + "'");
    }
    for (const auto& am : cfg.th11_grid) {
        if (am.second <= 1 || am.first == 0 || am.first >= am.second)
            throw input_error("scan: th11 grid entries need m > 1 and 0 < a < m");
    }
    if (cfg.out_path.empty()) throw input_error("scan: out_path is required");
}

/** Runs every selected check on one prime; no shared state touched. */
inline ScanOutcome run_prime(std::uint64_t p, const ScanConfig& cfg,
                             const std::vector<std::string>& order,
                             const std::vector<std::pair<unsigned long, unsigned long>>& grid,
                             const CacheRecord* cached, std::string* log_note) {
    ScanOutcome out;
    PrimeWork w(p);
    if (cached != nullptr) {
        if (!seed_from_cache(w, *cached) && log_note != nullptr)
            *log_note = "cache digest mismatch for p = " + std::to_string(p) + "; recomputed";
    }

    auto emit = [&out](const CheckResult& r, long long ms) {
        out.lines.push_back(report_line(r, ms));
        if (r.status == CheckStatus::Fail) out.any_fail = true;
        if (r.status == CheckStatus::Indeterminate) out.any_indeterminate = true;
    };
    auto timed = [&emit](auto&& fn) {
        const auto t0 = std::chrono::steady_clock::now();
        CheckResult r = fn();
        const auto t1 = std::chrono::steady_clock::now();
        emit(r, std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
    };

    for (const auto& name : order) {
        if (name == "lemma21") {
            timed([&] { return check_lemma21(w); });
        } else if (name == "th11") {
            for (const auto& am : grid) {
                if (am.second % p == 0) continue;   // grid keeps p not dividing m
                timed([&] { return check_th11(w, am.first, am.second, cfg.precision); });
            }
        } else if (name == "th12") {
            timed([&] { return check_th12(w); });
        } else if (name == "th13") {
            timed([&] { return check_th13(w); });
        } else if (name == "th14") {
            timed([&] { return check_th14(w); });
        } else if (name == "cor") {
            timed([&] { return check_corollary(w); });
        } else if (name == "lem22") {
            timed([&] { return check_lem22(w); });
        } else if (name == "g2") {
            timed([&] { return check_g2(w, cfg.precision); });
        } else if (name == "j14") {
            timed([&] { return check_j14(w); });
        } else if (name == "berndt") {
            timed([&] { return check_berndt(w); });
        } else {
            throw input_error("scan: unknown check '" + name + "'");
        }
    }

    // Refresh the cache record whenever the split is in hand (it is the
    // digest anchor; without it there is nothing trustworthy to store).
    if (w.has_split()) {
        out.cache_record = cache_record_from_work(w);
        out.have_cache_record = true;
    }
    return out;
}

} // namespace detail

/**
 * Runs the scan.  Returns the exit status: 0 when every record is Pass or
 * NotApplicable, 1 when any check Failed, 2 when the only blemishes are
 * Indeterminate records.  Startup problems (bad config, unwritable paths,
 * malformed cache) throw input_error.
 */
inline int scan(const ScanConfig& cfg, std::ostream& log = std::cerr) {
    detail::validate_config(cfg);

    std::vector<std::string> order;
    for (const auto& name : known_checks())
        if (std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end())
            order.push_back(name);
    const auto grid = cfg.th11_grid.empty() ? default_th11_grid() : cfg.th11_grid;

    std::uint64_t start = cfg.p_min;
    while (!is_prime(start)) ++start;
    if (start != cfg.p_min)
        log << "scan: p_min " << cfg.p_min << " is not prime; starting at " << start << "\n";
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = start; p <= cfg.p_max; ++p)
        if (is_prime(p)) primes.push_back(p);

    std::map<std::uint64_t, CacheRecord> cache;
    if (!cfg.cache_path.empty()) cache = load_cache(cfg.cache_path);

    // Probe the report sink before doing any work.
    std::ofstream sink(cfg.out_path, std::ios::app);
    if (!sink.is_open()) throw input_error("scan: cannot open out_path " + cfg.out_path);

    std::vector<detail::ScanOutcome> slots(primes.size());
    std::vector<std::string> notes(primes.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mu;
    const unsigned jobs = std::max(1u, cfg.parallelism);

    std::mutex err_mu;
    std::string first_error;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= primes.size()) return;
            const std::uint64_t p = primes[i];
            const auto it = cache.find(p);
            const CacheRecord* rec = (it == cache.end()) ? nullptr : &it->second;
            try {
                slots[i] = detail::run_prime(p, cfg, order, grid, rec, &notes[i]);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (first_error.empty())
                    first_error = "p = " + std::to_string(p) + ": " + e.what();
            }
            if (!notes[i].empty()) {
                std::lock_guard<std::mutex> lk(log_mu);
                log << "scan: " << notes[i] << "\n";
            }
        }
    };

    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    if (!first_error.empty())
        throw input_error("scan: aborted before writing the report; " + first_error);

    bool any_fail = false, any_indet = false;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        for (const auto& line : slots[i].lines) sink << line << '\n';
        any_fail = any_fail || slots[i].any_fail;
        any_indet = any_indet || slots[i].any_indeterminate;
    }
    sink.flush();
    if (!sink) throw input_error("scan: write failure on " + cfg.out_path);

    if (!cfg.cache_path.empty()) {
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (slots[i].have_cache_record) cache[primes[i]] = slots[i].cache_record;
        save_cache(cfg.cache_path, cache);
    }

    if (any_fail) return 1;
    if (any_indet) return 2;
    return 0;
}

} // namespace qrpoly

#endif // QRPOLY_SCAN_HPP
