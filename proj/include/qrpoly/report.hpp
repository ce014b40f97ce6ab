#ifndef QRPOLY_REPORT_HPP
#define QRPOLY_REPORT_HPP

/**
 * Line-delimited report records and the persistent per-prime cache.
 *
 * Report lines carry exactly the fields check, p, status, params, witness,
 * prec, elapsed_ms (in that order) so downstream scripts can diff and
 * filter them.  The cache uses the same line-delimited style, one record
 * per prime, and is replaced atomically on update; a cached record is only
 * believed after its split digest is recomputed and matched.
 */

#include <cstdio>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qrpoly/verify.hpp"

namespace qrpoly {

using ordered_json = nlohmann::ordered_json;

namespace detail {

inline ordered_json kv_object(const std::vector<std::pair<std::string, std::string>>& kv) {
    ordered_json o = ordered_json::object();
    for (const auto& e : kv) o[e.first] = e.second;
    return o;
}

} // namespace detail

/** One report line (no trailing newline). */
inline std::string report_line(const CheckResult& r, long long elapsed_ms) {
    ordered_json o;
    o["check"] = r.check;
    o["p"] = r.p;
    o["status"] = to_string(r.status);
    o["params"] = detail::kv_object(r.params);
    o["witness"] = detail::kv_object(r.witness);
    if (r.prec_used > 0)
        o["prec"] = r.prec_used;
    else
        o["prec"] = nullptr;
    o["elapsed_ms"] = elapsed_ms;
    return o.dump();
}

/**
 * Cached per-prime intermediates.  Class-field fields are present only
 * when they were actually computed (and only make sense for
 * p = 3 (mod 4), p > 3); arbitrary-size integers travel as decimal
 * strings.  The digest is the FNV-1a hash of the exact split, and must be
 * re-derived from a fresh split before any other field is trusted.
 */
struct CacheRecord {
    std::uint64_t p = 0;
    std::optional<long> h_neg;
    std::optional<long> h_pos_3p;
    std::optional<std::pair<std::string, std::string>> unit_3p;  ///< (a, b) of (a + b sqrt(3p))/2
    std::optional<std::pair<std::string, std::string>> pell;     ///< least (x_p, y_p)
    std::string uv_digest;                                       ///< 16 hex chars

    friend bool operator==(const CacheRecord& a, const CacheRecord& b) {
        return a.p == b.p && a.h_neg == b.h_neg && a.h_pos_3p == b.h_pos_3p &&
               a.unit_3p == b.unit_3p && a.pell == b.pell && a.uv_digest == b.uv_digest;
    }
};

inline std::string cache_line(const CacheRecord& r) {
    ordered_json o;
    o["p"] = r.p;
    if (r.h_neg) o["h_neg"] = *r.h_neg; else o["h_neg"] = nullptr;
    if (r.h_pos_3p) o["h_pos_3p"] = *r.h_pos_3p; else o["h_pos_3p"] = nullptr;
    if (r.unit_3p) o["unit_3p"] = ordered_json::array({r.unit_3p->first, r.unit_3p->second});
    else o["unit_3p"] = nullptr;
    if (r.pell) o["pell"] = ordered_json::array({r.pell->first, r.pell->second});
    else o["pell"] = nullptr;
    o["uv_digest"] = r.uv_digest;
    return o.dump();
}

inline CacheRecord cache_record_from_line(const std::string& line) {
    ordered_json o;
    try {
        o = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("cache: malformed record: ") + e.what());
    }
    CacheRecord r;
    try {
        if (!o.is_object() || !o.contains("p") || !o.contains("uv_digest"))
            throw input_error("cache: record must carry p and uv_digest");
        r.p = o.at("p").get<std::uint64_t>();
        r.uv_digest = o.at("uv_digest").get<std::string>();
        if (o.contains("h_neg") && !o.at("h_neg").is_null())
            r.h_neg = o.at("h_neg").get<long>();
        if (o.contains("h_pos_3p") && !o.at("h_pos_3p").is_null())
            r.h_pos_3p = o.at("h_pos_3p").get<long>();
        auto pair_field = [&o](const char* key) -> std::optional<std::pair<std::string, std::string>> {
            if (!o.contains(key) || o.at(key).is_null()) return std::nullopt;
            const auto& a = o.at(key);
            if (!a.is_array() || a.size() != 2)
                throw input_error(std::string("cache: field ") + key + " must be a pair");
            return std::make_pair(a.at(0).get<std::string>(), a.at(1).get<std::string>());
        };
        r.unit_3p = pair_field("unit_3p");
        r.pell = pair_field("pell");
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("cache: malformed record: ") + e.what());
    }
    if (r.uv_digest.size() != 16)
        throw input_error("cache: uv_digest must be 16 hex characters");
    return r;
}

/**
 * Loads the cache; a missing file is an empty cache (cold start), but an
 * unreadable or malformed file is a startup error.  Records are keyed by
 * p and must be unique.
 */
inline std::map<std::uint64_t, CacheRecord> load_cache(const std::string& path) {
    std::map<std::uint64_t, CacheRecord> out;
    std::ifstream in(path);
    if (!in.is_open()) return out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        CacheRecord r = cache_record_from_line(line);
        if (!out.emplace(r.p, std::move(r)).second)
            throw input_error("cache: duplicate record for p = " + std::to_string(r.p) +
                              " at line " + std::to_string(lineno));
    }
    return out;
}

/** Writes the cache to path via a temporary file and an atomic rename. */
inline void save_cache(const std::string& path, const std::map<std::uint64_t, CacheRecord>& cache) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out.is_open()) throw input_error("cache: cannot write " + tmp);
        for (const auto& e : cache) out << cache_line(e.second) << '\n';
        out.flush();
        if (!out) throw input_error("cache: write failure on " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw input_error("cache: cannot rename " + tmp + " to " + path);
}

/** Builds the record for a prime from whatever the work memo holds. */
inline CacheRecord cache_record_from_work(PrimeWork& w) {
    CacheRecord r;
    r.p = w.p();
    r.uv_digest = digest_hex(uv_digest(w.split()));
    if (auto h = w.peek_h_neg()) r.h_neg = *h;
    if (auto h = w.peek_h3p()) r.h_pos_3p = *h;
    if (const auto& u = w.peek_unit3p())
        r.unit_3p = std::make_pair(u->a.get_str(), u->b.get_str());
    if (const auto& pe = w.peek_pell_least())
        r.pell = std::make_pair(pe->x.get_str(), pe->y.get_str());
    return r;
}

/**
 * Seeds the work memo from a cached record, but only after recomputing
 * the split digest and matching it; a mismatch leaves the memo untouched
 * so everything is recomputed.  Returns whether the record was trusted.
 */
inline bool seed_from_cache(PrimeWork& w, const CacheRecord& rec) {
    if (rec.p != w.p()) throw input_error("cache: record/prime mismatch");
    if (digest_hex(uv_digest(w.split())) != rec.uv_digest) return false;
    auto parse_z = [](const std::string& s) {
        try {
            return mpz_class(s);
        } catch (const std::invalid_argument&) {
            throw input_error("cache: malformed integer '" + s + "'");
        }
    };
    const bool pell_class = (w.p() % 4 == 3 && w.p() > 3);
    if (pell_class) {
        if (rec.h_neg) w.seed_h_neg(*rec.h_neg);
        if (rec.h_pos_3p) w.seed_h3p(*rec.h_pos_3p);
        if (rec.unit_3p)
            w.seed_unit3p(QuadInt{3ll * static_cast<long long>(w.p()),
                                  parse_z(rec.unit_3p->first), parse_z(rec.unit_3p->second)});
        if (rec.pell) {
            PellSolution pe;
            pe.p = w.p();
            pe.x = parse_z(rec.pell->first);
            pe.y = parse_z(rec.pell->second);
            pe.sign = legendre(static_cast<long long>(w.p()), 3);
            w.seed_pell_least(std::move(pe));
        }
    }
    return true;
}

} // namespace qrpoly

#endif // QRPOLY_REPORT_HPP
