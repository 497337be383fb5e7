#pragma once

// Machine-checkable nonblocking certificates: building a pencil, verifying
// every member, serializing the result, and independently re-checking a
// stored certificate against freshly rebuilt data.

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nbpencil/blocking.hpp"
#include "nbpencil/constructions.hpp"
#include "nbpencil/forms.hpp"

namespace nbp {

inline constexpr const char* kCertificateSchema = "nbpencil-certificate/1";
inline constexpr const char* kVerifierVersion = "nbpencil 1.0";

namespace cert {

using nlohmann::json;

inline json element_to_json(const FieldElement& e) { return json(e.rep()); }

inline FieldElement element_from_json(const json& j, const FiniteField& F) {
    return F.element(j.get<std::vector<int>>());
}

inline json form_to_json(const HomogeneousForm& f) {
    json terms = json::array();
    for (const auto& [exps, c] : f.terms()) terms.push_back({{"exp", exps}, {"coeff", c.rep()}});
    return {{"nvars", f.nvars()}, {"degree", f.degree()}, {"terms", terms}};
}

inline json line_to_json(const ProjLine& L) {
    if (L.n() == 2) {
        json d = json::array();
        for (const auto& c : L.dual()) d.push_back(c.rep());
        return {{"dual", d}};
    }
    json span = json::array();
    for (int r = 0; r < 2; ++r) {
        json row = json::array();
        for (int c = 0; c <= L.n(); ++c) row.push_back(L.row(r)[c].rep());
        span.push_back(row);
    }
    return {{"span", span}};
}

inline ProjLine line_from_json(const json& j, int n, const FiniteField& F) {
    if (j.contains("dual")) {
        // Recover a spanning pair from the dual triple [a:b:c].
        std::vector<FieldElement> d;
        for (const auto& c : j.at("dual")) d.push_back(element_from_json(c, F));
        if (d.size() != 3) throw std::invalid_argument("dual triple must have 3 entries");
        std::vector<std::vector<FieldElement>> rows;
        for (const ProjPoint& P : enumerate_points(2, F)) {
            FieldElement v = d[0] * P[0] + d[1] * P[1] + d[2] * P[2];
            if (v.is_zero()) {
                rows.push_back(P.coords());
                if (rows.size() == 2) return ProjLine(rows[0], rows[1]);
            }
        }
        throw std::invalid_argument("dual triple spans no line");
    }
    const auto& span = j.at("span");
    if (span.size() != 2) throw std::invalid_argument("span must have 2 rows");
    std::vector<std::vector<FieldElement>> rows;
    for (const auto& row : span) {
        std::vector<FieldElement> r;
        for (const auto& c : row) r.push_back(element_from_json(c, F));
        if (static_cast<int>(r.size()) != n + 1) throw std::invalid_argument("span row length mismatch");
        rows.push_back(std::move(r));
    }
    return ProjLine(rows[0], rows[1]);
}

}  // namespace cert

/// Dispatch by construction name (plane | highdim | fermat | nearmiss).
inline ConstructionOutput run_construction(const std::string& name, const FiniteField& F, int d, int n) {
    if (name == "plane") {
        if (n != 2) throw std::invalid_argument("plane construction requires n = 2");
        return plane_pencil(d, F);
    }
    if (name == "highdim") return highdim_pencil(n, d, F);
    if (name == "fermat") {
        if (n != 2) throw std::invalid_argument("fermat construction requires n = 2");
        return fermat_pencil(d, F);
    }
    if (name == "nearmiss") {
        if (n != 2) throw std::invalid_argument("nearmiss construction requires n = 2");
        return near_miss_pencil(d, F);
    }
    throw std::invalid_argument("unknown construction '" + name + "'");
}

struct BuildResult {
    nlohmann::json certificate;
    /// Whether the construction's expected blocking profile held.
    bool profile_ok = true;
};

/// Builds the pencil, verifies every member (designated-witness fast path
/// unless audit forces the full line scan), and assembles the certificate.
inline BuildResult build_certificate(const std::string& construction, const FiniteField& F, int d, int n,
                                     bool audit) {
    ConstructionOutput out = run_construction(construction, F, d, n);
    nlohmann::json cert;
    cert["schema"] = kCertificateSchema;
    cert["verifier_version"] = kVerifierVersion;
    cert["construction"] = construction;
    cert["field"] = {{"p", F.p()}, {"k", F.k()}, {"q", F.q()}, {"modulus", F.modulus()}};
    cert["n"] = n;
    cert["d"] = d;
    cert["audit"] = audit;
    cert["pencil"] = {{"F", cert::form_to_json(out.pencil.F)}, {"G", cert::form_to_json(out.pencil.G)}};
    for (const auto& [key, val] : out.metadata) cert["metadata"][key] = val;

    bool profile_ok = true;
    nlohmann::json members = nlohmann::json::array();
    for (std::size_t i = 0; i < out.members.size(); ++i) {
        const auto& [s, t] = out.members[i];
        HomogeneousForm member = pencil_member(out.pencil, s, t);
        PointSet S = rational_points(member);

        auto designated = out.designated_witnesses.find(i);
        BlockingStatus status = BlockingStatus::nonblocking;
        std::optional<ProjLine> witness;
        bool matched = false;
        bool fast_path_done = false;
        if (!audit && designated != out.designated_witnesses.end()) {
            bool skew = true;
            for (const ProjPoint& P : points_on_line(designated->second))
                if (S.contains(P)) skew = false;
            if (skew) {
                status = BlockingStatus::nonblocking;
                witness = designated->second;
                matched = true;
                fast_path_done = true;
            }
        }
        if (!fast_path_done) {
            BlockingVerdict v = classify(S);
            status = v.status;
            witness = v.witness;
            matched = designated != out.designated_witnesses.end() && witness.has_value() &&
                      *witness == designated->second;
        }

        bool member_ok;
        if (out.expected == ExpectedProfile::all_nonblocking) {
            member_ok = status == BlockingStatus::nonblocking;
        } else {
            member_ok = (i == out.expected_blocking_member) ? status == BlockingStatus::trivial_blocking
                                                            : status == BlockingStatus::nonblocking;
        }
        profile_ok = profile_ok && member_ok;

        nlohmann::json rec;
        rec["s"] = s.rep();
        rec["t"] = t.rep();
        rec["point_count"] = S.size();
        rec["status"] = to_string(status);
        rec["witness"] = witness ? cert::line_to_json(*witness) : nlohmann::json(nullptr);
        rec["designated_witness_matched"] = matched;
        members.push_back(std::move(rec));
    }
    cert["members"] = std::move(members);
    return {std::move(cert), profile_ok};
}

inline void write_certificate(const nlohmann::json& cert, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    os << cert.dump(2) << "\n";
}

/// Re-derives the pencil from the recorded parameters and re-checks every
/// member record: point counts, witness incidence, status consistency.
/// Returns 0 on full match, 1 on any mismatch (diagnostics on diag).
inline int verify_certificate(const nlohmann::json& cert, std::ostream& diag) {
    const std::string construction = cert.at("construction").get<std::string>();
    const auto& fj = cert.at("field");
    FiniteField F(fj.at("p").get<long>(), fj.at("k").get<int>());
    if (F.modulus() != fj.at("modulus").get<std::vector<int>>()) {
        diag << "field modulus does not match the deterministic choice\n";
        return 1;
    }
    const int n = cert.at("n").get<int>();
    const int d = cert.at("d").get<int>();
    ConstructionOutput out = run_construction(construction, F, d, n);

    const auto& members = cert.at("members");
    if (static_cast<long>(members.size()) != F.q() + 1) {
        diag << "expected " << F.q() + 1 << " member records, found " << members.size() << "\n";
        return 1;
    }
    int mismatches = 0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto& rec = members[i];
        FieldElement s = cert::element_from_json(rec.at("s"), F);
        FieldElement t = cert::element_from_json(rec.at("t"), F);
        if (i >= out.members.size() || s != out.members[i].first || t != out.members[i].second) {
            diag << "member " << i << ": [s:t] does not match the canonical ordering\n";
            ++mismatches;
            continue;
        }
        HomogeneousForm member = pencil_member(out.pencil, s, t);
        PointSet S = rational_points(member);
        if (rec.at("point_count").get<std::size_t>() != S.size()) {
            diag << "member " << i << ": point_count " << rec.at("point_count").get<std::size_t>()
                 << " != recomputed " << S.size() << "\n";
            ++mismatches;
        }
        const std::string status = rec.at("status").get<std::string>();
        if (status == "nonblocking") {
            if (rec.at("witness").is_null()) {
                diag << "member " << i << ": nonblocking without a witness line\n";
                ++mismatches;
                continue;
            }
            ProjLine W = cert::line_from_json(rec.at("witness"), n, F);
            for (const ProjPoint& P : points_on_line(W)) {
                if (S.contains(P)) {
                    diag << "member " << i << ": witness line meets the curve at " << P.str() << "\n";
                    ++mismatches;
                    break;
                }
            }
        } else if (status == "trivial_blocking") {
            if (rec.at("witness").is_null()) {
                diag << "member " << i << ": trivial_blocking without a contained line\n";
                ++mismatches;
                continue;
            }
            ProjLine W = cert::line_from_json(rec.at("witness"), n, F);
            for (const ProjPoint& P : points_on_line(W)) {
                if (!S.contains(P)) {
                    diag << "member " << i << ": claimed contained line misses " << P.str() << "\n";
                    ++mismatches;
                    break;
                }
            }
        } else if (status == "nontrivial_blocking") {
            BlockingVerdict v = classify(S);
            if (v.status != BlockingStatus::nontrivial_blocking) {
                diag << "member " << i << ": status nontrivial_blocking but reclassified as "
                     << to_string(v.status) << "\n";
                ++mismatches;
            }
        } else {
            diag << "member " << i << ": unknown status '" << status << "'\n";
            ++mismatches;
        }
    }
    return mismatches == 0 ? 0 : 1;
}

/// File-based verify: 0 match, 1 mismatch, 3 unreadable or malformed.
inline int verify_certificate_file(const std::string& path, std::ostream& diag) {
    std::ifstream is(path);
    if (!is) {
        diag << "cannot read '" << path << "'\n";
        return 3;
    }
    nlohmann::json cert;
    try {
        is >> cert;
        if (cert.at("schema").get<std::string>() != kCertificateSchema) {
            diag << "unsupported schema\n";
            return 3;
        }
        return verify_certificate(cert, diag);
    } catch (const nlohmann::json::exception& e) {
        diag << "malformed certificate: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace nbp
