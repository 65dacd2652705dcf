#pragma once

#include <doflab/channel.hpp>
#include <doflab/lemmas.hpp>
#include <doflab/region.hpp>
#include <doflab/schemes.hpp>
#include <doflab/strategy.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace doflab {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) { return to_fraction_string(q); }

inline Json to_json(const std::vector<Rational>& v) {
    Json arr = Json::array();
    for (const auto& q : v) arr.push_back(to_json(q));
    return arr;
}

inline Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_fraction_string(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json to_json(const ChannelRealization& real) {
    Json j;
    j["k"] = real.k();
    j["m"] = real.m();
    j["n"] = real.n();
    j["seed"] = real.seed();
    j["resamples"] = real.resample_count();
    Json rows = Json::array();
    for (int rec = 0; rec < real.k(); ++rec) {
        Json per_slot = Json::array();
        for (int t = 1; t <= real.n(); ++t) {
            Json row = Json::array();
            for (int c = 0; c < real.m(); ++c)
                row.push_back(to_fraction_string(real.row(rec, t)(0, c)));
            per_slot.push_back(std::move(row));
        }
        rows.push_back(std::move(per_slot));
    }
    j["entries"] = std::move(rows);
    return j;
}

inline ChannelRealization channel_from_json(const Json& j) {
    ChannelRealization real(j.at("k").get<int>(), j.at("m").get<int>(), j.at("n").get<int>(),
                            j.at("seed").get<std::uint64_t>());
    real.set_resample_count(j.value("resamples", 0));
    const Json& rows = j.at("entries");
    for (int rec = 0; rec < real.k(); ++rec)
        for (int t = 1; t <= real.n(); ++t) {
            Matrix row(1, real.m());
            for (int c = 0; c < real.m(); ++c)
                row(0, c) = rational_from_string(rows.at(rec).at(t - 1).at(c).get<std::string>());
            real.row(rec, t) = row;
        }
    return real;
}

inline Json to_json(const std::vector<ReceiverDecodability>& records) {
    Json arr = Json::array();
    for (const auto& r : records) {
        Json e;
        e["achieved"] = r.achieved;
        e["symbols"] = r.symbols;
        e["lhsRank"] = r.lhs_rank;
        e["interferenceRank"] = r.interference_rank;
        e["ownRank"] = r.own_rank;
        arr.push_back(std::move(e));
    }
    return arr;
}

// Transcript dump for reproduction: strategy provenance, dimensions, the
// decodability record and (optionally) every matrix involved.
inline Json transcript_to_json(const Transcript& tr, bool include_matrices) {
    Json j;
    j["strategy"] = tr.strategy().generator_tag;
    j["csit"] = tr.strategy().config.str();
    j["k"] = tr.k();
    j["m"] = tr.m();
    j["n"] = tr.n();
    j["channelSeed"] = tr.realization().seed();
    j["symbolCounts"] = tr.strategy().symbol_counts;
    j["decodability"] = to_json(check_decodability(tr));
    j["dof"] = to_json(achieved_dof(tr.strategy()));
    if (include_matrices) {
        j["channel"] = to_json(tr.realization());
        Json pre = Json::array();
        for (int rec = 0; rec < tr.k(); ++rec) {
            Json per_slot = Json::array();
            for (int t = 1; t <= tr.n(); ++t)
                per_slot.push_back(to_json(tr.strategy().precoder(rec, t)));
            pre.push_back(std::move(per_slot));
        }
        j["precoders"] = std::move(pre);
    }
    return j;
}

inline Json to_json(const Inequality& ineq) {
    Json j;
    j["family"] = to_string(ineq.family);
    j["coeffs"] = to_json(ineq.coeffs);
    j["rhs"] = to_fraction_string(ineq.rhs);
    j["text"] = ineq.str();
    return j;
}

inline Json region_to_json(const DofRegion& region, bool with_vertices) {
    Json j;
    j["k"] = region.k;
    Json ineqs = Json::array();
    for (const auto& ineq : region.inequalities) ineqs.push_back(to_json(ineq));
    j["inequalities"] = std::move(ineqs);
    j["sumDof"] = to_fraction_string(sumdof(region));
    if (with_vertices && region.k <= 4) {
        Json verts = Json::array();
        for (const auto& v : vertices(region)) verts.push_back(to_json(v));
        j["vertices"] = std::move(verts);
    }
    return j;
}

// Stated in every report: the integer-box sampling is a stand-in for the
// continuous channel model, with genericity enforced by resampling.
inline const char* channel_model_note() {
    return "uniform integer channel entries (default range 100), slot blocks resampled "
           "to total nonsingularity; stands in for continuous channels in general position";
}

inline Json to_json(const SuiteReport& report) {
    Json j;
    j["config"] = report.config;
    j["trials"] = report.trials;
    j["seed"] = report.seed;
    j["channelModel"] = channel_model_note();
    j["allPassed"] = report.all_passed();
    Json entries = Json::array();
    for (const auto& e : report.entries) {
        Json item;
        item["lemma"] = e.lemma;
        item["kind"] = e.kind;
        item["trials"] = e.trials;
        item["passes"] = e.passes;
        item["minSlack"] = e.min_slack ? Json(to_fraction_string(*e.min_slack)) : Json(nullptr);
        item["violations"] = e.violations;
        entries.push_back(std::move(item));
    }
    j["entries"] = std::move(entries);
    return j;
}

}  // namespace doflab
