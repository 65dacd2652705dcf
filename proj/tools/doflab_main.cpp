// Command-line laboratory for linear degrees-of-freedom analysis of the
// k-user MISO broadcast channel with hybrid CSIT (per-receiver state P, D or
// N): exact DoF-region polytopes and sum values, constructive scheme
// simulation with rank-based decodability verdicts, and randomized
// verification of the rank inequalities behind the region bounds. All
// arithmetic is exact; machine formats print rationals as "p/q".

#include <doflab/lemmas.hpp>
#include <doflab/region.hpp>
#include <doflab/schemes.hpp>
#include <doflab/serialize.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace doflab;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;
constexpr int kExitGoldenMismatch = 3;

struct Output {
    std::string format = "text";
    std::string out_path;

    void emit(const std::string& body) const {
        if (out_path.empty()) {
            std::cout << body;
            if (!body.empty() && body.back() != '\n') std::cout << '\n';
        } else {
            std::ofstream f(out_path);
            if (!f) throw std::runtime_error("cannot open output path: " + out_path);
            f << body;
            if (!body.empty() && body.back() != '\n') f << '\n';
        }
    }
};

std::string txt(const Rational& q) {
    std::string s = to_fraction_string(q);
    if (!is_integer(q)) {
        const double approx = static_cast<double>(num(q)) / static_cast<double>(den(q));
        std::ostringstream os;
        os << s << " (" << approx << ")";
        return os.str();
    }
    return s;
}

std::string join_dof(const std::vector<Rational>& d) {
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s += ", ";
        s += to_fraction_string(d[i]);
    }
    return s + ")";
}

void dump_to(const std::string& path, const Json& j) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open dump path: " + path);
    f << j.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

int cmd_region(const std::string& csit, const Output& out) {
    const CsitConfig config = CsitConfig::parse(csit);
    const DofRegion region = build_region(config);
    const auto binding = irredundant_inequalities(region);
    const Rational sum = sumdof(region);
    const bool exact = (config.k() == 3);
    const bool sum_exact_single_delayed = (config.delayed().size() == 1);

    if (out.format == "json") {
        Json j = region_to_json(region, /*with_vertices=*/true);
        j["csit"] = config.str();
        j["exactness"] = exact ? "exact" : "outer-bound";
        if (!exact && sum_exact_single_delayed)
            j["note"] = "sum value is exact for a single delayed receiver";
        Json b = Json::array();
        for (const auto& ineq : binding) b.push_back(to_json(ineq));
        j["binding"] = std::move(b);
        out.emit(j.dump(2));
        return kExitOk;
    }
    if (out.format == "csv") {
        std::ostringstream os;
        os << "kind,family,data,rhs\n";
        for (const auto& ineq : region.inequalities) {
            os << "inequality," << to_string(ineq.family) << ",";
            for (std::size_t i = 0; i < ineq.coeffs.size(); ++i)
                os << (i ? " " : "") << to_fraction_string(ineq.coeffs[i]);
            os << "," << to_fraction_string(ineq.rhs) << "\n";
        }
        if (region.k <= 4)
            for (const auto& v : vertices(region)) {
                os << "vertex,,";
                for (std::size_t i = 0; i < v.size(); ++i)
                    os << (i ? " " : "") << to_fraction_string(v[i]);
                os << ",\n";
            }
        os << "sumdof,," << to_fraction_string(sum) << ",\n";
        out.emit(os.str());
        return kExitOk;
    }
    std::ostringstream os;
    os << "CSIT " << config.str() << "  [" << (exact ? "exact region" : "outer bound") << "]\n";
    if (!exact && sum_exact_single_delayed)
        os << "  (sum value exact: single delayed receiver)\n";
    os << "inequalities (besides 0 <= d_j <= 1):\n";
    for (const auto& ineq : region.inequalities) os << "  " << ineq.str() << "\n";
    os << "binding after redundancy elimination:\n";
    for (const auto& ineq : binding) os << "  " << ineq.str() << "\n";
    if (region.k <= 4) {
        os << "vertices:\n";
        for (const auto& v : vertices(region)) os << "  " << join_dof(v) << "\n";
    } else {
        os << "vertices: (enumeration supported up to k=4)\n";
    }
    os << "sum-DoF: " << txt(sum) << "\n";
    out.emit(os.str());
    return kExitOk;
}

int cmd_table1(const Output& out) {
    const auto rows = table1_report();
    bool all_match = true;
    for (const auto& r : rows) all_match = all_match && r.matches;

    if (out.format == "json") {
        Json j = Json::array();
        for (const auto& r : rows) {
            Json e;
            e["csit"] = r.csit_class;
            e["sumDof"] = to_fraction_string(r.sum_dof);
            e["golden"] = to_fraction_string(r.golden);
            e["matches"] = r.matches;
            Json b = Json::array();
            for (const auto& ineq : r.binding) b.push_back(ineq.str());
            e["region"] = std::move(b);
            j.push_back(std::move(e));
        }
        out.emit(j.dump(2));
    } else if (out.format == "csv") {
        std::ostringstream os;
        os << "csit,sumdof,golden,matches\n";
        for (const auto& r : rows)
            os << r.csit_class << "," << to_fraction_string(r.sum_dof) << ","
               << to_fraction_string(r.golden) << "," << (r.matches ? "1" : "0") << "\n";
        out.emit(os.str());
    } else {
        std::ostringstream os;
        for (const auto& r : rows) {
            os << r.csit_class << "  sum-DoF " << txt(r.sum_dof)
               << (r.matches ? "" : "  MISMATCH, expected " + to_fraction_string(r.golden))
               << "\n";
            for (const auto& ineq : r.binding) os << "    " << ineq.str() << "\n";
        }
        os << (all_match ? "all 10 classes match the embedded table\n"
                         : "MISMATCH against the embedded table\n");
        out.emit(os.str());
    }
    return all_match ? kExitOk : kExitGoldenMismatch;
}

int cmd_simulate(const std::string& scheme, const std::string& csit, int kk, int slots,
                 std::uint64_t seed, int audit_trials, const std::string& dump_path,
                 const Output& out) {
    LinearStrategy strategy;
    ChannelRealization real(1, 1, 1, 0);
    StrategyGenerator generator;
    CsitConfig config;

    if (scheme == "pdd") {
        config = CsitConfig::parse("PDD");
        real = sample_channel(3, 3, 4, seed);
        generator = [](const CsitConfig&, const ChannelRealization& r, std::uint64_t) {
            return pdd_scheme(r);
        };
    } else if (scheme == "kuser-d1") {
        if (kk < 2) throw std::invalid_argument("kuser-d1 requires --K >= 2");
        config = kuser_d1_scheme_spec(kk).config;
        real = sample_channel(kk, kk, 1 << (kk - 1), seed);
        generator = [kk](const CsitConfig&, const ChannelRealization& r, std::uint64_t) {
            return kuser_d1_scheme(kk, r);
        };
    } else if (scheme == "zf") {
        if (csit.empty()) throw std::invalid_argument("zf requires a --csit string");
        config = CsitConfig::parse(csit);
        if (config.instantaneous().empty())
            throw std::invalid_argument("zf requires at least one P receiver");
        if (slots < 1) throw std::invalid_argument("--slots must be >= 1");
        real = sample_channel(config.k(), config.k(), slots, seed);
        const int n = slots;
        generator = [n](const CsitConfig& c, const ChannelRealization& r, std::uint64_t) {
            return zero_forcing_scheme(c, r, n);
        };
    } else {
        throw std::invalid_argument("unknown scheme: " + scheme +
                                    " (expected zf, pdd or kuser-d1)");
    }

    strategy = generator(config, real, seed);
    const Transcript tr = assemble(strategy, real);
    const auto records = check_decodability(tr);
    const bool decodable = all_achieved(records);
    const bool compliant = validate_csit_compliance(generator, config, real, seed, audit_trials);
    const auto dof = achieved_dof(strategy);
    Rational sum(0);
    for (const auto& d : dof) sum += d;

    if (!dump_path.empty()) dump_to(dump_path, transcript_to_json(tr, true));

    if (out.format == "json") {
        Json j;
        j["scheme"] = strategy.generator_tag;
        j["csit"] = config.str();
        j["seed"] = seed;
        j["decodable"] = decodable;
        j["csitCompliant"] = compliant;
        j["symbolCounts"] = strategy.symbol_counts;
        j["n"] = strategy.n;
        j["dof"] = to_json(dof);
        j["sumDof"] = to_fraction_string(sum);
        j["decodability"] = to_json(records);
        j["channelModel"] = channel_model_note();
        out.emit(j.dump(2));
    } else if (out.format == "csv") {
        std::ostringstream os;
        os << "scheme,csit,seed,decodable,compliant,sumdof,dof\n"
           << strategy.generator_tag << "," << config.str() << "," << seed << ","
           << (decodable ? "1" : "0") << "," << (compliant ? "1" : "0") << ","
           << to_fraction_string(sum) << ",";
        for (std::size_t i = 0; i < dof.size(); ++i)
            os << (i ? " " : "") << to_fraction_string(dof[i]);
        os << "\n";
        out.emit(os.str());
    } else {
        std::ostringstream os;
        os << "scheme: " << strategy.generator_tag << " over CSIT " << config.str()
           << ", seed " << seed << "\n";
        os << "decodable: " << (decodable ? "true" : "false") << "\n";
        os << "csit-compliance audit: " << (compliant ? "passed" : "FAILED") << "\n";
        os << "dof = " << join_dof(dof) << ", sum = " << txt(sum) << "\n";
        if (!decodable) {
            os << "diagnostic: decodability ranks per receiver\n";
            for (std::size_t j = 0; j < records.size(); ++j)
                os << "  rx" << (j + 1) << ": total " << records[j].lhs_rank
                   << ", interference " << records[j].interference_rank << ", own "
                   << records[j].own_rank << ", symbols " << records[j].symbols << "\n";
            os << "hint: the realization is degenerate for this construction; resample "
                  "with another --seed\n";
        }
        out.emit(os.str());
    }
    if (!decodable) {
        if (dump_path.empty())
            std::cerr << transcript_to_json(tr, true).dump(2) << "\n";
        return kExitVerification;
    }
    return compliant ? kExitOk : kExitVerification;
}

int cmd_verify(const std::string& csit, int trials, std::uint64_t seed,
               const std::vector<std::string>& kind_names, const std::string& dump_path,
               const Output& out) {
    const CsitConfig config = CsitConfig::parse(csit);
    std::vector<SuiteKind> kinds;
    if (kind_names.empty()) {
        kinds = all_suite_kinds();
    } else {
        for (const auto& name : kind_names) {
            if (name == "oblivious") kinds.push_back(SuiteKind::Oblivious);
            else if (name == "delayed-mixing") kinds.push_back(SuiteKind::DelayedMixing);
            else if (name == "zero-forcing-hybrid") kinds.push_back(SuiteKind::ZeroForcingHybrid);
            else if (name == "schemes") kinds.push_back(SuiteKind::Schemes);
            else throw std::invalid_argument("unknown kind: " + name);
        }
    }
    const SuiteReport report = run_suite(config, kinds, trials, seed);
    if (!dump_path.empty()) dump_to(dump_path, to_json(report));

    if (out.format == "json") {
        out.emit(to_json(report).dump(2));
    } else if (out.format == "csv") {
        std::ostringstream os;
        os << "lemma,kind,trials,passes,minSlack,violations\n";
        for (const auto& e : report.entries)
            os << e.lemma << "," << e.kind << "," << e.trials << "," << e.passes << ","
               << (e.min_slack ? to_fraction_string(*e.min_slack) : "") << ","
               << e.violations.size() << "\n";
        out.emit(os.str());
    } else {
        std::ostringstream os;
        os << "verify " << config.str() << ": " << report.trials << " trials per kind, seed "
           << report.seed << "\n";
        for (const auto& e : report.entries) {
            os << "  " << e.lemma << " [" << e.kind << "]: " << e.passes << "/" << e.trials
               << " trials clean";
            if (e.min_slack) os << ", min slack " << to_fraction_string(*e.min_slack);
            os << "\n";
            for (const auto& v : e.violations) os << "    VIOLATION " << v << "\n";
        }
        os << (report.all_passed() ? "no violations\n" : "VIOLATIONS FOUND\n");
        out.emit(os.str());
    }
    return report.all_passed() ? kExitOk : kExitVerification;
}

int cmd_bounds(int p, int d, const Output& out) {
    if (p < 0 || d < 0) throw std::invalid_argument("--P and --D must be nonnegative");
    std::ostringstream note;
    std::optional<SumDofBracket> bracket;
    std::optional<Rational> lp;
    std::optional<Rational> exact;

    if (p == 0 && d == 0) {
        note << "no active receivers";
    } else {
        const std::string cls = std::string(p, 'P') + std::string(d, 'D');
        lp = outer_bound_sumdof(CsitConfig::parse(cls));
        if (d == 0) {
            exact = Rational(p);
            note << "zero-forcing is optimal without delayed receivers";
        } else if (d == 1) {
            exact = single_delayed_sumdof(p);
            note << "exact: single delayed receiver";
            if (p >= 1) bracket = sumdof_bracket(p, d);
        } else if (p >= d) {
            bracket = sumdof_bracket(p, d);
            note << "approximate characterization: gap at most 1/2";
        } else {
            note << "outside the approximate-characterization regime (needs |P| >= |D|); "
                    "reporting the LP value only";
        }
    }

    if (out.format == "json") {
        Json j;
        j["P"] = p;
        j["D"] = d;
        j["note"] = note.str();
        if (bracket) {
            j["lower"] = to_fraction_string(bracket->lower);
            j["upper"] = to_fraction_string(bracket->upper);
            j["gap"] = to_fraction_string(bracket->gap);
            j["gapCap"] = to_fraction_string(bracket->gap_cap);
        }
        if (lp) j["lp"] = to_fraction_string(*lp);
        if (exact) j["exact"] = to_fraction_string(*exact);
        if (lp && bracket)
            j["lpWithinBracket"] = (bracket->lower <= *lp && *lp <= bracket->upper);
        out.emit(j.dump(2));
    } else if (out.format == "csv") {
        std::ostringstream os;
        os << "P,D,lower,upper,gap,lp,exact\n"
           << p << "," << d << ","
           << (bracket ? to_fraction_string(bracket->lower) : "") << ","
           << (bracket ? to_fraction_string(bracket->upper) : "") << ","
           << (bracket ? to_fraction_string(bracket->gap) : "") << ","
           << (lp ? to_fraction_string(*lp) : "") << ","
           << (exact ? to_fraction_string(*exact) : "") << "\n";
        out.emit(os.str());
    } else {
        std::ostringstream os;
        os << "|P| = " << p << ", |D| = " << d << ": " << note.str() << "\n";
        if (bracket) {
            os << "lower (zero-forcing): " << txt(bracket->lower) << "\n";
            os << "upper: " << txt(bracket->upper) << "\n";
            os << "gap: " << txt(bracket->gap) << "  (cap " << txt(bracket->gap_cap) << ")\n";
        }
        if (lp) os << "LP value of the outer bound: " << txt(*lp) << "\n";
        if (exact) os << "exact sum: " << txt(*exact) << "\n";
        if (lp && bracket)
            os << "LP within bracket: "
               << ((bracket->lower <= *lp && *lp <= bracket->upper) ? "yes" : "NO") << "\n";
        out.emit(os.str());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact linear-DoF laboratory for the k-user MISO broadcast channel "
                 "with hybrid CSIT"};
    app.require_subcommand(1);
    app.set_config("--config");

    Output out;
    std::uint64_t seed = 0;
    int trials = 100;
    std::string csit, dump_path;

    app.add_option("--format", out.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    app.add_option("--out", out.out_path, "write the report to this path");
    app.add_option("--seed", seed, "base random seed")->envname("DOFLAB_SEED");
    app.add_option("--dump", dump_path, "write transcript/report JSON to this path");

    auto* region_cmd = app.add_subcommand("region", "DoF region of a CSIT configuration");
    region_cmd->fallthrough();
    region_cmd->add_option("csit", csit, "per-receiver CSIT states, e.g. PDD")->required();

    auto* table_cmd = app.add_subcommand(
        "table1", "sum-DoF of all ten 3-user CSIT classes, checked against golden values");
    table_cmd->fallthrough();

    auto* sim_cmd = app.add_subcommand("simulate", "run a constructive scheme");
    sim_cmd->fallthrough();
    std::string scheme;
    int kk = 0, slots = 4, audit_trials = 2;
    sim_cmd->add_option("scheme", scheme, "zf | pdd | kuser-d1")->required();
    sim_cmd->add_option("--csit", csit, "CSIT states (zf)");
    sim_cmd->add_option("--K", kk, "user count (kuser-d1)");
    sim_cmd->add_option("--slots", slots, "block length (zf)")->capture_default_str();
    sim_cmd->add_option("--audit-trials", audit_trials, "compliance replay trials")
        ->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "randomized rank-inequality suite");
    verify_cmd->fallthrough();
    std::vector<std::string> kind_names;
    verify_cmd->add_option("csit", csit, "per-receiver CSIT states")->required();
    verify_cmd->add_option("--trials", trials, "trials per generator kind")
        ->capture_default_str();
    verify_cmd->add_option("--kinds", kind_names,
                           "generator kinds (oblivious, delayed-mixing, zero-forcing-hybrid, "
                           "schemes)")
        ->delimiter(',');

    auto* bounds_cmd = app.add_subcommand("bounds", "sum-DoF bracket for |P| and |D|");
    bounds_cmd->fallthrough();
    int p = 0, d = 0;
    bounds_cmd->add_option("--P", p, "number of instantaneous-CSIT receivers")->required();
    bounds_cmd->add_option("--D", d, "number of delayed-CSIT receivers")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*region_cmd) return cmd_region(csit, out);
        if (*table_cmd) return cmd_table1(out);
        if (*sim_cmd)
            return cmd_simulate(scheme, csit, kk, slots, seed, audit_trials, dump_path, out);
        if (*verify_cmd) return cmd_verify(csit, trials, seed, kind_names, dump_path, out);
        if (*bounds_cmd) return cmd_bounds(p, d, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    }
    return kExitUsage;
}
