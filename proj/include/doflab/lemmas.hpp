#pragma once

#include <doflab/linalg.hpp>
#include <doflab/rng.hpp>
#include <doflab/schemes.hpp>
#include <doflab/strategy.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace doflab {

// One exact inequality evaluation: lhs <= rhs with both sides rational.
struct CheckResult {
    std::string lemma_id;
    std::string parameters;
    Rational lhs;
    Rational rhs;
    bool pass = false;
    std::uint64_t seed = 0;
    std::string strategy_tag;

    Rational slack() const { return rhs - lhs; }
};

namespace detail {

inline CheckResult make_result(const Transcript& tr, std::string id, std::string params,
                               Rational lhs, Rational rhs) {
    CheckResult r;
    r.lemma_id = std::move(id);
    r.parameters = std::move(params);
    r.lhs = std::move(lhs);
    r.rhs = std::move(rhs);
    r.pass = (r.lhs <= r.rhs);
    r.seed = tr.realization().seed();
    r.strategy_tag = tr.strategy().generator_tag;
    return r;
}

inline std::string set_str(const std::vector<int>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i] + 1);
    }
    return out + "}";
}

inline std::vector<int> without(const std::vector<int>& s, int x) {
    std::vector<int> out;
    for (int i : s)
        if (i != x) out.push_back(i);
    return out;
}

inline void require_member(const std::vector<int>& s, int x, const char* what) {
    if (std::find(s.begin(), s.end(), x) == s.end())
        throw std::invalid_argument(std::string("hypothesis violated: ") + what);
}

inline void require_absent(const std::vector<int>& s, int x, const char* what) {
    if (std::find(s.begin(), s.end(), x) != s.end())
        throw std::invalid_argument(std::string("hypothesis violated: ") + what);
}

}  // namespace detail

// Interference at a delayed-CSIT receiver j dominates the average of its
// constituents: with A = rank at l over S, B = rank at l over S minus l,
// C = rank at j over S minus l, the bound reads (A - B + C) / 2 <= rank at
// j over S. Requires I_j = D; no assumption on any other receiver.
inline CheckResult check_interference_decomposition(const Transcript& tr,
                                                    const std::vector<int>& s,
                                                    int ell, int j) {
    const CsitConfig& config = tr.strategy().config;
    if (config.state(j) != CsitState::D)
        throw std::invalid_argument(
            "hypothesis violated: interference decomposition needs receiver " +
            std::to_string(j + 1) + " in state D");
    detail::require_member(s, ell, "l must belong to S");
    detail::require_absent(s, j, "j must lie outside S");
    const auto s_minus = detail::without(s, ell);
    const Rational lhs =
        (Rational(static_cast<long>(tr.received_rank(ell, s))) -
         Rational(static_cast<long>(tr.received_rank(ell, s_minus))) +
         Rational(static_cast<long>(tr.received_rank(j, s_minus)))) /
        2;
    const Rational rhs(static_cast<long>(tr.received_rank(j, s)));
    return detail::make_result(tr, "idb",
                               "S=" + detail::set_str(s) + " l=" + std::to_string(ell + 1) +
                                   " j=" + std::to_string(j + 1),
                               lhs, rhs);
}

// Rank-ratio bound: stacking one more receiver onto j delayed-CSIT receivers
// grows the joint received rank by at most the factor (j+1)/j.
inline CheckResult check_rank_ratio(const Transcript& tr, const std::vector<int>& s,
                                    const std::vector<int>& seq) {
    if (seq.size() < 2)
        throw std::invalid_argument("rank ratio: sequence needs at least two receivers");
    {
        std::vector<int> sorted = seq;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("rank ratio: receivers must be distinct");
    }
    const CsitConfig& config = tr.strategy().config;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (config.state(seq[i]) != CsitState::D)
            throw std::invalid_argument(
                "hypothesis violated: rank ratio needs the first receivers in state D");
    Matrix head(0, 0);
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        head = vstack(head, tr.received(seq[i], s));
    const Matrix full = vstack(head, tr.received(seq.back(), s));
    const long j = static_cast<long>(seq.size()) - 1;
    const Rational lhs = make_rational(static_cast<long>(rank_of(full)), j + 1);
    const Rational rhs = make_rational(static_cast<long>(rank_of(head)), j);
    return detail::make_result(tr, "rri",
                               "S=" + detail::set_str(s) + " seq=" + detail::set_str(seq),
                               lhs, rhs);
}

// Least alignment: a receiver the transmitter knows nothing about captures at
// least as many signal dimensions as any other receiver, for the same S.
inline CheckResult check_least_alignment(const Transcript& tr, const std::vector<int>& s,
                                         int j, int ell) {
    const CsitConfig& config = tr.strategy().config;
    if (config.state(j) != CsitState::N)
        throw std::invalid_argument("hypothesis violated: least alignment needs receiver " +
                                    std::to_string(j + 1) + " in state N");
    const Rational lhs(static_cast<long>(tr.received_rank(ell, s)));
    const Rational rhs(static_cast<long>(tr.received_rank(j, s)));
    return detail::make_result(tr, "lal",
                               "S=" + detail::set_str(s) + " j=" + std::to_string(j + 1) +
                                   " l=" + std::to_string(ell + 1),
                               lhs, rhs);
}

// Slots where receiver l's received dimension over S grows (T1), and the
// subset of those already recoverable from receiver j's past (T2).
struct TSetResult {
    std::vector<int> t1;
    std::vector<int> t2;
};

inline TSetResult compute_t_sets(const Transcript& tr, const std::vector<int>& s,
                                 int ell, int j) {
    const Matrix& recv_l = tr.received(ell, s);
    const Matrix& recv_j = tr.received(j, s);
    TSetResult out;
    std::size_t prev_rank = 0;
    for (int t = 1; t <= tr.n(); ++t) {
        const std::size_t r = rank_of(recv_l.top_rows(t));
        if (r == prev_rank + 1) {
            out.t1.push_back(t);
            const Matrix past_j = recv_j.top_rows(t - 1);
            if (rank_of(vstack(past_j, recv_l.row(t - 1))) == rank_of(past_j))
                out.t2.push_back(t);
        }
        prev_rank = r;
    }
    return out;
}

// The two halves whose sum re-derives the interference decomposition bound:
//  part 1: rank_l(S) - |T2| <= rank_j(S)
//  part 2: |T2| - rank_l(S minus l) <= rank_j(S) - rank_j(S minus l)
// The composition identity is asserted exactly.
inline std::pair<CheckResult, CheckResult> check_idb_sublemmas(const Transcript& tr,
                                                               const std::vector<int>& s,
                                                               int ell, int j) {
    const CsitConfig& config = tr.strategy().config;
    if (config.state(j) != CsitState::D)
        throw std::invalid_argument(
            "hypothesis violated: the bound halves need receiver " + std::to_string(j + 1) +
            " in state D");
    detail::require_member(s, ell, "l must belong to S");
    detail::require_absent(s, j, "j must lie outside S");
    const TSetResult tsets = compute_t_sets(tr, s, ell, j);
    const auto s_minus = detail::without(s, ell);
    const long t2 = static_cast<long>(tsets.t2.size());
    const std::string params = "S=" + detail::set_str(s) + " l=" + std::to_string(ell + 1) +
                               " j=" + std::to_string(j + 1);

    const Rational a(static_cast<long>(tr.received_rank(ell, s)));
    const Rational b(static_cast<long>(tr.received_rank(ell, s_minus)));
    const Rational c(static_cast<long>(tr.received_rank(j, s_minus)));
    const Rational d(static_cast<long>(tr.received_rank(j, s)));

    CheckResult part1 = detail::make_result(tr, "idb-part1", params, a - t2, d);
    CheckResult part2 = detail::make_result(tr, "idb-part2", params, Rational(t2) - b, d - c);

    // summed halves must equal twice the one-shot bound
    const CheckResult whole = check_interference_decomposition(tr, s, ell, j);
    if ((part1.lhs + part2.lhs) - (part1.rhs + part2.rhs) != 2 * (whole.lhs - whole.rhs))
        throw std::logic_error("idb sublemmas do not compose to the full bound");
    return {std::move(part1), std::move(part2)};
}

// Slots where receiver j's received rank over S stalls although the slot's
// transmitted rows are not yet contained in j's past row space. For a
// delayed- or no-CSIT receiver this event has probability zero; a nonempty
// result on generic channels indicates a CSIT violation.
inline std::vector<int> check_dcsit_event(const Transcript& tr, const std::vector<int>& s,
                                          int j) {
    const CsitConfig& config = tr.strategy().config;
    if (config.state(j) == CsitState::P)
        throw std::invalid_argument(
            "hypothesis violated: the stalled-rank event needs receiver " +
            std::to_string(j + 1) + " in state D or N");
    const Matrix& recv_j = tr.received(j, s);
    std::vector<int> occurrences;
    std::size_t prev_rank = 0;
    for (int t = 1; t <= tr.n(); ++t) {
        const std::size_t r = rank_of(recv_j.top_rows(t));
        const bool rank_stalled = (r == prev_rank);
        if (rank_stalled) {
            const Matrix block = tr.slot_signal_block(s, t);  // m x sum(m_i)
            const Matrix past = recv_j.top_rows(t - 1);
            const bool contained = (rank_of(vstack(block, past)) == rank_of(past));
            if (!contained) occurrences.push_back(t);
        }
        prev_rank = r;
    }
    return occurrences;
}

namespace detail {

// canonical receiver order: P receivers, then D, then N
inline std::vector<int> pdn_order(const CsitConfig& config) {
    std::vector<int> order = config.instantaneous();
    for (int j : config.delayed()) order.push_back(j);
    for (int j : config.none()) order.push_back(j);
    return order;
}

}  // namespace detail

// Geometric-series bound on the interference accumulated at the last P/D
// receiver (in P-first order) by all earlier ones. Valid on decodable
// transcripts whose last P/D receiver supplies delayed CSIT.
inline CheckResult check_claim_induction(const Transcript& tr) {
    const CsitConfig& config = tr.strategy().config;
    const auto order = detail::pdn_order(config);
    const int pd = static_cast<int>(config.instantaneous().size() + config.delayed().size());
    if (pd < 1) throw std::invalid_argument("induction bound: needs a P or D receiver");
    const int q = order[pd - 1];
    if (config.state(q) != CsitState::D)
        throw std::invalid_argument(
            "hypothesis violated: induction bound needs the last P/D receiver in state D");
    if (!all_achieved(check_decodability(tr)))
        throw std::invalid_argument("claim requires achieved m_j (decodable transcript)");
    Rational lhs(0);
    std::vector<int> head;
    for (int idx = 1; idx <= pd - 1; ++idx) {
        lhs += Rational(tr.strategy().symbol_counts[order[idx - 1]]) /
               pow2(static_cast<unsigned>(idx));
        head.push_back(order[idx - 1]);
    }
    const Rational rhs(static_cast<long>(tr.received_rank(q, head)));
    return detail::make_result(tr, "induction-bound", "order=" + detail::set_str(order), lhs,
                               rhs);
}

// Stacked-rank ratio between all receivers and the delayed set, applied to
// the instantaneous receivers' signals.
inline CheckResult check_claim_mimo_variant(const Transcript& tr) {
    const CsitConfig& config = tr.strategy().config;
    const auto d_set = config.delayed();
    if (d_set.empty())
        throw std::invalid_argument("hypothesis violated: stacked ratio needs |D| >= 1");
    const auto p_set = config.instantaneous();
    Matrix all_stack(0, 0), d_stack(0, 0);
    for (int j = 0; j < tr.k(); ++j) all_stack = vstack(all_stack, tr.received(j, p_set));
    for (int j : d_set) d_stack = vstack(d_stack, tr.received(j, p_set));
    const Rational lhs = make_rational(static_cast<long>(rank_of(all_stack)), tr.k());
    const Rational rhs =
        make_rational(static_cast<long>(rank_of(d_stack)), static_cast<long>(d_set.size()));
    return detail::make_result(tr, "mimo-stack-ratio", "P=" + detail::set_str(p_set), lhs, rhs);
}

// Finite-block converse chains, checked on decodable transcripts of the
// matching class: they certify that the achieved symbol counts respect the
// slot budget that the region bounds encode.
inline std::vector<CheckResult> check_converse_chain(const Transcript& tr) {
    const CsitConfig& config = tr.strategy().config;
    const auto& m = tr.strategy().symbol_counts;
    const Rational n(tr.n());
    std::vector<CheckResult> out;
    if (!all_achieved(check_decodability(tr)))
        throw std::invalid_argument("converse chain requires a decodable transcript");
    if (config.str() == "PDD") {
        const Rational interference(static_cast<long>(tr.received_rank(2, {0, 1})));
        out.push_back(detail::make_result(tr, "pdd-chain-interference", "j=3 S={1,2}",
                                          Rational(m[0]) + Rational(m[1]) / 2,
                                          2 * interference));
        out.push_back(detail::make_result(tr, "pdd-chain-budget", "",
                                          Rational(m[0]) + Rational(m[1]) / 2 + 2 * Rational(m[2]),
                                          2 * n));
    }
    if (config.str() == "PDN") {
        out.push_back(detail::make_result(tr, "pdn-chain-weighted", "",
                                          Rational(m[0]) / 2 + Rational(m[1]) + Rational(m[2]),
                                          n));
        out.push_back(detail::make_result(tr, "pdn-chain-pair", "",
                                          Rational(m[0]) + Rational(m[2]), n));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Randomized suite
// ---------------------------------------------------------------------------

enum class SuiteKind { Oblivious, DelayedMixing, ZeroForcingHybrid, Schemes };

inline std::string to_string(SuiteKind kind) {
    switch (kind) {
        case SuiteKind::Oblivious: return "oblivious";
        case SuiteKind::DelayedMixing: return "delayed-mixing";
        case SuiteKind::ZeroForcingHybrid: return "zero-forcing-hybrid";
        case SuiteKind::Schemes: return "schemes";
    }
    return "?";
}

inline std::vector<SuiteKind> all_suite_kinds() {
    return {SuiteKind::Oblivious, SuiteKind::DelayedMixing, SuiteKind::ZeroForcingHybrid,
            SuiteKind::Schemes};
}

struct LemmaAggregate {
    std::string lemma;
    std::string kind;
    int trials = 0;
    int passes = 0;
    std::optional<Rational> min_slack;
    std::vector<std::string> violations;  // reproduction strings
};

struct SuiteReport {
    std::string config;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<LemmaAggregate> entries;

    bool all_passed() const {
        for (const auto& e : entries)
            if (e.passes != e.trials) return false;
        return true;
    }
    int total_violations() const {
        int v = 0;
        for (const auto& e : entries) v += static_cast<int>(e.violations.size());
        return v;
    }
};

namespace detail {

struct TrialOutcome {
    struct LemmaTrial {
        bool all_passed = true;
        std::optional<Rational> min_slack;
    };
    std::map<std::string, LemmaTrial> by_lemma;
    std::vector<std::string> violations;

    void absorb(const CheckResult& r) {
        LemmaTrial& slot = by_lemma[r.lemma_id];
        if (!slot.min_slack || r.slack() < *slot.min_slack) slot.min_slack = r.slack();
        if (!r.pass) {
            slot.all_passed = false;
            violations.push_back(r.lemma_id + " " + r.parameters + " tag=" + r.strategy_tag +
                                 " seed=" + std::to_string(r.seed) + " lhs=" +
                                 to_fraction_string(r.lhs) + " rhs=" + to_fraction_string(r.rhs));
        }
    }

    void mark(const std::string& lemma, bool pass, std::string detail_str) {
        LemmaTrial& slot = by_lemma[lemma];
        if (!pass) {
            slot.all_passed = false;
            violations.push_back(lemma + " " + std::move(detail_str));
        }
    }
};

inline std::vector<std::vector<int>> nonempty_subsets(const std::vector<int>& universe) {
    std::vector<std::vector<int>> out;
    const std::size_t n = universe.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(universe[i]);
        out.push_back(std::move(s));
    }
    return out;
}

// Instance sampling: all subsets for three users; singletons, pairs and the
// full set beyond that (the factorial instance space is redundant at desk
// scale).
inline std::vector<std::vector<int>> subset_sample(int k) {
    std::vector<int> universe(k);
    for (int i = 0; i < k; ++i) universe[i] = i;
    if (k <= 3) return nonempty_subsets(universe);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < k; ++i) out.push_back({i});
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) out.push_back({i, j});
    out.push_back(universe);
    return out;
}

inline void run_trial_checks(const Transcript& tr, bool decodable, Rng& aux,
                             TrialOutcome& outcome) {
    const CsitConfig& config = tr.strategy().config;
    const int k = tr.k();
    const auto d_set = config.delayed();
    const auto n_set = config.none();
    const auto subsets = subset_sample(k);

    // interference decomposition + its two halves
    for (int j : d_set) {
        for (const auto& s : subsets) {
            if (std::find(s.begin(), s.end(), j) != s.end()) continue;
            for (int ell : s) {
                outcome.absorb(check_interference_decomposition(tr, s, ell, j));
                auto [p1, p2] = check_idb_sublemmas(tr, s, ell, j);
                outcome.absorb(p1);
                outcome.absorb(p2);
            }
        }
    }

    // rank ratio over delayed prefixes
    for (const auto& s : subsets) {
        for (std::size_t len = 1; len <= d_set.size(); ++len) {
            std::vector<int> prefix(d_set.begin(), d_set.begin() + len);
            std::sort(prefix.begin(), prefix.end());
            do {
                for (int last = 0; last < k; ++last) {
                    if (std::find(prefix.begin(), prefix.end(), last) != prefix.end()) continue;
                    std::vector<int> seq = prefix;
                    seq.push_back(last);
                    outcome.absorb(check_rank_ratio(tr, s, seq));
                }
            } while (std::next_permutation(prefix.begin(), prefix.end()));
        }
    }

    // least alignment
    for (int j : n_set)
        for (const auto& s : subsets)
            for (int ell = 0; ell < k; ++ell) {
                if (ell == j) continue;
                outcome.absorb(check_least_alignment(tr, s, j, ell));
            }

    // stalled-rank event must never occur for compliant strategies
    for (int j = 0; j < k; ++j) {
        if (config.state(j) == CsitState::P) continue;
        for (const auto& s : subsets) {
            const auto occurrences = check_dcsit_event(tr, s, j);
            std::ostringstream os;
            os << "j=" << (j + 1) << " S=" << set_str(s) << " slots=" << occurrences.size()
               << " tag=" << tr.strategy().generator_tag << " seed=" << tr.realization().seed();
            outcome.mark("dcsit-event", occurrences.empty(), os.str());
        }
    }

    // rank sub-modularity on a received matrix, random column pair
    {
        const int j = static_cast<int>(aux.uniform_int(0, k - 1));
        const Matrix& recv = tr.received(j, all_receivers(k));
        if (recv.cols() > 0) {
            std::vector<std::size_t> s1, s2;
            for (std::size_t c = 0; c < recv.cols(); ++c) {
                if (aux.uniform_int(0, 1)) s1.push_back(c);
                if (aux.uniform_int(0, 1)) s2.push_back(c);
            }
            std::vector<std::size_t> inter, uni;
            std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(),
                                  std::back_inserter(inter));
            std::set_union(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(uni));
            const auto lhs = rank_of(recv.columns(s1)) + rank_of(recv.columns(s2));
            const auto rhs = rank_of(recv.columns(inter)) + rank_of(recv.columns(uni));
            std::ostringstream os;
            os << "j=" << (j + 1) << " |S1|=" << s1.size() << " |S2|=" << s2.size()
               << " tag=" << tr.strategy().generator_tag << " seed=" << tr.realization().seed();
            outcome.mark("rank-submodularity", lhs >= rhs, os.str());
        }
    }

    // zero-pattern dimension identity on a received matrix
    {
        const int j = static_cast<int>(aux.uniform_int(0, k - 1));
        const Matrix& recv = tr.received(j, all_receivers(k));
        if (recv.cols() > 1) {
            const std::size_t split = static_cast<std::size_t>(
                aux.uniform_int(1, static_cast<long>(recv.cols()) - 1));
            std::vector<std::size_t> tail_cols;
            for (std::size_t c = split; c < recv.cols(); ++c) tail_cols.push_back(c);
            const std::size_t direct = coordinate_intersection_dim(recv, tail_cols);
            const std::size_t via_ranks = rank_of(recv) - rank_of(recv.columns(tail_cols));
            std::ostringstream os;
            os << "j=" << (j + 1) << " split=" << split << " tag="
               << tr.strategy().generator_tag << " seed=" << tr.realization().seed();
            outcome.mark("zero-pattern-dim", direct == via_ranks, os.str());
        }
    }

    // claims that need achieved symbol counts
    if (decodable) {
        const auto order = pdn_order(config);
        const int pd = static_cast<int>(config.instantaneous().size() + config.delayed().size());
        if (pd >= 1 && config.state(order[pd - 1]) == CsitState::D)
            outcome.absorb(check_claim_induction(tr));
        for (const auto& r : check_converse_chain(tr)) outcome.absorb(r);
    }
    if (!d_set.empty()) outcome.absorb(check_claim_mimo_variant(tr));
}

}  // namespace detail

// Run `trials` independent transcripts per generator kind and evaluate every
// applicable inequality on each. Hypothesis-empty lemmas are skipped, not
// reported as vacuous passes. Per-trial seeds are seed + trial index.
inline SuiteReport run_suite(const CsitConfig& config, const std::vector<SuiteKind>& kinds,
                             int trials, std::uint64_t seed) {
    const int k = config.k();
    const int n = 4;
    const int m = k;
    SuiteReport report;
    report.config = config.str();
    report.trials = trials;
    report.seed = seed;

    for (SuiteKind kind : kinds) {
        std::map<std::string, LemmaAggregate> agg;
        bool kind_applicable = true;
        for (int trial = 0; trial < trials && kind_applicable; ++trial) {
            const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(trial);
            Rng aux(Rng::derive(trial_seed, 0xA0));
            std::vector<std::pair<Transcript, bool>> transcripts;  // (transcript, decodable?)

            switch (kind) {
                case SuiteKind::Oblivious:
                case SuiteKind::DelayedMixing:
                case SuiteKind::ZeroForcingHybrid: {
                    const GeneratorKind gk =
                        kind == SuiteKind::Oblivious ? GeneratorKind::Oblivious
                        : kind == SuiteKind::DelayedMixing ? GeneratorKind::DelayedMixing
                                                           : GeneratorKind::ZeroForcingHybrid;
                    ChannelRealization real = sample_channel(k, m, n, trial_seed);
                    LinearStrategy strat = random_strategy(config, gk, real,
                                                           std::vector<int>(k, 2), trial_seed);
                    transcripts.emplace_back(assemble(std::move(strat), std::move(real)), false);
                    break;
                }
                case SuiteKind::Schemes: {
                    const auto p_set = config.instantaneous();
                    const auto d_set = config.delayed();
                    if (!p_set.empty()) {
                        ChannelRealization real = sample_channel(k, m, n, trial_seed);
                        transcripts.emplace_back(
                            assemble(zero_forcing_scheme(config, real, n), real), true);
                    }
                    if (config.str() == "PDD") {
                        ChannelRealization real = sample_channel(3, 3, 4, trial_seed);
                        transcripts.emplace_back(assemble(pdd_scheme(real), real), true);
                    }
                    // one delayed receiver last, everyone else instantaneous
                    if (d_set.size() == 1 && d_set[0] == k - 1 &&
                        static_cast<int>(p_set.size()) == k - 1 && k >= 2 && k <= 5) {
                        ChannelRealization real =
                            sample_channel(k, k, 1 << (k - 1), trial_seed);
                        transcripts.emplace_back(assemble(kuser_d1_scheme(k, real), real), true);
                    }
                    if (transcripts.empty()) kind_applicable = false;
                    break;
                }
            }
            if (!kind_applicable) break;

            detail::TrialOutcome outcome;
            for (auto& [tr, claimed_decodable] : transcripts) {
                const bool decodable = claimed_decodable && all_achieved(check_decodability(tr));
                if (claimed_decodable && !decodable) {
                    outcome.mark("scheme-decodability", false,
                                 tr.strategy().generator_tag +
                                     " seed=" + std::to_string(tr.realization().seed()));
                    continue;
                }
                detail::run_trial_checks(tr, decodable, aux, outcome);
            }

            for (const auto& [lemma, result] : outcome.by_lemma) {
                LemmaAggregate& entry = agg[lemma];
                entry.lemma = lemma;
                entry.kind = to_string(kind);
                entry.trials += 1;
                entry.passes += result.all_passed ? 1 : 0;
                if (result.min_slack &&
                    (!entry.min_slack || *result.min_slack < *entry.min_slack))
                    entry.min_slack = result.min_slack;
            }
            for (const std::string& v : outcome.violations) {
                // attach to the right lemma entry
                const std::string lemma = v.substr(0, v.find(' '));
                agg[lemma].violations.push_back(v);
            }
        }
        for (auto& [_, entry] : agg) report.entries.push_back(std::move(entry));
    }
    std::sort(report.entries.begin(), report.entries.end(),
              [](const LemmaAggregate& a, const LemmaAggregate& b) {
                  return std::tie(a.lemma, a.kind) < std::tie(b.lemma, b.kind);
              });
    return report;
}

}  // namespace doflab
