#pragma once

#include <doflab/channel.hpp>
#include <doflab/strategy.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace doflab {

// Name, CSIT configuration and exact per-receiver targets of a constructive
// scheme over a finite block.
struct SchemeSpec {
    std::string name;
    CsitConfig config;
    int block_length = 0;
    std::vector<int> target_symbols;
    std::vector<Rational> target_dof;  // target_symbols / block_length, exact
};

inline SchemeSpec make_scheme_spec(std::string name, CsitConfig config, int n,
                                   std::vector<int> symbols) {
    if (n <= 0) throw std::invalid_argument("scheme spec: block length must be positive");
    SchemeSpec spec;
    spec.name = std::move(name);
    spec.config = std::move(config);
    spec.block_length = n;
    spec.target_symbols = std::move(symbols);
    for (int mj : spec.target_symbols)
        spec.target_dof.push_back(make_rational(mj, n));
    return spec;
}

// Exact DoF tuple m_j / n of a finite-block strategy.
inline std::vector<Rational> achieved_dof(const LinearStrategy& s) {
    if (s.n <= 0) throw std::invalid_argument("achieved_dof: block length must be positive");
    std::vector<Rational> d;
    d.reserve(s.symbol_counts.size());
    for (int mj : s.symbol_counts) d.push_back(make_rational(mj, s.n));
    return d;
}

inline std::vector<Rational> achieved_dof(const SchemeSpec& spec) {
    return spec.target_dof;
}

// ---------------------------------------------------------------------------
// Zero-forcing for the receivers supplying instantaneous CSIT: one fresh
// symbol per P receiver per slot, beamformed orthogonally to the other P
// receivers' current channels. Delivers m_j = n for j in P, 0 otherwise.
// ---------------------------------------------------------------------------
inline LinearStrategy zero_forcing_scheme(const CsitConfig& config,
                                          const ChannelRealization& real, int n) {
    if (config.k() != real.k())
        throw std::invalid_argument("zero_forcing_scheme: config/realization mismatch");
    if (n != real.n())
        throw std::invalid_argument("zero_forcing_scheme: block length mismatch");
    const auto p_set = config.instantaneous();
    if (p_set.empty())
        throw std::invalid_argument("zero_forcing_scheme: needs at least one P receiver");
    const int k = real.k(), m = real.m();
    std::vector<int> symbols(k, 0);
    for (int j : p_set) symbols[j] = n;
    LinearStrategy s = make_empty_strategy(config, m, n, symbols, "zero-forcing");
    for (int t = 1; t <= n; ++t) {
        CsitView view(config, real, t);
        for (int j : p_set) {
            Matrix others(0, m);
            for (int p : p_set)
                if (p != j) others = vstack(others, view.row(p, t));
            const Matrix comp = orthogonal_complement(others);
            // one symbol per slot, riding the first complement row
            for (int a = 0; a < m; ++a) s.precoder(j, t)(a, t - 1) = comp(0, a);
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// PDD over four slots: three symbols to the P receiver, two each to the two
// D receivers. Slot 1 sends the P receiver's symbols uncoded; slots 2 and 3
// retransmit (via delayed CSIT) what the D receivers overheard in slot 1,
// while zero-forcing two fresh symbols past the P receiver; slot 4 sends the
// sum of the two cross-useful combinations overheard in slots 2 and 3.
// ---------------------------------------------------------------------------
inline LinearStrategy pdd_scheme(const ChannelRealization& real) {
    if (real.k() != 3 || real.m() != 3 || real.n() != 4)
        throw std::invalid_argument("pdd_scheme: requires k=3, m=3, n=4");
    const CsitConfig config = CsitConfig::parse("PDD");
    LinearStrategy s = make_empty_strategy(config, 3, 4, {3, 2, 2}, "pdd-scheme");

    // t=1: uncoded symbols for receiver 1
    s.precoder(0, 1) = Matrix::identity(3);

    // t=2: reconstruct receiver 2's slot-1 reception, plus two fresh symbols
    // for receiver 2 through the complement of g_1(2)
    {
        CsitView view(config, real, 2);
        const Matrix a2 = view.row(1, 1) * s.precoder(0, 1);  // 1x3 over receiver-1 symbols
        Matrix v0(3, 3);
        for (int c = 0; c < 3; ++c) v0(0, c) = a2(0, c);
        s.precoder(0, 2) = v0;
        s.precoder(1, 2) = orthogonal_complement(view.row(0, 2)).transpose();
    }

    // t=3: same with receiver 3's slot-1 reception and fresh symbols for 3
    {
        CsitView view(config, real, 3);
        const Matrix a3 = view.row(2, 1) * s.precoder(0, 1);
        Matrix v0(3, 3);
        for (int c = 0; c < 3; ++c) v0(0, c) = a3(0, c);
        s.precoder(0, 3) = v0;
        s.precoder(2, 3) = orthogonal_complement(view.row(0, 3)).transpose();
    }

    // t=4: send the sum of receiver 3's slot-2 and receiver 2's slot-3
    // receptions (each useful to the other receiver) on the first antenna
    {
        CsitView view(config, real, 4);
        const Matrix l2_a = view.row(2, 2) * s.precoder(0, 2);
        const Matrix l2_b = view.row(2, 2) * s.precoder(1, 2);
        const Matrix l3_a = view.row(1, 3) * s.precoder(0, 3);
        const Matrix l3_c = view.row(1, 3) * s.precoder(2, 3);
        Matrix v0(3, 3), v1(3, 2), v2(3, 2);
        for (int c = 0; c < 3; ++c) v0(0, c) = l2_a(0, c) + l3_a(0, c);
        for (int c = 0; c < 2; ++c) v1(0, c) = l2_b(0, c);
        for (int c = 0; c < 2; ++c) v2(0, c) = l3_c(0, c);
        s.precoder(0, 4) = v0;
        s.precoder(1, 4) = v1;
        s.precoder(2, 4) = v2;
    }
    return s;
}

inline SchemeSpec pdd_scheme_spec() {
    return make_scheme_spec("pdd", CsitConfig::parse("PDD"), 4, {3, 2, 2});
}

// ---------------------------------------------------------------------------
// K-user scheme for one delayed receiver (states P...PD): 2^{K-1} slots,
// 2^{K-1} symbols to each P receiver and one to the D receiver. Phase i
// occupies one slot per i-subset of the P receivers (lexicographic order);
// in that slot the subset's receivers get retransmissions of combinations
// the D receiver overheard in the previous phase, and the others get two
// fresh zero-forced symbols each.
// ---------------------------------------------------------------------------
namespace detail {

inline std::vector<std::vector<int>> subsets_of_size(int universe, int size) {
    std::vector<std::vector<int>> out;
    std::vector<int> comb(size);
    for (int i = 0; i < size; ++i) comb[i] = i;
    if (size == 0) {
        out.push_back({});
        return out;
    }
    if (size > universe) return out;
    while (true) {
        out.push_back(comb);
        int i = size - 1;
        while (i >= 0 && comb[i] == universe - size + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
    }
    return out;
}

inline std::uint32_t set_mask(const std::vector<int>& s) {
    std::uint32_t m = 0;
    for (int i : s) m |= 1u << i;
    return m;
}

}  // namespace detail

inline SchemeSpec kuser_d1_scheme_spec(int K) {
    if (K < 2) throw std::invalid_argument("kuser_d1_scheme: requires K >= 2");
    std::string csit(K - 1, 'P');
    csit += 'D';
    const int n = 1 << (K - 1);
    std::vector<int> symbols(K, n);
    symbols[K - 1] = 1;
    return make_scheme_spec("kuser-d1", CsitConfig::parse(csit), n, symbols);
}

inline LinearStrategy kuser_d1_scheme(int K, const ChannelRealization& real) {
    if (K < 2) throw std::invalid_argument("kuser_d1_scheme: requires K >= 2");
    const int n = 1 << (K - 1);
    if (real.k() != K || real.m() != K || real.n() != n)
        throw std::invalid_argument("kuser_d1_scheme: requires k=K, m=K, n=2^{K-1}");
    const CsitConfig config = kuser_d1_scheme_spec(K).config;
    const int q = K - 1;       // the delayed receiver
    const int np = K - 1;      // number of P receivers
    const int mp = n;          // symbols per P receiver

    std::vector<int> symbols(K, mp);
    symbols[q] = 1;
    LinearStrategy s = make_empty_strategy(config, K, n, symbols, "kuser-d1:K=" + std::to_string(K));

    // slot schedule: phase i covers the i-subsets of the P receivers
    struct Slot {
        int t;
        int phase;
        std::vector<int> repetition;  // receivers whose past combinations repeat
        std::vector<int> fresh;       // receivers getting two new symbols
    };
    std::vector<Slot> slots;
    std::map<std::pair<int, std::uint32_t>, int> slot_by_set;  // (phase, repetition mask)
    for (int phase = 0; phase < K; ++phase) {
        for (const auto& rep : detail::subsets_of_size(np, phase)) {
            Slot sl;
            sl.t = static_cast<int>(slots.size()) + 1;
            sl.phase = phase;
            sl.repetition = rep;
            const std::uint32_t mask = detail::set_mask(rep);
            for (int r = 0; r < np; ++r)
                if (!(mask & (1u << r))) sl.fresh.push_back(r);
            slot_by_set[{phase, mask}] = sl.t;
            slots.push_back(sl);
        }
    }
    if (static_cast<int>(slots.size()) != n)
        throw std::logic_error("kuser_d1_scheme: phase durations do not cover the block");

    // fresh-symbol column allocation, two per fresh appearance
    std::vector<int> next_col(np, 0);
    std::map<std::pair<int, int>, int> fresh_base;  // (receiver, slot) -> first column
    for (const Slot& sl : slots)
        for (int r : sl.fresh) {
            fresh_base[{r, sl.t}] = next_col[r];
            next_col[r] += 2;
        }
    for (int r = 0; r < np; ++r)
        if (next_col[r] != mp)
            throw std::logic_error("kuser_d1_scheme: fresh-symbol accounting is off");

    // What the delayed receiver can isolate after each phase, expressed as a
    // row over all information symbols (blocks per receiver, then the single
    // delayed-receiver symbol). derived[t] is the combination distilled from
    // slot t; its support is the slot's fresh receivers plus the last symbol.
    const int total_cols = np * mp + 1;
    std::vector<int> offset(K + 1, 0);
    for (int j = 0; j < K; ++j) offset[j + 1] = offset[j] + symbols[j];
    std::map<int, Matrix> derived;
    std::map<std::pair<int, int>, Matrix> repetition_beam;  // (slot, receiver) -> K x 1

    auto symbol_row_of_slot = [&](const CsitView& view, int t_past) {
        // the delayed receiver's reception at a past slot, over all symbols
        Matrix row(1, total_cols);
        const Matrix& g = view.row(q, t_past);
        for (int j = 0; j < K; ++j) {
            const Matrix r = g * s.precoder(j, t_past);
            for (int c = 0; c < symbols[j]; ++c) row(0, offset[j] + c) = r(0, c);
        }
        return row;
    };

    int distilled_through_phase = -1;
    for (const Slot& sl : slots) {
        CsitView view(config, real, sl.t);

        // entering a new phase: distill the previous phase's slots
        if (sl.phase >= 1 && distilled_through_phase < sl.phase - 1) {
            distilled_through_phase = sl.phase - 1;
            for (const Slot& prev : slots) {
                if (prev.phase != sl.phase - 1) continue;
                Matrix d = symbol_row_of_slot(view, prev.t);
                for (int r : prev.repetition) {
                    std::vector<int> parent_set;
                    for (int x : prev.repetition)
                        if (x != r) parent_set.push_back(x);
                    const int parent = slot_by_set.at({prev.phase - 1, detail::set_mask(parent_set)});
                    const Matrix alpha = view.row(q, prev.t) * repetition_beam.at({prev.t, r});
                    d = d - alpha(0, 0) * derived.at(parent);
                }
                // support check: only the fresh receivers' symbols and the
                // delayed receiver's symbol may survive the elimination
                for (int j = 0; j < np; ++j) {
                    bool is_fresh = false;
                    for (int f : prev.fresh) is_fresh |= (f == j);
                    if (is_fresh) continue;
                    for (int c = 0; c < symbols[j]; ++c)
                        if (d(0, offset[j] + c) != 0)
                            throw std::runtime_error(
                                "kuser_d1_scheme: distilled combination has stray support "
                                "(non-generic channel); resample requested");
                }
                derived[prev.t] = d;
            }
        }

        // per-receiver complements at this slot
        std::vector<Matrix> comp(np);
        for (int r = 0; r < np; ++r) {
            Matrix others(0, K);
            for (int p = 0; p < np; ++p)
                if (p != r) others = vstack(others, view.row(p, sl.t));
            comp[r] = orthogonal_complement(others);  // 2 x K
        }

        for (int r : sl.fresh) {
            const int base = fresh_base.at({r, sl.t});
            for (int a = 0; a < K; ++a) {
                s.precoder(r, sl.t)(a, base) = comp[r](0, a);
                s.precoder(r, sl.t)(a, base + 1) = comp[r](1, a);
            }
        }
        for (int r : sl.repetition) {
            std::vector<int> parent_set;
            for (int x : sl.repetition)
                if (x != r) parent_set.push_back(x);
            const int parent = slot_by_set.at({sl.phase - 1, detail::set_mask(parent_set)});
            // combination the delayed receiver already pinned down for r
            Matrix w(1, mp);
            bool nonzero = false;
            for (int c = 0; c < mp; ++c) {
                w(0, c) = derived.at(parent)(0, offset[r] + c);
                nonzero |= (w(0, c) != 0);
            }
            if (!nonzero)
                throw std::runtime_error(
                    "kuser_d1_scheme: repetition combination vanished "
                    "(non-generic channel); resample requested");
            Matrix beam(K, 1);
            for (int a = 0; a < K; ++a) beam(a, 0) = comp[r](0, a);
            repetition_beam[{sl.t, r}] = beam;
            s.precoder(r, sl.t) = s.precoder(r, sl.t) + beam * w;
        }
        if (sl.phase == 0) {
            Matrix all_p(0, K);
            for (int p = 0; p < np; ++p) all_p = vstack(all_p, view.row(p, sl.t));
            s.precoder(q, sl.t) = orthogonal_complement(all_p).transpose();  // K x 1
        }
    }
    return s;
}

}  // namespace doflab
