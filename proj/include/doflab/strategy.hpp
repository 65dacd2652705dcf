#pragma once

#include <doflab/channel.hpp>
#include <doflab/linalg.hpp>
#include <doflab/matrix.hpp>
#include <doflab/rng.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace doflab {

// Per-slot precoders V_j(t) of shape m x m_j, one block per receiver and
// slot, plus the symbol counts m_j the strategy claims to deliver. Carries
// the CSIT configuration it was built for, which the inequality checkers
// use to enforce their hypotheses.
struct LinearStrategy {
    CsitConfig config;
    int k = 0;
    int m = 0;
    int n = 0;
    std::vector<int> symbol_counts;            // m_j, one per receiver
    std::vector<std::vector<Matrix>> precoders;  // [receiver][t-1] -> m x m_j
    std::string generator_tag;

    const Matrix& precoder(int j, int t) const { return precoders.at(j).at(t - 1); }
    Matrix& precoder(int j, int t) { return precoders.at(j).at(t - 1); }

    void validate() const {
        if (config.k() != k)
            throw std::invalid_argument("strategy: config/user count mismatch");
        if (static_cast<int>(symbol_counts.size()) != k ||
            static_cast<int>(precoders.size()) != k)
            throw std::invalid_argument("strategy: per-receiver containers must have length k");
        for (int j = 0; j < k; ++j) {
            if (symbol_counts[j] < 0)
                throw std::invalid_argument("strategy: negative symbol count");
            if (static_cast<int>(precoders[j].size()) != n)
                throw std::invalid_argument("strategy: missing per-slot precoders");
            for (int t = 1; t <= n; ++t) {
                const Matrix& v = precoder(j, t);
                if (static_cast<int>(v.rows()) != m ||
                    static_cast<int>(v.cols()) != symbol_counts[j])
                    throw std::invalid_argument("strategy: precoder shape mismatch at receiver " +
                                                std::to_string(j + 1) + ", slot " +
                                                std::to_string(t));
            }
        }
    }

    bool operator==(const LinearStrategy& o) const {
        return k == o.k && m == o.m && n == o.n && symbol_counts == o.symbol_counts &&
               precoders == o.precoders;
    }
};

inline LinearStrategy make_empty_strategy(const CsitConfig& config, int m, int n,
                                          const std::vector<int>& symbol_counts,
                                          std::string tag) {
    LinearStrategy s;
    s.config = config;
    s.k = config.k();
    s.m = m;
    s.n = n;
    s.symbol_counts = symbol_counts;
    s.generator_tag = std::move(tag);
    s.precoders.resize(s.k);
    for (int j = 0; j < s.k; ++j)
        s.precoders[j].assign(n, Matrix(m, symbol_counts[j]));
    return s;
}

inline std::vector<int> all_receivers(int k) {
    std::vector<int> s(k);
    std::iota(s.begin(), s.end(), 0);
    return s;
}

inline std::vector<int> all_but(int k, int j) {
    std::vector<int> s;
    for (int i = 0; i < k; ++i)
        if (i != j) s.push_back(i);
    return s;
}

// A strategy together with the channel it was run over. Immutable once
// assembled; received-signal products are memoized behind a lock so
// concurrent readers are safe.
class Transcript {
public:
    Transcript(LinearStrategy strategy, ChannelRealization realization)
        : strategy_(std::move(strategy)), realization_(std::move(realization)) {
        if (strategy_.k != realization_.k() || strategy_.m != realization_.m() ||
            strategy_.n != realization_.n())
            throw std::invalid_argument("transcript: strategy/channel dimension mismatch");
        strategy_.validate();
    }

    const LinearStrategy& strategy() const { return strategy_; }
    const ChannelRealization& realization() const { return realization_; }
    int k() const { return strategy_.k; }
    int m() const { return strategy_.m; }
    int n() const { return strategy_.n; }

    // Stacked precoder V_j^n of shape (n m) x m_j; slot-t rows in block t.
    Matrix stacked_precoder(int j) const {
        const int m = strategy_.m, n = strategy_.n;
        Matrix v(static_cast<std::size_t>(n) * m, strategy_.symbol_counts.at(j));
        for (int t = 1; t <= n; ++t) {
            const Matrix& block = strategy_.precoder(j, t);
            for (int r = 0; r < m; ++r)
                for (std::size_t c = 0; c < block.cols(); ++c)
                    v(static_cast<std::size_t>(t - 1) * m + r, c) = block(r, c);
        }
        return v;
    }

    // G_j^n [ union of V_i^n, i in S ]: the n x (sum m_i) received matrix of
    // receiver j restricted to the signals of S. Row t depends only on slot-t
    // quantities, so leading-row submatrices give the per-slot prefixes.
    const Matrix& received(int j, const std::vector<int>& s) const {
        const auto key = std::make_pair(j, receiver_mask(s));
        std::scoped_lock lock(cache_->mutex);
        auto it = cache_->matrices.find(key);
        if (it != cache_->matrices.end()) return it->second;
        return cache_->matrices.emplace(key, compute_received(j, key.second)).first->second;
    }

    // rank of received(j, s), memoized alongside the matrices
    std::size_t received_rank(int j, const std::vector<int>& s) const {
        const Matrix& r = received(j, s);
        const auto key = std::make_pair(j, receiver_mask(s));
        {
            std::scoped_lock lock(cache_->mutex);
            auto it = cache_->ranks.find(key);
            if (it != cache_->ranks.end()) return it->second;
        }
        const std::size_t rank = rank_of(r);
        std::scoped_lock lock(cache_->mutex);
        return cache_->ranks.emplace(key, rank).first->second;
    }

    Matrix slot_signal_block(const std::vector<int>& s, int t) const {
        Matrix block;
        for (int i : s) block = hstack(block, strategy_.precoder(i, t));
        if (block.rows() == 0 && block.cols() == 0)
            block = Matrix(strategy_.m, 0);
        return block;
    }

private:
    std::uint32_t receiver_mask(const std::vector<int>& s) const {
        std::uint32_t mask = 0;
        for (int i : s) {
            if (i < 0 || i >= strategy_.k)
                throw std::invalid_argument("received: receiver index out of range");
            mask |= 1u << i;
        }
        return mask;
    }

    Matrix compute_received(int j, std::uint32_t mask) const {
        std::vector<int> s;
        for (int i = 0; i < strategy_.k; ++i)
            if (mask & (1u << i)) s.push_back(i);
        int total = 0;
        for (int i : s) total += strategy_.symbol_counts[i];
        Matrix out(strategy_.n, total);
        for (int t = 1; t <= strategy_.n; ++t) {
            int col = 0;
            for (int i : s) {
                const Matrix& v = strategy_.precoder(i, t);
                const Matrix& g = realization_.row(j, t);
                for (std::size_t c = 0; c < v.cols(); ++c) {
                    Rational acc(0);
                    for (int a = 0; a < strategy_.m; ++a)
                        if (g(0, a) != 0 && v(a, c) != 0) acc += g(0, a) * v(a, c);
                    out(t - 1, col + static_cast<int>(c)) = acc;
                }
                col += static_cast<int>(v.cols());
            }
        }
        return out;
    }

    // memo lives behind a pointer so transcripts stay movable; the lock keeps
    // concurrent readers safe
    struct Cache {
        std::mutex mutex;
        std::map<std::pair<int, std::uint32_t>, Matrix> matrices;
        std::map<std::pair<int, std::uint32_t>, std::size_t> ranks;
    };

    LinearStrategy strategy_;
    ChannelRealization realization_;
    mutable std::unique_ptr<Cache> cache_ = std::make_unique<Cache>();
};

inline Transcript assemble(LinearStrategy strategy, ChannelRealization realization) {
    return Transcript(std::move(strategy), std::move(realization));
}

// Exact decodability record for one receiver: both rank identities of the
// interference-free decoding condition, evaluated without tolerance.
struct ReceiverDecodability {
    bool achieved = false;
    int symbols = 0;            // claimed m_j
    std::size_t lhs_rank = 0;           // rank G_j [ all V ]
    std::size_t interference_rank = 0;  // rank G_j [ V_i, i != j ]
    std::size_t own_rank = 0;           // rank G_j V_j
};

inline std::vector<ReceiverDecodability> check_decodability(const Transcript& tr) {
    std::vector<ReceiverDecodability> out(tr.k());
    for (int j = 0; j < tr.k(); ++j) {
        ReceiverDecodability& r = out[j];
        r.symbols = tr.strategy().symbol_counts[j];
        r.lhs_rank = tr.received_rank(j, all_receivers(tr.k()));
        r.interference_rank = tr.received_rank(j, all_but(tr.k(), j));
        r.own_rank = tr.received_rank(j, {j});
        r.achieved = (r.lhs_rank - r.interference_rank == static_cast<std::size_t>(r.symbols)) &&
                     (r.own_rank == static_cast<std::size_t>(r.symbols));
    }
    return out;
}

inline bool all_achieved(const std::vector<ReceiverDecodability>& records) {
    for (const auto& r : records)
        if (!r.achieved) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Randomized CSIT-respecting strategies for the inequality harness.
// ---------------------------------------------------------------------------

enum class GeneratorKind { Oblivious, DelayedMixing, ZeroForcingHybrid };

inline std::string to_string(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::Oblivious: return "oblivious";
        case GeneratorKind::DelayedMixing: return "delayed-mixing";
        case GeneratorKind::ZeroForcingHybrid: return "zero-forcing-hybrid";
    }
    return "?";
}

namespace detail {

inline Matrix random_int_matrix(Rng& rng, std::size_t rows, std::size_t cols, long range) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = Rational(rng.uniform_int(-range, range));
    return m;
}

}  // namespace detail

// Randomized strategy construction. All three kinds consume the channel only
// through the per-slot CsitView, so they are compliant by construction:
//  - oblivious: channel-independent integer precoders;
//  - delayed-mixing: entries are degree-<=2 integer polynomials in visible
//    coefficients, so delayed CSIT genuinely shapes the precoders;
//  - zero-forcing-hybrid: P receivers beamform through the orthogonal
//    complement of the other P receivers' current channels.
inline LinearStrategy random_strategy(const CsitConfig& config, GeneratorKind kind,
                                      const ChannelRealization& real,
                                      const std::vector<int>& symbol_counts,
                                      std::uint64_t seed) {
    const int k = real.k(), m = real.m(), n = real.n();
    if (config.k() != k)
        throw std::invalid_argument("random_strategy: config/realization mismatch");
    for (int c : symbol_counts)
        if (c < 0) throw std::invalid_argument("random_strategy: negative symbol count");
    LinearStrategy s = make_empty_strategy(config, m, n, symbol_counts,
                                           to_string(kind) + ":seed=" + std::to_string(seed));
    Rng rng(seed);
    const long range = 9;
    const auto p_set = config.instantaneous();
    for (int t = 1; t <= n; ++t) {
        CsitView view(config, real, t);
        // visible coefficient pool in a fixed order (receiver, slot, column)
        std::vector<Rational> pool;
        if (kind == GeneratorKind::DelayedMixing) {
            for (int i = 0; i < k; ++i)
                for (int u = 1; u <= t; ++u)
                    if (view.visible(i, u))
                        for (int c = 0; c < m; ++c) pool.push_back(view.row(i, u)(0, c));
        }
        for (int j = 0; j < k; ++j) {
            const int mj = symbol_counts[j];
            if (mj == 0) continue;
            switch (kind) {
                case GeneratorKind::Oblivious:
                    s.precoder(j, t) = detail::random_int_matrix(rng, m, mj, range);
                    break;
                case GeneratorKind::DelayedMixing: {
                    Matrix v(m, mj);
                    for (int r = 0; r < m; ++r)
                        for (int c = 0; c < mj; ++c) {
                            Rational e(rng.uniform_int(-range, range));
                            if (!pool.empty()) {
                                const Rational& h1 =
                                    pool[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(pool.size()) - 1))];
                                const Rational& h2 =
                                    pool[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(pool.size()) - 1))];
                                e += Rational(rng.uniform_int(-range, range)) * h1;
                                e += Rational(rng.uniform_int(-range, range)) * h2;
                                e += Rational(rng.uniform_int(-range, range)) * h1 * h2;
                            }
                            v(r, c) = e;
                        }
                    s.precoder(j, t) = v;
                    break;
                }
                case GeneratorKind::ZeroForcingHybrid: {
                    if (config.state(j) == CsitState::P) {
                        Matrix others(0, m);
                        for (int p : p_set)
                            if (p != j) others = vstack(others, view.row(p, t));
                        const Matrix comp = orthogonal_complement(others);  // rows span null
                        s.precoder(j, t) =
                            comp.transpose() *
                            detail::random_int_matrix(rng, comp.rows(), mj, range);
                    } else {
                        s.precoder(j, t) = detail::random_int_matrix(rng, m, mj, range);
                    }
                    break;
                }
            }
        }
    }
    return s;
}

// Deterministic builder of a strategy from (config, channel, seed).
using StrategyGenerator =
    std::function<LinearStrategy(const CsitConfig&, const ChannelRealization&, std::uint64_t)>;

// Replay audit of the hybrid CSIT constraint. For every slot t and every
// trial, every coefficient outside the slot-t view (future slots, the current
// slot of D receivers, everything of N receivers) is re-randomized and the
// generator re-run; slot-t precoders must come back bit-identical.
// Throws if the generator is not even reproducible on unchanged inputs.
inline bool validate_csit_compliance(const StrategyGenerator& generator,
                                     const CsitConfig& config,
                                     const ChannelRealization& real,
                                     std::uint64_t seed, int trials) {
    const LinearStrategy base = generator(config, real, seed);
    if (!(generator(config, real, seed) == base))
        throw std::runtime_error("non-reproducible generator: two runs on identical "
                                 "inputs produced different strategies");
    for (int trial = 0; trial < trials; ++trial) {
        for (int t = 1; t <= real.n(); ++t) {
            const std::uint64_t ps =
                Rng::derive(seed ^ 0x5bd1e995u, static_cast<std::uint64_t>(trial) * real.n() + t);
            const ChannelRealization perturbed = perturb_invisible(config, real, t, ps);
            const LinearStrategy replayed = generator(config, perturbed, seed);
            if (replayed.k != base.k || replayed.n != base.n ||
                replayed.symbol_counts != base.symbol_counts)
                return false;
            for (int j = 0; j < base.k; ++j)
                if (!(replayed.precoder(j, t) == base.precoder(j, t))) return false;
        }
    }
    return true;
}

}  // namespace doflab
