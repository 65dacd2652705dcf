#pragma once

#include <doflab/linalg.hpp>
#include <doflab/matrix.hpp>
#include <doflab/rng.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace doflab {

// Per-receiver CSIT quality: instantaneous, delayed by one slot, or none.
enum class CsitState : char { P = 'P', D = 'D', N = 'N' };

inline char to_char(CsitState s) { return static_cast<char>(s); }

// One state per receiver. Receivers are 0-based in code, slots are 1-based.
class CsitConfig {
public:
    CsitConfig() = default;

    explicit CsitConfig(std::vector<CsitState> states) : states_(std::move(states)) {}

    // Parse strings like "PDD" or "PPPD".
    static CsitConfig parse(const std::string& s) {
        std::vector<CsitState> st;
        st.reserve(s.size());
        for (char c : s) {
            switch (c) {
                case 'P': case 'p': st.push_back(CsitState::P); break;
                case 'D': case 'd': st.push_back(CsitState::D); break;
                case 'N': case 'n': st.push_back(CsitState::N); break;
                default:
                    throw std::invalid_argument("invalid CSIT string '" + s +
                                                "': characters must be P, D or N");
            }
        }
        if (st.empty()) throw std::invalid_argument("empty CSIT string");
        return CsitConfig(std::move(st));
    }

    int k() const { return static_cast<int>(states_.size()); }
    CsitState state(int receiver) const { return states_.at(receiver); }

    std::vector<int> set_of(CsitState s) const {
        std::vector<int> out;
        for (int j = 0; j < k(); ++j)
            if (states_[j] == s) out.push_back(j);
        return out;
    }
    std::vector<int> instantaneous() const { return set_of(CsitState::P); }
    std::vector<int> delayed() const { return set_of(CsitState::D); }
    std::vector<int> none() const { return set_of(CsitState::N); }

    std::string str() const {
        std::string s;
        for (auto st : states_) s += to_char(st);
        return s;
    }

    // Canonical class label: states sorted P before D before N. Configs with
    // the same class are receiver relabelings of each other.
    std::string class_string() const {
        std::string s = str();
        auto quality = [](char c) { return c == 'P' ? 0 : (c == 'D' ? 1 : 2); };
        std::sort(s.begin(), s.end(), [&](char a, char b) { return quality(a) < quality(b); });
        return s;
    }

    bool operator==(const CsitConfig& o) const { return states_ == o.states_; }

private:
    std::vector<CsitState> states_;
};

// A sampled block of channel rows g_j(t), j = 0..k-1, t = 1..n, with integer
// entries (stored as rationals). Generic in the sense that within each slot
// every k x k column minor of the k x m coefficient block is nonzero.
class ChannelRealization {
public:
    ChannelRealization(int k, int m, int n, std::uint64_t seed)
        : k_(k), m_(m), n_(n), seed_(seed),
          rows_(static_cast<std::size_t>(k) * n) {}

    int k() const { return k_; }
    int m() const { return m_; }
    int n() const { return n_; }
    std::uint64_t seed() const { return seed_; }
    int resample_count() const { return resamples_; }

    // 1 x m row of receiver j at slot t.
    const Matrix& row(int j, int t) const { return rows_.at(index(j, t)); }
    Matrix& row(int j, int t) { return rows_.at(index(j, t)); }

    void set_resample_count(int c) { resamples_ = c; }

private:
    std::size_t index(int j, int t) const {
        if (j < 0 || j >= k_ || t < 1 || t > n_)
            throw std::invalid_argument("channel row index out of range");
        return static_cast<std::size_t>(t - 1) * k_ + j;
    }

    int k_, m_, n_;
    std::uint64_t seed_;
    int resamples_ = 0;
    std::vector<Matrix> rows_;
};

namespace detail {

inline bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
    const std::size_t k = comb.size();
    std::size_t i = k;
    while (i-- > 0) {
        if (comb[i] != n - k + i) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Every square submatrix of the slot block must be nonsingular (the 1x1 case
// excludes zero entries, the k x k case the classical minor condition). The
// constructive schemes route scalars through single antennas and complement
// rows, so any vanishing sub-minor can void a received equation; total
// nonsingularity is the slot-local discrete stand-in for channels in general
// position.
inline bool slot_block_generic(const std::vector<Matrix>& rows, int k, int m) {
    Matrix block(k, m);
    for (int j = 0; j < k; ++j)
        for (int c = 0; c < m; ++c) block(j, c) = rows[j](0, c);
    for (int r = 1; r <= k; ++r) {
        std::vector<std::size_t> rsel(r), csel(r);
        for (int i = 0; i < r; ++i) rsel[i] = i;
        do {
            for (int i = 0; i < r; ++i) csel[i] = i;
            do {
                if (determinant(block.select_rows(rsel).columns(csel)) == 0) return false;
            } while (next_combination(csel, m));
        } while (next_combination(rsel, k));
    }
    return true;
}

inline Matrix random_row(Rng& rng, int m, long range) {
    Matrix row(1, m);
    for (int c = 0; c < m; ++c)
        row(0, c) = Rational(rng.uniform_int(-range, range));
    return row;
}

}  // namespace detail

// Deterministic generic channel sampling. Entries are uniform integers in
// [-range, range]; any slot whose coefficient block violates the genericity
// invariant is resampled wholesale (the count is recorded on the result).
inline ChannelRealization sample_channel(int k, int m, int n, std::uint64_t seed,
                                         long range = 100) {
    if (k < 1 || n < 1) throw std::invalid_argument("sample_channel: k and n must be >= 1");
    if (m < k) throw std::invalid_argument("sample_channel: requires m >= k");
    if (range < 1) throw std::invalid_argument("sample_channel: range must be positive");
    ChannelRealization real(k, m, n, seed);
    Rng rng(seed);
    int resamples = 0;
    for (int t = 1; t <= n; ++t) {
        std::vector<Matrix> slot(k);
        while (true) {
            for (int j = 0; j < k; ++j) slot[j] = detail::random_row(rng, m, range);
            if (detail::slot_block_generic(slot, k, m)) break;
            if (++resamples > 1000)
                throw std::runtime_error(
                    "sample_channel: genericity resampling did not terminate "
                    "(k=" + std::to_string(k) + ", m=" + std::to_string(m) +
                    ", range=" + std::to_string(range) + ")");
        }
        for (int j = 0; j < k; ++j) real.row(j, t) = slot[j];
    }
    real.set_resample_count(resamples);
    return real;
}

// n x (n m) block-diagonal matrix of receiver j: row t carries g_j(t) in
// columns (t-1)m .. tm-1, zeros elsewhere.
inline Matrix block_diagonal(const ChannelRealization& real, int j) {
    if (j < 0 || j >= real.k())
        throw std::invalid_argument("block_diagonal: receiver index out of range");
    const int n = real.n(), m = real.m();
    Matrix g(n, static_cast<std::size_t>(n) * m);
    for (int t = 1; t <= n; ++t)
        for (int c = 0; c < m; ++c)
            g(t - 1, static_cast<std::size_t>(t - 1) * m + c) = real.row(j, t)(0, c);
    return g;
}

// What the transmitter may see while planning slot t: full history for P
// receivers, history up to t-1 for D receivers, nothing for N receivers.
// Holds snapshots, so views stay valid independently of their sources.
class CsitView {
public:
    CsitView(CsitConfig config, ChannelRealization real, int t)
        : config_(std::move(config)), real_(std::move(real)), t_(t) {
        if (t < 1 || t > real_.n())
            throw std::invalid_argument("csit_view: slot out of range");
        if (config_.k() != real_.k())
            throw std::invalid_argument("csit_view: config/realization user count mismatch");
    }

    int slot() const { return t_; }

    bool visible(int receiver, int s) const {
        if (s < 1 || s > real_.n()) return false;
        switch (config_.state(receiver)) {
            case CsitState::P: return s <= t_;
            case CsitState::D: return s <= t_ - 1;
            case CsitState::N: return false;
        }
        return false;
    }

    // Channel row g_receiver(s); throws when the CSIT state does not permit it.
    const Matrix& row(int receiver, int s) const {
        if (!visible(receiver, s))
            throw std::logic_error("csit view violation: receiver " +
                                   std::to_string(receiver + 1) + " slot " +
                                   std::to_string(s) + " is not visible at slot " +
                                   std::to_string(t_));
        return real_.row(receiver, s);
    }

    std::vector<int> visible_slots(int receiver) const {
        std::vector<int> out;
        for (int s = 1; s <= real_.n(); ++s)
            if (visible(receiver, s)) out.push_back(s);
        return out;
    }

    const CsitConfig& config() const { return config_; }
    int k() const { return real_.k(); }
    int m() const { return real_.m(); }
    int n() const { return real_.n(); }

private:
    CsitConfig config_;
    ChannelRealization real_;
    int t_;
};

inline CsitView csit_view(const CsitConfig& config, const ChannelRealization& real, int t) {
    return CsitView(config, real, t);
}

// Copy of `real` in which every coefficient invisible at planning slot t is
// replaced with fresh random entries (slot genericity preserved). Used by the
// compliance audit: a CSIT-respecting generator must emit identical slot-t
// precoders on the original and on any such perturbation.
inline ChannelRealization perturb_invisible(const CsitConfig& config,
                                            const ChannelRealization& real, int t,
                                            std::uint64_t perturb_seed,
                                            long range = 100) {
    ChannelRealization out = real;
    CsitView view(config, real, t);
    Rng rng(perturb_seed);
    int guard = 0;
    for (int s = 1; s <= real.n(); ++s) {
        bool touched = false;
        for (int j = 0; j < real.k(); ++j)
            if (!view.visible(j, s)) touched = true;
        if (!touched) continue;
        while (true) {
            std::vector<Matrix> slot(real.k());
            for (int j = 0; j < real.k(); ++j)
                slot[j] = view.visible(j, s) ? real.row(j, s)
                                             : detail::random_row(rng, real.m(), range);
            if (detail::slot_block_generic(slot, real.k(), real.m())) {
                for (int j = 0; j < real.k(); ++j) out.row(j, s) = slot[j];
                break;
            }
            if (++guard > 1000)
                throw std::runtime_error("perturb_invisible: resampling did not terminate");
        }
    }
    return out;
}

}  // namespace doflab
