#pragma once

#include <doflab/channel.hpp>
#include <doflab/linalg.hpp>
#include <doflab/lp.hpp>
#include <doflab/rational.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace doflab {

// The three half-space families of the DoF outer bound, plus the unit box.
// Coefficients are nonnegative and the right-hand side is always 1.
enum class InequalityFamily { InterferenceDecomposition, DelayedChain, SingleUser, Box };

inline std::string to_string(InequalityFamily f) {
    switch (f) {
        case InequalityFamily::InterferenceDecomposition: return "interference-decomposition";
        case InequalityFamily::DelayedChain: return "delayed-chain";
        case InequalityFamily::SingleUser: return "single-user";
        case InequalityFamily::Box: return "box";
    }
    return "?";
}

struct Inequality {
    std::vector<Rational> coeffs;
    Rational rhs = Rational(1);
    InequalityFamily family = InequalityFamily::Box;

    Rational evaluate(const std::vector<Rational>& point) const {
        Rational v(0);
        for (std::size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * point[i];
        return v;
    }
    bool satisfied_by(const std::vector<Rational>& point) const {
        return evaluate(point) <= rhs;
    }
    std::string str() const {
        std::string s;
        bool first = true;
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (coeffs[i] == 0) continue;
            if (!first) s += " + ";
            first = false;
            if (coeffs[i] != 1) s += to_fraction_string(coeffs[i]) + "*";
            s += "d" + std::to_string(i + 1);
        }
        if (first) s = "0";
        return s + " <= " + to_fraction_string(rhs);
    }
};

// Half-space description of a DoF region: family inequalities plus the
// implicit box 0 <= d_j <= 1. Nonnegative coefficients make the region
// closed under coordinatewise decrease; the origin is always a member.
struct DofRegion {
    int k = 0;
    std::vector<Inequality> inequalities;  // deduplicated, box not included

    bool contains(const std::vector<Rational>& point) const {
        if (static_cast<int>(point.size()) != k) return false;
        for (const Rational& d : point)
            if (d < 0 || d > 1) return false;
        for (const Inequality& ineq : inequalities)
            if (!ineq.satisfied_by(point)) return false;
        return true;
    }
};

namespace detail {

inline void add_dedup(std::vector<Inequality>& list, Inequality ineq) {
    for (const Inequality& e : list)
        if (e.coeffs == ineq.coeffs && e.rhs == ineq.rhs) return;
    list.push_back(std::move(ineq));
}

}  // namespace detail

// Emit the full inequality description for a CSIT configuration:
//  - one member per delayed receiver i and permutation pi of the remaining
//    P/D receivers, with geometric weights 1/2^j on the permuted receivers;
//  - one member per permutation of the delayed set, with weights 1/k on the
//    instantaneous receivers and harmonic weights 1/j on the delayed ones;
//  - one single-user member per P/D receiver.
// No-CSIT receivers enter every member with coefficient 1. Duplicated
// coefficient vectors are dropped; dominated members are kept (they do not
// change the region, the LP, or the vertex set).
//
// For three users this is the exact linear-DoF region; for more users it is
// an outer bound. Permutation family sizes are factorial, so building the
// explicit list is capped at k = 7; use outer_bound_sumdof for larger k.
inline DofRegion build_region(const CsitConfig& config) {
    const int k = config.k();
    if (k < 1) throw std::invalid_argument("build_region: k must be >= 1");
    if (k > 7)
        throw std::invalid_argument(
            "build_region: explicit permutation families are capped at k=7; "
            "use outer_bound_sumdof for the sum value");
    const auto p_set = config.instantaneous();
    const auto d_set = config.delayed();
    const auto n_set = config.none();

    DofRegion region;
    region.k = k;

    // geometric-weight family, one per delayed receiver
    for (int i : d_set) {
        std::vector<int> rest;
        for (int j : p_set) rest.push_back(j);
        for (int j : d_set)
            if (j != i) rest.push_back(j);
        std::sort(rest.begin(), rest.end());
        do {
            Inequality ineq;
            ineq.family = InequalityFamily::InterferenceDecomposition;
            ineq.coeffs.assign(k, Rational(0));
            for (std::size_t j = 0; j < rest.size(); ++j)
                ineq.coeffs[rest[j]] = Rational(1) / pow2(static_cast<unsigned>(j + 1));
            ineq.coeffs[i] = 1;
            for (int j : n_set) ineq.coeffs[j] = 1;
            detail::add_dedup(region.inequalities, std::move(ineq));
        } while (std::next_permutation(rest.begin(), rest.end()));
    }

    // harmonic-weight family, one per permutation of the delayed set
    {
        std::vector<int> dperm = d_set;
        std::sort(dperm.begin(), dperm.end());
        do {
            Inequality ineq;
            ineq.family = InequalityFamily::DelayedChain;
            ineq.coeffs.assign(k, Rational(0));
            for (int j : p_set) ineq.coeffs[j] = make_rational(1, k);
            for (std::size_t j = 0; j < dperm.size(); ++j)
                ineq.coeffs[dperm[j]] = make_rational(1, static_cast<long>(j + 1));
            for (int j : n_set) ineq.coeffs[j] = 1;
            detail::add_dedup(region.inequalities, std::move(ineq));
        } while (std::next_permutation(dperm.begin(), dperm.end()));
    }

    // single-user family
    for (int i = 0; i < k; ++i) {
        if (config.state(i) == CsitState::N) continue;
        Inequality ineq;
        ineq.family = InequalityFamily::SingleUser;
        ineq.coeffs.assign(k, Rational(0));
        ineq.coeffs[i] = 1;
        for (int j : n_set) ineq.coeffs[j] = 1;
        detail::add_dedup(region.inequalities, std::move(ineq));
    }

    return region;
}

namespace detail {

// rows for the LP/vertex machinery: family inequalities plus the box faces
inline void region_rows(const DofRegion& region, bool include_lower,
                        std::vector<std::vector<Rational>>& a, std::vector<Rational>& b) {
    for (const Inequality& ineq : region.inequalities) {
        a.push_back(ineq.coeffs);
        b.push_back(ineq.rhs);
    }
    for (int j = 0; j < region.k; ++j) {
        std::vector<Rational> row(region.k, Rational(0));
        row[j] = 1;
        a.push_back(row);
        b.push_back(Rational(1));
    }
    if (include_lower) {
        for (int j = 0; j < region.k; ++j) {
            std::vector<Rational> row(region.k, Rational(0));
            row[j] = -1;
            a.push_back(row);
            b.push_back(Rational(0));
        }
    }
}

}  // namespace detail

// All extreme points, exactly: solve every nonsingular k x k subsystem of
// active constraint candidates, keep the feasible solutions, deduplicate,
// and report in lexicographic order. A feasible solution of a nonsingular
// subsystem is automatically extreme. Supported for k <= 4.
inline std::vector<std::vector<Rational>> vertices(const DofRegion& region) {
    const int k = region.k;
    if (k > 4)
        throw std::runtime_error("vertex enumeration unsupported above k=4");
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    detail::region_rows(region, /*include_lower=*/true, a, b);
    // dedup candidate rows (single-user members can repeat box faces)
    {
        std::vector<std::vector<Rational>> ua;
        std::vector<Rational> ub;
        for (std::size_t i = 0; i < a.size(); ++i) {
            bool seen = false;
            for (std::size_t j = 0; j < ua.size(); ++j)
                seen |= (ua[j] == a[i] && ub[j] == b[i]);
            if (!seen) {
                ua.push_back(a[i]);
                ub.push_back(b[i]);
            }
        }
        a = std::move(ua);
        b = std::move(ub);
    }

    const std::size_t nrows = a.size();
    std::set<std::vector<Rational>> found;
    std::vector<std::size_t> comb(k);
    for (int i = 0; i < k; ++i) comb[i] = i;
    if (nrows < static_cast<std::size_t>(k)) return {};
    while (true) {
        Matrix sys(k, k);
        std::vector<Rational> rhs(k);
        for (int r = 0; r < k; ++r) {
            for (int c = 0; c < k; ++c) sys(r, c) = a[comb[r]][c];
            rhs[r] = b[comb[r]];
        }
        if (auto x = solve_square(sys, rhs)) {
            bool feasible = true;
            for (int j = 0; j < k && feasible; ++j)
                feasible = ((*x)[j] >= 0 && (*x)[j] <= 1);
            for (std::size_t i = 0; i < nrows && feasible; ++i) {
                Rational v(0);
                for (int j = 0; j < k; ++j) v += a[i][j] * (*x)[j];
                feasible = (v <= b[i]);
            }
            if (feasible) found.insert(*x);
        }
        int i = k - 1;
        while (i >= 0 && comb[i] == nrows - k + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
    return {found.begin(), found.end()};  // std::set orders lexicographically
}

// Exact maximum of a linear objective over the region.
inline LpResult region_maximize(const DofRegion& region, const std::vector<Rational>& objective) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    detail::region_rows(region, /*include_lower=*/false, a, b);
    return lp_maximize(a, b, objective);
}

// Exact sum-DoF: vertex enumeration for k <= 4, exact-pivot simplex above.
inline Rational sumdof(const DofRegion& region) {
    if (region.k <= 4) {
        Rational best(0);
        for (const auto& v : vertices(region)) {
            Rational s(0);
            for (const Rational& d : v) s += d;
            if (s > best) best = s;
        }
        return best;
    }
    return region_maximize(region, std::vector<Rational>(region.k, Rational(1))).value;
}

// Sum-DoF of the general outer bound for arbitrary k, via lazy constraint
// generation: most-violated members of each permutation family are found by
// sorting (rearrangement), so the factorial families never materialize.
inline Rational outer_bound_sumdof(const CsitConfig& config) {
    const int k = config.k();
    if (k < 1) throw std::invalid_argument("outer_bound_sumdof: k must be >= 1");
    if (k > 16) throw std::invalid_argument("outer_bound_sumdof: k capped at 16");
    const auto p_set = config.instantaneous();
    const auto d_set = config.delayed();
    const auto n_set = config.none();

    DofRegion working;
    working.k = k;

    auto sorted_desc = [](std::vector<int> idx, const std::vector<Rational>& d) {
        std::sort(idx.begin(), idx.end(), [&](int x, int y) {
            if (d[x] != d[y]) return d[x] > d[y];
            return x < y;
        });
        return idx;
    };

    while (true) {
        const LpResult lp =
            region_maximize(working, std::vector<Rational>(k, Rational(1)));
        const std::vector<Rational>& d = lp.solution;
        Rational nsum(0);
        for (int j : n_set) nsum += d[j];

        std::size_t before = working.inequalities.size();

        for (int i : d_set) {
            std::vector<int> rest;
            for (int j : p_set) rest.push_back(j);
            for (int j : d_set)
                if (j != i) rest.push_back(j);
            rest = sorted_desc(rest, d);
            Rational value = d[i] + nsum;
            Inequality ineq;
            ineq.family = InequalityFamily::InterferenceDecomposition;
            ineq.coeffs.assign(k, Rational(0));
            for (std::size_t j = 0; j < rest.size(); ++j) {
                const Rational w = Rational(1) / pow2(static_cast<unsigned>(j + 1));
                ineq.coeffs[rest[j]] = w;
                value += w * d[rest[j]];
            }
            ineq.coeffs[i] = 1;
            for (int j : n_set) ineq.coeffs[j] = 1;
            if (value > 1) detail::add_dedup(working.inequalities, std::move(ineq));
        }
        {
            std::vector<int> dperm = sorted_desc(d_set, d);
            Rational value = nsum;
            Inequality ineq;
            ineq.family = InequalityFamily::DelayedChain;
            ineq.coeffs.assign(k, Rational(0));
            for (int j : p_set) {
                ineq.coeffs[j] = make_rational(1, k);
                value += ineq.coeffs[j] * d[j];
            }
            for (std::size_t j = 0; j < dperm.size(); ++j) {
                const Rational w = make_rational(1, static_cast<long>(j + 1));
                ineq.coeffs[dperm[j]] = w;
                value += w * d[dperm[j]];
            }
            for (int j : n_set) ineq.coeffs[j] = 1;
            if (value > 1) detail::add_dedup(working.inequalities, std::move(ineq));
        }
        for (int i = 0; i < k; ++i) {
            if (config.state(i) == CsitState::N) continue;
            if (d[i] + nsum > 1) {
                Inequality ineq;
                ineq.family = InequalityFamily::SingleUser;
                ineq.coeffs.assign(k, Rational(0));
                ineq.coeffs[i] = 1;
                for (int j : n_set) ineq.coeffs[j] = 1;
                detail::add_dedup(working.inequalities, std::move(ineq));
            }
        }

        if (working.inequalities.size() == before) return lp.value;
    }
}

// Remove the members that do not cut the region: an inequality is redundant
// iff maximizing its left side over the region formed by the others (and the
// box) stays within the right side.
inline std::vector<Inequality> irredundant_inequalities(const DofRegion& region) {
    std::vector<Inequality> kept;
    for (std::size_t i = 0; i < region.inequalities.size(); ++i) {
        DofRegion others;
        others.k = region.k;
        for (std::size_t j = 0; j < region.inequalities.size(); ++j)
            if (j != i) others.inequalities.push_back(region.inequalities[j]);
        const LpResult lp = region_maximize(others, region.inequalities[i].coeffs);
        if (lp.value > region.inequalities[i].rhs)
            kept.push_back(region.inequalities[i]);
    }
    return kept;
}

// Averaging the geometric-weight family over joint relabelings inside the P
// and D sets yields one symmetric inequality; handy for the closed-form gap.
inline Inequality averaged_symmetric_inequality(const CsitConfig& config) {
    const auto p_set = config.instantaneous();
    const auto d_set = config.delayed();
    const auto n_set = config.none();
    const int p = static_cast<int>(p_set.size());
    const int dd = static_cast<int>(d_set.size());
    if (dd < 1)
        throw std::invalid_argument("averaged_symmetric_inequality: needs a delayed receiver");
    Inequality ineq;
    ineq.family = InequalityFamily::InterferenceDecomposition;
    ineq.coeffs.assign(config.k(), Rational(0));
    if (p > 0) {
        const Rational wp = (Rational(1) - Rational(1) / pow2(p)) / p;
        for (int j : p_set) ineq.coeffs[j] = wp;
    }
    const Rational wd =
        (Rational(1) + Rational(1) / pow2(p) - Rational(1) / pow2(p + dd - 1)) / dd;
    for (int j : d_set) ineq.coeffs[j] = wd;
    for (int j : n_set) ineq.coeffs[j] = 1;
    return ineq;
}

// Exact sum value when exactly one receiver supplies delayed CSIT.
inline Rational single_delayed_sumdof(int size_p) {
    if (size_p < 0) throw std::invalid_argument("single_delayed_sumdof: |P| must be >= 0");
    return Rational(size_p) + Rational(1) / pow2(static_cast<unsigned>(size_p));
}

struct SumDofBracket {
    Rational lower;
    Rational upper;
    Rational gap;      // upper - lower
    Rational gap_cap;  // |P| / 2^{|P|}, itself at most 1/2 in the regime
};

// Constant-gap bracket for |P| >= |D|: zero-forcing gives |P|; the averaged
// symmetric inequality bounds the excess by |D| / (2^{|P|} + 1 - 2^{1-|D|}).
inline SumDofBracket sumdof_bracket(int size_p, int size_d) {
    if (size_d == 0) {
        SumDofBracket b{Rational(size_p), Rational(size_p), Rational(0), Rational(0)};
        if (size_p > 0) b.gap_cap = Rational(size_p) / pow2(static_cast<unsigned>(size_p));
        return b;
    }
    if (size_p < size_d || size_d < 1)
        throw std::invalid_argument(
            "sumdof_bracket: approximate characterization requires |P| >= |D| >= 1");
    SumDofBracket b;
    b.lower = Rational(size_p);
    const Rational denom = pow2(static_cast<unsigned>(size_p)) + Rational(1) -
                           Rational(1) / pow2(static_cast<unsigned>(size_d - 1));
    b.upper = Rational(size_p) + Rational(size_d) / denom;
    b.gap = b.upper - b.lower;
    b.gap_cap = Rational(size_p) / pow2(static_cast<unsigned>(size_p));
    return b;
}

// The ten three-user configuration classes, in canonical order.
inline const std::vector<std::string>& three_user_classes() {
    static const std::vector<std::string> classes = {
        "PPP", "PPD", "PPN", "PDD", "PDN", "DDD", "DDN", "PNN", "DNN", "NNN"};
    return classes;
}

inline const std::map<std::string, Rational>& three_user_golden_sumdof() {
    static const std::map<std::string, Rational> golden = {
        {"PPP", Rational(3)},          {"PPD", make_rational(9, 4)},
        {"PPN", Rational(2)},          {"PDD", make_rational(9, 5)},
        {"PDN", make_rational(3, 2)},  {"DDD", make_rational(18, 11)},
        {"DDN", make_rational(4, 3)},  {"PNN", Rational(1)},
        {"DNN", Rational(1)},          {"NNN", Rational(1)}};
    return golden;
}

struct Table1Row {
    std::string csit_class;
    std::vector<Inequality> binding;  // irredundant non-box members
    Rational sum_dof;
    Rational golden;
    bool matches = false;
};

// Recompute the sum-DoF of every three-user class and compare against the
// embedded golden values.
inline std::vector<Table1Row> table1_report() {
    std::vector<Table1Row> rows;
    for (const std::string& cls : three_user_classes()) {
        const CsitConfig config = CsitConfig::parse(cls);
        const DofRegion region = build_region(config);
        Table1Row row;
        row.csit_class = cls;
        row.binding = irredundant_inequalities(region);
        row.sum_dof = sumdof(region);
        row.golden = three_user_golden_sumdof().at(cls);
        row.matches = (row.sum_dof == row.golden);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace doflab
