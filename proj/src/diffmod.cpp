#include "flagforge/diffmod.hpp"

#include <algorithm>

#include "flagforge/error.hpp"
#include "flagforge/linalg.hpp"

namespace flagforge {

namespace {

void check_flag_partition(const FreeModule& mod,
                          const std::vector<std::vector<std::size_t>>& levels) {
    std::vector<char> seen(mod.rank(), 0);
    for (const auto& lv : levels)
        for (std::size_t g : lv) {
            require(g < mod.rank(), "FlagViolation", "flag level index out of range");
            require(!seen[g], "FlagViolation", "generator assigned to two levels");
            seen[g] = 1;
        }
    require(std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; }),
            "FlagViolation", "generator missing from the flag levels");
}

} // namespace

void DifferentialModule::validate() const {
    require(d.source() == mod && d.target() == mod, "ShapeMismatch",
            "differential endpoints must be the underlying module");
    require(d.map_degree() == degree, "ShapeMismatch",
            "differential degree disagrees with the recorded degree");
    d.check_homogeneous();
    require((d * d).is_zero(), "SquareNonzero", "differential does not square to zero");
    if (flag_levels) check_flag_partition(mod, *flag_levels);
}

DifferentialModule fold(const FreeComplex& C, int a) {
    FreeModule D{C.ring(), {}};
    std::vector<std::vector<std::size_t>> levels;
    for (std::size_t i = 0; i <= C.length(); ++i) {
        const FreeModule& F = C.module(i);
        std::vector<std::size_t> lv;
        for (std::size_t g = 0; g < F.rank(); ++g) {
            lv.push_back(D.twists.size());
            D.twists.push_back(F.twists[g] + static_cast<int>(i) * a);
        }
        levels.push_back(std::move(lv));
    }

    HomMap d(D, D, a);
    std::size_t col0 = C.module(0).rank();
    std::size_t row0 = 0;
    for (std::size_t i = 1; i <= C.length(); ++i) {
        const HomMap& del = C.diff(i);
        for (std::size_t r = 0; r < del.target().rank(); ++r)
            for (std::size_t c = 0; c < del.source().rank(); ++c)
                d.set(row0 + r, col0 + c, del.at(r, c));
        row0 = col0;
        col0 += C.module(i).rank();
    }

    DifferentialModule out{std::move(D), a, std::move(d),
                           std::make_optional(std::move(levels))};
    out.validate();
    return out;
}

FreeComplex validate_flag(const DifferentialModule& D) {
    require(D.flag_levels.has_value(), "FlagViolation", "no flag data present");
    const auto& levels = *D.flag_levels;
    check_flag_partition(D.mod, levels);

    // Level of each generator.
    std::vector<std::size_t> level_of(D.mod.rank(), 0);
    for (std::size_t i = 0; i < levels.size(); ++i)
        for (std::size_t g : levels[i]) level_of[g] = i;

    for (std::size_t r = 0; r < D.mod.rank(); ++r)
        for (std::size_t c = 0; c < D.mod.rank(); ++c) {
            if (D.d.at(r, c).is_zero()) continue;
            require(level_of[r] < level_of[c], "FlagViolation",
                    "nonzero block does not drop strictly in level");
        }
    D.d.check_homogeneous();

    // Untwisted anchor modules: level i entered the fold twisted by i*a.
    std::vector<FreeModule> mods;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        FreeModule F{D.mod.ring, {}};
        for (std::size_t g : levels[i])
            F.twists.push_back(D.mod.twists[g] - static_cast<int>(i) * D.degree);
        mods.push_back(std::move(F));
    }

    std::vector<HomMap> diffs;
    for (std::size_t i = 1; i < levels.size(); ++i) {
        HomMap del(mods[i], mods[i - 1], 0);
        for (std::size_t r = 0; r < levels[i - 1].size(); ++r)
            for (std::size_t c = 0; c < levels[i].size(); ++c)
                del.set(r, c, D.d.at(levels[i - 1][r], levels[i][c]));
        del.check_homogeneous();
        diffs.push_back(std::move(del));
    }

    FreeComplex anchor(std::move(mods), std::move(diffs));
    for (std::size_t i = 1; i + 1 <= anchor.length(); ++i)
        require((anchor.diff(i) * anchor.diff(i + 1)).is_zero(), "AnchorNotAComplex",
                "first-off-diagonal blocks do not form a complex");
    return anchor;
}

std::map<int, long> homology_hilbert(const DifferentialModule& D, int j0, int j1) {
    // The rank of the degree-j slice is needed both as "here" for j and as
    // "prev" for j + a, so ranks are cached per degree.
    std::map<int, long> ranks;
    auto rank_at = [&](int j) {
        auto it = ranks.find(j);
        if (it != ranks.end()) return it->second;
        long r = static_cast<long>(rank(D.d.slice_matrix(j)));
        ranks.emplace(j, r);
        return r;
    };
    std::map<int, long> h;
    for (int j = j0; j <= j1; ++j) {
        long dim = slice_dim(D.mod, j) - rank_at(j) - rank_at(j - D.degree);
        require(dim >= 0, "ShapeMismatch", "negative homology dimension");
        h[j] = dim;
    }
    return h;
}

std::pair<int, int> default_window(const DifferentialModule& D) {
    if (D.mod.rank() == 0) return {0, 0};
    std::vector<int> degs;
    degs.reserve(D.mod.rank());
    for (int t : D.mod.twists) degs.push_back(-t);
    std::sort(degs.begin(), degs.end());
    int gap = 0;
    for (std::size_t g = 1; g < degs.size(); ++g)
        gap = std::max(gap, degs[g] - degs[g - 1]);
    int slack = static_cast<int>(D.mod.ring->nvars()) * gap +
                std::abs(D.degree) + 2;
    return {degs.front(), degs.back() + slack};
}

long BettiRecord::total() const {
    long t = 0;
    for (const auto& [j, c] : by_degree) t += c;
    return t;
}

bool is_minimal(const HomMap& d) {
    for (std::size_t r = 0; r < d.target().rank(); ++r)
        for (std::size_t c = 0; c < d.source().rank(); ++c) {
            auto cv = d.at(r, c).constant_value();
            if (cv.has_value() && !cv->is_zero()) return false;
        }
    return true;
}

namespace {

// Locate the first off-diagonal nonzero scalar entry, row-major.
std::optional<std::pair<std::size_t, std::size_t>> find_unit(const HomMap& d) {
    for (std::size_t r = 0; r < d.target().rank(); ++r)
        for (std::size_t c = 0; c < d.source().rank(); ++c) {
            if (r == c) continue;
            auto cv = d.at(r, c).constant_value();
            if (cv.has_value() && !cv->is_zero()) return std::make_pair(r, c);
        }
    return std::nullopt;
}

// Conjugate d by the elementary automorphism I + alpha * E_{pq}, p != q.
HomMap conjugate_elementary(const HomMap& d, std::size_t p, std::size_t q,
                            const Poly& alpha) {
    HomMap Q = HomMap::identity(d.source());
    Q.set(p, q, alpha);
    HomMap Qinv = HomMap::identity(d.source());
    Qinv.set(p, q, -alpha);
    return Qinv * (d * Q);
}

HomMap delete_pair(const HomMap& d, const FreeModule& mod, std::size_t r, std::size_t c,
                   FreeModule& out_mod) {
    std::vector<std::size_t> keep;
    for (std::size_t g = 0; g < mod.rank(); ++g)
        if (g != r && g != c) keep.push_back(g);
    out_mod = FreeModule{mod.ring, {}};
    for (std::size_t g : keep) out_mod.twists.push_back(mod.twists[g]);
    HomMap nd(out_mod, out_mod, d.map_degree());
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j)
            nd.set(i, j, d.at(keep[i], keep[j]));
    return nd;
}

} // namespace

std::pair<DifferentialModule, BettiRecord> minimize(const DifferentialModule& D) {
    D.validate();
    FreeModule mod = D.mod;
    HomMap d = D.d;

    while (auto unit = find_unit(d)) {
        auto [r, c] = *unit;
        Scalar u = *d.at(r, c).constant_value();
        // Clear the rest of row r, then the rest of column c; the unit
        // stays fixed and square-zero wipes row c and column r.
        for (std::size_t j = 0; j < mod.rank(); ++j) {
            if (j == c) continue;
            const Poly& entry = d.at(r, j);
            if (entry.is_zero()) continue;
            d = conjugate_elementary(d, c, j, -entry.scaled(u.inverse()));
        }
        for (std::size_t i = 0; i < mod.rank(); ++i) {
            if (i == r) continue;
            const Poly& entry = d.at(i, c);
            if (entry.is_zero()) continue;
            d = conjugate_elementary(d, i, r, entry.scaled(u.inverse()));
        }
        for (std::size_t k = 0; k < mod.rank(); ++k) {
            require(k == r || d.at(k, c).is_zero(), "SquareNonzero",
                    "column failed to clear during minimization");
            require(k == c || d.at(r, k).is_zero(), "SquareNonzero",
                    "row failed to clear during minimization");
            require(d.at(c, k).is_zero() && d.at(k, r).is_zero(), "SquareNonzero",
                    "square-zero cleanup failed during minimization");
        }
        FreeModule smaller;
        d = delete_pair(d, mod, r, c, smaller);
        mod = std::move(smaller);
    }

    DifferentialModule out{mod, D.degree, d, std::nullopt};
    out.validate();
    BettiRecord betti;
    for (int t : mod.twists) betti.by_degree[-t] += 1;
    return {std::move(out), std::move(betti)};
}

std::optional<Poly> curvature(const HomMap& d) {
    require(d.source() == d.target(), "ShapeMismatch", "curvature needs a square map");
    d.check_homogeneous();
    HomMap sq = d * d;
    std::size_t n = d.source().rank();
    if (n == 0) return Poly::zero(d.ring());
    const Poly& f = sq.at(0, 0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            if (r == c) {
                if (sq.at(r, c) != f) return std::nullopt;
            } else if (!sq.at(r, c).is_zero()) {
                return std::nullopt;
            }
        }
    return f;
}

void CurvedModule::validate() const {
    require(d.source() == mod && d.target() == mod, "ShapeMismatch",
            "differential endpoints must be the underlying module");
    auto f0 = curvature(d);
    require(f0.has_value() && *f0 == f, "SquareNonzero",
            "square of the map is not the recorded curvature");
    if (flag_levels) check_flag_partition(mod, *flag_levels);
}

std::pair<HomMap, HomMap> matrix_factorization(const CurvedModule& D) {
    require(D.flag_levels.has_value(), "ParityMissing",
            "matrix factorization needs flag levels for the parity split");
    D.validate();
    require(!D.f.is_zero(), "ParityMissing",
            "matrix factorization needs nonzero curvature");

    std::vector<std::size_t> even, odd;
    for (std::size_t i = 0; i < D.flag_levels->size(); ++i)
        for (std::size_t g : (*D.flag_levels)[i])
            (i % 2 == 0 ? even : odd).push_back(g);

    FreeModule Me{D.mod.ring, {}}, Mo{D.mod.ring, {}};
    for (std::size_t g : even) Me.twists.push_back(D.mod.twists[g]);
    for (std::size_t g : odd) Mo.twists.push_back(D.mod.twists[g]);

    HomMap A(Mo, Me, D.degree); // odd -> even
    HomMap B(Me, Mo, D.degree); // even -> odd
    for (std::size_t r = 0; r < even.size(); ++r)
        for (std::size_t c = 0; c < odd.size(); ++c)
            A.set(r, c, D.d.at(even[r], odd[c]));
    for (std::size_t r = 0; r < odd.size(); ++r)
        for (std::size_t c = 0; c < even.size(); ++c)
            B.set(r, c, D.d.at(odd[r], even[c]));

    // Same-parity blocks of d must vanish, or the split discards data.
    for (std::size_t r : even)
        for (std::size_t c : even)
            require(D.d.at(r, c).is_zero(), "NotAFactorization",
                    "nonzero even-to-even block");
    for (std::size_t r : odd)
        for (std::size_t c : odd)
            require(D.d.at(r, c).is_zero(), "NotAFactorization",
                    "nonzero odd-to-odd block");

    HomMap ab = A * B;
    HomMap ba = B * A;
    for (std::size_t r = 0; r < even.size(); ++r)
        for (std::size_t c = 0; c < even.size(); ++c) {
            Poly want = (r == c) ? D.f : Poly::zero(D.mod.ring);
            require(ab.at(r, c) == want, "NotAFactorization",
                    "A*B is not the curvature times the identity");
        }
    for (std::size_t r = 0; r < odd.size(); ++r)
        for (std::size_t c = 0; c < odd.size(); ++c) {
            Poly want = (r == c) ? D.f : Poly::zero(D.mod.ring);
            require(ba.at(r, c) == want, "NotAFactorization",
                    "B*A is not the curvature times the identity");
        }
    return {std::move(A), std::move(B)};
}

} // namespace flagforge
