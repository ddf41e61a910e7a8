#include "flagforge/complex.hpp"

#include <numeric>

#include "flagforge/error.hpp"

namespace flagforge {

FreeComplex::FreeComplex(std::vector<FreeModule> modules, std::vector<HomMap> diffs)
    : mods_(std::move(modules)), diffs_(std::move(diffs)) {
    require(!mods_.empty(), "ShapeMismatch", "complex needs at least one module");
    require(diffs_.size() + 1 == mods_.size(), "ShapeMismatch",
            "complex needs one differential per adjacent pair");
    for (const auto& m : mods_)
        require(*m.ring == *mods_[0].ring, "RingMismatch",
                "complex modules over different rings");
    for (std::size_t i = 0; i < diffs_.size(); ++i) {
        require(diffs_[i].source() == mods_[i + 1] && diffs_[i].target() == mods_[i],
                "ShapeMismatch", "differential endpoints do not match the modules");
        require(diffs_[i].map_degree() == 0, "ShapeMismatch",
                "complex differentials must have degree 0");
    }
}

const FreeModule& FreeComplex::module(std::size_t i) const {
    require(i < mods_.size(), "ShapeMismatch", "module index out of range");
    return mods_[i];
}

const HomMap& FreeComplex::diff(std::size_t i) const {
    require(i >= 1 && i <= diffs_.size(), "ShapeMismatch",
            "differential index out of range");
    return diffs_[i - 1];
}

std::size_t FreeComplex::total_rank() const {
    std::size_t n = 0;
    for (const auto& m : mods_) n += m.rank();
    return n;
}

void FreeComplex::validate() const {
    for (const auto& d : diffs_) d.check_homogeneous();
    for (std::size_t i = 0; i + 1 < diffs_.size(); ++i)
        require((diffs_[i] * diffs_[i + 1]).is_zero(), "NotAComplex",
                "composite of consecutive differentials is nonzero");
}

std::vector<std::vector<int>> subsets_lex(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    if (k == 0) out.assign(1, {});
    return out;
}

FreeComplex koszul_complex(const RingPtr& ring, const std::vector<Poly>& gens) {
    const int c = static_cast<int>(gens.size());
    std::vector<int> degs;
    for (const auto& f : gens) {
        auto h = f.homogeneous_degree();
        require(h.has_value() && *h >= 1, "NonHomogeneous",
                "Koszul complex needs homogeneous elements of positive degree");
        degs.push_back(*h);
    }

    std::vector<std::vector<std::vector<int>>> bases;
    std::vector<FreeModule> mods;
    for (int i = 0; i <= c; ++i) {
        auto subs = subsets_lex(c, i);
        FreeModule M{ring, {}};
        for (const auto& J : subs) {
            int tw = 0;
            for (int r : J) tw -= degs[static_cast<std::size_t>(r)];
            M.twists.push_back(tw);
        }
        bases.push_back(std::move(subs));
        mods.push_back(std::move(M));
    }

    std::vector<HomMap> diffs;
    for (int i = 1; i <= c; ++i) {
        HomMap d(mods[static_cast<std::size_t>(i)], mods[static_cast<std::size_t>(i - 1)], 0);
        const auto& src = bases[static_cast<std::size_t>(i)];
        const auto& tgt = bases[static_cast<std::size_t>(i - 1)];
        for (std::size_t col = 0; col < src.size(); ++col) {
            const auto& J = src[col];
            for (std::size_t s = 0; s < J.size(); ++s) {
                std::vector<int> K = J;
                K.erase(K.begin() + static_cast<long>(s));
                std::size_t row = 0;
                while (row < tgt.size() && tgt[row] != K) ++row;
                Poly f = gens[static_cast<std::size_t>(J[s])];
                if (s % 2 == 1) f = -f;
                d.set(row, col, d.at(row, col) + f);
            }
        }
        diffs.push_back(std::move(d));
    }

    FreeComplex C(std::move(mods), std::move(diffs));
    C.validate();
    return C;
}

} // namespace flagforge
