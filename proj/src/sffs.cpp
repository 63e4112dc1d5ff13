#include "eegmi/sffs.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "eegmi/error.hpp"
#include "eegmi/svm.hpp"

namespace eegmi {

namespace {

class CachedCriterion {
public:
    explicit CachedCriterion(const Criterion& j) : j_(j) {}

    double operator()(const std::vector<int>& subset) {
        auto it = cache_.find(subset);
        if (it != cache_.end()) return it->second;
        const double value = j_(subset);
        if (!std::isfinite(value)) throw Error("criterion returned a non-finite value");
        cache_.emplace(subset, value);
        return value;
    }

private:
    const Criterion& j_;
    std::map<std::vector<int>, double> cache_;
};

std::vector<int> with_item(const std::vector<int>& subset, int item) {
    std::vector<int> out = subset;
    out.insert(std::upper_bound(out.begin(), out.end(), item), item);
    return out;
}

std::vector<int> without_item(const std::vector<int>& subset, int item) {
    std::vector<int> out = subset;
    out.erase(std::find(out.begin(), out.end(), item));
    return out;
}

}  // namespace

SelectionReport sffs(const std::vector<int>& candidates, const Criterion& j_func,
                     const SffsConfig& cfg) {
    if (candidates.size() < 2) throw Error("sffs requires at least 2 candidates");
    if (cfg.k_max < cfg.k_min) throw Error("k_max must be >= k_min");

    CachedCriterion j(j_func);
    std::vector<int> pool = candidates;  // ascending keeps ties at lowest index
    std::sort(pool.begin(), pool.end());
    std::vector<int> selected;
    double j_current = 0.0;

    SelectionReport report;
    double best_j = -std::numeric_limits<double>::infinity();
    auto consider_best = [&](double value) {
        if (static_cast<int>(selected.size()) >= cfg.k_min && value > best_j) {
            best_j = value;
            report.final_subset = selected;
            return true;
        }
        return false;
    };

    std::set<std::vector<int>> visited;
    int stall = 0;
    while (static_cast<int>(selected.size()) < cfg.k_max && !pool.empty()) {
        if (!visited.insert(selected).second) break;  // state already explored

        // Inclusion: argmax J(selected + {x}).
        int best_add = -1;
        double best_add_j = -std::numeric_limits<double>::infinity();
        for (int x : pool) {
            const double value = j(with_item(selected, x));
            if (value > best_add_j) {
                best_add_j = value;
                best_add = x;
            }
        }
        selected = with_item(selected, best_add);
        pool.erase(std::find(pool.begin(), pool.end(), best_add));
        j_current = best_add_j;
        report.trajectory.push_back({SelectionAction::include, best_add, j_current});
        bool improved = consider_best(j_current);
        const int just_added = best_add;

        // Conditional exclusion while it strictly improves J.
        while (static_cast<int>(selected.size()) > cfg.k_min) {
            int best_drop = -1;
            double best_drop_j = -std::numeric_limits<double>::infinity();
            for (int y : selected) {
                if (y == just_added) continue;
                const double value = j(without_item(selected, y));
                if (value > best_drop_j) {
                    best_drop_j = value;
                    best_drop = y;
                }
            }
            if (best_drop < 0 || best_drop_j <= j_current) break;
            selected = without_item(selected, best_drop);
            pool.insert(std::upper_bound(pool.begin(), pool.end(), best_drop), best_drop);
            j_current = best_drop_j;
            report.trajectory.push_back({SelectionAction::exclude, best_drop, j_current});
            improved = consider_best(j_current) || improved;
        }

        stall = improved ? 0 : stall + 1;
        if (stall >= cfg.patience) break;
    }

    if (report.final_subset.empty())
        throw Error("sffs never reached a subset of the minimum size");
    report.j_final = best_j;
    return report;
}

SelectionReport select_features(const FeatureMatrix& f, const MiConfig& mi_cfg,
                                const SffsConfig& sffs_cfg, int criterion_folds,
                                std::uint64_t criterion_seed) {
    const MiFilterResult filtered = mi_filter(f, mi_cfg);

    if (filtered.kept.size() < 2) {
        // A single survivor cannot seed the floating search; report it as the
        // final subset only if the k_min floor allows, otherwise fail loudly.
        throw EmptySelectionError("fewer than 2 features survive the MI filter");
    }

    const Criterion j = [&](const std::vector<int>& subset) {
        return criterion_svm_cv(f, subset, criterion_folds, criterion_seed);
    };
    SelectionReport report = sffs(filtered.kept, j, sffs_cfg);
    report.mi_values = filtered.mi_values;
    report.stage1_kept = filtered.kept;
    return report;
}

}  // namespace eegmi
