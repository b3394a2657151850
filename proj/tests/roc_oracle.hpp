// Brute-force ROC: every threshold enumerated, counts rebuilt from scratch.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "relcpd/evaluation.hpp"
#include "relcpd/rng.hpp"

namespace oracle {

struct RocResult {
    std::vector<relcpd::RocPoint> points;
    double auc = 0.0;
};

inline RocResult roc_by_enumeration(const relcpd::AlarmList& alarms,
                                    const std::vector<relcpd::Index>& truths, relcpd::Index n_cp) {
    std::vector<double> levels(alarms.scores.begin(), alarms.scores.end());
    std::sort(levels.rbegin(), levels.rend());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    // Alarms in time order.
    std::vector<std::size_t> order(alarms.times.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return alarms.times[a] < alarms.times[b]; });

    RocResult out;
    out.points.push_back({0.0, 0.0});
    for (const double level : levels) {
        long n_al = 0, n_cr = 0;
        std::vector<char> used(truths.size(), 0);
        for (const std::size_t a : order) {
            if (alarms.scores[a] < level) continue;
            ++n_al;
            for (std::size_t c = 0; c < truths.size(); ++c) {
                if (used[c] == 0 && std::labs(alarms.times[a] - truths[c]) <= 10) {
                    used[c] = 1;
                    ++n_cr;
                    break;
                }
            }
        }
        relcpd::RocPoint p;
        p.tpr = static_cast<double>(n_cr) / static_cast<double>(n_cp);
        p.fpr = n_al == 0 ? 0.0 : static_cast<double>(n_al - n_cr) / static_cast<double>(n_al);
        out.points.push_back(p);
    }
    for (std::size_t i = 1; i < out.points.size(); ++i) {
        out.auc += (out.points[i].fpr - out.points[i - 1].fpr) *
                   (out.points[i].tpr + out.points[i - 1].tpr) / 2.0;
    }
    out.auc += (1.0 - out.points.back().fpr) * out.points.back().tpr;
    return out;
}

struct Instance {
    relcpd::AlarmList alarms;
    std::vector<relcpd::Index> truths;
};

/// Up to 30 alarms (time-sorted, >= 20 apart) and 1..10 truths on [1, 1500];
/// scores drawn from a small set so ties occur.
inline Instance random_instance(relcpd::Rng& rng) {
    Instance inst;
    const auto n_truth = 1 + static_cast<long>(rng.below(10));
    for (long i = 0; i < n_truth; ++i) inst.truths.push_back(static_cast<relcpd::Index>(1 + rng.below(1500)));
    std::sort(inst.truths.begin(), inst.truths.end());
    const auto n_alarm = static_cast<long>(rng.below(31));
    relcpd::Index t = static_cast<relcpd::Index>(1 + rng.below(30));
    for (long i = 0; i < n_alarm; ++i) {
        // Bias alarms towards truths so hits are common.
        if (rng.uniform() < 0.5 && !inst.truths.empty()) {
            const auto target = inst.truths[rng.below(inst.truths.size())] +
                                static_cast<relcpd::Index>(rng.below(25)) - 12;
            t = std::max(t, target);
        }
        inst.alarms.times.push_back(t);
        inst.alarms.scores.push_back(static_cast<double>(rng.below(12)) / 4.0);
        t += 20 + static_cast<relcpd::Index>(rng.below(60));
    }
    return inst;
}

}  // namespace oracle
