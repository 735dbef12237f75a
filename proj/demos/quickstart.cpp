// Generates a small synthetic benchmark with two overlapping dimensions,
// then walks the three analyses and prints their headline numbers.

#include <cstdio>

#include "redbench/redbench.hpp"

int main() {
    using namespace redbench;

    SynthSpec spec;
    spec.benchmark_id = "demo";
    spec.seed = 1;
    spec.noise = 0.3;
    spec.discrimination = 1.7;
    spec.abilities = sample_abilities(40, 2, 1.0, 2);
    spec.dimensions = {
        {"ocr", {1.0, 0.0}, 120, 1.0},
        {"doc_reading", {0.95, 0.05}, 120, 1.0},
        {"spatial", {0.0, 1.0}, 120, 1.0},
    };
    auto records = generate(spec);

    auto instances = build_matrix(records, "demo", Axis::Instance).matrix;
    auto selected = select_models(instances, SelectionMode::All);
    auto dims = build_matrix(records, "demo", Axis::Dimension)
                    .matrix.restrict_rows(selected.selection.selected_ids);

    auto matrix = pairwise_matrix(dims, Metric::SRCC, selected.selection);
    std::printf("dimension redundancy (SRCC)\n");
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        std::printf("  rho(%-12s) = %+.3f\n", matrix.item_ids[i].c_str(),
                    matrix.per_item[i].value);
    }
    std::printf("  overall rho_BI  = %+.3f\n", matrix.overall.value);

    for (const auto& pair : flag_redundant_pairs(matrix, 0.95)) {
        std::printf("  flagged: %s ~ %s (%.3f)\n",
                    matrix.item_ids[pair.i].c_str(),
                    matrix.item_ids[pair.j].c_str(), pair.value);
    }

    SamplingPlan plan{default_ratio_grid(), kDefaultTrials, 42, Metric::SRCC};
    auto c = curve(selected.matrix, plan, selected.selection);
    std::printf("\ninstance redundancy (SRCC, T=%d)\n", plan.trials);
    for (const auto& p : c.points) {
        std::printf("  %5.0f%%  mean %.4f  std %.4f\n", p.ratio * 100.0,
                    p.mean_corr, p.std_corr);
    }
    if (c.minimal_sufficient_ratio) {
        std::printf("  sufficient ratio at %.2f threshold: %.0f%%\n",
                    c.threshold, *c.minimal_sufficient_ratio * 100.0);
    }
    return 0;
}
