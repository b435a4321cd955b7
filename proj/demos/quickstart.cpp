// Minimal library tour: compose a SHADE engine with the builder, run it
// on one seeded suite problem through the experiment harness, and print
// the convergence checkpoints.

#include <cstdio>
#include <memory>

#include "evobench/evobench.hpp"

using namespace evobench;

int main() {
    const auto suite = problems::suite_builder<double>()
                           .dim(10)
                           .problem_ids({4}) // shifted-rotated rastrigin
                           .instance_count(1)
                           .seed(42)
                           .build();

    const auto shade = [](experiment::run_handle<double>& h) {
        auto engine = de::de_builder<double>()
                          .mutation(std::make_unique<de::ttpb1_mutation<double>>(0.11, true))
                          .crossover(std::make_unique<de::binomial_crossover<double>>())
                          .repair(std::make_unique<de::midpoint_target_repair<double>>())
                          .parameter(std::make_unique<de::shade_parameter<double>>(100))
                          .population(de::population_policy::fixed())
                          .archive_rate(1.0)
                          .build();
        engine.optimize(h, h.lb(), h.ub(), 100, h.dim(), h.max_fes(), h.rng(),
                        [&h](int gen, std::span<const named_value<double>> params) {
                            h.notify_generation(gen, params);
                        });
    };

    experiment::best_so_far_record<double> recorder(suite, 1, 20000, 2000);
    experiment::bench_options options;
    options.independent_runs = 1;
    options.max_fes = 20000;
    options.parallel = false;
    options.master_seed = 7;
    experiment::evo_bench<double>(shade, suite, recorder, options);

    std::printf("SHADE on %s (bias %.0f):\n", suite.at(0, 0).name().c_str(), suite.at(0, 0).bias());
    for (int c = 0; c < recorder.checkpoint_count(); ++c)
        std::printf("  after %5lld evaluations: best %.6f\n",
                    (long long)(c + 1) * recorder.interval(), recorder.at(0, 0, 0, c));
    return 0;
}
