#pragma once

#include <concepts>
#include <fstream>
#include <string>
#include <vector>

#include "evobench/experiment/observer.hpp"
#include "evobench/experiment/recorder.hpp"
#include "evobench/problems/suite.hpp"

namespace evobench::experiment {

/// Per-generation adaptation trace (the mu_F / mu_CR means of JADE or
/// SHADE runs). Each run appends to its own preallocated-capacity series,
/// so concurrent tasks never touch shared storage.
template <std::floating_point T>
class parameter_record final : public observer<T> {
public:
    struct entry {
        int generation;
        T mu_f;
        T mu_cr;
    };

    parameter_record(const problems::suite<T>& su, int independent_runs,
                     std::size_t capacity_hint = 1024)
        : problem_ids_(su.problem_ids()),
          instances_(su.instance_count()),
          runs_(independent_runs),
          series_(problem_ids_.size() * std::size_t(instances_) * std::size_t(runs_)) {
        for (auto& s : series_)
            s.reserve(capacity_hint);
    }

    void on_generation(const run_key& key, int generation,
                       std::span<const named_value<T>> params) override {
        T mu_f = T(-1), mu_cr = T(-1);
        for (const auto& nv : params) {
            if (nv.name == "mu_f")
                mu_f = nv.value;
            else if (nv.name == "mu_cr")
                mu_cr = nv.value;
        }
        if (mu_f < T(0) && mu_cr < T(0))
            return; // algorithm exposes no adaptation means
        series_[slot(key)].push_back({generation, mu_f, mu_cr});
    }

    const std::vector<entry>& series(int problem_ordinal, int instance_ordinal,
                                     int run_index) const {
        return series_[(std::size_t(problem_ordinal) * std::size_t(instances_) +
                        std::size_t(instance_ordinal)) *
                           std::size_t(runs_) +
                       std::size_t(run_index)];
    }

    /// problem,instance,run,generation,mu_f,mu_cr
    std::string to_csv() const {
        std::string out = "problem,instance,run,generation,mu_f,mu_cr\n";
        for (std::size_t p = 0; p < problem_ids_.size(); ++p)
            for (int i = 0; i < instances_; ++i)
                for (int r = 0; r < runs_; ++r) {
                    const std::string prefix = std::to_string(problem_ids_[p]) + "," +
                                               std::to_string(i + 1) + "," + std::to_string(r + 1) +
                                               ",";
                    for (const auto& e : series(int(p), i, r)) {
                        out += prefix;
                        out += std::to_string(e.generation);
                        out += ',';
                        out += detail::format_value(e.mu_f);
                        out += ',';
                        out += detail::format_value(e.mu_cr);
                        out += '\n';
                    }
                }
        return out;
    }

    void export_csv(const std::string& path) const {
        std::ofstream file(path, std::ios::binary);
        if (!file)
            throw std::runtime_error("parameter_record: cannot open " + path);
        const std::string csv = to_csv();
        file.write(csv.data(), std::streamsize(csv.size()));
        if (!file)
            throw std::runtime_error("parameter_record: write failed for " + path);
    }

private:
    std::size_t slot(const run_key& key) const {
        return (std::size_t(key.problem_ordinal) * std::size_t(instances_) +
                std::size_t(key.instance_ordinal)) *
                   std::size_t(runs_) +
               std::size_t(key.run_index);
    }

    std::vector<int> problem_ids_;
    int instances_;
    int runs_;
    std::vector<std::vector<entry>> series_;
};

} // namespace evobench::experiment
