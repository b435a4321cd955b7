#pragma once

#include <charconv>
#include <concepts>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include "evobench/common.hpp"
#include "evobench/experiment/observer.hpp"
#include "evobench/problems/suite.hpp"

namespace evobench::experiment {

namespace detail {

/// Shortest-round-trip decimal form; identical tables serialize to
/// identical bytes.
template <std::floating_point T>
inline std::string format_value(T v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace detail

/// Best-so-far recorder. The whole (problem x instance x run x checkpoint)
/// grid is preallocated at construction; each task writes only its own
/// run's slots, which is the entire thread-safety story — no locks touch
/// the evaluation path. Slot k holds the running minimum after exactly
/// (k+1) * interval evaluations; a run that stops early fills its tail
/// from the final running minimum.
template <std::floating_point T>
class best_so_far_record final : public observer<T> {
public:
    best_so_far_record(const problems::suite<T>& su, int independent_runs, long long max_fes,
                       long long interval)
        : suite_name_(su.name()),
          dim_(su.dim()),
          problem_ids_(su.problem_ids()),
          instances_(su.instance_count()),
          runs_(independent_runs),
          max_fes_(max_fes),
          interval_(interval),
          checkpoints_(int(max_fes / interval)) {
        evobench::detail::require(interval > 0, "best_so_far_record: interval must be positive");
        evobench::detail::require(independent_runs > 0,
                                  "best_so_far_record: runs must be positive");
        evobench::detail::require(checkpoints_ > 0,
                                  "best_so_far_record: max_fes must cover one interval");
        const std::size_t run_count =
            problem_ids_.size() * std::size_t(instances_) * std::size_t(runs_);
        grid_.assign(run_count * std::size_t(checkpoints_),
                     std::numeric_limits<T>::quiet_NaN());
        running_min_.assign(run_count, std::numeric_limits<T>::infinity());
        next_slot_.assign(run_count, 0);
        last_fes_.assign(run_count, 0);
    }

    int checkpoint_count() const { return checkpoints_; }
    long long interval() const { return interval_; }

    void on_evaluate(const run_key& key, long long fes, T fitness) override {
        const std::size_t run = run_slot(key);
        if (fitness < running_min_[run])
            running_min_[run] = fitness;
        last_fes_[run] = fes;
        int& next = next_slot_[run];
        while (next < checkpoints_ && fes >= ((long long)(next) + 1) * interval_) {
            grid_[run * std::size_t(checkpoints_) + std::size_t(next)] = running_min_[run];
            ++next;
        }
    }

    void on_run_end(const run_key& key) override {
        const std::size_t run = run_slot(key);
        int& next = next_slot_[run];
        while (next < checkpoints_) {
            grid_[run * std::size_t(checkpoints_) + std::size_t(next)] = running_min_[run];
            ++next;
        }
    }

    T at(int problem_ordinal, int instance_ordinal, int run_index, int checkpoint) const {
        return grid_[run_slot_raw(problem_ordinal, instance_ordinal, run_index) *
                         std::size_t(checkpoints_) +
                     std::size_t(checkpoint)];
    }

    T final_value(int problem_ordinal, int instance_ordinal, int run_index) const {
        return at(problem_ordinal, instance_ordinal, run_index, checkpoints_ - 1);
    }

    long long observed_evaluations(int problem_ordinal, int instance_ordinal,
                                   int run_index) const {
        return last_fes_[run_slot_raw(problem_ordinal, instance_ordinal, run_index)];
    }

    /// suite,problem,instance,dim,run,fes,best_so_far — rows sorted by
    /// (problem, instance, run, fes), LF endings, exactly one trailing LF.
    std::string to_csv() const {
        std::string out = "suite,problem,instance,dim,run,fes,best_so_far\n";
        for (std::size_t p = 0; p < problem_ids_.size(); ++p)
            for (int i = 0; i < instances_; ++i)
                for (int r = 0; r < runs_; ++r) {
                    const std::string prefix = suite_name_ + "," +
                                               std::to_string(problem_ids_[p]) + "," +
                                               std::to_string(i + 1) + "," + std::to_string(dim_) +
                                               "," + std::to_string(r + 1) + ",";
                    for (int c = 0; c < checkpoints_; ++c) {
                        out += prefix;
                        out += std::to_string(((long long)(c) + 1) * interval_);
                        out += ',';
                        out += detail::format_value(at(int(p), i, r, c));
                        out += '\n';
                    }
                }
        return out;
    }

    void export_csv(const std::string& path) const {
        std::ofstream file(path, std::ios::binary);
        if (!file)
            throw std::runtime_error("best_so_far_record: cannot open " + path);
        const std::string csv = to_csv();
        file.write(csv.data(), std::streamsize(csv.size()));
        if (!file)
            throw std::runtime_error("best_so_far_record: write failed for " + path);
    }

private:
    std::size_t run_slot(const run_key& key) const {
        return run_slot_raw(key.problem_ordinal, key.instance_ordinal, key.run_index);
    }

    std::size_t run_slot_raw(int p, int i, int r) const {
        return (std::size_t(p) * std::size_t(instances_) + std::size_t(i)) * std::size_t(runs_) +
               std::size_t(r);
    }

    std::string suite_name_;
    int dim_;
    std::vector<int> problem_ids_;
    int instances_;
    int runs_;
    long long max_fes_;
    long long interval_;
    int checkpoints_;
    std::vector<T> grid_;
    std::vector<T> running_min_;
    std::vector<int> next_slot_;
    std::vector<long long> last_fes_;
};

} // namespace evobench::experiment
