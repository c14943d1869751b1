#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "algp/errors.hpp"

namespace algp {

// Deterministic scalar-output model with a shared evaluation counter.
class ModelFunction {
 public:
  using Evaluator = std::function<double(const Eigen::VectorXd&)>;

  ModelFunction(std::string name, int dim, Evaluator fn)
      : name_(std::move(name)),
        dim_(dim),
        fn_(std::move(fn)),
        calls_(std::make_shared<std::atomic<std::int64_t>>(0)) {}

  double operator()(const Eigen::VectorXd& x) const {
    if (x.size() != dim_) {
      throw DimensionMismatch("ModelFunction: input dimension mismatch");
    }
    calls_->fetch_add(1, std::memory_order_relaxed);
    return fn_(x);
  }

  const std::string& name() const { return name_; }
  int dimension() const { return dim_; }
  std::int64_t calls() const { return calls_->load(std::memory_order_relaxed); }
  void reset_calls() const { calls_->store(0, std::memory_order_relaxed); }

 private:
  std::string name_;
  int dim_;
  Evaluator fn_;
  std::shared_ptr<std::atomic<std::int64_t>> calls_;
};

}  // namespace algp
