#pragma once

#include <string>
#include <vector>

#include "ceabc/integrate.hpp"

namespace ceabc {

struct QoIBlock {
    std::string label;
    std::vector<double> values;
};

// Calibration target: labeled data blocks plus convex weights (sum to 1).
// Every weighted block must have a nonzero Euclidean norm.
struct QoITarget {
    std::vector<QoIBlock> blocks;
    std::vector<double> weights;

    void validate() const;  // throws ShapeMismatch / ZeroDataNorm / Error
};

// Model output shaped like a QoITarget: one series per block, same order.
using ModelSeries = std::vector<std::vector<double>>;

// Weighted sum of squared relative block errors:
//   J = sum_k w_k * ||data_k - model_k||^2 / ||data_k||^2.
// Zero iff every positively weighted block matches exactly.
double misfit(const ModelSeries& y_model, const QoITarget& y_data);

// Two-block hospitalization/deaths target with weights (omega, 1-omega).
QoITarget make_target(std::vector<double> hospitalized, std::vector<double> total_deaths,
                      double omega);

}  // namespace ceabc
