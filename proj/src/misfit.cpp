#include "ceabc/misfit.hpp"

#include <cmath>
#include <string>

#include "ceabc/errors.hpp"

namespace ceabc {

void QoITarget::validate() const {
    if (blocks.size() != weights.size())
        throw ShapeMismatch("target: " + std::to_string(blocks.size()) + " blocks vs " +
                            std::to_string(weights.size()) + " weights");
    if (blocks.empty()) throw Error("target: no blocks");
    double wsum = 0.0;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        if (weights[k] < 0.0)
            throw Error("target: negative weight for block '" + blocks[k].label + "'");
        wsum += weights[k];
        if (blocks[k].values.empty())
            throw Error("target: empty series in block '" + blocks[k].label + "'");
    }
    if (std::abs(wsum - 1.0) > 1e-9)
        throw Error("target: weights sum to " + std::to_string(wsum) + ", expected 1");
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        if (weights[k] == 0.0) continue;
        double norm2 = 0.0;
        for (double v : blocks[k].values) norm2 += v * v;
        if (norm2 == 0.0)
            throw ZeroDataNorm("target: weighted block '" + blocks[k].label +
                               "' has all-zero data");
    }
}

double misfit(const ModelSeries& y_model, const QoITarget& y_data) {
    y_data.validate();
    if (y_model.size() != y_data.blocks.size())
        throw ShapeMismatch("misfit: " + std::to_string(y_model.size()) +
                            " model blocks vs " + std::to_string(y_data.blocks.size()) +
                            " data blocks");

    double j = 0.0;
    for (std::size_t k = 0; k < y_data.blocks.size(); ++k) {
        const auto& data = y_data.blocks[k].values;
        const auto& model = y_model[k];
        if (model.size() != data.size())
            throw ShapeMismatch("misfit: block '" + y_data.blocks[k].label + "' length " +
                                std::to_string(model.size()) + " vs data length " +
                                std::to_string(data.size()));
        if (y_data.weights[k] == 0.0) continue;

        double err2 = 0.0, norm2 = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const double d = data[i] - model[i];
            err2 += d * d;
            norm2 += data[i] * data[i];
        }
        j += y_data.weights[k] * err2 / norm2;
    }
    return j;
}

QoITarget make_target(std::vector<double> hospitalized, std::vector<double> total_deaths,
                      double omega) {
    if (omega < 0.0 || omega > 1.0)
        throw Error("make_target: omega must lie in [0,1], got " + std::to_string(omega));
    QoITarget t;
    t.blocks.push_back({"hospitalized", std::move(hospitalized)});
    t.blocks.push_back({"total_deaths", std::move(total_deaths)});
    t.weights = {omega, 1.0 - omega};
    return t;
}

}  // namespace ceabc
