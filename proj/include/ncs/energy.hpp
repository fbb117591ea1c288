// energy.hpp - per-node transmission ledger shared by the repair and
// simulation modules. The headline unit is one data packet over one hop;
// control traffic is tracked separately and never added to total_tx.
#pragma once

#include <cmath>
#include <map>

namespace ncs {

struct EnergyReport {
    std::map<int, int> per_node_tx;
    std::map<int, int> per_node_rx;
    int control_tx = 0;
    int total_tx = 0;
    double stddev_tx = 0.0;

    // One data packet sent by `from` and received by `to`.
    void transmit(int from, int to)
    {
        ++per_node_tx[from];
        ++per_node_rx[to];
        ++total_tx;
    }

    void merge(const EnergyReport& other)
    {
        for (const auto& [node, tx] : other.per_node_tx) per_node_tx[node] += tx;
        for (const auto& [node, rx] : other.per_node_rx) per_node_rx[node] += rx;
        control_tx += other.control_tx;
        total_tx += other.total_tx;
    }

    // Population stddev over the transmitting nodes' counts.
    void finalize()
    {
        if (per_node_tx.empty()) {
            stddev_tx = 0.0;
            return;
        }
        double mean = 0.0;
        for (const auto& [node, tx] : per_node_tx) mean += tx;
        mean /= static_cast<double>(per_node_tx.size());
        double var = 0.0;
        for (const auto& [node, tx] : per_node_tx) {
            const double d = tx - mean;
            var += d * d;
        }
        stddev_tx = std::sqrt(var / static_cast<double>(per_node_tx.size()));
    }
};

} // namespace ncs
