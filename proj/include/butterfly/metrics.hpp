#pragma once

// Repair-access and update-cost measurements. All ratios and means are exact
// rationals so the expected values can be compared for equality.

#include <boost/rational.hpp>
#include <cstdint>
#include <map>
#include <json.hpp>
#include <string>
#include <vector>

#include "butterfly/codec.hpp"
#include "butterfly/construction.hpp"
#include "butterfly/node_id.hpp"

namespace butterfly::metrics {

using Ratio = boost::rational<std::int64_t>;

inline constexpr unsigned kReportVersion = 1;

std::string to_string(const Ratio& r);

struct NodeAccess {
  NodeId node;
  std::uint64_t elements_read = 0;
  std::uint64_t elements_total = 0;
  Ratio ratio;
};

struct AccessReport {
  NodeId failed;
  // Every surviving stored node, slot order.
  std::vector<NodeAccess> nodes;
  std::uint64_t total_read = 0;
  std::uint64_t total_available = 0;
  Ratio overall;

  std::string to_text() const;
  nlohmann::json to_json() const;
};

// Counts the rows the repair plan reads from each surviving node. Parity
// failures are rebuilt by re-encoding, which reads every information row.
AccessReport measure_repair_access(const ButterflyCode& code, NodeId failed);

struct UpdateView {
  Ratio mean;
  unsigned max = 0;
  std::uint64_t elements = 0;
};

struct UpdateReport {
  unsigned columns = 0;  // padded k
  unsigned user_columns = 0;
  // Parity elements touched by a write to each element of the padded array.
  std::map<Coord, unsigned> touches;
  // Over all rows x padded columns.
  UpdateView padded;
  // Over the stored columns only.
  UpdateView user;

  std::string to_text() const;
  nlohmann::json to_json() const;
};

UpdateReport measure_update(const CodeParams& params);

}  // namespace butterfly::metrics
