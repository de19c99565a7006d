#include "butterfly/metrics.hpp"

#include <algorithm>
#include <sstream>

namespace butterfly::metrics {

namespace {

UpdateView summarize(const std::map<Coord, unsigned>& touches, Column columns) {
  UpdateView view;
  std::int64_t sum = 0;
  for (const auto& [c, n] : touches) {
    if (c.col >= columns) continue;
    sum += n;
    view.max = std::max(view.max, n);
    ++view.elements;
  }
  view.mean = view.elements ? Ratio(sum, static_cast<std::int64_t>(view.elements)) : Ratio(0);
  return view;
}

nlohmann::json view_json(const UpdateView& v) {
  return {{"mean", to_string(v.mean)}, {"max", v.max}, {"elements", v.elements}};
}

}  // namespace

std::string to_string(const Ratio& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

AccessReport measure_repair_access(const ButterflyCode& code, NodeId failed) {
  const RepairPlan plan = code.repair_plan(failed);
  const std::uint64_t rows = code.params().rows();
  AccessReport report;
  report.failed = failed;
  for (const auto& [node, read] : plan.reads) {
    NodeAccess access{node, read.size(), rows,
                      Ratio(static_cast<std::int64_t>(read.size()), static_cast<std::int64_t>(rows))};
    report.total_read += access.elements_read;
    report.total_available += access.elements_total;
    report.nodes.push_back(access);
  }
  std::sort(report.nodes.begin(), report.nodes.end(), [&](const NodeAccess& a, const NodeAccess& b) {
    return a.node.slot(code.params()) < b.node.slot(code.params());
  });
  report.overall = report.total_available
                       ? Ratio(static_cast<std::int64_t>(report.total_read),
                               static_cast<std::int64_t>(report.total_available))
                       : Ratio(0);
  return report;
}

std::string AccessReport::to_text() const {
  std::ostringstream out;
  out << "failed_node=" << failed.to_string() << '\n';
  for (const NodeAccess& n : nodes) {
    out << "read." << n.node.to_string() << '=' << n.elements_read << '/' << n.elements_total
        << " ratio=" << to_string(n.ratio) << '\n';
  }
  out << "read.total=" << total_read << '/' << total_available << " ratio=" << to_string(overall) << '\n';
  return out.str();
}

nlohmann::json AccessReport::to_json() const {
  nlohmann::json nodes_json = nlohmann::json::array();
  for (const NodeAccess& n : nodes) {
    nodes_json.push_back({{"node", n.node.to_string()},
                          {"elements_read", n.elements_read},
                          {"elements_total", n.elements_total},
                          {"ratio", to_string(n.ratio)}});
  }
  return {{"report", "repair_access"},
          {"version", kReportVersion},
          {"failed_node", failed.to_string()},
          {"nodes", nodes_json},
          {"total_read", total_read},
          {"total_available", total_available},
          {"ratio", to_string(overall)}};
}

UpdateReport measure_update(const CodeParams& params) {
  UpdateReport report;
  report.columns = params.columns();
  report.user_columns = params.user_columns();
  for (Row r = 0; r < params.rows(); ++r) {
    for (Column j = 0; j < params.columns(); ++j) {
      report.touches[{r, j}] = static_cast<unsigned>(update_parity_coords(params, {r, j}).size());
    }
  }
  report.padded = summarize(report.touches, params.columns());
  report.user = summarize(report.touches, params.user_columns());
  return report;
}

std::string UpdateReport::to_text() const {
  std::ostringstream out;
  out << "columns=" << columns << '\n'
      << "user_columns=" << user_columns << '\n'
      << "update.mean=" << to_string(padded.mean) << '\n'
      << "update.max=" << padded.max << '\n'
      << "update.user_columns.mean=" << to_string(user.mean) << '\n'
      << "update.user_columns.max=" << user.max << '\n';
  return out.str();
}

nlohmann::json UpdateReport::to_json() const {
  return {{"report", "update"},
          {"version", kReportVersion},
          {"columns", columns},
          {"user_columns", user_columns},
          {"padded", view_json(padded)},
          {"user", view_json(user)}};
}

}  // namespace butterfly::metrics
