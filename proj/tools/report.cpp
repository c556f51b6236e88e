#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace revmc::cli {

std::string format_double(double value, int digits) {
  if (!std::isfinite(value)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

namespace {

bool is_scalar_array(const Report& node) {
  if (!node.is_array()) return false;
  for (const auto& item : node) {
    if (item.is_structured()) return false;
  }
  return true;
}

void write_scalar(std::ostream& out, const Report& node, int digits) {
  if (node.is_number_float()) {
    out << format_double(node.get<double>(), digits);
  } else {
    out << node.dump();
  }
}

void write_json_node(std::ostream& out, const Report& node, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  if (node.is_object()) {
    if (node.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    bool first = true;
    for (const auto& [key, value] : node.items()) {
      if (!first) out << ",\n";
      first = false;
      out << pad << Report(key).dump() << ": ";
      write_json_node(out, value, depth + 1);
    }
    out << "\n" << close_pad << "}";
  } else if (node.is_array()) {
    if (node.empty() || is_scalar_array(node)) {
      out << "[";
      for (std::size_t i = 0; i < node.size(); ++i) {
        if (i) out << ", ";
        write_scalar(out, node[i], 17);
      }
      out << "]";
      return;
    }
    out << "[\n";
    for (std::size_t i = 0; i < node.size(); ++i) {
      if (i) out << ",\n";
      out << pad;
      write_json_node(out, node[i], depth + 1);
    }
    out << "\n" << close_pad << "]";
  } else {
    write_scalar(out, node, 17);
  }
}

void write_text_node(std::ostream& out, const Report& node, const std::string& path) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      write_text_node(out, value, path.empty() ? key : path + "." + key);
    }
    return;
  }
  if (node.is_array()) {
    if (is_scalar_array(node)) {
      out << path << ": [";
      for (std::size_t i = 0; i < node.size(); ++i) {
        if (i) out << ", ";
        write_scalar(out, node[i], 10);
      }
      out << "]\n";
    } else {
      for (std::size_t i = 0; i < node.size(); ++i) {
        write_text_node(out, node[i], path + "[" + std::to_string(i) + "]");
      }
    }
    return;
  }
  out << path << ": ";
  if (node.is_string()) {
    out << node.get<std::string>() << "\n";
  } else {
    write_scalar(out, node, 10);
    out << "\n";
  }
}

}  // namespace

void write_json(std::ostream& out, const Report& report) {
  write_json_node(out, report, 0);
  out << "\n";
}

void write_text(std::ostream& out, const Report& report) { write_text_node(out, report, ""); }

void write_report(std::ostream& out, const Report& report, Format format) {
  if (format == Format::json) {
    write_json(out, report);
  } else {
    write_text(out, report);
  }
}

Report to_report(const Eigen::VectorXd& values) {
  Report out = Report::array();
  for (Eigen::Index i = 0; i < values.size(); ++i) out.push_back(values[i]);
  return out;
}

Report to_report(const std::vector<StateIndex>& indices) {
  Report out = Report::array();
  for (StateIndex i : indices) out.push_back(i);
  return out;
}

Report finite_or_null(double value) { return std::isfinite(value) ? Report(value) : Report(); }

}  // namespace revmc::cli
