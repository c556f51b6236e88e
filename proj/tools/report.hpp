#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "revmc/hilbert.hpp"

namespace revmc::cli {

using Report = nlohmann::ordered_json;

enum class Format { text, json };

/// JSON with every floating-point value printed to 17 significant digits,
/// two-space indent, keys in insertion order. Non-finite numbers become null.
void write_json(std::ostream& out, const Report& report);

/// One `path: value` line per leaf, nested keys joined with '.'.
void write_text(std::ostream& out, const Report& report);

void write_report(std::ostream& out, const Report& report, Format format);

std::string format_double(double value, int digits = 17);

Report to_report(const Eigen::VectorXd& values);
Report to_report(const std::vector<StateIndex>& indices);

/// Finite doubles as numbers, infinities as null.
Report finite_or_null(double value);

}  // namespace revmc::cli
