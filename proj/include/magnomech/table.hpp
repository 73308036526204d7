#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "magnomech/errors.hpp"
#include "magnomech/sweep.hpp"

namespace magnomech {

// Shortest-safe fixed format: 17 significant digits round-trips any double.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// One output column of a sweep table.
struct Column {
  std::string name;
  Quantity quantity;
  int branch = +1;  // -1 selects the -|delta_B| leg for paired negativities
};

inline std::vector<Column> quantity_columns(const SweepSpec& spec) {
  std::vector<Column> cols;
  for (Quantity q : canonical_quantities(spec.quantities)) {
    if (q == Quantity::stability_margin) continue;  // always present
    const std::string name(quantity_name(q));
    if (is_negativity(q) && spec.nonrecip_pairing) {
      cols.push_back({name + "_pos", q, +1});
      cols.push_back({name + "_neg", q, -1});
    } else {
      cols.push_back({name, q, +1});
    }
  }
  return cols;
}

inline std::vector<std::string> table_header(const SweepSpec& spec) {
  std::vector<std::string> h{axis_label(spec.axis1)};
  if (spec.axis2) h.push_back(axis_label(*spec.axis2));
  h.emplace_back("status");
  h.emplace_back("stability_margin");
  for (const auto& c : quantity_columns(spec)) h.push_back(c.name);
  return h;
}

// Missing values are written as empty fields.
inline void write_csv(const SweepResult& r, std::ostream& out) {
  const auto header = table_header(r.spec);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  const auto cols = quantity_columns(r.spec);
  auto cell = [&](const std::optional<double>& v) { out << ',' << (v ? format_number(*v) : ""); };
  for (const auto& row : r.rows) {
    out << format_number(row.axis[0]);
    if (r.spec.axis2) out << ',' << format_number(row.axis[1]);
    out << ',' << status_name(row.status);
    cell(row.margin);
    for (const auto& c : cols) cell(row_value(row, c.quantity, c.branch));
    out << '\n';
  }
}

// One JSON object per row, keys as in the CSV header, null for missing.
inline void write_json_lines(const SweepResult& r, std::ostream& out) {
  using nlohmann::json;
  const auto cols = quantity_columns(r.spec);
  auto val = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  for (const auto& row : r.rows) {
    json j = json::object();
    j[axis_label(r.spec.axis1)] = row.axis[0];
    if (r.spec.axis2) j[axis_label(*r.spec.axis2)] = row.axis[1];
    j["status"] = std::string(status_name(row.status));
    j["stability_margin"] = val(row.margin);
    for (const auto& c : cols) j[c.name] = val(row_value(row, c.quantity, c.branch));
    out << j.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// Reading

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return static_cast<int>(i);
    return -1;
  }
};

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

inline Table read_csv(std::istream& in) {
  Table t;
  std::string line;
  if (!std::getline(in, line) || line.empty()) throw ParseError("missing CSV header");
  if (line.back() == '\r') line.pop_back();
  t.header = split_csv_line(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != t.header.size())
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(t.header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    t.rows.push_back(std::move(fields));
  }
  return t;
}

// Empty field -> nullopt; anything else must parse completely as a number.
inline std::optional<double> parse_field(const std::string& text) {
  if (text.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("non-numeric field '" + text + "'");
}

// ---------------------------------------------------------------------------
// Peaks

struct PeakReport {
  std::string quantity;
  std::optional<double> group;       // axis2 value, when the table has two axes
  std::optional<double> argmax;      // axis1 value at the maximum
  std::optional<double> max;
  std::vector<std::pair<double, double>> windows;  // axis1 ranges with value >= 99% of max
};

inline constexpr double peak_window_fraction = 0.99;

// Peak statistics of every quantity column of a sweep table. Axis columns are
// the ones whose header carries a "[unit]" suffix.
inline std::vector<PeakReport> find_peaks(const Table& t) {
  std::vector<int> axes;
  for (std::size_t i = 0; i < t.header.size(); ++i)
    if (t.header[i].find('[') != std::string::npos) axes.push_back(static_cast<int>(i));
  if (axes.empty() || axes.size() > 2) throw ParseError("table must have one or two axis columns");
  const int status_col = t.column("status");

  std::vector<int> quantity_cols;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    const int c = static_cast<int>(i);
    if (std::find(axes.begin(), axes.end(), c) != axes.end() || c == status_col ||
        t.header[i] == "stability_margin")
      continue;
    quantity_cols.push_back(c);
  }

  // Parse everything up front so malformed numbers surface as ParseError.
  const std::size_t n = t.rows.size();
  std::vector<std::vector<std::optional<double>>> values(t.header.size());
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    if (static_cast<int>(c) == status_col) continue;
    values[c].reserve(n);
    for (const auto& row : t.rows) values[c].push_back(parse_field(row[c]));
  }
  for (int a : axes)
    for (const auto& v : values[a])
      if (!v) throw ParseError("missing axis value in column '" + t.header[a] + "'");

  // Groups of rows sharing the same axis2 value, in order of appearance.
  std::vector<std::pair<std::optional<double>, std::vector<std::size_t>>> groups;
  for (std::size_t r = 0; r < n; ++r) {
    std::optional<double> key;
    if (axes.size() == 2) key = values[axes[1]][r];
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == key; });
    if (it == groups.end()) groups.push_back({key, {r}});
    else it->second.push_back(r);
  }

  std::vector<PeakReport> out;
  for (int c : quantity_cols) {
    for (const auto& [key, rows] : groups) {
      PeakReport rep;
      rep.quantity = t.header[c];
      rep.group = key;
      for (std::size_t r : rows) {
        const auto& v = values[c][r];
        if (v && (!rep.max || *v > *rep.max)) {
          rep.max = *v;
          rep.argmax = *values[axes[0]][r];
        }
      }
      if (rep.max) {
        const double m = *rep.max;
        const double threshold = m >= 0.0 ? peak_window_fraction * m : m / peak_window_fraction;
        std::optional<std::pair<double, double>> open;
        for (std::size_t r : rows) {
          const auto& v = values[c][r];
          const double x = *values[axes[0]][r];
          if (v && *v >= threshold) {
            if (open) open->second = x;
            else open = std::pair{x, x};
          } else if (open) {
            rep.windows.push_back(*open);
            open.reset();
          }
        }
        if (open) rep.windows.push_back(*open);
      }
      out.push_back(std::move(rep));
    }
  }
  return out;
}

}  // namespace magnomech
