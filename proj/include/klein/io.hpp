#pragma once

// JSON and CSV encodings of reports, transcripts and census rows.

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "klein/census.hpp"
#include "klein/epimorphism.hpp"
#include "klein/fixedpoints.hpp"
#include "klein/oracle.hpp"

namespace klein {

using json = nlohmann::ordered_json;

inline json to_json(const ValidationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  json j = {{"valid", r.valid}, {"checks", checks}};
  j["kernel_genus"] = r.kernel_genus ? json(*r.kernel_genus) : json(nullptr);
  return j;
}

inline json to_json(const FixedPointReport& r) {
  json per_power = json::array();
  for (const auto& p : r.per_power) {
    per_power.push_back({{"i", p.i}, {"order", p.order}, {"isolated_count", p.isolated_count}});
  }
  json j = {{"modulus", r.modulus}, {"kernel_genus", r.kernel_genus}, {"per_power", per_power}};
  if (r.involution) {
    const auto& inv = *r.involution;
    json cycles = json::array();
    for (const auto& c : inv.per_cycle) {
      cycles.push_back({{"v", c.v}, {"oval_count", c.oval_count}, {"twisted", c.twisted}});
    }
    j["involution"] = {{"oval_total", inv.oval_total},     {"isolated_total", inv.isolated_total},
                       {"per_cycle", cycles},              {"scherrer_lhs", inv.scherrer_lhs},
                       {"scherrer_rhs", inv.scherrer_rhs}, {"scherrer_equality", inv.scherrer_equality}};
  } else {
    j["involution"] = nullptr;
  }
  return j;
}

inline json to_json(const oracle::OracleTranscript& t) {
  json cycles = json::array();
  for (const auto& c : t.per_cycle) {
    cycles.push_back({{"v", c.v},
                      {"delta", c.delta},
                      {"epsilon", c.epsilon},
                      {"class_count_doublecoset", c.class_count_doublecoset},
                      {"class_count_exponent", c.class_count_exponent},
                      {"twisted_by_theta_prime", c.twisted_by_theta_prime}});
  }
  json fixed = json::array();
  for (const auto& f : t.per_power_fixed) fixed.push_back({{"i", f.i}, {"j", f.j}, {"fixed", f.fixed}});
  json j = {{"per_cycle", cycles}, {"per_power_fixed", fixed}, {"agreement", t.agreement}};
  if (!t.agreement) j["first_disagreement"] = t.first_disagreement;
  return j;
}

inline json to_json(const CyclicEpimorphism& e) {
  return {{"signature", format_signature(e.sig)},
          {"modulus", e.modulus},
          {"x_images", e.x_images},
          {"e_images", e.e_images},
          {"c_images", e.c_images},
          {"orient_images", e.orient_images},
          {"map", format_map(e)}};
}

// Per-cycle twist data, e.g. "c1:2u;c2:1t".
inline std::string twist_string(const FixedPointReport& r) {
  if (!r.involution) return "";
  std::string out;
  for (std::size_t j = 0; j < r.involution->per_cycle.size(); ++j) {
    const auto& c = r.involution->per_cycle[j];
    if (j) out += ';';
    out += "c" + std::to_string(j + 1) + ":" + std::to_string(c.oval_count) + (c.twisted ? "t" : "u");
  }
  return out;
}

inline json to_json(const CensusRow& row) {
  json j = {{"signature", format_signature(row.signature())},
            {"modulus", row.modulus()},
            {"images", format_map(row.epi)},
            {"kernel_genus", row.kernel_genus},
            {"report", to_json(row.report)},
            {"scherrer_equality", row.scherrer_equality},
            {"canonical", row.canonical},
            {"shadow_key", row.shadow_key()}};
  if (row.oracle_agreement) j["oracle_agreement"] = *row.oracle_agreement;
  return j;
}

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline constexpr std::string_view kCsvHeader = "signature,M,images,p,F,V,twists,scherrer_slack,canonical";

// F, V and scherrer_slack are empty when M is odd (no involution).
inline std::string csv_row(const CensusRow& row) {
  const auto& r = row.report;
  std::string f, v, slack;
  if (r.involution) {
    f = std::to_string(r.involution->isolated_total);
    v = std::to_string(r.involution->oval_total);
    slack = std::to_string(scherrer_status(r)->slack);
  }
  return csv_field(format_signature(row.signature())) + "," + std::to_string(row.modulus()) + "," +
         csv_field(format_map(row.epi)) + "," + std::to_string(row.kernel_genus) + "," + f + "," + v + "," +
         csv_field(twist_string(r)) + "," + slack + "," + (row.canonical ? "true" : "false");
}

// FNV-1a over every emitted line (newline included).
class Checksum {
 public:
  void add_line(std::string_view line) {
    for (char c : line) mix(static_cast<unsigned char>(c));
    mix('\n');
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
    return buf;
  }

 private:
  void mix(unsigned char c) {
    state_ ^= c;
    state_ *= 0x100000001b3ULL;
  }
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

enum class CensusFormat { Csv, JsonLines };

// Writes rows as they are produced and appends a trailer with the row count
// and the checksum of all preceding lines.
class CensusWriter {
 public:
  CensusWriter(std::ostream& os, CensusFormat format) : os_(os), format_(format) {
    if (format_ == CensusFormat::Csv) emit(std::string(kCsvHeader));
  }

  void write(const CensusRow& row) {
    emit(format_ == CensusFormat::Csv ? csv_row(row) : to_json(row).dump());
    ++rows_;
  }

  void finish() {
    if (format_ == CensusFormat::Csv) {
      os_ << "#trailer,rows=" << rows_ << ",checksum=fnv1a64:" << sum_.hex() << '\n';
    } else {
      json t = {{"trailer", true}, {"rows", rows_}, {"checksum", "fnv1a64:" + sum_.hex()}};
      os_ << t.dump() << '\n';
    }
    os_.flush();
  }

  std::size_t rows() const { return rows_; }

 private:
  void emit(const std::string& line) {
    sum_.add_line(line);
    os_ << line << '\n';
  }

  std::ostream& os_;
  CensusFormat format_;
  Checksum sum_;
  std::size_t rows_ = 0;
};

}  // namespace klein
