#pragma once

// Command-line front end: analyze, enumerate, census, verify, max-order.
//
// Exit codes: 0 success/agreement, 2 parse or config error,
// 3 oracle disagreement, 4 validation failure.

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "klein/census.hpp"
#include "klein/io.hpp"

namespace klein::cli {

enum class Subcommand { Analyze, Enumerate, Census, Verify, MaxOrder };
enum class Format { Table, Json, Csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitDisagreement = 3;
inline constexpr int kExitInvalid = 4;

struct CliConfig {
  Subcommand subcommand = Subcommand::Analyze;
  std::string signature;
  Int order = 0;
  Int max_order = 0;
  std::string map;
  Format format = Format::Table;
  bool up_to_aut = false;
  bool verify = false;
  bool all_v = false;
  Int max_genus = 12;
  Int genus = 0;
  Int genus_cap = kDefaultMaxOrderGenusCap;
  unsigned workers = 1;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void print_validation_table(std::ostream& out, const ValidationReport& r) {
  for (const auto& c : r.checks) {
    out << "  " << std::left << std::setw(22) << c.name << (c.pass ? "pass  " : "FAIL  ") << c.detail << '\n';
  }
}

inline void print_report_table(std::ostream& out, const FixedPointReport& r) {
  out << "M = " << r.modulus << ", kernel genus p = " << r.kernel_genus << '\n';
  out << "  power  order  isolated fixed points\n";
  for (const auto& p : r.per_power) {
    out << "  t^" << std::left << std::setw(4) << p.i << std::right << std::setw(6) << p.order << std::setw(8)
        << p.isolated_count << '\n';
  }
  if (!r.involution) {
    out << "M odd: no involution\n";
    return;
  }
  const auto& inv = *r.involution;
  out << "involution t^" << r.modulus / 2 << ": F = " << inv.isolated_total << ", V = " << inv.oval_total << '\n';
  for (std::size_t j = 0; j < inv.per_cycle.size(); ++j) {
    const auto& c = inv.per_cycle[j];
    out << "  cycle " << j + 1 << ": v = " << c.v << ", " << c.oval_count << (c.twisted ? " twisted" : " untwisted")
        << (c.oval_count == 1 ? " oval" : " ovals") << '\n';
  }
  out << "Scherrer: " << inv.scherrer_lhs << "/" << inv.scherrer_rhs
      << (inv.scherrer_equality ? " (equality)" : "") << '\n';
}

inline CyclicEpimorphism parse_epimorphism(const CliConfig& cfg) {
  if (cfg.order <= 0) throw ConfigError("--order must be a positive integer");
  NecSignature sig = parse_signature(cfg.signature);
  return parse_map(sig, cfg.order, cfg.map);
}

inline int run_analyze(const CliConfig& cfg, std::ostream& out) {
  CyclicEpimorphism epi = parse_epimorphism(cfg);
  ValidationReport vr = validate(epi);
  if (cfg.format == Format::Json) {
    json j = {{"validation", to_json(vr)}};
    j["report"] = vr.valid ? to_json(full_report(epi)) : json(nullptr);
    out << j.dump(2) << '\n';
  } else {
    out << format_signature(epi.sig) << "  M = " << epi.modulus << "  " << format_map(epi) << '\n';
    print_validation_table(out, vr);
    if (vr.valid) print_report_table(out, full_report(epi));
  }
  return vr.valid ? kExitOk : kExitInvalid;
}

inline int run_enumerate(const CliConfig& cfg, std::ostream& out) {
  if (cfg.order <= 0) throw ConfigError("--order must be a positive integer");
  NecSignature sig = parse_signature(cfg.signature);
  auto epis = enumerate_epimorphisms(sig, cfg.order, cfg.up_to_aut);
  switch (cfg.format) {
    case Format::Json: {
      json arr = json::array();
      for (const auto& e : epis) arr.push_back(to_json(e));
      out << arr.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      out << "signature,M,images,canonical\n";
      for (const auto& e : epis) {
        out << csv_field(format_signature(e.sig)) << "," << e.modulus << "," << csv_field(format_map(e)) << ","
            << (is_canonical(e) ? "true" : "false") << '\n';
      }
      break;
    case Format::Table:
      for (const auto& e : epis) out << format_map(e) << '\n';
      out << epis.size() << " epimorphism(s)\n";
      break;
  }
  return kExitOk;
}

inline std::vector<Int> moduli_for(const CliConfig& cfg) {
  std::vector<Int> moduli;
  if (cfg.order > 0) {
    moduli.push_back(cfg.order);
  } else if (cfg.max_order >= 2) {
    for (Int m = 2; m <= cfg.max_order; ++m) moduli.push_back(m);
  } else {
    throw ConfigError("one of --order or --max-order (>= 2) is required");
  }
  return moduli;
}

inline int run_census(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  CensusOptions opts;
  opts.moduli = moduli_for(cfg);
  opts.max_genus = cfg.max_genus;
  opts.up_to_aut = cfg.up_to_aut;
  opts.verify = cfg.verify;
  opts.workers = cfg.workers;
  auto rows = klein::run_census(opts);
  int code = kExitOk;
  for (const auto& r : rows) {
    if (r.oracle_agreement && !*r.oracle_agreement) {
      err << "oracle disagreement: " << format_signature(r.signature()) << " M=" << r.modulus() << " "
          << format_map(r.epi) << '\n';
      code = kExitDisagreement;
      break;
    }
  }
  if (cfg.format == Format::Table) {
    out << std::left << std::setw(28) << "signature" << std::setw(5) << "M" << std::setw(34) << "images"
        << std::setw(5) << "p" << std::setw(5) << "F" << std::setw(5) << "V" << "twists\n";
    for (const auto& r : rows) {
      const auto& inv = r.report.involution;
      out << std::setw(28) << format_signature(r.signature()) << std::setw(5) << r.modulus() << std::setw(34)
          << format_map(r.epi) << std::setw(5) << r.kernel_genus << std::setw(5)
          << (inv ? std::to_string(inv->isolated_total) : "-") << std::setw(5)
          << (inv ? std::to_string(inv->oval_total) : "-") << twist_string(r.report)
          << (r.scherrer_equality ? "  [Scherrer equality]" : "") << '\n';
    }
    out << rows.size() << " row(s)\n";
  } else {
    CensusWriter writer(out, cfg.format == Format::Csv ? CensusFormat::Csv : CensusFormat::JsonLines);
    for (const auto& r : rows) writer.write(r);
    writer.finish();
  }
  return code;
}

inline int run_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.all_v) {
    std::vector<Int> moduli;
    if (cfg.order > 0) {
      moduli.push_back(cfg.order);
    } else if (cfg.max_order >= 2) {
      for (Int m = 2; m <= cfg.max_order; m += 2) moduli.push_back(m);
    } else {
      throw ConfigError("--all-v needs --order or --max-order");
    }
    json sweeps = json::array();
    for (Int m : moduli) {
      if (m % 2 != 0) throw ConfigError("--all-v needs an even order");
      std::vector<oracle::CycleTranscript> rows;
      auto failure = oracle::sweep_modulus(m, &rows);
      json cycles = json::array();
      for (const auto& c : rows) {
        cycles.push_back({{"v", c.v},
                          {"delta", c.delta},
                          {"epsilon", c.epsilon},
                          {"class_count_doublecoset", c.class_count_doublecoset},
                          {"class_count_exponent", c.class_count_exponent},
                          {"twisted_by_theta_prime", c.twisted_by_theta_prime}});
      }
      sweeps.push_back({{"modulus", m}, {"per_cycle", cycles}, {"agreement", !failure}});
      if (failure) {
        out << sweeps.dump(2) << '\n';
        err << "disagreement at M=" << failure->modulus << " v=" << failure->v << ": " << failure->what << '\n';
        return kExitDisagreement;
      }
    }
    out << (moduli.size() == 1 ? sweeps[0] : sweeps).dump(2) << '\n';
    return kExitOk;
  }
  CyclicEpimorphism epi = parse_epimorphism(cfg);
  ValidationReport vr = validate(epi);
  if (!vr.valid) {
    out << json{{"validation", to_json(vr)}}.dump(2) << '\n';
    err << "not a valid smooth epimorphism\n";
    return kExitInvalid;
  }
  auto t = oracle::cross_check(epi);
  out << to_json(t).dump(2) << '\n';
  if (!t.agreement) {
    err << "disagreement: " << t.first_disagreement << '\n';
    return kExitDisagreement;
  }
  return kExitOk;
}

inline int run_max_order(const CliConfig& cfg, std::ostream& out) {
  if (cfg.genus < 3) throw ConfigError("--genus must be >= 3");
  if (cfg.genus > cfg.genus_cap) {
    throw ConfigError("--genus " + std::to_string(cfg.genus) + " exceeds --cap " + std::to_string(cfg.genus_cap));
  }
  Int m = max_cyclic_order(cfg.genus, cfg.genus_cap);
  if (cfg.format == Format::Json) {
    out << json{{"genus", cfg.genus}, {"max_order", m}}.dump() << '\n';
  } else {
    out << m << '\n';
  }
  return kExitOk;
}

}  // namespace detail

inline int run(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.subcommand) {
      case Subcommand::Analyze: return detail::run_analyze(cfg, out);
      case Subcommand::Enumerate: return detail::run_enumerate(cfg, out);
      case Subcommand::Census: return detail::run_census(cfg, out, err);
      case Subcommand::Verify: return detail::run_verify(cfg, out, err);
      case Subcommand::MaxOrder: return detail::run_max_order(cfg, out);
    }
  } catch (const SignatureError& e) {
    err << "signature error at " << e.what() << '\n';
    return kExitConfig;
  } catch (const MapError& e) {
    err << "map error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ScherrerViolation& e) {
    err << "error: " << e.what() << '\n';
    return kExitDisagreement;
  }
  return kExitConfig;
}

// Parses argv-style arguments (without the program name) and runs.
inline int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fixed-point data of cyclic actions on non-orientable Klein surfaces"};
  app.require_subcommand(1);
  CliConfig cfg;
  std::string format = "table";
  const std::vector<std::string> formats{"table", "json", "csv"};

  auto* analyze = app.add_subcommand("analyze", "Validate an epimorphism and report its fixed-point data");
  analyze->add_option("signature", cfg.signature, "NEC signature, e.g. \"(0;+;[2,7];{()})\"")->required();
  analyze->add_option("--order", cfg.order, "Group order M")->required();
  analyze->add_option("--map", cfg.map, "Generator images, e.g. \"x=7,2;e=5\"")->required();

  auto* enumerate = app.add_subcommand("enumerate", "List all smooth epimorphisms onto C_M");
  enumerate->add_option("signature", cfg.signature, "NEC signature")->required();
  enumerate->add_option("--order", cfg.order, "Group order M")->required();
  enumerate->add_flag("--up-to-aut", cfg.up_to_aut, "One representative per Aut(C_M) orbit");

  auto* census = app.add_subcommand("census", "Enumerate signatures and epimorphisms for bounded genus");
  auto* c_order = census->add_option("--order", cfg.order, "Single group order M");
  auto* c_max = census->add_option("--max-order", cfg.max_order, "All orders 2..M");
  c_order->excludes(c_max);
  census->add_option("--max-genus", cfg.max_genus, "Largest kernel genus")->check(CLI::Range(3, 1000));
  census->add_flag("--up-to-aut", cfg.up_to_aut, "One representative per Aut(C_M) orbit");
  census->add_flag("--verify", cfg.verify, "Cross-check every row with the brute-force oracle");
  census->add_option("--workers", cfg.workers, "Worker threads")->check(CLI::Range(1u, 256u));

  auto* verify = app.add_subcommand("verify", "Run the brute-force oracle");
  verify->add_option("signature", cfg.signature, "NEC signature");
  verify->add_option("--order", cfg.order, "Group order M");
  verify->add_option("--max-order", cfg.max_order, "With --all-v: sweep every even M <= this");
  verify->add_option("--map", cfg.map, "Generator images");
  verify->add_flag("--all-v", cfg.all_v, "Sweep every connecting image v in [0, M)");

  auto* max_order = app.add_subcommand("max-order", "Largest cyclic order acting on genus p");
  max_order->add_option("--genus", cfg.genus, "Cross-cap genus p >= 3")->required();
  max_order->add_option("--cap", cfg.genus_cap, "Largest genus accepted");

  for (auto* sub : {analyze, enumerate, census, verify, max_order}) {
    sub->add_option("--format", format, "table, json or csv")->check(CLI::IsMember(formats));
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  if (*analyze) cfg.subcommand = Subcommand::Analyze;
  if (*enumerate) cfg.subcommand = Subcommand::Enumerate;
  if (*census) cfg.subcommand = Subcommand::Census;
  if (*verify) cfg.subcommand = Subcommand::Verify;
  if (*max_order) cfg.subcommand = Subcommand::MaxOrder;
  cfg.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Table;
  if (cfg.subcommand == Subcommand::Verify && !cfg.all_v && cfg.signature.empty()) {
    err << "error: verify needs a signature with --order and --map, or --all-v\n";
    return kExitConfig;
  }
  return run(cfg, out, err);
}

}  // namespace klein::cli
