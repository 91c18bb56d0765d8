#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "report.hpp"

namespace copcp::cli {

struct Context {
  std::uint64_t seed = kDefaultSeed;
  Tolerance tol;
  Effort effort = Effort::Default;
  std::string effort_name = "default";
};

struct Outcome {
  int code = 0;
  json result;
  json input;         // data needed to re-check the certificates
  std::string bytes;  // raw input bytes for the digest
};

struct ConeArgs {
  std::string cone = "cop", in;
  int level = 0;
};
struct PairArgs {
  std::string cone = "copcp", in;
};
struct GraphArgs {
  std::string graph, strategy = "auto";
  bool dual = false;
};
struct ScanArgs {
  std::string in;
  int threads = 0;
  double margin = 1e-6;
  bool records = true;
};
struct CatalogArgs {
  bool list = false;
  std::string name;
};
struct DickeArgs {
  std::string P;
  int r = 2;
  int search = 0;
};
struct WitnessArgs {
  std::string M, N, level = "0", eval;
  bool choi = false;
};
struct MarkovArgs {
  std::string A;
};

Outcome cmd_cone_check(const Context& ctx, const ConeArgs& a);
Outcome cmd_pair_check(const Context& ctx, const PairArgs& a);
Outcome cmd_sigma(const Context& ctx, const GraphArgs& a);
Outcome cmd_classify_map(const Context& ctx, const GraphArgs& a);
Outcome cmd_scan_gap(const Context& ctx, const ScanArgs& a);
Outcome cmd_srg_catalog(const Context& ctx, const CatalogArgs& a);
Outcome cmd_dicke_ext(const Context& ctx, const DickeArgs& a);
Outcome cmd_witness(const Context& ctx, const WitnessArgs& a);
Outcome cmd_markov_choi(const Context& ctx, const MarkovArgs& a);

struct ReCheck {
  bool ok = true;
  int checked = 0;
  std::string why;
};
// re-checks every certificate embedded in a report from the stored data alone
ReCheck verify_report(const json& report);

}  // namespace copcp::cli
