#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fanobound/audit.hpp"
#include "fanobound/bounds.hpp"
#include "fanobound/bundle.hpp"
#include "fanobound/certificate.hpp"
#include "fanobound/hrr.hpp"
#include "fanobound/verify.hpp"

using namespace fanobound;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bundle::SplitBundle parse_bundle(const std::string& text) {
  bundle::SplitBundle b;
  std::stringstream in(text);
  std::string item;
  std::size_t n = 0;
  while (std::getline(in, item, ',')) {
    if (n == 5) throw UsageError("--bundle takes exactly five twists");
    try {
      b.twists[n++] = parse_bigint(item).get_si();
    } catch (const std::invalid_argument&) {
      throw UsageError("bad twist \"" + item + "\"");
    }
  }
  if (n != 5) throw UsageError("--bundle takes exactly five twists");
  return b;
}

BigInt parse_int_flag(const std::string& name, const std::string& text) {
  try {
    return parse_bigint(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(name + " must be an integer, got \"" + text + "\"");
  }
}

hrr::ChernData parse_chern(const std::string& k5, const std::string& k3c2) {
  try {
    return {parse_int_flag("--k5", k5), parse_int_flag("--k3c2", k3c2)};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

long m_cert_from_env() {
  const char* env = std::getenv("FANOBOUND_MCERT");
  if (!env || !*env) return 64;
  const BigInt v = parse_int_flag("FANOBOUND_MCERT", env);
  if (v < 0 || !v.fits_slong_p()) throw UsageError("FANOBOUND_MCERT must be a nonnegative integer");
  return v.get_si();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

nlohmann::json integer_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

struct SolveArgs {
  bool worst_case = false;
  std::string k5, k3c2, bundle_text, convention = "standard", out;
  bool full_axioms = false;
  std::optional<long> search_from;
};

int run_solve(const SolveArgs& a) {
  const int groups = int(a.worst_case) + int(!a.k5.empty() || !a.k3c2.empty()) + int(!a.bundle_text.empty());
  if (groups != 1) throw UsageError("give exactly one of --worst-case, --k5/--k3c2, --bundle");
  if (a.k5.empty() != a.k3c2.empty()) throw UsageError("--k5 and --k3c2 go together");

  bounds::SolveOptions opts;
  opts.m_cert = m_cert_from_env();
  opts.retain_axioms = a.full_axioms;
  opts.search_from = a.search_from;
  if (opts.search_from && *opts.search_from < 1) throw UsageError("--search-from must be >= 1");

  cert::Certificate c;
  try {
    if (a.worst_case) {
      c = bounds::solve_worst_case(opts);
    } else if (!a.k5.empty()) {
      c = bounds::solve_concrete(parse_chern(a.k5, a.k3c2), opts);
    } else {
      bundle::RankConvention conv;
      try {
        conv = bundle::parse_convention(a.convention);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const bundle::SplitBundle b = parse_bundle(a.bundle_text);
      try {
        c = bounds::solve_oracle(bounds::bundle_oracle(b, conv), opts);
      } catch (const bundle::UnsupportedConvention& e) {
        throw UsageError(e.what());
      }
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    std::cerr << "certification failed: " << e.what() << "\n";
    return kFailed;
  }
  if (!a.out.empty()) write_file(a.out, cert::serialize(c));
  std::cout << c.bound << "\n";
  return kOk;
}

int run_table(const std::string& k5, const std::string& k3c2, long max_m, const std::string& format) {
  if (max_m < 0) throw UsageError("--max-m must be >= 0");
  if (format != "csv" && format != "json") throw UsageError("--format is csv or json");
  const hrr::ChernData chern = parse_chern(k5, k3c2);
  std::vector<hrr::PValue> rows;
  try {
    rows = hrr::p_table(chern, max_m);
  } catch (const hrr::ChernDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  if (max_m < 2) std::cerr << "note: rows m <= 1 do not pin down (a, b); compare against an oracle at m >= 2\n";
  if (format == "csv") {
    std::cout << "m,P(m)\n";
    for (const auto& r : rows) std::cout << r.m << "," << r.value.get_str() << "\n";
  } else {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) out.push_back({{"m", r.m}, {"P(m)", integer_json(r.value)}});
    std::cout << out.dump(2) << "\n";
  }
  return kOk;
}

int run_oracle(const std::string& bundle_text, long m, const std::string& convention) {
  if (m < 1) throw UsageError("--m must be >= 1");
  const bundle::SplitBundle b = parse_bundle(bundle_text);
  bundle::RankConvention conv;
  try {
    conv = bundle::parse_convention(convention);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  bundle::H0Result r;
  try {
    r = bundle::h0_anti_checked(b, m, conv);
  } catch (const bundle::UnsupportedConvention& e) {
    throw UsageError(e.what());
  }
  if (!r.vanishing_guaranteed) {
    std::cerr << "warning: a summand has degree < -1; h0 = chi is not guaranteed for " << b.to_string() << "\n";
  }
  std::cout << r.value.get_str() << "\n";
  return kOk;
}

int run_audit(const std::string& out) {
  const AuditReport report = fanobound::run_audit();
  if (!out.empty()) write_file(out, to_json(report).dump(2) + "\n");
  std::cout << summarize(report);
  return kOk;
}

int run_verify(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot read " << path << "\n";
    return kUsage;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  cert::Certificate c;
  try {
    c = cert::parse(buf.str());
  } catch (const cert::MalformedCertificate& e) {
    std::cerr << "malformed certificate: " << e.what() << "\n";
    return kUsage;
  }
  const verify::Verdict v = verify::verify(c);
  if (v.valid) {
    std::cout << "valid: bound " << c.bound << "\n";
    return kOk;
  }
  std::cout << "invalid at step " << v.step << ": " << v.reason << "\n";
  return kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified anti-pluricanonical birationality bounds for 5-folds"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "derive a bound and write its certificate");
  solve_cmd->add_flag("--worst-case", solve.worst_case, "bound valid for every admissible 5-fold");
  solve_cmd->add_option("--k5", solve.k5, "(-K)^5");
  solve_cmd->add_option("--k3c2", solve.k3c2, "(-K)^3.c2");
  solve_cmd->add_option("--bundle", solve.bundle_text, "twists e1,...,e5 of E over P^1");
  solve_cmd->add_option("--convention", solve.convention, "standard or paper")->capture_default_str();
  solve_cmd->add_option("--out", solve.out, "certificate path");
  solve_cmd->add_flag("--full-axioms", solve.full_axioms, "keep every axiom row during the r_i search");
  solve_cmd->add_option("--search-from", solve.search_from, "lower end of the r_i search (default r0)");

  std::string t_k5, t_k3c2, t_format = "csv";
  long t_max = 0;
  auto* table_cmd = app.add_subcommand("table", "print P(m) for m = 0..max-m");
  table_cmd->add_option("--k5", t_k5)->required();
  table_cmd->add_option("--k3c2", t_k3c2)->required();
  table_cmd->add_option("--max-m", t_max)->required();
  table_cmd->add_option("--format", t_format, "csv or json")->capture_default_str();

  std::string o_bundle, o_convention = "standard";
  long o_m = 0;
  auto* oracle_cmd = app.add_subcommand("oracle", "h0(-mK) of P(E)");
  oracle_cmd->add_option("--bundle", o_bundle)->required();
  oracle_cmd->add_option("--m", o_m)->required();
  oracle_cmd->add_option("--convention", o_convention)->capture_default_str();

  std::string a_out;
  auto* audit_cmd = app.add_subcommand("audit", "check the published claims");
  audit_cmd->add_option("--out", a_out, "JSON report path");

  std::string v_path;
  auto* verify_cmd = app.add_subcommand("verify", "replay a certificate");
  verify_cmd->add_option("path", v_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*table_cmd) return run_table(t_k5, t_k3c2, t_max, t_format);
    if (*oracle_cmd) return run_oracle(o_bundle, o_m, o_convention);
    if (*audit_cmd) return run_audit(a_out);
    if (*verify_cmd) return run_verify(v_path);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
