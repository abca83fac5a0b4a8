// Command-line front end: compute closed-form Rado numbers, certify them with
// witness colorings and exhaustive search, emit DIMACS CNF, check models, and
// tabulate ranges. Results of certify runs land in an append-only JSONL cache.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rado/cache.hpp"
#include "rado/rado.hpp"

namespace {

namespace fs = std::filesystem;
using rado::Int;

// exit codes: 0 success/confirmed, 1 validation error, 2 witness-only,
// 3 inconclusive
constexpr int kOk = 0;
constexpr int kValidationError = 1;
constexpr int kWitnessOnly = 2;
constexpr int kInconclusive = 3;

rado::EquationSpec spec_from(const std::vector<Int>& coeffs) {
  rado::EquationSpec spec{coeffs};
  spec.validate();
  return spec;
}

std::string coeff_key(std::vector<Int> coeffs) { return rado::cache_key(std::move(coeffs)); }

void apply_env_caps(rado::SolverOptions& opt, bool nodes_set, bool timeout_set) {
  if (!nodes_set) {
    if (const char* env = std::getenv("RADO_NODES")) opt.node_cap = std::strtoull(env, nullptr, 10);
  }
  if (!timeout_set) {
    if (const char* env = std::getenv("RADO_TIMEOUT")) opt.time_cap_seconds = std::strtod(env, nullptr);
  }
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

int cmd_compute(const std::vector<Int>& coeffs) {
  const auto spec = spec_from(coeffs);
  const rado::RadoValue r = rado::rado_number(spec);
  std::cout << "coeffs = " << spec.to_string() << "\n"
            << "canonical: a=" << r.canonical.a << " b=" << r.canonical.b
            << " v=" << r.canonical.v << " m=" << r.canonical.m << "\n";
  if (const auto sc = rado::special_case_value(spec))
    std::cout << "special case: " << sc->name << " = " << sc->value << "\n";
  std::cout << "R = " << r.value << "\n";
  return kOk;
}

int status_exit_code(const std::string& status) {
  if (status == "confirmed-at-n") return kOk;
  if (status == "witness-only") return kWitnessOnly;
  return kInconclusive;
}

void print_certificate_line(const rado::CacheRecord& rec, bool cached) {
  std::cout << "R=" << rec.rado;
  if (rec.status == "confirmed-at-n") {
    std::cout << " CONFIRMED (witness n=" << rec.witness_n << " valid, UNSAT n=" << rec.search_n
              << ")";
  } else if (rec.status == "witness-only") {
    std::cout << " WITNESS-ONLY (witness n=" << rec.witness_n << " valid)";
  } else {
    std::cout << " INCONCLUSIVE (witness n=" << rec.witness_n << " valid, search hit cap)";
  }
  if (cached) std::cout << " [cached]";
  std::cout << "\n";
}

int cmd_certify(const std::vector<Int>& coeffs, bool search, const rado::SolverOptions& opt,
                const fs::path& cache_path) {
  const auto spec = spec_from(coeffs);
  rado::CacheFile cache(cache_path);

  if (const auto cached = cache.lookup(coeffs)) {
    const bool good_enough = cached->status == "confirmed-at-n" ||
                             (!search && cached->status == "witness-only");
    if (good_enough) {
      print_certificate_line(*cached, true);
      return status_exit_code(cached->status);
    }
  }

  const rado::Certificate cert = rado::certify_pair(spec, search, opt);

  rado::CacheRecord rec;
  rec.coeffs = coeffs;
  rec.canonical = cert.rado.canonical;
  rec.rado = cert.rado.value;
  rec.witness_n = cert.witness_n;
  rec.updated = rado::now_iso8601_utc();
  switch (cert.status) {
    case rado::CertStatus::Confirmed:
      rec.status = "confirmed-at-n";
      rec.search_n = cert.rado.value;
      break;
    case rado::CertStatus::WitnessOnly:
      rec.status = "witness-only";
      break;
    case rado::CertStatus::Inconclusive:
      rec.status = "inconclusive";
      break;
  }
  if (cert.search_at_rado) rec.stats = cert.search_at_rado->stats;

  const rado::CacheRecord& merged = cache.upsert(rec);
  print_certificate_line(merged, false);
  return status_exit_code(merged.status);
}

// Non-decreasing coefficient tuples over [1,maxc]^m, lexicographic.
void each_sorted_tuple(Int maxc, Int m, std::vector<Int>& tuple,
                       const std::function<void(const std::vector<Int>&)>& fn) {
  if (static_cast<Int>(tuple.size()) == m) {
    fn(tuple);
    return;
  }
  const Int lo = tuple.empty() ? 1 : tuple.back();
  for (Int c = lo; c <= maxc; ++c) {
    tuple.push_back(c);
    each_sorted_tuple(maxc, m, tuple, fn);
    tuple.pop_back();
  }
}

int cmd_table(Int maxc, Int m) {
  if (maxc < 1 || m < 2) {
    std::cerr << "error: table needs --max >= 1 and --m >= 2\n";
    return kValidationError;
  }
  std::ostringstream os;
  os << "coefficients\ta\tb\tv\tR\tspecial_case_name\tspecial_case_value\tstatus\n";
  std::vector<Int> tuple;
  each_sorted_tuple(maxc, m, tuple, [&](const std::vector<Int>& coeffs) {
    const rado::EquationSpec spec{coeffs};
    const rado::RadoValue r = rado::rado_number(spec);
    const auto sc = rado::special_case_value(spec);
    os << coeff_key(coeffs) << '\t' << r.canonical.a << '\t' << r.canonical.b << '\t'
       << r.canonical.v << '\t' << r.value << '\t';
    if (sc) {
      os << sc->name << '\t' << sc->value << '\t' << (sc->value == r.value ? "agree" : "MISMATCH");
    } else {
      os << "-\t-\t-";
    }
    os << '\n';
  });
  std::cout << os.str();
  return kOk;
}

int cmd_cnf(const std::vector<Int>& coeffs, Int n, const fs::path& out_path, bool no_symmetry) {
  const auto spec = spec_from(coeffs);
  const rado::CnfDocument doc = rado::encode(spec, n, !no_symmetry);
  write_file_atomic(out_path, rado::to_dimacs(doc));
  std::cout << "wrote " << out_path.string() << ": " << doc.num_vars << " vars, "
            << doc.clauses.size() << " clauses\n";
  return kOk;
}

int cmd_check_model(const std::vector<Int>& coeffs, Int n, const fs::path& model_path) {
  const auto spec = spec_from(coeffs);
  std::ifstream in(model_path);
  if (!in) {
    std::cerr << "error: cannot read model file " << model_path.string() << "\n";
    return kValidationError;
  }
  const std::vector<Int> literals = rado::parse_model(in);
  const rado::ModelCheck check = rado::verify_model(literals, spec, n);
  if (check.accepted) {
    std::cout << "ACCEPTED\n";
    return kOk;
  }
  std::cout << "REJECTED: " << check.violation->to_string() << "\n";
  return kValidationError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact two-color Rado numbers for a1*x1+...+am*xm = x0"};
  app.require_subcommand(1);

  std::vector<Int> coeffs;
  rado::SolverOptions opt;
  std::string cache_path = "./rado-cache.jsonl";
  bool search = false;
  bool no_symmetry = false;
  Int table_max = 3;
  Int table_m = 2;
  std::vector<std::string> rest;

  auto* compute = app.add_subcommand("compute", "Closed-form R for the given coefficients");
  compute->add_option("coeffs", coeffs, "coefficients a1..am")->required();

  auto* certify = app.add_subcommand(
      "certify", "Witness coloring of [1,R-1], optionally an UNSAT search proof at n=R");
  certify->add_option("coeffs", coeffs, "coefficients a1..am")->required();
  certify->add_flag("--search", search, "also prove UNSAT at n=R by exhaustive search");
  auto* nodes_opt = certify->add_option("--nodes", opt.node_cap, "search node cap");
  auto* timeout_opt =
      certify->add_option("--timeout", opt.time_cap_seconds, "search time cap in seconds");
  certify->add_option("--threads", opt.threads, "worker threads for the search");
  certify->add_option("--cache", cache_path, "result cache path (JSONL, append-only)");
  certify->add_flag_function(
      "--unit-only", [&opt](std::int64_t) { opt.propagation = rado::Propagation::UnitOnly; },
      "disable the kx+ly=z forcing rule");

  auto* table = app.add_subcommand("table", "TSV of R over all coefficient tuples in range");
  table->add_option("--max", table_max, "largest coefficient")->required();
  table->add_option("--m", table_m, "number of coefficients")->required();

  auto* cnf = app.add_subcommand("cnf", "DIMACS CNF for the coloring decision at a given n");
  cnf->add_option("args", rest, "a1..am n out.cnf")->required();
  cnf->add_flag("--no-symmetry", no_symmetry, "omit the color(1)=0 unit clause");

  auto* check = app.add_subcommand("check-model", "Verify a SAT model against the checker");
  check->add_option("args", rest, "a1..am n model.txt")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidationError;
  }

  try {
    if (app.got_subcommand(compute)) return cmd_compute(coeffs);
    if (app.got_subcommand(certify)) {
      apply_env_caps(opt, nodes_opt->count() > 0, timeout_opt->count() > 0);
      return cmd_certify(coeffs, search, opt, cache_path);
    }
    if (app.got_subcommand(table)) return cmd_table(table_max, table_m);
    if (app.got_subcommand(cnf) || app.got_subcommand(check)) {
      // trailing positionals: coefficients, then n, then a path
      if (rest.size() < 4)
        throw rado::ValidationError("expected: a1 a2 [...] n <path>");
      const fs::path path = rest.back();
      const Int n = std::stoll(rest[rest.size() - 2]);
      std::vector<Int> cs;
      for (std::size_t i = 0; i + 2 < rest.size(); ++i) cs.push_back(std::stoll(rest[i]));
      if (app.got_subcommand(cnf)) return cmd_cnf(cs, n, path, no_symmetry);
      return cmd_check_model(cs, n, path);
    }
  } catch (const rado::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad numeric argument (" << e.what() << ")\n";
    return kValidationError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationError;
  }
  return kOk;
}
